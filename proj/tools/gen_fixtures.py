#!/usr/bin/env python3
# Copyright 2026 The wsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Writes the bundled JSON fixtures into fixtures/. Deterministic for a fixed seed."""

import json
import math
import pathlib
import sys

import numpy as np

SCHEMA = "wsim/1"
rng = np.random.default_rng(20261018)
out = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "fixtures")
out.mkdir(parents=True, exist_ok=True)


def cx(z):
    return [float(np.real(z)), float(np.imag(z))]


def matrix(m):
    return [[cx(z) for z in row] for row in m]


def random_unitary(d):
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_su2():
    a, b, t = rng.uniform(0, 2 * math.pi, 3)
    return np.array([[np.exp(1j * a) * math.cos(t), np.exp(1j * b) * math.sin(t)],
                     [-np.exp(-1j * b) * math.sin(t), np.exp(-1j * a) * math.cos(t)]])


def random_factor():
    v = random_unitary(2)[:, 0]
    return [cx(v[0]), cx(v[1])]


def product(n):
    return {"kind": "product", "factors": [random_factor() for _ in range(n)]}


def write(name, doc_type, body):
    doc = {"schema": SCHEMA, "type": doc_type}
    doc.update(body)
    (out / name).write_text(json.dumps(doc, indent=1) + "\n")


def toffoli_circuit(n, count):
    gates = []
    while len(gates) < count:
        a, b, t = (int(x) for x in rng.integers(0, n, 3))
        kind = int(rng.integers(0, 4))
        if kind == 0:
            gates.append({"gate": "X", "targets": [a]})
        elif kind == 1 and a != b:
            gates.append({"gate": "CNOT", "targets": [a, b]})
        elif kind == 2 and a != b:
            gates.append({"gate": "CPHASE", "targets": [a, b], "param": float(rng.uniform(0, 2 * math.pi))})
        elif kind == 3 and len({a, b, t}) == 3:
            gates.append({"gate": "TOFFOLI", "targets": [a, b, t]})
    return gates


def matchgates(count, last):
    return [{"gate": "matchgate", "targets": [q, q + 1], "A": matrix(random_su2()), "B": matrix(random_su2())}
            for q in (int(x) for x in rng.integers(0, last + 1, count))]


def hadamards(n):
    return [{"gate": "H", "targets": [q]} for q in range(n) if rng.integers(0, 2)]


# States and operators.
write("product3.json", "state", product(3))
write("plus4.json", "state", {"kind": "product", "factors": [[[2 ** -0.5, 0], [2 ** -0.5, 0]]] * 4})
write("ghz4.json", "state", {"kind": "stabilizer", "n": 4, "gates": [
    {"gate": "H", "targets": [0]}, {"gate": "CNOT", "targets": [0, 1]},
    {"gate": "CNOT", "targets": [1, 2]}, {"gate": "CNOT", "targets": [2, 3]}]})
write("phase4.json", "state", {"kind": "phase", "n": 4, "terms": [
    {"qubits": [0, 1], "theta": 0.7}, {"qubits": [2], "theta": -1.1}, {"qubits": [1, 2, 3], "theta": 2.0}]})
write("qft3.json", "state", {"kind": "qft_product", "factors": [random_factor() for _ in range(3)]})
bond = [[[random_unitary(2)[i, j] / math.sqrt(2) for j in range(2)] for i in range(2)] for _ in range(2)]
write("mps3.json", "state", {"kind": "mps", "sites": [[matrix(np.array(bond[0])), matrix(np.array(bond[1]))]] * 3})
write("basis4.json", "state", {"kind": "basis", "bits": "0110"})
write("identity4.json", "operator", {"kind": "identity", "n": 4})
write("identity3.json", "operator", {"kind": "identity", "n": 3})
write("zz_x4.json", "operator", {"kind": "pauli_sum", "n": 4, "terms": [
    {"coeff": 0.5, "pauli": "ZZII"}, {"coeff": [0.25, 0], "pauli": "IXXI"}, {"coeff": -0.25, "pauli": "IIZY"}]})
write("toffoli4.json", "operator", {"kind": "basis_preserving", "n": 4, "gates": toffoli_circuit(4, 6)})
write("local4.json", "operator", {"kind": "local_gate", "n": 4, "targets": [1, 2], "matrix": matrix(random_unitary(4))})
write("x0.json", "operator", {"kind": "pauli_sum", "n": 3, "terms": [{"coeff": 1.0, "pauli": "XII"}]})
write("plus1.json", "state", {"kind": "product", "factors": [[[2 ** -0.5, 0], [2 ** -0.5, 0]]]})
write("bell_circuit.json", "circuit", {"n": 2, "gates": [{"gate": "H", "targets": [0]}, {"gate": "CNOT", "targets": [0, 1]}]})

# Plans.
n = 8
write("plan_theorem1.json", "plan", {"driver": "theorem1", "input": product(4), "observable": {
    "kind": "composition", "factors": [
        {"kind": "basis_preserving", "n": 4, "gates": toffoli_circuit(4, 5)},
        {"kind": "pauli_sum", "n": 4, "terms": [{"coeff": 1.0, "pauli": "ZIII"}]}]}})

plus8 = {"kind": "product", "factors": [[[2 ** -0.5, 0], [2 ** -0.5, 0]]] * n}
cluster = [{"gate": "CZ", "targets": [q, q + 1]} for q in range(n - 1)]
write("plan_sparse_cluster.json", "plan", {"driver": "sparse", "input": plus8,
                                          "ops": [{"kind": "basis_preserving", "n": n, "gates": cluster}]})
h2 = [[[0.5, 0], [0.5, 0], [0.5, 0], [0.5, 0]], [[0.5, 0], [-0.5, 0], [0.5, 0], [-0.5, 0]],
      [[0.5, 0], [0.5, 0], [-0.5, 0], [-0.5, 0]], [[0.5, 0], [-0.5, 0], [-0.5, 0], [0.5, 0]]]
write("plan_sparse_overflow.json", "plan", {"driver": "sparse", "input": {"kind": "basis", "bits": "0" * n},
                                           "ops": [{"kind": "local_gate", "n": n, "targets": [q % n, (q + 1) % n], "matrix": h2}
                                                   for q in range(7)]})

write("plan_composed_sandwich.json", "plan", {"driver": "composed", "input": {"kind": "basis", "bits": "0" * n}, "stages": [
    {"label": "hadamards", "gates": hadamards(n)},
    {"label": "basis-preserving", "gates": toffoli_circuit(n, 8)},
    {"label": "hadamards", "gates": hadamards(n)},
    {"label": "matchgate", "gates": matchgates(5, 2)}]})
write("plan_composed_qft.json", "plan", {"driver": "composed", "input": {"kind": "basis", "bits": "0" * n}, "stages": [
    {"label": "local", "gates": [{"gate": "unitary", "targets": [q], "matrix": matrix(random_unitary(2))} for q in range(n)]},
    {"label": "qft", "gates": [{"gate": "QFT", "targets": list(range(n))}]},
    {"label": "ecs", "ecs": {"kind": "composition", "factors": [
        {"kind": "basis_preserving", "n": n, "gates": [{"gate": "CNOT", "targets": [2, 3]}]},
        {"kind": "local_gate", "n": n, "targets": [1, 2], "matrix": matrix(random_unitary(4))}]}},
    {"label": "matchgate", "gates": matchgates(6, 2)}]})
write("plan_composed_unsupported.json", "plan", {"driver": "composed", "input": {"kind": "basis", "bits": "0" * n}, "stages": [
    {"label": "clifford", "gates": [{"gate": "H", "targets": [0]}, {"gate": "CNOT", "targets": [0, 1]}]},
    {"label": "qft", "gates": [{"gate": "QFT", "targets": list(range(n))}]},
    {"label": "deep", "gates": [{"gate": "unitary", "targets": [q % n, (q + 3) % n], "matrix": matrix(random_unitary(4))}
                                for q in range(30)]}]})

cnot_expx = []
while len(cnot_expx) < 50:
    a, b = (int(x) for x in rng.integers(0, n, 2))
    if rng.integers(0, 2):
        cnot_expx.append({"gate": "EXPX", "targets": [a], "param": float(rng.uniform(0, 2 * math.pi))})
    elif a != b:
        cnot_expx.append({"gate": "CNOT", "targets": [a, b]})
write("plan_cnot_expx.json", "plan", {"driver": "cnot-expx", "input": product(n), "gates": cnot_expx})

k = 5
write("plan_dj.json", "plan", {"driver": "dj", "n": k + 1,
                               "v1": [{"gate": "X", "targets": [k]}] + [{"gate": "H", "targets": [q]} for q in range(k + 1)],
                               "v2": {"kind": "basis_preserving", "n": k + 1, "gates": [
                                   {"gate": "oracle", "targets": list(range(k + 1)), "oracle": "parity:a=10110"}]},
                               "v3": [{"gate": "H", "targets": [q]} for q in range(k)], "k": k})

n5 = 10
s1 = [q for q in range(n5) if q < 5 or rng.integers(0, 2)]
s2 = [q for q in range(n5) if q < 5 or rng.integers(0, 2)]
v = [g for g in toffoli_circuit(n5, 16) if g["gate"] in ("TOFFOLI", "CPHASE", "CNOT")]
write("plan_five_round.json", "plan", {"driver": "five-round", "n": n5, "s1": s1, "v": v, "s2": s2,
                                       "measured": [0, 1, 2, 3, 4], "oracle": "random-sparse:s=4,seed=3,m=5",
                                       "sparseness": 4})

(out / "and3.tt").write_text("".join("1\n" if x == 7 else "0\n" for x in range(8)))
(out / "malformed.json").write_text('{"schema": "wsim/1", "type": "state",\n  "kind": "basis"\n  "bits": "01"}\n')
write("bad_field.json", "state", {"kind": "product", "factors": [[[1, 0], [1, 0]]]})
