// Copyright 2026 The wsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wsim/bitstring.hpp"

namespace wsim {

/// Classical function f: {0,1}^arity -> {0,1}. The argument packs the input
/// bits with the first input most significant.
struct BooleanFunction {
    int arity = 0;
    std::function<bool(std::uint64_t)> eval;
    std::string name;
};

using Mat2 = std::array<Amplitude, 4>;  // row-major [[a, b], [c, d]]

enum class GateKind {
    H,
    X,
    Y,
    Z,
    S,        // PHASE = diag(1, i)
    Sdg,
    Phase,    // diag(1, e^{i param})
    ExpX,     // e^{i param X}
    ExpZ,     // e^{i param Z} = diag(e^{i param}, e^{-i param})
    CNOT,     // targets = {control, target}
    CZ,
    CPhase,   // diag(1, 1, 1, e^{i param})
    Toffoli,  // targets = {control, control, target}
    Matchgate,// G(A, B) on nearest neighbours (i, i+1)
    Unitary,  // arbitrary d-qubit matrix on `targets`
    QFT,      // Fourier transform over Z_{2^k} on `targets`, first target most significant
    Oracle,   // |x>|b> -> |x>|b xor f(x)>; targets = inputs..., output
};

/// One gate of the shared circuit schema.
struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;
    double param = 0.0;
    Mat2 a{};                 // Matchgate: even-parity block
    Mat2 b{};                 // Matchgate: odd-parity block
    std::vector<Amplitude> matrix;  // Unitary: 2^d x 2^d row-major
    std::shared_ptr<const BooleanFunction> oracle;

    static Gate single(GateKind kind, int q, double param = 0.0) { return Gate{kind, {q}, param}; }
    static Gate two(GateKind kind, int q0, int q1, double param = 0.0) { return Gate{kind, {q0, q1}, param}; }
    static Gate toffoli(int c0, int c1, int t) { return Gate{GateKind::Toffoli, {c0, c1, t}}; }
    static Gate matchgate(int q, const Mat2 &a, const Mat2 &b);
    static Gate unitary(std::vector<int> targets, std::vector<Amplitude> matrix);
    static Gate oracle_gate(std::vector<int> targets, std::shared_ptr<const BooleanFunction> f);
};

using Circuit = std::vector<Gate>;

const char *gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

/// Gates that map basis states to phases times basis states.
bool is_basis_preserving(GateKind kind);
/// Gates in the Clifford group {H, S, CNOT} closure that the stabilizer
/// tableau supports.
bool is_clifford(GateKind kind);

/// Dense matrix of a local gate on its targets (first target most
/// significant). Not defined for QFT and Oracle.
std::vector<Amplitude> gate_matrix(const Gate &gate);

/// Checks qubit indices against the register width and the gate's arity.
void validate_gate(const Gate &gate, int n);

/// Action of a basis-preserving gate on a basis state: returns the image
/// and multiplies `phase` by gamma.
std::uint64_t apply_basis_gate(const Gate &gate, int n, std::uint64_t word, Amplitude &phase);
/// Inverse action: returns pi^{-1}(word). Phase is not touched.
std::uint64_t apply_basis_gate_inverse(const Gate &gate, int n, std::uint64_t word);

/// |U U^dagger - I| max-entry deviation.
double unitarity_defect(const std::vector<Amplitude> &matrix, int dim);

}  // namespace wsim
