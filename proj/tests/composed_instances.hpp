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

#include <numbers>
#include <random>
#include <vector>

#include "instances.hpp"
#include "test_util.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/matchgate.hpp"
#include "wsim/oracle.hpp"
#include "wsim/simulators.hpp"

namespace wsim::testing {

struct ComposedInstance {
    CtState input;
    std::vector<Stage> stages;
};

inline Circuit random_local_layer(int n, std::mt19937_64 &rng) {
    Circuit c;
    for (int q = 0; q < n; ++q) c.push_back(Gate::unitary({q}, random_unitary(2, rng)));
    return c;
}

inline Circuit random_toffoli_circuit(int n, int gates, std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> pick(0, n - 1), kind(0, 3);
    Circuit c;
    while (static_cast<int>(c.size()) < gates) {
        int a = pick(rng), b = pick(rng), t = pick(rng);
        switch (kind(rng)) {
            case 0:
                c.push_back(Gate::single(GateKind::X, a));
                break;
            case 1:
                if (a != b) c.push_back(Gate::two(GateKind::CNOT, a, b));
                break;
            case 2:
                if (a != b) c.push_back(Gate::two(GateKind::CPhase, a, b, std::uniform_real_distribution<double>(0, 6.283)(rng)));
                break;
            default:
                if (a != b && a != t && b != t) c.push_back(Gate::toffoli(a, b, t));
        }
    }
    return c;
}

/// Matchgates on neighbour pairs (q, q+1) with q <= last.
inline Circuit random_matchgates(int gates, int last, std::mt19937_64 &rng) {
    Rng r(rng());
    std::uniform_int_distribution<int> pick(0, last);
    Circuit c;
    for (int g = 0; g < gates; ++g) c.push_back(Gate::matchgate(pick(rng), random_su2(r), random_su2(r)));
    return c;
}

inline Circuit hadamards_on_random_subset(int n, std::mt19937_64 &rng) {
    Circuit c;
    for (int q = 0; q < n; ++q)
        if (rng() & 1u) c.push_back(Gate::single(GateKind::H, q));
    return c;
}

/// Local layer, QFT, ECS unitary, matchgate circuit.
inline ComposedInstance pattern_local_qft_ecs_matchgate(int n, std::mt19937_64 &rng) {
    ComposedInstance inst{basis_state(BitString(n, 0)), {}};
    inst.stages.push_back({"local", random_local_layer(n, rng), {}, {}});
    Circuit qft{Gate{GateKind::QFT, {}}};
    for (int q = 0; q < n; ++q) qft[0].targets.push_back(q);
    inst.stages.push_back({"qft", qft, {}, {}});
    const int a = std::uniform_int_distribution<int>(0, 2)(rng);
    EcsOperator v = compose(basis_preserving_op(n, {Gate::two(GateKind::CNOT, a + 1, a + 2)}),
                            local_gate_op(random_unitary(4, rng), {a, a + 1}, n));
    inst.stages.push_back({"ecs", {}, v, {}});
    inst.stages.push_back({"matchgate", random_matchgates(6, 2, rng), {}, {}});
    return inst;
}

/// Matchgate circuit, Toffoli circuit, Clifford circuit, shallow nearest-neighbour circuit.
inline ComposedInstance pattern_matchgate_toffoli_clifford_nn(int n, std::mt19937_64 &rng) {
    BitString x(n, rng() & ((std::uint64_t{1} << n) - 1));
    ComposedInstance inst{basis_state(x), {}};
    Rng r(rng());
    inst.stages.push_back({"matchgate", random_matchgate_circuit(n, 12, r).gates, {}, {}});
    inst.stages.push_back({"toffoli", random_toffoli_circuit(n, 6, rng), {}, {}});
    inst.stages.push_back({"clifford", random_clifford(n, 10, rng), {}, {}});
    inst.stages.push_back({"nearest-neighbour", {Gate::unitary({0, 1}, random_unitary(4, rng))}, {}, {}});
    return inst;
}

/// Hadamards, basis-preserving circuit, Hadamards, matchgate circuit.
inline ComposedInstance pattern_hadamard_sandwich(int n, std::mt19937_64 &rng) {
    ComposedInstance inst{basis_state(BitString(n, 0)), {}};
    inst.stages.push_back({"hadamards", hadamards_on_random_subset(n, rng), {}, {}});
    inst.stages.push_back({"basis-preserving", random_toffoli_circuit(n, 8, rng), {}, {}});
    inst.stages.push_back({"hadamards", hadamards_on_random_subset(n, rng), {}, {}});
    inst.stages.push_back({"matchgate", random_matchgates(5, 2, rng), {}, {}});
    return inst;
}

inline DenseState dense_run(const ComposedInstance &inst) {
    DenseState s = DenseState::from(inst.input);
    for (const Stage &st : inst.stages) {
        if (st.mps) {
            s = DenseState::from(mps_state(*st.mps));
        } else if (st.ecs) {
            Eigen::VectorXcd v = assemble_columns(*st.ecs) * to_vector(s);
            s.amps.assign(v.data(), v.data() + v.size());
        } else {
            s = dense_evolve(st.gates, s);
        }
    }
    return s;
}

inline double dense_expectation(const DenseState &s, const PauliSum &o) {
    return dense_matrix_element(s, pauli_sum_matrix(o), s).real();
}

}  // namespace wsim::testing
