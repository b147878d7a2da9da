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


#include "wsim/reference.hpp"

namespace wsim::reference {

double expectation(const DenseState &s, const PauliSum &o) {
    return dense_matrix_element(s, pauli_sum_matrix(o, kDenseQubitCap), s).real();
}

namespace {

DenseState apply_op(const EcsOperator &op, const DenseState &s) {
    Eigen::VectorXcd v = assemble_columns(op) * to_vector(s);
    DenseState out{s.n, {}};
    out.amps.assign(v.data(), v.data() + v.size());
    return out;
}

}  // namespace

DenseState run_stages(const CtState &input, const std::vector<Stage> &stages) {
    DenseState s = DenseState::from(input);
    for (const Stage &st : stages) {
        if (st.mps) {
            s = DenseState::from(mps_state(*st.mps));
        } else if (st.ecs) {
            s = apply_op(*st.ecs, s);
        } else {
            s = dense_evolve(st.gates, s);
        }
    }
    return s;
}

double composed(const CtState &input, const std::vector<Stage> &stages, const PauliSum &o) {
    return expectation(run_stages(input, stages), o);
}

double sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input, const PauliSum &o) {
    DenseState s = DenseState::from(input);
    for (const EcsOperator &op : ops) s = apply_op(op, s);
    return expectation(s, o);
}

double cnot_expx(const Circuit &circuit, const CtState &input, int qubit) {
    DenseState s = dense_evolve(circuit, DenseState::from(input));
    return expectation(s, PauliSum::single(PauliString::single(s.n, qubit, 'Z')));
}

double dj_class(const Circuit &v1, const EcsOperator &v2, const Circuit &v3, int k) {
    const int n = v2.n;
    DenseState s = dense_evolve(v3, apply_op(v2, dense_evolve(v1, BitString(n, 0))));
    double p = 0;
    for (std::uint64_t x = 0; x < s.amps.size(); ++x)
        if ((x >> (n - k)) == 0) p += std::norm(s.amps[x]);
    return p;
}

double five_round(const FiveRoundCircuit &c, const BooleanOracle &g) {
    Circuit all;
    for (int q : c.s1) all.push_back(Gate::single(GateKind::H, q));
    all.insert(all.end(), c.v.begin(), c.v.end());
    for (int q : c.s2) all.push_back(Gate::single(GateKind::H, q));
    DenseState s = dense_evolve(all, BitString(c.n, 0));
    double total = 0;
    for (std::uint64_t x = 0; x < s.amps.size(); ++x) {
        std::uint64_t u = 0;
        for (int q : c.measured) u = (u << 1) | ((x >> (c.n - 1 - q)) & 1u);
        total += std::norm(s.amps[x]) * (g.evaluate_word(u) ? -1.0 : 1.0);
    }
    return total;
}

Amplitude partial_projected(const CtState &phi, const EcsOperator &a, const CtState &xi, const CtState &chi,
                            const EcsOperator &b, const CtState &psi) {
    const int n = psi.n(), k = xi.n();
    DenseState bp = apply_op(b, DenseState::from(psi));
    DenseState x = DenseState::from(xi), c = DenseState::from(chi);
    const std::uint64_t rest = std::uint64_t{1} << (n - k);
    DenseState proj{n, std::vector<Amplitude>(bp.amps.size())};
    for (std::uint64_t t = 0; t < rest; ++t) {
        Amplitude overlap = 0;
        for (std::uint64_t h = 0; h < c.amps.size(); ++h) overlap += std::conj(c.amps[h]) * bp.amps[h * rest + t];
        for (std::uint64_t h = 0; h < x.amps.size(); ++h) proj.amps[h * rest + t] = x.amps[h] * overlap;
    }
    return dense_overlap(DenseState::from(phi), apply_op(a, proj));
}

}  // namespace wsim::reference
