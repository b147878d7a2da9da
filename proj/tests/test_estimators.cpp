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


#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"
#include "test_util.hpp"
#include "wsim/errors.hpp"
#include "wsim/estimators.hpp"
#include "wsim/matchgate.hpp"
#include "wsim/oracle.hpp"

using namespace wsim;
using namespace wsim::testing;

namespace {

ErrorBudget budget(double eps = 0.05, double delta = 1e-3) { return ErrorBudget{eps, delta}; }

PauliSum random_pauli_sum(int n, int terms, std::mt19937_64 &rng, bool hermitian) {
    std::normal_distribution<double> g;
    PauliSum s{n, {}};
    const char letters[] = {'I', 'X', 'Y', 'Z'};
    for (int t = 0; t < terms; ++t) {
        std::string word;
        for (int q = 0; q < n; ++q) word.push_back(letters[rng() % 4]);
        Amplitude c = hermitian ? Amplitude(g(rng), 0) : Amplitude(g(rng), g(rng));
        s.terms.push_back({c, PauliString::parse(word)});
    }
    s.simplify();
    const double norm = s.coefficient_one_norm();
    for (auto &t : s.terms) t.coeff /= norm;
    return s;
}

double dense_value_error(const CtState &phi, const EcsOperator &a, const CtState &psi, const Estimate &e) {
    Amplitude truth = dense_matrix_element(DenseState::from(phi), a, DenseState::from(psi));
    return std::abs(truth - e.value);
}

EcsOperator phase_oracle(int n, std::function<bool(std::uint64_t)> f) {
    BasisPreservingOp bp = BasisPreservingOp::diagonal(n, [f](std::uint64_t x) { return f(x) ? 3.141592653589793 : 0.0; });
    return from_basis_op(bp);
}

}  // namespace

TEST(ErrorBudget, Validation) {
    EXPECT_THROW(budget(0.0).validate(), Error);
    EXPECT_THROW(budget(0.1, 1.0).validate(), Error);
    ErrorBudget b = budget(0.1, 0.01).share(0.5, 0.25);
    EXPECT_DOUBLE_EQ(b.epsilon, 0.05);
    EXPECT_DOUBLE_EQ(b.delta, 0.0025);
}

TEST(EstimateOverlap, SelfOverlapIsOne) {
    std::mt19937_64 rng(1);
    CtState psi = mps_state(random_mps(6, 3, rng));
    EstimateReport r = estimate_overlap(psi, psi, budget(), RandomStream{1, 0});
    EXPECT_NEAR(std::abs(r.estimate.value - 1.0), 0.0, 0.05);
    EXPECT_LE(r.range.max_f_term, 1.0 + 1e-9);
    EXPECT_LE(r.range.max_g_term, 1.0 + 1e-9);
}

TEST(EstimateOverlap, DisjointSupports) {
    EstimateReport r = estimate_overlap(basis_state(BitString::parse("0000")), basis_state(BitString::parse("1111")),
                                        budget(), RandomStream{2, 0});
    EXPECT_LT(std::abs(r.estimate.value), 0.05);
}

TEST(EstimateOverlap, PlusAgainstZero) {
    EstimateReport r = estimate_overlap(plus_state(4), basis_state(BitString(4, 0)), budget(), RandomStream{3, 0});
    EXPECT_LT(std::abs(r.estimate.value - 0.25), 0.05);
}

TEST(EstimateOverlap, WidthAndFrameChecks) {
    EXPECT_THROW(estimate_overlap(plus_state(3), plus_state(4), budget(), RandomStream{}), Error);
    CtState pm = rotate_to_pm_basis(plus_state(3));
    EXPECT_THROW(estimate_overlap(plus_state(3), pm, budget(), RandomStream{}), Error);
}

TEST(EstimateMatrixElement, IdentityReducesToOverlap) {
    std::mt19937_64 rng(4);
    CtState psi = product_state(random_factors(5, rng));
    EstimateReport r = estimate_matrix_element(psi, identity_op(5), psi, budget(), RandomStream{4, 0});
    EXPECT_LT(std::abs(r.estimate.value - 1.0), 0.05);
}

TEST(EstimateMatrixElement, PermutationEntry) {
    EcsOperator x = pauli_sum_op(PauliSum::single(PauliString::parse("X")));
    EstimateReport r = estimate_matrix_element(basis_state(BitString::parse("0")), x,
                                               basis_state(BitString::parse("1")), budget(), RandomStream{5, 0});
    EXPECT_LT(std::abs(r.estimate.value - 1.0), 0.05);
}

TEST(EstimateMatrixElement, RandomStabilizerPauliSum) {
    std::mt19937_64 rng(6);
    int failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        CtState phi = stabilizer_state(6, random_clifford(6, 30, rng));
        CtState psi = stabilizer_state(6, random_clifford(6, 30, rng));
        EcsOperator a = pauli_sum_op(random_pauli_sum(6, 8, rng, false));
        EstimateReport r = estimate_matrix_element(phi, a, psi, budget(), RandomStream{7, static_cast<std::uint64_t>(trial)});
        EXPECT_LE(r.range.max_f_term, 1.0 + 1e-9);
        EXPECT_LE(r.range.max_g_term, 1.0 + 1e-9);
        if (dense_value_error(phi, a, psi, r.estimate) > 0.05) ++failures;
    }
    EXPECT_EQ(failures, 0);
}

TEST(EstimateMatrixElement, PerIndexAgreesWithDense) {
    std::mt19937_64 rng(8);
    CtState phi = product_state(random_factors(4, rng));
    CtState psi = product_state(random_factors(4, rng));
    EcsOperator a = pauli_sum_op(random_pauli_sum(4, 3, rng, false));
    ErrorBudget b = budget(0.1, 1e-2);
    b.split = SplitPolicy::PerIndex;
    EstimateReport r = estimate_matrix_element(phi, a, psi, b, RandomStream{9, 0});
    EXPECT_LT(dense_value_error(phi, a, psi, r.estimate), 0.1);
    ErrorBudget pooled = budget(0.1, 1e-2);
    EstimateReport rp = estimate_matrix_element(phi, a, psi, pooled, RandomStream{9, 0});
    EXPECT_LT(rp.estimate.samples_used, r.estimate.samples_used);
}

TEST(EstimateMatrixElement, NormAboveOneIsRescaled) {
    std::mt19937_64 rng(10);
    CtState psi = product_state(random_factors(3, rng));
    PauliSum s = random_pauli_sum(3, 4, rng, true);
    for (auto &t : s.terms) t.coeff *= 3.0;
    EcsOperator a = pauli_sum_op(s);
    EstimateReport r = estimate_matrix_element(psi, a, psi, budget(), RandomStream{11, 0});
    EXPECT_NEAR(r.scale, 3.0, 1e-12);
    EXPECT_LT(dense_value_error(psi, a, psi, r.estimate), 0.05);
}

TEST(EstimateMatrixElement, DishonestNormIsCaught) {
    EcsOperator a = pauli_sum_op(PauliSum::single(PauliString::parse("XX"), 2.0), 0.5);
    CtState plus = plus_state(2);
    EXPECT_THROW(
        {
            try {
                estimate_matrix_element(plus, a, plus, budget(), RandomStream{12, 0});
            } catch (const Error &e) {
                EXPECT_EQ(e.kind(), ErrorKind::RangeViolation);
                throw;
            }
        },
        Error);
}

TEST(EstimateMatrixElement, PolyAccuracyBudget) {
    EcsOperator a = identity_op(3);
    a.precision = Precision::PolyAccurate;
    a.entry_accuracy = 0.03;
    EXPECT_THROW(estimate_matrix_element(plus_state(3), a, plus_state(3), budget(), RandomStream{}), Error);
    a.entry_accuracy = 0.01;
    EstimateReport r = estimate_matrix_element(plus_state(3), a, plus_state(3), budget(), RandomStream{13, 0});
    EXPECT_LT(std::abs(r.estimate.value - 1.0), 0.05);
}

TEST(EstimateMatrixElement, FrameMismatchRejected) {
    CtState pm = rotate_to_pm_basis(plus_state(2));
    EXPECT_THROW(estimate_matrix_element(pm, identity_op(2), pm, budget(), RandomStream{}), Error);
    EstimateReport r = estimate_matrix_element(pm, hadamard_frame(identity_op(2)), pm, budget(), RandomStream{14, 0});
    EXPECT_LT(std::abs(r.estimate.value - 1.0), 0.05);
}

TEST(EstimateMatrixElement, DeterministicAcrossWorkers) {
    std::mt19937_64 rng(15);
    CtState phi = stabilizer_state(5, random_clifford(5, 20, rng));
    CtState psi = stabilizer_state(5, random_clifford(5, 20, rng));
    EcsOperator a = pauli_sum_op(random_pauli_sum(5, 6, rng, false));
    set_worker_count(1);
    Amplitude one = estimate_matrix_element(phi, a, psi, budget(), RandomStream{16, 0}).estimate.value;
    set_worker_count(3);
    Amplitude three = estimate_matrix_element(phi, a, psi, budget(), RandomStream{16, 0}).estimate.value;
    set_worker_count(0);
    EXPECT_EQ(one, three);
}

TEST(EstimateMatrixElement, TabulationDoesNotChangeResult) {
    std::mt19937_64 rng(17);
    CtState phi = mps_state(random_mps(5, 2, rng));
    CtState psi = mps_state(random_mps(5, 2, rng));
    EcsOperator a = pauli_sum_op(random_pauli_sum(5, 5, rng, false));
    EstimatorOptions off;
    off.tabulate = false;
    Amplitude plain = estimate_matrix_element(phi, a, psi, budget(0.1), RandomStream{18, 0}, off).estimate.value;
    Amplitude table = estimate_matrix_element(phi, a, psi, budget(0.1), RandomStream{18, 0}).estimate.value;
    EXPECT_LT(std::abs(plain - table), 1e-12);
}

TEST(EstimateMatrixElement, BudgetScalesQuadratically) {
    CtState psi = plus_state(3);
    EcsOperator a = pauli_sum_op(PauliSum::single(PauliString::parse("XZI")));
    auto k1 = estimate_matrix_element(psi, a, psi, budget(0.1), RandomStream{}).estimate.samples_used;
    auto k2 = estimate_matrix_element(psi, a, psi, budget(0.05), RandomStream{}).estimate.samples_used;
    EXPECT_LE(k2, 4 * k1 + 4);
    EXPECT_GE(k2 + 8, 4 * k1);
}

TEST(EstimateMatrixElement, MixedFamiliesAgainstDense) {
    std::mt19937_64 rng(19);
    Rng mg(20);
    int failures = 0;
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 4 + trial % 3;
        std::vector<CtState> states = {
            product_state(random_factors(n, rng)),
            stabilizer_state(n, random_clifford(n, 20, rng)),
            mps_state(random_mps(n, 2, rng)),
            qft_product_state(random_factors(n, rng)),
            matchgate_state(random_matchgate_circuit(n, 12, mg), BitString(n, 0)),
            phase_state(n, [](const BitString &x) { return 0.3 * static_cast<double>(x.word() % 7); }),
        };
        const CtState &phi = states[static_cast<size_t>(trial) % states.size()];
        const CtState &psi = states[static_cast<size_t>(trial + 2) % states.size()];
        std::vector<EcsOperator> ops = {
            pauli_sum_op(random_pauli_sum(n, 5, rng, false)),
            basis_preserving_op(n, {Gate::toffoli(0, 1, 2), Gate::two(GateKind::CPhase, 1, 3, 0.7)}),
            local_gate_op(random_unitary(4, rng), {1, 2}, n),
        };
        ops.push_back(compose(ops[2], ops[1]));
        for (const EcsOperator &a : ops) {
            EstimateReport r = estimate_matrix_element(phi, a, psi, budget(), RandomStream{21, rng()});
            if (dense_value_error(phi, a, psi, r.estimate) > 0.05) ++failures;
        }
    }
    EXPECT_LE(failures, 1);
}

TEST(EstimateLocalObservable, Examples) {
    EstimateReport z = estimate_local_observable(basis_state(BitString::parse("0")),
                                                 PauliSum::single(PauliString::parse("Z")), budget(), RandomStream{22, 0});
    EXPECT_LT(std::abs(z.estimate.value - 1.0), 0.05);
    EstimateReport x = estimate_local_observable(plus_state(1), PauliSum::single(PauliString::parse("X")), budget(),
                                                 RandomStream{23, 0});
    EXPECT_LT(std::abs(x.estimate.value - 1.0), 0.05);
}

TEST(EstimateLocalObservable, MpsTwoPointFunction) {
    std::mt19937_64 rng(24);
    CtState psi = mps_state(random_mps(8, 4, rng));
    PauliSum o = PauliSum::single(PauliString::parse("IIZZIIII"));
    EstimateReport r = estimate_local_observable(psi, o, budget(), RandomStream{25, 0});
    Amplitude truth = dense_matrix_element(DenseState::from(psi), pauli_sum_op(o), DenseState::from(psi));
    EXPECT_LT(std::abs(r.estimate.value - truth), 0.05);
}

TEST(EstimateLocalObservable, PlusMinusFrame) {
    std::mt19937_64 rng(26);
    CtState comp = product_state(random_factors(3, rng));
    // Same physical state, written in the plus/minus frame.
    CtState pm = rotate_to_pm_basis(comp);
    PauliSum o{3, {{0.5, PauliString::parse("XIZ")}, {0.5, PauliString::parse("YYI")}, {0.25, PauliString::parse("IYZ")}}};
    Amplitude truth = dense_matrix_element(DenseState::from(comp), pauli_sum_op(o), DenseState::from(comp));
    Amplitude got = estimate_local_observable(pm, o, budget(0.02), RandomStream{28, 0}).estimate.value;
    EXPECT_LT(std::abs(got - truth), 0.02);
}

TEST(EstimateLocalObservable, LocalityBound) {
    PauliSum o = PauliSum::single(PauliString::parse("ZZZZ"));
    EXPECT_THROW(estimate_local_observable(plus_state(4), o, budget(), RandomStream{}, 2), Error);
}

TEST(EstimatePartialProjected, TrivialCases) {
    CtState zero = basis_state(BitString(4, 0));
    CtState z1 = basis_state(BitString(1, 0));
    EstimateReport a = estimate_partial_projected(zero, identity_op(4), z1, z1, identity_op(4), zero, budget(),
                                                  RandomStream{29, 0});
    EXPECT_LT(std::abs(a.estimate.value - 1.0), 0.05);
    EstimateReport b = estimate_partial_projected(plus_state(4), identity_op(4), z1, z1, identity_op(4), plus_state(4),
                                                  budget(), RandomStream{30, 0});
    EXPECT_LT(std::abs(b.estimate.value - 0.5), 0.05);
}

TEST(EstimatePartialProjected, DeutschJozsa) {
    const int n = 6;
    auto balanced = [](std::uint64_t x) { return (std::popcount(x & 0b101101u) % 2) == 1; };
    auto constant = [](std::uint64_t) { return true; };
    for (int which = 0; which < 2; ++which) {
        EcsOperator uf = phase_oracle(n, which == 0 ? std::function<bool(std::uint64_t)>(balanced) : constant);
        CtState plus = plus_state(n);
        EstimateReport r = estimate_partial_projected(plus, adjoint(uf), plus, plus, uf, plus, budget(),
                                                      RandomStream{31, static_cast<std::uint64_t>(which)});
        EXPECT_LT(std::abs(r.estimate.value - (which == 0 ? 0.0 : 1.0)), 0.05);
    }
}

TEST(Tabulated, MatchesOriginal) {
    std::mt19937_64 rng(32);
    CtState psi = mps_state(random_mps(4, 2, rng));
    CtState t = tabulated(psi);
    for (std::uint64_t x = 0; x < 16; ++x) EXPECT_EQ(t.amplitude_word(x), psi.amplitude_word(x));
    EcsOperator a = pauli_sum_op(random_pauli_sum(4, 6, rng, false));
    EcsOperator ta = tabulated(a);
    for (std::uint64_t x = 0; x < 16; ++x) {
        EcsList c1 = a.column(x), c2 = ta.column(x);
        ASSERT_EQ(c1.size(), c2.size());
        for (size_t i = 0; i < c1.size(); ++i) EXPECT_EQ(c1[i].index, c2[i].index);
    }
}
