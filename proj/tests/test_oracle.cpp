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

#include <numbers>
#include <random>

#include "test_util.hpp"
#include "wsim/errors.hpp"
#include "wsim/oracle.hpp"

using namespace wsim;
using namespace wsim::testing;

namespace {

Circuit random_mixed_circuit(int n, int gates, std::mt19937_64 &rng) {
    Circuit c;
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int g = 0; g < gates; ++g) {
        int a = static_cast<int>(rng() % static_cast<unsigned>(n));
        int b = (a + 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1))) % n;
        switch (rng() % 6) {
            case 0: c.push_back(Gate::single(GateKind::H, a)); break;
            case 1: c.push_back(Gate::single(GateKind::ExpX, a, angle(rng))); break;
            case 2: c.push_back(Gate::single(GateKind::ExpZ, a, angle(rng))); break;
            case 3: c.push_back(Gate::two(GateKind::CNOT, a, b)); break;
            case 4: c.push_back(Gate::two(GateKind::CPhase, a, b, angle(rng))); break;
            default: c.push_back(Gate::unitary({a, b}, random_unitary(4, rng))); break;
        }
    }
    return c;
}

}  // namespace

TEST(DenseEvolve, HadamardOnZero) {
    DenseState s = dense_evolve({Gate::single(GateKind::H, 0)}, BitString::parse("0"));
    EXPECT_NEAR(std::abs(s.amps[0] - 1 / std::numbers::sqrt2), 0, 1e-15);
    EXPECT_NEAR(std::abs(s.amps[1] - 1 / std::numbers::sqrt2), 0, 1e-15);
}

TEST(DenseEvolve, QftOfZeroIsUniform) {
    Gate qft{GateKind::QFT, {0, 1, 2, 3}};
    DenseState s = dense_evolve({qft}, BitString::parse("0000"));
    for (const auto &a : s.amps) EXPECT_NEAR(std::abs(a - 0.25), 0, 1e-14);
}

TEST(DenseEvolve, Ghz3) {
    Circuit c = {Gate::single(GateKind::H, 0), Gate::two(GateKind::CNOT, 0, 1), Gate::two(GateKind::CNOT, 1, 2)};
    DenseState s = dense_evolve(c, BitString::parse("000"));
    for (std::size_t x = 0; x < 8; ++x) {
        double expect = (x == 0 || x == 7) ? 1 / std::numbers::sqrt2 : 0.0;
        EXPECT_NEAR(std::abs(s.amps[x] - expect), 0, 1e-15);
    }
}

TEST(DenseEvolve, MatchesKroneckerReference) {
    std::mt19937_64 rng(1);
    const int n = 5;
    for (int trial = 0; trial < 5; ++trial) {
        Circuit c = random_mixed_circuit(n, 30, rng);
        c.push_back(Gate::toffoli(4, 0, 2));
        c.push_back(Gate{GateKind::QFT, {3, 1, 4}});
        DenseState s = dense_evolve(c, BitString(n, 0b10110));
        CMat u = identity(32);
        for (const Gate &g : c) {
            std::vector<Amplitude> m;
            if (g.kind == GateKind::QFT) {
                m.resize(64);
                for (int y = 0; y < 8; ++y)
                    for (int x = 0; x < 8; ++x) m[y * 8 + x] = std::polar(1 / std::sqrt(8.0), 2 * std::numbers::pi * x * y / 8);
            } else {
                m = gate_matrix(g);
            }
            u = matmul(embed(m, g.targets, n), u);
        }
        for (std::size_t x = 0; x < 32; ++x) EXPECT_NEAR(std::abs(s.amps[x] - u[x][0b10110]), 0, 1e-12);
    }
}

TEST(DenseEvolve, OracleGatePermutes) {
    auto f = std::make_shared<BooleanFunction>(BooleanFunction{2, [](std::uint64_t x) { return x == 3; }, "and"});
    Gate g = Gate::oracle_gate({0, 1, 2}, f);
    EXPECT_EQ(dense_evolve({g}, BitString::parse("110")).amps[7], Amplitude(1.0));
    EXPECT_EQ(dense_evolve({g}, BitString::parse("100")).amps[4], Amplitude(1.0));
}

TEST(DenseEvolve, ParallelEqualsSerial) {
    std::mt19937_64 rng(2);
    const int n = 10;
    Circuit c = random_mixed_circuit(n, 60, rng);
    DenseState a = DenseState::basis(BitString(n, 0));
    DenseState b = a;
    for (const Gate &g : c) {
        kernels::apply_gate_parallel(g, a);
        kernels::apply_gate_serial(g, b);
    }
    for (std::size_t x = 0; x < a.amps.size(); ++x) EXPECT_EQ(a.amps[x], b.amps[x]);
}

TEST(DenseEvolve, NormDrift) {
    std::mt19937_64 rng(3);
    DenseState s = dense_evolve(random_mixed_circuit(8, 100, rng), BitString(8, 5));
    EXPECT_NEAR(s.norm(), 1.0, 1e-8);
}

TEST(DenseEvolve, CapEnforced) {
    EXPECT_THROW(dense_evolve({}, BitString(13, 0)), Error);
    EXPECT_NO_THROW(dense_evolve({}, BitString(13, 0), 13));
}

TEST(DenseMatrixElement, Basics) {
    DenseState zero = DenseState::basis(BitString::parse("0")), one = DenseState::basis(BitString::parse("1"));
    Eigen::MatrixXcd x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_EQ(dense_matrix_element(zero, x, one), Amplitude(1.0));
    EXPECT_EQ(dense_matrix_element(one, Eigen::MatrixXcd::Identity(2, 2), one), Amplitude(1.0));
}

TEST(SpectralNorm, KnownValues) {
    EXPECT_NEAR(dense_spectral_norm(Eigen::MatrixXcd::Identity(8, 8)).spectral, 1.0, 1e-8);
    Eigen::MatrixXcd xi = Eigen::MatrixXcd::Zero(4, 4);
    xi(0, 2) = xi(2, 0) = xi(1, 3) = xi(3, 1) = 1.0;
    NormReport r = dense_spectral_norm(xi);
    EXPECT_NEAR(r.spectral, 1.0, 1e-8);
    EXPECT_DOUBLE_EQ(r.max_row_sum, 1.0);
    EXPECT_DOUBLE_EQ(r.max_col_sum, 1.0);
}

TEST(SpectralNorm, MatchesSvd) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::MatrixXcd a(16, 16);
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) a(i, j) = Amplitude(g(rng), g(rng));
        double svd = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
        NormReport r = dense_spectral_norm(a);
        EXPECT_NEAR(r.spectral, svd, 1e-7 * svd);
        EXPECT_LE(r.spectral * r.spectral, r.max_row_sum * r.max_col_sum + 1e-9);
    }
}
