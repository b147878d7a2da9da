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

#include <cmath>

#include "wsim/bitstring.hpp"
#include "wsim/errors.hpp"
#include "wsim/random.hpp"
#include "wsim/sampling.hpp"

using namespace wsim;

namespace {

// Smallest K with 2 exp(-K eps^2 / (4 M^2)) <= delta, found by stepping.
std::uint64_t smallest_k_by_search(double eps, double delta, double m) {
    std::uint64_t k = 1;
    while (2.0 * std::exp(-static_cast<double>(k) * eps * eps / (4.0 * m * m)) > delta) ++k;
    return k;
}

}  // namespace

TEST(BitString, WidthAndMasking) {
    BitString b(4, 0xff);
    EXPECT_EQ(b.word(), 0xfu);
    EXPECT_EQ(b.to_string(), "1111");
    EXPECT_THROW(BitString(0, 0), Error);
    EXPECT_THROW(BitString(65, 0), Error);
    EXPECT_EQ(BitString(64, ~0ULL).popcount(), 64);
}

TEST(BitString, QubitZeroIsLeading) {
    BitString b = BitString::parse("1000");
    EXPECT_EQ(b.word(), 8u);
    EXPECT_EQ(b.bit(0), 1);
    EXPECT_EQ(b.bit(3), 0);
    EXPECT_EQ(b.with_bit(3, 1).to_string(), "1001");
    EXPECT_EQ(b.flipped(0).to_string(), "0000");
}

TEST(BitString, XorRequiresEqualWidth) {
    BitString a = BitString::parse("1100"), c = BitString::parse("1010");
    EXPECT_EQ((a ^ c).to_string(), "0110");
    EXPECT_THROW(a ^ BitString::parse("10"), Error);
}

TEST(BitString, ConcatAndSlice) {
    BitString a = BitString::parse("10"), c = BitString::parse("011");
    BitString ac = a.concat(c);
    EXPECT_EQ(ac.to_string(), "10011");
    EXPECT_EQ(ac.slice(2, 3), c);
    EXPECT_EQ(ac.slice(0, 2), a);
}

TEST(BitString, ParseRejectsGarbage) {
    EXPECT_THROW(BitString::parse("10a"), Error);
    EXPECT_THROW(BitString::parse(""), Error);
}

TEST(RequiredSamples, PinnedValues) {
    EXPECT_EQ(required_samples(0.1, 0.01, 1.0), 2120u);
    EXPECT_EQ(required_samples(2.0, 0.5, 1.0), 2u);
    EXPECT_EQ(required_samples(0.1, 0.01, 2.0), 8478u);
}

TEST(RequiredSamples, AgreesWithTailBoundSearch) {
    for (double eps : {0.5, 0.2, 0.1}) {
        for (double delta : {0.3, 0.05, 0.001}) {
            for (double m : {1.0, 1.5, 3.0}) {
                EXPECT_EQ(required_samples(eps, delta, m), smallest_k_by_search(eps, delta, m))
                    << eps << " " << delta << " " << m;
            }
        }
    }
}

TEST(RequiredSamples, DomainErrors) {
    EXPECT_THROW(required_samples(0.0, 0.1, 1.0), Error);
    EXPECT_THROW(required_samples(-1.0, 0.1, 1.0), Error);
    EXPECT_THROW(required_samples(0.1, 0.0, 1.0), Error);
    EXPECT_THROW(required_samples(0.1, 1.0, 1.0), Error);
    EXPECT_THROW(required_samples(0.1, 0.1, -1.0), Error);
    try {
        required_samples(0.1, 1.5, 1.0);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST(RequiredSamples, Monotone) {
    std::uint64_t prev = ~0ULL;
    for (double eps = 0.05; eps < 1.0; eps += 0.05) {
        std::uint64_t k = required_samples(eps, 0.01, 1.0);
        EXPECT_LE(k, prev);
        prev = k;
    }
    prev = ~0ULL;
    for (double delta = 0.001; delta < 0.9; delta *= 1.7) {
        std::uint64_t k = required_samples(0.1, delta, 1.0);
        EXPECT_LE(k, prev);
        prev = k;
    }
    double base = 4.0 * std::log(2.0 / 0.01) / 0.01;
    EXPECT_NEAR(static_cast<double>(required_samples(0.1, 0.01, 3.0)), 9 * base, 1.0);
}

TEST(RandomStream, PureFunctionOfKey) {
    RandomStream s{7, 3};
    EXPECT_EQ(s.at(11).next_u64(), RandomStream({7, 3}).at(11).next_u64());
    EXPECT_NE(s.at(11).next_u64(), s.at(12).next_u64());
    EXPECT_NE(s.at(11).next_u64(), RandomStream({7, 4}).at(11).next_u64());
    EXPECT_NE(s.child(0).stream_index, s.child(1).stream_index);
}

TEST(RandomStream, UniformMoments) {
    RandomStream s{1, 0};
    double sum = 0, sq = 0;
    const int k = 200000;
    for (int i = 0; i < k; ++i) {
        double u = s.at(static_cast<std::uint64_t>(i)).uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
        sq += u * u;
    }
    EXPECT_NEAR(sum / k, 0.5, 0.005);
    EXPECT_NEAR(sq / k, 1.0 / 3.0, 0.005);
}

namespace {

Sampler uniform_bits(int n) {
    return [n](Rng &rng) { return BitString(n, rng.next_u64()); };
}

}  // namespace

TEST(EstimateMean, SymmetricSign) {
    Evaluator f = [](const BitString &x) { return Amplitude(x.bit(0) ? -1.0 : 1.0); };
    Estimate e = estimate_mean(uniform_bits(1), f, 0.05, 0.001, 1.0, {5, 0}, ValueKind::Real);
    EXPECT_NEAR(e.value.real(), 0.0, 0.05);
    EXPECT_EQ(e.samples_used, required_samples(0.05, 0.001, 1.0));
}

TEST(EstimateMean, PointMassIsExact) {
    Sampler point = [](Rng &) { return BitString::parse("101"); };
    Evaluator one = [](const BitString &) { return Amplitude(1.0); };
    Estimate e = estimate_mean(point, one, 0.3, 0.1, 1.0, {0, 0});
    EXPECT_EQ(e.value, Amplitude(1.0));
}

TEST(EstimateMean, ProductOfTwoBits) {
    double exact = 0;
    for (int x = 0; x < 16; ++x) exact += ((x >> 3) & (x >> 2) & 1) ? -1.0 : 1.0;
    exact /= 16;
    Evaluator f = [](const BitString &x) { return Amplitude((x.bit(0) & x.bit(1)) ? -1.0 : 1.0); };
    Estimate e = estimate_mean(uniform_bits(4), f, 0.05, 0.001, 1.0, {9, 2}, ValueKind::Real);
    EXPECT_NEAR(e.value.real(), exact, 0.05);
    EXPECT_DOUBLE_EQ(exact, 0.5);
}

TEST(EstimateMean, ComplexBudget) {
    EXPECT_EQ(required_samples_for(0.1, 0.01, 1.0, ValueKind::Complex),
              required_samples(0.1 / std::sqrt(2.0), 0.005, 1.0));
    Evaluator f = [](const BitString &x) { return x.bit(0) ? Amplitude(0, 1) : Amplitude(1, 0); };
    Estimate e = estimate_mean(uniform_bits(1), f, 0.05, 0.001, 1.0, {3, 1});
    EXPECT_LT(std::abs(e.value - Amplitude(0.5, 0.5)), 0.05);
}

TEST(EstimateMean, RangeViolationAborts) {
    Evaluator f = [](const BitString &x) { return Amplitude(x.bit(0) ? 2.0 : 0.0); };
    try {
        estimate_mean(uniform_bits(1), f, 0.1, 0.1, 1.0, {0, 0});
        FAIL() << "expected a range violation";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::RangeViolation);
    }
}

TEST(EstimateMean, AuditTracksLargestRatio) {
    Evaluator f = [](const BitString &x) { return Amplitude(x.bit(0) ? 0.5 : 0.25); };
    RangeAudit audit;
    estimate_mean(uniform_bits(1), f, 0.2, 0.1, 1.0, {0, 0}, ValueKind::Real, &audit);
    EXPECT_DOUBLE_EQ(audit.max_ratio, 0.5);
    EXPECT_EQ(audit.evaluations, required_samples(0.2, 0.1, 1.0));
}

TEST(EstimateMean, IndependentOfWorkerCount) {
    Evaluator f = [](const BitString &x) {
        return Amplitude(std::cos(static_cast<double>(x.word())), std::sin(static_cast<double>(x.word())));
    };
    set_worker_count(1);
    Estimate a = estimate_mean(uniform_bits(10), f, 0.02, 0.01, 1.0, {42, 0});
    set_worker_count(4);
    Estimate b = estimate_mean(uniform_bits(10), f, 0.02, 0.01, 1.0, {42, 0});
    set_worker_count(0);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.samples_used, b.samples_used);
}

TEST(Kernels, ParallelMatchesSerial) {
    Evaluator f = [](const BitString &x) { return Amplitude(x.popcount() % 3 - 1.0, 0.5); };
    RandomStream s{77, 5};
    for (std::uint64_t count : {1ULL, 1023ULL, 1024ULL, 1025ULL, 50000ULL}) {
        Amplitude p = kernels::accumulate_parallel(count, uniform_bits(12), f, s, 2.0);
        Amplitude q = kernels::accumulate_serial(count, uniform_bits(12), f, s, 2.0);
        EXPECT_NEAR(std::abs(p - q), 0.0, 1e-9 * static_cast<double>(count));
    }
}

TEST(Kernels, ExceptionsPropagateFromWorkers) {
    Sampler bad = [](Rng &rng) -> BitString {
        if (rng.next_u64() % 5000 == 0) fail(ErrorKind::Precondition, "sampler failure");
        return BitString(1, 0);
    };
    Evaluator one = [](const BitString &) { return Amplitude(1.0); };
    EXPECT_THROW(kernels::accumulate_parallel(200000, bad, one, {1, 1}, 1.0), Error);
}

TEST(EstimateMean, CoverageOverRepetitions) {
    // Biased coin with known mean; count how often the error exceeds epsilon.
    const double p = 0.3, eps = 0.1, delta = 0.05;
    Sampler coin = [p](Rng &rng) { return BitString(1, rng.uniform() < p ? 1 : 0); };
    Evaluator f = [](const BitString &x) { return Amplitude(static_cast<double>(x.bit(0))); };
    const int reps = 1000;
    int failures = 0;
    for (int r = 0; r < reps; ++r) {
        Estimate e = estimate_mean(coin, f, eps, delta, 1.0, RandomStream{123, static_cast<std::uint64_t>(r)},
                                   ValueKind::Real);
        if (std::abs(e.value.real() - p) > eps) ++failures;
    }
    double sigma = std::sqrt(delta * (1 - delta) / reps);
    EXPECT_LE(static_cast<double>(failures) / reps, delta + 3 * sigma);
}
