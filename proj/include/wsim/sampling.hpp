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

#include <cstdint>
#include <functional>

#include "wsim/bitstring.hpp"
#include "wsim/random.hpp"

namespace wsim {

/// A sampled estimate together with the guarantee it was produced under:
/// with probability at least 1 - delta, |value - truth| <= epsilon.
struct Estimate {
    Amplitude value{};
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t samples_used = 0;
};

enum class ValueKind { Real, Complex };

using Sampler = std::function<BitString(Rng &)>;
using Evaluator = std::function<Amplitude(const BitString &)>;

/// Number of i.i.d. draws K such that the mean of a variable bounded by
/// `range` is within `epsilon` of its expectation except with probability
/// `delta`: K = ceil(4 M^2 ln(2/delta) / epsilon^2).
std::uint64_t required_samples(double epsilon, double delta, double range);

/// Largest |f(x)| / range seen while accumulating.
struct RangeAudit {
    double max_ratio = 0.0;
    std::uint64_t evaluations = 0;
};

namespace kernels {

/// Sum of f(x_k) for k in [0, count), x_k drawn from `sampler` with the
/// generator stream.at(k). Throws Error(RangeViolation) as soon as any
/// |f(x_k)| exceeds `range` (beyond round-off).
///
/// The parallel kernel accumulates fixed-size blocks and reduces them in
/// block order, so its result does not depend on the thread count.
Amplitude accumulate_parallel(std::uint64_t count, const Sampler &sampler, const Evaluator &f,
                              const RandomStream &stream, double range, RangeAudit *audit = nullptr);

/// Straight sequential loop; the reference the parallel kernel is tested
/// against (equal up to summation-order round-off).
Amplitude accumulate_serial(std::uint64_t count, const Sampler &sampler, const Evaluator &f,
                            const RandomStream &stream, double range, RangeAudit *audit = nullptr);

}  // namespace kernels

/// Plain Monte-Carlo estimate of sum_x P(x) f(x) for x ~ P drawn by `sampler`.
///
/// Real-valued f gets K = required_samples(epsilon, delta, range). Complex
/// f is treated as two real means, each to epsilon/sqrt(2) with failure
/// delta/2, so the Euclidean error is at most epsilon overall.
Estimate estimate_mean(const Sampler &sampler, const Evaluator &f, double epsilon, double delta,
                       double range, const RandomStream &stream, ValueKind kind = ValueKind::Complex,
                       RangeAudit *audit = nullptr);

/// Samples a complex mean needs to reach (epsilon, delta).
std::uint64_t required_samples_for(double epsilon, double delta, double range, ValueKind kind);

/// Worker count for the OpenMP kernels; 0 restores the runtime default.
void set_worker_count(int workers);
int worker_count();

}  // namespace wsim
