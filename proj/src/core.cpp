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


#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wsim/bitstring.hpp"
#include "wsim/errors.hpp"
#include "wsim/sampling.hpp"

namespace wsim {

const char *error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::WidthMismatch: return "width-mismatch";
        case ErrorKind::RangeViolation: return "range-violation";
        case ErrorKind::Budget: return "budget";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::OutOfClass: return "out-of-class";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Verification: return "verification";
    }
    return "unknown";
}

BitString BitString::parse(const std::string &text) {
    require(!text.empty() && text.size() <= kMaxQubits, ErrorKind::Parse, "bit string length must lie in [1, 64]");
    std::uint64_t word = 0;
    for (char c : text) {
        require(c == '0' || c == '1', ErrorKind::Parse, "bit string may only contain '0' and '1': " + text);
        word = (word << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return BitString(static_cast<int>(text.size()), word);
}

std::string BitString::to_string() const {
    std::string out(static_cast<size_t>(width_), '0');
    for (int q = 0; q < width_; ++q) {
        if (bit(q)) out[static_cast<size_t>(q)] = '1';
    }
    return out;
}

std::uint64_t required_samples(double epsilon, double delta, double range) {
    require(epsilon > 0 && std::isfinite(epsilon), ErrorKind::Domain, "epsilon must be positive");
    require(delta > 0 && delta < 1, ErrorKind::Domain, "delta must lie in (0, 1)");
    require(range >= 0 && std::isfinite(range), ErrorKind::Domain, "range bound must be nonnegative");
    double k = 4.0 * range * range * std::log(2.0 / delta) / (epsilon * epsilon);
    require(k < 9.0e18, ErrorKind::Budget, "required sample count overflows");
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(k)));
}

std::uint64_t required_samples_for(double epsilon, double delta, double range, ValueKind kind) {
    if (kind == ValueKind::Real) return required_samples(epsilon, delta, range);
    return required_samples(epsilon / std::sqrt(2.0), delta / 2.0, range);
}

namespace {

// Slack for round-off in F(x) evaluations that sit exactly on the bound.
constexpr double kRangeSlack = 1e-9;

[[noreturn]] void range_violation(const BitString &x, Amplitude value, double range) {
    std::ostringstream msg;
    msg << "sampled value |f(" << x.to_string() << ")| = " << std::abs(value) << " exceeds declared range "
        << range;
    fail(ErrorKind::RangeViolation, msg.str());
}

inline Amplitude evaluate_checked(std::uint64_t k, const Sampler &sampler, const Evaluator &f,
                                  const RandomStream &stream, double range, double &max_ratio) {
    Rng rng = stream.at(k);
    BitString x = sampler(rng);
    Amplitude v = f(x);
    double mag = std::abs(v);
    if (!(mag <= range * (1 + kRangeSlack) + kRangeSlack)) range_violation(x, v, range);
    if (range > 0) max_ratio = std::max(max_ratio, mag / range);
    return v;
}

constexpr std::uint64_t kBlock = 1024;

}  // namespace

namespace kernels {

Amplitude accumulate_parallel(std::uint64_t count, const Sampler &sampler, const Evaluator &f,
                              const RandomStream &stream, double range, RangeAudit *audit) {
    const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
    std::vector<Amplitude> partial(blocks);
    std::vector<double> ratios(blocks, 0.0);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const auto nblocks = static_cast<std::int64_t>(blocks);

#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlock;
            std::uint64_t end = std::min(count, begin + kBlock);
            Amplitude sum{};
            double max_ratio = 0;
            for (std::uint64_t k = begin; k < end; ++k) {
                sum += evaluate_checked(k, sampler, f, stream, range, max_ratio);
            }
            partial[static_cast<size_t>(b)] = sum;
            ratios[static_cast<size_t>(b)] = max_ratio;
        } catch (...) {
#pragma omp critical(wsim_accumulate_error)
            if (!error) error = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    }
    if (error) std::rethrow_exception(error);

    Amplitude total{};
    for (const Amplitude &p : partial) total += p;
    if (audit) {
        for (double r : ratios) audit->max_ratio = std::max(audit->max_ratio, r);
        audit->evaluations += count;
    }
    return total;
}

Amplitude accumulate_serial(std::uint64_t count, const Sampler &sampler, const Evaluator &f,
                            const RandomStream &stream, double range, RangeAudit *audit) {
    Amplitude total{};
    double max_ratio = 0;
    for (std::uint64_t k = 0; k < count; ++k) {
        total += evaluate_checked(k, sampler, f, stream, range, max_ratio);
    }
    if (audit) {
        audit->max_ratio = std::max(audit->max_ratio, max_ratio);
        audit->evaluations += count;
    }
    return total;
}

}  // namespace kernels

Estimate estimate_mean(const Sampler &sampler, const Evaluator &f, double epsilon, double delta, double range,
                       const RandomStream &stream, ValueKind kind, RangeAudit *audit) {
    std::uint64_t k = required_samples_for(epsilon, delta, range, kind);
    Amplitude sum = kernels::accumulate_parallel(k, sampler, f, stream, range, audit);
    Estimate est;
    est.value = sum / static_cast<double>(k);
    if (kind == ValueKind::Real) est.value = Amplitude(est.value.real(), 0.0);
    est.epsilon = epsilon;
    est.delta = delta;
    est.samples_used = k;
    return est;
}

void set_worker_count(int workers) {
#ifdef _OPENMP
    omp_set_num_threads(workers > 0 ? workers : omp_get_num_procs());
#else
    (void)workers;
#endif
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace wsim
