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

#include "wsim/ct_states.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/pauli.hpp"
#include "wsim/random.hpp"
#include "wsim/sampling.hpp"

namespace wsim {

enum class SplitPolicy {
    /// F = sum_i F_i and G = sum_i G_i sampled once each at (eps/2, delta/2).
    Pooled,
    /// Each F_i and G_i sampled separately at (eps/2s, delta/2s).
    PerIndex,
};

/// Total accuracy and failure probability handed to one estimate.
struct ErrorBudget {
    double epsilon = 0.05;
    double delta = 1e-3;
    SplitPolicy split = SplitPolicy::Pooled;
    /// Real when the target value is known to be real; only real parts are sampled.
    ValueKind kind = ValueKind::Complex;

    void validate() const;
    /// Budget with epsilon and delta multiplied by the given fractions.
    ErrorBudget share(double epsilon_fraction, double delta_fraction) const;
};

/// Largest per-term magnitudes seen while sampling. The limits are one for
/// |F_i| and s for |G_i|; `max_g_term` is stored divided by s.
struct RangeReport {
    std::uint64_t evaluations = 0;
    double max_f_term = 0.0;
    double max_g_term = 0.0;
    double max_pooled_ratio = 0.0;

    void merge(const RangeReport &o);
};

struct EstimateReport {
    Estimate estimate;
    std::size_t sparseness = 1;
    /// The operator was divided by this factor before sampling.
    double scale = 1.0;
    RangeReport range;
};

struct EstimatorOptions {
    /// Replace amplitudes and enumerators by lookup tables when 2^n does not
    /// exceed the number of samples to be drawn (n <= 16).
    bool tabulate = true;
};

/// <phi|psi>.
EstimateReport estimate_overlap(const CtState &phi, const CtState &psi, const ErrorBudget &budget,
                                const RandomStream &stream, const EstimatorOptions &options = {});

/// <phi|A|psi> for an ECS operator. Operators declaring norm_bound > 1 are
/// divided by it and the estimate rescaled, with the accuracy tightened to match.
EstimateReport estimate_matrix_element(const CtState &phi, const EcsOperator &a, const CtState &psi,
                                       const ErrorBudget &budget, const RandomStream &stream,
                                       const EstimatorOptions &options = {});

/// <psi|O|psi> term by term through overlaps <psi|P_i psi>. Terms act on at
/// most `max_locality` qubits (default floor(2 log2 n) + 2).
EstimateReport estimate_local_observable(const CtState &psi, const PauliSum &o, const ErrorBudget &budget,
                                         const RandomStream &stream, int max_locality = -1);

/// <phi| A [|xi><chi| (x) I] B |psi> with xi, chi on the first k qubits.
EstimateReport estimate_partial_projected(const CtState &phi, const EcsOperator &a, const CtState &xi,
                                          const CtState &chi, const EcsOperator &b, const CtState &psi,
                                          const ErrorBudget &budget, const RandomStream &stream,
                                          const EstimatorOptions &options = {});

/// Amplitude table of psi; sampling still goes through the original model.
CtState tabulated(const CtState &psi);
/// Column and row tables of an operator.
EcsOperator tabulated(const EcsOperator &a);

}  // namespace wsim
