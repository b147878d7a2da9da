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

#include <optional>
#include <string>
#include <vector>

#include "wsim/ct_states.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/estimators.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"

namespace wsim {

/// <psi| U^dagger O U |psi> as a CT state and the ECS operator U^dagger O U.
struct CircuitPlan {
    CtState input;
    EcsOperator observable;
    Frame frame = Frame::Computational;
    /// Rules that justified the plan, in the order they fired.
    std::vector<std::string> notes;
    /// Observable is Hermitian; only the real part is estimated.
    bool hermitian = true;

    void validate() const;
};

struct SimulationResult {
    EstimateReport report;
    std::vector<std::string> notes;
    /// Number of leading stages used to prepare the CT state.
    int split = -1;
};

SimulationResult simulate_theorem1(const CircuitPlan &plan, const ErrorBudget &budget, const RandomStream &stream,
                                   const EstimatorOptions &options = {});

/// Z on qubit 0.
PauliSum z1_observable(int n);

struct SparseCircuitOptions {
    /// Defaults to Z on qubit 0.
    std::optional<PauliSum> observable;
    std::size_t sparseness_budget = kDefaultSparsenessBudget;
};

/// Ops are applied in list order. Each must be unitary.
CircuitPlan plan_sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input,
                                const SparseCircuitOptions &options = {});
SimulationResult simulate_sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input,
                                         const ErrorBudget &budget, const RandomStream &stream,
                                         const SparseCircuitOptions &options = {});

/// One stage of a composed circuit: a gate list, an explicit ECS unitary, or
/// an MPS preparation (first stage only, on |0...0>).
struct Stage {
    std::string label;
    Circuit gates;
    std::optional<EcsOperator> ecs;
    std::optional<MpsDescription> mps;
};

struct ComposedOptions {
    /// Defaults to Z on qubit 0.
    std::optional<PauliSum> observable;
    /// Forces the number of CT stages; -1 takes the longest valid CT prefix.
    int split = -1;
    std::size_t sparseness_budget = 4096;
    std::size_t max_pauli_terms = 4096;
};

/// Circuits of depth at most this count as constant depth.
inline constexpr int kConstantDepthBound = 4;
/// ceil(2 log2 n).
int log_depth_bound(int n);
/// Number of layers when gates are packed greedily.
int circuit_depth(const Circuit &gates, int n);

CircuitPlan plan_composed(const CtState &input, const std::vector<Stage> &stages,
                          const ComposedOptions &options = {}, int *split_out = nullptr);
SimulationResult simulate_composed(const CtState &input, const std::vector<Stage> &stages,
                                   const ErrorBudget &budget, const RandomStream &stream,
                                   const ComposedOptions &options = {});

/// Gates restricted to CNOT and ExpX; measures Z on `qubit`.
CircuitPlan plan_cnot_expx(const Circuit &circuit, const CtState &input, int qubit = 0);
SimulationResult simulate_cnot_expx(const Circuit &circuit, const CtState &input, const ErrorBudget &budget,
                                    const RandomStream &stream, int qubit = 0);

/// Probability that the first k qubits read 0 after V3 V2 V1 |0...0>, with
/// V1 and V3 layers of single-qubit gates.
SimulationResult simulate_dj_class(const Circuit &v1, const EcsOperator &v2, const Circuit &v3, int k,
                                   const ErrorBudget &budget, const RandomStream &stream,
                                   const EstimatorOptions &options = {});

}  // namespace wsim
