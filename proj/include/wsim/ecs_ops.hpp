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
#include <limits>
#include <string>
#include <vector>

#include "wsim/basis_op.hpp"
#include "wsim/bitstring.hpp"
#include "wsim/ct_states.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"

namespace wsim {

/// Coefficients below this are treated as float cancellation and dropped.
inline constexpr double kEntryTolerance = 1e-14;
/// Default cap on the sparseness of a composed operator.
inline constexpr std::size_t kDefaultSparsenessBudget = 1000000;

struct EcsEntry {
    std::uint64_t index;
    Amplitude coeff;
};
/// Nonzero entries of one column (or row), ascending by index.
using EcsList = std::vector<EcsEntry>;

enum class Precision { Exact, PolyAccurate };

/// Sparse operator given by column and row enumerators:
///   A|x> = sum_i alpha_i(x) |r_i(x)>,   <y|A = sum_i beta_i(y) <c_i(y)|.
/// Entries of row(y) carry A_{y, c_i(y)}.
struct EcsOperator {
    using Enumerator = std::function<EcsList(std::uint64_t)>;

    int n = 1;
    std::size_t sparseness = 1;
    double norm_bound = 1.0;
    /// Bound on every column sum and row sum of |entries|; infinite if unknown.
    double abs_sum_bound = std::numeric_limits<double>::infinity();
    Enumerator column;
    Enumerator row;
    Precision precision = Precision::Exact;
    /// For poly-accurate operators: max error of any single coefficient.
    double entry_accuracy = 0.0;
    Frame frame = Frame::Computational;
    std::string description;
};

/// Sorts by index, merges duplicates, drops near-zero coefficients.
void normalize_entries(EcsList &entries);

EcsOperator identity_op(int n);
EcsOperator from_basis_op(const BasisPreservingOp &op, double norm_bound = 1.0);
/// Circuit over basis-preserving gates (Toffoli, CNOT, X, PHASE, CPHASE, oracles, ...).
EcsOperator basis_preserving_op(int n, const Circuit &circuit);

/// Column x merges the terms' single entries. `norm_bound` < 0 means the
/// coefficient one-norm.
EcsOperator pauli_sum_op(const PauliSum &terms, double norm_bound = -1.0, std::size_t max_terms = 4096);

/// Largest gate arity accepted by local_gate_op for n qubits: floor(2 log2 n) + 2.
int local_gate_arity_bound(int n);
/// A d-qubit unitary on `targets`, identity elsewhere.
EcsOperator local_gate_op(const std::vector<Amplitude> &matrix, const std::vector<int> &targets, int n,
                          int max_arity = -1);
EcsOperator local_gate_op(const Gate &gate, int n);

/// A * B. Throws Budget when s_A * s_B exceeds `budget`.
EcsOperator compose(const EcsOperator &a, const EcsOperator &b, std::size_t budget = kDefaultSparsenessBudget);
/// Ops applied in order: ops.back() * ... * ops.front().
EcsOperator compose_sequence(const std::vector<EcsOperator> &ops, std::size_t budget = kDefaultSparsenessBudget);
EcsOperator linear_combination(const std::vector<std::pair<Amplitude, EcsOperator>> &terms);
EcsOperator scaled(const EcsOperator &a, Amplitude c);
EcsOperator adjoint(const EcsOperator &a);
/// A acting on the listed qubits of an n-qubit register (listed order = A's qubit order).
EcsOperator embed(const EcsOperator &a, const std::vector<int> &qubits, int n);
/// I_k (x) A.
EcsOperator kron_identity(int k, const EcsOperator &a);
/// Swaps qubit i with qubit i + k for i < k on k + n qubits.
EcsOperator swap_block_op(int k, int n);
/// Same matrix, interpreted in the plus/minus frame.
EcsOperator hadamard_frame(const EcsOperator &a);

}  // namespace wsim
