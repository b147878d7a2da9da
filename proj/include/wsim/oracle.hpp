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
#include <vector>

#include <Eigen/Dense>

#include "wsim/bitstring.hpp"
#include "wsim/ct_states.hpp"
#include "wsim/ecs_ops.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"

namespace wsim {

inline constexpr int kDenseQubitCap = 12;

/// Full 2^n amplitude vector.
struct DenseState {
    int n = 1;
    std::vector<Amplitude> amps;

    static DenseState basis(const BitString &x);
    /// Exhaustive amplitudes of a CT state.
    static DenseState from(const CtState &psi, int cap = kDenseQubitCap);
    double norm() const;
};

void check_dense_cap(int n, int cap);

namespace kernels {

/// One gate on the state vector; fibers over the non-target qubits run in parallel.
void apply_gate_parallel(const Gate &gate, DenseState &state);
/// Same, single-threaded reference.
void apply_gate_serial(const Gate &gate, DenseState &state);

}  // namespace kernels

DenseState dense_evolve(const Circuit &circuit, DenseState state, int cap = kDenseQubitCap);
DenseState dense_evolve(const Circuit &circuit, const BitString &input, int cap = kDenseQubitCap);

/// Columns of U for the circuit, as a dense matrix.
Eigen::MatrixXcd dense_unitary(const Circuit &circuit, int n, int cap = 10);

/// Assembled from the column enumerator.
Eigen::MatrixXcd assemble_columns(const EcsOperator &op, int cap = kDenseQubitCap);
/// Assembled from the row enumerator.
Eigen::MatrixXcd assemble_rows(const EcsOperator &op, int cap = kDenseQubitCap);
Eigen::MatrixXcd pauli_sum_matrix(const PauliSum &s, int cap = 10);

Eigen::VectorXcd to_vector(const DenseState &s);
Amplitude dense_matrix_element(const DenseState &phi, const Eigen::MatrixXcd &a, const DenseState &psi);
Amplitude dense_matrix_element(const DenseState &phi, const EcsOperator &a, const DenseState &psi);
Amplitude dense_overlap(const DenseState &phi, const DenseState &psi);

struct NormReport {
    double spectral = 0.0;
    double max_row_sum = 0.0;  // max_i sum_j |a_ij|
    double max_col_sum = 0.0;  // max_j sum_i |a_ij|
    int iterations = 0;
};

/// Largest singular value by power iteration on A^dagger A.
NormReport dense_spectral_norm(const Eigen::MatrixXcd &a, double tolerance = 1e-8, int max_iterations = 100000);

}  // namespace wsim
