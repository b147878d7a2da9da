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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wsim/ct_states.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"

namespace wsim {

/// Nearest-neighbour circuit of G(A, B) gates with A, B in SU(2).
struct MatchgateCircuit {
    int n = 1;
    Circuit gates;

    /// Throws Precondition for any gate outside the matchgate form.
    void validate() const;
};

/// Checks one gate: kind, neighbours, unitarity and det A = det B = 1.
void validate_matchgate(const Gate &gate, int n);

/// Majorana modes c_{2j} = Z..Z X_j and c_{2j+1} = Z..Z Y_j. A circuit U
/// acts as U^dagger c_a U = sum_b R_ab c_b with R real orthogonal.
struct MajoranaRotation {
    Eigen::MatrixXd r;

    static MajoranaRotation identity(int n);
    /// Rotation of a single gate on the whole register.
    static MajoranaRotation of_gate(const Gate &gate, int n);
    static MajoranaRotation of_circuit(const MatchgateCircuit &circuit);
    /// Rotation of "this circuit, then `later`".
    MajoranaRotation then(const MajoranaRotation &later) const;
    double orthogonality_defect() const;
};

/// 4x4 rotation of a gate on the modes 2i..2i+3 of its first qubit i.
Eigen::Matrix4d local_majorana_rotation(const Gate &gate);

/// Pfaffian of a complex antisymmetric matrix (Gaussian elimination with pivoting).
Amplitude pfaffian(Eigen::MatrixXcd a);

/// Majorana covariance M_ab = i<c_a c_b> of a computational basis state.
Eigen::MatrixXd basis_covariance(int n, std::uint64_t x);

/// Fermionic Gaussian state U|input> held by its covariance matrix and one
/// reference amplitude; other amplitudes follow from Pfaffians of the
/// transition two-point function against the reference.
class MatchgateModel final : public CtModel {
   public:
    MatchgateModel(MatchgateCircuit circuit, std::uint64_t input);
    int n() const override { return n_; }
    Amplitude amplitude(std::uint64_t x) const override;
    std::uint64_t sample(Rng &rng) const override;
    StateFamily family() const override { return StateFamily::Matchgate; }
    std::string description() const override;

    const Eigen::MatrixXd &covariance() const { return cov_; }
    const MatchgateCircuit &circuit() const { return circuit_; }
    MarginalOracle marginals() const;
    double marginal(std::uint64_t mask, std::uint64_t values) const;

   private:
    struct RefFrame {
        Eigen::MatrixXd cov;
        std::uint64_t ref = 0;
        Amplitude ref_amp{1.0};
        Eigen::MatrixXcd transition;
    };
    static Amplitude amplitude_in(const RefFrame &f, int n, std::uint64_t x);
    static RefFrame make_frame(int n, Eigen::MatrixXd cov, std::uint64_t ref, Amplitude ref_amp);
    static std::uint64_t most_likely(int n, Eigen::MatrixXd cov, double &prob);

    int n_;
    MatchgateCircuit circuit_;
    std::uint64_t input_;
    Eigen::MatrixXd cov_;
    RefFrame frame_;
};

CtState matchgate_state(const MatchgateCircuit &circuit, const BitString &input);

/// U^dagger Z_1 U as a Pauli sum with real coefficients, at most n(2n-1) terms.
PauliSum conjugate_z1(const MatchgateCircuit &circuit);

/// Random SU(2) matrix drawn from a Haar-like parametrization (test and demo instances).
Mat2 random_su2(Rng &rng);
/// Random nearest-neighbour matchgate circuit.
MatchgateCircuit random_matchgate_circuit(int n, int gates, Rng &rng);

}  // namespace wsim
