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

#include "wsim/bitstring.hpp"
#include "wsim/gates.hpp"

namespace wsim {

/// Hermitian Pauli product over n qubits. Letters are encoded by the
/// (x, z) bit pair of each qubit: I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
/// Masks use packed-word coordinates (qubit 0 most significant).
struct PauliString {
    int n = 1;
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliString identity(int n) { return PauliString{n, 0, 0}; }
    /// "XIZY" style, qubit 0 first.
    static PauliString parse(const std::string &letters);
    /// Single letter on one qubit.
    static PauliString single(int n, int qubit, char letter);

    char letter(int qubit) const;
    std::string to_string() const;
    /// Number of non-identity letters.
    int weight() const;

    /// P|b> = phase_on(b) |b xor x>.
    Amplitude phase_on(std::uint64_t b) const;

    bool operator==(const PauliString &o) const = default;
    auto operator<=>(const PauliString &o) const = default;
};

/// P1 * P2 = phase * P3.
struct PauliProduct {
    Amplitude phase;
    PauliString result;
};
PauliProduct multiply(const PauliString &a, const PauliString &b);

struct PauliTerm {
    Amplitude coeff;
    PauliString pauli;
};

/// O = sum_i a_i P_i.
struct PauliSum {
    int n = 1;
    std::vector<PauliTerm> terms;

    static PauliSum single(const PauliString &p, Amplitude coeff = 1.0) { return PauliSum{p.n, {{coeff, p}}}; }

    /// Sums coefficients of equal strings and drops terms below `tolerance`.
    void simplify(double tolerance = 1e-14);
    double coefficient_one_norm() const;
    /// Number of distinct X masks, i.e. the exact column sparseness.
    size_t distinct_flip_masks() const;
    /// Union of qubits on which some term acts nontrivially.
    std::vector<int> support() const;
};

/// Pauli expansion of a dense 2^d x 2^d matrix acting on `targets` of an
/// n-qubit register. Coefficients below `tolerance` are dropped.
PauliSum pauli_decompose(const std::vector<Amplitude> &matrix, const std::vector<int> &targets, int n,
                         double tolerance = 1e-13);

/// G^dagger O G for a local gate G (any gate with a local matrix).
PauliSum conjugate_by_gate(const PauliSum &op, const Gate &gate, double tolerance = 1e-13);

/// U^dagger O U for the circuit U = gates applied in order.
PauliSum conjugate_by_circuit(const PauliSum &op, const Circuit &circuit, double tolerance = 1e-13);

}  // namespace wsim
