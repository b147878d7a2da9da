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

#include "wsim/bitstring.hpp"
#include "wsim/gates.hpp"
#include "wsim/random.hpp"

namespace wsim {

/// Stabilizer state C|0...0> for a Clifford circuit C over
/// {H, X, Y, Z, S, Sdg, CNOT, CZ}.
///
/// The n generators are kept as i^r X^a Z^b. Amplitudes come from one
/// tracked reference amplitude and the X-parts of the generators, which
/// span the support: for a generator g = i^r X^a Z^b,
///   <y xor a|psi> = i^r (-1)^{b.y} <y|psi>.
class StabilizerTableau {
   public:
    explicit StabilizerTableau(int n);

    void apply(const Gate &gate);
    void apply(const Circuit &circuit) {
        for (const Gate &g : circuit) apply(g);
    }

    int n() const { return n_; }
    /// Dimension k of the support; every nonzero amplitude has modulus 2^{-k/2}.
    int support_rank() const { return static_cast<int>(basis_.size()); }

    Amplitude amplitude(std::uint64_t x) const;
    /// Uniform draw from the affine support.
    std::uint64_t sample(Rng &rng) const;
    /// Probability that the qubits in `mask` read `values` (bits outside the mask ignored).
    double marginal(std::uint64_t mask, std::uint64_t values) const;

    /// Generators as Pauli strings with a sign, for inspection: (sign, x, z) of
    /// the Hermitian form sign * P(x, z).
    struct Generator {
        int sign;
        std::uint64_t x, z;
    };
    std::vector<Generator> generators() const;

   private:
    struct Row {
        std::uint64_t x = 0, z = 0;
        int r = 0;  // phase exponent of i
    };
    static Row product(const Row &a, const Row &b);
    void rebuild();
    void set_reference(std::uint64_t x, Amplitude amp);

    int n_;
    std::vector<Row> rows_;
    std::vector<Row> basis_;  // reduced echelon form of the X-parts
    std::vector<std::uint64_t> pivots_;
    std::uint64_t ref_ = 0;
    Amplitude ref_amp_{1.0};
};

}  // namespace wsim
