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
#include <string>

#include "wsim/bitstring.hpp"
#include "wsim/gates.hpp"
#include "wsim/pauli.hpp"

namespace wsim {

/// M|x> = gamma_x |pi(x)>, given by evaluators on packed words.
struct BasisPreservingOp {
    int n = 1;
    std::function<std::uint64_t(std::uint64_t)> forward;  // pi
    std::function<std::uint64_t(std::uint64_t)> inverse;  // pi^{-1}
    std::function<Amplitude(std::uint64_t)> phase;        // gamma_x, indexed by the source x
    std::string description;

    static BasisPreservingOp identity(int n);
    /// Gates applied in order; every gate must be basis-preserving.
    static BasisPreservingOp from_circuit(int n, Circuit circuit);
    static BasisPreservingOp from_pauli(const PauliString &p);
    /// On k + n qubits: swaps qubit i with qubit i + k for i < k.
    static BasisPreservingOp swap_block(int k, int n);
    /// Diagonal e^{i theta(x)}.
    static BasisPreservingOp diagonal(int n, std::function<double(std::uint64_t)> theta, std::string name = "diagonal");
};

/// Apply the op to |x>: returns pi(x) and sets `gamma`.
inline std::uint64_t apply_op(const BasisPreservingOp &m, std::uint64_t x, Amplitude &gamma) {
    gamma = m.phase(x);
    return m.forward(x);
}

}  // namespace wsim
