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


#include "wsim/basis_op.hpp"

#include <memory>

#include "wsim/errors.hpp"

namespace wsim {

BasisPreservingOp BasisPreservingOp::identity(int n) {
    return {n, [](std::uint64_t x) { return x; }, [](std::uint64_t x) { return x; },
            [](std::uint64_t) { return Amplitude(1.0); }, "identity"};
}

BasisPreservingOp BasisPreservingOp::from_circuit(int n, Circuit circuit) {
    for (const Gate &g : circuit) {
        validate_gate(g, n);
        require(is_basis_preserving(g.kind), ErrorKind::OutOfClass,
                std::string("gate ") + gate_name(g.kind) + " is not basis-preserving");
    }
    auto gates = std::make_shared<const Circuit>(std::move(circuit));
    BasisPreservingOp op;
    op.n = n;
    op.forward = [gates, n](std::uint64_t x) {
        Amplitude unused{1.0};
        for (const Gate &g : *gates) x = apply_basis_gate(g, n, x, unused);
        return x;
    };
    op.inverse = [gates, n](std::uint64_t x) {
        for (auto it = gates->rbegin(); it != gates->rend(); ++it) x = apply_basis_gate_inverse(*it, n, x);
        return x;
    };
    op.phase = [gates, n](std::uint64_t x) {
        Amplitude phase{1.0};
        for (const Gate &g : *gates) x = apply_basis_gate(g, n, x, phase);
        return phase;
    };
    op.description = "circuit of " + std::to_string(gates->size()) + " basis-preserving gates";
    return op;
}

BasisPreservingOp BasisPreservingOp::from_pauli(const PauliString &p) {
    return {p.n, [p](std::uint64_t x) { return x ^ p.x; }, [p](std::uint64_t x) { return x ^ p.x; },
            [p](std::uint64_t x) { return p.phase_on(x); }, "pauli " + p.to_string()};
}

BasisPreservingOp BasisPreservingOp::swap_block(int k, int n) {
    require(k >= 0 && n >= 1 && k <= n && k + n <= kMaxQubits, ErrorKind::RangeViolation,
            "swap block needs 0 <= k <= n and k + n <= 64");
    const int total = k + n;
    auto swap = [k, total](std::uint64_t x) {
        for (int i = 0; i < k; ++i) {
            int a = total - 1 - i, b = total - 1 - (i + k);
            std::uint64_t d = ((x >> a) ^ (x >> b)) & 1u;
            x ^= (d << a) | (d << b);
        }
        return x;
    };
    return {total, swap, swap, [](std::uint64_t) { return Amplitude(1.0); },
            "swap of the leading " + std::to_string(k) + " qubits with the next " + std::to_string(k)};
}

BasisPreservingOp BasisPreservingOp::diagonal(int n, std::function<double(std::uint64_t)> theta, std::string name) {
    return {n, [](std::uint64_t x) { return x; }, [](std::uint64_t x) { return x; },
            [theta = std::move(theta)](std::uint64_t x) { return std::polar(1.0, theta(x)); }, std::move(name)};
}

}  // namespace wsim
