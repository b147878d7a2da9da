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


#include "wsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

Amplitude i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

PauliString PauliString::parse(const std::string &letters) {
    require(!letters.empty() && letters.size() <= kMaxQubits, ErrorKind::Parse, "Pauli string length must lie in [1, 64]");
    PauliString p{static_cast<int>(letters.size()), 0, 0};
    for (int q = 0; q < p.n; ++q) {
        p = [&] {
            PauliString s = single(p.n, q, letters[static_cast<size_t>(q)]);
            return PauliString{p.n, p.x | s.x, p.z | s.z};
        }();
    }
    return p;
}

PauliString PauliString::single(int n, int qubit, char letter) {
    require(qubit >= 0 && qubit < n, ErrorKind::Domain, "Pauli qubit out of range");
    std::uint64_t m = qmask(n, qubit);
    switch (letter) {
        case 'I': return {n, 0, 0};
        case 'X': return {n, m, 0};
        case 'Y': return {n, m, m};
        case 'Z': return {n, 0, m};
        default: break;
    }
    fail(ErrorKind::Parse, std::string("unknown Pauli letter '") + letter + "'");
}

char PauliString::letter(int qubit) const {
    std::uint64_t m = qmask(n, qubit);
    bool bx = x & m, bz = z & m;
    return bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
}

std::string PauliString::to_string() const {
    std::string s;
    for (int q = 0; q < n; ++q) s.push_back(letter(q));
    return s;
}

int PauliString::weight() const { return std::popcount(x | z); }

Amplitude PauliString::phase_on(std::uint64_t b) const {
    int k = std::popcount(x & z) + 2 * std::popcount(z & b);
    return i_power(k);
}

PauliProduct multiply(const PauliString &a, const PauliString &b) {
    require(a.n == b.n, ErrorKind::WidthMismatch, "Pauli product of different widths");
    PauliString c{a.n, a.x ^ b.x, a.z ^ b.z};
    int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) - std::popcount(c.x & c.z) +
            2 * std::popcount(a.z & b.x);
    return {i_power(k), c};
}

void PauliSum::simplify(double tolerance) {
    std::map<PauliString, Amplitude> acc;
    for (const auto &t : terms) acc[t.pauli] += t.coeff;
    terms.clear();
    for (const auto &[p, c] : acc) {
        if (std::abs(c) > tolerance) terms.push_back({c, p});
    }
}

double PauliSum::coefficient_one_norm() const {
    double s = 0;
    for (const auto &t : terms) s += std::abs(t.coeff);
    return s;
}

size_t PauliSum::distinct_flip_masks() const {
    std::set<std::uint64_t> masks;
    for (const auto &t : terms) masks.insert(t.pauli.x);
    return masks.size();
}

std::vector<int> PauliSum::support() const {
    std::uint64_t all = 0;
    for (const auto &t : terms) all |= t.pauli.x | t.pauli.z;
    std::vector<int> out;
    for (int q = 0; q < n; ++q) {
        if (all & qmask(n, q)) out.push_back(q);
    }
    return out;
}

PauliSum pauli_decompose(const std::vector<Amplitude> &matrix, const std::vector<int> &targets, int n,
                         double tolerance) {
    const int d = static_cast<int>(targets.size());
    const std::uint64_t dim = std::uint64_t{1} << d;
    require(matrix.size() == dim * dim, ErrorKind::Precondition, "matrix size does not match target count");
    PauliSum out{n, {}};
    for (std::uint64_t lx = 0; lx < dim; ++lx) {
        for (std::uint64_t lz = 0; lz < dim; ++lz) {
            PauliString local{d, lx, lz};
            // Tr(Q M) = sum_k phase(k) M[k, k ^ x]; Q is Hermitian so c = Tr(Q M) / 2^d.
            Amplitude tr{};
            for (std::uint64_t k = 0; k < dim; ++k) tr += local.phase_on(k) * matrix[k * dim + (k ^ lx)];
            tr /= static_cast<double>(dim);
            if (std::abs(tr) <= tolerance) continue;
            PauliString global{n, 0, 0};
            for (int i = 0; i < d; ++i) {
                std::uint64_t lm = std::uint64_t{1} << (d - 1 - i);
                if (lx & lm) global.x |= qmask(n, targets[static_cast<size_t>(i)]);
                if (lz & lm) global.z |= qmask(n, targets[static_cast<size_t>(i)]);
            }
            out.terms.push_back({tr, global});
        }
    }
    return out;
}

PauliSum conjugate_by_gate(const PauliSum &op, const Gate &gate, double tolerance) {
    validate_gate(gate, op.n);
    const std::vector<Amplitude> g = gate_matrix(gate);
    const int d = static_cast<int>(gate.targets.size());
    const std::uint64_t dim = std::uint64_t{1} << d;
    std::uint64_t target_mask = 0;
    for (int q : gate.targets) target_mask |= qmask(op.n, q);

    // G^dagger Q G for each local Pauli Q that occurs, expanded in Paulis on the targets.
    std::map<std::pair<std::uint64_t, std::uint64_t>, PauliSum> cache;
    auto local_bits = [&](std::uint64_t mask) {
        std::uint64_t out = 0;
        for (int i = 0; i < d; ++i) {
            if (mask & qmask(op.n, gate.targets[static_cast<size_t>(i)])) out |= std::uint64_t{1} << (d - 1 - i);
        }
        return out;
    };
    auto conjugated = [&](std::uint64_t lx, std::uint64_t lz) -> const PauliSum & {
        auto key = std::make_pair(lx, lz);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        PauliString q{d, lx, lz};
        std::vector<Amplitude> qm(dim * dim, 0.0);
        for (std::uint64_t k = 0; k < dim; ++k) qm[(k ^ lx) * dim + k] = q.phase_on(k);
        // M = G^dagger Q G
        std::vector<Amplitude> qg(dim * dim, 0.0), m(dim * dim, 0.0);
        for (std::uint64_t i = 0; i < dim; ++i)
            for (std::uint64_t k = 0; k < dim; ++k)
                for (std::uint64_t j = 0; j < dim; ++j) qg[i * dim + j] += qm[i * dim + k] * g[k * dim + j];
        for (std::uint64_t i = 0; i < dim; ++i)
            for (std::uint64_t k = 0; k < dim; ++k)
                for (std::uint64_t j = 0; j < dim; ++j) m[i * dim + j] += std::conj(g[k * dim + i]) * qg[k * dim + j];
        return cache.emplace(key, pauli_decompose(m, gate.targets, op.n, tolerance)).first->second;
    };

    PauliSum out{op.n, {}};
    for (const auto &term : op.terms) {
        std::uint64_t lx = local_bits(term.pauli.x), lz = local_bits(term.pauli.z);
        if (lx == 0 && lz == 0) {
            out.terms.push_back(term);
            continue;
        }
        PauliString rest{op.n, term.pauli.x & ~target_mask, term.pauli.z & ~target_mask};
        for (const auto &piece : conjugated(lx, lz).terms) {
            // Disjoint supports: the product carries no extra phase.
            out.terms.push_back({term.coeff * piece.coeff, PauliString{op.n, rest.x | piece.pauli.x, rest.z | piece.pauli.z}});
        }
    }
    out.simplify(tolerance);
    return out;
}

PauliSum conjugate_by_circuit(const PauliSum &op, const Circuit &circuit, double tolerance) {
    // U = G_k ... G_1, so U^dagger O U = G_1^dagger ... (G_k^dagger O G_k) ... G_1.
    PauliSum cur = op;
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) cur = conjugate_by_gate(cur, *it, tolerance);
    return cur;
}

}  // namespace wsim
