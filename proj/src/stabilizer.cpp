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


#include "wsim/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

Amplitude i_power(int r) {
    switch (r & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

inline std::uint64_t top_bit(std::uint64_t v) { return std::uint64_t{1} << (63 - std::countl_zero(v)); }

}  // namespace

StabilizerTableau::StabilizerTableau(int n) : n_(n) {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::Domain, "stabilizer width must lie in [1, 64]");
    rows_.resize(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) rows_[static_cast<size_t>(q)].z = qmask(n, q);
    rebuild();
}

StabilizerTableau::Row StabilizerTableau::product(const Row &a, const Row &b) {
    Row c;
    c.x = a.x ^ b.x;
    c.z = a.z ^ b.z;
    c.r = (a.r + b.r + 2 * std::popcount(a.z & b.x)) & 3;
    return c;
}

void StabilizerTableau::rebuild() {
    basis_.clear();
    pivots_.clear();
    std::vector<Row> work;
    for (const Row &r : rows_) {
        if (r.x) work.push_back(r);
    }
    for (;;) {
        std::uint64_t best = 0;
        size_t at = 0;
        for (size_t i = 0; i < work.size(); ++i) {
            if (work[i].x && top_bit(work[i].x) > best) {
                best = top_bit(work[i].x);
                at = i;
            }
        }
        if (!best) break;
        Row pivot = work[at];
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(at));
        for (Row &r : work) {
            if (r.x & best) r = product(r, pivot);
        }
        for (Row &r : basis_) {
            if (r.x & best) r = product(r, pivot);
        }
        basis_.push_back(pivot);
        pivots_.push_back(best);
    }
}

Amplitude StabilizerTableau::amplitude(std::uint64_t x) const {
    std::uint64_t cur = ref_;
    Amplitude amp = ref_amp_;
    std::uint64_t d = x ^ ref_;
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (!(d & pivots_[i])) continue;
        const Row &g = basis_[i];
        int sign = std::popcount(g.z & cur) & 1;
        amp *= i_power(g.r + 2 * sign);
        cur ^= g.x;
        d ^= g.x;
    }
    return d ? Amplitude(0.0) : amp;
}

std::uint64_t StabilizerTableau::sample(Rng &rng) const {
    std::uint64_t x = ref_;
    for (const Row &g : basis_) {
        if (rng.coin()) x ^= g.x;
    }
    return x;
}

double StabilizerTableau::marginal(std::uint64_t mask, std::uint64_t values) const {
    std::vector<std::uint64_t> vecs;
    for (const Row &g : basis_) vecs.push_back(g.x & mask);
    std::uint64_t d = (ref_ ^ values) & mask;
    int rank = 0;
    for (size_t i = 0; i < vecs.size(); ++i) {
        if (!vecs[i]) continue;
        std::uint64_t p = top_bit(vecs[i]);
        for (size_t j = i + 1; j < vecs.size(); ++j) {
            if (vecs[j] & p) vecs[j] ^= vecs[i];
        }
        if (d & p) d ^= vecs[i];
        ++rank;
    }
    return d ? 0.0 : std::ldexp(1.0, -rank);
}

std::vector<StabilizerTableau::Generator> StabilizerTableau::generators() const {
    std::vector<Generator> out;
    for (const Row &r : rows_) {
        // i^r X^a Z^b = i^r (-i)^{|a&b|} P(a, b)
        int e = (r.r - std::popcount(r.x & r.z)) & 3;
        out.push_back({e == 0 ? 1 : -1, r.x, r.z});
    }
    return out;
}

void StabilizerTableau::set_reference(std::uint64_t x, Amplitude amp) {
    // Nonzero amplitudes are 2^{-k/2} times an eighth root of unity; snap to
    // that lattice to stop round-off from accumulating over long circuits.
    double mag = std::ldexp(1.0, -support_rank()) ;
    mag = std::sqrt(mag);
    double octant = std::round(std::arg(amp) / (std::numbers::pi / 4));
    ref_ = x;
    ref_amp_ = std::polar(mag, octant * std::numbers::pi / 4);
}

void StabilizerTableau::apply(const Gate &gate) {
    validate_gate(gate, n_);
    require(is_clifford(gate.kind), ErrorKind::OutOfClass,
            std::string("gate ") + gate_name(gate.kind) + " is not in the stabilizer gate set");
    const auto &t = gate.targets;
    const std::uint64_t m0 = qmask(n_, t[0]);
    const std::uint64_t m1 = t.size() > 1 ? qmask(n_, t[1]) : 0;

    if (gate.kind == GateKind::H) {
        // New reference from the two old amplitudes that feed it.
        std::uint64_t y0 = ref_ & ~m0, y1 = ref_ | m0;
        Amplitude a0 = amplitude(y0), a1 = amplitude(y1);
        const double r = 1.0 / std::numbers::sqrt2;
        Amplitude v0 = (a0 + a1) * r, v1 = (a0 - a1) * r;
        for (Row &row : rows_) {
            bool a = row.x & m0, b = row.z & m0;
            if (a && b) row.r = (row.r + 2) & 3;
            if (a != b) {
                row.x ^= m0;
                row.z ^= m0;
            }
        }
        rebuild();
        if (std::abs(v0) >= std::abs(v1)) {
            set_reference(y0, v0);
        } else {
            set_reference(y1, v1);
        }
        return;
    }

    Amplitude gamma = ref_amp_;
    std::uint64_t image = apply_basis_gate(gate, n_, ref_, gamma);
    for (Row &row : rows_) {
        bool a0 = row.x & m0, b0 = row.z & m0;
        switch (gate.kind) {
            case GateKind::X:
                if (b0) row.r += 2;
                break;
            case GateKind::Y:
                if (a0 != b0) row.r += 2;
                break;
            case GateKind::Z:
                if (a0) row.r += 2;
                break;
            case GateKind::S:
                if (a0) {
                    row.r += 1;
                    row.z ^= m0;
                }
                break;
            case GateKind::Sdg:
                if (a0) {
                    row.r += 3;
                    row.z ^= m0;
                }
                break;
            case GateKind::CNOT:
                if (a0) row.x ^= m1;
                if (row.z & m1) row.z ^= m0;
                break;
            case GateKind::CZ: {
                bool a1 = row.x & m1;
                if (a0 && a1) row.r += 2;
                if (a0) row.z ^= m1;
                if (a1) row.z ^= m0;
                break;
            }
            default: break;
        }
        row.r &= 3;
    }
    rebuild();
    set_reference(image, gamma);
}

}  // namespace wsim
