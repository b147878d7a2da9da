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

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "wsim/bitstring.hpp"

namespace wsim::testing {

using CMat = std::vector<std::vector<Amplitude>>;

inline CMat identity(std::size_t dim) {
    CMat m(dim, std::vector<Amplitude>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1.0;
    return m;
}

inline CMat matmul(const CMat &a, const CMat &b) {
    std::size_t n = a.size();
    CMat c(n, std::vector<Amplitude>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == Amplitude(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline CMat adjoint(const CMat &a) {
    std::size_t n = a.size();
    CMat c(n, std::vector<Amplitude>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i][j] = std::conj(a[j][i]);
    return c;
}

inline CMat kron(const CMat &a, const CMat &b) {
    std::size_t p = a.size(), q = b.size();
    CMat c(p * q, std::vector<Amplitude>(p * q));
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t k = 0; k < q; ++k)
                for (std::size_t l = 0; l < q; ++l) c[i * q + k][j * q + l] = a[i][j] * b[k][l];
    return c;
}

inline double max_diff(const CMat &a, const CMat &b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

/// 2x2 Pauli matrix by letter.
inline CMat letter_matrix(char c) {
    using namespace std::complex_literals;
    switch (c) {
        case 'X': return {{0, 1}, {1, 0}};
        case 'Y': return {{0, -1i}, {1i, 0}};
        case 'Z': return {{1, 0}, {0, -1}};
        default: return {{1, 0}, {0, 1}};
    }
}

/// Kronecker product of letters, qubit 0 leftmost.
inline CMat pauli_matrix(const std::string &letters) {
    CMat m = {{1.0}};
    for (char c : letters) m = kron(m, letter_matrix(c));
    return m;
}

/// Embeds a row-major 2^d x 2^d matrix on `targets` (first target most
/// significant) into n qubits by explicit index surgery.
inline CMat embed(const std::vector<Amplitude> &g, const std::vector<int> &targets, int n) {
    std::size_t dim = std::size_t{1} << n, d = targets.size(), ld = std::size_t{1} << d;
    CMat m(dim, std::vector<Amplitude>(dim, 0.0));
    auto local = [&](std::uint64_t w) {
        std::uint64_t l = 0;
        for (std::size_t i = 0; i < d; ++i) l = (l << 1) | ((w >> (n - 1 - targets[i])) & 1);
        return l;
    };
    auto put = [&](std::uint64_t w, std::uint64_t l) {
        for (std::size_t i = 0; i < d; ++i) {
            std::uint64_t bit = (l >> (d - 1 - i)) & 1;
            std::uint64_t mask = std::uint64_t{1} << (n - 1 - targets[i]);
            w = bit ? (w | mask) : (w & ~mask);
        }
        return w;
    };
    for (std::uint64_t col = 0; col < dim; ++col) {
        std::uint64_t lc = local(col);
        for (std::uint64_t lr = 0; lr < ld; ++lr) {
            Amplitude v = g[lr * ld + lc];
            if (v != Amplitude(0.0)) m[put(col, lr)][col] += v;
        }
    }
    return m;
}

inline std::vector<Amplitude> apply(const CMat &m, const std::vector<Amplitude> &v) {
    std::vector<Amplitude> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

/// Haar-ish random unitary by Gram-Schmidt on a complex Gaussian matrix.
inline std::vector<Amplitude> random_unitary(int dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<std::vector<Amplitude>> cols(dim, std::vector<Amplitude>(dim));
    for (auto &c : cols)
        for (auto &v : c) v = Amplitude(g(rng), g(rng));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < i; ++j) {
            Amplitude ip{};
            for (int k = 0; k < dim; ++k) ip += std::conj(cols[j][k]) * cols[i][k];
            for (int k = 0; k < dim; ++k) cols[i][k] -= ip * cols[j][k];
        }
        double nrm = 0;
        for (auto &v : cols[i]) nrm += std::norm(v);
        nrm = std::sqrt(nrm);
        for (auto &v : cols[i]) v /= nrm;
    }
    std::vector<Amplitude> m(static_cast<std::size_t>(dim * dim));
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m[static_cast<std::size_t>(r * dim + c)] = cols[c][r];
    return m;
}

}  // namespace wsim::testing
