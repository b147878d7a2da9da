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


#include "wsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

std::vector<Amplitude> qft_matrix(int k) {
    const std::size_t dim = std::size_t{1} << k;
    std::vector<Amplitude> m(dim * dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t y = 0; y < dim; ++y)
        for (std::size_t x = 0; x < dim; ++x) {
            double angle = 2.0 * std::numbers::pi * static_cast<double>((x * y) % dim) / static_cast<double>(dim);
            m[y * dim + x] = std::polar(scale, angle);
        }
    return m;
}

struct Fibers {
    int n;
    std::vector<std::uint64_t> masks;  // target masks, first target first
    std::uint64_t all = 0;

    Fibers(int n_, const std::vector<int> &targets) : n(n_) {
        for (int q : targets) {
            masks.push_back(qmask(n, q));
            all |= masks.back();
        }
    }
    // k-th fiber base: the k-th word with all target bits clear.
    std::uint64_t base(std::uint64_t k) const {
        std::uint64_t w = 0;
        for (std::uint64_t pos = 1; k; pos <<= 1) {
            if (all & pos) continue;
            if (k & 1) w |= pos;
            k >>= 1;
        }
        return w;
    }
    std::uint64_t offset(std::uint64_t local) const {
        std::uint64_t w = 0;
        const std::size_t d = masks.size();
        for (std::size_t i = 0; i < d; ++i) {
            if ((local >> (d - 1 - i)) & 1u) w |= masks[i];
        }
        return w;
    }
};

void apply_matrix_fiber(const Fibers &f, const std::vector<Amplitude> &m, const std::vector<std::uint64_t> &offsets,
                        std::uint64_t fiber, std::vector<Amplitude> &amps, std::vector<Amplitude> &buf) {
    const std::size_t dim = offsets.size();
    std::uint64_t b = f.base(fiber);
    for (std::size_t i = 0; i < dim; ++i) buf[i] = amps[b | offsets[i]];
    for (std::size_t r = 0; r < dim; ++r) {
        Amplitude acc{};
        for (std::size_t c = 0; c < dim; ++c) acc += m[r * dim + c] * buf[c];
        amps[b | offsets[r]] = acc;
    }
}

std::vector<Amplitude> local_matrix(const Gate &gate) {
    if (gate.kind == GateKind::QFT) return qft_matrix(static_cast<int>(gate.targets.size()));
    return gate_matrix(gate);
}

template <bool Parallel>
void apply_gate_impl(const Gate &gate, DenseState &state) {
    validate_gate(gate, state.n);
    const int n = state.n;
    const auto size = static_cast<std::int64_t>(state.amps.size());
    if (gate.kind == GateKind::Oracle) {
        std::vector<Amplitude> out(state.amps.size(), 0.0);
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::int64_t x = 0; x < size; ++x) {
            Amplitude phase{1.0};
            std::uint64_t y = apply_basis_gate(gate, n, static_cast<std::uint64_t>(x), phase);
            out[y] = phase * state.amps[static_cast<std::size_t>(x)];
        }
        state.amps.swap(out);
        return;
    }
    const std::vector<Amplitude> m = local_matrix(gate);
    Fibers f(n, gate.targets);
    const std::size_t dim = std::size_t{1} << gate.targets.size();
    std::vector<std::uint64_t> offsets(dim);
    for (std::size_t i = 0; i < dim; ++i) offsets[i] = f.offset(i);
    const auto fibers = static_cast<std::int64_t>(state.amps.size() / dim);
#pragma omp parallel if (Parallel)
    {
        std::vector<Amplitude> buf(dim);
#pragma omp for schedule(static)
        for (std::int64_t k = 0; k < fibers; ++k) {
            apply_matrix_fiber(f, m, offsets, static_cast<std::uint64_t>(k), state.amps, buf);
        }
    }
    (void)size;
}

}  // namespace

void check_dense_cap(int n, int cap) {
    require(n >= 1 && n <= cap, ErrorKind::Budget,
            "dense reference limited to " + std::to_string(cap) + " qubits, got " + std::to_string(n));
}

DenseState DenseState::basis(const BitString &x) {
    check_dense_cap(x.width(), 24);
    DenseState s{x.width(), std::vector<Amplitude>(std::size_t{1} << x.width(), 0.0)};
    s.amps[x.word()] = 1.0;
    return s;
}

DenseState DenseState::from(const CtState &psi, int cap) {
    check_dense_cap(psi.n(), cap);
    DenseState s{psi.n(), std::vector<Amplitude>(std::size_t{1} << psi.n())};
    const auto size = static_cast<std::int64_t>(s.amps.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < size; ++x) {
        s.amps[static_cast<std::size_t>(x)] = psi.amplitude_word(static_cast<std::uint64_t>(x));
    }
    return s;
}

double DenseState::norm() const {
    double acc = 0;
    for (const Amplitude &a : amps) acc += std::norm(a);
    return std::sqrt(acc);
}

namespace kernels {

void apply_gate_parallel(const Gate &gate, DenseState &state) { apply_gate_impl<true>(gate, state); }
void apply_gate_serial(const Gate &gate, DenseState &state) { apply_gate_impl<false>(gate, state); }

}  // namespace kernels

DenseState dense_evolve(const Circuit &circuit, DenseState state, int cap) {
    check_dense_cap(state.n, cap);
    for (const Gate &g : circuit) kernels::apply_gate_parallel(g, state);
    return state;
}

DenseState dense_evolve(const Circuit &circuit, const BitString &input, int cap) {
    check_dense_cap(input.width(), cap);
    return dense_evolve(circuit, DenseState::basis(input), cap);
}

Eigen::MatrixXcd dense_unitary(const Circuit &circuit, int n, int cap) {
    check_dense_cap(n, cap);
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXcd u(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        DenseState s{n, std::vector<Amplitude>(dim, 0.0)};
        s.amps[c] = 1.0;
        for (const Gate &g : circuit) kernels::apply_gate_serial(g, s);
        for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = s.amps[r];
    }
    return u;
}

Eigen::MatrixXcd assemble_columns(const EcsOperator &op, int cap) {
    check_dense_cap(op.n, cap);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << op.n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        for (const EcsEntry &e : op.column(static_cast<std::uint64_t>(x))) {
            m(static_cast<Eigen::Index>(e.index), x) += e.coeff;
        }
    }
    return m;
}

Eigen::MatrixXcd assemble_rows(const EcsOperator &op, int cap) {
    check_dense_cap(op.n, cap);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << op.n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index y = 0; y < dim; ++y) {
        for (const EcsEntry &e : op.row(static_cast<std::uint64_t>(y))) {
            m(y, static_cast<Eigen::Index>(e.index)) += e.coeff;
        }
    }
    return m;
}

Eigen::MatrixXcd pauli_sum_matrix(const PauliSum &s, int cap) {
    check_dense_cap(s.n, cap);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << s.n);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &t : s.terms) {
        for (Eigen::Index x = 0; x < dim; ++x) {
            auto w = static_cast<std::uint64_t>(x);
            m(static_cast<Eigen::Index>(w ^ t.pauli.x), x) += t.coeff * t.pauli.phase_on(w);
        }
    }
    return m;
}

Eigen::VectorXcd to_vector(const DenseState &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.amps.size()));
    for (std::size_t i = 0; i < s.amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = s.amps[i];
    return v;
}

Amplitude dense_matrix_element(const DenseState &phi, const Eigen::MatrixXcd &a, const DenseState &psi) {
    require(phi.n == psi.n && a.rows() == static_cast<Eigen::Index>(phi.amps.size()) && a.cols() == a.rows(),
            ErrorKind::WidthMismatch, "matrix element of mismatched widths");
    return to_vector(phi).dot(a * to_vector(psi));
}

Amplitude dense_matrix_element(const DenseState &phi, const EcsOperator &a, const DenseState &psi) {
    require(phi.n == psi.n && a.n == phi.n, ErrorKind::WidthMismatch, "matrix element of mismatched widths");
    check_dense_cap(a.n, kDenseQubitCap);
    Amplitude acc{};
    for (std::size_t x = 0; x < psi.amps.size(); ++x) {
        if (psi.amps[x] == Amplitude(0.0)) continue;
        for (const EcsEntry &e : a.column(x)) acc += std::conj(phi.amps[e.index]) * e.coeff * psi.amps[x];
    }
    return acc;
}

Amplitude dense_overlap(const DenseState &phi, const DenseState &psi) {
    require(phi.n == psi.n, ErrorKind::WidthMismatch, "overlap of mismatched widths");
    Amplitude acc{};
    for (std::size_t x = 0; x < psi.amps.size(); ++x) acc += std::conj(phi.amps[x]) * psi.amps[x];
    return acc;
}

NormReport dense_spectral_norm(const Eigen::MatrixXcd &a, double tolerance, int max_iterations) {
    require(a.rows() <= 1024 && a.cols() <= 1024, ErrorKind::Budget, "spectral norm limited to dimension 1024");
    NormReport rep;
    rep.max_row_sum = a.cwiseAbs().rowwise().sum().maxCoeff();
    rep.max_col_sum = a.cwiseAbs().colwise().sum().maxCoeff();
    if (a.cwiseAbs().maxCoeff() == 0.0) return rep;
    const Eigen::MatrixXcd g = a.adjoint() * a;
    // Deterministic start with support on every coordinate.
    Eigen::VectorXcd v(a.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Amplitude(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(3.0 * i));
    v.normalize();
    double lambda = -1;
    for (int it = 1; it <= max_iterations; ++it) {
        Eigen::VectorXcd w = g * v;
        double rayleigh = v.dot(w).real();
        double len = w.norm();
        rep.iterations = it;
        if (len == 0.0) return rep;
        v = w / len;
        if (std::abs(rayleigh - lambda) <= 1e-3 * tolerance * std::max(rayleigh, 1e-300)) {
            rep.spectral = std::sqrt(std::max(rayleigh, 0.0));
            return rep;
        }
        lambda = rayleigh;
    }
    fail(ErrorKind::Verification, "power iteration did not converge");
}

}  // namespace wsim
