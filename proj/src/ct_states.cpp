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


#include "wsim/ct_states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

constexpr double kFactorTolerance = 1e-12;
constexpr double kUnitTolerance = 1e-10;

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }
inline int qbit(int n, std::uint64_t w, int q) { return static_cast<int>((w >> (n - 1 - q)) & 1u); }

void check_factors(const std::vector<Factor> &factors) {
    require(!factors.empty() && factors.size() <= kMaxQubits, ErrorKind::Domain,
            "a product description needs between 1 and 64 factors");
    for (size_t q = 0; q < factors.size(); ++q) {
        double norm = std::norm(factors[q][0]) + std::norm(factors[q][1]);
        require(std::abs(norm - 1.0) <= kFactorTolerance, ErrorKind::Precondition,
                "factor " + std::to_string(q) + " is not normalized (squared norm " + std::to_string(norm) + ")");
    }
}

}  // namespace

const char *frame_name(Frame f) { return f == Frame::Computational ? "computational" : "pm"; }

const char *family_name(StateFamily f) {
    switch (f) {
        case StateFamily::Product: return "product";
        case StateFamily::Phase: return "phase";
        case StateFamily::Stabilizer: return "stabilizer";
        case StateFamily::Mps: return "mps";
        case StateFamily::QftProduct: return "qft_product";
        case StateFamily::Matchgate: return "matchgate";
        case StateFamily::BasisImage: return "basis_image";
        case StateFamily::Tensor: return "tensor";
        case StateFamily::Dense: return "dense";
    }
    return "?";
}

Amplitude CtState::amplitude(const BitString &x) const {
    require(x.width() == n(), ErrorKind::WidthMismatch,
            "bit string of width " + std::to_string(x.width()) + " queried on a state of " + std::to_string(n()) +
                " qubits");
    return model_->amplitude(x.word());
}

Sampler CtState::sampler() const {
    auto model = model_;
    return [model](Rng &rng) { return BitString(model->n(), model->sample(rng)); };
}

BitString marginal_chain_sampler(const MarginalOracle &m, Rng &rng) {
    constexpr double tol = 1e-9;
    std::uint64_t mask = 0, values = 0;
    double p = 1.0;
    for (int q = 0; q < m.n; ++q) {
        std::uint64_t bit = qmask(m.n, q);
        double p1 = m.probability(mask | bit, values | bit);
        require(p > 0, ErrorKind::Precondition, "marginal chain reached a zero-probability prefix");
        double cond = p1 / p;
        require(cond >= -tol && cond <= 1 + tol, ErrorKind::Precondition,
                "inconsistent marginal oracle: conditional " + std::to_string(cond) + " at qubit " +
                    std::to_string(q));
        mask |= bit;
        if (rng.uniform() < cond) {
            values |= bit;
            p = p1;
        } else {
            p = std::max(p - p1, 0.0);
        }
    }
    return BitString(m.n, values);
}

// ---- product ----------------------------------------------------------------

ProductModel::ProductModel(std::vector<Factor> factors) : factors_(std::move(factors)) { check_factors(factors_); }

Amplitude ProductModel::amplitude(std::uint64_t x) const {
    const int n = this->n();
    Amplitude a{1.0};
    for (int q = 0; q < n; ++q) a *= factors_[static_cast<size_t>(q)][static_cast<size_t>(qbit(n, x, q))];
    return a;
}

std::uint64_t ProductModel::sample(Rng &rng) const {
    const int n = this->n();
    std::uint64_t x = 0;
    for (int q = 0; q < n; ++q) {
        if (rng.uniform() < std::norm(factors_[static_cast<size_t>(q)][1])) x |= qmask(n, q);
    }
    return x;
}

std::string ProductModel::description() const {
    return "product state on " + std::to_string(n()) + " qubits";
}

MarginalOracle ProductModel::marginals() const {
    auto factors = factors_;
    const int n = this->n();
    return {n, [factors, n](std::uint64_t mask, std::uint64_t values) {
                double p = 1.0;
                for (int q = 0; q < n; ++q) {
                    if (mask & qmask(n, q)) p *= std::norm(factors[static_cast<size_t>(q)][qbit(n, values, q)]);
                }
                return p;
            }};
}

// ---- phase ------------------------------------------------------------------

PhaseModel::PhaseModel(int n, std::function<double(const BitString &)> theta) : n_(n), theta_(std::move(theta)) {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::Domain, "phase state width must lie in [1, 64]");
    require(static_cast<bool>(theta_), ErrorKind::Precondition, "phase state needs a phase function");
}

Amplitude PhaseModel::amplitude(std::uint64_t x) const {
    return std::polar(std::pow(2.0, -0.5 * n_), theta_(BitString(n_, x)));
}

std::uint64_t PhaseModel::sample(Rng &rng) const { return rng.next_u64() & BitString::mask(n_); }

// ---- stabilizer -------------------------------------------------------------

StabilizerModel::StabilizerModel(int n, Circuit circuit) : circuit_(std::move(circuit)), tableau_(n) {
    tableau_.apply(circuit_);
}

std::string StabilizerModel::description() const {
    return "stabilizer state from " + std::to_string(circuit_.size()) + " Clifford gates on " + std::to_string(n()) +
           " qubits";
}

MarginalOracle StabilizerModel::marginals() const {
    auto tableau = tableau_;
    return {n(), [tableau](std::uint64_t mask, std::uint64_t values) { return tableau.marginal(mask, values); }};
}

// ---- MPS --------------------------------------------------------------------

namespace {

Eigen::MatrixXcd transfer(const std::array<Eigen::MatrixXcd, 2> &site) {
    const Eigen::Index r = site[0].rows(), c = site[0].cols();
    Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(r * r, c * c);
    for (const auto &a : site) {
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) {
                if (a(i, j) == Amplitude(0.0)) continue;
                e.block(i * r, j * c, r, c) += a(i, j) * a.conjugate();
            }
    }
    return e;
}

}  // namespace

MpsModel::MpsModel(MpsDescription desc) : desc_(std::move(desc)) {
    const auto &s = desc_.sites;
    require(!s.empty() && s.size() <= kMaxQubits, ErrorKind::Domain, "an MPS needs between 1 and 64 sites");
    for (size_t j = 0; j < s.size(); ++j) {
        require(s[j][0].rows() >= 1 && s[j][0].cols() >= 1, ErrorKind::Precondition, "empty MPS tensor");
        require(s[j][0].rows() == s[j][1].rows() && s[j][0].cols() == s[j][1].cols(), ErrorKind::Precondition,
                "MPS site " + std::to_string(j) + " has differently shaped matrices");
        const auto &next = s[(j + 1) % s.size()];
        require(s[j][0].cols() == next[0].rows(), ErrorKind::Precondition,
                "MPS bond dimensions do not chain at site " + std::to_string(j));
    }
    const size_t n = s.size();
    right_.resize(n + 1);
    const Eigen::Index d0 = s[0][0].rows();
    right_[n] = Eigen::MatrixXcd::Identity(d0 * d0, d0 * d0);
    for (size_t j = n; j-- > 0;) right_[j] = transfer(s[j]) * right_[j + 1];
    double norm2 = right_[0].trace().real();
    require(norm2 > 1e-300 && std::isfinite(norm2), ErrorKind::Precondition, "MPS has zero norm");
    norm_ = std::sqrt(norm2);
}

Amplitude MpsModel::amplitude(std::uint64_t x) const {
    const int n = this->n();
    Eigen::MatrixXcd p = desc_.sites[0][static_cast<size_t>(qbit(n, x, 0))];
    for (int j = 1; j < n; ++j) p = p * desc_.sites[static_cast<size_t>(j)][static_cast<size_t>(qbit(n, x, j))];
    return p.trace() / norm_;
}

double MpsModel::prefix_weight(const Eigen::MatrixXcd &p, int next_site) const {
    // sum over completions of |Tr(P Q)|^2 = sum P_ab conj(P_cd) R[(b,d),(a,c)]
    const Eigen::MatrixXcd &r = right_[static_cast<size_t>(next_site)];
    const Eigen::Index d0 = p.rows(), dj = p.cols();
    Amplitude w{};
    for (Eigen::Index a = 0; a < d0; ++a)
        for (Eigen::Index c = 0; c < d0; ++c)
            for (Eigen::Index b = 0; b < dj; ++b) {
                Amplitude pab = p(a, b);
                if (pab == Amplitude(0.0)) continue;
                for (Eigen::Index d = 0; d < dj; ++d) w += pab * std::conj(p(c, d)) * r(b * dj + d, a * d0 + c);
            }
    return std::max(w.real(), 0.0);
}

std::uint64_t MpsModel::sample(Rng &rng) const {
    const int n = this->n();
    const Eigen::Index d0 = desc_.sites[0][0].rows();
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(d0, d0);
    std::uint64_t x = 0;
    for (int j = 0; j < n; ++j) {
        const auto &site = desc_.sites[static_cast<size_t>(j)];
        Eigen::MatrixXcd p0 = p * site[0], p1 = p * site[1];
        double w0 = prefix_weight(p0, j + 1), w1 = prefix_weight(p1, j + 1);
        require(w0 + w1 > 0, ErrorKind::Precondition, "MPS sampler reached a zero-weight prefix");
        if (rng.uniform() * (w0 + w1) < w1) {
            x |= qmask(n, j);
            p = p1;
        } else {
            p = p0;
        }
        double scale = p.norm();
        if (scale > 0) p /= scale;
    }
    return x;
}

std::string MpsModel::description() const {
    Eigen::Index bond = 0;
    for (const auto &s : desc_.sites) bond = std::max({bond, s[0].rows(), s[0].cols()});
    return "MPS on " + std::to_string(n()) + " sites, bond dimension " + std::to_string(bond);
}

// ---- QFT of a product -------------------------------------------------------

QftProductModel::QftProductModel(std::vector<Factor> factors) : factors_(std::move(factors)) {
    check_factors(factors_);
}

Amplitude QftProductModel::factor_value(int j, std::uint64_t x) const {
    // j = 1..n; depends on the low j bits of int(x).
    std::uint64_t low = j >= 64 ? x : (x & ((std::uint64_t{1} << j) - 1));
    double angle = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(low), -j);
    const Factor &f = factors_[static_cast<size_t>(j - 1)];
    return f[0] + std::polar(1.0, angle) * f[1];
}

Amplitude QftProductModel::amplitude(std::uint64_t x) const {
    const int n = this->n();
    Amplitude a{std::pow(2.0, -0.5 * n)};
    for (int j = 1; j <= n; ++j) a *= factor_value(j, x);
    return a;
}

std::uint64_t QftProductModel::sample(Rng &rng) const {
    // Least significant bit first; given the lower bits the next bit has
    // conditional |factor_t|^2 / 2 and the two choices sum to 2.
    const int n = this->n();
    std::uint64_t low = 0;
    for (int t = 1; t <= n; ++t) {
        std::uint64_t bit = std::uint64_t{1} << (t - 1);
        double f0 = std::norm(factor_value(t, low)), f1 = std::norm(factor_value(t, low | bit));
        if (rng.uniform() * (f0 + f1) < f1) low |= bit;
    }
    return low;
}

std::string QftProductModel::description() const {
    return "QFT of a product state on " + std::to_string(n()) + " qubits";
}

// ---- basis-preserving image -------------------------------------------------

BasisImageModel::BasisImageModel(BasisPreservingOp op, CtState inner) : op_(std::move(op)), inner_(std::move(inner)) {
    require(op_.n == inner_.n(), ErrorKind::WidthMismatch,
            "basis-preserving op on " + std::to_string(op_.n) + " qubits applied to a state of " +
                std::to_string(inner_.n()));
}

Amplitude BasisImageModel::amplitude(std::uint64_t x) const {
    std::uint64_t y = op_.inverse(x);
    Amplitude gamma = op_.phase(y);
    require(std::abs(std::abs(gamma) - 1.0) <= kUnitTolerance, ErrorKind::Precondition,
            "basis-preserving op is not unitary: |gamma| = " + std::to_string(std::abs(gamma)));
    return gamma * inner_.amplitude_word(y);
}

std::string BasisImageModel::description() const {
    return op_.description + " applied to " + inner_.description();
}

// ---- tensor -----------------------------------------------------------------

TensorModel::TensorModel(CtState head, CtState tail) : head_(std::move(head)), tail_(std::move(tail)) {
    require(head_.n() + tail_.n() <= kMaxQubits, ErrorKind::Domain, "tensor product wider than 64 qubits");
    require(head_.frame() == tail_.frame(), ErrorKind::Precondition, "tensor factors live in different frames");
}

Amplitude TensorModel::amplitude(std::uint64_t x) const {
    const int tn = tail_.n();
    return head_.amplitude_word(x >> tn) * tail_.amplitude_word(x & BitString::mask(tn));
}

std::uint64_t TensorModel::sample(Rng &rng) const {
    std::uint64_t h = head_.sample_word(rng);
    std::uint64_t t = tail_.sample_word(rng);
    return (h << tail_.n()) | t;
}

std::string TensorModel::description() const {
    return "(" + head_.description() + ") x (" + tail_.description() + ")";
}

// ---- dense ------------------------------------------------------------------

DenseModel::DenseModel(std::vector<Amplitude> amplitudes) : amps_(std::move(amplitudes)) {
    const size_t size = amps_.size();
    require(size >= 2 && (size & (size - 1)) == 0 && size <= (size_t{1} << 24), ErrorKind::Domain,
            "dense state size must be a power of two between 2 and 2^24");
    n_ = std::countr_zero(size);
    cumulative_.resize(size);
    double acc = 0;
    for (size_t i = 0; i < size; ++i) {
        acc += std::norm(amps_[i]);
        cumulative_[i] = acc;
    }
    require(std::abs(acc - 1.0) <= 1e-8, ErrorKind::Precondition, "dense state is not normalized");
}

std::uint64_t DenseModel::sample(Rng &rng) const {
    double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::uint64_t>(it - cumulative_.begin());
}

// ---- constructors -----------------------------------------------------------

CtState product_state(std::vector<Factor> factors) {
    return CtState(std::make_shared<ProductModel>(std::move(factors)));
}

CtState basis_state(const BitString &x) {
    std::vector<Factor> f;
    for (int q = 0; q < x.width(); ++q) f.push_back(x.bit(q) ? Factor{0.0, 1.0} : Factor{1.0, 0.0});
    return product_state(std::move(f));
}

CtState plus_state(int n) {
    const double r = 1.0 / std::numbers::sqrt2;
    return product_state(std::vector<Factor>(static_cast<size_t>(n), Factor{r, r}));
}

CtState phase_state(int n, std::function<double(const BitString &)> theta) {
    return CtState(std::make_shared<PhaseModel>(n, std::move(theta)));
}

CtState stabilizer_state(int n, Circuit circuit) {
    return CtState(std::make_shared<StabilizerModel>(n, std::move(circuit)));
}

CtState mps_state(MpsDescription desc) { return CtState(std::make_shared<MpsModel>(std::move(desc))); }

CtState qft_product_state(std::vector<Factor> factors) {
    return CtState(std::make_shared<QftProductModel>(std::move(factors)));
}

CtState apply_basis_preserving(const BasisPreservingOp &op, const CtState &psi) {
    return CtState(std::make_shared<BasisImageModel>(op, psi), psi.frame());
}

CtState tensor(const CtState &head, const CtState &tail) {
    return CtState(std::make_shared<TensorModel>(head, tail), head.frame());
}

CtState dense_state(std::vector<Amplitude> amplitudes) {
    return CtState(std::make_shared<DenseModel>(std::move(amplitudes)));
}

namespace {

CtState rotate_model(const CtState &psi) {
    const double r = 1.0 / std::numbers::sqrt2;
    if (const auto *p = psi.as<ProductModel>()) {
        std::vector<Factor> f;
        for (const Factor &a : p->factors()) f.push_back({(a[0] + a[1]) * r, (a[0] - a[1]) * r});
        return product_state(std::move(f));
    }
    if (const auto *s = psi.as<StabilizerModel>()) {
        Circuit c = s->circuit();
        for (int q = 0; q < psi.n(); ++q) c.push_back(Gate::single(GateKind::H, q));
        return stabilizer_state(psi.n(), std::move(c));
    }
    if (const auto *m = psi.as<MpsModel>()) {
        MpsDescription d = m->desc();
        for (auto &site : d.sites) {
            Eigen::MatrixXcd a0 = (site[0] + site[1]) * r, a1 = (site[0] - site[1]) * r;
            site = {a0, a1};
        }
        return mps_state(std::move(d));
    }
    if (const auto *t = psi.as<TensorModel>()) return tensor(rotate_model(t->head()), rotate_model(t->tail()));
    if (const auto *d = psi.as<DenseModel>()) {
        std::vector<Amplitude> v = d->amplitudes();
        for (size_t h = 1; h < v.size(); h <<= 1)
            for (size_t i = 0; i < v.size(); i += 2 * h)
                for (size_t j = i; j < i + h; ++j) {
                    Amplitude a = v[j], b = v[j + h];
                    v[j] = (a + b) * r;
                    v[j + h] = (a - b) * r;
                }
        return dense_state(std::move(v));
    }
    fail(ErrorKind::OutOfClass, std::string("no plus/minus-basis description for a ") + family_name(psi.family()) +
                                    " state");
}

}  // namespace

CtState rotate_to_pm_basis(const CtState &psi) {
    Frame target = psi.frame() == Frame::Computational ? Frame::PlusMinus : Frame::Computational;
    return rotate_model(psi.with_frame(Frame::Computational)).with_frame(target);
}

}  // namespace wsim
