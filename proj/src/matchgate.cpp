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


#include "wsim/matchgate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }
inline int qbit(int n, std::uint64_t w, int q) { return static_cast<int>((w >> (n - 1 - q)) & 1u); }

constexpr double kGateTolerance = 1e-10;
constexpr double kZeroProbability = 1e-14;

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Amplitude det2(const Mat2 &m) { return m[0] * m[3] - m[1] * m[2]; }

double su2_defect(const Mat2 &m) {
    std::vector<Amplitude> v(m.begin(), m.end());
    return std::max(unitarity_defect(v, 2), std::abs(det2(m) - 1.0));
}

/// Projects mode pair (2j, 2j+1) onto Z_j = (-1)^bit. Returns the outcome
/// probability; the covariance is left untouched when it is zero.
double condition(Eigen::MatrixXd &m, int j, int bit) {
    const int a = 2 * j, b = a + 1;
    const double s = bit ? -1.0 : 1.0;
    const double p = 0.5 * (1.0 - s * m(a, b));
    if (p < kZeroProbability) return 0.0;
    const double denom = 1.0 - s * m(a, b);
    const Eigen::VectorXd ca = m.col(a), cb = m.col(b);
    m += (s / denom) * (ca * cb.transpose() - cb * ca.transpose());
    m.row(a).setZero();
    m.row(b).setZero();
    m.col(a).setZero();
    m.col(b).setZero();
    m(a, b) = -s;
    m(b, a) = s;
    return p;
}

PauliString majorana(int n, int mode) {
    const int j = mode / 2;
    std::uint64_t below = 0;
    for (int q = 0; q < j; ++q) below |= qmask(n, q);
    PauliString p{n, qmask(n, j), below};
    if (mode % 2 == 1) p.z |= qmask(n, j);
    return p;
}

}  // namespace

void validate_matchgate(const Gate &gate, int n) {
    require(gate.kind == GateKind::Matchgate, ErrorKind::Precondition,
            std::string("matchgate circuit contains a ") + gate_name(gate.kind) + " gate");
    validate_gate(gate, n);
    require(su2_defect(gate.a) <= kGateTolerance, ErrorKind::Precondition, "matchgate block A is not in SU(2)");
    require(su2_defect(gate.b) <= kGateTolerance, ErrorKind::Precondition, "matchgate block B is not in SU(2)");
}

void MatchgateCircuit::validate() const {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::Precondition, "matchgate register width out of range");
    for (const Gate &g : gates) validate_matchgate(g, n);
}

Eigen::Matrix4d local_majorana_rotation(const Gate &gate) {
    using namespace std::complex_literals;
    Eigen::Matrix2cd x, y, z, id;
    x << 0, 1, 1, 0;
    y << 0, -1i, 1i, 0;
    z << 1, 0, 0, -1;
    id.setIdentity();
    const Eigen::Matrix4cd modes[4] = {kron2(x, id), kron2(y, id), kron2(z, x), kron2(z, y)};
    const std::vector<Amplitude> gm = gate_matrix(gate);
    Eigen::Matrix4cd g;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g(i, j) = gm[static_cast<size_t>(i * 4 + j)];
    Eigen::Matrix4d r;
    for (int a = 0; a < 4; ++a) {
        const Eigen::Matrix4cd heis = g.adjoint() * modes[a] * g;
        for (int b = 0; b < 4; ++b) {
            Amplitude t = (heis * modes[b]).trace() / 4.0;
            require(std::abs(t.imag()) <= 1e-9, ErrorKind::Verification, "matchgate rotation is not real");
            r(a, b) = t.real();
        }
    }
    return r;
}

MajoranaRotation MajoranaRotation::identity(int n) { return {Eigen::MatrixXd::Identity(2 * n, 2 * n)}; }

MajoranaRotation MajoranaRotation::of_gate(const Gate &gate, int n) {
    validate_matchgate(gate, n);
    MajoranaRotation out = identity(n);
    out.r.block<4, 4>(2 * gate.targets[0], 2 * gate.targets[0]) = local_majorana_rotation(gate);
    return out;
}

MajoranaRotation MajoranaRotation::then(const MajoranaRotation &later) const { return {later.r * r}; }

MajoranaRotation MajoranaRotation::of_circuit(const MatchgateCircuit &circuit) {
    circuit.validate();
    MajoranaRotation out = identity(circuit.n);
    for (const Gate &g : circuit.gates) {
        const int base = 2 * g.targets[0];
        const Eigen::Matrix4d local = local_majorana_rotation(g);
        // Only four rows of the product change.
        Eigen::MatrixXd rows = local * out.r.middleRows(base, 4);
        out.r.middleRows(base, 4) = rows;
    }
    return out;
}

double MajoranaRotation::orthogonality_defect() const {
    const auto d = r.rows();
    return (r.transpose() * r - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Amplitude pfaffian(Eigen::MatrixXcd a) {
    const auto m = a.rows();
    require(a.cols() == m, ErrorKind::Precondition, "pfaffian of a non-square matrix");
    if (m % 2 == 1) return 0.0;
    Amplitude pf{1.0};
    for (Eigen::Index k = 0; k + 1 < m; k += 2) {
        Eigen::Index piv = k + 1;
        double best = std::abs(a(k, k + 1));
        for (Eigen::Index j = k + 2; j < m; ++j) {
            if (std::abs(a(k, j)) > best) {
                best = std::abs(a(k, j));
                piv = j;
            }
        }
        if (piv != k + 1) {
            a.row(k + 1).swap(a.row(piv));
            a.col(k + 1).swap(a.col(piv));
            pf = -pf;
        }
        const Amplitude head = a(k, k + 1);
        if (head == Amplitude{}) return 0.0;
        pf *= head;
        if (k + 2 < m) {
            const Eigen::Index rest = m - k - 2;
            Eigen::VectorXcd tau = a.row(k).tail(rest).transpose() / head;
            Eigen::VectorXcd next = a.row(k + 1).tail(rest).transpose();
            a.bottomRightCorner(rest, rest) += next * tau.transpose() - tau * next.transpose();
        }
    }
    return pf;
}

Eigen::MatrixXd basis_covariance(int n, std::uint64_t x) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int j = 0; j < n; ++j) {
        const double sign = qbit(n, x, j) ? -1.0 : 1.0;
        m(2 * j, 2 * j + 1) = -sign;
        m(2 * j + 1, 2 * j) = sign;
    }
    return m;
}

// ---- model ------------------------------------------------------------------

MatchgateModel::RefFrame MatchgateModel::make_frame(int n, Eigen::MatrixXd cov, std::uint64_t ref, Amplitude ref_amp) {
    using namespace std::complex_literals;
    const Eigen::MatrixXd mphi = basis_covariance(n, ref);
    const Eigen::MatrixXd s = mphi + cov;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(s);
    require(lu.isInvertible(), ErrorKind::Verification, "matchgate reference has vanishing overlap");
    const auto d = 2 * n;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
    const Eigen::MatrixXcd left = id - 1i * mphi.cast<Amplitude>();
    const Eigen::MatrixXcd right = id - 1i * cov.cast<Amplitude>();
    const Eigen::MatrixXcd sinv = lu.inverse().cast<Amplitude>();
    RefFrame f;
    f.transition = 1i * left * sinv * right;
    f.cov = std::move(cov);
    f.ref = ref;
    f.ref_amp = ref_amp;
    return f;
}

Amplitude MatchgateModel::amplitude_in(const RefFrame &f, int n, std::uint64_t x) {
    const std::uint64_t d = x ^ f.ref;
    if (std::popcount(d) % 2 == 1) return 0.0;
    if (d == 0) return f.ref_amp;
    // |x> = sign * c_{2j_1} ... c_{2j_m} |ref> with j_1 < ... < j_m.
    std::vector<int> flipped;
    for (int q = n - 1; q >= 0; --q) {
        if (d & qmask(n, q)) flipped.push_back(q);
    }
    std::uint64_t state = f.ref;
    int sign = 1;
    for (int q : flipped) {
        const std::uint64_t below = ~((std::uint64_t{1} << (n - q)) - 1);
        if (std::popcount(state & below) % 2 == 1) sign = -sign;
        state ^= qmask(n, q);
    }
    const auto m = static_cast<Eigen::Index>(flipped.size());
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index k = i + 1; k < m; ++k) {
            w(i, k) = f.transition(2 * flipped[static_cast<size_t>(i)], 2 * flipped[static_cast<size_t>(k)]);
            w(k, i) = -w(i, k);
        }
    }
    return f.ref_amp * static_cast<double>(sign) * pfaffian(std::move(w));
}

std::uint64_t MatchgateModel::most_likely(int n, Eigen::MatrixXd cov, double &prob) {
    std::uint64_t x = 0;
    prob = 1.0;
    for (int j = 0; j < n; ++j) {
        const double p1 = 0.5 * (1.0 + cov(2 * j, 2 * j + 1));
        const int bit = p1 > 0.5 ? 1 : 0;
        if (bit) x |= qmask(n, j);
        prob *= condition(cov, j, bit);
    }
    return x;
}

MatchgateModel::MatchgateModel(MatchgateCircuit circuit, std::uint64_t input)
    : n_(circuit.n), circuit_(std::move(circuit)), input_(input) {
    circuit_.validate();
    const int n = n_;
    frame_ = make_frame(n, basis_covariance(n, input), input, 1.0);
    for (const Gate &g : circuit_.gates) {
        const int q = g.targets[0];
        const int base = 2 * q;
        const Eigen::Matrix4d local = local_majorana_rotation(g);
        Eigen::MatrixXd cov = frame_.cov;
        Eigen::MatrixXd rows = local * cov.middleRows(base, 4);
        cov.middleRows(base, 4) = rows;
        Eigen::MatrixXd cols = cov.middleCols(base, 4) * local.transpose();
        cov.middleCols(base, 4) = cols;

        double p = 0;
        const std::uint64_t ref = most_likely(n, cov, p);
        const std::vector<Amplitude> gm = gate_matrix(g);
        const std::uint64_t pair = qmask(n, q) | qmask(n, q + 1);
        const int lref = (qbit(n, ref, q) << 1) | qbit(n, ref, q + 1);
        Amplitude amp{};
        for (int lz = 0; lz < 4; ++lz) {
            const Amplitude coeff = gm[static_cast<size_t>(lref * 4 + lz)];
            if (coeff == Amplitude{}) continue;
            std::uint64_t y = ref & ~pair;
            if (lz & 2) y |= qmask(n, q);
            if (lz & 1) y |= qmask(n, q + 1);
            amp += coeff * amplitude_in(frame_, n, y);
        }
        require(std::abs(std::abs(amp) - std::sqrt(p)) <= 1e-6, ErrorKind::Verification,
                "matchgate reference amplitude drifted from its probability");
        amp *= std::sqrt(p) / std::abs(amp);
        frame_ = make_frame(n, std::move(cov), ref, amp);
    }
    cov_ = frame_.cov;
}

Amplitude MatchgateModel::amplitude(std::uint64_t x) const { return amplitude_in(frame_, n_, x); }

double MatchgateModel::marginal(std::uint64_t mask, std::uint64_t values) const {
    Eigen::MatrixXd m = cov_;
    double p = 1.0;
    for (int j = 0; j < n_; ++j) {
        if (!(mask & qmask(n_, j))) continue;
        p *= condition(m, j, qbit(n_, values, j));
        if (p == 0.0) return 0.0;
    }
    return p;
}

MarginalOracle MatchgateModel::marginals() const {
    return MarginalOracle{n_, [this](std::uint64_t mask, std::uint64_t values) { return marginal(mask, values); }};
}

std::uint64_t MatchgateModel::sample(Rng &rng) const {
    // The marginal chain. Modes of already drawn qubits are never read again,
    // so only the trailing block of the conditioned covariance is updated.
    Eigen::MatrixXd m = cov_;
    const int d = 2 * n_;
    std::uint64_t x = 0;
    for (int j = 0; j < n_; ++j) {
        const int a = 2 * j, b = a + 1;
        const double p1 = std::clamp(0.5 * (1.0 + m(a, b)), 0.0, 1.0);
        const int bit = rng.uniform() < p1 ? 1 : 0;
        if (bit) x |= qmask(n_, j);
        const double s = bit ? -1.0 : 1.0;
        const double denom = 1.0 - s * m(a, b);
        if (denom < 2 * kZeroProbability) continue;
        const double f = s / denom;
        for (int l = b + 1; l < d; ++l) {
            const double la = m(l, a), lb = m(l, b);
            for (int k = b + 1; k < d; ++k) m(k, l) += f * (m(k, a) * lb - m(k, b) * la);
        }
    }
    return x;
}

std::string MatchgateModel::description() const {
    std::ostringstream s;
    s << "matchgate circuit of " << circuit_.gates.size() << " gates on " << BitString(n_, input_).to_string();
    return s.str();
}

CtState matchgate_state(const MatchgateCircuit &circuit, const BitString &input) {
    require(input.width() == circuit.n, ErrorKind::WidthMismatch, "matchgate input width differs from circuit");
    return CtState(std::make_shared<MatchgateModel>(circuit, input.word()));
}

PauliSum conjugate_z1(const MatchgateCircuit &circuit) {
    using namespace std::complex_literals;
    const int n = circuit.n;
    const Eigen::MatrixXd r = MajoranaRotation::of_circuit(circuit).r;
    const int d = 2 * n;
    PauliSum out{n, {}};
    // Z_1 = -i c_0 c_1 and U^dagger c_a U = sum_b R_ab c_b.
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            const double w = r(0, a) * r(1, b) - r(0, b) * r(1, a);
            if (std::abs(w) <= 1e-15) continue;
            const PauliProduct prod = multiply(majorana(n, a), majorana(n, b));
            out.terms.push_back({-1i * w * prod.phase, prod.result});
        }
    }
    out.simplify(1e-14);
    for (auto &t : out.terms) {
        require(std::abs(t.coeff.imag()) <= 1e-12, ErrorKind::Verification, "conjugated Z_1 is not Hermitian");
        t.coeff = Amplitude(t.coeff.real(), 0.0);
    }
    return out;
}

Mat2 random_su2(Rng &rng) {
    const double theta = std::asin(std::sqrt(rng.uniform()));
    const double alpha = 2 * std::numbers::pi * rng.uniform();
    const double beta = 2 * std::numbers::pi * rng.uniform();
    const Amplitude a = std::polar(std::cos(theta), alpha), b = std::polar(std::sin(theta), beta);
    return {a, -std::conj(b), b, std::conj(a)};
}

MatchgateCircuit random_matchgate_circuit(int n, int gates, Rng &rng) {
    require(n >= 2, ErrorKind::Precondition, "matchgates need at least two qubits");
    MatchgateCircuit c{n, {}};
    for (int k = 0; k < gates; ++k) {
        const int q = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n - 1));
        const Mat2 a = random_su2(rng);
        c.gates.push_back(Gate::matchgate(q, a, random_su2(rng)));
    }
    return c;
}

}  // namespace wsim
