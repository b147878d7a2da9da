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


#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "acceptance.hpp"
#include "wsim/boolean_fourier.hpp"
#include "wsim/errors.hpp"
#include "wsim/oracle.hpp"
#include "wsim/reference.hpp"
#include "wsim/sampling.hpp"

namespace wsim::acceptance {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

BooleanOracle random_function(int m, std::mt19937_64 &rng) {
    std::vector<bool> t(std::size_t{1} << m);
    for (size_t i = 0; i < t.size(); ++i) t[i] = rng() & 1u;
    return truth_table_oracle(t, "random");
}

/// A degree-d monomial plus up to four of lower degree; constant 1 for d = 0.
BooleanOracle random_polynomial(int m, int d, std::mt19937_64 &rng) {
    std::vector<std::uint64_t> mons;
    auto monomial = [&](int deg) {
        std::uint64_t mask = 0;
        while (std::popcount(mask) < deg) mask |= std::uint64_t{1} << (rng() % static_cast<unsigned>(m));
        return mask;
    };
    mons.push_back(monomial(d));
    const int extra = d == 0 ? 0 : static_cast<int>(rng() % 5);
    for (int i = 0; i < extra; ++i) mons.push_back(monomial(static_cast<int>(rng() % static_cast<unsigned>(d))));
    return BooleanOracle(
        m,
        [mons](std::uint64_t x) {
            bool v = false;
            for (std::uint64_t mon : mons) v ^= (x & mon) == mon;
            return v;
        },
        "poly");
}

Eigen::MatrixXcd wg_dense(const std::vector<double> &spectrum) {
    const auto dim = static_cast<Eigen::Index>(spectrum.size());
    Eigen::MatrixXcd w(dim, dim);
    for (Eigen::Index u = 0; u < dim; ++u)
        for (Eigen::Index v = 0; v < dim; ++v) w(u, v) = spectrum[static_cast<size_t>(u ^ v)];
    return w;
}

FourierTable exact_table(const std::vector<double> &spectrum, int m, double theta) {
    FourierTable t;
    t.m = m;
    for (std::uint64_t u = 0; u < spectrum.size(); ++u)
        if (std::abs(spectrum[u]) >= theta && std::abs(spectrum[u]) > 1e-12) t.entries.push_back({BitString(m, u), spectrum[u], 0.0});
    return t;
}

/// Every |coeff| >= theta is listed, every listed coeff is >= theta/4 and within theta/4.
bool complete_and_sound(const FourierTable &t, const std::vector<double> &spectrum, double theta) {
    std::set<std::uint64_t> listed;
    for (const FourierEntry &e : t.entries) {
        const double c = spectrum[e.u.word()];
        if (std::abs(c) < theta / 4 - 1e-12 || std::abs(e.coeff - c) > theta / 4 + 1e-12) return false;
        listed.insert(e.u.word());
    }
    for (std::uint64_t u = 0; u < spectrum.size(); ++u)
        if (std::abs(spectrum[u]) >= theta && !listed.count(u)) return false;
    return t.valid;
}

}  // namespace

Outcome fourier_machinery() {
    std::mt19937_64 rng(707);
    double parseval = 0;
    for (int m = 1; m <= 14; ++m) {
        double total = 0;
        for (double c : fourier_spectrum(random_function(m, rng))) total += c * c;
        parseval = std::max(parseval, std::abs(total - 1.0));
    }
    int km_bad = 0, sampled_bad = 0, sampled_runs = 0;
    const double theta = 0.2;
    for (int i = 0; i < 50; ++i) {
        const int k = std::array{0, 2, 3}[static_cast<size_t>(i % 3)];
        const int m = 4 + i % 11;
        BooleanOracle g = random_sparse_oracle(m, k, rng());
        const auto spectrum = fourier_spectrum(g);
        if (!complete_and_sound(km_heavy_coefficients(g, theta, 1e-3, RandomStream{77, static_cast<std::uint64_t>(i)}), spectrum, theta))
            ++km_bad;
        if (i % 5 == 0) {
            ++sampled_runs;
            FourierTable t = km_heavy_coefficients(g, theta, 1e-3, RandomStream{78, static_cast<std::uint64_t>(i)}, KmOptions{false});
            if (!complete_and_sound(t, spectrum, theta)) ++sampled_bad;
        }
    }
    std::string degree_detail;
    int degree_bad = 0;
    for (int d = 0; d <= 4; ++d) {
        int below = 0;
        for (int rep = 0; rep < 10; ++rep) {
            SparsenessDegree sd = sparseness_and_degree(random_polynomial(8, d, rng));
            if (sd.degree != d) throw Error(ErrorKind::Domain, "polynomial degree mismatch");
            if (sd.sparseness < (std::size_t{1} << d)) ++below;
        }
        degree_bad += below;
        degree_detail += " d=" + std::to_string(d) + ":" + std::to_string(below) + "/10";
    }
    return {parseval <= 1e-10 && km_bad == 0 && sampled_bad == 0 && degree_bad == 0,
            "Parseval error " + fmt(parseval) + " (m <= 14); KM " + std::to_string(km_bad) + "/50 incomplete or unsound, sampled path " +
                std::to_string(sampled_bad) + "/" + std::to_string(sampled_runs) + "; sparseness below 2^d:" + degree_detail +
                " (affine functions have one nonzero coefficient, so d = 1 cannot satisfy it)"};
}

Outcome wg_identity_and_truncation() {
    std::mt19937_64 rng(808);
    double identity = 0;
    for (int m = 1; m <= 6; ++m) {
        BooleanOracle g = random_function(m, rng);
        std::vector<int> targets;
        for (int q = 0; q <= m; ++q) targets.push_back(q);
        Circuit h;
        for (int q = 0; q < m; ++q) h.push_back(Gate::single(GateKind::H, q));
        Circuit ug{Gate::oracle_gate(targets, g.as_function())};
        Eigen::MatrixXcd hm = dense_unitary(h, m + 1), u = dense_unitary(ug, m + 1);
        Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(1 << (m + 1), 1 << (m + 1));
        for (Eigen::Index x = 0; x < z.rows(); ++x)
            if (x & 1) z(x, x) = -1.0;
        Eigen::MatrixXcd o = hm * u.adjoint() * z * u * hm;
        const Eigen::Index dim = Eigen::Index{1} << m;
        Eigen::MatrixXcd block(dim, dim);
        for (Eigen::Index a = 0; a < dim; ++a)
            for (Eigen::Index b = 0; b < dim; ++b) block(a, b) = o(2 * a, 2 * b);
        identity = std::max(identity, (block - wg_dense(fourier_spectrum(g))).cwiseAbs().maxCoeff());
    }
    double worst_ratio = 0;
    int checks = 0, violations = 0;
    std::vector<BooleanOracle> funcs{random_sparse_oracle(10, 3, rng()), random_sparse_oracle(10, 2, rng()),
                                     random_polynomial(8, 3, rng), random_polynomial(9, 2, rng), and_oracle(5)};
    for (const BooleanOracle &g : funcs) {
        const auto spectrum = fourier_spectrum(g);
        const double s = static_cast<double>(sparseness_and_degree(g).sparseness);
        const Eigen::MatrixXcd full = wg_dense(spectrum);
        for (double theta : {0.05, 0.15, 0.3, 0.6}) {
            Eigen::MatrixXcd trunc = assemble_columns(wg_operator(exact_table(spectrum, g.m(), theta), g.m(), theta));
            const double norm = dense_spectral_norm(full - trunc).spectral;
            ++checks;
            if (norm > s * theta + 1e-9) ++violations;
            worst_ratio = std::max(worst_ratio, norm / (s * theta));
        }
    }
    return {identity <= 1e-10 && violations == 0,
            "oracle identity error " + fmt(identity) + " (m <= 6); truncation bound violated in " + std::to_string(violations) +
                " of " + std::to_string(checks) + " cases (m <= 10), largest norm / (s theta) " + fmt(worst_ratio)};
}

Outcome five_round_end_to_end() {
    std::mt19937_64 rng(909);
    const ErrorBudget budget{0.05, 1e-3};
    const int n = 10;
    int failures = 0, runs = 0;
    double worst = 0;
    for (int rep = 0; rep < 10; ++rep) {
        FiveRoundCircuit c;
        c.n = n;
        for (int q = 0; q < n; ++q) {
            if (rng() & 1u) c.s1.push_back(q);
            if (q < 5) c.measured.push_back(q);
            if (q < 5 || (rng() & 1u)) c.s2.push_back(q);
        }
        for (int i = 0; i < 16; ++i) {
            int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n), z = static_cast<int>(rng() % n);
            if (x == y || y == z || x == z) continue;
            if (i % 3 == 0) c.v.push_back(Gate::toffoli(x, y, z));
            else if (i % 3 == 1) c.v.push_back(Gate::two(GateKind::CPhase, x, y, 0.5 + i));
            else c.v.push_back(Gate::two(GateKind::CNOT, x, y));
        }
        for (int k : {0, 2}) {
            BooleanOracle g = random_sparse_oracle(5, k, rng());
            FiveRoundResult r = simulate_five_round(c, g, std::size_t{1} << k, budget,
                                                    RandomStream{9, static_cast<std::uint64_t>(2 * rep + k)});
            const double err = std::abs(r.report.estimate.value.real() - reference::five_round(c, g));
            worst = std::max(worst, err);
            ++runs;
            if (err > 2 * budget.epsilon) ++failures;
        }
    }
    // Simon: 6 input and 6 output qubits.
    const int k = 6;
    BitString a(k, 0);
    while (a.word() == 0) a = BitString(k, rng() & BitString::mask(k));
    FiveRoundCircuit simon;
    simon.n = 2 * k;
    for (int q = 0; q < k; ++q) {
        simon.s1.push_back(q);
        simon.s2.push_back(q);
        simon.measured.push_back(q);
    }
    simon.v = simon_oracle_circuit(a);
    std::vector<std::uint64_t> cs{a.word(), 0};
    while (cs.size() < 5) {
        const std::uint64_t c = rng() & BitString::mask(k);
        if (c != a.word() && c != 0) cs.push_back(c);
    }
    bool separated = true;
    std::string values;
    for (std::uint64_t c : cs) {
        BooleanOracle g = c == 0 ? constant_oracle(k, false) : parity_oracle(BitString(k, c));
        const double v = simulate_five_round(simon, g, 1, budget, RandomStream{10, c}).report.estimate.value.real();
        const bool hidden = c == 0 || c == a.word();
        separated &= hidden ? v >= 0.9 : std::abs(v) <= 0.1;
        separated &= std::abs(v - reference::five_round(simon, g)) <= 2 * budget.epsilon;
        values += " " + fmt(v);
    }
    return {failures == 0 && separated,
            std::to_string(failures) + " of " + std::to_string(runs) + " runs at n = 10 beyond 2 eps (largest error " + fmt(worst) +
                ", g 1- and 4-sparse; no Boolean function is exactly 2-sparse); Simon n = 12 parity estimates for c = a, 0, 3 others:" +
                values + (separated ? " separated" : " not separated")};
}

Outcome chernoff_coverage() {
    const double epsilon = 0.05, delta = 0.05;
    const std::uint64_t cut = 307;
    const double mean = 2.0 * static_cast<double>(cut) / 1024.0 - 1.0;
    const Sampler sampler = [](Rng &r) { return BitString(10, r.next_u64() & 1023u); };
    const Evaluator f = [cut](const BitString &x) { return Amplitude(x.word() < cut ? 1.0 : -1.0); };
    const int reps = 1000;
    int misses = 0;
    for (int i = 0; i < reps; ++i) {
        Estimate e = estimate_mean(sampler, f, epsilon, delta, 1.0, RandomStream{1010, static_cast<std::uint64_t>(i)}, ValueKind::Real);
        if (std::abs(e.value.real() - mean) > epsilon) ++misses;
    }
    const double rate = static_cast<double>(misses) / reps;
    const double allowed = delta + 3 * std::sqrt(delta * (1 - delta) / reps);
    return {rate <= allowed, "failure rate " + fmt(rate) + " over " + std::to_string(reps) + " runs at eps = 0.05, delta = 0.05 (allowed " +
                                 fmt(allowed) + "), " + std::to_string(required_samples(epsilon, delta, 1.0)) + " samples each"};
}

Outcome cli_determinism(const Context &ctx) {
    const std::string f = ctx.fixtures + "/";
    const std::vector<std::string> commands = {
        "estimate matel " + f + "ghz4.json " + f + "zz_x4.json " + f + "phase4.json --seed 42",
        "estimate partial " + f + "ghz4.json " + f + "toffoli4.json " + f + "plus1.json " + f + "plus1.json " + f + "local4.json " + f +
            "phase4.json",
        "simulate " + f + "plan_composed_sandwich.json --seed 3",
        "simulate " + f + "plan_cnot_expx.json",
        "simulate " + f + "plan_five_round.json",
        "learn --oracle random-sparse:s=4,seed=7,m=10 --threshold 0.2 --sampled",
        "demo theorem2 --seed 9",
    };
    int mismatches = 0, errors = 0;
    for (const std::string &cmd : commands) {
        std::string reference;
        for (int workers : {1, 4}) {
            for (int rep = 0; rep < 2; ++rep) {
                std::string out;
                if (run_command(ctx.cli + " " + cmd + " --workers " + std::to_string(workers) + " 2>/dev/null", &out) != 0) ++errors;
                if (workers == 1 && rep == 0) reference = out;
                else if (out != reference) ++mismatches;
            }
        }
    }
    return {mismatches == 0 && errors == 0, std::to_string(commands.size()) + " commands, workers 1 and 4, twice each: " +
                                                std::to_string(mismatches) + " differing outputs, " + std::to_string(errors) +
                                                " nonzero exits"};
}

}  // namespace wsim::acceptance
