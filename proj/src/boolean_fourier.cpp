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


#include "wsim/boolean_fourier.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "wsim/basis_op.hpp"
#include "wsim/ct_states.hpp"
#include "wsim/errors.hpp"

namespace wsim {

namespace {

constexpr std::uint64_t low_mask(int bits) { return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1); }

void check_exhaustive(int m, int bound) {
    require(m <= bound, ErrorKind::Budget,
            "exhaustive transform limited to " + std::to_string(bound) + " input bits, got " + std::to_string(m));
}

/// GF(2) rank of the given rows.
int gf2_rank(std::vector<std::uint64_t> rows) {
    int rank = 0;
    for (int bit = 63; bit >= 0; --bit) {
        const std::uint64_t m = std::uint64_t{1} << bit;
        auto pivot = std::find_if(rows.begin() + rank, rows.end(), [m](std::uint64_t r) { return r & m; });
        if (pivot == rows.end()) continue;
        std::swap(*pivot, rows[static_cast<size_t>(rank)]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<size_t>(rank) && (rows[i] & m)) rows[i] ^= rows[static_cast<size_t>(rank)];
        ++rank;
    }
    return rank;
}

std::vector<double> table_spectrum(const std::vector<bool> &h) {
    std::vector<double> v(h.size());
    for (size_t x = 0; x < h.size(); ++x) v[x] = h[x] ? -1.0 : 1.0;
    kernels::walsh_hadamard_serial(v);
    for (double &c : v) c /= static_cast<double>(h.size());
    return v;
}

std::map<std::string, std::string> parse_params(const std::string &text, const std::string &spec) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        require(eq != std::string::npos && eq > 0, ErrorKind::Parse, "malformed oracle parameter '" + item + "' in " + spec);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

long long parse_int(const std::string &text, const std::string &spec) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    require(ec == std::errc() && ptr == text.data() + text.size(), ErrorKind::Parse,
            "expected an integer, got '" + text + "' in " + spec);
    return v;
}

}  // namespace

// ---- oracle -----------------------------------------------------------------

BooleanOracle::BooleanOracle(int m, std::function<bool(std::uint64_t)> f, std::string name)
    : m_(m), f_(std::move(f)), name_(std::move(name)), count_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
    require(m >= 1 && m <= 32, ErrorKind::Domain, "Boolean oracles take between 1 and 32 input bits");
    require(static_cast<bool>(f_), ErrorKind::Domain, "oracle has no evaluator");
}

bool BooleanOracle::evaluate(const BitString &x) const {
    require(x.width() == m_, ErrorKind::WidthMismatch,
            "oracle on " + std::to_string(m_) + " bits queried with " + std::to_string(x.width()));
    return evaluate_word(x.word());
}

std::shared_ptr<const BooleanFunction> BooleanOracle::as_function() const {
    return std::make_shared<const BooleanFunction>(BooleanFunction{m_, f_, name_});
}

// ---- tables -----------------------------------------------------------------

void FourierTable::validate() const {
    std::set<std::uint64_t> seen;
    for (const auto &e : entries) {
        require(e.u.width() == m, ErrorKind::WidthMismatch, "table entry has the wrong width");
        require(seen.insert(e.u.word()).second, ErrorKind::Precondition, "duplicate table entry " + e.u.to_string());
        require(std::abs(e.coeff) <= 1.0 + e.accuracy + 1e-12, ErrorKind::Precondition,
                "coefficient above one at " + e.u.to_string());
    }
}

std::optional<FourierEntry> FourierTable::find(const BitString &u) const {
    for (const auto &e : entries)
        if (e.u == u) return e;
    return std::nullopt;
}

namespace kernels {

void walsh_hadamard_parallel(std::vector<double> &v) {
    const auto size = static_cast<std::int64_t>(v.size());
    require(std::has_single_bit(v.size()), ErrorKind::Domain, "transform length must be a power of two");
    for (std::int64_t len = 1; len < size; len <<= 1) {
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < size / 2; ++i) {
            const std::int64_t j = (i / len) * 2 * len + i % len;
            const double a = v[static_cast<size_t>(j)], b = v[static_cast<size_t>(j + len)];
            v[static_cast<size_t>(j)] = a + b;
            v[static_cast<size_t>(j + len)] = a - b;
        }
    }
}

void walsh_hadamard_serial(std::vector<double> &v) {
    require(std::has_single_bit(v.size()), ErrorKind::Domain, "transform length must be a power of two");
    for (size_t len = 1; len < v.size(); len <<= 1)
        for (size_t j = 0; j < v.size(); j += 2 * len)
            for (size_t k = j; k < j + len; ++k) {
                const double a = v[k], b = v[k + len];
                v[k] = a + b;
                v[k + len] = a - b;
            }
}

}  // namespace kernels

std::vector<double> fourier_spectrum(const BooleanOracle &g) {
    check_exhaustive(g.m(), kExhaustiveFourierBound);
    const auto size = static_cast<std::int64_t>(std::uint64_t{1} << g.m());
    std::vector<double> v(static_cast<size_t>(size));
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < size; ++x) v[static_cast<size_t>(x)] = g.sign(static_cast<std::uint64_t>(x));
    kernels::walsh_hadamard_parallel(v);
    const double inv = 1.0 / static_cast<double>(size);
    for (double &c : v) c *= inv;
    return v;
}

double fourier_coefficient_exact(const BooleanOracle &g, const BitString &u) {
    check_exhaustive(g.m(), kExhaustiveFourierBound);
    require(u.width() == g.m(), ErrorKind::WidthMismatch, "coefficient index has the wrong width");
    const auto size = static_cast<std::int64_t>(std::uint64_t{1} << g.m());
    const std::uint64_t uw = u.word();
    long long total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t x = 0; x < size; ++x) {
        const auto xw = static_cast<std::uint64_t>(x);
        total += g.sign(xw) * (parity(uw & xw) ? -1 : 1);
    }
    return static_cast<double>(total) / static_cast<double>(size);
}

Estimate estimate_fourier_coefficient(const BooleanOracle &g, const BitString &u, double epsilon, double delta,
                                      const RandomStream &stream) {
    require(u.width() == g.m(), ErrorKind::WidthMismatch, "coefficient index has the wrong width");
    const int m = g.m();
    const std::uint64_t uw = u.word();
    Sampler uniform = [m](Rng &rng) { return BitString(m, rng.next_u64()); };
    Evaluator f = [&g, uw](const BitString &x) {
        return Amplitude(g.sign(x.word()) * (parity(uw & x.word()) ? -1.0 : 1.0));
    };
    return estimate_mean(uniform, f, epsilon, delta, 1.0, stream, ValueKind::Real);
}

// ---- heavy coefficients -------------------------------------------------------

FourierTable km_heavy_coefficients(const BooleanOracle &g, double threshold, double delta,
                                   const RandomStream &stream, const KmOptions &options) {
    require(threshold > 0.0 && threshold <= 1.0, ErrorKind::Domain, "threshold must lie in (0, 1]");
    require(delta > 0.0 && delta < 1.0, ErrorKind::Domain, "delta must lie in (0, 1)");
    const int m = g.m();
    const std::uint64_t start_queries = g.queries();
    const double t2 = threshold * threshold;
    // Prefixes whose weight is at least t2/4 number at most 4/t2 per level.
    const auto width = static_cast<std::size_t>(std::floor(4.0 / t2));
    const double max_estimates = static_cast<double>(m) * 2.0 * static_cast<double>(width) + static_cast<double>(width);
    const double d_each = delta / max_estimates;
    const double weight_accuracy = t2 / 4.0;
    const std::uint64_t weight_samples = required_samples(weight_accuracy, d_each, 1.0);
    const bool exhaustive = options.exhaustive_when_cheaper && m <= kExhaustiveFourierBound &&
                            (std::uint64_t{1} << m) <= 2 * weight_samples;

    FourierTable table;
    table.m = m;
    std::vector<double> spectrum;
    if (exhaustive) spectrum = fourier_spectrum(g);

    auto weight = [&](std::uint64_t alpha, int k) -> double {
        if (exhaustive) {
            const int rest = m - k;
            double w = 0;
            const std::uint64_t base = alpha << rest;
            for (std::uint64_t beta = 0; beta < (std::uint64_t{1} << rest); ++beta) w += spectrum[base | beta] * spectrum[base | beta];
            return w;
        }
        const int rest = m - k;
        // Word layout: [z' (k bits)][z (k bits)][x (m - k bits)].
        Sampler draw = [m, k](Rng &rng) { return BitString(m + k, rng.next_u64()); };
        Evaluator f = [&g, alpha, k, rest](const BitString &s) {
            const std::uint64_t w = s.word();
            const std::uint64_t x = w & low_mask(rest);
            const std::uint64_t z = (w >> rest) & low_mask(k);
            const std::uint64_t z2 = (w >> (rest + k)) & low_mask(k);
            const int a = g.sign((z << rest) | x) * g.sign((z2 << rest) | x);
            return Amplitude(parity(alpha & (z ^ z2)) ? -a : a);
        };
        Estimate e = estimate_mean(draw, f, weight_accuracy, d_each, 1.0,
                                   stream.child((std::uint64_t{1} << k) | alpha), ValueKind::Real);
        return e.value.real();
    };

    std::vector<std::uint64_t> level{0};
    for (int k = 1; k <= m; ++k) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t alpha : level) {
            for (std::uint64_t bit : {std::uint64_t{0}, std::uint64_t{1}}) {
                const std::uint64_t child = (alpha << 1) | bit;
                ++table.estimates;
                if (weight(child, k) >= t2 / 2.0) next.push_back(child);
            }
        }
        if (next.size() > width) {
            table.valid = false;
            table.note = "level " + std::to_string(k) + " kept " + std::to_string(next.size()) +
                         " prefixes, above the bound " + std::to_string(width);
            level = next;
            level.resize(width);
            break;
        }
        level = std::move(next);
    }
    if (table.valid) {
        for (std::uint64_t u : level) {
            FourierEntry e{BitString(m, u), 0.0, 0.0};
            if (exhaustive) {
                e.coeff = spectrum[u];
            } else {
                ++table.estimates;
                Estimate est = estimate_fourier_coefficient(g, e.u, threshold / 4.0, d_each,
                                                            stream.child((std::uint64_t{1} << (m + 1)) + u));
                e.coeff = est.value.real();
                e.accuracy = threshold / 4.0;
            }
            if (std::abs(e.coeff) >= threshold / 2.0) table.entries.push_back(e);
        }
    }
    double sq = 0;
    for (const auto &e : table.entries) sq += e.coeff * e.coeff;
    table.residual_weight = 1.0 - sq;
    table.queries = g.queries() - start_queries;
    return table;
}

// ---- degree -----------------------------------------------------------------

std::vector<std::uint8_t> algebraic_normal_form(const BooleanOracle &g) {
    check_exhaustive(g.m(), kExhaustiveDegreeBound);
    const std::uint64_t size = std::uint64_t{1} << g.m();
    std::vector<std::uint8_t> a(size);
    for (std::uint64_t x = 0; x < size; ++x) a[x] = g.evaluate_word(x) ? 1 : 0;
    for (std::uint64_t bit = 1; bit < size; bit <<= 1)
        for (std::uint64_t x = 0; x < size; ++x)
            if (x & bit) a[x] ^= a[x ^ bit];
    return a;
}

SparsenessDegree sparseness_and_degree(const BooleanOracle &g) {
    check_exhaustive(g.m(), kExhaustiveDegreeBound);
    SparsenessDegree out;
    for (double c : fourier_spectrum(g))
        if (std::abs(c) > 1e-12) ++out.sparseness;
    auto anf = algebraic_normal_form(g);
    for (std::uint64_t x = 0; x < anf.size(); ++x)
        if (anf[x]) out.degree = std::max(out.degree, std::popcount(x));
    return out;
}

// ---- W_g ----------------------------------------------------------------------

EcsOperator wg_operator(const FourierTable &table, int m, double theta) {
    require(table.m == m, ErrorKind::WidthMismatch, "table width differs from m");
    require(theta >= 0.0, ErrorKind::Domain, "theta must be non-negative");
    table.validate();
    struct Term {
        std::uint64_t w;
        double c;
    };
    auto terms = std::make_shared<std::vector<Term>>();
    double abs_sum = 0, acc_sum = 0, acc_max = 0;
    for (const auto &e : table.entries) {
        require(std::abs(e.coeff) + e.accuracy >= theta, ErrorKind::Precondition,
                "entry " + e.u.to_string() + " lies below the threshold");
        terms->push_back({e.u.word(), e.coeff});
        abs_sum += std::abs(e.coeff);
        acc_sum += e.accuracy;
        acc_max = std::max(acc_max, e.accuracy);
    }
    // A = sum_w c_w X^w has eigenvalues sum_w c_w (-1)^{w.x}.
    double norm = abs_sum;
    if (m <= kExhaustiveFourierBound && !terms->empty()) {
        std::vector<double> v(std::size_t{1} << m, 0.0);
        for (const Term &t : *terms) v[t.w] += t.c;
        kernels::walsh_hadamard_parallel(v);
        norm = 0;
        for (double l : v) norm = std::max(norm, std::abs(l));
    }
    EcsOperator op;
    op.n = m;
    op.sparseness = std::max<std::size_t>(1, terms->size());
    op.norm_bound = norm + acc_sum;
    op.abs_sum_bound = abs_sum + acc_sum;
    op.precision = acc_max > 0 ? Precision::PolyAccurate : Precision::Exact;
    op.entry_accuracy = acc_max;
    op.column = [terms](std::uint64_t v) {
        EcsList out;
        out.reserve(terms->size());
        for (const Term &t : *terms) out.push_back({v ^ t.w, t.c});
        normalize_entries(out);
        return out;
    };
    op.row = op.column;
    op.description = "thresholded W_g with " + std::to_string(terms->size()) + " coefficients";
    return op;
}

// ---- five rounds ----------------------------------------------------------------

void FiveRoundCircuit::validate() const {
    require(n >= 1 && n <= kMaxQubits, ErrorKind::Domain, "register width out of range");
    auto check = [this](const std::vector<int> &qs, const char *what) {
        std::set<int> seen;
        for (int q : qs) {
            require(q >= 0 && q < n, ErrorKind::Domain, std::string(what) + " qubit out of range");
            require(seen.insert(q).second, ErrorKind::Domain, std::string(what) + " lists a qubit twice");
        }
    };
    check(s1, "first Hadamard layer");
    check(s2, "second Hadamard layer");
    check(measured, "measured set");
    require(!measured.empty(), ErrorKind::Domain, "nothing is measured");
    for (int q : measured)
        require(std::find(s2.begin(), s2.end(), q) != s2.end(), ErrorKind::Precondition,
                "measured qubit " + std::to_string(q) + " is not rotated by the second Hadamard layer");
    for (const Gate &g : v) {
        validate_gate(g, n);
        require(is_basis_preserving(g.kind), ErrorKind::OutOfClass,
                std::string("round two must be basis-preserving, found ") + gate_name(g.kind));
    }
}

FiveRoundResult simulate_five_round(const FiveRoundCircuit &circuit, const BooleanOracle &g,
                                    std::size_t sparseness_hint, const ErrorBudget &budget,
                                    const RandomStream &stream, const KmOptions &km) {
    circuit.validate();
    budget.validate();
    require(g.m() == static_cast<int>(circuit.measured.size()), ErrorKind::WidthMismatch,
            "g takes " + std::to_string(g.m()) + " bits, " + std::to_string(circuit.measured.size()) + " are measured");
    require(sparseness_hint >= 1, ErrorKind::Domain, "sparseness hint must be positive");

    FiveRoundResult out;
    out.theta = budget.epsilon / static_cast<double>(sparseness_hint);
    out.truncation_bound = static_cast<double>(sparseness_hint) * out.theta;
    FourierTable learned = km_heavy_coefficients(g, out.theta, budget.delta / 2, stream.child(0), km);
    require(learned.valid, ErrorKind::Budget, "heavy-coefficient search failed: " + learned.note);

    out.table = learned;
    out.table.entries.clear();
    for (const auto &e : learned.entries)
        if (std::abs(e.coeff) + e.accuracy >= out.theta) out.table.entries.push_back(e);
    require(out.table.entries.size() <= sparseness_hint, ErrorKind::Precondition,
            "promise violated: found " + std::to_string(out.table.entries.size()) +
                " heavy coefficients, more than the sparseness hint " + std::to_string(sparseness_hint));
    if (learned.residual_weight > out.theta * out.theta)
        out.table.note = "residual Fourier weight " + std::to_string(learned.residual_weight) +
                         " exceeds theta^2; g may not be as sparse as promised";

    const int n = circuit.n;
    EcsOperator a = embed(wg_operator(out.table, g.m(), out.theta), circuit.measured, n);
    std::vector<Factor> factors(static_cast<size_t>(n), Factor{1.0, 0.0});
    const double r = 1.0 / std::sqrt(2.0);
    for (int q : circuit.s1) factors[static_cast<size_t>(q)] = Factor{r, r};
    CtState psi = product_state(factors);
    if (!circuit.v.empty()) psi = apply_basis_preserving(BasisPreservingOp::from_circuit(n, circuit.v), psi);

    ErrorBudget b = budget;
    b.delta = budget.delta / 2;
    b.kind = ValueKind::Real;
    out.report = estimate_matrix_element(psi, a, psi, b, stream.child(1));
    return out;
}

// ---- registry -------------------------------------------------------------------

BooleanOracle parity_oracle(const BitString &a) {
    const std::uint64_t w = a.word();
    return BooleanOracle(a.width(), [w](std::uint64_t x) { return parity(w & x) == 1; }, "parity:a=" + a.to_string());
}

BooleanOracle and_oracle(int m) {
    const std::uint64_t all = low_mask(m);
    return BooleanOracle(m, [all](std::uint64_t x) { return x == all; }, "and:m=" + std::to_string(m));
}

BooleanOracle constant_oracle(int m, bool value) {
    return BooleanOracle(m, [value](std::uint64_t) { return value; },
                         std::string(value ? "one" : "zero") + ":m=" + std::to_string(m));
}

BooleanOracle random_sparse_oracle(int m, int k, std::uint64_t seed) {
    require(k >= 0 && k <= m && k <= 10, ErrorKind::Domain, "random sparse oracle needs 0 <= k <= min(m, 10)");
    require(k != 1, ErrorKind::Domain, "no Boolean function has exactly two nonzero Fourier coefficients");
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> a;
    while (static_cast<int>(a.size()) < std::max(k, 1)) {
        std::uint64_t cand = rng() & low_mask(m);
        if (cand == 0) continue;
        auto rows = a;
        rows.push_back(cand);
        if (gf2_rank(rows) == static_cast<int>(rows.size())) a.push_back(cand);
    }
    std::string name = "random-sparse:s=" + std::to_string(std::uint64_t{1} << k) + ",seed=" + std::to_string(seed) +
                       ",m=" + std::to_string(m);
    if (k == 0) {
        // One nonzero coefficient: a character, possibly negated.
        const std::uint64_t w = a[0];
        const bool flip = rng() & 1u;
        return BooleanOracle(m, [w, flip](std::uint64_t x) { return (parity(w & x) == 1) != flip; }, name);
    }
    std::vector<bool> h(std::size_t{1} << k);
    for (int attempt = 0;; ++attempt) {
        for (size_t y = 0; y < h.size(); ++y) h[y] = (attempt < 1000) ? (rng() & 1u) : (y + 1 == h.size());
        auto spec = table_spectrum(h);
        if (std::all_of(spec.begin(), spec.end(), [](double c) { return std::abs(c) > 1e-12; })) break;
    }
    return BooleanOracle(
        m,
        [a, h, k](std::uint64_t x) {
            std::uint64_t y = 0;
            for (int i = 0; i < k; ++i) y = (y << 1) | static_cast<std::uint64_t>(parity(a[static_cast<size_t>(i)] & x));
            return static_cast<bool>(h[y]);
        },
        name);
}

BooleanOracle simon_postprocessing_oracle(int k) {
    require(k >= 2 && k * (k - 1) <= 30, ErrorKind::Domain, "Simon postprocessing oracle needs 2 <= k <= 6");
    const int m = k * (k - 1);
    return BooleanOracle(
        m,
        [k](std::uint64_t x) {
            std::vector<std::uint64_t> rows;
            for (int i = 0; i < k - 1; ++i) rows.push_back((x >> (k * (k - 2 - i))) & low_mask(k));
            return gf2_rank(rows) == k - 1;
        },
        "simon-postproc:n=" + std::to_string(k));
}

BooleanOracle truth_table_oracle(std::vector<bool> table, std::string name) {
    require(table.size() >= 2 && std::has_single_bit(table.size()), ErrorKind::Parse,
            "truth table length must be a power of two, at least 2");
    const int m = std::countr_zero(table.size());
    require(m <= kExhaustiveFourierBound, ErrorKind::Parse, "truth tables are limited to 20 input bits");
    auto t = std::make_shared<const std::vector<bool>>(std::move(table));
    return BooleanOracle(m, [t](std::uint64_t x) { return static_cast<bool>((*t)[x]); }, std::move(name));
}

BooleanOracle load_truth_table(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), ErrorKind::Parse, "cannot open truth table " + path);
    std::vector<bool> table;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
        if (line.empty()) continue;
        require(line == "0" || line == "1", ErrorKind::Parse,
                path + ":" + std::to_string(lineno) + ": expected 0 or 1, got '" + line + "'");
        table.push_back(line == "1");
    }
    return truth_table_oracle(std::move(table), "table:" + path);
}

BooleanOracle make_oracle(const std::string &spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1), spec);
    auto get = [&](const std::string &key, long long fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : parse_int(it->second, spec);
    };
    if (kind == "parity") {
        auto it = params.find("a");
        require(it != params.end(), ErrorKind::Parse, "parity oracle needs a=<bits>");
        return parity_oracle(BitString::parse(it->second));
    }
    if (kind == "and") return and_oracle(static_cast<int>(get("m", 2)));
    if (kind == "zero") return constant_oracle(static_cast<int>(get("m", 1)), false);
    if (kind == "one") return constant_oracle(static_cast<int>(get("m", 1)), true);
    if (kind == "simon-postproc") return simon_postprocessing_oracle(static_cast<int>(get("n", 3)));
    if (kind == "random-sparse") {
        const long long s = get("s", 4);
        require(s >= 1 && std::has_single_bit(static_cast<unsigned long long>(s)), ErrorKind::Parse,
                "random-sparse needs s to be a power of two");
        return random_sparse_oracle(static_cast<int>(get("m", 12)), std::countr_zero(static_cast<unsigned long long>(s)),
                                    static_cast<std::uint64_t>(get("seed", 1)));
    }
    return load_truth_table(spec);
}

Circuit simon_oracle_circuit(const BitString &a) {
    const int k = a.width();
    const std::uint64_t aw = a.word();
    Circuit c;
    std::vector<int> inputs;
    for (int q = 0; q < k; ++q) inputs.push_back(q);
    for (int j = 0; j < k; ++j) {
        auto f = std::make_shared<const BooleanFunction>(BooleanFunction{
            k,
            [aw, j, k](std::uint64_t x) {
                const std::uint64_t v = std::min(x, x ^ aw);
                return ((v >> (k - 1 - j)) & 1u) == 1u;
            },
            "simon bit " + std::to_string(j)});
        std::vector<int> targets = inputs;
        targets.push_back(k + j);
        c.push_back(Gate::oracle_gate(targets, f));
    }
    return c;
}

}  // namespace wsim
