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


#include "wsim/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>

#include "wsim/basis_op.hpp"
#include "wsim/errors.hpp"

namespace wsim {

namespace {

constexpr double kTermSlack = 1e-9;
constexpr int kTabulateMaxQubits = 16;

void atomic_max(std::atomic<double> &a, double v) {
    double cur = a.load(std::memory_order_relaxed);
    while (v > cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
}

struct TermMonitor {
    std::atomic<double> f{0.0};
    std::atomic<double> g{0.0};
};

[[noreturn]] void term_violation(const char *which, std::size_t i, std::uint64_t at, double value, double limit) {
    std::ostringstream msg;
    msg << "|" << which << "_" << i << "| = " << value << " at word " << at << " exceeds " << limit;
    fail(ErrorKind::RangeViolation, msg.str());
}

class TabulatedModel final : public CtModel {
   public:
    explicit TabulatedModel(const CtState &inner) : inner_(inner) {
        const auto dim = static_cast<std::int64_t>(std::uint64_t{1} << inner.n());
        amps_.resize(static_cast<size_t>(dim));
#pragma omp parallel for schedule(static)
        for (std::int64_t x = 0; x < dim; ++x) {
            amps_[static_cast<size_t>(x)] = inner_.amplitude_word(static_cast<std::uint64_t>(x));
        }
    }
    int n() const override { return inner_.n(); }
    Amplitude amplitude(std::uint64_t x) const override { return amps_[x]; }
    std::uint64_t sample(Rng &rng) const override { return inner_.sample_word(rng); }
    StateFamily family() const override { return inner_.family(); }
    std::string description() const override { return inner_.description(); }

   private:
    CtState inner_;
    std::vector<Amplitude> amps_;
};

bool worth_tabulating(int n, std::uint64_t samples, const EstimatorOptions &options) {
    return options.tabulate && n <= kTabulateMaxQubits && (std::uint64_t{1} << n) <= samples;
}

std::size_t position_of(const EcsList &list, std::uint64_t index) {
    auto it = std::lower_bound(list.begin(), list.end(), index,
                               [](const EcsEntry &e, std::uint64_t v) { return e.index < v; });
    require(it != list.end() && it->index == index, ErrorKind::Verification,
            "row and column enumerators of the operator disagree");
    return static_cast<std::size_t>(it - list.begin());
}

void check_states(const CtState &phi, const CtState &psi) {
    require(phi.n() == psi.n(), ErrorKind::WidthMismatch,
            "states of width " + std::to_string(phi.n()) + " and " + std::to_string(psi.n()));
    require(phi.frame() == psi.frame(), ErrorKind::Precondition, "states are written in different frames");
}

Estimate combine(const std::vector<Estimate> &parts, double scale, const ErrorBudget &budget) {
    Estimate out;
    for (const Estimate &e : parts) {
        out.value += e.value;
        out.samples_used += e.samples_used;
    }
    out.value *= scale;
    out.epsilon = budget.epsilon;
    out.delta = budget.delta;
    return out;
}

}  // namespace

void ErrorBudget::validate() const {
    require(epsilon > 0 && std::isfinite(epsilon), ErrorKind::Domain, "epsilon must be positive");
    require(delta > 0 && delta < 1, ErrorKind::Domain, "delta must lie in (0, 1)");
}

ErrorBudget ErrorBudget::share(double epsilon_fraction, double delta_fraction) const {
    ErrorBudget b = *this;
    b.epsilon *= epsilon_fraction;
    b.delta *= delta_fraction;
    return b;
}

void RangeReport::merge(const RangeReport &o) {
    evaluations += o.evaluations;
    max_f_term = std::max(max_f_term, o.max_f_term);
    max_g_term = std::max(max_g_term, o.max_g_term);
    max_pooled_ratio = std::max(max_pooled_ratio, o.max_pooled_ratio);
}

CtState tabulated(const CtState &psi) {
    return CtState(std::make_shared<TabulatedModel>(psi), psi.frame());
}

EcsOperator tabulated(const EcsOperator &a) {
    const auto dim = static_cast<std::int64_t>(std::uint64_t{1} << a.n);
    auto cols = std::make_shared<std::vector<EcsList>>(static_cast<size_t>(dim));
    auto rows = std::make_shared<std::vector<EcsList>>(static_cast<size_t>(dim));
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < dim; ++x) {
        (*cols)[static_cast<size_t>(x)] = a.column(static_cast<std::uint64_t>(x));
        (*rows)[static_cast<size_t>(x)] = a.row(static_cast<std::uint64_t>(x));
    }
    std::size_t s = 1;
    double abs_sum = 0;
    for (const auto *table : {cols.get(), rows.get()}) {
        for (const EcsList &list : *table) {
            s = std::max(s, list.size());
            double sum = 0;
            for (const EcsEntry &e : list) sum += std::abs(e.coeff);
            abs_sum = std::max(abs_sum, sum);
        }
    }
    EcsOperator op = a;
    op.sparseness = std::min(a.sparseness, s);
    op.abs_sum_bound = std::min(a.abs_sum_bound, abs_sum);
    op.column = [cols](std::uint64_t x) { return (*cols)[x]; };
    op.row = [rows](std::uint64_t y) { return (*rows)[y]; };
    return op;
}

// ---- overlap ----------------------------------------------------------------

EstimateReport estimate_overlap(const CtState &phi_in, const CtState &psi_in, const ErrorBudget &budget,
                                const RandomStream &stream, const EstimatorOptions &options) {
    budget.validate();
    check_states(phi_in, psi_in);
    const ErrorBudget half = budget.share(0.5, 0.5);
    const std::uint64_t k = required_samples_for(half.epsilon, half.delta, 1.0, budget.kind);
    CtState phi = phi_in, psi = psi_in;
    if (worth_tabulating(phi.n(), 2 * k, options)) {
        psi = tabulated(psi_in);
        phi = phi_in.model_ptr() == psi_in.model_ptr() ? psi.with_frame(phi_in.frame()) : tabulated(phi_in);
    }

    // F(x) = <phi|x><x|psi> / p_x on p_x >= q_x, sampled under p; G the rest under q.
    Evaluator f = [&](const BitString &x) -> Amplitude {
        const Amplitude a = psi.amplitude_word(x.word()), b = phi.amplitude_word(x.word());
        const double p = std::norm(a), q = std::norm(b);
        if (p < q) return 0.0;
        return std::conj(b) * a / p;
    };
    Evaluator g = [&](const BitString &y) -> Amplitude {
        const Amplitude a = psi.amplitude_word(y.word()), b = phi.amplitude_word(y.word());
        const double p = std::norm(a), q = std::norm(b);
        if (p >= q) return 0.0;
        return std::conj(b) * a / q;
    };
    RangeAudit fa, ga;
    Estimate ef = estimate_mean(psi.sampler(), f, half.epsilon, half.delta, 1.0, stream.child(0), budget.kind, &fa);
    Estimate eg = estimate_mean(phi.sampler(), g, half.epsilon, half.delta, 1.0, stream.child(1), budget.kind, &ga);
    EstimateReport rep;
    rep.estimate = combine({ef, eg}, 1.0, budget);
    rep.range.evaluations = fa.evaluations + ga.evaluations;
    rep.range.max_f_term = fa.max_ratio;
    rep.range.max_g_term = ga.max_ratio;
    rep.range.max_pooled_ratio = std::max(fa.max_ratio, ga.max_ratio);
    return rep;
}

// ---- matrix element ---------------------------------------------------------

EstimateReport estimate_matrix_element(const CtState &phi_in, const EcsOperator &a_in, const CtState &psi_in,
                                       const ErrorBudget &budget, const RandomStream &stream,
                                       const EstimatorOptions &options) {
    budget.validate();
    check_states(phi_in, psi_in);
    require(a_in.n == psi_in.n(), ErrorKind::WidthMismatch,
            "operator on " + std::to_string(a_in.n) + " qubits, states on " + std::to_string(psi_in.n()));
    require(a_in.frame == psi_in.frame(), ErrorKind::Precondition, "operator and states use different frames");
    require(a_in.sparseness >= 1, ErrorKind::Precondition, "operator sparseness must be at least one");

    const bool pooled = budget.split == SplitPolicy::Pooled;
    struct Plan {
        std::size_t s;
        double c, pooled_range;
        ErrorBudget sub;
        std::uint64_t kf, kg, total;
    };
    auto plan_for = [&](const EcsOperator &op) {
        Plan p{};
        p.s = op.sparseness;
        const double sd = static_cast<double>(p.s);
        double entry_error = 0.0, eps = budget.epsilon;
        if (op.precision == Precision::PolyAccurate) {
            entry_error = sd * op.entry_accuracy;
            require(entry_error <= budget.epsilon / 2, ErrorKind::Precondition,
                    "entry accuracy times sparseness exceeds half of epsilon");
            eps = budget.epsilon / 2;
        }
        // Divide by c so that every |alpha_i| / c <= 1; the error target shrinks by c.
        p.c = std::max(1.0, op.norm_bound + entry_error);
        const double norm = (op.norm_bound + entry_error) / p.c;
        const double abs_sum = (op.abs_sum_bound + entry_error) / p.c;
        p.pooled_range = std::min({sd, std::sqrt(sd) * norm, abs_sum});
        const double parts = pooled ? 2.0 : 2.0 * sd;
        p.sub = ErrorBudget{eps / p.c / parts, budget.delta / parts, budget.split, budget.kind};
        p.kf = required_samples_for(p.sub.epsilon, p.sub.delta, pooled ? p.pooled_range : 1.0, budget.kind);
        p.kg = required_samples_for(p.sub.epsilon, p.sub.delta, pooled ? p.pooled_range : sd, budget.kind);
        p.total = pooled ? p.kf + p.kg : (p.kf + p.kg) * p.s;
        return p;
    };

    Plan plan = plan_for(a_in);
    CtState phi = phi_in, psi = psi_in;
    EcsOperator a = a_in;
    if (worth_tabulating(a.n, plan.total, options)) {
        psi = tabulated(psi_in);
        phi = phi_in.model_ptr() == psi_in.model_ptr() ? psi.with_frame(phi_in.frame()) : tabulated(phi_in);
        // Exact sparseness and abs sums from the tables only tighten the bounds.
        a = tabulated(a_in);
        plan = plan_for(a);
    }
    const std::size_t s = plan.s;
    const double sd = static_cast<double>(s);
    const double c = plan.c;
    const double pooled_range = plan.pooled_range;
    const ErrorBudget sub = plan.sub;
    if (pooled_range == 0.0) {
        // Zero norm or zero entries: the operator vanishes.
        EstimateReport rep;
        rep.estimate = Estimate{0.0, budget.epsilon, budget.delta, 0};
        rep.sparseness = s;
        rep.scale = c;
        return rep;
    }

    TermMonitor monitor;
    const double inv_c = 1.0 / c;
    // Sum of F_i(x) over i in [lo, hi) of column x.
    auto f_terms = [&](std::uint64_t x, std::size_t lo, std::size_t hi) -> Amplitude {
        const Amplitude px_amp = psi.amplitude_word(x);
        const double p = std::norm(px_amp);
        const EcsList col = a.column(x);
        Amplitude sum{};
        for (std::size_t i = lo; i < std::min(hi, col.size()); ++i) {
            const Amplitude qa = phi.amplitude_word(col[i].index);
            const double q = std::norm(qa);
            if (p < q) continue;
            const Amplitude term = std::conj(qa) * col[i].coeff * inv_c * px_amp / p;
            const double mag = std::abs(term);
            if (mag > 1.0 + kTermSlack) term_violation("F", i, x, mag, 1.0);
            atomic_max(monitor.f, mag);
            sum += term;
        }
        return sum;
    };
    // Two-step procedure: x ranges over row(y); the index i with r_i(x) = y is
    // located in column(x). Returns the sum of G_i(y) over i in [lo, hi).
    auto g_terms = [&](std::uint64_t y, std::size_t lo, std::size_t hi) -> Amplitude {
        const Amplitude qy_amp = phi.amplitude_word(y);
        const double q = std::norm(qy_amp);
        const EcsList row = a.row(y);
        std::vector<std::pair<std::size_t, Amplitude>> hits;
        for (const EcsEntry &e : row) {
            const Amplitude pa = psi.amplitude_word(e.index);
            if (std::norm(pa) >= q) continue;
            const std::size_t i = position_of(a.column(e.index), y);
            if (i < lo || i >= hi) continue;
            hits.emplace_back(i, std::conj(qy_amp) * e.coeff * inv_c * pa / q);
        }
        std::sort(hits.begin(), hits.end(), [](const auto &u, const auto &v) { return u.first < v.first; });
        Amplitude sum{};
        for (std::size_t k = 0; k < hits.size();) {
            Amplitude gi{};
            const std::size_t i = hits[k].first;
            for (; k < hits.size() && hits[k].first == i; ++k) gi += hits[k].second;
            const double mag = std::abs(gi);
            if (mag > sd * (1.0 + kTermSlack)) term_violation("G", i, y, mag, sd);
            atomic_max(monitor.g, mag / sd);
            sum += gi;
        }
        return sum;
    };

    std::vector<Estimate> parts_out;
    RangeReport range;
    auto run = [&](const CtState &source, const Evaluator &fn, double m, std::uint64_t child) {
        RangeAudit audit;
        parts_out.push_back(estimate_mean(source.sampler(), fn, sub.epsilon, sub.delta, m, stream.child(child),
                                          budget.kind, &audit));
        range.evaluations += audit.evaluations;
        range.max_pooled_ratio = std::max(range.max_pooled_ratio, audit.max_ratio);
    };
    if (pooled) {
        run(psi, [&](const BitString &x) { return f_terms(x.word(), 0, s); }, pooled_range, 0);
        run(phi, [&](const BitString &y) { return g_terms(y.word(), 0, s); }, pooled_range, 1);
    } else {
        for (std::size_t i = 0; i < s; ++i) {
            run(psi, [&, i](const BitString &x) { return f_terms(x.word(), i, i + 1); }, 1.0, 2 * i);
            run(phi, [&, i](const BitString &y) { return g_terms(y.word(), i, i + 1); }, sd, 2 * i + 1);
        }
    }

    EstimateReport rep;
    rep.estimate = combine(parts_out, c, budget);
    rep.sparseness = s;
    rep.scale = c;
    range.max_f_term = monitor.f.load();
    range.max_g_term = monitor.g.load();
    rep.range = range;
    return rep;
}

// ---- local observables ------------------------------------------------------

EstimateReport estimate_local_observable(const CtState &psi, const PauliSum &o, const ErrorBudget &budget,
                                         const RandomStream &stream, int max_locality) {
    budget.validate();
    require(o.n == psi.n(), ErrorKind::WidthMismatch, "observable and state widths differ");
    require(!o.terms.empty(), ErrorKind::Precondition, "empty observable");
    if (max_locality < 0) max_locality = local_gate_arity_bound(o.n);
    double weight = 0;
    std::size_t sampled = 0;
    for (const auto &t : o.terms) {
        require(t.pauli.weight() <= max_locality, ErrorKind::Precondition,
                "term " + t.pauli.to_string() + " exceeds the locality bound " + std::to_string(max_locality));
        if (t.pauli.weight() > 0) {
            weight += std::abs(t.coeff);
            ++sampled;
        }
    }
    EstimateReport rep;
    rep.sparseness = o.distinct_flip_masks();
    rep.estimate.epsilon = budget.epsilon;
    rep.estimate.delta = budget.delta;
    // Each <psi|P_i|psi> is real; sum_i |a_i| eps_i = eps with eps_i = eps / sum |a|.
    ErrorBudget sub = budget;
    sub.kind = ValueKind::Real;
    if (sampled > 0) sub = sub.share(1.0 / weight, 1.0 / static_cast<double>(sampled));
    std::uint64_t index = 0;
    for (const auto &t : o.terms) {
        if (t.pauli.weight() == 0) {
            rep.estimate.value += t.coeff;
            continue;
        }
        PauliString p = t.pauli;
        Amplitude coeff = t.coeff;
        if (psi.frame() == Frame::PlusMinus) {
            // H P H swaps X and Z letters; each Y picks up a sign.
            p = PauliString{p.n, t.pauli.z, t.pauli.x};
            if (std::popcount(t.pauli.x & t.pauli.z) % 2 == 1) coeff = -coeff;
        }
        CtState moved = apply_basis_preserving(BasisPreservingOp::from_pauli(p), psi);
        EstimateReport part = estimate_overlap(psi, moved.with_frame(psi.frame()), sub, stream.child(index++));
        rep.estimate.value += coeff * part.estimate.value;
        rep.estimate.samples_used += part.estimate.samples_used;
        rep.range.merge(part.range);
    }
    return rep;
}

// ---- partial projected overlaps ---------------------------------------------

EstimateReport estimate_partial_projected(const CtState &phi, const EcsOperator &a, const CtState &xi,
                                          const CtState &chi, const EcsOperator &b, const CtState &psi,
                                          const ErrorBudget &budget, const RandomStream &stream,
                                          const EstimatorOptions &options) {
    const int n = psi.n(), k = xi.n();
    require(chi.n() == k && k <= n, ErrorKind::WidthMismatch, "projector registers must share a width k <= n");
    require(phi.n() == n && a.n == n && b.n == n, ErrorKind::WidthMismatch, "operators and states must act on n qubits");
    // <chi|<phi| (I (x) A) SWAP (I (x) B) |xi>|psi>.
    const CtState big_psi = tensor(xi, psi), big_phi = tensor(chi, phi);
    EcsOperator swap = swap_block_op(k, n);
    swap.frame = a.frame;
    const EcsOperator w = compose_sequence({kron_identity(k, b), swap, kron_identity(k, a)});
    return estimate_matrix_element(big_phi, w, big_psi, budget, stream, options);
}

}  // namespace wsim
