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


#include "wsim/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wsim/basis_op.hpp"
#include "wsim/errors.hpp"
#include "wsim/matchgate.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

using Matrix2 = std::vector<Amplitude>;

Matrix2 multiply2(const Matrix2 &a, const Matrix2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

bool has_local_matrix(const Gate &g) { return g.kind != GateKind::QFT && g.kind != GateKind::Oracle; }

bool is_single_qubit_layer(const Circuit &gates) {
    return std::all_of(gates.begin(), gates.end(),
                       [](const Gate &g) { return g.targets.size() == 1 && has_local_matrix(g); });
}

/// Product of the single-qubit gates acting on each qubit, in circuit order.
std::vector<Matrix2> per_qubit_matrices(const Circuit &gates, int n) {
    std::vector<Matrix2> out(static_cast<size_t>(n), Matrix2{1.0, 0.0, 0.0, 1.0});
    for (const Gate &g : gates) {
        validate_gate(g, n);
        require(g.targets.size() == 1 && has_local_matrix(g), ErrorKind::Domain,
                std::string("expected a single-qubit gate, got ") + gate_name(g.kind));
        auto &m = out[static_cast<size_t>(g.targets[0])];
        m = multiply2(gate_matrix(g), m);
    }
    return out;
}

Factor apply2(const Matrix2 &m, const Factor &f) { return {m[0] * f[0] + m[1] * f[1], m[2] * f[0] + m[3] * f[1]}; }

std::optional<std::uint64_t> basis_word(const CtState &psi) {
    const auto *prod = psi.as<ProductModel>();
    if (prod == nullptr) return std::nullopt;
    std::uint64_t x = 0;
    const int n = prod->n();
    for (int q = 0; q < n; ++q) {
        const Factor &f = prod->factors()[static_cast<size_t>(q)];
        if (std::abs(f[1]) < 1e-12 && std::abs(std::abs(f[0]) - 1.0) < 1e-12) continue;
        if (std::abs(f[0]) < 1e-12 && std::abs(std::abs(f[1]) - 1.0) < 1e-12) {
            x |= qmask(n, q);
            continue;
        }
        return std::nullopt;
    }
    return x;
}

int max_arity(const Circuit &gates) {
    int a = 0;
    for (const Gate &g : gates) a = std::max(a, static_cast<int>(g.targets.size()));
    return a;
}

bool all_kind(const Circuit &gates, const std::function<bool(const Gate &)> &pred) {
    return std::all_of(gates.begin(), gates.end(), pred);
}

bool is_full_qft(const Circuit &gates, int n) {
    if (gates.size() != 1 || gates[0].kind != GateKind::QFT) return false;
    if (static_cast<int>(gates[0].targets.size()) != n) return false;
    for (int q = 0; q < n; ++q)
        if (gates[0].targets[static_cast<size_t>(q)] != q) return false;
    return true;
}

bool is_z1(const PauliSum &o) {
    return o.terms.size() == 1 && o.terms[0].pauli == PauliString::single(o.n, 0, 'Z');
}

bool real_coefficients(const PauliSum &o) {
    return std::all_of(o.terms.begin(), o.terms.end(),
                       [](const PauliTerm &t) { return std::abs(t.coeff.imag()) <= 1e-14; });
}

// ---- CT side ----------------------------------------------------------------

struct CtStep {
    std::optional<CtState> state;
    std::string rule;
    std::string reason;
};

CtStep apply_ct_stage(const CtState &psi, const Stage &stage, bool first) {
    const int n = psi.n();
    CtStep out;
    try {
        if (stage.ecs) {
            out.reason = "an explicit ECS unitary does not prepare a CT state";
            return out;
        }
        if (stage.mps) {
            auto x = basis_word(psi);
            if (!first || !x || *x != 0) {
                out.reason = "MPS preparation applies only to |0...0> as the first stage";
                return out;
            }
            CtState next = mps_state(*stage.mps);
            require(next.n() == n, ErrorKind::WidthMismatch, "MPS width differs from the input");
            out.state = next;
            out.rule = "MPS preparation";
            return out;
        }
        for (const Gate &g : stage.gates) validate_gate(g, n);
        const auto *prod = psi.as<ProductModel>();
        const auto word = basis_word(psi);
        if (prod != nullptr && is_single_qubit_layer(stage.gates)) {
            auto mats = per_qubit_matrices(stage.gates, n);
            std::vector<Factor> f = prod->factors();
            for (int q = 0; q < n; ++q) f[static_cast<size_t>(q)] = apply2(mats[static_cast<size_t>(q)], f[static_cast<size_t>(q)]);
            out.state = product_state(std::move(f));
            out.rule = "local unitaries on a product state";
            return out;
        }
        if (word && all_kind(stage.gates, [](const Gate &g) { return g.kind == GateKind::Matchgate; })) {
            MatchgateCircuit c{n, stage.gates};
            out.state = matchgate_state(c, BitString(n, *word));
            out.rule = "matchgate circuit on a basis state";
            return out;
        }
        if (all_kind(stage.gates, [](const Gate &g) { return is_clifford(g.kind); })) {
            if (const auto *stab = psi.as<StabilizerModel>()) {
                Circuit c = stab->circuit();
                c.insert(c.end(), stage.gates.begin(), stage.gates.end());
                out.state = stabilizer_state(n, std::move(c));
                out.rule = "Clifford circuit on a stabilizer state";
                return out;
            }
            if (word) {
                Circuit c;
                for (int q = 0; q < n; ++q)
                    if (*word & qmask(n, q)) c.push_back(Gate::single(GateKind::X, q));
                c.insert(c.end(), stage.gates.begin(), stage.gates.end());
                out.state = stabilizer_state(n, std::move(c));
                out.rule = "Clifford circuit on a basis state";
                return out;
            }
        }
        if (prod != nullptr && is_full_qft(stage.gates, n)) {
            out.state = qft_product_state(prod->factors());
            out.rule = "QFT on a product state";
            return out;
        }
        if (all_kind(stage.gates, [](const Gate &g) { return is_basis_preserving(g.kind); })) {
            out.state = apply_basis_preserving(BasisPreservingOp::from_circuit(n, stage.gates), psi);
            out.rule = "basis-preserving circuit on a CT state";
            return out;
        }
        out.reason = std::string("no CT rule for this stage on a ") + family_name(psi.family()) + " state";
    } catch (const Error &e) {
        out.state.reset();
        out.reason = e.what();
    }
    return out;
}

// ---- ECS side ---------------------------------------------------------------

struct Observable {
    std::optional<PauliSum> pauli;
    std::optional<EcsOperator> op;
    double norm = 1.0;
    std::size_t max_terms = 4096;

    EcsOperator as_operator() const {
        if (op) return *op;
        return pauli_sum_op(*pauli, norm, max_terms);
    }
};

struct EcsStep {
    bool ok = false;
    std::string rule;
    std::string reason;
};

EcsOperator conjugate_op(const EcsOperator &v, const EcsOperator &o, std::size_t budget) {
    return compose_sequence({v, o, adjoint(v)}, budget);
}

EcsStep apply_ecs_stage(Observable &o, const Stage &stage, int n, const ComposedOptions &opt) {
    EcsStep out;
    try {
        if (stage.mps) {
            out.reason = "MPS preparation cannot conjugate an observable";
            return out;
        }
        if (stage.ecs) {
            require(stage.ecs->n == n, ErrorKind::WidthMismatch, "ECS unitary width differs from the register");
            o.op = conjugate_op(*stage.ecs, o.as_operator(), opt.sparseness_budget);
            o.pauli.reset();
            out.ok = true;
            out.rule = "ECS unitary";
            return out;
        }
        const Circuit &gates = stage.gates;
        for (const Gate &g : gates) validate_gate(g, n);
        if (o.pauli) {
            if (is_z1(*o.pauli) &&
                all_kind(gates, [](const Gate &g) { return g.kind == GateKind::Matchgate; })) {
                const Amplitude c = o.pauli->terms[0].coeff;
                PauliSum s = conjugate_z1(MatchgateCircuit{n, gates});
                for (auto &t : s.terms) t.coeff *= c;
                o.pauli = s;
                out.ok = true;
                out.rule = "matchgate circuit with Z1 observable";
                return out;
            }
            if (all_kind(gates, [](const Gate &g) { return is_clifford(g.kind); })) {
                o.pauli = conjugate_by_circuit(*o.pauli, gates);
                out.ok = true;
                out.rule = "Clifford circuit with a Pauli-sum observable";
                return out;
            }
            const bool local = all_kind(gates, has_local_matrix) && max_arity(gates) <= 2;
            const int depth = circuit_depth(gates, n);
            const bool nearest = all_kind(gates, [](const Gate &g) {
                return g.targets.size() < 2 || std::abs(g.targets[0] - g.targets[1]) == 1;
            });
            auto conjugate_pauli = [&](const std::string &rule) {
                PauliSum s = conjugate_by_circuit(*o.pauli, gates);
                require(s.terms.size() <= opt.max_pauli_terms, ErrorKind::Budget,
                        "conjugated observable has " + std::to_string(s.terms.size()) + " Pauli terms");
                o.pauli = s;
                out.ok = true;
                out.rule = rule;
            };
            if (local && nearest && depth <= log_depth_bound(n)) {
                conjugate_pauli("log-depth nearest-neighbour circuit");
                return out;
            }
            if (local && depth <= kConstantDepthBound &&
                static_cast<int>(o.pauli->support().size()) <= local_gate_arity_bound(n)) {
                conjugate_pauli("constant-depth circuit with a log-local observable");
                return out;
            }
        }
        if (all_kind(gates, [](const Gate &g) { return is_basis_preserving(g.kind); })) {
            o.op = conjugate_op(basis_preserving_op(n, gates), o.as_operator(), opt.sparseness_budget);
            o.pauli.reset();
            out.ok = true;
            out.rule = "basis-preserving circuit";
            return out;
        }
        if (all_kind(gates, has_local_matrix) && max_arity(gates) <= local_gate_arity_bound(n)) {
            std::size_t s = 1;
            std::vector<EcsOperator> ops;
            for (const Gate &g : gates) {
                ops.push_back(local_gate_op(g, n));
                s *= ops.back().sparseness;
                require(s <= opt.sparseness_budget, ErrorKind::Budget,
                        "product of gate sparseness exceeds " + std::to_string(opt.sparseness_budget));
            }
            EcsOperator v = ops.empty() ? identity_op(n) : compose_sequence(ops, opt.sparseness_budget);
            o.op = conjugate_op(v, o.as_operator(), opt.sparseness_budget);
            o.pauli.reset();
            out.ok = true;
            out.rule = "ECS unitaries from local gates";
            return out;
        }
        out.reason = "no ECS rule for this stage";
    } catch (const Error &e) {
        out.ok = false;
        out.reason = e.what();
    }
    return out;
}

std::string stage_name(const std::vector<Stage> &stages, size_t i) {
    const std::string &label = stages[i].label;
    return "stage " + std::to_string(i) + (label.empty() ? "" : " (" + label + ")");
}

}  // namespace

// ---- plans ------------------------------------------------------------------

void CircuitPlan::validate() const {
    require(input.n() == observable.n, ErrorKind::WidthMismatch,
            "plan state has " + std::to_string(input.n()) + " qubits, observable " + std::to_string(observable.n));
    require(input.frame() == frame && observable.frame == frame, ErrorKind::Precondition,
            "plan state and observable are not in the plan's frame");
}

SimulationResult simulate_theorem1(const CircuitPlan &plan, const ErrorBudget &budget, const RandomStream &stream,
                                   const EstimatorOptions &options) {
    plan.validate();
    ErrorBudget b = budget;
    if (plan.hermitian) b.kind = ValueKind::Real;
    SimulationResult r;
    r.report = estimate_matrix_element(plan.input, plan.observable, plan.input, b, stream, options);
    r.notes = plan.notes;
    return r;
}

PauliSum z1_observable(int n) { return PauliSum::single(PauliString::single(n, 0, 'Z')); }

int log_depth_bound(int n) {
    require(n >= 1, ErrorKind::Domain, "register width must be positive");
    return static_cast<int>(std::ceil(2.0 * std::log2(static_cast<double>(n))));
}

int circuit_depth(const Circuit &gates, int n) {
    std::vector<int> level(static_cast<size_t>(n), 0);
    int depth = 0;
    for (const Gate &g : gates) {
        int l = 0;
        for (int q : g.targets) l = std::max(l, level[static_cast<size_t>(q)]);
        ++l;
        for (int q : g.targets) level[static_cast<size_t>(q)] = l;
        depth = std::max(depth, l);
    }
    return depth;
}

CircuitPlan plan_sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input,
                                const SparseCircuitOptions &options) {
    const int n = input.n();
    PauliSum o = options.observable ? *options.observable : z1_observable(n);
    require(o.n == n, ErrorKind::WidthMismatch, "observable width differs from the input");
    EcsOperator obs = pauli_sum_op(o);
    double prod = 1.0;
    for (const EcsOperator &op : ops) {
        require(op.n == n, ErrorKind::WidthMismatch, "operator width differs from the input");
        require(op.frame == Frame::Computational, ErrorKind::Precondition, "sparse circuits run in the computational frame");
        prod *= static_cast<double>(op.sparseness);
    }
    const double total = prod * prod * static_cast<double>(obs.sparseness);
    require(total <= static_cast<double>(options.sparseness_budget), ErrorKind::Budget,
            "s^m guard: product of sparseness " + std::to_string(static_cast<long long>(prod)) +
                " gives U^dagger O U sparseness " + std::to_string(static_cast<long long>(total)) + " above " +
                std::to_string(options.sparseness_budget));
    std::vector<EcsOperator> chain(ops.begin(), ops.end());
    chain.push_back(obs);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) chain.push_back(adjoint(*it));
    CircuitPlan plan{input, compose_sequence(chain, options.sparseness_budget), Frame::Computational, {}, real_coefficients(o)};
    plan.observable.norm_bound = std::min(plan.observable.norm_bound, o.coefficient_one_norm());
    plan.notes.push_back("sparse circuit of " + std::to_string(ops.size()) + " ECS unitaries, product sparseness " +
                         std::to_string(static_cast<long long>(prod)));
    return plan;
}

SimulationResult simulate_sparse_circuit(const std::vector<EcsOperator> &ops, const CtState &input,
                                         const ErrorBudget &budget, const RandomStream &stream,
                                         const SparseCircuitOptions &options) {
    return simulate_theorem1(plan_sparse_circuit(ops, input, options), budget, stream);
}

CircuitPlan plan_composed(const CtState &input, const std::vector<Stage> &stages, const ComposedOptions &options,
                          int *split_out) {
    const int n = input.n();
    require(input.frame() == Frame::Computational, ErrorKind::Precondition, "composed circuits start in the computational frame");
    PauliSum o = options.observable ? *options.observable : z1_observable(n);
    require(o.n == n, ErrorKind::WidthMismatch, "observable width differs from the input");
    const int m = static_cast<int>(stages.size());
    require(options.split <= m, ErrorKind::Domain, "split exceeds the number of stages");

    // CT prefixes, as long as they stay tractable.
    std::vector<CtState> prefix{input};
    std::vector<std::string> ct_rules;
    std::string ct_stop;
    for (int i = 0; i < m; ++i) {
        CtStep step = apply_ct_stage(prefix.back(), stages[static_cast<size_t>(i)], i == 0);
        if (!step.state) {
            ct_stop = stage_name(stages, static_cast<size_t>(i)) + ": " + step.reason;
            break;
        }
        prefix.push_back(*step.state);
        ct_rules.push_back("CT " + stage_name(stages, static_cast<size_t>(i)) + ": " + step.rule);
    }
    const int longest = static_cast<int>(prefix.size()) - 1;
    if (options.split >= 0)
        require(options.split <= longest, ErrorKind::OutOfClass,
                "requested split " + std::to_string(options.split) + " is not CT: " + ct_stop);

    std::vector<std::string> failures;
    if (!ct_stop.empty()) failures.push_back(ct_stop);
    const int hi = options.split >= 0 ? options.split : longest;
    const int lo = options.split >= 0 ? options.split : 0;
    for (int t = hi; t >= lo; --t) {
        Observable obs{o, std::nullopt, o.coefficient_one_norm(), options.max_pauli_terms};
        std::vector<std::string> ecs_rules;
        bool ok = true;
        for (int i = m - 1; i >= t; --i) {
            EcsStep step = apply_ecs_stage(obs, stages[static_cast<size_t>(i)], n, options);
            if (!step.ok) {
                failures.push_back("split " + std::to_string(t) + ", " + stage_name(stages, static_cast<size_t>(i)) +
                                   ": " + step.reason);
                ok = false;
                break;
            }
            ecs_rules.push_back("ECS " + stage_name(stages, static_cast<size_t>(i)) + ": " + step.rule);
        }
        if (!ok) continue;
        EcsOperator op;
        try {
            op = obs.as_operator();
        } catch (const Error &e) {
            failures.push_back("split " + std::to_string(t) + ": " + e.what());
            continue;
        }
        op.norm_bound = std::min(op.norm_bound, obs.norm);
        CircuitPlan plan{prefix[static_cast<size_t>(t)], op, Frame::Computational, {}, real_coefficients(o)};
        plan.notes.assign(ct_rules.begin(), ct_rules.begin() + t);
        std::reverse(ecs_rules.begin(), ecs_rules.end());
        plan.notes.insert(plan.notes.end(), ecs_rules.begin(), ecs_rules.end());
        plan.notes.push_back("split after " + std::to_string(t) + " of " + std::to_string(m) + " stages");
        if (split_out != nullptr) *split_out = t;
        return plan;
    }
    std::string msg = "no catalog rule covers the circuit";
    for (const auto &f : failures) msg += "; " + f;
    fail(ErrorKind::OutOfClass, msg);
}

SimulationResult simulate_composed(const CtState &input, const std::vector<Stage> &stages,
                                   const ErrorBudget &budget, const RandomStream &stream,
                                   const ComposedOptions &options) {
    int split = -1;
    CircuitPlan plan = plan_composed(input, stages, options, &split);
    SimulationResult r = simulate_theorem1(plan, budget, stream);
    r.split = split;
    return r;
}

CircuitPlan plan_cnot_expx(const Circuit &circuit, const CtState &input, int qubit) {
    const int n = input.n();
    require(input.frame() == Frame::Computational, ErrorKind::Precondition, "input must be in the computational frame");
    require(qubit >= 0 && qubit < n, ErrorKind::Domain, "measured qubit out of range");
    Circuit m;
    for (const Gate &g : circuit) {
        validate_gate(g, n);
        if (g.kind == GateKind::CNOT) {
            m.push_back(Gate::two(GateKind::CNOT, g.targets[1], g.targets[0]));
        } else if (g.kind == GateKind::ExpX) {
            m.push_back(Gate::single(GateKind::ExpZ, g.targets[0], g.param));
        } else {
            fail(ErrorKind::OutOfClass, std::string("gate ") + gate_name(g.kind) + " is not CNOT or ExpX");
        }
    }
    EcsOperator mop = basis_preserving_op(n, m);
    EcsOperator x = pauli_sum_op(PauliSum::single(PauliString::single(n, qubit, 'X')));
    EcsOperator obs = hadamard_frame(compose_sequence({mop, x, adjoint(mop)}));
    CircuitPlan plan{rotate_to_pm_basis(input), obs, Frame::PlusMinus, {}, true};
    plan.notes.push_back("CNOT and ExpX circuit rewritten in the plus/minus frame as a CNOT and ExpZ circuit");
    plan.notes.push_back("observable M^dagger X M with M basis-preserving");
    return plan;
}

SimulationResult simulate_cnot_expx(const Circuit &circuit, const CtState &input, const ErrorBudget &budget,
                                    const RandomStream &stream, int qubit) {
    return simulate_theorem1(plan_cnot_expx(circuit, input, qubit), budget, stream);
}

SimulationResult simulate_dj_class(const Circuit &v1, const EcsOperator &v2, const Circuit &v3, int k,
                                   const ErrorBudget &budget, const RandomStream &stream,
                                   const EstimatorOptions &options) {
    const int n = v2.n;
    require(k >= 1 && k <= n, ErrorKind::Domain, "k must lie in [1, n]");
    auto m1 = per_qubit_matrices(v1, n);
    auto m3 = per_qubit_matrices(v3, n);
    std::vector<Factor> f(static_cast<size_t>(n));
    for (int q = 0; q < n; ++q) f[static_cast<size_t>(q)] = apply2(m1[static_cast<size_t>(q)], Factor{1.0, 0.0});
    CtState psi = product_state(f);
    // V3^dagger |0> on each measured qubit.
    std::vector<Factor> g(static_cast<size_t>(k));
    for (int q = 0; q < k; ++q) {
        const Matrix2 &u = m3[static_cast<size_t>(q)];
        g[static_cast<size_t>(q)] = {std::conj(u[0]), std::conj(u[1])};
    }
    CtState gamma = product_state(g);
    ErrorBudget b = budget;
    b.kind = ValueKind::Real;
    SimulationResult r;
    r.report = estimate_partial_projected(psi, adjoint(v2), gamma, gamma, v2, psi, b, stream, options);
    r.notes.push_back("four-round structure: O = |gamma><gamma| (x) I on the first " + std::to_string(k) + " qubits");
    return r;
}

}  // namespace wsim
