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


#include "wsim/ecs_ops.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }

struct LocalMap {
    int n;
    std::vector<int> targets;

    std::uint64_t extract(std::uint64_t w) const {
        std::uint64_t l = 0;
        for (int q : targets) l = (l << 1) | ((w >> (n - 1 - q)) & 1u);
        return l;
    }
    std::uint64_t insert(std::uint64_t w, std::uint64_t l) const {
        const size_t d = targets.size();
        for (size_t i = 0; i < d; ++i) {
            std::uint64_t m = qmask(n, targets[i]);
            w = ((l >> (d - 1 - i)) & 1u) ? (w | m) : (w & ~m);
        }
        return w;
    }
};

}  // namespace

void normalize_entries(EcsList &e) {
    std::sort(e.begin(), e.end(), [](const EcsEntry &a, const EcsEntry &b) { return a.index < b.index; });
    size_t out = 0;
    for (size_t i = 0; i < e.size();) {
        EcsEntry acc = e[i++];
        while (i < e.size() && e[i].index == acc.index) acc.coeff += e[i++].coeff;
        if (std::abs(acc.coeff) > kEntryTolerance) e[out++] = acc;
    }
    e.resize(out);
}

EcsOperator identity_op(int n) {
    EcsOperator op;
    op.n = n;
    op.column = [](std::uint64_t x) { return EcsList{{x, 1.0}}; };
    op.row = op.column;
    op.abs_sum_bound = 1.0;
    op.description = "identity";
    return op;
}

EcsOperator from_basis_op(const BasisPreservingOp &bp, double norm_bound) {
    EcsOperator op;
    op.n = bp.n;
    op.norm_bound = norm_bound;
    op.abs_sum_bound = 1.0;
    op.column = [bp](std::uint64_t x) { return EcsList{{bp.forward(x), bp.phase(x)}}; };
    op.row = [bp](std::uint64_t y) {
        std::uint64_t x = bp.inverse(y);
        return EcsList{{x, bp.phase(x)}};
    };
    op.description = bp.description;
    return op;
}

EcsOperator basis_preserving_op(int n, const Circuit &circuit) {
    return from_basis_op(BasisPreservingOp::from_circuit(n, circuit));
}

EcsOperator pauli_sum_op(const PauliSum &terms, double norm_bound, std::size_t max_terms) {
    require(terms.terms.size() <= max_terms, ErrorKind::Budget,
            "Pauli sum has " + std::to_string(terms.terms.size()) + " terms, above the bound " +
                std::to_string(max_terms));
    require(!terms.terms.empty(), ErrorKind::Precondition, "empty Pauli sum");
    auto t = std::make_shared<const PauliSum>(terms);
    EcsOperator op;
    op.n = terms.n;
    op.sparseness = terms.distinct_flip_masks();
    op.norm_bound = norm_bound < 0 ? terms.coefficient_one_norm() : norm_bound;
    op.abs_sum_bound = terms.coefficient_one_norm();
    op.column = [t](std::uint64_t x) {
        EcsList e;
        e.reserve(t->terms.size());
        for (const auto &term : t->terms) e.push_back({x ^ term.pauli.x, term.coeff * term.pauli.phase_on(x)});
        normalize_entries(e);
        return e;
    };
    op.row = [t](std::uint64_t y) {
        EcsList e;
        e.reserve(t->terms.size());
        for (const auto &term : t->terms) {
            std::uint64_t x = y ^ term.pauli.x;
            e.push_back({x, term.coeff * term.pauli.phase_on(x)});
        }
        normalize_entries(e);
        return e;
    };
    op.description = "Pauli sum of " + std::to_string(terms.terms.size()) + " terms";
    return op;
}

int local_gate_arity_bound(int n) {
    return static_cast<int>(std::floor(2.0 * std::log2(static_cast<double>(std::max(n, 1))))) + 2;
}

EcsOperator local_gate_op(const std::vector<Amplitude> &matrix, const std::vector<int> &targets, int n,
                          int max_arity) {
    const int d = static_cast<int>(targets.size());
    if (max_arity < 0) max_arity = local_gate_arity_bound(n);
    require(d >= 1 && d <= max_arity, ErrorKind::Precondition,
            "local gate on " + std::to_string(d) + " qubits exceeds the arity bound " + std::to_string(max_arity));
    Gate probe = Gate::unitary(targets, matrix);
    validate_gate(probe, n);
    const std::size_t dim = std::size_t{1} << d;
    require(unitarity_defect(matrix, static_cast<int>(dim)) <= 1e-10, ErrorKind::Precondition,
            "local gate is not unitary");

    auto g = std::make_shared<const std::vector<Amplitude>>(matrix);
    LocalMap map{n, targets};
    std::size_t s = 1;
    double abs_sum = 0;
    for (std::size_t c = 0; c < dim; ++c) {
        std::size_t col = 0, row = 0;
        double col_sum = 0, row_sum = 0;
        for (std::size_t r = 0; r < dim; ++r) {
            if (std::abs((*g)[r * dim + c]) > kEntryTolerance) ++col;
            if (std::abs((*g)[c * dim + r]) > kEntryTolerance) ++row;
            col_sum += std::abs((*g)[r * dim + c]);
            row_sum += std::abs((*g)[c * dim + r]);
        }
        s = std::max({s, col, row});
        abs_sum = std::max({abs_sum, col_sum, row_sum});
    }
    EcsOperator op;
    op.n = n;
    op.sparseness = s;
    op.abs_sum_bound = abs_sum;
    op.column = [g, map, dim](std::uint64_t x) {
        std::uint64_t lc = map.extract(x);
        EcsList e;
        for (std::size_t lr = 0; lr < dim; ++lr) {
            Amplitude v = (*g)[lr * dim + lc];
            if (std::abs(v) > kEntryTolerance) e.push_back({map.insert(x, lr), v});
        }
        normalize_entries(e);
        return e;
    };
    op.row = [g, map, dim](std::uint64_t y) {
        std::uint64_t lr = map.extract(y);
        EcsList e;
        for (std::size_t lc = 0; lc < dim; ++lc) {
            Amplitude v = (*g)[lr * dim + lc];
            if (std::abs(v) > kEntryTolerance) e.push_back({map.insert(y, lc), v});
        }
        normalize_entries(e);
        return e;
    };
    op.description = std::to_string(d) + "-qubit gate";
    return op;
}

EcsOperator local_gate_op(const Gate &gate, int n) {
    validate_gate(gate, n);
    if (is_basis_preserving(gate.kind)) {
        EcsOperator op = basis_preserving_op(n, {gate});
        op.description = gate_name(gate.kind);
        return op;
    }
    EcsOperator op = local_gate_op(gate_matrix(gate), gate.targets, n, static_cast<int>(gate.targets.size()));
    op.description = gate_name(gate.kind);
    return op;
}

EcsOperator compose(const EcsOperator &a, const EcsOperator &b, std::size_t budget) {
    require(a.n == b.n, ErrorKind::WidthMismatch, "composing operators of different widths");
    require(a.frame == b.frame, ErrorKind::Precondition, "composing operators in different frames");
    const double product = static_cast<double>(a.sparseness) * static_cast<double>(b.sparseness);
    require(product <= static_cast<double>(budget), ErrorKind::Budget,
            "composed sparseness " + std::to_string(a.sparseness) + " x " + std::to_string(b.sparseness) +
                " exceeds the budget of " + std::to_string(budget));
    EcsOperator op;
    op.n = a.n;
    op.sparseness = a.sparseness * b.sparseness;
    op.norm_bound = a.norm_bound * b.norm_bound;
    op.abs_sum_bound = a.abs_sum_bound * b.abs_sum_bound;
    op.frame = a.frame;
    auto ac = a.column, bc = b.column, ar = a.row, br = b.row;
    op.column = [ac, bc](std::uint64_t x) {
        EcsList e;
        for (const EcsEntry &mid : bc(x)) {
            for (const EcsEntry &out : ac(mid.index)) e.push_back({out.index, out.coeff * mid.coeff});
        }
        normalize_entries(e);
        return e;
    };
    op.row = [ar, br](std::uint64_t y) {
        EcsList e;
        for (const EcsEntry &mid : ar(y)) {
            for (const EcsEntry &in : br(mid.index)) e.push_back({in.index, mid.coeff * in.coeff});
        }
        normalize_entries(e);
        return e;
    };
    if (a.precision == Precision::PolyAccurate || b.precision == Precision::PolyAccurate) {
        op.precision = Precision::PolyAccurate;
        // |(AB)~ - AB|_entry <= s_A e_A |B|max + s_B e_B |A|max + s e_A e_B, with |.|max <= norm
        op.entry_accuracy = static_cast<double>(b.sparseness) * a.entry_accuracy * b.norm_bound +
                            static_cast<double>(a.sparseness) * b.entry_accuracy * a.norm_bound +
                            static_cast<double>(a.sparseness) * a.entry_accuracy * b.entry_accuracy;
    }
    op.description = "(" + a.description + ") * (" + b.description + ")";
    return op;
}

EcsOperator compose_sequence(const std::vector<EcsOperator> &ops, std::size_t budget) {
    require(!ops.empty(), ErrorKind::Precondition, "empty operator sequence");
    EcsOperator acc = ops.front();
    for (size_t i = 1; i < ops.size(); ++i) acc = compose(ops[i], acc, budget);
    return acc;
}

EcsOperator linear_combination(const std::vector<std::pair<Amplitude, EcsOperator>> &terms) {
    require(!terms.empty(), ErrorKind::Precondition, "empty linear combination");
    EcsOperator op;
    op.n = terms.front().second.n;
    op.frame = terms.front().second.frame;
    op.sparseness = 0;
    op.norm_bound = 0;
    op.abs_sum_bound = 0;
    std::vector<std::pair<Amplitude, EcsOperator::Enumerator>> cols, rows;
    for (const auto &[c, t] : terms) {
        require(t.n == op.n, ErrorKind::WidthMismatch, "linear combination of operators of different widths");
        require(t.frame == op.frame, ErrorKind::Precondition, "linear combination across frames");
        op.sparseness += t.sparseness;
        op.norm_bound += std::abs(c) * t.norm_bound;
        op.abs_sum_bound += std::abs(c) * t.abs_sum_bound;
        if (t.precision == Precision::PolyAccurate) {
            op.precision = Precision::PolyAccurate;
            op.entry_accuracy += std::abs(c) * t.entry_accuracy;
        }
        cols.emplace_back(c, t.column);
        rows.emplace_back(c, t.row);
    }
    auto combine = [](const std::vector<std::pair<Amplitude, EcsOperator::Enumerator>> &parts) {
        return [parts](std::uint64_t x) {
            EcsList e;
            for (const auto &[c, f] : parts) {
                for (const EcsEntry &en : f(x)) e.push_back({en.index, c * en.coeff});
            }
            normalize_entries(e);
            return e;
        };
    };
    op.column = combine(cols);
    op.row = combine(rows);
    op.description = "linear combination of " + std::to_string(terms.size()) + " operators";
    return op;
}

EcsOperator scaled(const EcsOperator &a, Amplitude c) {
    EcsOperator op = linear_combination({{c, a}});
    op.sparseness = a.sparseness;
    op.description = "scaled " + a.description;
    return op;
}

EcsOperator adjoint(const EcsOperator &a) {
    EcsOperator op = a;
    auto conj_list = [](EcsOperator::Enumerator f) {
        return [f](std::uint64_t x) {
            EcsList e = f(x);
            for (auto &en : e) en.coeff = std::conj(en.coeff);
            return e;
        };
    };
    op.column = conj_list(a.row);
    op.row = conj_list(a.column);
    op.description = "adjoint of " + a.description;
    return op;
}

EcsOperator embed(const EcsOperator &a, const std::vector<int> &qubits, int n) {
    require(static_cast<int>(qubits.size()) == a.n, ErrorKind::WidthMismatch,
            "embedding needs one register qubit per operator qubit");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (int q : qubits) {
        require(q >= 0 && q < n && !seen[static_cast<size_t>(q)], ErrorKind::Precondition,
                "embedding qubits must be distinct and inside the register");
        seen[static_cast<size_t>(q)] = true;
    }
    LocalMap map{n, qubits};
    EcsOperator op = a;
    op.n = n;
    auto lift = [map](EcsOperator::Enumerator f) {
        return [map, f](std::uint64_t x) {
            EcsList e = f(map.extract(x));
            for (auto &en : e) en.index = map.insert(x, en.index);
            normalize_entries(e);
            return e;
        };
    };
    op.column = lift(a.column);
    op.row = lift(a.row);
    op.description = a.description + " on " + std::to_string(qubits.size()) + " of " + std::to_string(n) + " qubits";
    return op;
}

EcsOperator kron_identity(int k, const EcsOperator &a) {
    std::vector<int> qubits;
    for (int q = 0; q < a.n; ++q) qubits.push_back(k + q);
    return embed(a, qubits, k + a.n);
}

EcsOperator swap_block_op(int k, int n) { return from_basis_op(BasisPreservingOp::swap_block(k, n)); }

EcsOperator hadamard_frame(const EcsOperator &a) {
    EcsOperator op = a;
    op.frame = a.frame == Frame::Computational ? Frame::PlusMinus : Frame::Computational;
    op.description = a.description + " [pm frame]";
    return op;
}

}  // namespace wsim
