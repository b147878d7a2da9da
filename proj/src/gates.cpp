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


#include "wsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "wsim/errors.hpp"

namespace wsim {

namespace {

inline std::uint64_t qmask(int n, int q) { return std::uint64_t{1} << (n - 1 - q); }
inline bool qbit(int n, std::uint64_t w, int q) { return (w >> (n - 1 - q)) & 1u; }

int expected_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CPhase:
        case GateKind::Matchgate: return 2;
        case GateKind::Toffoli: return 3;
        case GateKind::Unitary:
        case GateKind::QFT:
        case GateKind::Oracle: return -1;
        default: return 1;
    }
}

}  // namespace

Gate Gate::matchgate(int q, const Mat2 &a, const Mat2 &b) {
    Gate g{GateKind::Matchgate, {q, q + 1}};
    g.a = a;
    g.b = b;
    return g;
}

Gate Gate::unitary(std::vector<int> targets, std::vector<Amplitude> matrix) {
    Gate g{GateKind::Unitary, std::move(targets)};
    g.matrix = std::move(matrix);
    return g;
}

Gate Gate::oracle_gate(std::vector<int> targets, std::shared_ptr<const BooleanFunction> f) {
    Gate g{GateKind::Oracle, std::move(targets)};
    g.oracle = std::move(f);
    return g;
}

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::S: return "PHASE";
        case GateKind::Sdg: return "SDG";
        case GateKind::Phase: return "P";
        case GateKind::ExpX: return "EXPX";
        case GateKind::ExpZ: return "EXPZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::CPhase: return "CPHASE";
        case GateKind::Toffoli: return "TOFFOLI";
        case GateKind::Matchgate: return "matchgate";
        case GateKind::Unitary: return "unitary";
        case GateKind::QFT: return "QFT";
        case GateKind::Oracle: return "oracle";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
    static const std::pair<const char *, GateKind> table[] = {
        {"H", GateKind::H},           {"X", GateKind::X},           {"Y", GateKind::Y},
        {"Z", GateKind::Z},           {"S", GateKind::S},           {"PHASE", GateKind::S},
        {"SDG", GateKind::Sdg},       {"P", GateKind::Phase},       {"RPHASE", GateKind::Phase},
        {"EXPX", GateKind::ExpX},     {"EXPZ", GateKind::ExpZ},     {"CNOT", GateKind::CNOT},
        {"CX", GateKind::CNOT},       {"CZ", GateKind::CZ},         {"CPHASE", GateKind::CPhase},
        {"TOFFOLI", GateKind::Toffoli}, {"CCX", GateKind::Toffoli}, {"matchgate", GateKind::Matchgate},
        {"MATCHGATE", GateKind::Matchgate}, {"unitary", GateKind::Unitary}, {"UNITARY", GateKind::Unitary},
        {"QFT", GateKind::QFT},       {"oracle", GateKind::Oracle}, {"ORACLE", GateKind::Oracle},
    };
    for (const auto &[text, kind] : table) {
        if (name == text) return kind;
    }
    fail(ErrorKind::Parse, "unknown gate name '" + name + "'");
}

bool is_basis_preserving(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::Phase:
        case GateKind::ExpZ:
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::CPhase:
        case GateKind::Toffoli:
        case GateKind::Oracle: return true;
        default: return false;
    }
}

bool is_clifford(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::CNOT:
        case GateKind::CZ: return true;
        default: return false;
    }
}

std::vector<Amplitude> gate_matrix(const Gate &gate) {
    using namespace std::complex_literals;
    const double r = 1.0 / std::numbers::sqrt2;
    const double t = gate.param;
    switch (gate.kind) {
        case GateKind::H: return {r, r, r, -r};
        case GateKind::X: return {0, 1, 1, 0};
        case GateKind::Y: return {0, -1i, 1i, 0};
        case GateKind::Z: return {1, 0, 0, -1};
        case GateKind::S: return {1, 0, 0, 1i};
        case GateKind::Sdg: return {1, 0, 0, -1i};
        case GateKind::Phase: return {1, 0, 0, std::polar(1.0, t)};
        case GateKind::ExpX: return {std::cos(t), 1i * std::sin(t), 1i * std::sin(t), std::cos(t)};
        case GateKind::ExpZ: return {std::polar(1.0, t), 0, 0, std::polar(1.0, -t)};
        case GateKind::CNOT: return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};
        case GateKind::CZ: return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
        case GateKind::CPhase:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, std::polar(1.0, t)};
        case GateKind::Toffoli: {
            std::vector<Amplitude> m(64, 0.0);
            for (int i = 0; i < 6; ++i) m[i * 8 + i] = 1;
            m[6 * 8 + 7] = 1;
            m[7 * 8 + 6] = 1;
            return m;
        }
        case GateKind::Matchgate: {
            // |00>,|01>,|10>,|11>: A on {00, 11}, B on {01, 10}.
            const Mat2 &a = gate.a, &b = gate.b;
            return {a[0], 0, 0, a[1], 0, b[0], b[1], 0, 0, b[2], b[3], 0, a[2], 0, 0, a[3]};
        }
        case GateKind::Unitary: return gate.matrix;
        case GateKind::QFT:
        case GateKind::Oracle: break;
    }
    fail(ErrorKind::Precondition, std::string("gate ") + gate_name(gate.kind) + " has no local matrix");
}

double unitarity_defect(const std::vector<Amplitude> &m, int dim) {
    double worst = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            Amplitude acc{};
            for (int k = 0; k < dim; ++k) acc += m[i * dim + k] * std::conj(m[j * dim + k]);
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

void validate_gate(const Gate &gate, int n) {
    const std::string name = gate_name(gate.kind);
    int arity = expected_arity(gate.kind);
    require(!gate.targets.empty(), ErrorKind::Precondition, name + " gate without targets");
    if (arity > 0) {
        require(static_cast<int>(gate.targets.size()) == arity, ErrorKind::Precondition,
                name + " gate expects " + std::to_string(arity) + " targets");
    }
    std::set<int> seen;
    for (int q : gate.targets) {
        require(q >= 0 && q < n, ErrorKind::Precondition,
                name + " target " + std::to_string(q) + " outside register of " + std::to_string(n));
        require(seen.insert(q).second, ErrorKind::Precondition, name + " gate repeats a target");
    }
    if (gate.kind == GateKind::Matchgate) {
        require(gate.targets[1] == gate.targets[0] + 1, ErrorKind::Precondition,
                "matchgate must act on nearest neighbours (i, i+1)");
    }
    if (gate.kind == GateKind::Unitary) {
        size_t dim = size_t{1} << gate.targets.size();
        require(gate.matrix.size() == dim * dim, ErrorKind::Precondition, "unitary gate matrix has wrong size");
    }
    if (gate.kind == GateKind::Oracle) {
        require(gate.oracle && gate.oracle->eval, ErrorKind::Precondition, "oracle gate without function");
        require(gate.oracle->arity == static_cast<int>(gate.targets.size()) - 1, ErrorKind::Precondition,
                "oracle arity must equal the number of input targets");
    }
}

std::uint64_t apply_basis_gate(const Gate &gate, int n, std::uint64_t w, Amplitude &phase) {
    using namespace std::complex_literals;
    const auto &t = gate.targets;
    switch (gate.kind) {
        case GateKind::X: return w ^ qmask(n, t[0]);
        case GateKind::Y:
            phase *= qbit(n, w, t[0]) ? Amplitude(-1i) : Amplitude(1i);
            return w ^ qmask(n, t[0]);
        case GateKind::Z:
            if (qbit(n, w, t[0])) phase = -phase;
            return w;
        case GateKind::S:
            if (qbit(n, w, t[0])) phase *= 1i;
            return w;
        case GateKind::Sdg:
            if (qbit(n, w, t[0])) phase *= -1i;
            return w;
        case GateKind::Phase:
            if (qbit(n, w, t[0])) phase *= std::polar(1.0, gate.param);
            return w;
        case GateKind::ExpZ:
            phase *= std::polar(1.0, qbit(n, w, t[0]) ? -gate.param : gate.param);
            return w;
        case GateKind::CNOT: return qbit(n, w, t[0]) ? (w ^ qmask(n, t[1])) : w;
        case GateKind::CZ:
            if (qbit(n, w, t[0]) && qbit(n, w, t[1])) phase = -phase;
            return w;
        case GateKind::CPhase:
            if (qbit(n, w, t[0]) && qbit(n, w, t[1])) phase *= std::polar(1.0, gate.param);
            return w;
        case GateKind::Toffoli: return (qbit(n, w, t[0]) && qbit(n, w, t[1])) ? (w ^ qmask(n, t[2])) : w;
        case GateKind::Oracle: {
            std::uint64_t in = 0;
            for (size_t k = 0; k + 1 < t.size(); ++k) in = (in << 1) | static_cast<std::uint64_t>(qbit(n, w, t[k]));
            return gate.oracle->eval(in) ? (w ^ qmask(n, t.back())) : w;
        }
        default: break;
    }
    fail(ErrorKind::Precondition, std::string("gate ") + gate_name(gate.kind) + " is not basis-preserving");
}

std::uint64_t apply_basis_gate_inverse(const Gate &gate, int n, std::uint64_t w) {
    // Every supported permutation is an involution; diagonal gates fix w.
    Amplitude unused{1.0};
    return apply_basis_gate(gate, n, w, unused);
}

}  // namespace wsim
