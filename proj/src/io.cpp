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


#include "wsim/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wsim/errors.hpp"

namespace wsim::io {

namespace {

[[noreturn]] void bad(const std::string &path, const std::string &what) {
    fail(ErrorKind::Parse, (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json &field(const Json &j, const char *key, const std::string &path) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string sub(const std::string &path, const std::string &key) { return path + "/" + key; }
std::string sub(const std::string &path, std::size_t i) { return path + "/" + std::to_string(i); }

void only_keys(const Json &j, std::initializer_list<const char *> keys, const std::string &path) {
    if (!j.is_object()) bad(path, "expected an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) bad(path, "unknown field \"" + it.key() + "\"");
}

double number(const Json &j, const std::string &path) {
    if (!j.is_number()) bad(path, "expected a number");
    double v = j.get<double>();
    if (!std::isfinite(v)) bad(path, "number is not finite");
    return v;
}

long long integer(const Json &j, const std::string &path) {
    if (!j.is_number_integer()) bad(path, "expected an integer");
    return j.get<long long>();
}

std::string text(const Json &j, const std::string &path) {
    if (!j.is_string()) bad(path, "expected a string");
    return j.get<std::string>();
}

const Json &array(const Json &j, const std::string &path) {
    if (!j.is_array()) bad(path, "expected an array");
    return j;
}

/// A number or [re, im].
Amplitude complex_value(const Json &j, const std::string &path) {
    if (j.is_number()) return {number(j, path), 0.0};
    if (!j.is_array() || j.size() != 2) bad(path, "expected a number or [re, im]");
    return {number(j[0], sub(path, 0)), number(j[1], sub(path, 1))};
}

Json complex_matrix_json(const Json &j, std::size_t rows, std::size_t cols, const std::string &path) {
    array(j, path);
    if (rows && j.size() != rows) bad(path, "expected " + std::to_string(rows) + " rows");
    Json out = Json::array();
    std::size_t width = cols;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const Json &row = array(j[r], sub(path, r));
        if (width == 0) width = row.size();
        if (row.size() != width || width == 0) bad(sub(path, r), "ragged or empty matrix row");
        Json o = Json::array();
        for (std::size_t c = 0; c < row.size(); ++c) o.push_back(complex_json(complex_value(row[c], sub(sub(path, r), c))));
        out.push_back(o);
    }
    return out;
}

std::vector<Amplitude> flat_matrix(const Json &j) {
    std::vector<Amplitude> out;
    for (const Json &row : j)
        for (const Json &z : row) out.emplace_back(z[0].get<double>(), z[1].get<double>());
    return out;
}

Mat2 mat2(const Json &j) {
    auto v = flat_matrix(j);
    return {v[0], v[1], v[2], v[3]};
}

Eigen::MatrixXcd eigen_matrix(const Json &j) {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const Json &z = j[static_cast<size_t>(r)][static_cast<size_t>(c)];
            m(r, c) = {z[0].get<double>(), z[1].get<double>()};
        }
    return m;
}

Json qubit_list(const Json &j, int n, const std::string &path) {
    array(j, path);
    Json out = Json::array();
    std::set<long long> seen;
    for (std::size_t i = 0; i < j.size(); ++i) {
        long long q = integer(j[i], sub(path, i));
        if (q < 0 || q >= n) bad(sub(path, i), "qubit " + std::to_string(q) + " outside [0, " + std::to_string(n) + ")");
        if (!seen.insert(q).second) bad(sub(path, i), "repeated qubit " + std::to_string(q));
        out.push_back(q);
    }
    return out;
}

int width_field(const Json &j, const std::string &path) {
    long long n = integer(field(j, "n", path), sub(path, "n"));
    if (n < 1 || n > kMaxQubits) bad(sub(path, "n"), "width must lie in [1, 64]");
    return static_cast<int>(n);
}

Json factor_list(const Json &j, const std::string &path) {
    array(j, path);
    if (j.empty()) bad(path, "need at least one factor");
    Json out = Json::array();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json &f = j[i];
        if (!f.is_array() || f.size() != 2) bad(sub(path, i), "a factor is [<0|psi>, <1|psi>]");
        Amplitude a = complex_value(f[0], sub(sub(path, i), 0)), b = complex_value(f[1], sub(sub(path, i), 1));
        if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-9) bad(sub(path, i), "factor is not normalized");
        out.push_back(Json::array({complex_json(a), complex_json(b)}));
    }
    return out;
}

std::vector<Factor> factors_of(const Json &j) {
    std::vector<Factor> out;
    for (const Json &f : j) out.push_back({Amplitude(f[0][0].get<double>(), f[0][1].get<double>()),
                                           Amplitude(f[1][0].get<double>(), f[1][1].get<double>())});
    return out;
}

std::string frame_text(const Json &j, const std::string &path) {
    if (!j.contains("frame")) return "computational";
    std::string f = text(j["frame"], sub(path, "frame"));
    if (f != "computational" && f != "pm") bad(sub(path, "frame"), "frame is \"computational\" or \"pm\"");
    return f;
}

Json mps_sites(const Json &j, const std::string &path) {
    array(j, path);
    if (j.empty()) bad(path, "need at least one site");
    Json out = Json::array();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json &site = j[i];
        if (!site.is_array() || site.size() != 2) bad(sub(path, i), "a site is [A0, A1]");
        Json a0 = complex_matrix_json(site[0], 0, 0, sub(sub(path, i), 0));
        Json a1 = complex_matrix_json(site[1], a0.size(), a0[0].size(), sub(sub(path, i), 1));
        out.push_back(Json::array({a0, a1}));
    }
    return out;
}

}  // namespace

Json complex_json(Amplitude z) { return Json::array({z.real(), z.imag()}); }

Json parse_json(const std::string &content, const std::string &origin) {
    try {
        return Json::parse(content);
    } catch (const nlohmann::json::parse_error &e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < content.size(); ++i) {
            if (content[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        fail(ErrorKind::Parse, origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
}

Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::Parse, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

// ---- circuits -------------------------------------------------------------------

Json normalize_circuit(const Json &j, int n, const std::string &path) {
    array(j, path);
    Json out = Json::array();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = sub(path, i);
        const Json &g = j[i];
        const std::string name = text(field(g, "gate", p), sub(p, "gate"));
        GateKind kind;
        try {
            kind = gate_kind_from_name(name);
        } catch (const Error &) {
            bad(sub(p, "gate"), "unknown gate \"" + name + "\"");
        }
        Json o;
        o["gate"] = gate_name(kind);
        o["targets"] = qubit_list(field(g, "targets", p), n, sub(p, "targets"));
        switch (kind) {
            case GateKind::Phase:
            case GateKind::ExpX:
            case GateKind::ExpZ:
            case GateKind::CPhase:
                only_keys(g, {"gate", "targets", "param"}, p);
                o["param"] = number(field(g, "param", p), sub(p, "param"));
                break;
            case GateKind::Matchgate:
                only_keys(g, {"gate", "targets", "A", "B"}, p);
                o["A"] = complex_matrix_json(field(g, "A", p), 2, 2, sub(p, "A"));
                o["B"] = complex_matrix_json(field(g, "B", p), 2, 2, sub(p, "B"));
                break;
            case GateKind::Unitary: {
                only_keys(g, {"gate", "targets", "matrix"}, p);
                const std::size_t dim = std::size_t{1} << o["targets"].size();
                o["matrix"] = complex_matrix_json(field(g, "matrix", p), dim, dim, sub(p, "matrix"));
                break;
            }
            case GateKind::Oracle: {
                only_keys(g, {"gate", "targets", "oracle"}, p);
                const std::string spec = text(field(g, "oracle", p), sub(p, "oracle"));
                BooleanOracle f = make_oracle(spec);
                if (static_cast<std::size_t>(f.m()) + 1 != o["targets"].size())
                    bad(sub(p, "targets"), "oracle on " + std::to_string(f.m()) + " bits needs " +
                                               std::to_string(f.m() + 1) + " targets");
                o["oracle"] = spec;
                break;
            }
            default:
                only_keys(g, {"gate", "targets"}, p);
        }
        try {
            Gate built = build_circuit(Json::array({o})).front();
            validate_gate(built, n);
        } catch (const Error &e) {
            bad(p, e.what());
        }
        out.push_back(o);
    }
    return out;
}

Circuit build_circuit(const Json &gates) {
    Circuit c;
    for (const Json &g : gates) {
        GateKind kind = gate_kind_from_name(g["gate"].get<std::string>());
        std::vector<int> targets = g["targets"].get<std::vector<int>>();
        switch (kind) {
            case GateKind::Matchgate:
                c.push_back(Gate::matchgate(targets.at(0), mat2(g["A"]), mat2(g["B"])));
                break;
            case GateKind::Unitary:
                c.push_back(Gate::unitary(targets, flat_matrix(g["matrix"])));
                break;
            case GateKind::Oracle:
                c.push_back(Gate::oracle_gate(targets, make_oracle(g["oracle"].get<std::string>()).as_function()));
                break;
            default: {
                Gate gate{kind, targets, g.contains("param") ? g["param"].get<double>() : 0.0};
                c.push_back(gate);
            }
        }
    }
    return c;
}

// ---- states ---------------------------------------------------------------------

Json normalize_state(const Json &j, const std::string &path) {
    const std::string kind = text(field(j, "kind", path), sub(path, "kind"));
    Json o;
    o["kind"] = kind;
    if (kind == "basis") {
        only_keys(j, {"kind", "bits", "frame"}, path);
        const std::string bits = text(field(j, "bits", path), sub(path, "bits"));
        try {
            BitString::parse(bits);
        } catch (const Error &e) {
            bad(sub(path, "bits"), e.what());
        }
        o["bits"] = bits;
    } else if (kind == "product" || kind == "qft_product") {
        only_keys(j, {"kind", "factors", "frame"}, path);
        o["factors"] = factor_list(field(j, "factors", path), sub(path, "factors"));
    } else if (kind == "phase") {
        only_keys(j, {"kind", "n", "terms", "frame"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        Json terms = Json::array();
        const Json &t = array(field(j, "terms", path), sub(path, "terms"));
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string p = sub(sub(path, "terms"), i);
            only_keys(t[i], {"qubits", "theta"}, p);
            terms.push_back({{"qubits", qubit_list(field(t[i], "qubits", p), n, sub(p, "qubits"))},
                             {"theta", number(field(t[i], "theta", p), sub(p, "theta"))}});
        }
        o["terms"] = terms;
    } else if (kind == "stabilizer") {
        only_keys(j, {"kind", "n", "gates", "frame"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        o["gates"] = normalize_circuit(field(j, "gates", path), n, sub(path, "gates"));
        for (std::size_t i = 0; i < o["gates"].size(); ++i)
            if (!is_clifford(gate_kind_from_name(o["gates"][i]["gate"].get<std::string>())))
                bad(sub(sub(path, "gates"), i), "stabilizer preparation admits Clifford gates only");
    } else if (kind == "mps") {
        only_keys(j, {"kind", "sites", "frame"}, path);
        o["sites"] = mps_sites(field(j, "sites", path), sub(path, "sites"));
    } else {
        bad(sub(path, "kind"), "unknown state kind \"" + kind + "\"");
    }
    o["frame"] = frame_text(j, path);
    try {
        build_state(o);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Parse) throw;
        bad(path, e.what());
    }
    return o;
}

CtState build_state(const Json &s) {
    const std::string kind = s["kind"].get<std::string>();
    CtState out;
    if (kind == "basis") {
        out = basis_state(BitString::parse(s["bits"].get<std::string>()));
    } else if (kind == "product") {
        out = product_state(factors_of(s["factors"]));
    } else if (kind == "qft_product") {
        out = qft_product_state(factors_of(s["factors"]));
    } else if (kind == "phase") {
        std::vector<std::pair<std::uint64_t, double>> terms;
        const int n = s["n"].get<int>();
        for (const Json &t : s["terms"]) {
            std::uint64_t mask = 0;
            for (const Json &q : t["qubits"]) mask |= std::uint64_t{1} << (n - 1 - q.get<int>());
            terms.emplace_back(mask, t["theta"].get<double>());
        }
        out = phase_state(n, [terms](const BitString &x) {
            double theta = 0;
            for (const auto &[mask, th] : terms)
                if ((x.word() & mask) == mask) theta += th;
            return theta;
        });
    } else if (kind == "stabilizer") {
        out = stabilizer_state(s["n"].get<int>(), build_circuit(s["gates"]));
    } else {
        out = mps_state(build_mps(s["sites"]));
    }
    if (s.value("frame", "computational") == "pm") out = out.with_frame(Frame::PlusMinus);
    return out;
}

MpsDescription build_mps(const Json &sites) {
    MpsDescription d;
    for (const Json &s : sites) d.sites.push_back({eigen_matrix(s[0]), eigen_matrix(s[1])});
    return d;
}

// ---- operators ------------------------------------------------------------------

Json normalize_operator(const Json &j, const std::string &path) {
    const std::string kind = text(field(j, "kind", path), sub(path, "kind"));
    Json o;
    o["kind"] = kind;
    if (kind == "identity") {
        only_keys(j, {"kind", "n"}, path);
        o["n"] = width_field(j, path);
    } else if (kind == "pauli_sum") {
        only_keys(j, {"kind", "n", "terms"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        Json terms = Json::array();
        const Json &t = array(field(j, "terms", path), sub(path, "terms"));
        for (std::size_t i = 0; i < t.size(); ++i) {
            const std::string p = sub(sub(path, "terms"), i);
            only_keys(t[i], {"coeff", "pauli"}, p);
            const std::string letters = text(field(t[i], "pauli", p), sub(p, "pauli"));
            if (static_cast<int>(letters.size()) != n) bad(sub(p, "pauli"), "Pauli string width differs from n");
            try {
                PauliString::parse(letters);
            } catch (const Error &e) {
                bad(sub(p, "pauli"), e.what());
            }
            terms.push_back({{"coeff", complex_json(complex_value(field(t[i], "coeff", p), sub(p, "coeff")))},
                             {"pauli", letters}});
        }
        o["terms"] = terms;
    } else if (kind == "basis_preserving") {
        only_keys(j, {"kind", "n", "gates"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        o["gates"] = normalize_circuit(field(j, "gates", path), n, sub(path, "gates"));
        for (std::size_t i = 0; i < o["gates"].size(); ++i)
            if (!is_basis_preserving(gate_kind_from_name(o["gates"][i]["gate"].get<std::string>())))
                bad(sub(sub(path, "gates"), i), "gate is not basis-preserving");
    } else if (kind == "local_gate") {
        only_keys(j, {"kind", "n", "targets", "matrix"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        o["targets"] = qubit_list(field(j, "targets", path), n, sub(path, "targets"));
        const std::size_t dim = std::size_t{1} << o["targets"].size();
        o["matrix"] = complex_matrix_json(field(j, "matrix", path), dim, dim, sub(path, "matrix"));
    } else if (kind == "composition") {
        only_keys(j, {"kind", "factors"}, path);
        const Json &f = array(field(j, "factors", path), sub(path, "factors"));
        if (f.empty()) bad(sub(path, "factors"), "need at least one factor");
        Json factors = Json::array();
        for (std::size_t i = 0; i < f.size(); ++i) factors.push_back(normalize_operator(f[i], sub(sub(path, "factors"), i)));
        o["factors"] = factors;
    } else {
        bad(sub(path, "kind"), "unknown operator kind \"" + kind + "\"");
    }
    try {
        build_operator(o);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::Parse) throw;
        bad(path, e.what());
    }
    return o;
}

PauliSum build_pauli_sum(const Json &op) {
    require(op["kind"] == "pauli_sum", ErrorKind::Parse, "observable must be a pauli_sum operator");
    PauliSum s{op["n"].get<int>(), {}};
    for (const Json &t : op["terms"])
        s.terms.push_back({Amplitude(t["coeff"][0].get<double>(), t["coeff"][1].get<double>()),
                           PauliString::parse(t["pauli"].get<std::string>())});
    return s;
}

EcsOperator build_operator(const Json &op) {
    const std::string kind = op["kind"].get<std::string>();
    if (kind == "identity") return identity_op(op["n"].get<int>());
    if (kind == "pauli_sum") return pauli_sum_op(build_pauli_sum(op));
    if (kind == "basis_preserving") return basis_preserving_op(op["n"].get<int>(), build_circuit(op["gates"]));
    if (kind == "local_gate")
        return local_gate_op(flat_matrix(op["matrix"]), op["targets"].get<std::vector<int>>(), op["n"].get<int>());
    // Listed as a product A_1 A_2 ... A_k.
    EcsOperator acc = build_operator(op["factors"][0]);
    for (std::size_t i = 1; i < op["factors"].size(); ++i) acc = compose(acc, build_operator(op["factors"][i]));
    return acc;
}

int recipe_width(const Json &r) {
    if (r.contains("n")) return r["n"].get<int>();
    if (r.contains("bits")) return static_cast<int>(r["bits"].get<std::string>().size());
    if (r.contains("factors") && r["kind"] != "composition") return static_cast<int>(r["factors"].size());
    if (r.contains("sites")) return static_cast<int>(r["sites"].size());
    if (r.contains("factors")) return recipe_width(r["factors"][0]);
    fail(ErrorKind::Parse, "recipe has no width");
}

// ---- plans ----------------------------------------------------------------------

namespace {

Json int_list(const Json &j, int n, const std::string &path) { return qubit_list(j, n, path); }

Json pauli_observable(const Json &j, int n, const std::string &path) {
    Json o = normalize_operator(j, path);
    if (o["kind"] != "pauli_sum") bad(path, "observable must be a pauli_sum operator");
    if (o["n"].get<int>() != n) bad(sub(path, "n"), "observable width differs from the input state");
    return o;
}

void same_width(const Json &recipe, int n, const std::string &path) {
    if (recipe_width(recipe) != n) bad(path, "width " + std::to_string(recipe_width(recipe)) + " differs from " + std::to_string(n));
}

}  // namespace

Json normalize_plan(const Json &j, const std::string &path) {
    const std::string driver = text(field(j, "driver", path), sub(path, "driver"));
    Json o;
    o["driver"] = driver;
    if (driver == "theorem1") {
        only_keys(j, {"driver", "input", "observable", "frame"}, path);
        o["input"] = normalize_state(field(j, "input", path), sub(path, "input"));
        const int n = recipe_width(o["input"]);
        o["observable"] = normalize_operator(field(j, "observable", path), sub(path, "observable"));
        same_width(o["observable"], n, sub(path, "observable"));
        o["frame"] = frame_text(j, path);
    } else if (driver == "sparse") {
        only_keys(j, {"driver", "input", "ops", "observable", "sparseness_budget"}, path);
        o["input"] = normalize_state(field(j, "input", path), sub(path, "input"));
        const int n = recipe_width(o["input"]);
        Json ops = Json::array();
        const Json &list = array(field(j, "ops", path), sub(path, "ops"));
        for (std::size_t i = 0; i < list.size(); ++i) {
            ops.push_back(normalize_operator(list[i], sub(sub(path, "ops"), i)));
            same_width(ops.back(), n, sub(sub(path, "ops"), i));
        }
        o["ops"] = ops;
        if (j.contains("observable")) o["observable"] = pauli_observable(j["observable"], n, sub(path, "observable"));
        o["sparseness_budget"] = j.contains("sparseness_budget")
                                     ? integer(j["sparseness_budget"], sub(path, "sparseness_budget"))
                                     : static_cast<long long>(kDefaultSparsenessBudget);
    } else if (driver == "composed") {
        only_keys(j, {"driver", "input", "stages", "observable", "split", "sparseness_budget", "max_pauli_terms"}, path);
        o["input"] = normalize_state(field(j, "input", path), sub(path, "input"));
        const int n = recipe_width(o["input"]);
        Json stages = Json::array();
        const Json &list = array(field(j, "stages", path), sub(path, "stages"));
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string p = sub(sub(path, "stages"), i);
            only_keys(list[i], {"label", "gates", "ecs", "mps"}, p);
            Json st;
            st["label"] = list[i].contains("label") ? text(list[i]["label"], sub(p, "label")) : "stage " + std::to_string(i);
            const int kinds = list[i].contains("gates") + list[i].contains("ecs") + list[i].contains("mps");
            if (kinds != 1) bad(p, "a stage has exactly one of \"gates\", \"ecs\", \"mps\"");
            if (list[i].contains("gates")) st["gates"] = normalize_circuit(list[i]["gates"], n, sub(p, "gates"));
            if (list[i].contains("ecs")) {
                st["ecs"] = normalize_operator(list[i]["ecs"], sub(p, "ecs"));
                same_width(st["ecs"], n, sub(p, "ecs"));
            }
            if (list[i].contains("mps")) {
                st["mps"] = mps_sites(list[i]["mps"], sub(p, "mps"));
                if (static_cast<int>(st["mps"].size()) != n) bad(sub(p, "mps"), "MPS width differs from the input state");
            }
            stages.push_back(st);
        }
        o["stages"] = stages;
        if (j.contains("observable")) o["observable"] = pauli_observable(j["observable"], n, sub(path, "observable"));
        o["split"] = j.contains("split") ? integer(j["split"], sub(path, "split")) : -1;
        o["sparseness_budget"] = j.contains("sparseness_budget") ? integer(j["sparseness_budget"], sub(path, "sparseness_budget")) : 4096;
        o["max_pauli_terms"] = j.contains("max_pauli_terms") ? integer(j["max_pauli_terms"], sub(path, "max_pauli_terms")) : 4096;
    } else if (driver == "cnot-expx") {
        only_keys(j, {"driver", "input", "gates", "qubit"}, path);
        o["input"] = normalize_state(field(j, "input", path), sub(path, "input"));
        const int n = recipe_width(o["input"]);
        o["gates"] = normalize_circuit(field(j, "gates", path), n, sub(path, "gates"));
        const long long q = j.contains("qubit") ? integer(j["qubit"], sub(path, "qubit")) : 0;
        if (q < 0 || q >= n) bad(sub(path, "qubit"), "qubit outside the register");
        o["qubit"] = q;
    } else if (driver == "dj") {
        only_keys(j, {"driver", "n", "v1", "v2", "v3", "k"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        o["v1"] = normalize_circuit(field(j, "v1", path), n, sub(path, "v1"));
        o["v2"] = normalize_operator(field(j, "v2", path), sub(path, "v2"));
        same_width(o["v2"], n, sub(path, "v2"));
        o["v3"] = normalize_circuit(field(j, "v3", path), n, sub(path, "v3"));
        const long long k = integer(field(j, "k", path), sub(path, "k"));
        if (k < 1 || k > n) bad(sub(path, "k"), "k must lie in [1, n]");
        o["k"] = k;
    } else if (driver == "five-round") {
        only_keys(j, {"driver", "n", "s1", "v", "s2", "measured", "oracle", "sparseness"}, path);
        const int n = width_field(j, path);
        o["n"] = n;
        o["s1"] = int_list(field(j, "s1", path), n, sub(path, "s1"));
        o["v"] = normalize_circuit(field(j, "v", path), n, sub(path, "v"));
        o["s2"] = int_list(field(j, "s2", path), n, sub(path, "s2"));
        o["measured"] = int_list(field(j, "measured", path), n, sub(path, "measured"));
        const std::string spec = text(field(j, "oracle", path), sub(path, "oracle"));
        BooleanOracle g = make_oracle(spec);
        if (static_cast<std::size_t>(g.m()) != o["measured"].size())
            bad(sub(path, "oracle"), "oracle arity differs from the number of measured qubits");
        o["oracle"] = spec;
        const long long s = integer(field(j, "sparseness", path), sub(path, "sparseness"));
        if (s < 1) bad(sub(path, "sparseness"), "sparseness hint must be positive");
        o["sparseness"] = s;
    } else {
        bad(sub(path, "driver"), "unknown driver \"" + driver + "\"");
    }
    return o;
}

Json normalize_document(const Json &j) {
    const std::string schema = text(field(j, "schema", ""), "/schema");
    if (schema != kSchemaVersion) bad("/schema", "unsupported schema \"" + schema + "\", expected \"" + kSchemaVersion + "\"");
    const std::string type = text(field(j, "type", ""), "/type");
    Json body = j;
    body.erase("schema");
    body.erase("type");
    Json out;
    if (type == "state") {
        out = normalize_state(body);
    } else if (type == "operator") {
        out = normalize_operator(body);
    } else if (type == "circuit") {
        only_keys(body, {"n", "gates"}, "");
        const int n = width_field(body, "");
        out["n"] = n;
        out["gates"] = normalize_circuit(field(body, "gates", ""), n, "/gates");
    } else if (type == "plan") {
        out = normalize_plan(body);
    } else {
        bad("/type", "unknown document type \"" + type + "\"");
    }
    Json doc;
    doc["schema"] = kSchemaVersion;
    doc["type"] = type;
    for (auto it = out.begin(); it != out.end(); ++it) doc[it.key()] = it.value();
    return doc;
}

// ---- reports --------------------------------------------------------------------

Json report_json(const EstimateReport &r) {
    Json o;
    o["value"] = complex_json(r.estimate.value);
    o["epsilon"] = r.estimate.epsilon;
    o["delta"] = r.estimate.delta;
    o["samples"] = r.estimate.samples_used;
    o["sparseness"] = r.sparseness;
    o["scale"] = r.scale;
    return o;
}

Json table_json(const FourierTable &t) {
    Json o;
    o["m"] = t.m;
    Json rows = Json::array();
    for (const FourierEntry &e : t.entries) rows.push_back({{"u", e.u.to_string()}, {"coeff", e.coeff}, {"accuracy", e.accuracy}});
    o["entries"] = rows;
    o["valid"] = t.valid;
    if (!t.note.empty()) o["note"] = t.note;
    o["residual_weight"] = t.residual_weight;
    o["queries"] = t.queries;
    o["estimates"] = t.estimates;
    return o;
}

}  // namespace wsim::io
