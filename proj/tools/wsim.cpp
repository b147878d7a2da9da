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


// wsim: estimate, simulate, learn and demo commands over the shared JSON schema.
// Reports are one JSON object per line.

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "wsim/io.hpp"
#include "wsim/reference.hpp"
#include "wsim/sampling.hpp"

using namespace wsim;
using io::Json;

namespace {

struct Config {
    double eps = 0.05;
    double delta = 1e-3;
    std::uint64_t seed = 1;
    int workers = 0;
    bool verify = false;
    bool timing = false;
    std::string out;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse:
        case ErrorKind::WidthMismatch:
            return 2;
        case ErrorKind::OutOfClass:
            return 3;
        case ErrorKind::Verification:
            return 5;
        default:
            return 4;
    }
}

class Reporter {
   public:
    explicit Reporter(const Config &c) : config_(c), start_(std::chrono::steady_clock::now()) {
        if (!c.out.empty()) {
            file_.open(c.out);
            require(static_cast<bool>(file_), ErrorKind::Parse, "cannot write " + c.out);
        }
    }

    void emit(Json line) {
        if (config_.timing)
            line["wall_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ostream &os = file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout;
        os << line.dump() << "\n";
        os.flush();
    }

   private:
    const Config &config_;
    std::chrono::steady_clock::time_point start_;
    std::ofstream file_;
};

ErrorBudget budget_of(const Config &c) {
    ErrorBudget b;
    b.epsilon = c.eps;
    b.delta = c.delta;
    b.validate();
    return b;
}

Json load(const std::string &path, const std::string &type) {
    Json doc = io::normalize_document(io::read_json_file(path));
    require(doc["type"] == type, ErrorKind::Parse, path + ": expected a " + type + " document, got " + doc["type"].dump());
    return doc;
}

/// Adds the dense reference to `line`; deviations beyond `tolerance` are reported after emitting.
bool attach_reference(Json &line, Amplitude estimate, Amplitude dense, double tolerance) {
    line["dense"] = io::complex_json(dense);
    const double dev = std::abs(estimate - dense);
    line["deviation"] = dev;
    line["tolerance"] = tolerance;
    line["verified"] = dev <= tolerance;
    return dev <= tolerance;
}

void finish(Reporter &out, Json line, bool ok) {
    out.emit(line);
    require(ok, ErrorKind::Verification, "dense cross-check deviated by more than the tolerance");
}

void merge(Json &line, const Json &extra) {
    for (auto it = extra.begin(); it != extra.end(); ++it) line[it.key()] = it.value();
}

Json notes_json(const std::vector<std::string> &notes) {
    Json a = Json::array();
    for (const auto &n : notes) a.push_back(n);
    return a;
}

// ---- estimate -------------------------------------------------------------------

void cmd_estimate(const Config &c, const std::string &kind, const std::vector<std::string> &files) {
    Reporter out(c);
    const ErrorBudget budget = budget_of(c);
    const RandomStream stream{c.seed, 0};
    auto expect_files = [&](std::size_t count, const char *usage) {
        require(files.size() == count, ErrorKind::Parse, "estimate " + kind + " takes " + usage);
    };
    Json line;
    line["command"] = "estimate";
    line["kind"] = kind;
    EstimateReport r;
    Amplitude dense{};
    if (kind == "overlap") {
        expect_files(2, "PHI PSI");
        CtState phi = io::build_state(load(files[0], "state")), psi = io::build_state(load(files[1], "state"));
        r = estimate_overlap(phi, psi, budget, stream);
        if (c.verify) dense = dense_overlap(DenseState::from(phi), DenseState::from(psi));
    } else if (kind == "matel") {
        expect_files(3, "PHI OPERATOR PSI");
        CtState phi = io::build_state(load(files[0], "state")), psi = io::build_state(load(files[2], "state"));
        EcsOperator a = io::build_operator(load(files[1], "operator"));
        r = estimate_matrix_element(phi, a, psi, budget, stream);
        if (c.verify) dense = dense_matrix_element(DenseState::from(phi), a, DenseState::from(psi));
    } else if (kind == "observable") {
        expect_files(2, "PSI PAULI_SUM");
        CtState psi = io::build_state(load(files[0], "state"));
        PauliSum o = io::build_pauli_sum(load(files[1], "operator"));
        r = estimate_local_observable(psi, o, budget, stream);
        if (c.verify) dense = reference::expectation(DenseState::from(psi), o);
    } else if (kind == "partial") {
        expect_files(6, "PHI A XI CHI B PSI");
        CtState phi = io::build_state(load(files[0], "state")), xi = io::build_state(load(files[2], "state"));
        CtState chi = io::build_state(load(files[3], "state")), psi = io::build_state(load(files[5], "state"));
        EcsOperator a = io::build_operator(load(files[1], "operator")), b = io::build_operator(load(files[4], "operator"));
        r = estimate_partial_projected(phi, a, xi, chi, b, psi, budget, stream);
        if (c.verify) dense = reference::partial_projected(phi, a, xi, chi, b, psi);
    } else {
        fail(ErrorKind::Parse, "unknown estimate kind \"" + kind + "\" (overlap, matel, observable, partial)");
    }
    merge(line, io::report_json(r));
    bool ok = true;
    if (c.verify) ok = attach_reference(line, r.estimate.value, dense, r.estimate.epsilon);
    finish(out, line, ok);
}

// ---- simulate -------------------------------------------------------------------

std::vector<Stage> stages_of(const Json &plan) {
    std::vector<Stage> stages;
    for (const Json &s : plan["stages"]) {
        Stage st;
        st.label = s["label"].get<std::string>();
        if (s.contains("gates")) st.gates = io::build_circuit(s["gates"]);
        if (s.contains("ecs")) st.ecs = io::build_operator(s["ecs"]);
        if (s.contains("mps")) st.mps = io::build_mps(s["mps"]);
        stages.push_back(std::move(st));
    }
    return stages;
}

FiveRoundCircuit five_round_of(const Json &plan) {
    FiveRoundCircuit fr;
    fr.n = plan["n"].get<int>();
    fr.s1 = plan["s1"].get<std::vector<int>>();
    fr.v = io::build_circuit(plan["v"]);
    fr.s2 = plan["s2"].get<std::vector<int>>();
    fr.measured = plan["measured"].get<std::vector<int>>();
    return fr;
}

void cmd_simulate(const Config &c, const std::string &path, const std::string &driver_flag) {
    Json plan = load(path, "plan");
    const std::string driver = plan["driver"].get<std::string>();
    require(driver_flag.empty() || driver_flag == driver, ErrorKind::Parse,
            path + ": plan is for driver \"" + driver + "\", not \"" + driver_flag + "\"");
    Reporter out(c);
    const ErrorBudget budget = budget_of(c);
    const RandomStream stream{c.seed, 0};
    Json line;
    line["command"] = "simulate";
    line["driver"] = driver;
    SimulationResult r;
    double tolerance = c.eps;
    std::function<Amplitude()> dense;
    if (driver == "theorem1") {
        CircuitPlan p{io::build_state(plan["input"]), io::build_operator(plan["observable"]),
                      plan["frame"] == "pm" ? Frame::PlusMinus : Frame::Computational, {}, false};
        r = simulate_theorem1(p, budget, stream);
        dense = [p] { return dense_matrix_element(DenseState::from(p.input), p.observable, DenseState::from(p.input)); };
    } else if (driver == "sparse") {
        CtState input = io::build_state(plan["input"]);
        std::vector<EcsOperator> ops;
        for (const Json &o : plan["ops"]) ops.push_back(io::build_operator(o));
        SparseCircuitOptions opt;
        if (plan.contains("observable")) opt.observable = io::build_pauli_sum(plan["observable"]);
        opt.sparseness_budget = plan["sparseness_budget"].get<std::size_t>();
        r = simulate_sparse_circuit(ops, input, budget, stream, opt);
        dense = [ops, input, opt] {
            return reference::sparse_circuit(ops, input, opt.observable.value_or(z1_observable(input.n())));
        };
    } else if (driver == "composed") {
        CtState input = io::build_state(plan["input"]);
        std::vector<Stage> stages = stages_of(plan);
        ComposedOptions opt;
        if (plan.contains("observable")) opt.observable = io::build_pauli_sum(plan["observable"]);
        opt.split = plan["split"].get<int>();
        opt.sparseness_budget = plan["sparseness_budget"].get<std::size_t>();
        opt.max_pauli_terms = plan["max_pauli_terms"].get<std::size_t>();
        r = simulate_composed(input, stages, budget, stream, opt);
        line["split"] = r.split;
        dense = [input, stages, opt] {
            return reference::composed(input, stages, opt.observable.value_or(z1_observable(input.n())));
        };
    } else if (driver == "cnot-expx") {
        CtState input = io::build_state(plan["input"]);
        Circuit gates = io::build_circuit(plan["gates"]);
        const int q = plan["qubit"].get<int>();
        r = simulate_cnot_expx(gates, input, budget, stream, q);
        dense = [=] { return reference::cnot_expx(gates, input, q); };
    } else if (driver == "dj") {
        Circuit v1 = io::build_circuit(plan["v1"]), v3 = io::build_circuit(plan["v3"]);
        EcsOperator v2 = io::build_operator(plan["v2"]);
        const int k = plan["k"].get<int>();
        r = simulate_dj_class(v1, v2, v3, k, budget, stream);
        dense = [=] { return reference::dj_class(v1, v2, v3, k); };
    } else {
        FiveRoundCircuit fr = five_round_of(plan);
        BooleanOracle g = make_oracle(plan["oracle"].get<std::string>());
        FiveRoundResult f = simulate_five_round(fr, g, plan["sparseness"].get<std::size_t>(), budget, stream);
        r.report = f.report;
        r.notes.push_back("theta " + std::to_string(f.theta) + ", " + std::to_string(f.table.entries.size()) +
                          " coefficients kept");
        if (!f.table.note.empty()) r.notes.push_back(f.table.note);
        line["truncation_bound"] = f.truncation_bound;
        tolerance = 2 * c.eps;
        dense = [=] { return reference::five_round(fr, g); };
    }
    merge(line, io::report_json(r.report));
    line["notes"] = notes_json(r.notes);
    bool ok = true;
    if (c.verify) ok = attach_reference(line, r.report.estimate.value, dense(), tolerance);
    finish(out, line, ok);
}

// ---- learn ----------------------------------------------------------------------

void cmd_learn(const Config &c, const std::string &spec, double threshold, bool exhaustive, bool sampled,
               const std::string &table_path) {
    Config quiet = c;
    quiet.out.clear();
    Reporter out(quiet);
    BooleanOracle g = make_oracle(spec);
    KmOptions km;
    km.exhaustive_when_cheaper = !sampled;
    FourierTable t = km_heavy_coefficients(g, threshold, c.delta, RandomStream{c.seed, 0}, km);
    Json line;
    line["command"] = "learn";
    line["oracle"] = spec;
    line["threshold"] = threshold;
    merge(line, io::table_json(t));
    Json doc;
    doc["schema"] = io::kSchemaVersion;
    doc["type"] = "fourier_table";
    doc["oracle"] = spec;
    doc["threshold"] = threshold;
    doc["learned"] = io::table_json(t);
    if (exhaustive) {
        require(g.m() <= kExhaustiveDegreeBound, ErrorKind::Budget,
                "--exhaustive needs m <= " + std::to_string(kExhaustiveDegreeBound));
        auto spec_exact = fourier_spectrum(g);
        FourierTable exact;
        exact.m = g.m();
        bool complete = true, sound = true;
        for (std::uint64_t u = 0; u < spec_exact.size(); ++u) {
            if (std::abs(spec_exact[u]) > 1e-12) exact.entries.push_back({BitString(g.m(), u), spec_exact[u], 0.0});
            if (std::abs(spec_exact[u]) >= threshold && !t.find(BitString(g.m(), u))) complete = false;
        }
        for (const FourierEntry &e : t.entries) {
            const double truth = spec_exact[e.u.word()];
            if (std::abs(e.coeff - truth) > e.accuracy + 1e-12 || std::abs(truth) < threshold / 4) sound = false;
        }
        doc["exact"] = io::table_json(exact);
        const std::string verdict = complete && sound ? "complete and sound"
                                    : complete        ? "complete, not sound"
                                    : sound           ? "sound, not complete"
                                                      : "neither complete nor sound";
        doc["verdict"] = verdict;
        line["verdict"] = verdict;
    }
    if (!table_path.empty()) {
        std::ofstream f(table_path);
        require(static_cast<bool>(f), ErrorKind::Parse, "cannot write " + table_path);
        f << doc.dump(2) << "\n";
    }
    if (!c.out.empty() && table_path.empty()) {
        std::ofstream f(c.out);
        require(static_cast<bool>(f), ErrorKind::Parse, "cannot write " + c.out);
        f << doc.dump(2) << "\n";
    }
    out.emit(line);
}

// ---- demos ----------------------------------------------------------------------

FiveRoundCircuit simon_rounds(const BitString &a) {
    const int k = a.width();
    FiveRoundCircuit c;
    c.n = 2 * k;
    for (int q = 0; q < k; ++q) {
        c.s1.push_back(q);
        c.s2.push_back(q);
        c.measured.push_back(q);
    }
    c.v = simon_oracle_circuit(a);
    return c;
}

void demo_simon(const Config &c, Reporter &out) {
    const int k = 6;
    std::mt19937_64 rng(c.seed);
    const std::uint64_t a = 1 + rng() % ((std::uint64_t{1} << k) - 1);
    FiveRoundCircuit fr = simon_rounds(BitString(k, a));
    std::vector<std::uint64_t> cs{a, 0};
    while (cs.size() < 5) {
        std::uint64_t x = rng() & ((std::uint64_t{1} << k) - 1);
        if (x != 0 && x != a && std::find(cs.begin(), cs.end(), x) == cs.end()) cs.push_back(x);
    }
    double lowest_in = 1, highest_out = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const std::uint64_t cw = cs[i];
        BooleanOracle g = cw == 0 ? constant_oracle(k, false) : parity_oracle(BitString(k, cw));
        FiveRoundResult r = simulate_five_round(fr, g, 1, budget_of(c), RandomStream{c.seed, i});
        const double v = r.report.estimate.value.real();
        const bool in = cw == 0 || cw == a;
        if (in) lowest_in = std::min(lowest_in, v);
        else highest_out = std::max(highest_out, std::abs(v));
        Json line{{"command", "demo"}, {"demo", "simon-parity"}, {"a", BitString(k, a).to_string()},
                  {"c", BitString(k, cw).to_string()}, {"c_in_span", in}};
        merge(line, io::report_json(r.report));
        if (c.verify) attach_reference(line, v, reference::five_round(fr, g), 2 * c.eps);
        out.emit(line);
    }
    const bool separated = lowest_in >= 0.9 && highest_out <= 0.1;
    finish(out, {{"command", "demo"}, {"demo", "simon-parity"}, {"separated", separated},
                 {"lowest_in_span", lowest_in}, {"highest_outside", highest_out}},
           separated || !c.verify);
}

void demo_dj(const Config &c, Reporter &out) {
    const int k = 5, n = 6;
    Circuit v1{Gate::single(GateKind::X, n - 1)}, v3;
    for (int q = 0; q < n; ++q) v1.push_back(Gate::single(GateKind::H, q));
    for (int q = 0; q < k; ++q) v3.push_back(Gate::single(GateKind::H, q));
    std::vector<int> targets{0, 1, 2, 3, 4, 5};
    bool ok = true;
    for (const auto &[name, f] : {std::pair{"constant", constant_oracle(k, true)},
                                  std::pair{"balanced", parity_oracle(BitString::parse("10110"))}}) {
        EcsOperator v2 = basis_preserving_op(n, {Gate::oracle_gate(targets, f.as_function())});
        SimulationResult r = simulate_dj_class(v1, v2, v3, k, budget_of(c), RandomStream{c.seed, 0});
        Json line{{"command", "demo"}, {"demo", "dj"}, {"function", name}};
        merge(line, io::report_json(r.report));
        line["notes"] = notes_json(r.notes);
        if (c.verify) ok &= attach_reference(line, r.report.estimate.value, reference::dj_class(v1, v2, v3, k), c.eps);
        out.emit(line);
    }
    require(ok, ErrorKind::Verification, "dense cross-check deviated by more than the tolerance");
}

void demo_theorem2(const Config &c, Reporter &out) {
    std::mt19937_64 rng(c.seed);
    const int n = 10, m = 5;
    FiveRoundCircuit fr;
    fr.n = n;
    for (int q = 0; q < n; ++q) {
        if (q < m || (rng() & 1u)) fr.s1.push_back(q);
        if (q < m) fr.measured.push_back(q);
        if (q < m || (rng() & 1u)) fr.s2.push_back(q);
    }
    while (fr.v.size() < 16) {
        int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n), z = static_cast<int>(rng() % n);
        if (x == y || y == z || x == z) continue;
        fr.v.push_back(fr.v.size() % 2 ? Gate::toffoli(x, y, z) : Gate::two(GateKind::CPhase, x, y, 0.7 * static_cast<double>(z + 1)));
    }
    BooleanOracle g = random_sparse_oracle(m, 2, rng());
    FiveRoundResult r = simulate_five_round(fr, g, 4, budget_of(c), RandomStream{c.seed, 0});
    Json line{{"command", "demo"}, {"demo", "theorem2"}, {"sparseness", 4}, {"theta", r.theta},
              {"coefficients_kept", r.table.entries.size()}};
    merge(line, io::report_json(r.report));
    const bool ok = attach_reference(line, r.report.estimate.value, reference::five_round(fr, g), 2 * c.eps);
    finish(out, line, ok);
}

void demo_potts(const Config &c, Reporter &out) {
    out.emit({{"command", "demo"},
              {"demo", "potts-note"},
              {"note",
               "Potts partition-function estimates need additive accuracy relative to a normalization that "
               "is exponentially large, which the polynomial-accuracy guarantees here do not provide; the "
               "application is not simulated. The overlap estimator underneath is shown on a "
               "stabilizer/product pair."}});
    const int n = 4;
    CtState ghz = stabilizer_state(n, {Gate::single(GateKind::H, 0), Gate::two(GateKind::CNOT, 0, 1),
                                       Gate::two(GateKind::CNOT, 1, 2), Gate::two(GateKind::CNOT, 2, 3)});
    CtState plus = plus_state(n);
    EstimateReport r = estimate_overlap(ghz, plus, budget_of(c), RandomStream{c.seed, 0});
    Json line{{"command", "demo"}, {"demo", "potts-note"}, {"overlap", "stabilizer GHZ vs product |+>^4"}};
    merge(line, io::report_json(r));
    const bool ok = attach_reference(line, r.estimate.value, dense_overlap(DenseState::from(ghz), DenseState::from(plus)),
                                     r.estimate.epsilon);
    finish(out, line, ok);
}

void cmd_demo(const Config &c, const std::string &name) {
    Reporter out(c);
    if (name == "simon-parity") demo_simon(c, out);
    else if (name == "dj") demo_dj(c, out);
    else if (name == "theorem2") demo_theorem2(c, out);
    else if (name == "potts-note") demo_potts(c, out);
    else fail(ErrorKind::Parse, "unknown demo \"" + name + "\" (simon-parity, dj, theorem2, potts-note)");
}

void cmd_validate(const std::vector<std::string> &files) {
    for (const std::string &f : files) {
        Json doc = io::normalize_document(io::read_json_file(f));
        Json again = io::normalize_document(io::parse_json(doc.dump(), f));
        require(doc == again, ErrorKind::Parse, f + ": canonical form does not round-trip");
        std::cout << doc.dump() << "\n";
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"wsim: sampling-based estimates for circuits with tractable states and sparse operators"};
    app.require_subcommand(1);
    Config c;
    auto common = [&c](CLI::App *sub) {
        sub->add_option("--eps", c.eps, "accuracy epsilon in (0, 1]")->check(CLI::Range(1e-9, 1.0));
        sub->add_option("--delta", c.delta, "failure probability in (0, 1)")->check(CLI::Range(1e-300, 1.0 - 1e-12));
        sub->add_option("--seed", c.seed, "random seed");
        sub->add_option("--workers", c.workers, "worker threads (0 keeps the default)")->check(CLI::NonNegativeNumber);
        sub->add_flag("--verify", c.verify, "cross-check against the dense simulator");
        sub->add_flag("--timing", c.timing, "add wall-clock seconds to each report");
        sub->add_option("--out", c.out, "write reports to this file instead of stdout");
    };

    std::string kind;
    std::vector<std::string> files;
    CLI::App *est = app.add_subcommand("estimate", "overlap, matel, observable or partial estimate");
    common(est);
    est->add_option("kind", kind, "overlap | matel | observable | partial")->required();
    est->add_option("files", files, "state and operator documents")->required();

    std::string plan_path, driver;
    CLI::App *sim = app.add_subcommand("simulate", "run a circuit plan through its driver");
    common(sim);
    sim->add_option("plan", plan_path, "plan document")->required();
    sim->add_option("--driver", driver, "expected driver: theorem1, sparse, composed, cnot-expx, dj, five-round");

    std::string oracle, table_path;
    double threshold = 0.25;
    bool exhaustive = false, sampled = false;
    CLI::App *learn = app.add_subcommand("learn", "heavy Fourier coefficients of an oracle");
    common(learn);
    learn->add_option("--oracle", oracle, "oracle spec or truth-table file")->required();
    learn->add_option("--threshold", threshold, "coefficient threshold in (0, 1]")->check(CLI::Range(1e-9, 1.0));
    learn->add_flag("--exhaustive", exhaustive, "also write the exact table and a verdict (m <= 16)");
    learn->add_flag("--sampled", sampled, "never replace sampled weights by an exhaustive transform");
    learn->add_option("--table", table_path, "table output path (defaults to --out)");

    std::string demo;
    CLI::App *dem = app.add_subcommand("demo", "simon-parity, dj, theorem2 or potts-note");
    common(dem);
    dem->add_option("name", demo, "demo name")->required();

    std::vector<std::string> docs;
    CLI::App *val = app.add_subcommand("validate", "print the canonical form of schema documents");
    val->add_option("files", docs, "documents")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (c.workers > 0) set_worker_count(c.workers);
        if (*est) cmd_estimate(c, kind, files);
        if (*sim) cmd_simulate(c, plan_path, driver);
        if (*learn) cmd_learn(c, oracle, threshold, exhaustive, sampled, table_path);
        if (*dem) cmd_demo(c, demo);
        if (*val) cmd_validate(docs);
    } catch (const Error &e) {
        std::cerr << Json{{"error", error_kind_name(e.kind())}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (const nlohmann::json::exception &e) {
        std::cerr << Json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }
    return 0;
}
