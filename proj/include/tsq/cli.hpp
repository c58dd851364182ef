// Copyright 2026 The tsq Authors
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

#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "tsq/epr.hpp"
#include "tsq/groverlong.hpp"
#include "tsq/querycomplexity.hpp"
#include "tsq/render.hpp"
#include "tsq/tsym.hpp"

namespace tsq {

inline constexpr const char *kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

enum class ScenarioKind { GroverExternal, GroverSolver, TsInstance, Epr, Complexity, Search };

inline const char *scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::GroverExternal:
            return "grover-external";
        case ScenarioKind::GroverSolver:
            return "grover-solver";
        case ScenarioKind::TsInstance:
            return "ts-instance";
        case ScenarioKind::Epr:
            return "epr";
        case ScenarioKind::Complexity:
            return "complexity";
        default:
            return "search";
    }
}

enum class OutputMode { Table, Json };

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::GroverSolver;
    int n = 2;
    /// Setting / outcome bitstring; empty selects 0...01.
    std::string outcome;
    /// "A:[01]" (completed canonically) or "B:[10]/A:[01]"; empty selects the first even split.
    std::string split;
    /// ts-instance only: uneven split with this final-part rank.
    std::optional<int> final_rank;
    std::string perspective = "solver";
    /// U12 provider: "xor" or "long".
    std::string process = "xor";
    bool swap_odd_split = false;

    std::string problem = "grover";
    std::string problem_file;
    std::vector<double> k{0.5};
    std::size_t search_cap = kDefaultSearchCap;

    std::string variant = "long";
    std::optional<int> iterations;
    std::string target;

    std::string path = "direct";
    std::string mode = "costa";
    std::optional<std::uint64_t> seed;

    OutputMode output = OutputMode::Table;
};

struct StateRow {
    std::string b;
    std::string a;
    double re = 0.0;
    double im = 0.0;
    bool operator==(const StateRow &) const = default;
};

struct StateTable {
    std::string label;
    std::string ket;
    std::vector<StateRow> rows;
    bool operator==(const StateTable &) const = default;
};

struct Report {
    int schema_version = kSchemaVersion;
    std::string tool_version = kToolVersion;
    nlohmann::json scenario = nlohmann::json::object();
    std::vector<StateTable> states;
    std::map<std::string, double> scalars;
    std::map<std::string, std::string> facts;
    /// Structured module output (complexity reports, search runs).
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::string> tables;
    std::optional<std::uint64_t> seed;
    bool operator==(const Report &) const = default;
};

inline void to_json(nlohmann::json &j, const StateRow &r) {
    j = nlohmann::json{{"b", r.b}, {"a", r.a}, {"re", r.re}, {"im", r.im}};
}
inline void from_json(const nlohmann::json &j, StateRow &r) {
    j.at("b").get_to(r.b);
    j.at("a").get_to(r.a);
    j.at("re").get_to(r.re);
    j.at("im").get_to(r.im);
}
inline void to_json(nlohmann::json &j, const StateTable &t) {
    j = nlohmann::json{{"label", t.label}, {"ket", t.ket}, {"rows", t.rows}};
}
inline void from_json(const nlohmann::json &j, StateTable &t) {
    j.at("label").get_to(t.label);
    j.at("ket").get_to(t.ket);
    j.at("rows").get_to(t.rows);
}
inline void to_json(nlohmann::json &j, const Report &r) {
    j = nlohmann::json{{"schema_version", r.schema_version},
                       {"tool_version", r.tool_version},
                       {"scenario", r.scenario},
                       {"states", r.states},
                       {"scalars", r.scalars},
                       {"facts", r.facts},
                       {"results", r.results},
                       {"tables", r.tables},
                       {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)}};
}
inline void from_json(const nlohmann::json &j, Report &r) {
    j.at("schema_version").get_to(r.schema_version);
    j.at("tool_version").get_to(r.tool_version);
    r.scenario = j.at("scenario");
    j.at("states").get_to(r.states);
    j.at("scalars").get_to(r.scalars);
    j.at("facts").get_to(r.facts);
    r.results = j.at("results");
    j.at("tables").get_to(r.tables);
    if (j.at("seed").is_null()) {
        r.seed.reset();
    } else {
        r.seed = j.at("seed").get<std::uint64_t>();
    }
}

/// Nonzero amplitudes of a state as rows.
inline StateTable state_table(const std::string &label, const StateVector &s) {
    StateTable t{label, format_state(s), {}};
    for (size_t i = 0; i < s.dimension(); i++) {
        if (std::abs(s[i]) > 1e-15) {
            BasisLabel l = label_of(s.layout(), i);
            t.rows.push_back({format_bits(l.b, s.layout().n_b), format_bits(l.a, s.layout().n_a), s[i].real(),
                              s[i].imag()});
        }
    }
    return t;
}

/// Parses an oracle problem: {"id", "settings", "queries", "answer": {setting: {query: symbol}},
/// "solution": {setting: symbol}}. Symbols may be strings or numbers.
inline OracleProblemSpec problem_from_json(const nlohmann::json &j, const std::string &fallback_id) {
    auto schema = [](const std::string &what) { return PreconditionError("schema error: " + what); };
    auto symbol = [&](const nlohmann::json &v, const std::string &where) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_number() || v.is_boolean()) {
            return v.dump();
        }
        throw schema(where + " must be a string or number");
    };
    if (!j.is_object()) {
        throw schema("top level must be an object");
    }
    for (const char *key : {"settings", "queries", "answer", "solution"}) {
        if (!j.contains(key)) {
            throw schema(std::string("missing \"") + key + "\"");
        }
    }
    if (!j["settings"].is_array() || !j["queries"].is_array() || !j["answer"].is_object() ||
        !j["solution"].is_object()) {
        throw schema("\"settings\"/\"queries\" must be arrays, \"answer\"/\"solution\" objects");
    }
    std::vector<std::string> settings;
    std::vector<std::string> queries;
    for (const auto &s : j["settings"]) {
        settings.push_back(symbol(s, "setting"));
    }
    for (const auto &q : j["queries"]) {
        queries.push_back(symbol(q, "query"));
    }
    std::vector<std::vector<std::string>> answers;
    std::vector<std::string> solutions;
    for (const auto &s : settings) {
        const auto &by_setting = j["answer"];
        if (!by_setting.contains(s) || !by_setting[s].is_object()) {
            throw schema("missing answer row for setting '" + s + "'");
        }
        std::vector<std::string> row;
        for (const auto &q : queries) {
            if (!by_setting[s].contains(q)) {
                throw schema("missing answer for (setting '" + s + "', query '" + q + "')");
            }
            row.push_back(symbol(by_setting[s][q], "answer"));
        }
        answers.push_back(std::move(row));
        if (!j["solution"].contains(s)) {
            throw schema("missing solution for setting '" + s + "'");
        }
        solutions.push_back(symbol(j["solution"][s], "solution"));
    }
    std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : fallback_id;
    return OracleProblemSpec(id, settings, queries, answers, solutions);
}

inline OracleProblemSpec load_problem(const std::string &path) {
    std::ifstream in(path);
    require(in.good(), "cannot open problem file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw PreconditionError(std::string("schema error: malformed JSON: ") + e.what());
    }
    std::string stem = path.substr(path.find_last_of('/') + 1);
    stem = stem.substr(0, stem.find_last_of('.'));
    return problem_from_json(j, stem);
}

inline nlohmann::json problem_to_json(const OracleProblemSpec &p) {
    nlohmann::json answer = nlohmann::json::object();
    nlohmann::json solution = nlohmann::json::object();
    // Interned ids are not the original symbols; rebuild from the first occurrence order.
    for (size_t s = 0; s < p.setting_count(); s++) {
        for (size_t q = 0; q < p.query_count(); q++) {
            answer[p.settings()[s]][p.queries()[q]] = std::to_string(p.answer(s, q));
        }
        solution[p.settings()[s]] = std::to_string(p.solution(s));
    }
    return {{"id", p.id()}, {"settings", p.settings()}, {"queries", p.queries()}, {"answer", answer},
            {"solution", solution}};
}

namespace detail {

inline nlohmann::json echo(const ScenarioConfig &c) {
    nlohmann::json j{{"kind", scenario_name(c.kind)}, {"output", c.output == OutputMode::Json ? "json" : "table"}};
    switch (c.kind) {
        case ScenarioKind::GroverExternal:
        case ScenarioKind::GroverSolver:
        case ScenarioKind::TsInstance:
            j["n"] = c.n;
            j["outcome"] = c.outcome;
            j["split"] = c.split;
            j["process"] = c.process;
            if (c.kind == ScenarioKind::TsInstance) {
                j["perspective"] = c.perspective;
                j["final_rank"] = c.final_rank ? nlohmann::json(*c.final_rank) : nlohmann::json(nullptr);
            }
            break;
        case ScenarioKind::Epr:
            j["outcome"] = c.outcome;
            j["split"] = c.split;
            j["path"] = c.path;
            j["mode"] = c.mode;
            break;
        case ScenarioKind::Complexity:
            j["problem"] = c.problem_file.empty() ? c.problem : c.problem_file;
            j["n"] = c.n;
            j["k"] = c.k;
            j["search_cap"] = c.search_cap;
            break;
        case ScenarioKind::Search:
            j["n"] = c.n;
            j["target"] = c.target;
            j["variant"] = c.variant;
            j["iterations"] = c.iterations ? nlohmann::json(*c.iterations) : nlohmann::json(nullptr);
            break;
    }
    return j;
}

inline ProcessDescription make_process(const ScenarioConfig &c) {
    require(c.n >= 1 && c.n <= 8, "--n must be in 1..8");
    if (c.process == "xor") {
        return ProcessDescription::grover(c.n);
    }
    require(c.process == "long", "--process must be xor or long");
    auto layout = RegisterLayout::symmetric(c.n);
    std::vector<std::uint32_t> identity(layout.register_dimension(Register::B));
    for (std::uint32_t b = 0; b < identity.size(); b++) {
        identity[b] = b;
    }
    return ProcessDescription(uniform_setting_state(layout, 0u), as_process_unitary(c.n), identity);
}

inline std::uint32_t outcome_value(const std::string &outcome, int n) {
    return outcome.empty() ? 1u : parse_bits(outcome, n);
}

/// Accepts "A:[..]" (initial part completed canonically) or "B:[..]/A:[..]".
inline SelectionSplit parse_split(const ProcessDescription &process, const std::string &text, bool swap) {
    int n = process.n();
    if (text.empty()) {
        auto splits = enumerate_splits(process, even_initial_rank(n, swap));
        require(!splits.empty(), "no even split exists");
        return splits.front();
    }
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        auto obs = ParityObservable::parse(text, n);
        require(obs.reg() == Register::A, "a single-observable split names the final A part");
        return complete_split(process, obs);
    }
    auto initial = ParityObservable::parse(text.substr(0, slash), n);
    auto final_part = ParityObservable::parse(text.substr(slash + 1), n);
    return make_split(process, initial, final_part);
}

inline std::string join_settings(const std::vector<std::uint32_t> &values, int n) {
    std::string out;
    for (size_t i = 0; i < values.size(); i++) {
        out += (i ? "," : "") + format_bits(values[i], n);
    }
    return out;
}

inline void add_trajectory(Report &r, const ZigzagInstance &inst) {
    for (const auto &step : inst.trajectory) {
        r.states.push_back(state_table(std::string(time_name(step.time)) + " " + step.label, step.state));
    }
    r.states.push_back(state_table("bottom line input", inst.bottom_in));
    r.states.push_back(state_table("bottom line output", inst.bottom_out));
}

inline Report run_grover_external(const ScenarioConfig &c, Report r) {
    auto process = make_process(c);
    std::uint32_t b = outcome_value(c.outcome, c.n);
    require(b < process.setting_count(), "--outcome out of range");
    auto split = parse_split(process, c.split, c.swap_odd_split);
    auto inst = external_instance(process, b, split);
    auto ordinary = measure(process.initial_state(), process.initial_obs(), ForcedOutcome{b});
    r.tables.push_back(external_description_table(process, b).render());
    r.tables.push_back(zigzag_table(inst).render());
    r.states.push_back(state_table("t1 initial state", process.initial_state()));
    r.states.push_back(state_table("t1 after B", ordinary.post_state));
    r.states.push_back(state_table("t2 after U12", apply(process.u12(), ordinary.post_state)));
    add_trajectory(r, inst);
    r.facts["instance"] = inst.name();
    r.facts["split"] = split.name();
    r.scalars["bottom_line_deviation"] = max_abs_diff(inst.bottom_in, ordinary.post_state);
    double worst = 0.0;
    for (const auto &other : enumerate_splits(process, split.initial_part.rank(), SplitFamily::AllPairs)) {
        worst = std::max(worst, max_abs_diff(external_instance(process, b, other).bottom_in, inst.bottom_in));
    }
    r.scalars["split_independence_deviation"] = worst;
    return r;
}

inline Report run_grover_solver(const ScenarioConfig &c, Report r) {
    auto process = make_process(c);
    std::uint32_t b = outcome_value(c.outcome, c.n);
    require(b < process.setting_count(), "--outcome out of range");
    auto split = parse_split(process, c.split, c.swap_odd_split);
    auto inst = solver_instance(process, b, split);
    r.tables.push_back(relativized_description_table(process, b).render());
    r.tables.push_back(zigzag_table(inst).render());
    r.tables.push_back(bottom_line_table(inst, false).render());
    r.tables.push_back(bottom_line_table(inst, true).render());
    add_trajectory(r, inst);
    r.facts["instance"] = inst.name();
    r.facts["split"] = split.name();
    r.facts["branches"] = join_settings(inst.bottom_branches(), c.n);
    auto all = enumerate_splits(process, split.initial_part.rank());
    r.scalars["instance_count"] = static_cast<double>(all.size());
    for (size_t i = 0; i < all.size(); i++) {
        auto other = solver_instance(process, b, all[i]);
        r.facts["instance[" + std::to_string(i) + "]"] =
            other.name() + " branches " + join_settings(other.bottom_branches(), c.n);
    }
    return r;
}

inline Report run_ts_instance(const ScenarioConfig &c, Report r) {
    auto process = make_process(c);
    std::uint32_t b = outcome_value(c.outcome, c.n);
    require(b < process.setting_count(), "--outcome out of range");
    require(c.perspective == "external" || c.perspective == "solver", "--perspective must be external or solver");
    bool external = c.perspective == "external";
    ZigzagInstance inst = [&] {
        if (c.final_rank) {
            require(!external, "--final-rank applies to the solver perspective");
            return uneven_instance(process, b, *c.final_rank);
        }
        auto split = parse_split(process, c.split, c.swap_odd_split);
        return external ? external_instance(process, b, split) : solver_instance(process, b, split);
    }();
    r.tables.push_back(zigzag_table(inst).render());
    r.tables.push_back(bottom_line_table(inst, true).render());
    add_trajectory(r, inst);
    r.facts["instance"] = inst.name();
    r.facts["branches"] = join_settings(inst.bottom_branches(), c.n);
    r.scalars["branch_count"] = static_cast<double>(inst.bottom_branches().size());
    r.scalars["final_rank"] = inst.split.final_part.rank();

    std::vector<ZigzagInstance> grid;
    for (std::uint32_t v = 0; v < process.setting_count(); v++) {
        for (const auto &split : enumerate_splits(process, inst.split.initial_part.rank())) {
            grid.push_back(external ? external_instance(process, v, split) : solver_instance(process, v, split));
        }
    }
    auto rec = recover_superposition(grid);
    r.states.push_back(state_table("superposition of all instances", rec.sum));
    r.scalars["recovery_constant_re"] = rec.constant.real();
    r.scalars["recovery_constant_im"] = rec.constant.imag();
    r.scalars["recovery_deviation"] = rec.deviation;
    r.facts["recovery"] = rec.proportional ? "proportional" : "not proportional";
    return r;
}

inline Report run_epr(const ScenarioConfig &c, Report r) {
    require(c.path == "direct" || c.path == "via-t0", "--path must be direct or via-t0");
    require(c.mode == "costa" || c.mode == "ts", "--mode must be costa or ts");
    EprScenario sc = c.seed ? EprScenario::seeded(*c.seed) : EprScenario::standard();
    std::uint32_t b = outcome_value(c.outcome, 2);
    bool via = c.path == "via-t0";
    CausalTrace trace = [&] {
        if (c.mode == "ts") {
            auto process = ProcessDescription::grover(2);
            return ts_trace(sc, b, parse_split(process, c.split, false));
        }
        return via ? costa_trace(sc, b) : direct_trace(sc, b);
    }();
    r.tables.push_back(c.mode == "ts" ? epr_zigzag_table(trace, via).render() : epr_ordinary_table(trace, via).render());
    for (const auto &s : trace.states) {
        r.states.push_back(state_table(std::string(time_name(s.time)) + " " + s.label, s.state));
    }
    if (via || c.mode == "costa") {
        for (const auto &s : trace.t0_changes) {
            r.states.push_back(state_table("t0 changed " + s.label, s.state));
        }
    }
    r.states.push_back(state_table("bottom line t1", trace.bottom_t1));
    r.states.push_back(state_table("bottom line t2", trace.bottom_t2));
    for (size_t i = 0; i < trace.events.size(); i++) {
        const auto &e = trace.events[i];
        r.facts["event[" + std::to_string(i) + "]"] =
            std::string(time_name(e.time)) + " " + e.observable + " = " + e.outcome;
    }
    auto direct = direct_trace(sc, b);
    auto costa = costa_trace(sc, b);
    r.scalars["factorization_deviation"] = sc.factorization_deviation();
    r.scalars["direct_vs_via_t0_deviation"] = max_abs_diff(direct.bottom_t2, costa.bottom_t2);
    r.scalars["emulation_deviation"] =
        emulation_check(sc, b, ParityObservable::full(Register::B, 2)).deviation;
    if (c.mode == "ts") {
        r.scalars["bottom_line_deviation_t1"] = max_abs_diff(trace.bottom_t1, direct.bottom_t1);
        r.scalars["bottom_line_deviation_t2"] = max_abs_diff(trace.bottom_t2, direct.bottom_t2);
    }
    return r;
}

inline nlohmann::json complexity_json(const ComplexityReport &rep, int n) {
    nlohmann::json classes = nlohmann::json::array();
    for (const auto &c : rep.classes) {
        classes.push_back({{"parity_bits", c.parity_bits}, {"members", c.members}, {"queries", c.queries}});
    }
    std::vector<std::string> masks;
    for (auto m : rep.masks) {
        masks.push_back(format_bits(m, n));
    }
    return {{"problem", rep.problem_id}, {"k", rep.k},
            {"rank", rep.rank},          {"masks", masks},
            {"classes", classes},        {"worst_case", rep.worst_case},
            {"predicted_quantum", rep.predicted_quantum}, {"bases_examined", rep.bases_examined}};
}

inline std::string format_k(double k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", k);
    return buf;
}

inline Report run_complexity(const ScenarioConfig &c, Report r) {
    require(!c.k.empty(), "--k needs at least one value");
    OracleProblemSpec problem = [&] {
        if (!c.problem_file.empty()) {
            return load_problem(c.problem_file);
        }
        require(c.problem == "grover", "--problem must be grover (or use --problem-file)");
        require(c.n >= 1 && c.n <= 6, "--n must be in 1..6 for the grover problem");
        return OracleProblemSpec::grover(c.n);
    }();
    auto reports = k_sweep(problem, c.k, c.search_cap);
    int bits = std::max(problem.setting_bits(), 1);
    nlohmann::json list = nlohmann::json::array();
    std::ostringstream table;
    char line[256];
    std::snprintf(line, sizeof line, "%-6s %-5s %-11s %-18s %s\n", "k", "rank", "worst_case", "predicted_quantum",
                  "advice masks");
    table << "advanced knowledge prediction, problem " << problem.id() << "\n\n" << line;
    for (const auto &rep : reports) {
        list.push_back(complexity_json(rep, bits));
        std::string masks;
        for (auto m : rep.masks) {
            masks += (masks.empty() ? "" : ",") + format_bits(m, bits);
        }
        std::string key = format_k(rep.k);
        std::snprintf(line, sizeof line, "%-6s %-5d %-11d %-18d [%s]\n", key.c_str(), rep.rank, rep.worst_case,
                      rep.predicted_quantum, masks.c_str());
        table << line;
        r.scalars["worst_case[k=" + key + "]"] = rep.worst_case;
        r.scalars["predicted_quantum[k=" + key + "]"] = rep.predicted_quantum;
    }
    r.results["reports"] = list;
    r.tables.push_back(table.str());
    return r;
}

inline Report run_search(const ScenarioConfig &c, Report r) {
    require(c.variant == "long" || c.variant == "grover", "--variant must be long or grover");
    std::uint32_t target = c.target.empty() ? 0u : parse_bits(c.target, c.n);
    auto oracle = SearchOracle::make(c.n, target);
    SearchRun run = c.variant == "long" ? run_long(oracle) : run_grover(oracle, c.iterations);
    r.scalars["iterations"] = run.iterations;
    r.scalars["query_count"] = run.query_count;
    r.scalars["phase"] = run.phase;
    r.scalars["success_probability"] = run.success_probability;
    r.results["search"] = {{"n", c.n}, {"N", oracle.size()}, {"target", format_bits(target, c.n)},
                           {"variant", variant_name(run.variant)}};
    char buf[256];
    std::snprintf(buf, sizeof buf, "search N=%zu target=%s variant=%s\n\nJ = %d\nphi = %.12f\nsuccess = %.15f\n",
                  oracle.size(), format_bits(target, c.n).c_str(), variant_name(run.variant), run.iterations,
                  run.phase, run.success_probability);
    r.tables.push_back(buf);
    return r;
}

}  // namespace detail

/// Validates the config, dispatches to the owning module and assembles the report.
inline Report run(const ScenarioConfig &config) {
    Report r;
    r.scenario = detail::echo(config);
    r.seed = config.seed;
    switch (config.kind) {
        case ScenarioKind::GroverExternal:
            return detail::run_grover_external(config, std::move(r));
        case ScenarioKind::GroverSolver:
            return detail::run_grover_solver(config, std::move(r));
        case ScenarioKind::TsInstance:
            return detail::run_ts_instance(config, std::move(r));
        case ScenarioKind::Epr:
            return detail::run_epr(config, std::move(r));
        case ScenarioKind::Complexity:
            return detail::run_complexity(config, std::move(r));
        default:
            return detail::run_search(config, std::move(r));
    }
}

inline std::string render_json(const Report &r) {
    return nlohmann::json(r).dump(2) + "\n";
}

/// Diagrams followed by the scalar and textual results.
inline std::string render_text(const Report &r) {
    std::string out;
    for (const auto &t : r.tables) {
        out += t + "\n";
    }
    size_t width = 0;
    for (const auto &[k, v] : r.facts) {
        width = std::max(width, k.size());
    }
    for (const auto &[k, v] : r.scalars) {
        width = std::max(width, k.size());
    }
    for (const auto &[k, v] : r.facts) {
        out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
    }
    for (const auto &[k, v] : r.scalars) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out += k + std::string(width - k.size() + 2, ' ') + buf + "\n";
    }
    return out;
}

/// Exit status for a failed run: 2 for bad input, 3 when a numerical invariant broke.
inline int exit_code_for(const std::exception &e) {
    if (dynamic_cast<const PreconditionError *>(&e) != nullptr) {
        return 2;
    }
    return 3;
}

/// Runs and writes the rendered report, or a one-line diagnostic. Returns the exit status.
inline int run_and_print(const ScenarioConfig &config, std::ostream &out, std::ostream &err) {
    try {
        Report report = run(config);
        out << (config.output == OutputMode::Json ? render_json(report) : render_text(report));
        return 0;
    } catch (const std::exception &e) {
        int code = exit_code_for(e);
        err << (code == 2 ? "error: " : "invariant failure: ") << e.what() << "\n";
        return code;
    }
}

}  // namespace tsq
