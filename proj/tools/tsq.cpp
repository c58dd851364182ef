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


// tsq: scenario runner. Exit codes: 0 ok, 2 config error, 3 invariant failure.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "tsq/cli.hpp"

namespace {

void add_common(CLI::App *sub, tsq::ScenarioConfig &c) {
    sub->add_option("--n", c.n, "bits per register")->capture_default_str();
    sub->add_option("--outcome", c.outcome, "problem setting b as a bitstring (default 0..01)");
    sub->add_option("--split", c.split, "selection split, e.g. A:[01] or B:[10]/A:[01]");
    sub->add_option("--process", c.process, "U12 provider: xor or long")->capture_default_str();
    sub->add_flag("--swap-odd-split", c.swap_odd_split, "odd n: give the final part the larger rank");
}

}  // namespace

int main(int argc, char **argv) {
    tsq::ScenarioConfig config;
    std::string output = "table";
    CLI::App app{"time-symmetrization simulator and query-complexity toolkit"};
    app.set_version_flag("--version", tsq::kToolVersion);
    app.add_option("--output", output, "table or json")
        ->check(CLI::IsMember({"table", "json"}))
        ->capture_default_str();
    app.require_subcommand(1);

    auto *ext = app.add_subcommand("grover-external", "external description and zigzag of a Grover process");
    add_common(ext, config);
    auto *sol = app.add_subcommand("grover-solver", "solver-relativized description, zigzag and bottom lines");
    add_common(sol, config);

    auto *ts = app.add_subcommand("ts-instance", "one time-symmetrization instance plus superposition recovery");
    add_common(ts, config);
    ts->add_option("--perspective", config.perspective, "external or solver")
        ->check(CLI::IsMember({"external", "solver"}))
        ->capture_default_str();
    ts->add_option("--final-rank", config.final_rank, "uneven split: rank of the final part");

    auto *epr = app.add_subcommand("epr", "EPR correlation, direct or routed via t0");
    epr->add_option("--path", config.path, "direct or via-t0")
        ->check(CLI::IsMember({"direct", "via-t0"}))
        ->capture_default_str();
    epr->add_option("--mode", config.mode, "costa or ts")->check(CLI::IsMember({"costa", "ts"}))->capture_default_str();
    epr->add_option("--outcome", config.outcome, "outcome of B at t1 (2 bits)");
    epr->add_option("--split", config.split, "ts mode: selection split");
    epr->add_option("--seed", config.seed, "seed for random u01/u02");

    auto *cx = app.add_subcommand("complexity", "advanced knowledge query-complexity prediction");
    std::vector<double> ks;
    cx->add_option("--problem", config.problem, "built-in problem (grover)")->capture_default_str();
    cx->add_option("--problem-file", config.problem_file, "JSON oracle problem");
    cx->add_option("--n", config.n, "bits of the built-in problem")->capture_default_str();
    cx->add_option("--k", ks, "advice fraction(s) in [0, 1]; repeatable");
    cx->add_option("--search-cap", config.search_cap, "max candidates for exact search")->capture_default_str();

    auto *search = app.add_subcommand("search", "Grover or exact Long search");
    search->add_option("--n", config.n, "bits")->capture_default_str();
    search->add_option("--target", config.target, "marked item bitstring (default all zeros)");
    search->add_option("--variant", config.variant, "long or grover")
        ->check(CLI::IsMember({"long", "grover"}))
        ->capture_default_str();
    search->add_option("--iterations", config.iterations, "grover only: override J");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    using tsq::ScenarioKind;
    if (ext->parsed()) {
        config.kind = ScenarioKind::GroverExternal;
    } else if (sol->parsed()) {
        config.kind = ScenarioKind::GroverSolver;
    } else if (ts->parsed()) {
        config.kind = ScenarioKind::TsInstance;
    } else if (epr->parsed()) {
        config.kind = ScenarioKind::Epr;
    } else if (cx->parsed()) {
        config.kind = ScenarioKind::Complexity;
        if (!ks.empty()) {
            config.k = ks;
        }
    } else {
        config.kind = ScenarioKind::Search;
    }
    config.output = output == "json" ? tsq::OutputMode::Json : tsq::OutputMode::Table;

    return tsq::run_and_print(config, std::cout, std::cerr);
}
