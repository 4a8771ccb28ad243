// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The ccpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// ccpsim: Monte-Carlo ranging simulator front end.
//
//   ccpsim run --config scenario.json --out results.csv --format csv
//
// Command-line flags override values from the config file.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "ccpsim/errors.hpp"
#include "ccpsim/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string::npos ? s.size() : comma;
        if (end > start)
            out.push_back(s.substr(start, end - start));
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

struct RunArgs {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> band;
    std::optional<std::string> profile;
    std::optional<std::string> methods;
    std::optional<std::string> ia;
    unsigned workers = 0;
};

int run(const RunArgs& a)
{
    using namespace ccpsim;

    ScenarioConfig cfg;
    OutputFormat format{};
    try {
        cfg = a.config_path.empty() ? ScenarioConfig{} : load_config(a.config_path);
        if (a.trials) cfg.n_trials = *a.trials;
        if (a.seed) cfg.master_seed = *a.seed;
        if (a.band) cfg.band = parse_band(*a.band);
        if (a.profile) cfg.profile = parse_profile(*a.profile);
        if (a.methods) {
            cfg.methods.clear();
            for (const auto& m : split_list(*a.methods))
                cfg.methods.push_back(parse_method(m));
        }
        if (a.ia) cfg.ambiguity = parse_ambiguity(*a.ia);
        if (a.format == "csv")
            format = OutputFormat::Csv;
        else if (a.format == "json")
            format = OutputFormat::Json;
        else
            throw ConfigError("unknown format '" + a.format + "'");
        cfg.validate();
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const IoError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    }

    try {
        const unsigned workers = a.workers ? a.workers : std::max(1U, std::thread::hardware_concurrency());
        const auto results = run_scenario(cfg, workers);
        std::vector<CdfResult> cdfs;
        for (auto m : cfg.methods)
            cdfs.push_back(compute_cdf(results, m, cfg));
        emit_results(cdfs, a.out_path, format);
        for (const auto& c : cdfs)
            fmt::print("{:<4} n={} ok={} ia_fail={} wrong_int={} p50={:.6g} p90={:.6g} m\n", to_string(c.method),
                       c.n_trials, c.sorted_abs_errors.size(), c.ia_failures, c.ia_wrong_integer, c.percentiles.p50,
                       c.percentiles.p90);
    } catch (const ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Carrier-phase and time-of-arrival ranging simulator"};
    app.require_subcommand(1);

    RunArgs args;
    auto* run_cmd = app.add_subcommand("run", "Run a Monte-Carlo scenario and write error CDFs");
    run_cmd->add_option("--config", args.config_path, "Scenario config (JSON)");
    run_cmd->add_option("--out", args.out_path, "Output file")->required();
    run_cmd->add_option("--format", args.format, "csv or json");
    run_cmd->add_option("--trials", args.trials, "Number of trials");
    run_cmd->add_option("--seed", args.seed, "Master seed");
    run_cmd->add_option("--band", args.band, "fr1 or fr2");
    run_cmd->add_option("--profile", args.profile, "los, nlos-s or nlos-d");
    run_cmd->add_option("--method", args.methods, "Comma-separated subset of toa,cp,ccp");
    run_cmd->add_option("--ia", args.ia, "oracle, toa or widelane");
    run_cmd->add_option("--workers", args.workers, "Worker threads (0: hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    return run(args);
}
