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

#include <fstream>
#include <string>

#include <fmt/format.h>

#include "json.hpp"

#include "ccpsim/errors.hpp"
#include "ccpsim/harness.hpp"

namespace ccpsim {

using nlohmann::json;

std::string results_to_csv(std::span<const CdfResult> cdfs)
{
    std::string out = "method,abs_error_m,cdf\n";
    for (const auto& r : cdfs)
        for (std::size_t i = 0; i < r.sorted_abs_errors.size(); ++i)
            out += fmt::format("{},{},{}\n", to_string(r.method), r.sorted_abs_errors[i], r.cdf[i]);
    return out;
}

std::string results_to_json(std::span<const CdfResult> cdfs)
{
    json root;
    root["methods"] = json::array();
    for (const auto& r : cdfs) {
        json m;
        m["method"] = to_string(r.method);
        m["n_trials"] = r.n_trials;
        m["n_success"] = r.sorted_abs_errors.size();
        m["ia_failures"] = r.ia_failures;
        m["ia_wrong_integer"] = r.ia_wrong_integer;
        m["no_signal"] = r.no_signal;
        m["percentiles"] = {{"p50", r.percentiles.p50},
                            {"p67", r.percentiles.p67},
                            {"p90", r.percentiles.p90},
                            {"p95", r.percentiles.p95}};
        m["abs_errors"] = r.sorted_abs_errors;
        m["cdf"] = r.cdf;
        m["config"] = json::parse(config_to_json(r.config));
        root["methods"].push_back(std::move(m));
    }
    if (!cdfs.empty())
        root["seed"] = cdfs.front().config.master_seed;
    return root.dump(2) + "\n";
}

std::vector<CdfResult> parse_results_json(std::string_view text)
{
    std::vector<CdfResult> out;
    try {
        const auto root = json::parse(text);
        for (const auto& m : root.at("methods")) {
            CdfResult r;
            r.method = parse_method(m.at("method").get<std::string>());
            r.n_trials = m.at("n_trials").get<std::size_t>();
            r.ia_failures = m.at("ia_failures").get<std::size_t>();
            r.ia_wrong_integer = m.at("ia_wrong_integer").get<std::size_t>();
            r.no_signal = m.at("no_signal").get<std::size_t>();
            const auto& p = m.at("percentiles");
            r.percentiles = {p.at("p50").get<double>(), p.at("p67").get<double>(), p.at("p90").get<double>(),
                             p.at("p95").get<double>()};
            r.sorted_abs_errors = m.at("abs_errors").get<std::vector<double>>();
            r.cdf = m.at("cdf").get<std::vector<double>>();
            if (r.cdf.size() != r.sorted_abs_errors.size())
                throw ConfigError("abs_errors and cdf differ in length");
            r.config = parse_config(m.at("config").dump());
            out.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed results document: ") + e.what());
    }
    return out;
}

void emit_results(std::span<const CdfResult> cdfs, const std::filesystem::path& path, OutputFormat format)
{
    const std::string text = format == OutputFormat::Csv ? results_to_csv(cdfs) : results_to_json(cdfs);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    out << text;
    out.flush();
    if (!out)
        throw IoError(path.string(), "write failed");
}

} // namespace ccpsim
