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

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "ccpsim/errors.hpp"
#include "ccpsim/harness.hpp"

namespace ccpsim {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, std::string_view where)
{
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + std::string(where));
}

const json& require_object(const json& j, std::string_view where)
{
    if (!j.is_object())
        throw ConfigError(std::string(where) + " must be a JSON object");
    return j;
}

double read_snr(const json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf" || s == "+inf" || s == "Infinity")
            return std::numeric_limits<double>::infinity();
    }
    throw ConfigError("snr_db must be a number or \"inf\"");
}

Vec3 read_vec3(const json& j, std::string_view name)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(std::string(name) + " must be an array of three numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
std::optional<T> read_optional(const json& j)
{
    if (j.is_null())
        return std::nullopt;
    return j.get<T>();
}

const std::set<std::string> kTopKeys{
    "band", "profile", "snr_db", "n_trials", "methods", "ccp_sweeps", "ccp_shift",
    "geometry", "gnb_pos", "ue_pos", "master_seed", "ambiguity", "widelane_second_fc_hz",
    "comb_size", "comb_offset", "prs_symbols", "replication_periods",
    "toa_peak_threshold", "toa_sigma_s", "k_sigma", "widelane_refine_fraction",
    "ue_speed_mps", "channel"};
const std::set<std::string> kGeometryKeys{"gnb_pos", "ue_pos"};
const std::set<std::string> kChannelKeys{"rician_k_db", "rms_delay_spread_s", "n_clutter_taps",
                                         "nlos_excess_delay_mean_s", "path_loss_exponent"};

ScenarioConfig from_json(const json& j)
{
    require_object(j, "config");
    reject_unknown(j, kTopKeys, "config");

    ScenarioConfig cfg;
    if (j.contains("band")) cfg.band = parse_band(j.at("band").get<std::string>());
    if (j.contains("profile")) cfg.profile = parse_profile(j.at("profile").get<std::string>());
    if (j.contains("snr_db")) cfg.snr_db = read_snr(j.at("snr_db"));
    if (j.contains("n_trials")) cfg.n_trials = j.at("n_trials").get<int>();
    if (j.contains("methods")) {
        const auto& m = j.at("methods");
        if (!m.is_array())
            throw ConfigError("methods must be an array");
        cfg.methods.clear();
        for (const auto& e : m)
            cfg.methods.push_back(parse_method(e.get<std::string>()));
    }
    if (j.contains("ccp_sweeps")) cfg.ccp_sweeps = j.at("ccp_sweeps").get<int>();
    if (j.contains("ccp_shift")) cfg.ccp_shift = j.at("ccp_shift").get<int>();
    if (j.contains("geometry")) {
        const auto& g = require_object(j.at("geometry"), "geometry");
        reject_unknown(g, kGeometryKeys, "geometry");
        if (g.contains("gnb_pos")) cfg.gnb_pos = read_vec3(g.at("gnb_pos"), "gnb_pos");
        if (g.contains("ue_pos")) cfg.ue_pos = read_vec3(g.at("ue_pos"), "ue_pos");
    }
    if (j.contains("gnb_pos")) cfg.gnb_pos = read_vec3(j.at("gnb_pos"), "gnb_pos");
    if (j.contains("ue_pos")) cfg.ue_pos = read_vec3(j.at("ue_pos"), "ue_pos");
    if (j.contains("master_seed")) {
        const auto& s = j.at("master_seed");
        if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<std::int64_t>() < 0))
            throw ConfigError("master_seed must be a nonnegative integer");
        cfg.master_seed = s.get<std::uint64_t>();
    }
    if (j.contains("ambiguity")) cfg.ambiguity = parse_ambiguity(j.at("ambiguity").get<std::string>());
    if (j.contains("widelane_second_fc_hz"))
        cfg.widelane_second_fc_hz = read_optional<double>(j.at("widelane_second_fc_hz"));
    if (j.contains("comb_size")) cfg.comb_size = j.at("comb_size").get<int>();
    if (j.contains("comb_offset")) cfg.comb_offset = j.at("comb_offset").get<int>();
    if (j.contains("prs_symbols")) cfg.prs_symbols = j.at("prs_symbols").get<int>();
    if (j.contains("replication_periods")) cfg.replication_periods = j.at("replication_periods").get<int>();
    if (j.contains("toa_peak_threshold")) cfg.toa_peak_threshold = j.at("toa_peak_threshold").get<double>();
    if (j.contains("toa_sigma_s")) cfg.toa_sigma_s = j.at("toa_sigma_s").get<double>();
    if (j.contains("k_sigma")) cfg.k_sigma = j.at("k_sigma").get<double>();
    if (j.contains("widelane_refine_fraction"))
        cfg.widelane_refine_fraction = j.at("widelane_refine_fraction").get<double>();
    if (j.contains("ue_speed_mps")) cfg.ue_speed_mps = j.at("ue_speed_mps").get<double>();
    if (j.contains("channel")) {
        const auto& c = require_object(j.at("channel"), "channel");
        reject_unknown(c, kChannelKeys, "channel");
        if (c.contains("rician_k_db")) cfg.channel.rician_k_db = read_optional<double>(c.at("rician_k_db"));
        if (c.contains("rms_delay_spread_s"))
            cfg.channel.rms_delay_spread_s = read_optional<double>(c.at("rms_delay_spread_s"));
        if (c.contains("n_clutter_taps")) cfg.channel.n_clutter_taps = read_optional<int>(c.at("n_clutter_taps"));
        if (c.contains("nlos_excess_delay_mean_s"))
            cfg.channel.nlos_excess_delay_mean_s = read_optional<double>(c.at("nlos_excess_delay_mean_s"));
        if (c.contains("path_loss_exponent"))
            cfg.channel.path_loss_exponent = read_optional<double>(c.at("path_loss_exponent"));
    }
    return cfg;
}

template <typename T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

} // namespace

ScenarioConfig parse_config(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    ScenarioConfig cfg;
    try {
        cfg = from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config has a wrongly typed value: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError(path.string(), "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ScenarioConfig& cfg)
{
    json j;
    j["band"] = to_string(cfg.band);
    j["profile"] = to_string(cfg.profile);
    j["snr_db"] = std::isinf(cfg.snr_db) ? json("inf") : json(cfg.snr_db);
    j["n_trials"] = cfg.n_trials;
    j["methods"] = json::array();
    for (auto m : cfg.methods)
        j["methods"].push_back(to_string(m));
    j["ccp_sweeps"] = cfg.ccp_sweeps;
    j["ccp_shift"] = cfg.ccp_shift;
    j["geometry"] = {{"gnb_pos", {cfg.gnb_pos[0], cfg.gnb_pos[1], cfg.gnb_pos[2]}},
                     {"ue_pos", {cfg.ue_pos[0], cfg.ue_pos[1], cfg.ue_pos[2]}}};
    j["master_seed"] = cfg.master_seed;
    j["ambiguity"] = to_string(cfg.ambiguity);
    j["widelane_second_fc_hz"] = optional_json(cfg.widelane_second_fc_hz);
    j["comb_size"] = cfg.comb_size;
    j["comb_offset"] = cfg.comb_offset;
    j["prs_symbols"] = cfg.prs_symbols;
    j["replication_periods"] = cfg.replication_periods;
    j["toa_peak_threshold"] = cfg.toa_peak_threshold;
    j["toa_sigma_s"] = cfg.toa_sigma_s;
    j["k_sigma"] = cfg.k_sigma;
    j["widelane_refine_fraction"] = cfg.widelane_refine_fraction;
    j["ue_speed_mps"] = cfg.ue_speed_mps;
    j["channel"] = {{"rician_k_db", optional_json(cfg.channel.rician_k_db)},
                    {"rms_delay_spread_s", optional_json(cfg.channel.rms_delay_spread_s)},
                    {"n_clutter_taps", optional_json(cfg.channel.n_clutter_taps)},
                    {"nlos_excess_delay_mean_s", optional_json(cfg.channel.nlos_excess_delay_mean_s)},
                    {"path_loss_exponent", optional_json(cfg.channel.path_loss_exponent)}};
    return j.dump(2);
}

} // namespace ccpsim
