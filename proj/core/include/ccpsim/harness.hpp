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

#ifndef CCPSIM_HARNESS_HPP
#define CCPSIM_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccpsim/channel.hpp"
#include "ccpsim/waveform.hpp"

namespace ccpsim {

enum class Method { Toa, CarrierPhase, ContinuousCarrierPhase };
enum class AmbiguityMode { Oracle, ToaBound, Widelane };

std::string_view to_string(Method m);          // "TOA", "CP", "CCP"
std::string_view to_string(AmbiguityMode m);   // "Oracle", "ToaBound", "Widelane"
std::string_view to_string(Band b);            // "FR1", "FR2"

// Accept both the canonical spellings above and the CLI short forms
// (toa/cp/ccp, oracle/toa/widelane, fr1/fr2, los/nlos-s/nlos-d).
Method parse_method(std::string_view s);
AmbiguityMode parse_ambiguity(std::string_view s);
Band parse_band(std::string_view s);
ScenarioKind parse_profile(std::string_view s);

// Channel profile fields left unset fall back to default_profile(kind).
struct ProfileOverrides {
    std::optional<double> rician_k_db;
    std::optional<double> rms_delay_spread_s;
    std::optional<int> n_clutter_taps;
    std::optional<double> nlos_excess_delay_mean_s;
    std::optional<double> path_loss_exponent;

    bool operator==(const ProfileOverrides&) const = default;
};

struct ScenarioConfig {
    Band band = Band::FR1;
    ScenarioKind profile = ScenarioKind::InfLos;
    double snr_db = 10.0;
    int n_trials = 200;
    std::vector<Method> methods{Method::Toa, Method::CarrierPhase, Method::ContinuousCarrierPhase};
    int ccp_sweeps = 1000;
    int ccp_shift = 1;
    Vec3 gnb_pos{100.0, 100.0, 15.0};
    Vec3 ue_pos{120.0, 100.0, 1.5};
    std::uint64_t master_seed = 1;
    AmbiguityMode ambiguity = AmbiguityMode::Oracle;
    std::optional<double> widelane_second_fc_hz;

    // PRS layout.
    int comb_size = 6;
    int comb_offset = 0;
    int prs_symbols = 1;
    int replication_periods = 3;

    // Measurement and ambiguity knobs.
    double toa_peak_threshold = 0.6;
    double toa_sigma_s = 2e-9;
    double k_sigma = 3.0;
    double widelane_refine_fraction = 0.25;
    double ue_speed_mps = 0.0;           // > 0 applies the Doppler offset; off by default

    ProfileOverrides channel;

    Geometry geometry() const { return make_geometry(gnb_pos, ue_pos); }
    NumerologyConfig numerology() const { return make_numerology(band); }
    ScenarioProfile channel_profile() const;
    bool has_method(Method m) const;

    // Throws ConfigError describing the first violated constraint.
    void validate() const;

    bool operator==(const ScenarioConfig&) const = default;
};

struct MethodOutcome {
    Method method = Method::Toa;
    std::optional<double> distance_error_m;       // estimate - truth, signed
    std::optional<double> phase_rad;              // CP / CCP only
    std::optional<std::int64_t> resolved_integer;
    std::optional<std::int64_t> oracle_integer;
    bool ia_failure = false;          // no consistent integer; excluded from the CDF
    bool ia_wrong_integer = false;    // resolved, but not to the oracle integer
    bool no_signal = false;
};

struct TrialResult {
    std::size_t trial_index = 0;
    std::uint64_t seed = 0;
    double true_distance_m = 0.0;
    // Noiseless phase of the channel at the measured subcarrier (multipath included).
    double channel_phase_rad = 0.0;
    std::vector<MethodOutcome> outcomes;

    const MethodOutcome* find(Method m) const;
};

// Runs cfg.n_trials independent trials on `workers` threads. Trial t is
// seeded by split_seed(master_seed, t), so results do not depend on the
// worker count. Throws ConfigError before any work when cfg is invalid.
std::vector<TrialResult> run_scenario(const ScenarioConfig& cfg, unsigned workers = 1);

TrialResult run_trial(const ScenarioConfig& cfg, std::size_t trial_index);

struct Percentiles {
    double p50 = 0.0;
    double p67 = 0.0;
    double p90 = 0.0;
    double p95 = 0.0;

    bool operator==(const Percentiles&) const = default;
};

struct CdfResult {
    Method method = Method::Toa;
    std::vector<double> sorted_abs_errors;
    std::vector<double> cdf;                  // (i + 1) / n
    Percentiles percentiles;
    std::size_t n_trials = 0;
    std::size_t ia_failures = 0;
    std::size_t ia_wrong_integer = 0;
    std::size_t no_signal = 0;
    ScenarioConfig config;

    bool operator==(const CdfResult&) const = default;
};

// Linear interpolation between order statistics at position p * (n - 1).
double percentile_linear(std::span<const double> sorted, double p);

// Throws EmptyResultError when the method has no successful trial.
CdfResult compute_cdf(std::span<const TrialResult> results, Method method, const ScenarioConfig& cfg);

enum class OutputFormat { Csv, Json };

std::string results_to_csv(std::span<const CdfResult> cdfs);
std::string results_to_json(std::span<const CdfResult> cdfs);
std::vector<CdfResult> parse_results_json(std::string_view text);

// Throws IoError carrying the path on failure.
void emit_results(std::span<const CdfResult> cdfs, const std::filesystem::path& path, OutputFormat format);

// Config file: a JSON object whose keys mirror ScenarioConfig field names.
// Unknown keys are rejected with ConfigError.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ScenarioConfig& cfg);

} // namespace ccpsim

#endif
