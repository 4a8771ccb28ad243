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

#include "ccpsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "ccpsim/ambiguity.hpp"
#include "ccpsim/errors.hpp"
#include "ccpsim/receiver.hpp"
#include "ccpsim/rng.hpp"

namespace ccpsim {
namespace {

// Sub-stream ids under each trial seed.
enum Stream : std::uint64_t {
    kPrsStream = 1,
    kChannelStream = 2,
    kToaNoiseStream = 3,
    kPhaseNoiseStream = 4,
    kSecondCarrierNoiseStream = 5,
};

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

struct PhasePair {
    std::optional<PhaseMeasurement> primary;
    std::optional<PhaseMeasurement> second;   // widelane carrier
};

} // namespace

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::Toa: return "TOA";
    case Method::CarrierPhase: return "CP";
    case Method::ContinuousCarrierPhase: return "CCP";
    }
    return "?";
}

std::string_view to_string(AmbiguityMode m)
{
    switch (m) {
    case AmbiguityMode::Oracle: return "Oracle";
    case AmbiguityMode::ToaBound: return "ToaBound";
    case AmbiguityMode::Widelane: return "Widelane";
    }
    return "?";
}

std::string_view to_string(Band b)
{
    return b == Band::FR1 ? "FR1" : "FR2";
}

Method parse_method(std::string_view s)
{
    const auto v = lower(s);
    if (v == "toa") return Method::Toa;
    if (v == "cp") return Method::CarrierPhase;
    if (v == "ccp") return Method::ContinuousCarrierPhase;
    throw ConfigError("unknown method '" + std::string(s) + "'");
}

AmbiguityMode parse_ambiguity(std::string_view s)
{
    const auto v = lower(s);
    if (v == "oracle") return AmbiguityMode::Oracle;
    if (v == "toa" || v == "toabound") return AmbiguityMode::ToaBound;
    if (v == "widelane") return AmbiguityMode::Widelane;
    throw ConfigError("unknown ambiguity mode '" + std::string(s) + "'");
}

Band parse_band(std::string_view s)
{
    const auto v = lower(s);
    if (v == "fr1") return Band::FR1;
    if (v == "fr2") return Band::FR2;
    throw ConfigError("unknown band '" + std::string(s) + "'");
}

ScenarioKind parse_profile(std::string_view s)
{
    const auto v = lower(s);
    if (v == "los" || v == "inf-los") return ScenarioKind::InfLos;
    if (v == "nlos-s" || v == "inf-nlos-s") return ScenarioKind::InfNlosSparse;
    if (v == "nlos-d" || v == "inf-nlos-d") return ScenarioKind::InfNlosDense;
    throw ConfigError("unknown profile '" + std::string(s) + "'");
}

ScenarioProfile ScenarioConfig::channel_profile() const
{
    auto p = default_profile(profile);
    if (channel.rician_k_db) p.rician_k_db = *channel.rician_k_db;
    if (channel.rms_delay_spread_s) p.rms_delay_spread_s = *channel.rms_delay_spread_s;
    if (channel.n_clutter_taps) p.n_clutter_taps = *channel.n_clutter_taps;
    if (channel.nlos_excess_delay_mean_s) p.nlos_excess_delay_mean_s = *channel.nlos_excess_delay_mean_s;
    if (channel.path_loss_exponent) p.path_loss_exponent = *channel.path_loss_exponent;
    return p;
}

bool ScenarioConfig::has_method(Method m) const
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

void ScenarioConfig::validate() const
{
    if (n_trials <= 0)
        throw ConfigError("n_trials must be positive");
    if (methods.empty())
        throw ConfigError("methods must not be empty");
    for (std::size_t i = 0; i < methods.size(); ++i)
        for (std::size_t j = i + 1; j < methods.size(); ++j)
            if (methods[i] == methods[j])
                throw ConfigError("methods contains duplicates");
    if (std::isnan(snr_db) || (std::isinf(snr_db) && snr_db < 0.0))
        throw ConfigError("snr_db must be a number or +inf");
    if (ccp_sweeps <= 0)
        throw ConfigError("ccp_sweeps must be positive");
    if (ccp_shift <= 0)
        throw ConfigError("ccp_shift must be positive");
    if (replication_periods <= 0)
        throw ConfigError("replication_periods must be positive");
    if (prs_symbols <= 0)
        throw ConfigError("prs_symbols must be positive");
    PrsConfig{comb_size, comb_offset, prs_symbols, 0}.validate();
    if (!(toa_peak_threshold > 0.0 && toa_peak_threshold <= 1.0))
        throw ConfigError("toa_peak_threshold must lie in (0, 1]");
    if (!(toa_sigma_s > 0.0))
        throw ConfigError("toa_sigma_s must be positive");
    if (!(k_sigma > 0.0))
        throw ConfigError("k_sigma must be positive");
    if (!(widelane_refine_fraction > 0.0))
        throw ConfigError("widelane_refine_fraction must be positive");
    if (!(ue_speed_mps >= 0.0))
        throw ConfigError("ue_speed_mps must be nonnegative");

    try {
        (void)geometry();
    } catch (const DegenerateGeometryError& e) {
        throw ConfigError(e.what());
    }
    channel_profile().validate();

    const auto num = numerology();
    const std::int64_t needed = static_cast<std::int64_t>(ccp_sweeps - 1) * ccp_shift + num.n_fft;
    if ((has_method(Method::CarrierPhase) || has_method(Method::ContinuousCarrierPhase)) &&
        needed > static_cast<std::int64_t>(replication_periods) * num.n_fft)
        throw ConfigError("ccp sweep needs " + std::to_string(needed) + " samples but " +
                          std::to_string(replication_periods) + " replicated periods hold " +
                          std::to_string(replication_periods * num.n_fft));

    if (ambiguity == AmbiguityMode::Widelane) {
        if (!widelane_second_fc_hz)
            throw ConfigError("ambiguity Widelane requires widelane_second_fc_hz");
        if (!(*widelane_second_fc_hz > 0.0))
            throw ConfigError("widelane_second_fc_hz must be positive");
        if (*widelane_second_fc_hz == num.carrier_frequency_hz)
            throw ConfigError("widelane_second_fc_hz must differ from the band carrier");
    }
}

const MethodOutcome* TrialResult::find(Method m) const
{
    for (const auto& o : outcomes)
        if (o.method == m)
            return &o;
    return nullptr;
}

TrialResult run_trial(const ScenarioConfig& cfg, std::size_t trial_index)
{
    const std::uint64_t seed = split_seed(cfg.master_seed, trial_index);
    const auto num = cfg.numerology();
    const auto geo = cfg.geometry();
    const double d = geo.true_distance_m;

    const PrsConfig prs{cfg.comb_size, cfg.comb_offset, cfg.prs_symbols, split_seed(seed, kPrsStream)};
    const auto grid = generate_prs_grid(prs, num);
    const auto ch = draw_channel(cfg.channel_profile(), geo, split_seed(seed, kChannelStream));

    const int k = middle_subcarrier(grid, 0);
    const double f_eff = num.carrier_frequency_hz + k * num.scs_hz;

    TrialResult result;
    result.trial_index = trial_index;
    result.seed = seed;
    result.true_distance_m = d;
    result.channel_phase_rad = wrap_to_pi(std::arg(ch.frequency_response(f_eff)));

    auto propagate = [&](const BasebandStream& tx, std::uint64_t noise_stream) {
        auto rx = apply_channel(tx, ch);
        if (cfg.ue_speed_mps > 0.0)
            rx = apply_frequency_offset(rx, tx.carrier_frequency_hz * doppler_ppm(cfg.ue_speed_mps) * 1e-6);
        return add_awgn(rx, cfg.snr_db, split_seed(seed, noise_stream));
    };

    // Timing on the conventional waveform.
    std::optional<ToaMeasurement> toa;
    bool toa_no_signal = false;
    if (cfg.has_method(Method::Toa) || cfg.ambiguity != AmbiguityMode::Oracle) {
        const auto tx = ofdm_modulate(grid, OfdmMode::Conventional);
        const auto rx = propagate(tx, kToaNoiseStream);
        try {
            ToaOptions opts;
            opts.peak_threshold = cfg.toa_peak_threshold;
            toa = estimate_toa(rx, tx, opts);
        } catch (const NoSignalError&) {
            toa_no_signal = true;
        }
    }
    if (cfg.has_method(Method::Toa)) {
        MethodOutcome o;
        o.method = Method::Toa;
        o.no_signal = toa_no_signal;
        if (toa)
            o.distance_error_m = kSpeedOfLight * toa->toa_s - d;
        result.outcomes.push_back(o);
    }

    const bool want_cp = cfg.has_method(Method::CarrierPhase);
    const bool want_ccp = cfg.has_method(Method::ContinuousCarrierPhase);
    if (!want_cp && !want_ccp)
        return result;

    // Phase on the continuous waveform: the first symbol's useful part,
    // replicated, carried through the same channel realization.
    const auto tx_cont = ofdm_modulate(grid, OfdmMode::Continuous);
    const auto block = replicate_symbol(tx_cont, num, 0, cfg.replication_periods);
    const auto rx1 = propagate(block, kPhaseNoiseStream);

    std::optional<BasebandStream> rx2;
    std::optional<NumerologyConfig> num2;
    if (cfg.ambiguity == AmbiguityMode::Widelane) {
        num2 = num;
        num2->carrier_frequency_hz = *cfg.widelane_second_fc_hz;
        auto block2 = block;
        block2.carrier_frequency_hz = *cfg.widelane_second_fc_hz;
        rx2 = propagate(block2, kSecondCarrierNoiseStream);
    }

    auto measure = [&](Method m, const BasebandStream& rx, const NumerologyConfig& n) {
        if (m == Method::CarrierPhase)
            return extract_phase(rx, n, 0, k, grid, 0);
        return ccp_measure(rx, n, k, cfg.ccp_sweeps, cfg.ccp_shift, grid, 0);
    };

    for (Method m : {Method::CarrierPhase, Method::ContinuousCarrierPhase}) {
        if (!cfg.has_method(m))
            continue;
        MethodOutcome o;
        o.method = m;
        const auto phase = measure(m, rx1, num);
        o.phase_rad = phase.phase_rad;

        const auto frac = phase_to_fraction(phase.phase_rad, f_eff);
        const auto oracle = resolve_with_known_distance(frac.fractional_cycles, frac.wavelength_m, d);
        o.oracle_integer = oracle.integer_cycles;

        std::optional<CarrierRange> range;
        switch (cfg.ambiguity) {
        case AmbiguityMode::Oracle:
            range = oracle;
            break;
        case AmbiguityMode::ToaBound:
            if (!toa) {
                o.no_signal = true;
            } else if (toa->toa_s <= 0.0) {
                o.ia_failure = true;
            } else {
                try {
                    range = ia_search_toa(frac.fractional_cycles, frac.wavelength_m, toa->toa_s, cfg.toa_sigma_s,
                                          cfg.k_sigma);
                } catch (const AmbiguityUnresolvableError&) {
                    o.ia_failure = true;
                }
            }
            break;
        case AmbiguityMode::Widelane:
            if (!toa) {
                o.no_signal = true;
            } else {
                const auto phase2 = measure(m, *rx2, *num2);
                const auto frac2 = phase_to_fraction(phase2.phase_rad, num2->carrier_frequency_hz + k * num.scs_hz);
                try {
                    WidelaneOptions wl;
                    wl.k_sigma = cfg.k_sigma;
                    wl.refine_fraction = cfg.widelane_refine_fraction;
                    range = widelane_resolve(frac.fractional_cycles, frac2.fractional_cycles, frac.wavelength_m,
                                             frac2.wavelength_m, kSpeedOfLight * toa->toa_s,
                                             kSpeedOfLight * cfg.toa_sigma_s, wl)
                                .refined;
                } catch (const AmbiguityUnresolvableError&) {
                    o.ia_failure = true;
                }
            }
            break;
        }
        if (range) {
            o.resolved_integer = range->integer_cycles;
            o.distance_error_m = *range->distance_m - d;
            o.ia_wrong_integer = range->integer_cycles != oracle.integer_cycles;
        }
        result.outcomes.push_back(o);
    }
    return result;
}

std::vector<TrialResult> run_scenario(const ScenarioConfig& cfg, unsigned workers)
{
    cfg.validate();
    const auto n = static_cast<std::size_t>(cfg.n_trials);
    std::vector<TrialResult> results(n);

    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(n)));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t t = next++; t < n; t = next++) {
            try {
                results[t] = run_trial(cfg, t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = n;
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

double percentile_linear(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        throw EmptyResultError("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError("percentile must lie in [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[hi] - sorted[lo]);
}

CdfResult compute_cdf(std::span<const TrialResult> results, Method method, const ScenarioConfig& cfg)
{
    CdfResult out;
    out.method = method;
    out.config = cfg;
    out.n_trials = results.size();

    std::vector<std::pair<std::size_t, double>> keyed;
    for (const auto& r : results) {
        const auto* o = r.find(method);
        if (!o)
            continue;
        out.ia_failures += o->ia_failure ? 1 : 0;
        out.ia_wrong_integer += o->ia_wrong_integer ? 1 : 0;
        out.no_signal += o->no_signal ? 1 : 0;
        if (o->distance_error_m)
            keyed.emplace_back(r.trial_index, std::abs(*o->distance_error_m));
    }
    if (keyed.empty())
        throw EmptyResultError("method " + std::string(to_string(method)) + " has no successful trial");

    // Trial order first so the sort input never depends on scheduling.
    std::sort(keyed.begin(), keyed.end());
    out.sorted_abs_errors.reserve(keyed.size());
    for (const auto& kv : keyed)
        out.sorted_abs_errors.push_back(kv.second);
    std::sort(out.sorted_abs_errors.begin(), out.sorted_abs_errors.end());

    const double n = static_cast<double>(out.sorted_abs_errors.size());
    out.cdf.resize(out.sorted_abs_errors.size());
    for (std::size_t i = 0; i < out.cdf.size(); ++i)
        out.cdf[i] = static_cast<double>(i + 1) / n;

    out.percentiles.p50 = percentile_linear(out.sorted_abs_errors, 0.50);
    out.percentiles.p67 = percentile_linear(out.sorted_abs_errors, 0.67);
    out.percentiles.p90 = percentile_linear(out.sorted_abs_errors, 0.90);
    out.percentiles.p95 = percentile_linear(out.sorted_abs_errors, 0.95);
    return out;
}

} // namespace ccpsim
