// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ucalos/jacobi_svd.hpp"
#include "ucalos/spectrum.hpp"

namespace ucalos {

void TrialConfig::validate() const
{
    auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (n_trials < 1) fail("n_trials must be >= 1");
    if (!(angle_range_small >= 0.0) || angle_range_small >= kPi / 2)
        fail("angle_range_small must lie in [0, pi/2)");
    if (!(theta_cs_range >= 0.0) || theta_cs_range > kPi) fail("theta_cs_range must lie in [0, pi]");
    if (!std::isfinite(snr_db)) fail("snr_db must be finite");
    if (!(noise > 0.0)) fail("noise must be positive");
    if (!(wavelength > 0.0)) fail("wavelength must be positive");
    if (!(design_distance > 0.0)) fail("design_distance must be positive");
    if (distances.empty()) fail("distances must not be empty");
    for (double d : distances)
        if (!(d > 0.0)) fail("distances must be positive");
    if (n_antennas_list.empty()) fail("n_antennas_list must not be empty");
    for (int n : n_antennas_list)
        if (n < 2 || n % 2 != 0) fail("n_antennas must be an even integer >= 2, got " + std::to_string(n));
    if (l1_bits < 0 || l2_bits < 0 || l1_bits + l2_bits > 30) fail("codebook bits must lie in 0..30");
    if (!(phi_range.hi > phi_range.lo) || phi_range.lo <= -kPi / 2 || phi_range.hi >= kPi / 2)
        fail("phi_range must be a non-empty interval inside (-pi/2, pi/2)");
    if (jobs < 1) fail("jobs must be >= 1");
}

std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t trial)
{
    // splitmix64 finalizer over a golden-ratio stride.
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

namespace {

double symmetric(std::mt19937_64& gen, double half_width)
{
    const double u = uniform01(gen);
    if (half_width == 0.0) return 0.0;
    return half_width * (2.0 * u - 1.0);
}

template <typename Fn>
void parallel_for(int count, int jobs, Fn&& fn)
{
    const int workers = std::clamp(jobs, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < count && !failed; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct ChannelState {
    ChannelMatrix h;
    SvdTriple svd;
    double cond = 0.0;
};

ChannelState make_channel(const ArrayConfig& arr, const Misalignment& mis, const TrialConfig& cfg)
{
    ChannelState s{build_channel(arr, mis, cfg.model, cfg.approx), {}, 0.0};
    s.svd = cfg.model == ChannelModel::approximate ? closed_form_svd(arr, mis, cfg.approx)
                                                   : numerical_svd(s.h.entries);
    s.cond = condition_number(s.svd.sigma);
    return s;
}

PowerAllocation selection_powers(const ArrayConfig& arr, const Misalignment& mis, const TrialConfig& cfg)
{
    if (cfg.selection_power == SelectionPower::approximate)
        return approx_power_allocation(arr, cfg.snr_db, cfg.noise);
    return water_fill(singular_values(arr.n_antennas, arr.rpdr(), mis.theta_o),
                      db_to_linear(cfg.snr_db) * cfg.noise, cfg.noise);
}

const std::vector<Scheme> kSweepSchemes{Scheme::capacity, Scheme::optimal_precoder, Scheme::codebook,
                                        Scheme::identity, Scheme::zf,       Scheme::zf_sic};

void append_aggregates(std::vector<ResultRow>& rows, std::size_t first, int n_trials)
{
    // Trial rows from `first` onward share scenario/N/D; group them by scheme.
    std::vector<ResultRow> means;
    for (std::size_t i = first; i < rows.size(); ++i) {
        auto it = std::find_if(means.begin(), means.end(),
                               [&](const ResultRow& m) { return m.scheme == rows[i].scheme; });
        if (it == means.end()) {
            ResultRow m = rows[i];
            m.trial = -1;
            m.rate_bps_hz = 0.0;
            m.cond_number = 0.0;
            means.push_back(m);
            it = means.end() - 1;
        }
        it->rate_bps_hz += rows[i].rate_bps_hz;
        it->cond_number += rows[i].cond_number;
    }
    for (ResultRow& m : means) {
        m.rate_bps_hz /= n_trials;
        m.cond_number /= n_trials;
        rows.push_back(m);
    }
}

}  // namespace

Misalignment draw_misalignment(std::mt19937_64& gen, const TrialConfig& cfg, int n_antennas)
{
    double theta_o = symmetric(gen, cfg.angle_range_small);
    const double theta_cs = symmetric(gen, cfg.theta_cs_range);
    const double phi_cs = symmetric(gen, cfg.angle_range_small);
    const double phi_x = symmetric(gen, cfg.angle_range_small);
    const double phi_y = symmetric(gen, cfg.angle_range_small);
    const double bound = kPi / n_antennas;
    theta_o = std::clamp(theta_o, -bound, bound);
    return Misalignment::make(n_antennas, theta_o, theta_cs, phi_cs, phi_x, phi_y, AnglePolicy::wrap);
}

ArrayConfig design_config(const TrialConfig& cfg, int n_antennas)
{
    const DesignResult d =
        design_arrays(n_antennas, cfg.snr_db, 0.0, cfg.wavelength, cfg.design_distance);
    ArrayConfig arr;
    arr.n_antennas = n_antennas;
    arr.wavelength = cfg.wavelength;
    arr.radius_tx = d.radius_equal;
    arr.radius_rx = d.radius_equal;
    arr.distance = cfg.design_distance;
    return arr;
}

std::vector<ResultRow> run_rate_sweep(const TrialConfig& cfg)
{
    cfg.validate();
    const double p_total = db_to_linear(cfg.snr_db) * cfg.noise;
    const Codebook cb = build_codebook(cfg.l1_bits, cfg.l2_bits, cfg.phi_range, cfg.quantization);

    std::vector<ResultRow> rows;
    for (int ns : cfg.n_antennas_list) {
        ArrayConfig arr = design_config(cfg, ns);
        for (double dist : cfg.distances) {
            arr.distance = dist;
            arr.validate();
            std::vector<std::vector<ResultRow>> per_trial(cfg.n_trials);
            parallel_for(cfg.n_trials, cfg.jobs, [&](int trial) {
                std::mt19937_64 gen = trial_generator(cfg.seed, static_cast<std::uint64_t>(trial));
                const Misalignment mis = draw_misalignment(gen, cfg, ns);
                const ChannelState ch = make_channel(arr, mis, cfg);
                const CMatrix& h = ch.h.entries;

                const PowerAllocation exact = water_fill(ch.svd.sigma, p_total, cfg.noise);
                const PowerAllocation approx = selection_powers(arr, mis, cfg);

                std::vector<double> rate(kSweepSchemes.size());
                rate[0] = rate_with_powers(ch.svd.sigma, exact.powers, cfg.noise);
                rate[1] = achievable_rate(h, ch.svd.v, exact.powers, cfg.noise).rate;
                rate[2] = select_codebook_index(ch.h, cb, approx).rate;
                rate[3] = achievable_rate(h, dft_precoder(ns).matrix, approx.powers, cfg.noise).rate;
                rate[4] = zf_rate(h, p_total, cfg.noise).rate;
                rate[5] = zf_sic_rate(h, p_total, cfg.noise, cfg.sic).rate;

                for (std::size_t s = 0; s < kSweepSchemes.size(); ++s)
                    per_trial[trial].push_back({"rate_sweep", ns, dist, scheme_name(kSweepSchemes[s]),
                                                trial, rate[s], arr.rpdr(), ch.cond});
            });
            const std::size_t first = rows.size();
            for (auto& t : per_trial) rows.insert(rows.end(), t.begin(), t.end());
            append_aggregates(rows, first, cfg.n_trials);
        }
    }
    return rows;
}

std::vector<BitAllocation> default_bit_grid(int l_min, int l_max)
{
    std::vector<BitAllocation> grid;
    for (int l = l_min; l <= l_max; ++l) {
        if (l < 3) continue;
        grid.push_back({l - 3, 3});
        if (l != 6) grid.push_back({3, l - 3});
    }
    return grid;
}

std::vector<ResultRow> run_codebook_bit_sweep(const TrialConfig& cfg,
                                              const std::vector<BitAllocation>& bit_grid)
{
    cfg.validate();
    if (bit_grid.empty()) throw std::invalid_argument("bit grid must not be empty");
    const int ns = cfg.n_antennas_list.front();
    ArrayConfig arr = design_config(cfg, ns);
    arr.distance = cfg.distances.front();
    arr.validate();

    struct Variant {
        std::string scenario;
        Codebook cb;
    };
    std::vector<Variant> variants;
    for (Quantization q : {Quantization::sine_uniform, Quantization::linear}) {
        for (const BitAllocation& b : bit_grid) {
            const std::string name = std::string("bit_sweep/") +
                                     (q == Quantization::sine_uniform ? "sine" : "linear") +
                                     "/L1=" + std::to_string(b.l1_bits) +
                                     "/L2=" + std::to_string(b.l2_bits);
            variants.push_back({name, build_codebook(b.l1_bits, b.l2_bits, cfg.phi_range, q)});
        }
    }

    std::vector<std::vector<double>> rates(cfg.n_trials, std::vector<double>(variants.size()));
    std::vector<double> conds(cfg.n_trials);
    parallel_for(cfg.n_trials, cfg.jobs, [&](int trial) {
        std::mt19937_64 gen = trial_generator(cfg.seed, static_cast<std::uint64_t>(trial));
        const Misalignment mis = draw_misalignment(gen, cfg, ns);
        const ChannelState ch = make_channel(arr, mis, cfg);
        const PowerAllocation p = selection_powers(arr, mis, cfg);
        conds[trial] = ch.cond;
        for (std::size_t v = 0; v < variants.size(); ++v)
            rates[trial][v] = select_codebook_index(ch.h, variants[v].cb, p).rate;
    });

    std::vector<ResultRow> rows;
    for (std::size_t v = 0; v < variants.size(); ++v) {
        const std::size_t first = rows.size();
        for (int t = 0; t < cfg.n_trials; ++t)
            rows.push_back({variants[v].scenario, ns, arr.distance, "codebook", t, rates[t][v],
                            arr.rpdr(), conds[t]});
        append_aggregates(rows, first, cfg.n_trials);
    }
    return rows;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows)
{
    os << kCsvHeader << '\n';
    char buf[256];
    for (const ResultRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%s,%d,%.9g,%.9g,%.9g", r.n_antennas, r.distance_m,
                      r.scheme.c_str(), r.trial, r.rate_bps_hz, r.beta, r.cond_number);
        os << r.scenario << ',' << buf << '\n';
    }
}

double aggregate_rate(const std::vector<ResultRow>& rows, const std::string& scenario,
                      int n_antennas, double distance, const std::string& scheme)
{
    for (const ResultRow& r : rows)
        if (r.trial == -1 && r.scenario == scenario && r.n_antennas == n_antennas &&
            r.distance_m == distance && r.scheme == scheme)
            return r.rate_bps_hz;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace ucalos
