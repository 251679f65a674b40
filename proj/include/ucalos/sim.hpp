// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "ucalos/channel.hpp"
#include "ucalos/transceiver.hpp"

namespace ucalos {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class SelectionPower {
    approximate,  ///< water-filling on the aligned spectrum
    exact,        ///< water-filling on the true spectrum
};

struct TrialConfig {
    int n_trials = 100;
    std::uint64_t seed = 1;
    /// Half-width of the uniform draws of phi_x, phi_y, phi_cs and theta_o.
    double angle_range_small = 10.0 * kPi / 180.0;
    /// Half-width of the uniform theta_cs draw.
    double theta_cs_range = kPi;
    double snr_db = 15.0;
    double noise = 1.0;
    double wavelength = kSpeedOfLight / 75e9;
    /// Radii are fixed to the optimum at this distance.
    double design_distance = 100.0;
    std::vector<double> distances{100.0, 200.0, 300.0, 400.0, 500.0};
    std::vector<int> n_antennas_list{4, 8, 12, 16};
    int l1_bits = 5;
    int l2_bits = 3;
    AngleInterval phi_range{};
    Quantization quantization = Quantization::sine_uniform;
    SelectionPower selection_power = SelectionPower::approximate;
    ChannelModel model = ChannelModel::approximate;
    ApproxOptions approx{};
    SicNulling sic = SicNulling::mmse;
    /// Worker threads; results do not depend on it.
    int jobs = 1;

    /// Throws std::invalid_argument on the first bad field.
    void validate() const;
};

/// Generator for trial `trial` of a run seeded with `seed`. Substreams are
/// independent of the order trials are executed in.
std::mt19937_64 trial_generator(std::uint64_t seed, std::uint64_t trial);

/// Uniform double on [0, 1) from the top 53 bits of one draw.
double uniform01(std::mt19937_64& gen);

/// Draws theta_o, theta_cs, phi_cs, phi_x, phi_y in that order. theta_o is
/// clamped to [-pi/N_s, pi/N_s]; a negative phi_cs is folded into theta_cs.
Misalignment draw_misalignment(std::mt19937_64& gen, const TrialConfig& cfg, int n_antennas);

struct ResultRow {
    std::string scenario;
    int n_antennas = 0;
    double distance_m = 0.0;
    std::string scheme;
    int trial = -1;  ///< -1 marks an aggregate row
    double rate_bps_hz = 0.0;
    double beta = 0.0;
    double cond_number = 0.0;
};

/// Per-trial and mean rates of every scheme over the N_s x D grid.
std::vector<ResultRow> run_rate_sweep(const TrialConfig& cfg);

struct BitAllocation {
    int l1_bits;
    int l2_bits;
};

/// (L - 3, 3) and (3, L - 3) for each total L.
std::vector<BitAllocation> default_bit_grid(int l_min = 4, int l_max = 10);

/// Codebook rates for sine-uniform and linear quantization across the
/// given bit allocations. Uses the first entry of n_antennas_list and of
/// distances.
std::vector<ResultRow> run_codebook_bit_sweep(const TrialConfig& cfg,
                                              const std::vector<BitAllocation>& bit_grid);

/// Equal-radius array pair optimized at cfg.design_distance for N_s.
ArrayConfig design_config(const TrialConfig& cfg, int n_antennas);

inline constexpr const char* kCsvHeader =
    "scenario,n_antennas,distance_m,scheme,trial,rate_bps_hz,beta,cond_number";

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);

/// Mean rate over the aggregate rows matching (scenario, N_s, D, scheme);
/// NaN if absent.
double aggregate_rate(const std::vector<ResultRow>& rows, const std::string& scenario,
                      int n_antennas, double distance, const std::string& scheme);

}  // namespace ucalos
