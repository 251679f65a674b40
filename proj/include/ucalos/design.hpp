// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "ucalos/common.hpp"

namespace ucalos {

/// Per-stream powers from water-filling. `water_level` is the common
/// mu = p_k + N_o / sigma_k^2 of the active streams.
struct PowerAllocation {
    RVector powers;
    double total = 0.0;
    double noise = 1.0;
    double water_level = 0.0;
};

/// Capacity-optimal allocation of `p_total` over parallel channels with
/// gains sigma_k^2. Exact: sorts N_o / sigma_k^2 and scans active-set sizes.
/// Zero gains are never active. Throws std::invalid_argument if every sigma
/// is zero or the budget/noise is not positive.
PowerAllocation water_fill(const RVector& sigmas, double p_total, double noise);

/// sum_k log2(1 + p_k sigma_k^2 / N_o).
double rate_with_powers(const RVector& sigmas, const RVector& powers, double noise);

/// Water-filled capacity in bits/s/Hz.
double capacity(const RVector& sigmas, double p_total, double noise);

/// Capacity of the aligned spectrum sigma(beta, theta_o) at total SNR
/// P_T / N_o given in dB.
double spectrum_capacity(int n_s, double beta, double theta_o, double snr_db);

struct BetaSearchOptions {
    double beta_max = 14.0;
    double resolution = 0.01;
    double refine_tolerance = 1e-4;
    /// Grid peaks within this many bits of the grid maximum are refined.
    double candidate_window = 0.05;
    /// Refined peaks within this many bits of the best count as ties; the
    /// smallest beta among them wins.
    double tie_tolerance = 1e-6;
};

struct DesignResult {
    double beta_opt = 0.0;
    double capacity = 0.0;
    double condition_number = 0.0;
    double radii_product = std::numeric_limits<double>::quiet_NaN();
    double radius_equal = std::numeric_limits<double>::quiet_NaN();
};

/// Grid scan of the capacity over (0, beta_max] followed by golden-section
/// refinement of every competitive grid peak.
DesignResult search_beta_opt(int n_s, double theta_o, double snr_db, BetaSearchOptions opts = {});

struct RadiiSolution {
    double product = 0.0;       ///< R_t R_r = beta lambda D / (2 pi)
    double radius_equal = 0.0;  ///< sqrt(product), for R_t = R_r
};

RadiiSolution radii_from_beta(double beta, double wavelength, double distance);

/// search_beta_opt plus the radii realizing beta_opt at (lambda, D).
DesignResult design_arrays(int n_s, double snr_db, double theta_o, double wavelength,
                           double distance, BetaSearchOptions opts = {});

/// max_k sigma_k / min_k sigma_k; +infinity when the smallest value is zero
/// relative to the largest.
double condition_number(const RVector& sigmas);
double condition_number(int n_s, double beta, double theta_o);

struct CurvePoint {
    double beta;
    double capacity;
};

/// Capacity against beta on the grid res, 2 res, ..., beta_max.
std::vector<CurvePoint> capacity_curve(int n_s, double theta_o, double snr_db, double beta_max,
                                       double resolution);

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
/// Returns the best abscissa visited.
double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance, int max_iterations = 200);

}  // namespace ucalos
