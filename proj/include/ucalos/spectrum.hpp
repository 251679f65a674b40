// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <span>
#include <vector>

#include "ucalos/common.hpp"

namespace ucalos {

/// sigma_k(beta, theta_o) for the DFT eigen-mode k (1-based):
/// | sum_i exp(-j {2 pi i (k-1) / N_s - beta cos(2 pi i / N_s + theta_o)}) |.
double singular_value(int n_s, double beta, double theta_o, int k);

/// All N_s values in DFT-index order.
RVector singular_values(int n_s, double beta, double theta_o);

struct SpectrumPoint {
    double beta = 0.0;
    double theta_o = 0.0;
    RVector sigmas;
};

/// Spectrum along a beta grid at fixed rotation, in grid order.
std::vector<SpectrumPoint> spectrum_sweep(int n_s, double theta_o, std::span<const double> beta_grid);

/// Spectrum along a rotation grid at fixed beta, in grid order.
std::vector<SpectrumPoint> rotation_sweep(int n_s, double beta, std::span<const double> theta_grid);

/// Upper end of the beta range on which sigma_1 is the largest value:
/// pi N_s / (4 sum_i |cos(2 pi i / N_s + theta_o)|).
double dominance_bound(int n_s, double theta_o);

struct SubCheck {
    bool holds = true;
    bool vacuous = false;  ///< the hypothesis did not apply at this point
    double residual = 0.0; ///< worst violation magnitude observed
};

/// Structural properties of the aligned spectrum at one (beta, theta_o):
/// pairing sigma_k = sigma_{N+2-k}; sigma_1 dominance below
/// dominance_bound(); the beta -> 0 limit (evaluated when beta <= 1e-8);
/// mirror symmetry in theta_o; and the null of mode N/2+1 at
/// theta_o = +-pi/N_s.
struct SpectrumStructureReport {
    SubCheck pairing;
    SubCheck dominance;
    SubCheck small_beta;
    SubCheck mirror;
    SubCheck null_mode;

    bool all_hold() const
    {
        return pairing.holds && dominance.holds && small_beta.holds && mirror.holds && null_mode.holds;
    }
};

struct SpectrumStructureTolerances {
    double identity = 1e-10;
    double limit = 1e-6;
    double small_beta = 1e-8;
};

SpectrumStructureReport check_spectrum_structure(int n_s, double beta, double theta_o, SpectrumStructureTolerances tol = {});

}  // namespace ucalos
