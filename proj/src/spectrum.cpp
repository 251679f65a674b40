// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ucalos {

namespace {

void check_even(int n_s)
{
    if (n_s < 2 || n_s % 2 != 0)
        throw std::invalid_argument("n_s must be an even integer >= 2, got " + std::to_string(n_s));
}

}  // namespace

double singular_value(int n_s, double beta, double theta_o, int k)
{
    check_even(n_s);
    if (k < 1 || k > n_s) throw std::out_of_range("singular_value: k outside 1..N_s");
    cplx acc = 0.0;
    for (int i = 0; i < n_s; ++i) {
        // (k-1) i reduced mod N_s keeps the DFT phase exact
        const double dft = kTwoPi * static_cast<double>((i * (k - 1)) % n_s) / n_s;
        const double arg = beta * std::cos(kTwoPi * i / n_s + theta_o);
        acc += std::polar(1.0, arg - dft);
    }
    return std::abs(acc);
}

RVector singular_values(int n_s, double beta, double theta_o)
{
    check_even(n_s);
    RVector s(n_s);
    for (int k = 1; k <= n_s; ++k) s(k - 1) = singular_value(n_s, beta, theta_o, k);
    return s;
}

std::vector<SpectrumPoint> spectrum_sweep(int n_s, double theta_o, std::span<const double> beta_grid)
{
    if (beta_grid.empty()) throw std::invalid_argument("spectrum_sweep: empty beta grid");
    std::vector<SpectrumPoint> out;
    out.reserve(beta_grid.size());
    for (double b : beta_grid) out.push_back({b, theta_o, singular_values(n_s, b, theta_o)});
    return out;
}

std::vector<SpectrumPoint> rotation_sweep(int n_s, double beta, std::span<const double> theta_grid)
{
    if (theta_grid.empty()) throw std::invalid_argument("rotation_sweep: empty theta grid");
    std::vector<SpectrumPoint> out;
    out.reserve(theta_grid.size());
    for (double t : theta_grid) out.push_back({beta, t, singular_values(n_s, beta, t)});
    return out;
}

double dominance_bound(int n_s, double theta_o)
{
    check_even(n_s);
    double s = 0.0;
    for (int i = 0; i < n_s; ++i) s += std::abs(std::cos(kTwoPi * i / n_s + theta_o));
    return kPi * n_s / (4.0 * s);
}

SpectrumStructureReport check_spectrum_structure(int n_s, double beta, double theta_o, SpectrumStructureTolerances tol)
{
    const RVector s = singular_values(n_s, beta, theta_o);
    SpectrumStructureReport r;

    for (int k = 2; k <= n_s; ++k)
        r.pairing.residual = std::max(r.pairing.residual, std::abs(s(k - 1) - s(n_s + 1 - k)));
    r.pairing.holds = r.pairing.residual <= tol.identity;

    if (beta <= dominance_bound(n_s, theta_o)) {
        // argmax must be mode 1: no other mode exceeds it
        for (int k = 2; k <= n_s; ++k)
            r.dominance.residual = std::max(r.dominance.residual, s(k - 1) - s(0));
        r.dominance.holds = r.dominance.residual <= tol.identity;
    } else {
        r.dominance.vacuous = true;
    }

    if (beta <= tol.small_beta) {
        r.small_beta.residual = std::abs(s(0) - n_s);
        for (int k = 2; k <= n_s; ++k) r.small_beta.residual = std::max(r.small_beta.residual, s(k - 1));
        r.small_beta.holds = r.small_beta.residual <= tol.limit;
    } else {
        r.small_beta.vacuous = true;
    }

    const RVector mirrored = singular_values(n_s, beta, -theta_o);
    r.mirror.residual = (s - mirrored).cwiseAbs().maxCoeff();
    r.mirror.holds = r.mirror.residual <= tol.identity;

    if (std::abs(std::abs(theta_o) - kPi / n_s) <= 1e-12) {
        r.null_mode.residual = s(n_s / 2);
        r.null_mode.holds = r.null_mode.residual <= tol.identity;
    } else {
        r.null_mode.vacuous = true;
    }
    return r;
}

}  // namespace ucalos
