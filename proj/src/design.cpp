// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ucalos/spectrum.hpp"

namespace ucalos {

PowerAllocation water_fill(const RVector& sigmas, double p_total, double noise)
{
    if (!(p_total > 0.0) || !(noise > 0.0))
        throw std::invalid_argument("water_fill: power budget and noise must be positive");
    const Eigen::Index n = sigmas.size();

    std::vector<Eigen::Index> active;
    for (Eigen::Index k = 0; k < n; ++k) {
        if (sigmas(k) < 0.0 || !std::isfinite(sigmas(k)))
            throw std::invalid_argument("water_fill: singular values must be finite and >= 0");
        if (sigmas(k) > 0.0) active.push_back(k);
    }
    if (active.empty()) throw std::invalid_argument("water_fill: all singular values are zero");

    auto floor_of = [&](Eigen::Index k) { return noise / (sigmas(k) * sigmas(k)); };
    std::stable_sort(active.begin(), active.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return floor_of(a) < floor_of(b); });

    // Largest active set whose water level clears its highest floor.
    double mu = 0.0;
    std::size_t count = active.size();
    for (; count > 0; --count) {
        double sum = 0.0;
        for (std::size_t i = 0; i < count; ++i) sum += floor_of(active[i]);
        mu = (p_total + sum) / static_cast<double>(count);
        if (mu > floor_of(active[count - 1])) break;
    }

    PowerAllocation out;
    out.powers = RVector::Zero(n);
    out.total = p_total;
    out.noise = noise;
    out.water_level = mu;
    for (std::size_t i = 0; i < count; ++i) out.powers(active[i]) = mu - floor_of(active[i]);
    return out;
}

double rate_with_powers(const RVector& sigmas, const RVector& powers, double noise)
{
    double c = 0.0;
    for (Eigen::Index k = 0; k < sigmas.size(); ++k)
        c += std::log2(1.0 + powers(k) * sigmas(k) * sigmas(k) / noise);
    return c;
}

double capacity(const RVector& sigmas, double p_total, double noise)
{
    return rate_with_powers(sigmas, water_fill(sigmas, p_total, noise).powers, noise);
}

double spectrum_capacity(int n_s, double beta, double theta_o, double snr_db)
{
    return capacity(singular_values(n_s, beta, theta_o), db_to_linear(snr_db), 1.0);
}

double golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                               double tolerance, int max_iterations)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iterations && (b - a) > tolerance; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

DesignResult search_beta_opt(int n_s, double theta_o, double snr_db, BetaSearchOptions opts)
{
    if (!(opts.beta_max > 0.0) || !(opts.resolution > 0.0))
        throw std::invalid_argument("search_beta_opt: beta_max and resolution must be positive");

    const auto steps = static_cast<int>(std::floor(opts.beta_max / opts.resolution + 1e-9));
    if (steps < 1) throw std::invalid_argument("search_beta_opt: resolution exceeds beta_max");

    auto cap = [&](double b) { return spectrum_capacity(n_s, b, theta_o, snr_db); };

    std::vector<double> grid(steps);
    std::vector<double> values(steps);
    for (int j = 0; j < steps; ++j) {
        grid[j] = (j + 1) * opts.resolution;
        values[j] = cap(grid[j]);
    }
    const double grid_best = *std::max_element(values.begin(), values.end());

    struct Peak {
        double beta;
        double capacity;
    };
    std::vector<Peak> peaks;
    for (int j = 0; j < steps; ++j) {
        const bool left = j == 0 || values[j] >= values[j - 1];
        const bool right = j + 1 == steps || values[j] >= values[j + 1];
        if (!left || !right || values[j] < grid_best - opts.candidate_window) continue;

        const double lo = std::max(grid[j] - opts.resolution, 0.5 * opts.resolution);
        const double hi = std::min(grid[j] + opts.resolution, opts.beta_max);
        const double b = golden_section_maximize(cap, lo, hi, opts.refine_tolerance);
        const double c = cap(b);
        peaks.push_back(c >= values[j] ? Peak{b, c} : Peak{grid[j], values[j]});
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const Peak& p : peaks) best = std::max(best, p.capacity);
    Peak chosen{std::numeric_limits<double>::infinity(), 0.0};
    for (const Peak& p : peaks)
        if (p.capacity >= best - opts.tie_tolerance && p.beta < chosen.beta) chosen = p;

    DesignResult r;
    r.beta_opt = chosen.beta;
    r.capacity = chosen.capacity;
    r.condition_number = condition_number(n_s, chosen.beta, theta_o);
    return r;
}

RadiiSolution radii_from_beta(double beta, double wavelength, double distance)
{
    if (!(beta > 0.0) || !(wavelength > 0.0) || !(distance > 0.0))
        throw std::invalid_argument("radii_from_beta: inputs must be positive");
    RadiiSolution r;
    r.product = beta * wavelength * distance / kTwoPi;
    r.radius_equal = std::sqrt(r.product);
    return r;
}

DesignResult design_arrays(int n_s, double snr_db, double theta_o, double wavelength,
                           double distance, BetaSearchOptions opts)
{
    DesignResult r = search_beta_opt(n_s, theta_o, snr_db, opts);
    const RadiiSolution radii = radii_from_beta(r.beta_opt, wavelength, distance);
    r.radii_product = radii.product;
    r.radius_equal = radii.radius_equal;
    return r;
}

double condition_number(const RVector& sigmas)
{
    const double hi = sigmas.maxCoeff();
    const double lo = sigmas.minCoeff();
    if (lo <= 1e-12 * hi) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

double condition_number(int n_s, double beta, double theta_o)
{
    return condition_number(singular_values(n_s, beta, theta_o));
}

std::vector<CurvePoint> capacity_curve(int n_s, double theta_o, double snr_db, double beta_max,
                                       double resolution)
{
    if (!(beta_max > 0.0) || !(resolution > 0.0))
        throw std::invalid_argument("capacity_curve: beta_max and resolution must be positive");
    const auto steps = static_cast<int>(std::floor(beta_max / resolution + 1e-9));
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
    for (int j = 1; j <= steps; ++j) {
        const double b = j * resolution;
        out.push_back({b, spectrum_capacity(n_s, b, theta_o, snr_db)});
    }
    return out;
}

}  // namespace ucalos
