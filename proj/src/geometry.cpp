// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace ucalos {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) throw std::invalid_argument(what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void check_index(const ArrayConfig& cfg, int index, const char* name)
{
    if (index < 1 || index > cfg.n_antennas) {
        std::ostringstream msg;
        msg << name << " index " << index << " outside 1.." << cfg.n_antennas;
        throw std::out_of_range(msg.str());
    }
}

double wrap_pi(double a)
{
    double w = std::remainder(a, kTwoPi);
    return w;
}

// Small slack so that theta_o = +-pi/N_s computed in floating point is
// accepted by the strict policy.
constexpr double kAngleSlack = 1e-12;

}  // namespace

void ArrayConfig::validate() const
{
    require(n_antennas >= 2 && n_antennas % 2 == 0,
            "n_antennas must be an even integer >= 2, got " + std::to_string(n_antennas));
    require(positive_finite(wavelength), "wavelength must be positive");
    require(positive_finite(radius_tx), "radius_tx must be positive");
    require(positive_finite(radius_rx), "radius_rx must be positive");
    require(positive_finite(distance), "distance must be positive");
}

double ArrayConfig::rpdr() const { return kTwoPi * radius_tx * radius_rx / (wavelength * distance); }

double ArrayConfig::antenna_angle(int index) const
{
    return kTwoPi * static_cast<double>(index) / static_cast<double>(n_antennas);
}

bool ArrayConfig::far_field() const { return distance >= 10.0 * std::max(radius_tx, radius_rx); }

Misalignment Misalignment::make(int n_antennas, double theta_o, double theta_cs, double phi_cs,
                                double phi_x, double phi_y, AnglePolicy policy)
{
    Misalignment mis{theta_o, theta_cs, phi_cs, phi_x, phi_y};
    if (policy == AnglePolicy::wrap) {
        require(n_antennas >= 2, "n_antennas must be >= 2");
        double step = kTwoPi / n_antennas;
        mis.theta_o = std::remainder(theta_o, step);
        if (mis.phi_cs < 0.0) {
            mis.phi_cs = -mis.phi_cs;
            mis.theta_cs += kPi;
        }
        mis.theta_cs = wrap_pi(mis.theta_cs);
    }
    mis.validate(n_antennas);
    return mis;
}

void Misalignment::validate(int n_antennas) const
{
    require(n_antennas >= 2, "n_antennas must be >= 2");
    for (double a : {theta_o, theta_cs, phi_cs, phi_x, phi_y})
        require(std::isfinite(a), "misalignment angles must be finite");
    double bound = kPi / n_antennas;
    require(std::abs(theta_o) <= bound + kAngleSlack,
            "theta_o must lie in [-pi/N_s, pi/N_s], got " + std::to_string(theta_o));
    require(std::abs(theta_cs) <= kPi + kAngleSlack,
            "theta_cs must lie in [-pi, pi], got " + std::to_string(theta_cs));
    require(phi_cs >= 0.0 && phi_cs < kPi / 2,
            "phi_cs must lie in [0, pi/2), got " + std::to_string(phi_cs));
    require(std::abs(phi_x) < kPi / 2 && std::abs(phi_y) < kPi / 2,
            "tilt angles must lie in (-pi/2, pi/2)");
}

Eigen::Matrix3d rotation_matrix(RotationPlane plane, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Eigen::Matrix3d r;
    switch (plane) {
    case RotationPlane::xy:
        r << c, -s, 0,
             s, c, 0,
             0, 0, 1;
        break;
    case RotationPlane::xz:
        r << c, 0, -s,
             0, 1, 0,
             s, 0, c;
        break;
    case RotationPlane::yz:
        r << 1, 0, 0,
             0, c, -s,
             0, s, c;
        break;
    }
    return r;
}

Coordinate3 center_vector(double distance, double theta_cs, double phi_cs)
{
    const double sp = std::sin(phi_cs);
    return {distance * sp * std::sin(theta_cs), distance * sp * std::cos(theta_cs),
            distance * std::cos(phi_cs)};
}

RxRingTerms rx_ring_terms(const ArrayConfig& cfg, const Misalignment& mis)
{
    RxRingTerms t;
    t.b = rotation_matrix(RotationPlane::xy, mis.theta_cs) *
          rotation_matrix(RotationPlane::xz, mis.phi_x) *
          rotation_matrix(RotationPlane::yz, mis.phi_y);
    for (int i = 0; i < 3; ++i) {
        const double b1 = t.b(i, 0);
        const double b2 = t.b(i, 1);
        const double norm = std::hypot(b1, b2);
        t.radius[i] = cfg.radius_rx * norm;
        t.alpha[i] = norm == 0.0 ? 0.0 : std::atan2(b2, b1) - mis.theta_o;
    }
    return t;
}

Coordinate3 tx_antenna_position(const ArrayConfig& cfg, int m)
{
    check_index(cfg, m, "tx");
    const double th = cfg.antenna_angle(m);
    return {cfg.radius_tx * std::cos(th), cfg.radius_tx * std::sin(th), 0.0};
}

Coordinate3 rx_antenna_position(const ArrayConfig& cfg, const Misalignment& mis, int n)
{
    check_index(cfg, n, "rx");
    const double psi = cfg.antenna_angle(n) + mis.theta_o;
    const Coordinate3 ring{cfg.radius_rx * std::cos(psi), cfg.radius_rx * std::sin(psi), 0.0};
    return center_vector(cfg.distance, mis.theta_cs, mis.phi_cs) +
           rotation_matrix(RotationPlane::xz, mis.phi_x) *
               (rotation_matrix(RotationPlane::yz, mis.phi_y) * ring);
}

double distance_exact(const ArrayConfig& cfg, const Misalignment& mis, int n, int m)
{
    return (rx_antenna_position(cfg, mis, n) - tx_antenna_position(cfg, m)).norm();
}

namespace {

double tx_shift(const ArrayConfig& cfg, const Misalignment& mis, int m)
{
    return cfg.radius_tx * std::sin(cfg.antenna_angle(m) + mis.theta_cs) * std::sin(mis.phi_cs);
}

// Projection of the Rx ring offset onto the unit center direction.
double rx_shift(const ArrayConfig& cfg, const Misalignment& mis, const RxRingTerms& t, int n)
{
    const double th = cfg.antenna_angle(n);
    return t.radius[1] * std::cos(th - t.alpha[1]) * std::sin(mis.phi_cs) +
           t.radius[2] * std::cos(th - t.alpha[2]) * std::cos(mis.phi_cs);
}

double published_ring_term(const ArrayConfig& cfg, const RxRingTerms& t, int n)
{
    const double th = cfg.antenna_angle(n);
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::cos(2.0 * (th - t.alpha[i]));
    return cfg.radius_rx * cfg.radius_rx / (4.0 * cfg.distance) * s;
}

void check_far_field(const ArrayConfig& cfg, const ApproxOptions& opts)
{
    if (!opts.allow_short_range && !cfg.far_field()) {
        std::ostringstream msg;
        msg << "approximate model needs D >= 10 max(R_t, R_r); got D = " << cfg.distance
            << ", R_t = " << cfg.radius_tx << ", R_r = " << cfg.radius_rx;
        throw ModelValidityError(msg.str());
    }
}

double offset(const ArrayConfig& cfg, ApproxTerms terms)
{
    if (terms == ApproxTerms::published) return cfg.distance;
    return cfg.distance + (cfg.radius_tx * cfg.radius_tx + cfg.radius_rx * cfg.radius_rx) /
                              (2.0 * cfg.distance);
}

}  // namespace

double distance_closed_form(const ArrayConfig& cfg, const Misalignment& mis, int n, int m)
{
    check_index(cfg, n, "rx");
    check_index(cfg, m, "tx");
    const RxRingTerms t = rx_ring_terms(cfg, mis);
    const double th_n = cfg.antenna_angle(n);
    const double th_m = cfg.antenna_angle(m);
    const double psi = th_n + mis.theta_o;
    const double sx = std::sin(mis.phi_x / 2.0);
    const double sy = std::sin(mis.phi_y / 2.0);

    // Tx/Rx ring inner product over R_t R_r, split into the aligned cosine
    // and the tilt corrections.
    const double coupling = std::cos(th_n - th_m + mis.theta_o) -
                            2.0 * sx * sx * std::cos(th_m) * std::cos(psi) -
                            2.0 * sy * sy * std::sin(th_m) * std::sin(psi) -
                            std::sin(mis.phi_x) * std::sin(mis.phi_y) * std::cos(th_m) *
                                std::sin(psi);

    const double d = cfg.distance;
    const double rt = cfg.radius_tx;
    const double rr = cfg.radius_rx;
    const double f = (rt * rt + rr * rr) / (d * d) - 2.0 * rt * rr / (d * d) * coupling +
                     2.0 / d * (rx_shift(cfg, mis, t, n) - tx_shift(cfg, mis, m));
    return d * std::sqrt(1.0 + f);
}

DistanceDecomposition distance_approx(const ArrayConfig& cfg, const Misalignment& mis, int n,
                                      int m, ApproxOptions opts)
{
    check_index(cfg, n, "rx");
    check_index(cfg, m, "tx");
    check_far_field(cfg, opts);
    const RxRingTerms t = rx_ring_terms(cfg, mis);

    DistanceDecomposition out;
    out.d_a = offset(cfg, opts.terms) -
              cfg.radius_tx * cfg.radius_rx / cfg.distance *
                  std::cos(cfg.antenna_angle(n) - cfg.antenna_angle(m) + mis.theta_o);
    out.tau_t = tx_shift(cfg, mis, m);
    out.tau_r = rx_shift(cfg, mis, t, n);
    if (opts.terms == ApproxTerms::published) out.tau_r += published_ring_term(cfg, t, n);
    out.total = out.d_a - out.tau_t + out.tau_r;
    return out;
}

DisplacementSet displacements(const ArrayConfig& cfg, const Misalignment& mis, ApproxOptions opts)
{
    check_far_field(cfg, opts);
    const RxRingTerms t = rx_ring_terms(cfg, mis);
    const int ns = cfg.n_antennas;
    DisplacementSet out;
    out.d_offset = offset(cfg, opts.terms);
    out.tau_t.resize(ns);
    out.tau_r.resize(ns);
    for (int i = 1; i <= ns; ++i) {
        out.tau_t[i - 1] = tx_shift(cfg, mis, i);
        out.tau_r[i - 1] = rx_shift(cfg, mis, t, i);
        if (opts.terms == ApproxTerms::published) out.tau_r[i - 1] += published_ring_term(cfg, t, i);
    }
    return out;
}

}  // namespace ucalos
