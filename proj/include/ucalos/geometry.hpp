// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <array>
#include <vector>

#include "ucalos/common.hpp"

namespace ucalos {

using Coordinate3 = Eigen::Vector3d;

/// Physical parameters of a pair of facing uniform circular arrays.
/// All lengths in meters.
struct ArrayConfig {
    int n_antennas = 4;
    double wavelength = 0.004;
    double radius_tx = 0.31;
    double radius_rx = 0.31;
    double distance = 100.0;

    /// Throws std::invalid_argument unless N_s is even and >= 2 and every
    /// length is finite and positive.
    void validate() const;

    /// Radii product-to-distance ratio 2 pi R_t R_r / (lambda D).
    double rpdr() const;

    /// Angular position 2 pi i / N_s of antenna i (1-based).
    double antenna_angle(int index) const;

    /// True when D >= 10 max(R_t, R_r), the range where the far-field
    /// expansion of the inter-antenna distance is trusted.
    bool far_field() const;
};

enum class AnglePolicy {
    strict,  ///< out-of-range angles throw std::invalid_argument
    wrap,    ///< angles are folded back into their canonical ranges
};

/// Receive-array misalignment. All angles in radians.
///
/// theta_o rotates the Rx ring about its boresight; (theta_cs, phi_cs) are
/// the azimuth (measured from the y-axis) and polar angle of the Rx center;
/// phi_x and phi_y tilt the Rx plane toward the x'z- and y'z-planes.
struct Misalignment {
    double theta_o = 0.0;
    double theta_cs = 0.0;
    double phi_cs = 0.0;
    double phi_x = 0.0;
    double phi_y = 0.0;

    /// Builds a misalignment for an N_s-element array.
    ///
    /// Canonical ranges: |theta_o| <= pi/N_s, theta_cs in [-pi, pi],
    /// phi_cs in [0, pi/2), |phi_x|, |phi_y| < pi/2. With AnglePolicy::wrap,
    /// theta_o is reduced modulo 2 pi/N_s (an index relabeling of the ring),
    /// theta_cs is wrapped, and a negative phi_cs is mirrored through the
    /// boresight axis, (theta_cs, -phi_cs) -> (theta_cs + pi, phi_cs), which
    /// describes the same center point.
    static Misalignment make(int n_antennas, double theta_o, double theta_cs, double phi_cs,
                             double phi_x, double phi_y, AnglePolicy policy = AnglePolicy::strict);

    void validate(int n_antennas) const;
};

enum class RotationPlane { xy, xz, yz };

/// Right-handed rotation in the given coordinate plane.
Eigen::Matrix3d rotation_matrix(RotationPlane plane, double angle);

/// Vector from the Tx center to the Rx center.
Coordinate3 center_vector(double distance, double theta_cs, double phi_cs);

/// Coefficients of the Rx ring expressed in the frame rotated by theta_cs
/// about z: row i of that frame is D c_i + R_i cos(theta_n - alpha_i).
struct RxRingTerms {
    Eigen::Matrix3d b;              ///< R^xy(theta_cs) R^xz(phi_x) R^yz(phi_y)
    std::array<double, 3> radius;   ///< R_i = R_r sqrt(b_i1^2 + b_i2^2)
    std::array<double, 3> alpha;    ///< atan2(b_i2, b_i1) - theta_o; 0 when R_i == 0
};

RxRingTerms rx_ring_terms(const ArrayConfig& cfg, const Misalignment& mis);

/// Position of the m-th Tx antenna (1-based).
Coordinate3 tx_antenna_position(const ArrayConfig& cfg, int m);

/// Position of the n-th Rx antenna (1-based) after rotation, tilt and
/// center shift.
Coordinate3 rx_antenna_position(const ArrayConfig& cfg, const Misalignment& mis, int n);

/// Euclidean distance between Rx antenna n and Tx antenna m.
double distance_exact(const ArrayConfig& cfg, const Misalignment& mis, int n, int m);

/// Closed-form distance D sqrt(1 + f) written in terms of the ring
/// coefficients. Agrees with distance_exact to rounding.
double distance_closed_form(const ArrayConfig& cfg, const Misalignment& mis, int n, int m);

/// Which terms the far-field expansion keeps.
enum class ApproxTerms {
    /// First-order expansion of d^2 - D^2 with every separable term kept:
    /// the constant (R_t^2 + R_r^2)/2D sits in d_a, the Rx ring-squared term
    /// (identically R_r^2) is folded into that constant. Only the bilinear
    /// tilt coupling and second-order remainders are dropped.
    consistent,
    /// The decomposition exactly as published: d_a without the constant
    /// offset and tau_r carrying (R_r^2/4D) sum_i cos 2(theta_n - alpha_i).
    published,
};

struct ApproxOptions {
    ApproxTerms terms = ApproxTerms::consistent;
    /// Skip the D >= 10 max(R) guard (for studying model breakdown).
    bool allow_short_range = false;
};

/// d(n, m) ~= d_a(n, m) - tau_t(m) + tau_r(n).
struct DistanceDecomposition {
    double d_a = 0.0;
    double tau_t = 0.0;
    double tau_r = 0.0;
    double total = 0.0;
};

/// Far-field decomposition of d(n, m). Throws ModelValidityError when the
/// range guard fails and is not overridden.
DistanceDecomposition distance_approx(const ArrayConfig& cfg, const Misalignment& mis, int n,
                                      int m, ApproxOptions opts = {});

/// The same decomposition, vectorized over all indices.
struct DisplacementSet {
    double d_offset = 0.0;       ///< constant part of d_a
    std::vector<double> tau_t;   ///< indexed m - 1
    std::vector<double> tau_r;   ///< indexed n - 1
};

DisplacementSet displacements(const ArrayConfig& cfg, const Misalignment& mis,
                              ApproxOptions opts = {});

}  // namespace ucalos
