// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace ucalos {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Raised when the far-field (approximate) channel model is requested
/// outside its validity range.
class ModelValidityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised on numerical failure: non-convergence or a singular channel.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// exp(-j 2 pi cycles), with the integer part of `cycles` removed first so
/// that long path lengths (tens of thousands of wavelengths) keep full
/// phase precision.
inline cplx unit_phasor(double cycles)
{
    double frac = cycles - std::floor(cycles);
    return std::polar(1.0, -kTwoPi * frac);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace ucalos
