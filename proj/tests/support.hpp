// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <random>

#include "ucalos/channel.hpp"
#include "ucalos/sim.hpp"

namespace ucalos::testing {

inline double uniform(std::mt19937_64& g, double lo, double hi) { return lo + (hi - lo) * uniform01(g); }

/// Random far-field configuration: N_s in {2, ..., 16}, radii 0.1..0.7 m.
inline ArrayConfig random_config(std::mt19937_64& g)
{
    ArrayConfig c;
    c.n_antennas = 2 * (1 + static_cast<int>(g() % 8));
    c.wavelength = uniform(g, 0.002, 0.01);
    c.radius_tx = uniform(g, 0.1, 0.7);
    c.radius_rx = uniform(g, 0.1, 0.7);
    c.distance = uniform(g, 20.0, 500.0);
    return c;
}

/// Uniform draw inside the canonical ranges, tilts and polar shift up to `small`.
inline Misalignment random_misalignment(std::mt19937_64& g, int n, double small = 10.0 * kPi / 180.0)
{
    return Misalignment::make(n, uniform(g, -kPi / n, kPi / n), uniform(g, -kPi, kPi),
                              uniform(g, 0.0, small), uniform(g, -small, small),
                              uniform(g, -small, small));
}

inline CMatrix random_matrix(std::mt19937_64& g, int rows, int cols)
{
    CMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = {uniform(g, -1.0, 1.0), uniform(g, -1.0, 1.0)};
    return a;
}

inline double unitarity_error(const CMatrix& u)
{
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

inline RVector sorted_desc(RVector v)
{
    std::sort(v.data(), v.data() + v.size(), std::greater<>());
    return v;
}

}  // namespace ucalos::testing
