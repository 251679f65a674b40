// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include "ucalos/channel.hpp"

namespace ucalos {

struct JacobiOptions {
    int max_sweeps = 30;
    /// A column pair is rotated while |a_p^H a_q| > tolerance * |a_p| |a_q|.
    double tolerance = 1e-15;
};

/// One-sided (Hestenes) Jacobi SVD of a square complex matrix. Singular
/// values are sorted descending. Throws NumericalError if the sweeps do not
/// converge.
SvdTriple numerical_svd(const CMatrix& a, JacobiOptions opts = {});

}  // namespace ucalos
