// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include "ucalos/common.hpp"
#include "ucalos/geometry.hpp"

namespace ucalos {

enum class ChannelModel { exact_distance, approximate };

/// Normalized free-space LoS channel, h(n, m) = exp(-j 2 pi d(n, m) / lambda),
/// rows indexed by Rx antenna n and columns by Tx antenna m.
struct ChannelMatrix {
    CMatrix entries;
    ChannelModel model = ChannelModel::approximate;
    ArrayConfig cfg;
    Misalignment mis;
};

/// Unit-modulus diagonal, stored as its diagonal vector.
using PhaseDiagonal = CVector;

/// Unitary DFT matrix, q(a, b) = exp(-j 2 pi a b / n) / sqrt(n) (0-based).
CMatrix dft_matrix(int n);

/// H_A = Q diag(delta) Q^H for the rotation-only (aligned) array pair.
struct CirculantFactor {
    CMatrix h_a;
    CVector delta;
};

/// Builds H_A from its first column and returns the eigenvalues delta_k
/// = Q(:, k)^H H_A Q(:, k). `d_offset` is the constant part of d_a (D for
/// the published expansion).
CirculantFactor circulant_factor(const ArrayConfig& cfg, double theta_o);
CirculantFactor circulant_factor(const ArrayConfig& cfg, double theta_o, double d_offset);

/// H = T_r H_A T_t^H for the approximate model.
struct ChannelFactors {
    PhaseDiagonal t_t;
    PhaseDiagonal t_r;
    CirculantFactor circulant;
};

ChannelFactors factorize(const ArrayConfig& cfg, const Misalignment& mis, ApproxOptions opts = {});

/// Diagonal phase exp(-j 2 pi tau / lambda) for a displacement vector.
PhaseDiagonal phase_diagonal(const std::vector<double>& displacement, double wavelength);

ChannelMatrix build_channel(const ArrayConfig& cfg, const Misalignment& mis, ChannelModel model,
                            ApproxOptions opts = {});

/// U diag(sigma) V^H. Closed-form triples keep sigma in DFT-index order;
/// numerical ones sort it descending.
struct SvdTriple {
    CMatrix u;
    RVector sigma;
    CMatrix v;

    CMatrix reconstruct() const;
};

/// Magnitudes below this are treated as zero singular values; their
/// phase entry in S is set to 1.
inline constexpr double kZeroSingularValue = 1e-12;

/// U = T_r Q S, Sigma = |Delta_A|, V = T_t Q.
SvdTriple closed_form_svd(const ArrayConfig& cfg, const Misalignment& mis, ApproxOptions opts = {});

}  // namespace ucalos
