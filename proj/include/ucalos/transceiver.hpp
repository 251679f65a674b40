// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucalos/channel.hpp"
#include "ucalos/design.hpp"

namespace ucalos {

enum class Quantization {
    sine_uniform,  ///< cell midpoints uniform in sin(angle)
    linear,        ///< cell midpoints uniform in the angle itself
};

struct AngleInterval {
    double lo = -0.175;
    double hi = 0.175;
};

struct CodebookEntry {
    double theta_cs = 0.0;
    double phi_cs = 0.0;
};

/// 2^(L1 + L2) quantized center-shift angle pairs. Entry index l is
/// 1-based: l = l1 * 2^L2 + l2 + 1 with l1 < 2^L1 the theta_cs level and
/// l2 < 2^L2 the phi_cs level.
struct Codebook {
    int l1_bits = 0;
    int l2_bits = 0;
    AngleInterval phi_range;
    Quantization quantization = Quantization::sine_uniform;
    std::vector<double> theta_levels;
    std::vector<double> phi_levels;

    std::size_t size() const { return theta_levels.size() * phi_levels.size(); }
    /// Throws std::out_of_range for l outside 1..size().
    CodebookEntry entry(std::size_t index) const;
};

/// theta_cs is always quantized over [-pi/2, pi/2]. Throws
/// std::invalid_argument for negative bit counts, more than 30 bits in
/// total, or an empty or out-of-range phi interval.
Codebook build_codebook(int l1_bits, int l2_bits, AngleInterval phi_range = {},
                        Quantization quantization = Quantization::sine_uniform);

/// Midpoints of 2^bits equal cells of [lo, hi] in the chosen domain.
std::vector<double> quantization_levels(int bits, double lo, double hi, Quantization q);

enum class PrecoderKind { optimal_svd, codebook, identity, dft_only };

struct PrecoderMatrix {
    CMatrix matrix;
    PrecoderKind provenance = PrecoderKind::dft_only;
    std::optional<std::size_t> index;  ///< codebook index when provenance is codebook
};

/// F = T_t Q with T_t(m, m) = exp(-j 2 pi R_t sin(theta_m + theta_cs) sin(phi_cs) / lambda).
PrecoderMatrix precoder_from_angles(const ArrayConfig& cfg, double theta_cs, double phi_cs);

/// F = Q: the transmit phase compensation left at identity. This is the
/// baseline reported as the "identity" scheme.
PrecoderMatrix dft_precoder(int n_antennas);

/// F = I.
PrecoderMatrix identity_precoder(int n_antennas);

enum class Scheme { capacity, optimal_precoder, codebook, identity, zf, zf_sic };

std::string scheme_name(Scheme s);

struct RateReport {
    Scheme scheme = Scheme::capacity;
    double rate = 0.0;
    RVector per_stream;
};

/// log2 det(I + H F diag(p / N_o) F^H H^H). Per-stream terms are the
/// chain-rule split along the Cholesky factor, so they sum to the rate.
RateReport achievable_rate(const CMatrix& h, const CMatrix& f, const RVector& powers, double noise);

/// Same functional with a precomputed Gram matrix G = H^H H.
double achievable_rate_gram(const CMatrix& gram, const CMatrix& f, const RVector& powers,
                            double noise);

/// Water-filling over the aligned spectrum sigma_k(beta, 0), in DFT order.
PowerAllocation approx_power_allocation(const ArrayConfig& cfg, double snr_db, double noise = 1.0);

struct Selection {
    std::size_t index = 0;  ///< 1-based
    double rate = 0.0;
};

/// Exhaustive search for the codebook index maximizing achievable_rate;
/// the smallest index wins ties. `jobs` > 1 splits the scan over threads
/// with the same result. Throws std::invalid_argument on an empty codebook.
Selection select_codebook_index(const ChannelMatrix& h, const Codebook& cb, const PowerAllocation& p,
                                int jobs = 1);

/// Capacity with water-filling over the numerical singular values of H.
RateReport capacity_rate(const CMatrix& h, double p_total, double noise);

/// Linear zero-forcing receiver, equal power P_T / N_s per stream.
/// Throws NumericalError for a (numerically) singular H.
RateReport zf_rate(const CMatrix& h, double p_total, double noise);

enum class SicNulling {
    /// QR of [H; sqrt(N_o / p) I]: the sum rate is log2 det(I + (p / N_o) H^H H).
    mmse,
    /// QR of H itself, SNR_k = p |r_kk|^2 / N_o.
    zero_forcing,
};

/// Successive interference cancellation in natural stream order with
/// equal power. Throws NumericalError for a singular H.
RateReport zf_sic_rate(const CMatrix& h, double p_total, double noise,
                       SicNulling nulling = SicNulling::mmse);

}  // namespace ucalos
