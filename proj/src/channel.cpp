// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/channel.hpp"

#include <cmath>

namespace ucalos {

namespace {

// exp(-j 2 pi (a b mod n) / n), reduced before scaling so large products
// stay exact.
cplx dft_twiddle(long a, long b, long n)
{
    const long r = (a * b) % n;
    return std::polar(1.0, -kTwoPi * static_cast<double>(r) / static_cast<double>(n));
}

}  // namespace

CMatrix dft_matrix(int n)
{
    if (n < 1) throw std::invalid_argument("dft_matrix: n must be >= 1");
    CMatrix q(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) q(a, b) = dft_twiddle(a, b, n) * scale;
    return q;
}

CirculantFactor circulant_factor(const ArrayConfig& cfg, double theta_o)
{
    return circulant_factor(cfg, theta_o, cfg.distance);
}

CirculantFactor circulant_factor(const ArrayConfig& cfg, double theta_o, double d_offset)
{
    cfg.validate();
    const int ns = cfg.n_antennas;
    const double beta = cfg.rpdr();
    const cplx common = unit_phasor(d_offset / cfg.wavelength);

    CVector column(ns);
    for (int i = 0; i < ns; ++i)
        column(i) = common * std::polar(1.0, beta * std::cos(kTwoPi * i / ns + theta_o));

    CirculantFactor out;
    out.h_a.resize(ns, ns);
    for (int n = 0; n < ns; ++n)
        for (int m = 0; m < ns; ++m) out.h_a(n, m) = column(((n - m) % ns + ns) % ns);

    // delta_k = sum_i c_i exp(+j 2 pi i k / N)
    out.delta.resize(ns);
    for (int k = 0; k < ns; ++k) {
        cplx acc = 0.0;
        for (int i = 0; i < ns; ++i) acc += column(i) * std::conj(dft_twiddle(i, k, ns));
        out.delta(k) = acc;
    }
    return out;
}

PhaseDiagonal phase_diagonal(const std::vector<double>& displacement, double wavelength)
{
    PhaseDiagonal d(static_cast<Eigen::Index>(displacement.size()));
    for (std::size_t i = 0; i < displacement.size(); ++i)
        d(static_cast<Eigen::Index>(i)) = unit_phasor(displacement[i] / wavelength);
    return d;
}

ChannelFactors factorize(const ArrayConfig& cfg, const Misalignment& mis, ApproxOptions opts)
{
    cfg.validate();
    mis.validate(cfg.n_antennas);
    const DisplacementSet disp = displacements(cfg, mis, opts);
    ChannelFactors f;
    f.t_t = phase_diagonal(disp.tau_t, cfg.wavelength);
    f.t_r = phase_diagonal(disp.tau_r, cfg.wavelength);
    f.circulant = circulant_factor(cfg, mis.theta_o, disp.d_offset);
    return f;
}

ChannelMatrix build_channel(const ArrayConfig& cfg, const Misalignment& mis, ChannelModel model,
                            ApproxOptions opts)
{
    cfg.validate();
    mis.validate(cfg.n_antennas);
    const int ns = cfg.n_antennas;
    ChannelMatrix h{CMatrix(ns, ns), model, cfg, mis};

    if (model == ChannelModel::exact_distance) {
        for (int n = 1; n <= ns; ++n)
            for (int m = 1; m <= ns; ++m)
                h.entries(n - 1, m - 1) = unit_phasor(distance_exact(cfg, mis, n, m) / cfg.wavelength);
        return h;
    }

    const ChannelFactors f = factorize(cfg, mis, opts);
    h.entries = f.t_r.asDiagonal() * f.circulant.h_a * f.t_t.conjugate().asDiagonal();
    return h;
}

CMatrix SvdTriple::reconstruct() const { return u * sigma.cast<cplx>().asDiagonal() * v.adjoint(); }

SvdTriple closed_form_svd(const ArrayConfig& cfg, const Misalignment& mis, ApproxOptions opts)
{
    const ChannelFactors f = factorize(cfg, mis, opts);
    const int ns = cfg.n_antennas;
    const CMatrix q = dft_matrix(ns);

    SvdTriple svd;
    svd.sigma.resize(ns);
    CVector s(ns);
    for (int k = 0; k < ns; ++k) {
        const double mag = std::abs(f.circulant.delta(k));
        svd.sigma(k) = mag;
        s(k) = mag < kZeroSingularValue ? cplx{1.0, 0.0} : f.circulant.delta(k) / mag;
    }
    svd.u = f.t_r.asDiagonal() * q * s.asDiagonal();
    svd.v = f.t_t.asDiagonal() * q;
    return svd;
}

}  // namespace ucalos
