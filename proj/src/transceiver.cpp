// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/transceiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "ucalos/jacobi_svd.hpp"
#include "ucalos/spectrum.hpp"

namespace ucalos {

std::vector<double> quantization_levels(int bits, double lo, double hi, Quantization q)
{
    if (bits < 0 || bits > 30) throw std::invalid_argument("quantization bits must be in 0..30");
    if (!(hi > lo)) throw std::invalid_argument("quantization interval is empty");
    const std::size_t count = std::size_t{1} << bits;
    const double a = q == Quantization::sine_uniform ? std::sin(lo) : lo;
    const double b = q == Quantization::sine_uniform ? std::sin(hi) : hi;
    const double step = (b - a) / static_cast<double>(count);

    std::vector<double> levels(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double mid = a + (static_cast<double>(i) + 0.5) * step;
        levels[i] = q == Quantization::sine_uniform ? std::asin(mid) : mid;
    }
    return levels;
}

Codebook build_codebook(int l1_bits, int l2_bits, AngleInterval phi_range, Quantization quantization)
{
    if (l1_bits < 0 || l2_bits < 0) throw std::invalid_argument("codebook bits must be >= 0");
    if (l1_bits + l2_bits > 30) throw std::invalid_argument("codebook larger than 2^30 entries");
    if (!(phi_range.hi > phi_range.lo))
        throw std::invalid_argument("codebook phi range is empty");
    if (phi_range.lo <= -kPi / 2 || phi_range.hi >= kPi / 2)
        throw std::invalid_argument("codebook phi range must lie inside (-pi/2, pi/2)");

    Codebook cb;
    cb.l1_bits = l1_bits;
    cb.l2_bits = l2_bits;
    cb.phi_range = phi_range;
    cb.quantization = quantization;
    cb.theta_levels = quantization_levels(l1_bits, -kPi / 2, kPi / 2, quantization);
    cb.phi_levels = quantization_levels(l2_bits, phi_range.lo, phi_range.hi, quantization);
    return cb;
}

CodebookEntry Codebook::entry(std::size_t index) const
{
    if (index < 1 || index > size()) throw std::out_of_range("codebook index out of range");
    const std::size_t l = index - 1;
    return {theta_levels[l / phi_levels.size()], phi_levels[l % phi_levels.size()]};
}

PrecoderMatrix precoder_from_angles(const ArrayConfig& cfg, double theta_cs, double phi_cs)
{
    cfg.validate();
    const int ns = cfg.n_antennas;
    CVector t(ns);
    const double sp = std::sin(phi_cs);
    for (int m = 1; m <= ns; ++m)
        t(m - 1) = unit_phasor(cfg.radius_tx * std::sin(cfg.antenna_angle(m) + theta_cs) * sp /
                               cfg.wavelength);
    return {t.asDiagonal() * dft_matrix(ns), PrecoderKind::codebook, std::nullopt};
}

PrecoderMatrix dft_precoder(int n_antennas) { return {dft_matrix(n_antennas), PrecoderKind::dft_only, {}}; }

PrecoderMatrix identity_precoder(int n_antennas)
{
    return {CMatrix::Identity(n_antennas, n_antennas), PrecoderKind::identity, {}};
}

std::string scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::capacity: return "capacity";
    case Scheme::optimal_precoder: return "optimal_precoder";
    case Scheme::codebook: return "codebook";
    case Scheme::identity: return "identity";
    case Scheme::zf: return "zf";
    case Scheme::zf_sic: return "zf_sic";
    }
    return "unknown";
}

namespace {

Eigen::LLT<CMatrix> rate_factor(const CMatrix& gram, const CMatrix& f, const RVector& powers,
                                double noise)
{
    if (!(noise > 0.0)) throw std::invalid_argument("noise power must be positive");
    if (powers.size() != f.cols()) throw std::invalid_argument("one power per precoder column");
    const RVector scale = (powers / noise).cwiseMax(0.0).cwiseSqrt();
    const CMatrix m = f.adjoint() * gram * f;
    CMatrix a = scale.cast<cplx>().asDiagonal() * m * scale.cast<cplx>().asDiagonal();
    a.diagonal().array() += 1.0;
    Eigen::LLT<CMatrix> llt(a);
    if (llt.info() != Eigen::Success) throw NumericalError("rate matrix is not positive definite");
    return llt;
}

void require_square(const CMatrix& h)
{
    if (h.rows() != h.cols() || h.rows() == 0) throw std::invalid_argument("channel must be square");
}

}  // namespace

RateReport achievable_rate(const CMatrix& h, const CMatrix& f, const RVector& powers, double noise)
{
    const Eigen::LLT<CMatrix> llt = rate_factor(h.adjoint() * h, f, powers, noise);
    RateReport r;
    r.scheme = Scheme::codebook;
    r.per_stream = 2.0 * llt.matrixLLT().diagonal().real().array().log() / std::log(2.0);
    r.rate = r.per_stream.sum();
    return r;
}

double achievable_rate_gram(const CMatrix& gram, const CMatrix& f, const RVector& powers, double noise)
{
    const Eigen::LLT<CMatrix> llt = rate_factor(gram, f, powers, noise);
    return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum() / std::log(2.0);
}

PowerAllocation approx_power_allocation(const ArrayConfig& cfg, double snr_db, double noise)
{
    cfg.validate();
    return water_fill(singular_values(cfg.n_antennas, cfg.rpdr(), 0.0),
                      db_to_linear(snr_db) * noise, noise);
}

Selection select_codebook_index(const ChannelMatrix& h, const Codebook& cb, const PowerAllocation& p,
                                int jobs)
{
    const std::size_t total = cb.size();
    if (total == 0) throw std::invalid_argument("codebook is empty");
    const CMatrix gram = h.entries.adjoint() * h.entries;

    auto scan = [&](std::size_t first, std::size_t last) {
        Selection best{0, -std::numeric_limits<double>::infinity()};
        for (std::size_t l = first; l < last; ++l) {
            const CodebookEntry e = cb.entry(l);
            const CMatrix f = precoder_from_angles(h.cfg, e.theta_cs, e.phi_cs).matrix;
            const double rate = achievable_rate_gram(gram, f, p.powers, p.noise);
            if (rate > best.rate) best = {l, rate};
        }
        return best;
    };

    const std::size_t workers =
        std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, total);
    if (workers == 1) return scan(1, total + 1);

    std::vector<Selection> partial(workers);
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t first = 1 + w * chunk;
        const std::size_t last = std::min(total + 1, first + chunk);
        pool.emplace_back([&, w, first, last] {
            if (first < last) partial[w] = scan(first, last);
            else partial[w] = {0, -std::numeric_limits<double>::infinity()};
        });
    }
    for (auto& t : pool) t.join();

    // Chunks are in index order, so strict > keeps the smallest tied index.
    Selection best = partial.front();
    for (const Selection& s : partial)
        if (s.rate > best.rate) best = s;
    return best;
}

RateReport capacity_rate(const CMatrix& h, double p_total, double noise)
{
    require_square(h);
    const RVector sigma = numerical_svd(h).sigma;
    const PowerAllocation alloc = water_fill(sigma, p_total, noise);
    RateReport r;
    r.scheme = Scheme::capacity;
    r.per_stream.resize(sigma.size());
    for (Eigen::Index k = 0; k < sigma.size(); ++k)
        r.per_stream(k) = std::log2(1.0 + alloc.powers(k) * sigma(k) * sigma(k) / noise);
    r.rate = r.per_stream.sum();
    return r;
}

namespace {

void require_full_rank(const CMatrix& h)
{
    Eigen::ColPivHouseholderQR<CMatrix> qr(h);
    const auto diag = qr.matrixQR().diagonal().cwiseAbs();
    if (diag.minCoeff() <= 1e-12 * diag.maxCoeff())
        throw NumericalError("channel matrix is singular");
}

}  // namespace

RateReport zf_rate(const CMatrix& h, double p_total, double noise)
{
    require_square(h);
    require_full_rank(h);
    const double p = p_total / static_cast<double>(h.cols());
    const CMatrix gram = h.adjoint() * h;
    const CMatrix inv = gram.llt().solve(CMatrix::Identity(h.cols(), h.cols()));

    RateReport r;
    r.scheme = Scheme::zf;
    r.per_stream.resize(h.cols());
    for (Eigen::Index k = 0; k < h.cols(); ++k)
        r.per_stream(k) = std::log2(1.0 + p / (noise * inv(k, k).real()));
    r.rate = r.per_stream.sum();
    return r;
}

RateReport zf_sic_rate(const CMatrix& h, double p_total, double noise, SicNulling nulling)
{
    require_square(h);
    require_full_rank(h);
    const Eigen::Index n = h.cols();
    const double p = p_total / static_cast<double>(n);
    const double rho = p / noise;

    RateReport r;
    r.scheme = Scheme::zf_sic;
    r.per_stream.resize(n);
    if (nulling == SicNulling::zero_forcing) {
        Eigen::HouseholderQR<CMatrix> qr(h);
        for (Eigen::Index k = 0; k < n; ++k)
            r.per_stream(k) = std::log2(1.0 + rho * std::norm(qr.matrixQR()(k, k)));
    } else {
        CMatrix stacked(2 * n, n);
        stacked << h, CMatrix::Identity(n, n) / std::sqrt(rho);
        Eigen::HouseholderQR<CMatrix> qr(stacked);
        // 1 + SINR_k = rho |r_kk|^2 for the augmented factor.
        for (Eigen::Index k = 0; k < n; ++k)
            r.per_stream(k) = std::log2(rho * std::norm(qr.matrixQR()(k, k)));
    }
    r.rate = r.per_stream.sum();
    return r;
}

}  // namespace ucalos
