// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli.hpp"
#include "support.hpp"
#include "ucalos/design.hpp"
#include "ucalos/jacobi_svd.hpp"
#include "ucalos/sim.hpp"
#include "ucalos/spectrum.hpp"
#include "ucalos/transceiver.hpp"

using namespace ucalos;
using ucalos::testing::random_config;
using ucalos::testing::random_matrix;
using ucalos::testing::random_misalignment;
using ucalos::testing::sorted_desc;
using ucalos::testing::uniform;
using ucalos::testing::unitarity_error;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

class Detail {
public:
    template <typename T>
    Detail& operator<<(const T& v)
    {
        os_ << v;
        return *this;
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

constexpr int kAntennas[] = {4, 8, 12, 16};

// Table I, rows indexed by SNR 5, 10, 15, 20 dB.
constexpr double kTableBeta[4][4] = {
    {1.57, 3.10, 4.53, 5.98},
    {1.51, 3.08, 4.56, 5.97},
    {1.54, 3.09, 4.57, 5.98},
    {1.54, 3.08, 4.55, 5.98},
};
constexpr double kTableRadius[] = {0.31, 0.44, 0.54, 0.62};
constexpr double kTableCapacity[] = {20.11, 38.79, 56.79, 72.88};
constexpr double kTableCond[] = {1.0, 1.84, 2.42, 3.51};
constexpr double kTableCondHalf[] = {6.36, 22.63, 104.53, 469.97};

Outcome table_beta()
{
    Outcome o;
    Detail d;
    int bad = 0;
    const double snrs[] = {5.0, 10.0, 15.0, 20.0};
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < 4; ++i) {
            const double b = search_beta_opt(kAntennas[i], 0.0, snrs[s]).beta_opt;
            if (std::abs(b - kTableBeta[s][i]) > 0.05) {
                ++bad;
                d << " N=" << kAntennas[i] << "/" << snrs[s] << "dB:" << fmt("%.3f", b) << " vs "
                  << kTableBeta[s][i];
            }
        }
    }
    o.pass = bad == 0;
    o.detail = std::to_string(16 - bad) + "/16 within 0.05" + d.str();
    return o;
}

Outcome table_radii()
{
    Outcome o;
    Detail d;
    for (int i = 0; i < 4; ++i) {
        const DesignResult r = design_arrays(kAntennas[i], 15.0, 0.0, 0.004, 100.0);
        const bool ok = std::abs(r.radius_equal - kTableRadius[i]) <= 0.01 &&
                        std::abs(r.capacity - kTableCapacity[i]) <= 0.15;
        o.pass = o.pass && ok;
        d << " N=" << kAntennas[i] << ":R=" << fmt("%.3f", r.radius_equal) << ",C=" << fmt("%.3f", r.capacity);
    }
    o.detail = d.str();
    return o;
}

Outcome table_condition()
{
    Outcome o;
    Detail d;
    for (int i = 0; i < 4; ++i) {
        const DesignResult r = search_beta_opt(kAntennas[i], 0.0, 15.0);
        const double half = condition_number(kAntennas[i], 0.5 * r.beta_opt, 0.0);
        const bool ok_opt = std::abs(r.condition_number - kTableCond[i]) <= 0.02 * kTableCond[i];
        const bool ok_half = std::abs(half - kTableCondHalf[i]) <= 0.02 * kTableCondHalf[i];
        o.pass = o.pass && ok_opt && ok_half;
        d << " N=" << kAntennas[i] << ":" << fmt("%.3f", r.condition_number) << (ok_opt ? "" : "(x)") << "/"
          << fmt("%.2f", half) << (ok_half ? "" : "(x)");
    }
    o.detail = "cond at beta_opt / half beta_opt:" + d.str();
    return o;
}

Outcome svd_oracle()
{
    std::mt19937_64 g(41);
    double sigma_err = 0.0, unit_err = 0.0, rec_err = 0.0;
    const int draws = 1000;
    for (int t = 0; t < draws; ++t) {
        const ArrayConfig c = random_config(g);
        const Misalignment mis = random_misalignment(g, c.n_antennas, 0.3);
        const ChannelMatrix h = build_channel(c, mis, ChannelModel::approximate);
        const SvdTriple cf = closed_form_svd(c, mis);
        const SvdTriple num = numerical_svd(h.entries);
        sigma_err = std::max(sigma_err, (sorted_desc(cf.sigma) - num.sigma).cwiseAbs().maxCoeff());
        unit_err = std::max({unit_err, unitarity_error(cf.u), unitarity_error(cf.v)});
        rec_err = std::max(rec_err, (cf.reconstruct() - h.entries).cwiseAbs().maxCoeff());
    }
    Outcome o;
    o.pass = sigma_err <= 1e-9 && unit_err <= 1e-10 && rec_err <= 1e-10;
    o.detail = std::to_string(draws) + " draws; sigma " + fmt("%.2e", sigma_err) + ", unitarity " +
               fmt("%.2e", unit_err) + ", reconstruction " + fmt("%.2e", rec_err);
    return o;
}

Outcome misalignment_invariance()
{
    std::mt19937_64 g(43);
    double worst = 0.0;
    for (int n : {4, 8, 16}) {
        ArrayConfig c;
        c.n_antennas = n;
        c.wavelength = 0.004;
        c.radius_tx = c.radius_rx = 0.45;
        const double theta_o = uniform(g, -kPi / n, kPi / n);
        const RVector ref = sorted_desc(singular_values(n, c.rpdr(), theta_o));
        for (int t = 0; t < 100; ++t) {
            const Misalignment mis = Misalignment::make(n, theta_o, uniform(g, -kPi, kPi), uniform(g, 0.0, 0.3),
                                                        uniform(g, -0.3, 0.3), uniform(g, -0.3, 0.3));
            const ChannelMatrix h = build_channel(c, mis, ChannelModel::approximate);
            worst = std::max(worst, (numerical_svd(h.entries).sigma - ref).cwiseAbs().maxCoeff());
        }
    }
    Outcome o;
    o.pass = worst <= 1e-10;
    o.detail = "300 draws over N in {4,8,16}; max singular-value change " + fmt("%.2e", worst);
    return o;
}

Outcome spectrum_structure()
{
    Outcome o;
    long points = 0, dominance_tested = 0;
    double worst_identity = 0.0;
    bool small_ok = true;
    for (int n : {4, 8, 16}) {
        const int nb = 141, nt = 101;
        for (int i = 0; i < nb; ++i) {
            for (int j = 0; j < nt; ++j) {
                const double beta = 14.0 * i / (nb - 1);
                const double theta = -kPi / n + 2.0 * kPi / n * j / (nt - 1);
                const SpectrumStructureReport r = check_spectrum_structure(n, beta, theta);
                ++points;
                worst_identity = std::max({worst_identity, r.pairing.residual, r.mirror.residual,
                                           r.null_mode.residual});
                o.pass = o.pass && r.pairing.holds && r.mirror.holds && r.null_mode.holds && r.dominance.holds;
                if (!r.dominance.vacuous) ++dominance_tested;
            }
        }
        for (double beta : {0.0, 1e-8}) {
            for (int j = 0; j < 21; ++j) {
                const SpectrumStructureReport r = check_spectrum_structure(n, beta, -kPi / n + 2.0 * kPi / n * j / 20);
                small_ok = small_ok && !r.small_beta.vacuous && r.small_beta.holds;
            }
        }
    }
    o.pass = o.pass && small_ok && worst_identity <= 1e-10;
    o.detail = std::to_string(points) + " grid points; identity residual " + fmt("%.2e", worst_identity) +
               "; dominance tested at " + std::to_string(dominance_tested) + "; small-beta limit " +
               (small_ok ? "ok" : "violated");
    return o;
}

Outcome geometry_oracle()
{
    std::mt19937_64 g(47);
    double worst = 0.0;
    for (int t = 0; t < 10000; ++t) {
        const ArrayConfig c = random_config(g);
        const Misalignment mis = random_misalignment(g, c.n_antennas, 0.5);
        const int n = 1 + static_cast<int>(g() % c.n_antennas);
        const int m = 1 + static_cast<int>(g() % c.n_antennas);
        const double exact = distance_exact(c, mis, n, m);
        worst = std::max(worst, std::abs(distance_closed_form(c, mis, n, m) - exact) / exact);
    }

    bool monotone = true;
    double err[3] = {0, 0, 0};
    for (int trial = 0; trial < 50; ++trial) {
        ArrayConfig c;
        c.n_antennas = 8;
        c.radius_tx = c.radius_rx = 0.31;
        const Misalignment mis = random_misalignment(g, 8);
        double previous = std::numeric_limits<double>::infinity();
        int k = 0;
        for (double d : {1e2, 1e3, 1e4}) {
            c.distance = d;
            double e = 0.0;
            for (int n = 1; n <= 8; ++n)
                for (int m = 1; m <= 8; ++m)
                    e = std::max(e, std::abs(distance_approx(c, mis, n, m).total - distance_exact(c, mis, n, m)));
            monotone = monotone && e < previous;
            err[k] = std::max(err[k], e);
            ++k;
            previous = e;
        }
    }
    Outcome o;
    o.pass = worst <= 1e-12 && monotone;
    o.detail = "closed form rel. error " + fmt("%.2e", worst) + " over 1e4 draws; far-field error at D=1e2/1e3/1e4: " +
               fmt("%.2e", err[0]) + "/" + fmt("%.2e", err[1]) + "/" + fmt("%.2e", err[2]) +
               (monotone ? " (decreasing)" : " (not monotone)");
    return o;
}

Outcome water_filling_kkt()
{
    std::mt19937_64 g(53);
    double worst = 0.0;
    bool dominates = true;
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + static_cast<int>(g() % 16);
        RVector s(n);
        for (int k = 0; k < n; ++k) s(k) = uniform(g, 0.0, 5.0);
        const double p = std::pow(10.0, uniform(g, -2.0, 3.0));
        const PowerAllocation a = water_fill(s, p, 1.0);
        double r = std::abs(a.powers.sum() - p) / p;
        for (int k = 0; k < n; ++k) {
            const double floor = 1.0 / (s(k) * s(k));
            r = std::max(r, std::max(0.0, -a.powers(k)));
            if (a.powers(k) > 0.0) r = std::max(r, std::abs(a.powers(k) + floor - a.water_level) / a.water_level);
            else r = std::max(r, std::max(0.0, a.water_level - floor) / a.water_level);
        }
        worst = std::max(worst, r);
        const double eq = rate_with_powers(s, RVector::Constant(n, p / n), 1.0);
        dominates = dominates && capacity(s, p, 1.0) >= eq - 1e-12;
    }
    Outcome o;
    o.pass = worst <= 1e-9 && dominates;
    o.detail = "1000 spectra; worst KKT residual " + fmt("%.2e", worst) +
               (dominates ? "; capacity >= equal power" : "; equal power wins somewhere");
    return o;
}

Outcome sic_identity()
{
    std::mt19937_64 g(59);
    double worst = 0.0;
    int rejected = 0;
    for (int t = 0; t < 1000;) {
        CMatrix h;
        if (t % 2 == 0) {
            const ArrayConfig c = random_config(g);
            h = build_channel(c, random_misalignment(g, c.n_antennas), ChannelModel::approximate).entries;
        } else {
            const int n = 2 + static_cast<int>(g() % 15);
            h = random_matrix(g, n, n);
        }
        const double p_total = std::pow(10.0, uniform(g, 0.0, 2.5));
        RateReport sic;
        try {
            sic = zf_sic_rate(h, p_total, 1.0);
        } catch (const NumericalError&) {
            // Rank-deficient draw; the identity is stated for full-rank H.
            ++rejected;
            continue;
        }
        const int n = static_cast<int>(h.cols());
        const CMatrix m = CMatrix::Identity(n, n) + (p_total / n) * h.adjoint() * h;
        const Eigen::LLT<CMatrix> llt(m);
        double logdet = 0.0;
        for (int k = 0; k < n; ++k) logdet += 2.0 * std::log2(std::real(llt.matrixL()(k, k)));
        worst = std::max(worst, std::abs(sic.rate - logdet));
        ++t;
    }
    Outcome o;
    o.pass = worst <= 1e-9;
    o.detail = "1000 full-rank channels (" + std::to_string(rejected) + " singular draws redrawn); worst |sum rate - log2 det| " +
               fmt("%.2e", worst);
    return o;
}

Outcome monte_carlo()
{
    TrialConfig c;
    c.wavelength = 0.004;
    c.seed = 2026;
    c.jobs = 1;
    const std::vector<ResultRow> rows = run_rate_sweep(c);
    auto mean = [&](int n, double d, const char* scheme) { return aggregate_rate(rows, "rate_sweep", n, d, scheme); };

    Outcome o;
    Detail d;
    const double zf_gap = mean(4, 100.0, "capacity") - mean(4, 100.0, "zf");
    const bool i_ok = std::abs(zf_gap) <= 0.1;
    d << "(i) zf gap " << fmt("%.4f", zf_gap) << (i_ok ? "" : " FAIL");

    bool ii_ok = true;
    d << "; (ii) codebook gaps";
    for (int n : {4, 8}) {
        for (double dist : c.distances) {
            const double gap = mean(n, dist, "capacity") - mean(n, dist, "codebook");
            ii_ok = ii_ok && gap <= 0.1;
            d << " " << n << "/" << dist << ":" << fmt("%.3f", gap);
        }
    }
    d << (ii_ok ? "" : " FAIL");

    bool iii_ok = true;
    d << "; (iii) codebook/identity at 500 m";
    for (int n : c.n_antennas_list) {
        const double ratio = mean(n, 500.0, "codebook") / mean(n, 500.0, "identity");
        iii_ok = iii_ok && ratio >= 1.09;
        d << " " << n << ":" << fmt("%.3f", ratio);
    }
    d << (iii_ok ? "" : " FAIL");

    TrialConfig b = c;
    b.n_antennas_list = {16};
    b.distances = {300.0};
    const std::vector<BitAllocation> grid = default_bit_grid();
    const std::vector<ResultRow> bits = run_codebook_bit_sweep(b, grid);
    bool iv_ok = true;
    d << "; (iv) sine-linear";
    for (const BitAllocation& a : grid) {
        const std::string tail = "/L1=" + std::to_string(a.l1_bits) + "/L2=" + std::to_string(a.l2_bits);
        const double sine = aggregate_rate(bits, "bit_sweep/sine" + tail, 16, 300.0, "codebook");
        const double lin = aggregate_rate(bits, "bit_sweep/linear" + tail, 16, 300.0, "codebook");
        iv_ok = iv_ok && sine >= lin;
        d << " " << a.l1_bits << "+" << a.l2_bits << ":" << fmt("%+.3f", sine - lin);
    }
    d << (iv_ok ? "" : " FAIL");

    o.pass = i_ok && ii_ok && iii_ok && iv_ok;
    o.detail = d.str();
    return o;
}

Outcome determinism()
{
    const std::vector<std::string> args{"simulate", "--trials", "20", "--seed", "7", "--jobs", "2"};
    std::ostringstream a, b, err;
    const int ra = cli::run(args, a, err);
    const int rb = cli::run(args, b, err);
    Outcome o;
    o.pass = ra == 0 && rb == 0 && !a.str().empty() && a.str() == b.str();
    o.detail = std::to_string(a.str().size()) + " bytes, " + (a.str() == b.str() ? "identical" : "different");
    if (ra != 0 || rb != 0) o.detail += "; exit " + std::to_string(ra) + "/" + std::to_string(rb) + " " + err.str();
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"optimal RPDR table", table_beta},
        {"optimal radius and capacity table", table_radii},
        {"condition number table", table_condition},
        {"closed-form SVD against numerical SVD", svd_oracle},
        {"spectrum invariant to tilt and center shift", misalignment_invariance},
        {"spectrum structure over a grid", spectrum_structure},
        {"distance closed form and far-field decay", geometry_oracle},
        {"water-filling KKT", water_filling_kkt},
        {"SIC determinant identity", sic_identity},
        {"Monte-Carlo rate orderings", monte_carlo},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
