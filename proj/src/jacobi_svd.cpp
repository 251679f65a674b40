// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ucalos Authors

#include "ucalos/jacobi_svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace ucalos {

SvdTriple numerical_svd(const CMatrix& input, JacobiOptions opts)
{
    if (input.rows() != input.cols() || input.rows() == 0)
        throw std::invalid_argument("numerical_svd: expected a non-empty square matrix");
    if (!input.allFinite()) throw std::invalid_argument("numerical_svd: non-finite entry");

    const Eigen::Index n = input.cols();
    CMatrix a = input;
    CMatrix v = CMatrix::Identity(n, n);

    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        converged = true;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double alpha = a.col(p).squaredNorm();
                const double beta = a.col(q).squaredNorm();
                const cplx gamma = a.col(p).dot(a.col(q));  // a_p^H a_q
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= opts.tolerance * std::sqrt(alpha * beta)) continue;
                converged = false;

                // Rotate column q so the pair's inner product is real, then
                // apply the real symmetric Jacobi rotation.
                const cplx phase = gamma / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;

                const CVector ap = a.col(p);
                const CVector aq = a.col(q) * std::conj(phase);
                a.col(p) = c * ap - s * aq;
                a.col(q) = s * ap + c * aq;

                const CVector vp = v.col(p);
                const CVector vq = v.col(q) * std::conj(phase);
                v.col(p) = c * vp - s * vq;
                v.col(q) = s * vp + c * vq;
            }
        }
    }
    if (!converged)
        throw NumericalError("numerical_svd: no convergence after " +
                             std::to_string(opts.max_sweeps) + " sweeps");

    RVector norms(n);
    for (Eigen::Index k = 0; k < n; ++k) norms(k) = a.col(k).norm();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return norms(i) > norms(j); });

    SvdTriple out;
    out.sigma.resize(n);
    out.u = CMatrix::Zero(n, n);
    out.v.resize(n, n);
    const double floor = std::max(norms.maxCoeff(), 1.0) * 1e-14;
    Eigen::Index defined = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.sigma(k) = norms(src);
        out.v.col(k) = v.col(src);
        if (norms(src) > floor) {
            out.u.col(k) = a.col(src) / norms(src);
            ++defined;
        }
    }

    // Left vectors of (numerically) zero singular values are arbitrary;
    // complete them to an orthonormal basis.
    if (defined < n) {
        Eigen::HouseholderQR<CMatrix> qr(out.u.leftCols(defined));
        const CMatrix full = qr.householderQ() * CMatrix::Identity(n, n);
        out.u.rightCols(n - defined) = full.rightCols(n - defined);
    }
    return out;
}

}  // namespace ucalos
