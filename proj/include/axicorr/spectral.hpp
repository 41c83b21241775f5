#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "axicorr/a_form.hpp"
#include "axicorr/complex_matrix.hpp"
#include "axicorr/spin.hpp"

namespace axicorr {

/// Analytic spectral data of an axially symmetric state: eigenvalues
/// p_0..p_{4S+1} plus the eigenvector parameters (q~_k, u~_k) of the
/// Hermitian-unitary transform R. Convention: p_k >= p_{2S+k} within
/// each pair block.
struct SpectralForm {
    SpinLength s;
    std::vector<double> p;  // 4S+2 entries
    std::vector<double> tq; // q~_1..q~_{2S}
    std::vector<cplx> tu;   // u~_1..u~_{2S}

    double pk(int i) const { return p[static_cast<std::size_t>(i)]; }
    double tqk(int k) const { return tq[static_cast<std::size_t>(k) - 1]; }
    cplx tuk(int k) const { return tu[static_cast<std::size_t>(k) - 1]; }
};

namespace detail {

/// Eigenvector parameters of the 2x2 Hermitian block [[a, u], [u*, b]]
/// for its larger eigenvalue, with q = (a - b + r)/2 evaluated in the
/// cancellation-free form when a < b. Degenerate blocks (|u| ~ 0) pick
/// the basis vector matching whichever diagonal entry dominates.
struct PairVector {
    double tq;
    cplx tu;
};

inline PairVector pair_eigenvector(double a, double b, cplx u) {
    const double mag = std::abs(u);
    if (mag <= 1e-14) {
        if (a >= b) return {1.0, cplx{}};
        return {0.0, cplx{1.0, 0.0}};
    }
    const double diff = a - b;
    const double r = std::hypot(diff, 2.0 * mag);
    const double q = diff >= 0.0 ? 0.5 * (diff + r) : 2.0 * mag * mag / (r - diff);
    const double norm = std::hypot(q, mag);
    return {q / norm, u / norm};
}

} // namespace detail

/// Closed-form diagonalization. Pair eigenvalues are
/// p = (a_k + a_{2S+k} +- sqrt((a_k - a_{2S+k})^2 + 4|u_k|^2))/2;
/// the corners pass through unchanged. Lower block eigenvalues below
/// 1e-14 of the block trace are snapped to exactly zero so projector
/// mixtures keep exact square roots downstream.
inline SpectralForm diagonalize(const AState& rho) {
    const int K = rho.s.two_s, n = rho.s.total_dim();
    SpectralForm sf{rho.s, std::vector<double>(n), std::vector<double>(K), std::vector<cplx>(K)};
    sf.p[0] = std::max(rho.p0, 0.0);
    sf.p[n - 1] = std::max(rho.p_last, 0.0);
    for (int k = 1; k <= K; ++k) {
        const double a = rho.ak(k), b = rho.ak(K + k);
        const cplx u = rho.uk(k);
        const double r = std::hypot(a - b, 2.0 * std::abs(u));
        double hi = 0.5 * (a + b + r);
        double lo = 0.5 * (a + b - r);
        if (lo < 1e-14 * (a + b)) lo = 0.0;
        sf.p[k] = hi;
        sf.p[K + k] = lo;
        const auto vec = detail::pair_eigenvector(a, b, u);
        sf.tq[k - 1] = vec.tq;
        sf.tu[k - 1] = vec.tu;
    }
    return sf;
}

/// The diagonalizing transform R: corner 1s, q~_k / -q~_k on the interior
/// diagonal and u~_k on the pair sub-diagonals. R is both Hermitian and
/// unitary, and R rho R = diag(p).
inline ComplexMatrix build_r(const SpectralForm& sf) {
    const int K = sf.s.two_s, n = sf.s.total_dim();
    ComplexMatrix r(n);
    r(0, 0) = 1.0;
    r(n - 1, n - 1) = 1.0;
    for (int k = 1; k <= K; ++k) {
        r(k, k) = sf.tqk(k);
        r(K + k, K + k) = -sf.tqk(k);
        r(k, K + k) = sf.tuk(k);
        r(K + k, k) = std::conj(sf.tuk(k));
    }
    return r;
}

/// R (sigma_axis x I_d) R as an explicit matrix product; the z case is
/// again axially symmetric, x and y are not.
inline ComplexMatrix conjugated_pauli(const SpectralForm& sf, Axis axis) {
    const ComplexMatrix r = build_r(sf);
    const ComplexMatrix op = kron(pauli(axis), ComplexMatrix::identity(sf.s.qudit_dim()));
    return r * op * r;
}

} // namespace axicorr
