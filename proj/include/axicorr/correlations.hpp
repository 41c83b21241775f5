#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "axicorr/a_form.hpp"
#include "axicorr/hermitian_eig.hpp"
#include "axicorr/spectral.hpp"

namespace axicorr {

enum class Branch { zero, one, tie };
enum class Method { closed_form, oracle_fallback };

inline const char* to_string(Branch b) {
    switch (b) {
    case Branch::zero: return "zero-branch";
    case Branch::one: return "one-branch";
    default: return "tie";
    }
}

inline const char* to_string(Method m) {
    return m == Method::closed_form ? "closed-form" : "oracle-fallback";
}

/// Pair of branch values. needs_fallback is raised when a vanishing
/// denominator admits a finite nonzero limit, in which case the caller
/// re-evaluates through the matrix oracle instead.
struct BranchPair {
    double b0 = 0.0, b1 = 0.0;
    bool needs_fallback = false;
};

struct MeasureResult {
    double b0 = 0.0, b1 = 0.0, value = 0.0;
    Branch active = Branch::tie;
    Method method = Method::closed_form;
};

struct CorrelationResult {
    double u0 = 0.0, u1 = 0.0, u = 0.0;
    double f0 = 0.0, f1 = 0.0, f = 0.0;
    Branch active_u = Branch::tie;
    Branch active_f = Branch::tie;
    Method method = Method::closed_form;
};

inline constexpr double denom_tol = 1e-12;
inline constexpr double tie_tol = 1e-12;

// ---------------------------------------------------------------------------
// Closed-form branches
// ---------------------------------------------------------------------------

/// Skew-information branches. Every vanishing denominator here forces the
/// whole term to zero (a dead pair block bounds the numerator by the same
/// scale), so no fallback is ever required for this measure.
inline BranchPair lqu_branches(const AState& rho, const SpectralForm& sf) {
    const int K = rho.s.two_s, n = rho.s.total_dim();
    std::vector<double> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = std::sqrt(std::max(sf.p[i], 0.0));

    double u0 = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double sum = sq[k] + sq[K + k];
        if (sum * sum < denom_tol) continue; // term bounded by the dead block
        const double da = rho.ak(k) - rho.ak(K + k);
        const double dd = sq[k] - sq[K + k];
        u0 += dd * dd - (da * da) / (sum * sum);
    }

    // (a + sqrt(p_k p_{2S+k})) / (sqrt(p_k) + sqrt(p_{2S+k})) for pair k;
    // the ratio itself is bounded by the denominator, so a dead block
    // contributes zero.
    auto pair_ratio = [&](int k, double a_entry) {
        const double den = sq[k] + sq[K + k];
        if (den < denom_tol) return 0.0;
        return (a_entry + sq[k] * sq[K + k]) / den;
    };

    double acc = pair_ratio(1, rho.ak(K + 1)) * sq[0];
    acc += pair_ratio(K, rho.ak(K)) * sq[n - 1];
    for (int k = 1; k <= K - 1; ++k)
        acc += pair_ratio(k, rho.ak(k)) * pair_ratio(k + 1, rho.ak(K + 1 + k));
    const double u1 = 1.0 - 2.0 * acc;

    return {u0, u1, false};
}

/// Fisher-information branches. The zero branch needs only coherences and
/// diagonal entries. The one branch is rational in the eigenvalues; its
/// inner coupling term has finite nonzero limits when two eigenvalues of
/// neighbouring blocks vanish together, which raises needs_fallback.
inline BranchPair lqfi_branches(const AState& rho, const SpectralForm& sf) {
    const int K = rho.s.two_s, n = rho.s.total_dim();
    const auto& p = sf.p;

    double f0 = 0.0;
    for (int k = 1; k <= K; ++k) {
        const double den = rho.ak(k) + rho.ak(K + k);
        if (den < denom_tol) continue; // |u|^2 <= (den/2)^2
        f0 += std::norm(rho.uk(k)) / den;
    }
    f0 *= 4.0;

    bool fallback = false;
    double acc = 0.0;

    // Corner terms vanish with either of their denominator factors.
    if (p[0] + p[1] >= denom_tol && p[0] + p[K + 1] >= denom_tol)
        acc += p[0] * (rho.ak(K + 1) * p[0] + p[1] * p[K + 1]) /
               ((p[0] + p[1]) * (p[0] + p[K + 1]));
    if (p[K] + p[n - 1] >= denom_tol && p[2 * K] + p[n - 1] >= denom_tol)
        acc += p[n - 1] * (rho.ak(K) * p[n - 1] + p[K] * p[2 * K]) /
               ((p[K] + p[n - 1]) * (p[2 * K] + p[n - 1]));

    double inner = 0.0;
    for (int k = 1; k <= K - 1; ++k) {
        const double pk = p[k], pk1 = p[k + 1], pq = p[K + k], pq1 = p[K + 1 + k];
        const double ak = rho.ak(k), ak1 = rho.ak(k + 1);
        const double aq1 = rho.ak(K + 1 + k);
        const double f1d = pk + pk1, f2d = pk1 + pq, f3d = pq + pq1, f4d = pq1 + pk;

        if (f1d >= denom_tol && f2d >= denom_tol)
            inner += (ak * pk1 + pk * pq) * pk1 / (f1d * f2d);

        if (f1d >= denom_tol && f2d >= denom_tol && f3d >= denom_tol && f4d >= denom_tol) {
            const double num =
                ak * (pq1 * (pq * (pk + pk1) + pk * pk1) + pk * pk1 * pq) +
                pk * pq * (pk * pq - pk1 * pq1);
            inner += num / (f1d * f2d * f3d * f4d) * (aq1 - ak1);
        } else {
            fallback = true; // indeterminate limit, defer to the oracle
        }

        if (f4d >= denom_tol && f3d >= denom_tol)
            inner += (ak * pq1 + pk * pq) * pq1 / (f4d * f3d);
    }
    acc += 0.5 * inner;

    return {f0, 1.0 - 4.0 * acc, fallback};
}

// ---------------------------------------------------------------------------
// Matrix oracles
// ---------------------------------------------------------------------------

/// Hermitian PSD square root through dense eigendecomposition, negative
/// dirt clamped to zero.
inline ComplexMatrix sqrt_rho(const AState& rho) {
    const auto es = hermitian_eig(expand(rho));
    const int n = rho.s.total_dim();
    std::vector<double> root(n);
    for (int i = 0; i < n; ++i) root[i] = std::sqrt(std::max(es.values[i], 0.0));
    ComplexMatrix out(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            cplx acc = 0.0;
            for (int m = 0; m < n; ++m)
                acc += es.vectors(r, m) * root[m] * std::conj(es.vectors(c, m));
            out(r, c) = acc;
        }
    return out;
}

using Sym3 = std::array<std::array<double, 3>, 3>;

/// Largest eigenvalue of a symmetric 3x3 matrix by the trigonometric
/// closed form of the characteristic cubic. Deterministic, no iteration.
inline double lambda_max_sym3(const Sym3& m) {
    const double off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if (off == 0.0) return std::max({m[0][0], m[1][1], m[2][2]});
    const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    double p2 = 2.0 * off;
    for (int i = 0; i < 3; ++i) {
        const double d = m[i][i] - q;
        p2 += d * d;
    }
    const double pscale = std::sqrt(p2 / 6.0);
    std::array<std::array<double, 3>, 3> b{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) b[i][j] = (m[i][j] - (i == j ? q : 0.0)) / pscale;
    const double detb =
        b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
        b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
        b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    const double r = std::clamp(detb / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * pscale * std::cos(phi);
}

namespace detail {

inline ComplexMatrix local_pauli(Axis axis, SpinLength s) {
    return kron(pauli(axis), ComplexMatrix::identity(s.qudit_dim()));
}

} // namespace detail

/// W_{mu nu} = Tr{ sqrt(rho) (sigma_mu x I) sqrt(rho) (sigma_nu x I) }.
/// Diagonal with W_xx = W_yy on axially symmetric states.
inline Sym3 oracle_w(const AState& rho) {
    const ComplexMatrix sr = sqrt_rho(rho);
    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    std::array<ComplexMatrix, 3> half;
    for (int i = 0; i < 3; ++i) half[i] = sr * detail::local_pauli(axes[i], rho.s);
    Sym3 w{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const cplx t = (half[i] * half[j]).trace();
            w[i][j] = w[j][i] = t.real();
        }
    return w;
}

/// M_{mu nu} = sum over eigenpairs with p_m + p_n > 0 of
/// 2 p_m p_n / (p_m + p_n) <m|sigma_mu x I|n><n|sigma_nu x I|m>.
inline Sym3 oracle_m(const AState& rho) {
    const auto es = hermitian_eig(expand(rho));
    const int n = rho.s.total_dim();
    const std::array<Axis, 3> axes{Axis::x, Axis::y, Axis::z};
    std::array<ComplexMatrix, 3> ops;
    for (int i = 0; i < 3; ++i) {
        const ComplexMatrix tmp = detail::local_pauli(axes[i], rho.s) * es.vectors;
        ops[i] = es.vectors.adjoint() * tmp;
    }
    std::vector<double> p(es.values);
    for (auto& v : p) v = std::max(v, 0.0);

    Sym3 m{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double acc = 0.0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const double den = p[r] + p[c];
                    if (den <= 1e-14) continue;
                    acc += 2.0 * p[r] * p[c] / den * (ops[i](r, c) * ops[j](c, r)).real();
                }
            m[i][j] = m[j][i] = acc;
        }
    return m;
}

// ---------------------------------------------------------------------------
// Measures
// ---------------------------------------------------------------------------

namespace detail {

inline MeasureResult assemble(double b0, double b1, Method method) {
    MeasureResult r;
    r.b0 = b0;
    r.b1 = b1;
    r.value = std::min(b0, b1);
    if (std::abs(b0 - b1) < tie_tol) r.active = Branch::tie;
    else r.active = b0 < b1 ? Branch::zero : Branch::one;
    r.method = method;
    return r;
}

} // namespace detail

/// Local quantum uncertainty: min over local qubit observables of the
/// Wigner-Yanase skew information, equal to 1 - lambda_max(W).
inline MeasureResult lqu(const AState& rho, const SpectralForm& sf) {
    const BranchPair bp = lqu_branches(rho, sf);
    if (!bp.needs_fallback) return detail::assemble(bp.b0, bp.b1, Method::closed_form);
    const Sym3 w = oracle_w(rho);
    return detail::assemble(1.0 - w[2][2], 1.0 - w[0][0], Method::oracle_fallback);
}

inline MeasureResult lqu(const AState& rho) { return lqu(rho, diagonalize(rho)); }

/// Local quantum Fisher information (interferometric power): min over
/// local qubit observables of the quantum Fisher information, equal to
/// 1 - lambda_max(M).
inline MeasureResult lqfi(const AState& rho, const SpectralForm& sf) {
    const BranchPair bp = lqfi_branches(rho, sf);
    if (!bp.needs_fallback) return detail::assemble(bp.b0, bp.b1, Method::closed_form);
    const Sym3 m = oracle_m(rho);
    return detail::assemble(1.0 - m[2][2], 1.0 - m[0][0], Method::oracle_fallback);
}

inline MeasureResult lqfi(const AState& rho) { return lqfi(rho, diagonalize(rho)); }

inline CorrelationResult correlations(const AState& rho, const SpectralForm& sf) {
    const MeasureResult mu = lqu(rho, sf);
    const MeasureResult mf = lqfi(rho, sf);
    CorrelationResult r;
    r.u0 = mu.b0; r.u1 = mu.b1; r.u = mu.value; r.active_u = mu.active;
    r.f0 = mf.b0; r.f1 = mf.b1; r.f = mf.value; r.active_f = mf.active;
    r.method = (mu.method == Method::oracle_fallback || mf.method == Method::oracle_fallback)
                   ? Method::oracle_fallback
                   : Method::closed_form;
    return r;
}

inline CorrelationResult correlations(const AState& rho) {
    return correlations(rho, diagonalize(rho));
}

// ---------------------------------------------------------------------------
// Direct observable-level quantities
// ---------------------------------------------------------------------------

/// Local qubit observable n.sigma x I with unit Bloch vector n.
struct LocalObservable {
    double nx = 0.0, ny = 0.0, nz = 1.0;

    LocalObservable() = default;
    LocalObservable(double x, double y, double z) : nx(x), ny(y), nz(z) {
        const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
        if (std::abs(len - 1.0) > 1e-12)
            throw std::invalid_argument("LocalObservable: Bloch vector must be unit length");
    }

    ComplexMatrix matrix(SpinLength s) const {
        ComplexMatrix dir = nx * pauli(Axis::x);
        dir += ny * pauli(Axis::y);
        dir += nz * pauli(Axis::z);
        return kron(dir, ComplexMatrix::identity(s.qudit_dim()));
    }
};

inline double variance(const AState& rho, const LocalObservable& obs) {
    const ComplexMatrix full = expand(rho);
    const ComplexMatrix h = obs.matrix(rho.s);
    const double mean = expectation(full, h).real();
    const double second = expectation(full, h * h).real();
    return second - mean * mean;
}

/// Wigner-Yanase skew information -Tr([sqrt(rho), H]^2)/2.
inline double skew_information(const AState& rho, const LocalObservable& obs) {
    const ComplexMatrix sr = sqrt_rho(rho);
    const ComplexMatrix h = obs.matrix(rho.s);
    const ComplexMatrix c = commutator(sr, h);
    return -0.5 * (c * c).trace().real();
}

/// Quantum Fisher information in the spectral representation,
/// sum (p_m - p_n)^2 / (p_m + p_n) |H_mn|^2 / 2, zero-weight pairs skipped.
inline double qfi(const AState& rho, const LocalObservable& obs) {
    const auto es = hermitian_eig(expand(rho));
    const int n = rho.s.total_dim();
    const ComplexMatrix h = es.vectors.adjoint() * (obs.matrix(rho.s) * es.vectors);
    std::vector<double> p(es.values);
    for (auto& v : p) v = std::max(v, 0.0);
    double acc = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const double den = p[r] + p[c];
            if (den <= 1e-14) continue;
            const double diff = p[r] - p[c];
            acc += diff * diff / den * std::norm(h(r, c));
        }
    return 0.5 * acc;
}

/// Quasi-uniform Bloch-sphere grid (golden-angle spiral), no pole clustering.
inline std::vector<LocalObservable> fibonacci_sphere(int count) {
    std::vector<LocalObservable> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
        const double z = 1.0 - 2.0 * (i + 0.5) / count;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double th = golden * i;
        pts.emplace_back(r * std::cos(th), r * std::sin(th), z);
    }
    return pts;
}

/// Brute-force minimization over the observable grid; independent of the
/// closed forms and of the 3x3 matrix route. The square root / spectrum
/// is computed once and reused across grid points.
inline double min_skew_information(const AState& rho, int grid_points = 2000) {
    const ComplexMatrix sr = sqrt_rho(rho);
    const ComplexMatrix full = expand(rho);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& obs : fibonacci_sphere(grid_points)) {
        const ComplexMatrix h = obs.matrix(rho.s);
        const ComplexMatrix b = sr * h;
        // -Tr([sr,H]^2)/2 = Tr(rho H^2) - Tr((sr H)^2)
        cplx tr_b2 = 0.0;
        for (int r = 0; r < b.dim(); ++r)
            for (int c = 0; c < b.dim(); ++c) tr_b2 += b(r, c) * b(c, r);
        const double val = expectation(full, h * h).real() - tr_b2.real();
        best = std::min(best, val);
    }
    return best;
}

inline double min_qfi(const AState& rho, int grid_points = 2000) {
    const auto es = hermitian_eig(expand(rho));
    const int n = rho.s.total_dim();
    std::vector<double> p(es.values);
    for (auto& v : p) v = std::max(v, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& obs : fibonacci_sphere(grid_points)) {
        const ComplexMatrix h = es.vectors.adjoint() * (obs.matrix(rho.s) * es.vectors);
        double acc = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                const double den = p[r] + p[c];
                if (den <= 1e-14) continue;
                const double diff = p[r] - p[c];
                acc += diff * diff / den * std::norm(h(r, c));
            }
        best = std::min(best, 0.5 * acc);
    }
    return best;
}

} // namespace axicorr
