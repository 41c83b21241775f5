#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "axicorr/complex_matrix.hpp"
#include "axicorr/spin.hpp"

namespace axicorr {

// Matrices commuting with the total-spin z-component have a fixed sparsity
// pattern: two 1x1 corner blocks plus a 4Sx4S interior block whose nonzeros
// sit on the main diagonal and on the pair sub-diagonals (k, 2S+k). The set
// of such matrices is closed under sums and products.

struct NotHermitianError : std::runtime_error {
    explicit NotHermitianError(double defect)
        : std::runtime_error("matrix is not Hermitian (defect " + std::to_string(defect) + ")") {}
};

struct NotAxiallySymmetricError : std::runtime_error {
    int row, col;
    NotAxiallySymmetricError(int r, int c, double mag)
        : std::runtime_error("entry (" + std::to_string(r) + "," + std::to_string(c) +
                             ") of magnitude " + std::to_string(mag) +
                             " breaks the axial pattern"),
          row(r), col(c) {}
};

struct NotAStateError : std::runtime_error {
    explicit NotAStateError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double structural_tol = 1e-12;

/// Axially symmetric density matrix: corner populations p0, p_last,
/// interior diagonal a_1..a_{4S} and pair coherences u_1..u_{2S}.
/// Accessors ak()/uk() use the 1-based pair index k.
struct AState {
    SpinLength s;
    double p0 = 0.0, p_last = 0.0;
    std::vector<double> a; // a_1..a_{4S}
    std::vector<cplx> u;   // u_1..u_{2S}

    AState(SpinLength s_, double p0_, double p_last_, std::vector<double> a_, std::vector<cplx> u_)
        : s(s_), p0(p0_), p_last(p_last_), a(std::move(a_)), u(std::move(u_)) {
        validate();
    }

    double ak(int k) const { return a[static_cast<std::size_t>(k) - 1]; }
    cplx uk(int k) const { return u[static_cast<std::size_t>(k) - 1]; }

    void validate() const {
        const int K = s.two_s;
        if (static_cast<int>(a.size()) != 2 * K || static_cast<int>(u.size()) != K)
            throw NotAStateError("field sizes do not match 2S");
        double tr = p0 + p_last;
        for (double v : a) tr += v;
        if (std::abs(tr - 1.0) > structural_tol)
            throw NotAStateError("trace deviates from 1 by " + std::to_string(tr - 1.0));
        if (p0 < -structural_tol || p_last < -structural_tol)
            throw NotAStateError("negative corner population");
        for (double v : a)
            if (v < -structural_tol) throw NotAStateError("negative diagonal entry");
        for (int k = 1; k <= K; ++k) {
            const double det = ak(k) * ak(K + k) - std::norm(uk(k));
            if (det < -structural_tol)
                throw NotAStateError("pair block " + std::to_string(k) +
                                     " not positive semidefinite (det " + std::to_string(det) + ")");
        }
    }
};

/// Axially symmetric Hamiltonian: corner energies e0, e_last, interior
/// diagonal h_1..h_{4S} and pair couplings g_1..g_{2S}. Units k_B = hbar = 1.
struct AHamiltonian {
    SpinLength s;
    double e0 = 0.0, e_last = 0.0;
    std::vector<double> h; // h_1..h_{4S}
    std::vector<cplx> g;   // g_1..g_{2S}

    AHamiltonian(SpinLength s_, double e0_, double e_last_, std::vector<double> h_, std::vector<cplx> g_)
        : s(s_), e0(e0_), e_last(e_last_), h(std::move(h_)), g(std::move(g_)) {
        const int K = s.two_s;
        if (static_cast<int>(h.size()) != 2 * K || static_cast<int>(g.size()) != K)
            throw std::invalid_argument("AHamiltonian: field sizes do not match 2S");
        auto finite = [](double v) { return std::isfinite(v); };
        if (!finite(e0) || !finite(e_last))
            throw std::invalid_argument("AHamiltonian: non-finite corner energy");
        for (double v : h)
            if (!finite(v)) throw std::invalid_argument("AHamiltonian: non-finite diagonal");
        for (cplx v : g)
            if (!finite(v.real()) || !finite(v.imag()))
                throw std::invalid_argument("AHamiltonian: non-finite coupling");
    }

    double hk(int k) const { return h[static_cast<std::size_t>(k) - 1]; }
    cplx gk(int k) const { return g[static_cast<std::size_t>(k) - 1]; }
};

inline ComplexMatrix expand(const AState& rho) {
    const int K = rho.s.two_s, n = rho.s.total_dim();
    ComplexMatrix m(n);
    m(0, 0) = rho.p0;
    m(n - 1, n - 1) = rho.p_last;
    for (int k = 1; k <= 2 * K; ++k) m(k, k) = rho.ak(k);
    for (int k = 1; k <= K; ++k) {
        m(k, K + k) = rho.uk(k);
        m(K + k, k) = std::conj(rho.uk(k));
    }
    return m;
}

inline ComplexMatrix expand(const AHamiltonian& ham) {
    const int K = ham.s.two_s, n = ham.s.total_dim();
    ComplexMatrix m(n);
    m(0, 0) = ham.e0;
    m(n - 1, n - 1) = ham.e_last;
    for (int k = 1; k <= 2 * K; ++k) m(k, k) = ham.hk(k);
    for (int k = 1; k <= K; ++k) {
        m(k, K + k) = ham.gk(k);
        m(K + k, k) = std::conj(ham.gk(k));
    }
    return m;
}

namespace detail {

/// Sparsity-pattern scan; throws with the worst offending index pair.
/// Tolerance scales with the matrix max norm so O(1) Hamiltonians and
/// trace-one states are treated alike.
inline void check_pattern(const ComplexMatrix& m, SpinLength s) {
    const int n = s.total_dim(), K = s.two_s;
    if (m.dim() != n) throw std::invalid_argument("matrix dimension does not match spin length");
    if (!m.is_finite()) throw std::invalid_argument("matrix has non-finite entries");
    const double tol = structural_tol * std::max(1.0, m.max_abs());

    auto allowed = [&](int r, int c) {
        if (r == c) return true;
        const int lo = std::min(r, c), hi = std::max(r, c);
        return lo >= 1 && lo <= K && hi == K + lo;
    };
    int worst_r = -1, worst_c = -1;
    double worst = tol;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            if (allowed(r, c)) continue;
            const double mag = std::abs(m(r, c));
            if (mag > worst) { worst = mag; worst_r = r; worst_c = c; }
        }
    if (worst_r >= 0) throw NotAxiallySymmetricError(worst_r, worst_c, worst);
}

inline void check_a_pattern(const ComplexMatrix& m, SpinLength s) {
    check_pattern(m, s);
    const double tol = structural_tol * std::max(1.0, m.max_abs());
    const double herm = hermiticity_defect(m);
    if (herm > tol) throw NotHermitianError(herm);
}

} // namespace detail

/// Pattern-only membership test (products of Hermitian members stay in
/// the pattern but need not stay Hermitian).
inline bool is_axially_symmetric(const ComplexMatrix& m, SpinLength s) {
    try {
        detail::check_pattern(m, s);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

/// Extract the compact Hamiltonian form, rejecting anything outside the
/// axial pattern.
inline AHamiltonian a_form_hamiltonian(const ComplexMatrix& m, SpinLength s) {
    detail::check_a_pattern(m, s);
    const int K = s.two_s, n = s.total_dim();
    std::vector<double> h(2 * K);
    std::vector<cplx> g(K);
    for (int k = 1; k <= 2 * K; ++k) h[k - 1] = m(k, k).real();
    for (int k = 1; k <= K; ++k) g[k - 1] = m(k, K + k);
    return AHamiltonian(s, m(0, 0).real(), m(n - 1, n - 1).real(), std::move(h), std::move(g));
}

/// Trace-one variant: additionally enforces the state invariants.
inline AState a_form_state(const ComplexMatrix& m, SpinLength s) {
    detail::check_a_pattern(m, s);
    const int K = s.two_s, n = s.total_dim();
    std::vector<double> a(2 * K);
    std::vector<cplx> u(K);
    for (int k = 1; k <= 2 * K; ++k) a[k - 1] = m(k, k).real();
    for (int k = 1; k <= K; ++k) u[k - 1] = m(k, K + k);
    return AState(s, m(0, 0).real(), m(n - 1, n - 1).real(), std::move(a), std::move(u));
}

/// Seven-coupling two-spin model: longitudinal fields B1, B2, planar and
/// longitudinal exchange J, Jz, single- and two-ion uniaxial anisotropies
/// K1, K2 and the z-component Dz of the antisymmetric exchange vector.
struct ModelParams {
    double b1 = 0.0, b2 = 0.0;
    double j = 0.0, jz = 0.0;
    double k1 = 0.0, k2 = 0.0;
    double dz = 0.0;
};

struct ModelHamiltonian {
    ComplexMatrix full;
    AHamiltonian compact;
};

/// H = B1 s_z + B2 S_z + J(s_x S_x + s_y S_y) + Jz s_z S_z
///   + Dz(s_x S_y - s_y S_x) + K1 S_z^2 + K2 s_z S_z^2,
/// with s_a = sigma_a/2 on the qubit. Commutes with total_sz by construction.
inline ModelHamiltonian build_model_hamiltonian(const ModelParams& p, SpinLength s) {
    const int d = s.qudit_dim();
    const SpinMatrices S = spin_matrices(s);
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    const ComplexMatrix idd = ComplexMatrix::identity(d);
    const ComplexMatrix sx = 0.5 * pauli(Axis::x);
    const ComplexMatrix sy = 0.5 * pauli(Axis::y);
    const ComplexMatrix sz = 0.5 * pauli(Axis::z);
    const ComplexMatrix sz2 = S.z * S.z;

    ComplexMatrix full = p.b1 * kron(sz, idd);
    full += p.b2 * kron(id2, S.z);
    full += p.j * (kron(sx, S.x) + kron(sy, S.y));
    full += p.jz * kron(sz, S.z);
    full += p.dz * (kron(sx, S.y) - kron(sy, S.x));
    full += p.k1 * kron(id2, sz2);
    full += p.k2 * kron(sz, sz2);

    AHamiltonian compact = a_form_hamiltonian(full, s);
    return {std::move(full), std::move(compact)};
}

} // namespace axicorr
