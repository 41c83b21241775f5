#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "axicorr/complex_matrix.hpp"

namespace axicorr {

struct EigenSystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns are the matching eigenvectors
};

/// Cyclic Jacobi diagonalization for complex Hermitian matrices. Each
/// rotation zeroes one off-diagonal pair through a phase followed by a
/// plane rotation; sweeps repeat until the off-diagonal Frobenius mass
/// drops below 1e-14 relative to the matrix scale. Quadratic convergence
/// makes this plenty for n <= ~30.
inline EigenSystem hermitian_eig(const ComplexMatrix& input) {
    const int n = input.dim();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, a.frobenius_norm());
    const double target = 1e-14 * scale;

    auto off_mass = [&]() {
        double s = 0.0;
        for (int r = 0; r < n; ++r)
            for (int c = r + 1; c < n; ++c) s += std::norm(a(r, c));
        return std::sqrt(2.0 * s);
    };

    constexpr int max_sweeps = 60;
    int sweep = 0;
    for (; sweep < max_sweeps && off_mass() > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;

                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(tau, 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sv = t * c;
                const cplx spc = sv * phase;          // entry J(p,q)
                const cplx smc = -sv * std::conj(phase); // entry J(q,p)

                // A <- J^dag A J, touching only rows/columns p and q.
                for (int r = 0; r < n; ++r) {
                    const cplx arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp + smc * arq;
                    a(r, q) = spc * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const cplx apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr + std::conj(smc) * aqr;
                    a(q, r) = std::conj(spc) * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (int r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p), vrq = v(r, q);
                    v(r, p) = c * vrp + smc * vrq;
                    v(r, q) = spc * vrp + c * vrq;
                }
            }
        }
    }
    if (sweep == max_sweeps && off_mass() > target)
        throw std::runtime_error("hermitian_eig: Jacobi sweeps did not converge");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
    for (int c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

} // namespace axicorr
