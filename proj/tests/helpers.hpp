#pragma once

#include <random>

#include "axicorr/axicorr.hpp"

namespace testutil {

using namespace axicorr;

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

/// Random Hermitian matrix in the axial pattern (not trace-normalized).
inline ComplexMatrix random_a_matrix(SpinLength s, std::mt19937_64& rng) {
    const int K = s.two_s;
    std::vector<double> h(static_cast<std::size_t>(2 * K));
    std::vector<cplx> g(static_cast<std::size_t>(K));
    for (auto& v : h) v = 2.0 * uniform01(rng) - 1.0;
    for (auto& v : g) v = cplx(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
    return expand(AHamiltonian(s, 2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0,
                               std::move(h), std::move(g)));
}

} // namespace testutil
