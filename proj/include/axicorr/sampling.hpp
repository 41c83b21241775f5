#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "axicorr/a_form.hpp"

namespace axicorr {

/// Uniform double in [0, 1) built from the raw 64-bit stream, identical
/// across standard libraries (std::uniform_real_distribution is not).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random full-rank axially symmetric state: a floor keeps every
/// population away from zero, coherences are drawn inside the positivity
/// disc of their pair block with a uniform phase.
inline AState random_astate(SpinLength s, std::mt19937_64& rng) {
    const int K = s.two_s, n = s.total_dim();
    std::vector<double> w(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (auto& v : w) {
        v = uniform01(rng) + 0.01;
        sum += v;
    }
    for (auto& v : w) v /= sum;

    std::vector<double> a(w.begin() + 1, w.end() - 1);
    std::vector<cplx> u(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double cap = std::sqrt(a[k - 1] * a[K + k - 1]);
        const double mag = uniform01(rng) * cap;
        const double phi = 2.0 * std::numbers::pi * uniform01(rng);
        u[k - 1] = std::polar(mag, phi);
    }
    return AState(s, w.front(), w.back(), std::move(a), std::move(u));
}

inline ModelParams random_params(std::mt19937_64& rng, double scale = 2.0) {
    const auto draw = [&] { return scale * (2.0 * uniform01(rng) - 1.0); };
    ModelParams p;
    p.b1 = draw();
    p.b2 = draw();
    p.j = draw();
    p.jz = draw();
    p.k1 = draw();
    p.k2 = draw();
    p.dz = draw();
    return p;
}

} // namespace axicorr
