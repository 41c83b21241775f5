#pragma once

#include <cmath>
#include <stdexcept>

#include "axicorr/complex_matrix.hpp"

namespace axicorr {

/// Spin length S of the qudit side, stored exactly as 2S so half-integer
/// spins need no floating point. The qubit side is always spin-1/2.
struct SpinLength {
    int two_s;

    explicit SpinLength(int two_s_) : two_s(two_s_) {
        if (two_s < 1) throw std::invalid_argument("SpinLength: 2S must be >= 1");
    }

    double value() const { return 0.5 * two_s; }
    int qudit_dim() const { return two_s + 1; }     // d = 2S+1
    int total_dim() const { return 2 * (two_s + 1); } // n = 2(2S+1)

    friend bool operator==(SpinLength a, SpinLength b) { return a.two_s == b.two_s; }
};

enum class Axis { x, y, z };

inline ComplexMatrix pauli(Axis axis) {
    ComplexMatrix m(2);
    switch (axis) {
    case Axis::x: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case Axis::y: m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case Axis::z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

struct SpinMatrices {
    ComplexMatrix x, y, z;
};

/// Spin-S matrices in the basis |m> with m = S, S-1, ..., -S.
/// Off-diagonal magnitudes are b_m = sqrt((S+m)(S-m+1))/2 coupling m <-> m-1.
inline SpinMatrices spin_matrices(SpinLength s) {
    const int d = s.qudit_dim();
    const double S = s.value();
    SpinMatrices out{ComplexMatrix(d), ComplexMatrix(d), ComplexMatrix(d)};
    for (int i = 0; i < d; ++i) out.z(i, i) = S - i;
    for (int i = 0; i + 1 < d; ++i) {
        const double m = S - i; // b_m couples rows i and i+1
        const double b = std::sqrt((S + m) * (S - m + 1.0)) / 2.0;
        out.x(i, i + 1) = b;
        out.x(i + 1, i) = b;
        out.y(i, i + 1) = cplx(0, -b);
        out.y(i + 1, i) = cplx(0, b);
    }
    return out;
}

/// z-component of total spin, s_z x I + I x S_z. Diagonal with the two
/// extreme eigenvalues +-(1/2+S) simple and all 4S interior ones doubly
/// degenerate: entries k and 2S+k coincide for k = 1..2S.
inline ComplexMatrix total_sz(SpinLength s) {
    const int d = s.qudit_dim();
    const double S = s.value();
    ComplexMatrix m(2 * d);
    for (int i = 0; i < d; ++i) {
        m(i, i) = 0.5 + (S - i);
        m(d + i, d + i) = -0.5 + (S - i);
    }
    return m;
}

} // namespace axicorr
