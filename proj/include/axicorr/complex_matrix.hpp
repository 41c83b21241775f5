#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace axicorr {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for two-spin problems
/// (n <= ~30), so everything is plain O(n^3) with no blocking.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim) {
        if (dim <= 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cplx& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * dim_ + c]; }
    cplx operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * dim_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Largest entry magnitude (max norm).
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool is_finite() const {
        for (const auto& v : data_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(cplx z) {
        for (auto& v : data_) v *= z;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(cplx z, ComplexMatrix a) { return a *= z; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx z) { return a *= z; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const int n = a.dim_;
        ComplexMatrix out(n);
        for (int r = 0; r < n; ++r) {
            for (int k = 0; k < n; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (int c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
            }
        }
        return out;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca) {
            const cplx v = a(ra, ca);
            if (v == cplx{}) continue;
            for (int rb = 0; rb < nb; ++rb)
                for (int cb = 0; cb < nb; ++cb)
                    out(ra * nb + rb, ca * nb + cb) = v * b(rb, cb);
        }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

inline double hermiticity_defect(const ComplexMatrix& m) {
    double w = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = r; c < m.dim(); ++c)
            w = std::max(w, std::abs(m(r, c) - std::conj(m(c, r))));
    return w;
}

inline cplx expectation(const ComplexMatrix& rho, const ComplexMatrix& op) {
    cplx t = 0.0;
    for (int r = 0; r < rho.dim(); ++r)
        for (int k = 0; k < rho.dim(); ++k) t += rho(r, k) * op(k, r);
    return t;
}

} // namespace axicorr
