#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "axicorr/a_form.hpp"
#include "axicorr/correlations.hpp"
#include "axicorr/spectral.hpp"

namespace axicorr {

struct NotTabulatedError : std::runtime_error {
    explicit NotTabulatedError(const std::string& what) : std::runtime_error(what) {}
};

/// Levels of a pair block: e_low/e_high = (h_k + h_{2S+k} -+ splitting)/2
/// with splitting = sqrt((h_k - h_{2S+k})^2 + 4|g_k|^2). Index-k states
/// carry the lower energy so their Boltzmann weights come out larger,
/// matching the p_k >= p_{2S+k} spectral convention.
struct EnergyPair {
    double e_low = 0.0;
    double e_high = 0.0;
    double splitting = 0.0;
};

struct EnergySpectrum {
    SpinLength s;
    double e0 = 0.0, e_last = 0.0;
    std::vector<EnergyPair> pairs; // 2S entries

    /// Full level listing ordered as [e0, lows..., highs..., e_last].
    std::vector<double> levels() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(s.total_dim()));
        out.push_back(e0);
        for (const auto& pr : pairs) out.push_back(pr.e_low);
        for (const auto& pr : pairs) out.push_back(pr.e_high);
        out.push_back(e_last);
        return out;
    }

    double min_energy() const {
        double m = std::min(e0, e_last);
        for (const auto& pr : pairs) m = std::min(m, pr.e_low);
        return m;
    }
};

inline EnergySpectrum energy_levels(const AHamiltonian& ham) {
    const int K = ham.s.two_s;
    EnergySpectrum spec{ham.s, ham.e0, ham.e_last, {}};
    spec.pairs.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double hk = ham.hk(k), hq = ham.hk(K + k);
        const double r = std::hypot(hk - hq, 2.0 * std::abs(ham.gk(k)));
        spec.pairs.push_back({0.5 * (hk + hq - r), 0.5 * (hk + hq + r), r});
    }
    return spec;
}

/// Z = sum_n exp(-E_n / T). Internally shifted by the ground energy so
/// low temperatures cannot overflow the intermediate sum; the returned
/// value itself may still be huge for deeply negative spectra.
inline double partition_function(const EnergySpectrum& spec, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("partition_function: T must be positive");
    const double emin = spec.min_energy();
    double acc = 0.0;
    for (double e : spec.levels()) acc += std::exp(-(e - emin) / t);
    return acc * std::exp(-emin / t);
}

namespace detail {

struct GibbsWeights {
    double z = 0.0;                 // shifted partition sum
    double w0 = 0.0, w_last = 0.0;  // corner weights (shifted)
    std::vector<double> w_low;      // weight of the lower level per pair
    std::vector<double> w_high;
};

inline GibbsWeights gibbs_weights(const AHamiltonian& ham, const EnergySpectrum& spec, double t) {
    const int K = ham.s.two_s;
    const double emin = spec.min_energy();
    GibbsWeights w;
    w.w0 = std::exp(-(spec.e0 - emin) / t);
    w.w_last = std::exp(-(spec.e_last - emin) / t);
    w.w_low.resize(static_cast<std::size_t>(K));
    w.w_high.resize(static_cast<std::size_t>(K));
    w.z = w.w0 + w.w_last;
    for (int k = 0; k < K; ++k) {
        w.w_low[k] = std::exp(-(spec.pairs[k].e_low - emin) / t);
        w.w_high[k] = std::exp(-(spec.pairs[k].e_high - emin) / t);
        w.z += w.w_low[k] + w.w_high[k];
    }
    return w;
}

/// sinh(x)/x with the series takeover below 1e-6.
inline double sinhc(double x) {
    if (std::abs(x) < 1e-6) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sinh(x) / x;
}

} // namespace detail

inline AState ground_state(const AHamiltonian& ham);

/// Gibbs state of an axially symmetric Hamiltonian in closed form. Pair
/// entries follow
///   a = (cosh(R/2T) -+ ((h_k - h_{2S+k})/R) sinh(R/2T)) e^{-(h_k+h_{2S+k})/2T} / Z,
///   u = -(2 g_k / (Z R)) sinh(R/2T) e^{-(h_k+h_{2S+k})/2T},
/// evaluated through energy-shifted Boltzmann weights so arbitrarily low
/// temperatures stay finite. T = 0 delegates to ground_state.
inline AState gibbs_state(const AHamiltonian& ham, double t) {
    if (t == 0.0) return ground_state(ham);
    if (!(t > 0.0)) throw std::invalid_argument("gibbs_state: T must be >= 0");

    const int K = ham.s.two_s;
    const EnergySpectrum spec = energy_levels(ham);
    const auto w = detail::gibbs_weights(ham, spec, t);

    std::vector<double> a(static_cast<std::size_t>(2 * K));
    std::vector<cplx> u(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) {
        const double hk = ham.hk(k), hq = ham.hk(K + k);
        const double r = spec.pairs[k - 1].splitting;
        const double cosh_term = 0.5 * (w.w_low[k - 1] + w.w_high[k - 1]);
        const double sinh_term = 0.5 * (w.w_low[k - 1] - w.w_high[k - 1]);
        if (r == 0.0) {
            a[k - 1] = cosh_term / w.z;
            a[K + k - 1] = cosh_term / w.z;
            u[k - 1] = 0.0;
            continue;
        }
        const double ratio = (hq - hk) / r;
        const double x = 0.5 * r / t;
        if (x < 1e-6) {
            // splitting much smaller than T: expand sinh around zero
            const double emin = spec.min_energy();
            const double mid = 0.5 * (hk + hq);
            const double base = std::exp(-(mid - emin) / t) * detail::sinhc(x);
            a[k - 1] = (cosh_term + ratio * base * x) / w.z;
            a[K + k - 1] = (cosh_term - ratio * base * x) / w.z;
            u[k - 1] = -ham.gk(k) / t * base / w.z;
        } else {
            a[k - 1] = (cosh_term + ratio * sinh_term) / w.z;
            a[K + k - 1] = (cosh_term - ratio * sinh_term) / w.z;
            u[k - 1] = -2.0 * ham.gk(k) / r * sinh_term / w.z;
        }
    }
    return AState(ham.s, w.w0 / w.z, w.w_last / w.z, std::move(a), std::move(u));
}

/// Spectral form of the Gibbs state taken straight from the energy
/// spectrum: eigenvalues are Boltzmann weights (full relative accuracy
/// even when they underflow the diagonal entries), eigenvector parameters
/// are temperature independent, inherited from the Hamiltonian blocks.
inline SpectralForm gibbs_spectral(const AHamiltonian& ham, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("gibbs_spectral: T must be positive");
    const int K = ham.s.two_s, n = ham.s.total_dim();
    const EnergySpectrum spec = energy_levels(ham);
    const auto w = detail::gibbs_weights(ham, spec, t);

    SpectralForm sf{ham.s, std::vector<double>(n), std::vector<double>(K), std::vector<cplx>(K)};
    sf.p[0] = w.w0 / w.z;
    sf.p[n - 1] = w.w_last / w.z;
    for (int k = 1; k <= K; ++k) {
        sf.p[k] = w.w_low[k - 1] / w.z;
        sf.p[K + k] = w.w_high[k - 1] / w.z;
        const double delta = ham.hk(k) - ham.hk(K + k);
        const cplx g = ham.gk(k);
        const double mag = std::abs(g);
        if (mag == 0.0) {
            sf.tq[k - 1] = delta <= 0.0 ? 1.0 : 0.0;
            sf.tu[k - 1] = delta <= 0.0 ? cplx{} : cplx{1.0, 0.0};
            continue;
        }
        const double r = spec.pairs[k - 1].splitting;
        // dominant eigenvector of the Gibbs block: q ~ (r - delta)/2, u ~ -g;
        // for delta > 0 the difference r - delta is formed cancellation-free
        const double half = delta > 0.0 ? 2.0 * mag * mag / (r + delta) : 0.5 * (r - delta);
        const double norm = std::hypot(half, mag);
        sf.tq[k - 1] = half / norm;
        sf.tu[k - 1] = -g / norm;
    }
    return sf;
}

/// Uniform mixture over every eigenstate within a relative window of the
/// minimal energy, assembled directly as an axially symmetric state.
inline AState ground_state(const AHamiltonian& ham) {
    const int K = ham.s.two_s;
    const EnergySpectrum spec = energy_levels(ham);
    const double emin = spec.min_energy();
    const double window = 1e-12 * std::max(1.0, std::abs(emin));

    struct PairPick {
        int k;
        bool upper; // true: higher level of the block
        detail::PairVector vec;
    };
    std::vector<PairPick> picks;
    bool pick0 = spec.e0 <= emin + window;
    bool pick_last = spec.e_last <= emin + window;
    for (int k = 1; k <= K; ++k) {
        const auto vec = detail::pair_eigenvector(ham.hk(k), ham.hk(K + k), ham.gk(k));
        if (spec.pairs[k - 1].e_low <= emin + window) picks.push_back({k, false, vec});
        if (spec.pairs[k - 1].e_high <= emin + window) picks.push_back({k, true, vec});
    }
    const int count = static_cast<int>(picks.size()) + (pick0 ? 1 : 0) + (pick_last ? 1 : 0);
    const double weight = 1.0 / count;

    std::vector<double> a(static_cast<std::size_t>(2 * K), 0.0);
    std::vector<cplx> u(static_cast<std::size_t>(K), cplx{});
    for (const auto& pick : picks) {
        const double tq = pick.vec.tq;
        const cplx tu = pick.vec.tu;
        if (pick.upper) {
            // higher level pairs with the (tq, tu*) eigenvector
            a[pick.k - 1] += weight * tq * tq;
            a[K + pick.k - 1] += weight * std::norm(tu);
            u[pick.k - 1] += weight * tq * tu;
        } else {
            // lower level pairs with (tu, -tq)
            a[pick.k - 1] += weight * std::norm(tu);
            a[K + pick.k - 1] += weight * tq * tq;
            u[pick.k - 1] -= weight * tq * tu;
        }
    }
    return AState(ham.s, pick0 ? weight : 0.0, pick_last ? weight : 0.0, std::move(a), std::move(u));
}

/// Correlations of the thermal state. For T > 0 the branch formulas are
/// fed the weight-based spectral form, which keeps tiny eigenvalues at
/// full relative accuracy; T = 0 uses the ground-state mixture.
inline CorrelationResult thermal_correlations(const AHamiltonian& ham, double t) {
    if (t == 0.0) return correlations(ground_state(ham));
    return correlations(gibbs_state(ham, t), gibbs_spectral(ham, t));
}

struct HighTCoefficients {
    double f0 = 0.0, f1 = 0.0; // leading 1/T^2 amplitudes of the F branches
    double u0 = 0.0, u1 = 0.0; // U amplitudes are exactly half of those
};

/// Leading high-temperature amplitudes c with branch ~ c/T^2, tabulated
/// for S = 1, 3/2, 2, 5/2. The b2 and k1 couplings drop out of the
/// leading order entirely.
inline HighTCoefficients high_t_coefficients(const ModelParams& p, SpinLength s) {
    const double iso = p.j * p.j + p.dz * p.dz;
    const double mix = p.j * p.j + p.jz * p.jz + p.dz * p.dz + 2.0 * p.b1 * p.k2;
    const double b1sq = p.b1 * p.b1, k2sq = p.k2 * p.k2;
    HighTCoefficients c;
    switch (s.two_s) {
    case 2:
        c.f0 = iso / 3.0;
        c.f1 = (3.0 * b1sq + 2.0 * k2sq + 2.0 * mix) / 12.0;
        break;
    case 3:
        c.f0 = 5.0 * iso / 8.0;
        c.f1 = (16.0 * b1sq + 41.0 * k2sq + 20.0 * mix) / 64.0;
        break;
    case 4:
        c.f0 = iso;
        c.f1 = (5.0 * b1sq + 34.0 * k2sq + 10.0 * mix) / 20.0;
        break;
    case 5:
        c.f0 = 35.0 * iso / 24.0;
        c.f1 = (48.0 * b1sq + 707.0 * k2sq + 140.0 * mix) / 192.0;
        break;
    default:
        throw NotTabulatedError("high-T amplitudes tabulated only for 2S in {2,3,4,5}");
    }
    c.u0 = 0.5 * c.f0;
    c.u1 = 0.5 * c.f1;
    return c;
}

/// Closed-form LQFI of the isotropic-exchange thermal state H = J s.S,
/// tabulated for S = 1, 3/2, 2, 5/2.
inline double xxx_closed_form_f(SpinLength s, double j, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("xxx_closed_form_f: T must be positive");
    const double x = j / t;
    switch (s.two_s) {
    case 2:
        return 16.0 / 9.0 * std::sinh(0.75 * x) * std::tanh(0.75 * x) /
               (2.0 + std::exp(1.5 * x)) * std::exp(0.75 * x);
    case 3: {
        const double sh = std::sinh(x);
        return 5.0 * sh * sh / (4.0 + 4.0 * std::cosh(2.0 * x) - std::sinh(2.0 * x));
    }
    case 4: {
        const double sh = std::sinh(1.25 * x);
        return 32.0 * sh * sh / (5.0 * (5.0 + 5.0 * std::cosh(2.5 * x) - std::sinh(2.5 * x)));
    }
    case 5:
        return 35.0 / 9.0 * (std::cosh(3.0 * x) - 1.0) /
               (6.0 + 6.0 * std::cosh(3.0 * x) - std::sinh(3.0 * x));
    default:
        throw NotTabulatedError("closed form tabulated only for 2S in {2,3,4,5}");
    }
}

/// Negativity threshold temperature of the isotropic model,
/// (2S+1)/(2 ln(2S+2)); the renormalized variant divides by a further S.
inline double threshold_temperature(SpinLength s, bool renormalized) {
    const double S = s.value();
    const double base = (2.0 * S + 1.0) / (2.0 * std::log(2.0 * S + 2.0));
    return renormalized ? base / S : base;
}

} // namespace axicorr
