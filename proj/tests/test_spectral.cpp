#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace axicorr;
using testutil::max_abs_diff;

namespace {

ComplexMatrix diag_from(const SpectralForm& sf) {
    ComplexMatrix d(sf.s.total_dim());
    for (int i = 0; i < d.dim(); ++i) d(i, i) = sf.p[static_cast<std::size_t>(i)];
    return d;
}

} // namespace

TEST_CASE("already diagonal blocks pass through") {
    const SpinLength s(1);
    const AState rho(s, 0.1, 0.2, {0.4, 0.3}, {cplx{}});
    const auto sf = diagonalize(rho);
    CHECK(sf.pk(1) == 0.4);
    CHECK(sf.pk(2) == 0.3);
    CHECK(sf.tqk(1) == 1.0);
    CHECK(sf.tuk(1) == cplx{});
}

TEST_CASE("degenerate block with dominant second entry flips the eigenvector") {
    const SpinLength s(1);
    const AState rho(s, 0.1, 0.2, {0.3, 0.4}, {cplx{}});
    const auto sf = diagonalize(rho);
    CHECK(sf.pk(1) == 0.4);
    CHECK(sf.pk(2) == 0.3);
    CHECK(sf.tqk(1) == 0.0);
    CHECK(sf.tuk(1) == cplx{1.0, 0.0});
}

TEST_CASE("Werner state eigenvalues") {
    const double w = 0.7;
    const SpinLength s(1);
    const AState rho(s, (1 - w) / 4, (1 - w) / 4, {0.25 + w / 4, 0.25 + w / 4}, {cplx(-w / 2, 0)});
    auto p = diagonalize(rho).p;
    std::sort(p.begin(), p.end());
    CHECK_THAT(p[0], Catch::Matchers::WithinAbs((1 - w) / 4, 1e-15));
    CHECK_THAT(p[1], Catch::Matchers::WithinAbs((1 - w) / 4, 1e-15));
    CHECK_THAT(p[2], Catch::Matchers::WithinAbs((1 - w) / 4, 1e-15));
    CHECK_THAT(p[3], Catch::Matchers::WithinAbs((1 + 3 * w) / 4, 1e-15));

    // cross-check against the dense solver
    const auto es = hermitian_eig(expand(rho));
    for (int i = 0; i < 4; ++i)
        CHECK_THAT(p[static_cast<std::size_t>(i)], Catch::Matchers::WithinAbs(es.values[i], 1e-13));
}

TEST_CASE("closed-form eigenvalues match the dense solver") {
    std::mt19937_64 rng(2024);
    for (int two_s : {1, 2, 3, 4, 5, 6, 7}) {
        const SpinLength s(two_s);
        for (int trial = 0; trial < 30; ++trial) {
            const AState rho = random_astate(s, rng);
            auto p = diagonalize(rho).p;
            std::sort(p.begin(), p.end());
            const auto es = hermitian_eig(expand(rho));
            for (std::size_t i = 0; i < p.size(); ++i)
                CHECK_THAT(p[i], Catch::Matchers::WithinAbs(es.values[i], 1e-12));
        }
    }
}

TEST_CASE("R reduces to a signature matrix for real diagonal states") {
    const SpinLength s(1);
    const AState rho(s, 0.1, 0.2, {0.4, 0.3}, {cplx{}});
    const auto r = build_r(diagonalize(rho));
    CHECK(r(0, 0) == cplx(1, 0));
    CHECK(r(1, 1) == cplx(1, 0));
    CHECK(r(2, 2) == cplx(-1, 0));
    CHECK(r(3, 3) == cplx(1, 0));
}

TEST_CASE("R is Hermitian, unitary and diagonalizes the state") {
    std::mt19937_64 rng(5);
    for (int two_s : {1, 2, 3, 4, 5, 6, 7}) {
        const SpinLength s(two_s);
        for (int trial = 0; trial < 30; ++trial) {
            const AState rho = random_astate(s, rng);
            const auto sf = diagonalize(rho);
            const auto r = build_r(sf);
            CHECK(hermiticity_defect(r) < 1e-15);
            CHECK(max_abs_diff(r * r, ComplexMatrix::identity(r.dim())) < 1e-13);
            CHECK(max_abs_diff(r * expand(rho) * r, diag_from(sf)) < 1e-12);
        }
    }
}

TEST_CASE("eigenvector normalization and eigenvalue identities") {
    std::mt19937_64 rng(6);
    for (int two_s : {1, 3, 5}) {
        const SpinLength s(two_s);
        for (int trial = 0; trial < 50; ++trial) {
            const AState rho = random_astate(s, rng);
            const auto sf = diagonalize(rho);
            const int K = two_s;
            for (int k = 1; k <= K; ++k) {
                CHECK_THAT(sf.tqk(k) * sf.tqk(k) + std::norm(sf.tuk(k)),
                           Catch::Matchers::WithinAbs(1.0, 1e-12));
                // q_k = p_k - a_{2S+k}
                const double diff = rho.ak(k) - rho.ak(K + k);
                const double r = std::hypot(diff, 2.0 * std::abs(rho.uk(k)));
                const double q = 0.5 * (diff + r);
                CHECK_THAT(q, Catch::Matchers::WithinAbs(sf.pk(k) - rho.ak(K + k), 1e-13));
                // q~_k^2 = (1 + (a_k - a_{2S+k})/(p_k - p_{2S+k}))/2 away from degeneracy
                const double gap = sf.pk(k) - sf.pk(K + k);
                if (gap > 1e-12)
                    CHECK_THAT(sf.tqk(k) * sf.tqk(k),
                               Catch::Matchers::WithinAbs(0.5 * (1.0 + diff / gap), 1e-11));
            }
        }
    }
}

TEST_CASE("coherence phases carry to the eigenvectors and nothing else") {
    std::mt19937_64 rng(7);
    const SpinLength s(3);
    const AState rho = random_astate(s, rng);
    const auto sf = diagonalize(rho);

    const double phi = 0.83;
    std::vector<cplx> u2 = rho.u;
    for (auto& v : u2) v *= std::polar(1.0, phi);
    const AState rho2(s, rho.p0, rho.p_last, rho.a, u2);
    const auto sf2 = diagonalize(rho2);

    for (std::size_t i = 0; i < sf.p.size(); ++i)
        CHECK_THAT(sf2.p[i], Catch::Matchers::WithinAbs(sf.p[i], 1e-15));
    for (int k = 1; k <= s.two_s; ++k) {
        CHECK_THAT(sf2.tqk(k), Catch::Matchers::WithinAbs(sf.tqk(k), 1e-15));
        CHECK(std::abs(sf2.tuk(k) - sf.tuk(k) * std::polar(1.0, phi)) < 1e-14);
    }
}

TEST_CASE("conjugated sigma_z for trivial R is sigma_z itself") {
    const SpinLength s(2);
    const AState rho(s, 0.3, 0.1, {0.2, 0.1, 0.1, 0.2}, {cplx{}, cplx{}});
    const auto m = conjugated_pauli(diagonalize(rho), Axis::z);
    const auto direct = kron(pauli(Axis::z), ComplexMatrix::identity(s.qudit_dim()));
    CHECK(max_abs_diff(m, direct) == 0.0);
}

TEST_CASE("conjugated sigma_x corner entries at S=1/2") {
    std::mt19937_64 rng(8);
    const SpinLength s(1);
    const AState rho = random_astate(s, rng);
    const auto sf = diagonalize(rho);
    const auto m = conjugated_pauli(sf, Axis::x);
    CHECK(std::abs(m(0, 1) - std::conj(sf.tuk(1))) < 1e-14);
    CHECK(std::abs(m(0, 2) - cplx(-sf.tqk(1), 0)) < 1e-14);
}

TEST_CASE("conjugated Pauli matrices keep the operator algebra") {
    std::mt19937_64 rng(9);
    for (int two_s : {1, 2, 5}) {
        const SpinLength s(two_s);
        const AState rho = random_astate(s, rng);
        const auto sf = diagonalize(rho);
        const auto mx = conjugated_pauli(sf, Axis::x);
        const auto my = conjugated_pauli(sf, Axis::y);
        const auto mz = conjugated_pauli(sf, Axis::z);
        // involutions, and sigma_y = i sigma_x sigma_z survives conjugation
        CHECK(max_abs_diff(mx * mx, ComplexMatrix::identity(mx.dim())) < 1e-13);
        CHECK(max_abs_diff(my * my, ComplexMatrix::identity(my.dim())) < 1e-13);
        CHECK(max_abs_diff(my, cplx(0, 1) * (mx * mz)) < 1e-13);
        // only the z image stays axially symmetric
        CHECK(is_axially_symmetric(mz, s));
        CHECK_NOTHROW(a_form_hamiltonian(mz, s));
    }
}
