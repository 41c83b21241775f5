#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace axicorr;
using testutil::max_abs_diff;

TEST_CASE("spin matrices for S=1/2 are half the Pauli matrices") {
    const auto m = spin_matrices(SpinLength(1));
    CHECK(m.z(0, 0) == 0.5);
    CHECK(m.z(1, 1) == -0.5);
    CHECK(m.x(0, 1) == 0.5);
    CHECK(m.x(1, 0) == 0.5);
    CHECK(m.y(0, 1) == cplx(0, -0.5));
    CHECK(m.y(1, 0) == cplx(0, 0.5));
}

TEST_CASE("spin matrices for S=1 have off-diagonal 1/sqrt(2)") {
    const auto m = spin_matrices(SpinLength(2));
    const double b = 1.0 / std::sqrt(2.0);
    CHECK(m.z(0, 0).real() == 1.0);
    CHECK(m.z(1, 1).real() == 0.0);
    CHECK(m.z(2, 2).real() == -1.0);
    CHECK_THAT(m.x(0, 1).real(), Catch::Matchers::WithinAbs(b, 1e-15));
    CHECK_THAT(m.x(1, 2).real(), Catch::Matchers::WithinAbs(b, 1e-15));
}

TEST_CASE("angular momentum algebra [Sx,Sy] = i Sz") {
    for (int two_s : {1, 2, 3, 5, 7}) {
        const auto m = spin_matrices(SpinLength(two_s));
        ComplexMatrix defect = commutator(m.x, m.y) - cplx(0, 1) * m.z;
        CHECK(defect.max_abs() < 1e-14);
        CHECK(hermiticity_defect(m.x) == 0.0);
        CHECK(hermiticity_defect(m.y) == 0.0);
        CHECK(hermiticity_defect(m.z) == 0.0);
    }
}

TEST_CASE("total_sz spectra") {
    SECTION("S=1/2") {
        const auto m = total_sz(SpinLength(1));
        const double want[] = {1.0, 0.0, 0.0, -1.0};
        for (int i = 0; i < 4; ++i) CHECK(m(i, i).real() == want[i]);
    }
    SECTION("S=1") {
        const auto m = total_sz(SpinLength(2));
        const double want[] = {1.5, 0.5, -0.5, 0.5, -0.5, -1.5};
        for (int i = 0; i < 6; ++i) CHECK(m(i, i).real() == want[i]);
    }
    SECTION("interior eigenvalues doubly degenerate, extremes simple") {
        for (int two_s : {1, 2, 3, 4, 5, 7}) {
            const SpinLength s(two_s);
            const auto m = total_sz(s);
            const int K = two_s, n = s.total_dim();
            CHECK(m(0, 0).real() == 0.5 + s.value());
            CHECK(m(n - 1, n - 1).real() == -0.5 - s.value());
            for (int k = 1; k <= K; ++k) CHECK(m(k, k) == m(K + k, K + k));
            // extremes appear nowhere else
            for (int i = 1; i < n - 1; ++i) {
                CHECK(m(i, i).real() != m(0, 0).real());
                CHECK(m(i, i).real() != m(n - 1, n - 1).real());
            }
        }
    }
}

TEST_CASE("model Hamiltonian commutes with total_sz and is Hermitian") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 1000; ++trial) {
        const SpinLength s(1 + static_cast<int>(rng() % 7));
        const auto params = random_params(rng);
        const auto built = build_model_hamiltonian(params, s);
        CHECK(commutator(built.full, total_sz(s)).max_abs() < 1e-13);
        CHECK(hermiticity_defect(built.full) < 1e-14);
    }
}

TEST_CASE("model Hamiltonian compact entries at S=1") {
    // E_{0,last} = K1 + Jz/2 +- (B1/2 + B2 + K2/2); h_{1,4} = +-B1/2;
    // h_{2,3} = -Jz/2 + K1 +- ((B1+K2)/2 - B2); g_1 = g_2 = (J + i Dz)/sqrt(2)
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto p = random_params(rng);
        const auto ham = build_model_hamiltonian(p, SpinLength(2)).compact;
        const double eplus = p.k1 + p.jz / 2 + (p.b1 / 2 + p.b2 + p.k2 / 2);
        const double eminus = p.k1 + p.jz / 2 - (p.b1 / 2 + p.b2 + p.k2 / 2);
        CHECK_THAT(ham.e0, Catch::Matchers::WithinAbs(eplus, 1e-13));
        CHECK_THAT(ham.e_last, Catch::Matchers::WithinAbs(eminus, 1e-13));
        CHECK_THAT(ham.hk(1), Catch::Matchers::WithinAbs(p.b1 / 2, 1e-13));
        CHECK_THAT(ham.hk(4), Catch::Matchers::WithinAbs(-p.b1 / 2, 1e-13));
        const double inner = (p.b1 + p.k2) / 2 - p.b2;
        CHECK_THAT(ham.hk(2), Catch::Matchers::WithinAbs(-p.jz / 2 + p.k1 + inner, 1e-13));
        CHECK_THAT(ham.hk(3), Catch::Matchers::WithinAbs(-p.jz / 2 + p.k1 - inner, 1e-13));
        const cplx g = cplx(p.j, p.dz) / std::sqrt(2.0);
        CHECK(std::abs(ham.gk(1) - g) < 1e-13);
        CHECK(std::abs(ham.gk(2) - g) < 1e-13);
    }
}

TEST_CASE("all-zero couplings give the zero Hamiltonian") {
    const auto built = build_model_hamiltonian(ModelParams{}, SpinLength(3));
    CHECK(built.full.max_abs() == 0.0);
    CHECK(built.compact.e0 == 0.0);
    CHECK(built.compact.e_last == 0.0);
    for (double h : built.compact.h) CHECK(h == 0.0);
    for (cplx g : built.compact.g) CHECK(g == cplx{});
}

TEST_CASE("compact form round-trips through expand") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const SpinLength s(3);
        const auto built = build_model_hamiltonian(random_params(rng), s);
        CHECK(max_abs_diff(expand(built.compact), built.full) == 0.0);
    }
}

TEST_CASE("a_form_state accepts the maximally mixed state") {
    const SpinLength s(2);
    const int n = s.total_dim();
    ComplexMatrix m = ComplexMatrix::identity(n);
    m *= cplx(1.0 / n, 0.0);
    const AState rho = a_form_state(m, s);
    CHECK(rho.p0 == 1.0 / n);
    CHECK(rho.p_last == 1.0 / n);
    for (int k = 1; k <= 2 * s.two_s; ++k) CHECK(rho.ak(k) == 1.0 / n);
    for (int k = 1; k <= s.two_s; ++k) CHECK(rho.uk(k) == cplx{});
}

TEST_CASE("pattern violations are rejected with the offending index") {
    const SpinLength s(2);
    ComplexMatrix m = ComplexMatrix::identity(s.total_dim());
    m *= cplx(1.0 / s.total_dim(), 0.0);
    m(0, 1) = 0.1;
    m(1, 0) = 0.1;
    try {
        a_form_state(m, s);
        FAIL("expected NotAxiallySymmetricError");
    } catch (const NotAxiallySymmetricError& e) {
        CHECK(e.row == 0);
        CHECK(e.col == 1);
    }
}

TEST_CASE("non-Hermitian matrices are rejected") {
    const SpinLength s(1);
    ComplexMatrix m(4);
    m(0, 0) = 0.25;
    m(3, 3) = 0.25;
    m(1, 1) = 0.25;
    m(2, 2) = 0.25;
    m(1, 2) = cplx(0.1, 0.0);
    m(2, 1) = cplx(0.2, 0.0);
    CHECK_THROWS_AS(a_form_state(m, s), NotHermitianError);
}

TEST_CASE("state invariant violations are rejected") {
    const SpinLength s(1);
    // trace off
    CHECK_THROWS_AS(AState(s, 0.3, 0.3, {0.3, 0.3}, {cplx{}}), NotAStateError);
    // negative population
    CHECK_THROWS_AS(AState(s, -0.1, 0.3, {0.4, 0.4}, {cplx{}}), NotAStateError);
    // coherence breaking block positivity
    CHECK_THROWS_AS(AState(s, 0.25, 0.25, {0.25, 0.25}, {cplx(0.3, 0.0)}), NotAStateError);
}

TEST_CASE("axial family is closed under sums and products") {
    std::mt19937_64 rng(123);
    for (int two_s : {1, 2, 3, 4}) {
        const SpinLength s(two_s);
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix x = testutil::random_a_matrix(s, rng);
            const ComplexMatrix y = testutil::random_a_matrix(s, rng);
            CHECK(is_axially_symmetric(x * y, s));
            CHECK(is_axially_symmetric(x + y, s));
            // Hermitian members keep full validity under sums and squares
            CHECK_NOTHROW(a_form_hamiltonian(x + y, s));
            CHECK_NOTHROW(a_form_hamiltonian(x * x, s));
        }
    }
}
