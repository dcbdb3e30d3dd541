#include "doctest.h"

#include <cmath>
#include <complex>

#include "minami/errors.hpp"
#include "minami/herglotz.hpp"

using namespace minami;

TEST_CASE("constructor certifies positivity") {
    const HerglotzMatrix a(Complex(0, 1) * CMatrix::Identity(3, 3));
    CHECK(a.certified_min_eig() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(HerglotzMatrix(CMatrix::Identity(2, 2)), NotHerglotzError);
    try {
        HerglotzMatrix bad(CMatrix::Identity(2, 2));
    } catch (const NotHerglotzError& e) {
        CHECK(std::fabs(e.min_imag_eigenvalue) <= 1e-14);
    }
}

TEST_CASE("neg_inverse fixed points") {
    const HerglotzMatrix a(Complex(0, 1) * CMatrix::Identity(2, 2));
    const HerglotzMatrix b = neg_inverse(a);
    CHECK((b.matrix() - a.matrix()).cwiseAbs().maxCoeff() <= 1e-15);

    const HerglotzMatrix s(Complex(0, 2) * CMatrix::Identity(1, 1));
    const HerglotzMatrix t = neg_inverse(s);
    CHECK(std::abs(t.matrix()(0, 0) - Complex(0, 0.5)) <= 1e-15);
}

TEST_CASE("neg_inverse is an involution and preserves positivity") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(static_cast<Index>(1 + seed % 8), seed, 1.0);
        const HerglotzMatrix inv = neg_inverse(a);
        CHECK(is_herglotz(inv.matrix()));
        const HerglotzMatrix back = neg_inverse(inv);
        const double rel = (back.matrix() - a.matrix()).norm() / a.matrix().norm();
        CHECK(rel <= 1e-9);
    }
}

TEST_CASE("imaginary part transforms as C^{-1*} (Im C) C^{-1}") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(static_cast<Index>(2 + seed % 4), seed, 2.0);
        const CMatrix inv = a.matrix().partialPivLu().inverse();
        const CMatrix expected = inv.adjoint() * imag_part(a.matrix()) * inv;
        const CMatrix actual = imag_part(neg_inverse(a).matrix());
        CHECK((actual - expected).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + expected.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("neg_inverse refuses an ill-conditioned certificate") {
    CMatrix m(2, 2);
    m << Complex(1.0, 1.0), 0, 0, Complex(0, 1e-13);
    const HerglotzMatrix a(m, 1e-14);  // explicit weak gate
    CHECK_THROWS_AS(neg_inverse(a), ConditioningError);
}

TEST_CASE("sampler is deterministic in the seed") {
    const HerglotzMatrix a = sample_random_herglotz(5, 42, 1.0);
    const HerglotzMatrix b = sample_random_herglotz(5, 42, 1.0);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);
    const HerglotzMatrix c = sample_random_herglotz(5, 43, 1.0);
    CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("sampler output always passes the gate with margin eps/2") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const double spread = (seed % 3 == 0) ? 0.5 : (seed % 3 == 1 ? 1.0 : 5.0);
        const HerglotzMatrix a = sample_random_herglotz(static_cast<Index>(1 + seed % 8), seed, spread);
        CHECK(is_herglotz(a.matrix(), 0.05 * spread / 2.0));
    }
}

TEST_CASE("sampler n=1 small-spread limit approaches eps * i") {
    const double spread = 1e-9;
    const double eps = 0.05 * spread;
    const HerglotzMatrix a = sample_random_herglotz(1, 7, spread);
    const Complex v = a.matrix()(0, 0);
    CHECK(std::fabs(v.real()) <= spread);
    CHECK(v.imag() >= eps);
    CHECK(v.imag() <= eps + 2.0 * spread * spread * (1.0 + 1e-9));
}

TEST_CASE("sampler rejects bad arguments") {
    CHECK_THROWS_AS(sample_random_herglotz(0, 1, 1.0), InvalidInputError);
    CHECK_THROWS_AS(sample_random_herglotz(2, 1, 0.0), InvalidInputError);
}
