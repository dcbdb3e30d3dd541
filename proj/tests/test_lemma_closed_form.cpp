#include "doctest.h"

#include <cmath>
#include <complex>

#include "minami/errors.hpp"
#include "minami/lemma_closed_form.hpp"
#include "minami/rng.hpp"

using namespace minami;
using namespace std::complex_literals;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

HerglotzMatrix make(Complex a11, Complex a12, Complex a21, Complex a22) {
    CMatrix m(2, 2);
    m << a11, a12, a21, a22;
    return HerglotzMatrix(m);
}

double det_im_direct(const HerglotzMatrix& a) {
    const CMatrix m = imag_part(a.matrix());
    return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
}

}  // namespace

TEST_CASE("det_im_2x2 on fixed matrices") {
    CHECK(det_im_2x2(make(1i, 0, 0, 1i)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(det_im_2x2(make(1i, 1, 0, 1i)) == doctest::Approx(0.75).epsilon(1e-14));

    // Hermitian off-diagonal pair contributes nothing to the operator
    // imaginary part, anti-Hermitian pair contributes fully.
    const Complex c(0.3, 0.4);
    CHECK(det_im_2x2(make(1i, c, std::conj(c), 1i)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(det_im_2x2(make(1i, c, -std::conj(c), 1i)) == doctest::Approx(1.0 - std::norm(c)).epsilon(1e-14));
    CHECK(det_im_2x2(make(1i, 0, 0, 1i)) == doctest::Approx(1.0));
}

TEST_CASE("det_im_2x2 agrees with the direct determinant of the imaginary part") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(2, seed, 2.0);
        const double expected = det_im_direct(a);
        CHECK(det_im_2x2(a) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("det_im_2x2 ignores the real diagonal") {
    const HerglotzMatrix a = sample_random_herglotz(2, 5, 1.0);
    CMatrix shifted = a.matrix();
    shifted(0, 0) += 17.0;
    shifted(1, 1) -= 4.5;
    CHECK(det_im_2x2(HerglotzMatrix(shifted)) == doctest::Approx(det_im_2x2(a)).epsilon(1e-13));
}

TEST_CASE("discriminant on fixed matrices") {
    CHECK(discriminant_2x2(make(1i, 0, 0, 1i)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(discriminant_2x2(make(1i, 1, 0, 1i)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(discriminant_2x2(make(1i, 1, 1, 1i)) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("closed-form value on fixed matrices") {
    const Lemma1Report diag = lemma1_value(make(1i, 0, 0, 1i));
    CHECK(diag.value == doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK(diag.ratio == doctest::Approx(1.0).epsilon(1e-12));

    const Lemma1Report upper = lemma1_value(make(1i, 1, 0, 1i));
    CHECK(upper.value == doctest::Approx(0.75 * kPi * kPi).epsilon(1e-13));

    const Lemma1Report symmetric = lemma1_value(make(1i, 1, 1, 1i));
    CHECK(symmetric.value == doctest::Approx(kPi * kPi / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("value is invariant under real diagonal shifts") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(2, seed, 1.0);
        const double base = lemma1_value(a).value;
        Rng rng(seed + 1000);
        for (int k = 0; k < 3; ++k) {
            CMatrix shifted = a.matrix();
            shifted(0, 0) += rng.uniform_pm(1e3);
            shifted(1, 1) += rng.uniform_pm(1e3);
            const double moved = lemma1_value(HerglotzMatrix(shifted)).value;
            CHECK(std::fabs(moved - base) <= 1e-10 * base);
        }
    }
}

TEST_CASE("value is positive, bounded by pi^2, consistent with its own fields") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const double spread = (seed % 2) ? 0.7 : 3.0;
        const HerglotzMatrix a = sample_random_herglotz(2, seed, spread);
        const Lemma1Report r = lemma1_value(a);
        CHECK(r.value > 0.0);
        CHECK(r.value <= kPi * kPi * (1.0 + 1e-12));
        CHECK(r.ratio <= 1.0 + 1e-12);
        CHECK(r.value == doctest::Approx(2.0 * kPi * kPi * r.det_im_a / std::sqrt(r.delta)).epsilon(1e-13));
        CHECK(r.bound == kPi * kPi);
    }
}

TEST_CASE("symmetric off-diagonal case collapses the discriminant") {
    // equal off-diagonal entries: delta/4 = det_im^2 + det_im * |a12|^2
    const Complex c(0.5, 0.3);
    const HerglotzMatrix a = make(1i, c, c, 2.0i);
    const Lemma1Report r = lemma1_value(a);
    const double expected = r.det_im_a * r.det_im_a + r.det_im_a * std::norm(c);
    CHECK(r.delta / 4.0 == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("equality holds exactly for diagonal matrices and only there") {
    const Lemma1Report diag = lemma1_value(make(Complex(1.5, 2.0), 0, 0, Complex(-0.5, 0.7)));
    CHECK(std::fabs(diag.ratio - 1.0) <= 1e-12);

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(2, seed, 1.0);
        const double off = std::max(std::abs(a.matrix()(0, 1)), std::abs(a.matrix()(1, 0)));
        const Lemma1Report r = lemma1_value(a);
        if (off > 1e-3 * r.det_im_a) CHECK(r.ratio < 1.0);
    }
}

TEST_CASE("dimension is enforced") {
    const HerglotzMatrix a = sample_random_herglotz(3, 1, 1.0);
    CHECK_THROWS_AS(det_im_2x2(a), InvalidInputError);
    CHECK_THROWS_AS(discriminant_2x2(a), InvalidInputError);
    CHECK_THROWS_AS(lemma1_value(a), InvalidInputError);
}
