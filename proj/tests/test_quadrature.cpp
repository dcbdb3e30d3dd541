#include "doctest.h"

#include <cmath>
#include <complex>

#include "minami/errors.hpp"
#include "minami/lemma_closed_form.hpp"
#include "minami/quadrature.hpp"
#include "minami/rng.hpp"

using namespace minami;
using namespace std::complex_literals;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

HerglotzMatrix make2(Complex a11, Complex a12, Complex a21, Complex a22) {
    CMatrix m(2, 2);
    m << a11, a12, a21, a22;
    return HerglotzMatrix(m);
}

}  // namespace

TEST_CASE("closed Cauchy integral") {
    CHECK(cauchy_integral_closed(1.0, -1.0i) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(cauchy_integral_closed(2.0, -2.0i) == doctest::Approx(kPi / 4.0).epsilon(1e-14));
    CHECK_THROWS_AS(cauchy_integral_closed(1.0, 1.0i), DomainError);
}

TEST_CASE("closed quadratic integral") {
    CHECK(quadratic_integral_closed(1, 0, 1) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(quadratic_integral_closed(1, 2, 2) == doctest::Approx(kPi).epsilon(1e-14));
    CHECK_THROWS_AS(quadratic_integral_closed(1, 0, 0), DomainError);
    CHECK_THROWS_AS(quadratic_integral_closed(-1, 0, 1), DomainError);
}

TEST_CASE("adaptive quadrature reproduces the Cauchy closed form") {
    Rng rng(31);
    int tested = 0;
    while (tested < 100) {
        const Complex a(rng.uniform_pm(2.0), rng.uniform_pm(2.0));
        const Complex b(rng.uniform_pm(2.0), rng.uniform_pm(2.0));
        const double s = (std::conj(b) * a).imag();
        if (s < 0.1 || s > 10.0) continue;
        ++tested;
        const double expected = cauchy_integral_closed(a, b);
        auto body = [&](double t) {
            const double v = std::tan(t);
            return (1.0 + v * v) / std::norm(a * v + b);
        };
        const auto r = quad::integrate_adaptive(body, -quad::kHalfPi, quad::kHalfPi, {}, 1e-9, 2048);
        CHECK(r.converged);
        CHECK(std::fabs(r.value - expected) <= 1e-7 * expected);
    }
}

TEST_CASE("adaptive quadrature reproduces the quadratic closed form") {
    Rng rng(32);
    int tested = 0;
    while (tested < 100) {
        const double a = 0.1 + 3.0 * rng.uniform01();
        const double b = rng.uniform_pm(3.0);
        const double c = rng.uniform_pm(3.0);
        if (4.0 * a * c - b * b < 0.1) continue;
        ++tested;
        const double expected = quadratic_integral_closed(a, b, c);
        auto body = [&](double t) {
            const double v = std::tan(t);
            return (1.0 + v * v) / (a * v * v + b * v + c);
        };
        const auto r = quad::integrate_adaptive(body, -quad::kHalfPi, quad::kHalfPi, {}, 1e-9, 2048);
        CHECK(r.converged);
        CHECK(std::fabs(r.value - expected) <= 1e-7 * expected);
    }
}

TEST_CASE("integrand values on fixed points") {
    const HerglotzMatrix eye2(Complex(0, 1) * CMatrix::Identity(2, 2));
    CHECK(minami_integrand(eye2, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));

    const HerglotzMatrix eye1(Complex(0, 1) * CMatrix::Identity(1, 1));
    for (double t : {-3.0, -0.5, 0.0, 1.5, 10.0})
        CHECK(minami_integrand(eye1, {t}) == doctest::Approx(1.0 / (t * t + 1.0)).epsilon(1e-14));

    CHECK(minami_integrand(make2(1i, 1, 0, 1i), {0.0, 0.0}) == doctest::Approx(0.75).epsilon(1e-14));

    CHECK_THROWS_AS(minami_integrand(eye2, {0.0}), InvalidInputError);
}

TEST_CASE("coefficient route matches the resolvent route") {
    Rng rng(77);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Index n = static_cast<Index>(1 + seed % 4);
        const HerglotzMatrix a = sample_random_herglotz(n, seed, 1.5);
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = rng.uniform_pm(8.0);
        const double fast = minami_integrand(a, v);
        const double direct = minami_integrand_resolvent(a, v);
        CHECK(std::fabs(fast - direct) <= 1e-8 * std::max(fast, direct));
        CHECK(fast > 0.0);
    }
}

TEST_CASE("one-dimensional integral equals pi for any scalar input") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(1, seed, 2.0);
        const IntegralResult r = integrate_minami_nd(a, cfg);
        CHECK(r.converged);
        CHECK(std::fabs(r.value - kPi) <= 1e-8 * kPi);
    }
}

TEST_CASE("two-dimensional integral matches the closed form") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-7;

    const HerglotzMatrix fixed = make2(1i, 1, 0, 1i);
    const IntegralResult rf = integrate_minami_nd(fixed, cfg);
    CHECK(rf.converged);
    CHECK(std::fabs(rf.value - 0.75 * kPi * kPi) <= 5e-7 * rf.value);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(2, seed, (seed % 2) ? 0.5 : 2.0);
        const double expected = lemma1_value(a).value;
        const IntegralResult r = integrate_minami_nd(a, cfg);
        CHECK(r.converged);
        CHECK(r.est_error <= cfg.rel_tol * std::fabs(r.value));
        CHECK(std::fabs(r.value - expected) <= 5.0 * cfg.rel_tol * expected);
    }
}

TEST_CASE("three-dimensional integral is bounded by pi^3 and exact on diagonal input") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;
    const HerglotzMatrix eye3(Complex(0, 1) * CMatrix::Identity(3, 3));
    const IntegralResult r = integrate_minami_nd(eye3, cfg);
    CHECK(r.converged);
    CHECK(std::fabs(r.value - kPi * kPi * kPi) <= 5.0 * cfg.rel_tol * r.value);

    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(3, seed, 1.0);
        const IntegralResult b = integrate_minami_nd(a, cfg);
        CHECK(b.converged);
        CHECK(b.value <= kPi * kPi * kPi * (1.0 + 10.0 * cfg.rel_tol));
        CHECK(b.value > 0.0);
    }
}

TEST_CASE("integral is invariant under real diagonal shifts") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-7;
    const HerglotzMatrix a = sample_random_herglotz(2, 3, 1.0);
    const double base = integrate_minami_nd(a, cfg).value;
    CMatrix shifted = a.matrix();
    shifted(0, 0) += 6.5;
    shifted(1, 1) -= 2.25;
    const double moved = integrate_minami_nd(HerglotzMatrix(shifted), cfg).value;
    CHECK(std::fabs(moved - base) <= 3.0 * cfg.rel_tol * base);
}

TEST_CASE("dimension cap and config validation") {
    QuadratureConfig cfg;
    CHECK_THROWS_AS(integrate_minami_nd(sample_random_herglotz(5, 1, 1.0), cfg), UnsupportedDimensionError);

    QuadratureConfig bad;
    bad.rel_tol = 0.5;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
    bad.rel_tol = 1e-7;
    bad.max_panels_per_axis = 4;
    CHECK_THROWS_AS(bad.validate(), InvalidConfigError);
}

TEST_CASE("induction step: diagonal input gives equality") {
    QuadratureConfig cfg;
    const HerglotzMatrix eye2(Complex(0, 1) * CMatrix::Identity(2, 2));
    const auto [lhs, rhs] = verify_induction_step(eye2, {0.0}, cfg);
    CHECK(lhs == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(rhs == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("induction step inequality on random matrices") {
    QuadratureConfig cfg;
    Rng rng(55);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const HerglotzMatrix a = sample_random_herglotz(3, seed, 1.0);
        const std::vector<double> v_fixed = {rng.uniform_pm(5.0), rng.uniform_pm(5.0)};
        const auto [lhs, rhs] = verify_induction_step(a, v_fixed, cfg);
        CHECK(lhs <= rhs * (1.0 + 10.0 * cfg.rel_tol));
        CHECK(lhs > 0.0);
    }
}

TEST_CASE("induction step is tight when the last site decouples") {
    QuadratureConfig cfg;
    const HerglotzMatrix block = sample_random_herglotz(2, 9, 1.0);
    CMatrix m(3, 3);
    m.setZero();
    m.topLeftCorner(2, 2) = block.matrix();
    m(2, 2) = Complex(0.3, 0.8);
    const HerglotzMatrix a{m};
    const std::vector<double> v_fixed = {0.4, -1.1};
    const auto [lhs, rhs] = verify_induction_step(a, v_fixed, cfg);
    CHECK(std::fabs(lhs - rhs) <= 2.0 * cfg.rel_tol * rhs);
}

TEST_CASE("induction step argument validation") {
    QuadratureConfig cfg;
    const HerglotzMatrix a = sample_random_herglotz(3, 1, 1.0);
    CHECK_THROWS_AS(verify_induction_step(a, {1.0}, cfg), InvalidInputError);
    CHECK_THROWS_AS(verify_induction_step(sample_random_herglotz(1, 1, 1.0), {}, cfg), InvalidInputError);
}
