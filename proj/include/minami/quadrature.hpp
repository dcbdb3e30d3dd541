#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "minami/errors.hpp"
#include "minami/herglotz.hpp"

namespace minami {

struct QuadratureConfig {
    double rel_tol = 1e-7;
    int max_panels_per_axis = 2048;
    enum class Transform { tangent } transform = Transform::tangent;
    void validate() const;  // rel_tol in (1e-12, 1e-2), max_panels_per_axis >= 8
};

struct IntegralResult {
    double value = 0.0;
    double est_error = 0.0;  // absolute
    int panels_used = 0;     // worst single-axis panel count
    bool converged = false;  // implies est_error <= rel_tol * |value|
};

/// integral over x of 1 / |a x + b|^2  =  pi / Im(conj(b) a), valid for
/// Im(conj(b) a) > 0; throws DomainError otherwise (the integral diverges).
double cauchy_integral_closed(Complex a, Complex b);

/// integral over x of 1 / (a x^2 + b x + c)  =  2 pi / sqrt(4ac - b^2),
/// valid for a > 0 and 4ac - b^2 > 0.
double quadratic_integral_closed(double a, double b, double c);

/// The n-site determinant integrand
///     f(v) = det Im A * |det(A - diag v)|^{-2}
/// evaluated through a precomputed principal-minor coefficient table;
/// det(A - diag v) is multilinear in v, so partial evaluation per axis costs
/// a handful of flops. Equal to det Im[(diag v - A)^{-1}].
class MinamiKernel {
  public:
    explicit MinamiKernel(const CMatrix& a);  // a square, dim 1..4
    Index dim() const { return n_; }
    double det_im() const { return det_im_; }
    double operator()(const double* v) const;

    std::size_t coeff_count() const { return std::size_t{1} << n_; }
    const std::array<Complex, 16>& coeffs() const { return coeff_; }

  private:
    Index n_;
    double det_im_;
    std::array<Complex, 16> coeff_;  // coeff_[mask] = det of the principal minor off the masked axes
};

double minami_integrand(const HerglotzMatrix& a, const std::vector<double>& v);

/// Same quantity through the resolvent route det Im[(diag v - A)^{-1}];
/// the two must agree to 1e-8 relative (asserted in debug builds by
/// minami_integrand, and exercised as a test property).
double minami_integrand_resolvent(const HerglotzMatrix& a, const std::vector<double>& v);

/// Evaluates the n-dimensional determinant integral by tensorized nested
/// adaptive Gauss-Kronrod after the per-axis compactification v = tan(theta).
/// Supported for dim(A) in 1..4 (cost grows as panels^n). The value is
/// bounded by pi^n up to quadrature error.
IntegralResult integrate_minami_nd(const HerglotzMatrix& a, const QuadratureConfig& cfg);

/// One inductive step, both sides computed independently:
///   lhs = 1D quadrature over v of det Im[(diag(v_fixed, v) - A)^{-1}]
///   rhs = pi * det Im(-B^{-1}),  B = Schur complement of the last entry
///         of A - diag(v_fixed, 0).
/// lhs <= rhs up to tolerance, with equality when the last row/column of A
/// has no off-diagonal coupling.
std::pair<double, double> verify_induction_step(const HerglotzMatrix& a, const std::vector<double>& v_fixed,
                                                const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Reusable 1D machinery (also used by the Monte Carlo inner integrals).

namespace quad {

constexpr double kHalfPi = 1.57079632679489661923132169163975144;

struct GkEstimate {
    double value;
    double abs_error;
};

/// 15-point Kronrod with embedded 7-point Gauss error estimate on [a, b].
template <class F>
GkEstimate gk15(const F& f, double a, double b) {
    static constexpr double xgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr double wgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double wg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = fc * wg[3];
    double resk = fc * wgk[7];
    double resabs = std::fabs(fc) * wgk[7];
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double absc = half * xgk[j];
        fv1[j] = f(center - absc);
        fv2[j] = f(center + absc);
        const double fsum = fv1[j] + fv2[j];
        resk += wgk[j] * fsum;
        resabs += wgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    }
    resg += wg[0] * (fv1[1] + fv2[1]) + wg[1] * (fv1[3] + fv2[3]) + wg[2] * (fv1[5] + fv2[5]);
    const double reskh = 0.5 * resk;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    const double habs = std::fabs(half);
    resabs *= habs;
    resasc *= habs;
    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / eps50) err = std::max(eps50 * resabs, err);
    return {resk * half, err};
}

struct Adapt1dResult {
    double value;
    double abs_error;
    int panels;
    bool converged;
};

/// Adaptive bisection on [lo, hi] seeded with interior breakpoints: the
/// worst-error panel is split until the summed error estimate meets
/// rel_tol * |value| or the panel budget runs out. The surviving panels are
/// re-summed pairwise in interval order, so the result does not depend on
/// refinement bookkeeping.
template <class F>
Adapt1dResult integrate_adaptive(const F& f, double lo, double hi, const std::vector<double>& interior_breaks,
                                 double rel_tol, int max_panels) {
    struct Panel {
        double a, b, value, error;
    };
    std::vector<double> bounds;
    bounds.reserve(interior_breaks.size() + 2);
    bounds.push_back(lo);
    {
        std::vector<double> inner(interior_breaks);
        std::sort(inner.begin(), inner.end());
        inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
        for (double x : inner)
            if (x > lo && x < hi) bounds.push_back(x);
    }
    bounds.push_back(hi);

    std::vector<Panel> panels;
    panels.reserve(static_cast<std::size_t>(max_panels));
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const GkEstimate e = gk15(f, bounds[i], bounds[i + 1]);
        panels.push_back({bounds[i], bounds[i + 1], e.value, e.abs_error});
        total += e.value;
        err += e.abs_error;
    }
    const auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::make_heap(panels.begin(), panels.end(), by_error);

    constexpr double kAbsFloor = 1e-300;
    while (static_cast<int>(panels.size()) < max_panels && err > rel_tol * std::fabs(total) && err > kAbsFloor) {
        std::pop_heap(panels.begin(), panels.end(), by_error);
        const Panel worst = panels.back();
        panels.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {  // interval at floating-point resolution
            panels.push_back({worst.a, worst.b, worst.value, 0.0});
            std::push_heap(panels.begin(), panels.end(), by_error);
            err -= worst.error;
            continue;
        }
        const GkEstimate left = gk15(f, worst.a, mid);
        const GkEstimate right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.abs_error + right.abs_error - worst.error;
        panels.push_back({worst.a, mid, left.value, left.abs_error});
        std::push_heap(panels.begin(), panels.end(), by_error);
        panels.push_back({mid, worst.b, right.value, right.abs_error});
        std::push_heap(panels.begin(), panels.end(), by_error);
    }

    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    std::vector<double> vals(panels.size()), errs(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
        vals[i] = panels[i].value;
        errs[i] = panels[i].error;
    }
    const auto resum = [](const std::vector<double>& x) {
        // pairwise reduction, drift stays near machine precision
        std::vector<double> acc(x);
        while (acc.size() > 1) {
            std::size_t h = 0;
            for (std::size_t i = 0; i + 1 < acc.size(); i += 2) acc[h++] = acc[i] + acc[i + 1];
            if (acc.size() % 2 == 1) acc[h++] = acc.back();
            acc.resize(h);
        }
        return acc.empty() ? 0.0 : acc[0];
    };
    const double value = resum(vals);
    const double abs_error = resum(errs);
    return {value, abs_error, static_cast<int>(panels.size()), abs_error <= rel_tol * std::fabs(value) || abs_error <= kAbsFloor};
}

/// One axis of a nested integral. With tangent=true the integration variable
/// is theta in (lo, hi) subset of (-pi/2, pi/2) and the physical variable is
/// v = tan(theta) with Jacobian 1 + v^2; otherwise v runs over [lo, hi]
/// directly. An optional Gaussian weight multiplies the integrand.
struct AxisSpec {
    bool tangent = true;
    double lo = -kHalfPi;
    double hi = kHalfPi;
    std::vector<double> breaks;  // interior seeds in the integration coordinate
    enum class Weight { none, gaussian } weight = Weight::none;
    double sigma = 1.0;
};

/// Seeds panel boundaries around a resolvent peak at `center` of width
/// `width`: boundaries at center and center +- {1, 10} * width, mapped by
/// atan for tangent axes.
std::vector<double> peak_breaks_tangent(double center, double width);
std::vector<double> peak_breaks_box(double center, double width, double lo, double hi);

struct NestedOutcome {
    double value = 0.0;
    double est_rel_error = 0.0;
    int max_panels = 0;
    bool converged = true;
};

/// Nested adaptive integration of the kernel over axes[0..n-1] (outermost
/// first); axes.size() must equal kernel.dim(). axis_rel_tol applies per 1D
/// pass; level errors are accumulated into est_rel_error.
NestedOutcome integrate_nested(const MinamiKernel& kernel, const std::vector<AxisSpec>& axes, double axis_rel_tol,
                               int max_panels_per_axis);

}  // namespace quad

}  // namespace minami
