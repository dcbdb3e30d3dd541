#include "minami/quadrature.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace minami {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double det_of_imag(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(imag_part(m), Eigen::EigenvaluesOnly);
    double det = 1.0;
    for (Index i = 0; i < m.rows(); ++i) det *= solver.eigenvalues()(i);
    return det;
}

double gaussian_pdf(double v, double sigma) {
    const double u = v / sigma;
    return std::exp(-0.5 * u * u) / (sigma * 2.50662827463100050241576528481104525);  // sqrt(2 pi)
}

}  // namespace

void QuadratureConfig::validate() const {
    if (!(rel_tol > 1e-12 && rel_tol < 1e-2))
        throw InvalidConfigError("QuadratureConfig: rel_tol must lie in (1e-12, 1e-2)");
    if (max_panels_per_axis < 8) throw InvalidConfigError("QuadratureConfig: max_panels_per_axis must be >= 8");
}

double cauchy_integral_closed(Complex a, Complex b) {
    const double s = (std::conj(b) * a).imag();
    if (!(s > 0.0)) {
        std::ostringstream msg;
        msg << "cauchy_integral_closed: Im(conj(b) a) = " << s << " must be > 0";
        throw DomainError(msg.str());
    }
    return kPi / s;
}

double quadratic_integral_closed(double a, double b, double c) {
    if (!(a > 0.0)) throw DomainError("quadratic_integral_closed: leading coefficient must be > 0");
    const double disc = 4.0 * a * c - b * b;
    if (!(disc > 0.0)) throw DomainError("quadratic_integral_closed: 4ac - b^2 must be > 0");
    return 2.0 * kPi / std::sqrt(disc);
}

MinamiKernel::MinamiKernel(const CMatrix& a) : n_(a.rows()) {
    if (a.rows() != a.cols() || n_ < 1) throw InvalidInputError("MinamiKernel: matrix must be square");
    if (n_ > 4) throw UnsupportedDimensionError("MinamiKernel: dimension capped at 4");
    if (!all_finite(a)) throw InvalidInputError("MinamiKernel: non-finite entries");
    det_im_ = det_of_imag(a);
    const std::size_t count = coeff_count();
    std::vector<Index> keep;
    for (std::size_t mask = 0; mask < count; ++mask) {
        keep.clear();
        for (Index i = 0; i < n_; ++i)
            if (!(mask & (std::size_t{1} << i))) keep.push_back(i);
        if (keep.empty()) {
            coeff_[mask] = Complex(1.0, 0.0);
            continue;
        }
        CMatrix sub(keep.size(), keep.size());
        for (std::size_t r = 0; r < keep.size(); ++r)
            for (std::size_t c = 0; c < keep.size(); ++c) sub(static_cast<Index>(r), static_cast<Index>(c)) = a(keep[r], keep[c]);
        coeff_[mask] = sub.determinant();
    }
}

double MinamiKernel::operator()(const double* v) const {
    std::array<Complex, 16> c = coeff_;
    std::size_t m = coeff_count();
    for (Index axis = 0; axis < n_; ++axis) {
        const std::size_t half = m / 2;
        const double t = v[axis];
        for (std::size_t j = 0; j < half; ++j) c[j] = c[2 * j] - t * c[2 * j + 1];
        m = half;
    }
    return det_im_ / std::norm(c[0]);
}

double minami_integrand(const HerglotzMatrix& a, const std::vector<double>& v) {
    if (static_cast<Index>(v.size()) != a.dim())
        throw InvalidInputError("minami_integrand: point dimension does not match the matrix");
    const MinamiKernel kernel(a.matrix());
    const double value = kernel(v.data());
#ifndef NDEBUG
    {
        const double direct = minami_integrand_resolvent(a, v);
        assert(std::fabs(value - direct) <= 1e-8 * std::max(std::fabs(value), std::fabs(direct)));
    }
#endif
    return value;
}

double minami_integrand_resolvent(const HerglotzMatrix& a, const std::vector<double>& v) {
    if (static_cast<Index>(v.size()) != a.dim())
        throw InvalidInputError("minami_integrand_resolvent: point dimension does not match the matrix");
    const Index n = a.dim();
    CMatrix m = -a.matrix();
    for (Index i = 0; i < n; ++i) m(i, i) += v[static_cast<std::size_t>(i)];
    const CMatrix inv = m.partialPivLu().inverse();
    return det_of_imag(inv);
}

namespace quad {

std::vector<double> peak_breaks_tangent(double center, double width) {
    std::vector<double> breaks;
    breaks.reserve(5);
    for (double k : {-10.0, -1.0, 0.0, 1.0, 10.0}) breaks.push_back(std::atan(center + k * width));
    return breaks;
}

std::vector<double> peak_breaks_box(double center, double width, double lo, double hi) {
    std::vector<double> breaks;
    breaks.reserve(5);
    for (double k : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
        const double x = center + k * width;
        if (x > lo && x < hi) breaks.push_back(x);
    }
    return breaks;
}

namespace {

struct NestedState {
    const std::vector<AxisSpec>* axes;
    double det_im;
    double axis_rel_tol;
    int max_panels;
    Index n;
    int max_panels_seen = 0;
    bool converged = true;
    std::array<double, 4> worst_rel = {0.0, 0.0, 0.0, 0.0};
};

double integrate_level(NestedState& st, Index level, const std::array<Complex, 16>& coeffs) {
    const AxisSpec& axis = (*st.axes)[static_cast<std::size_t>(level)];
    const bool leaf = (level == st.n - 1);
    const std::size_t half = (std::size_t{1} << (st.n - level)) / 2;

    auto body = [&](double t) -> double {
        double v, jac;
        if (axis.tangent) {
            v = std::tan(t);
            jac = 1.0 + v * v;
        } else {
            v = t;
            jac = 1.0;
        }
        double w = 1.0;
        if (axis.weight == AxisSpec::Weight::gaussian) w = gaussian_pdf(v, axis.sigma);
        double inner;
        if (leaf) {
            inner = st.det_im / std::norm(coeffs[0] - v * coeffs[1]);
        } else {
            std::array<Complex, 16> reduced;
            for (std::size_t j = 0; j < half; ++j) reduced[j] = coeffs[2 * j] - v * coeffs[2 * j + 1];
            inner = integrate_level(st, level + 1, reduced);
        }
        return inner * jac * w;
    };

    const Adapt1dResult r = integrate_adaptive(body, axis.lo, axis.hi, axis.breaks, st.axis_rel_tol, st.max_panels);
    st.max_panels_seen = std::max(st.max_panels_seen, r.panels);
    if (!r.converged) st.converged = false;
    const double denom = std::max(std::fabs(r.value), 1e-300);
    auto& worst = st.worst_rel[static_cast<std::size_t>(level)];
    worst = std::max(worst, r.abs_error / denom);
    return r.value;
}

}  // namespace

NestedOutcome integrate_nested(const MinamiKernel& kernel, const std::vector<AxisSpec>& axes, double axis_rel_tol,
                               int max_panels_per_axis) {
    if (static_cast<Index>(axes.size()) != kernel.dim())
        throw InvalidInputError("integrate_nested: axis count does not match kernel dimension");
    NestedState st;
    st.axes = &axes;
    st.det_im = kernel.det_im();
    st.axis_rel_tol = axis_rel_tol;
    st.max_panels = max_panels_per_axis;
    st.n = kernel.dim();
    const double value = integrate_level(st, 0, kernel.coeffs());
    NestedOutcome out;
    out.value = value;
    out.max_panels = st.max_panels_seen;
    out.converged = st.converged;
    for (Index l = 0; l < st.n; ++l) out.est_rel_error += st.worst_rel[static_cast<std::size_t>(l)];
    return out;
}

}  // namespace quad

IntegralResult integrate_minami_nd(const HerglotzMatrix& a, const QuadratureConfig& cfg) {
    cfg.validate();
    const Index n = a.dim();
    if (n > 4) throw UnsupportedDimensionError("integrate_minami_nd: dimension capped at 4");
    const MinamiKernel kernel(a.matrix());
    const double width = std::max(a.certified_min_eig(), 1e-8);
    std::vector<quad::AxisSpec> axes(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        auto& axis = axes[static_cast<std::size_t>(i)];
        axis.tangent = true;
        axis.breaks = quad::peak_breaks_tangent(a.matrix()(i, i).real(), width);
    }
    const double axis_tol = cfg.rel_tol / (2.0 * static_cast<double>(n));
    const quad::NestedOutcome out = quad::integrate_nested(kernel, axes, axis_tol, cfg.max_panels_per_axis);
    IntegralResult result;
    result.value = out.value;
    result.est_error = out.est_rel_error * std::fabs(out.value);
    result.panels_used = out.max_panels;
    result.converged = out.converged && result.est_error <= cfg.rel_tol * std::fabs(result.value);
    return result;
}

std::pair<double, double> verify_induction_step(const HerglotzMatrix& a, const std::vector<double>& v_fixed,
                                                const QuadratureConfig& cfg) {
    cfg.validate();
    const Index n = a.dim();
    if (n < 2) throw InvalidInputError("verify_induction_step: need dimension >= 2");
    if (static_cast<Index>(v_fixed.size()) != n - 1)
        throw InvalidInputError("verify_induction_step: v_fixed must have dimension n - 1");
    for (double v : v_fixed)
        if (!std::isfinite(v)) throw InvalidInputError("verify_induction_step: non-finite shift");

    CMatrix shifted = a.matrix();
    for (Index i = 0; i < n - 1; ++i) shifted(i, i) -= v_fixed[static_cast<std::size_t>(i)];

    // det(shifted - diag(0,..,0,v)) is linear in v, so two determinants pin
    // the whole 1D integrand.
    const Complex c0 = shifted.determinant();
    const Complex c1 = shifted.topLeftCorner(n - 1, n - 1).determinant();
    const double det_im = det_of_imag(shifted);
    const double width = std::max(a.certified_min_eig(), 1e-8);
    const std::vector<double> breaks = quad::peak_breaks_tangent(shifted(n - 1, n - 1).real(), width);
    auto body = [&](double t) {
        const double v = std::tan(t);
        return (1.0 + v * v) * det_im / std::norm(c0 - v * c1);
    };
    const quad::Adapt1dResult lhs =
        quad::integrate_adaptive(body, -quad::kHalfPi, quad::kHalfPi, breaks, cfg.rel_tol, cfg.max_panels_per_axis);

    const CMatrix b = schur_complement_last(shifted);
    const CMatrix neg_b_inv = -b.partialPivLu().inverse();
    const double rhs = kPi * det_of_imag(neg_b_inv);
    return {lhs.value, rhs};
}

}  // namespace minami
