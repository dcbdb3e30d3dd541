#include "minami/lemma_closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minami/errors.hpp"

namespace minami {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_2x2(const HerglotzMatrix& a, const char* who) {
    if (a.dim() != 2) {
        std::ostringstream msg;
        msg << who << ": expected a 2x2 matrix, got dimension " << a.dim();
        throw InvalidInputError(msg.str());
    }
}

struct OffDiagonal {
    double sum_sq;   // |a12|^2 + |a21|^2
    double diff_sq;  // |a12|^2 - |a21|^2
    Complex product;
};

OffDiagonal off_diagonal(const CMatrix& m) {
    const Complex a12 = m(0, 1);
    const Complex a21 = m(1, 0);
    return {std::norm(a12) + std::norm(a21), std::norm(a12) - std::norm(a21), a12 * a21};
}

// Radicand of the closed form: d^2 + d s/2 + (|a12|^2-|a21|^2)^2/16. A sum of
// non-negative terms, so it is the cancellation-free route; delta equals four
// times this.
double radicand(double det_im, const OffDiagonal& off) {
    return det_im * det_im + 0.5 * det_im * off.sum_sq + off.diff_sq * off.diff_sq / 16.0;
}

}  // namespace

double det_im_2x2(const HerglotzMatrix& a) {
    require_2x2(a, "det_im_2x2");
    const CMatrix& m = a.matrix();
    const Complex cross = m(0, 1) - std::conj(m(1, 0));
    return m(0, 0).imag() * m(1, 1).imag() - 0.25 * std::norm(cross);
}

double discriminant_2x2(const HerglotzMatrix& a) {
    require_2x2(a, "discriminant_2x2");
    CMatrix m = a.matrix();
    m(0, 0) -= m(0, 0).real();  // the discriminant does not depend on the real diagonal
    m(1, 1) -= m(1, 1).real();
    const OffDiagonal off = off_diagonal(m);
    const double t = 2.0 * m(0, 0).imag() * m(1, 1).imag() + off.product.real();
    const double delta = t * t - std::norm(off.product);
    const double delta_alt = 4.0 * radicand(det_im_2x2(a), off);
    if (!(delta > 0.0)) {
        std::ostringstream msg;
        msg << "discriminant_2x2: non-positive discriminant " << delta
            << "; positivity certificate " << a.certified_min_eig() << " is not numerically valid";
        throw InternalInconsistencyError(msg.str());
    }
    if (std::abs(delta - delta_alt) > 1e-10 * std::max(delta, delta_alt)) {
        std::ostringstream msg;
        msg << "discriminant_2x2: quadratic route " << delta << " and expanded route " << delta_alt
            << " disagree beyond 1e-10 relative";
        throw InternalInconsistencyError(msg.str());
    }
    return delta;
}

Lemma1Report lemma1_value(const HerglotzMatrix& a) {
    require_2x2(a, "lemma1_value");
    const double det_im = det_im_2x2(a);
    const double delta = discriminant_2x2(a);
    const double value = 2.0 * kPi * kPi * det_im / std::sqrt(delta);
    // Same quantity through the nested-radical form; free consistency check.
    const OffDiagonal off = off_diagonal(a.matrix());
    const double value_alt = kPi * kPi * det_im / std::sqrt(radicand(det_im, off));
    if (std::abs(value - value_alt) > 1e-10 * value)
        throw InternalInconsistencyError("lemma1_value: discriminant and radical routes disagree");
    Lemma1Report report;
    report.det_im_a = det_im;
    report.delta = delta;
    report.value = value;
    report.bound = kPi * kPi;
    report.ratio = value / report.bound;
    return report;
}

}  // namespace minami
