#pragma once

#include "minami/herglotz.hpp"

namespace minami {

/// Closed-form evaluation of the 2x2 determinant integral
///   integral over (v1, v2) of det Im[(diag(v1,v2) - A)^{-1}]
/// for a 2x2 matrix A with positive imaginary part. The value never exceeds
/// pi^2, with equality exactly when both off-diagonal entries vanish.
struct Lemma1Report {
    double det_im_a;  // determinant of the operator imaginary part, > 0
    double delta;     // discriminant of the respective quadratic, > 0
    double value;     // the integral: 2 pi^2 det_im_a / sqrt(delta)
    double bound;     // pi^2
    double ratio;     // value / bound, in (0, 1]
};

/// det Im A for 2x2 A via the explicit form
///   (Im a11)(Im a22) - |a12 - conj(a21)|^2 / 4,
/// which is independent of the real diagonal.
double det_im_2x2(const HerglotzMatrix& a);

/// Discriminant (2 Im a11 Im a22 + Re(a12 a21))^2 - |a12 a21|^2, evaluated
/// after shifting the real diagonal to zero. Cross-checked against the
/// expanded sum-of-squares form
///   4 [ d^2 + d (|a12|^2+|a21|^2)/2 + (|a12|^2-|a21|^2)^2 / 16 ],  d = det Im A,
/// to 1e-10 relative; a mismatch or a non-positive value throws
/// InternalInconsistencyError.
double discriminant_2x2(const HerglotzMatrix& a);

Lemma1Report lemma1_value(const HerglotzMatrix& a);

}  // namespace minami
