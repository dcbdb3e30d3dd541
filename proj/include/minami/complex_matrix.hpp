#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

namespace minami {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

bool all_finite(const CMatrix& c);

/// Operator imaginary part (C - C*)/2i, symmetrized so the result is
/// Hermitian to the last bit. For a Hermitian C this is the zero matrix; the
/// entrywise imaginary parts survive only on the diagonal.
CMatrix imag_part(const CMatrix& c);

/// Smallest eigenvalue of imag_part(c) via a self-adjoint eigensolve. The
/// value doubles as the positivity certificate cached by HerglotzMatrix.
double smallest_imag_eigenvalue(const CMatrix& c);

/// Default strictness margin for the positivity gate: 1e-12 * (1 + max |Im c|).
double herglotz_tolerance(const CMatrix& c);

/// True iff the smallest eigenvalue of imag_part(c) exceeds tol. Returns
/// false (never throws) on degenerate input: non-square or non-finite.
bool is_herglotz(const CMatrix& c, double tol);
bool is_herglotz(const CMatrix& c);

/// Principal submatrix in the caller's index order.
CMatrix restrict_to(const CMatrix& c, const std::vector<Index>& indices);

/// Schur complement of the last diagonal entry in the (n-1,1) block split
///     c = [ leading   col ]
///         [ row       p   ],   result = leading - col * row / p.
/// For invertible c this equals the inverse of the leading block of c^{-1}.
CMatrix schur_complement_last(const CMatrix& c);

/// Returns the pair ( (c^{-1})_nn * det c , det of the leading (n-1)-block ).
/// The two components are equal in exact arithmetic; they are computed along
/// independent routes so callers can assert the identity.
std::pair<Complex, Complex> cofactor_ratio_identity(const CMatrix& c);

/// Determinant in log-magnitude + phase form (LU with partial pivoting), so
/// products over many pivots cannot overflow.
struct LogDet {
    double log_abs;  // -inf for a singular matrix
    double phase;    // in (-pi, pi]
    bool singular() const;
    Complex value() const;  // exp(log_abs) * e^{i phase}; may overflow for huge log_abs
};
LogDet log_det(const CMatrix& c);

/// One-norm condition estimate ||c||_1 * ||c^{-1}||_1.
double condition_estimate(const CMatrix& c);

}  // namespace minami
