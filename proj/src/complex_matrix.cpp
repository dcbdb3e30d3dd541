#include "minami/complex_matrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "minami/errors.hpp"

namespace minami {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_square(const CMatrix& c, const char* who) {
    if (c.rows() != c.cols() || c.rows() < 1) {
        std::ostringstream msg;
        msg << who << ": matrix must be square and non-empty, got " << c.rows() << "x" << c.cols();
        throw InvalidInputError(msg.str());
    }
}

void require_finite(const CMatrix& c, const char* who) {
    if (!all_finite(c)) throw InvalidInputError(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace

bool all_finite(const CMatrix& c) {
    for (Index j = 0; j < c.cols(); ++j)
        for (Index i = 0; i < c.rows(); ++i)
            if (!std::isfinite(c(i, j).real()) || !std::isfinite(c(i, j).imag())) return false;
    return true;
}

CMatrix imag_part(const CMatrix& c) {
    require_square(c, "imag_part");
    require_finite(c, "imag_part");
    const Complex two_i(0.0, 2.0);
    CMatrix m = (c - c.adjoint()) / two_i;
    m = ((m + m.adjoint()) / 2.0).eval();  // exact Hermitian symmetry
    return m;
}

double smallest_imag_eigenvalue(const CMatrix& c) {
    const CMatrix m = imag_part(c);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double herglotz_tolerance(const CMatrix& c) {
    const CMatrix m = imag_part(c);
    return 1e-12 * (1.0 + m.cwiseAbs().maxCoeff());
}

bool is_herglotz(const CMatrix& c, double tol) {
    if (c.rows() != c.cols() || c.rows() < 1 || !all_finite(c)) return false;
    return smallest_imag_eigenvalue(c) > tol;
}

bool is_herglotz(const CMatrix& c) {
    if (c.rows() != c.cols() || c.rows() < 1 || !all_finite(c)) return false;
    return is_herglotz(c, herglotz_tolerance(c));
}

CMatrix restrict_to(const CMatrix& c, const std::vector<Index>& indices) {
    require_square(c, "restrict_to");
    if (indices.empty()) throw InvalidInputError("restrict_to: empty index set");
    const Index n = c.rows();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Index k : indices) {
        if (k < 0 || k >= n) throw InvalidInputError("restrict_to: index out of range");
        if (seen[static_cast<std::size_t>(k)]) throw InvalidInputError("restrict_to: duplicate index");
        seen[static_cast<std::size_t>(k)] = true;
    }
    const Index m = static_cast<Index>(indices.size());
    CMatrix out(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) out(i, j) = c(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    return out;
}

CMatrix schur_complement_last(const CMatrix& c) {
    require_square(c, "schur_complement_last");
    require_finite(c, "schur_complement_last");
    const Index n = c.rows();
    if (n < 2) throw InvalidInputError("schur_complement_last: need dimension >= 2");
    const Complex pivot = c(n - 1, n - 1);
    if (std::abs(pivot) <= 1e-14 * (1.0 + c.cwiseAbs().maxCoeff()))
        throw SingularPivotError("schur_complement_last: last diagonal entry numerically zero");
    const CMatrix leading = c.topLeftCorner(n - 1, n - 1);
    const CVector col = c.topRightCorner(n - 1, 1);
    const Eigen::RowVectorXcd row = c.bottomLeftCorner(1, n - 1);
    return leading - (col * row) / pivot;
}

std::pair<Complex, Complex> cofactor_ratio_identity(const CMatrix& c) {
    require_square(c, "cofactor_ratio_identity");
    require_finite(c, "cofactor_ratio_identity");
    const Index n = c.rows();
    const LogDet det_full = log_det(c);
    if (det_full.singular()) throw SingularMatrixError("cofactor_ratio_identity: singular matrix");
    Eigen::PartialPivLU<CMatrix> lu(c);
    const CMatrix inv = lu.inverse();
    const Complex lhs = inv(n - 1, n - 1) * det_full.value();
    Complex rhs(1.0, 0.0);  // empty leading block for n = 1
    if (n > 1) rhs = log_det(c.topLeftCorner(n - 1, n - 1).eval()).value();
    return {lhs, rhs};
}

bool LogDet::singular() const { return !(log_abs > -std::numeric_limits<double>::infinity()); }

Complex LogDet::value() const {
    if (singular()) return Complex(0.0, 0.0);
    return std::exp(log_abs) * Complex(std::cos(phase), std::sin(phase));
}

LogDet log_det(const CMatrix& c) {
    require_square(c, "log_det");
    require_finite(c, "log_det");
    Eigen::PartialPivLU<CMatrix> lu(c);
    const auto& packed = lu.matrixLU();
    double log_abs = 0.0;
    double phase = 0.0;
    for (Index i = 0; i < c.rows(); ++i) {
        const Complex u = packed(i, i);
        const double a = std::abs(u);
        if (a == 0.0) return {-std::numeric_limits<double>::infinity(), 0.0};
        log_abs += std::log(a);
        phase += std::arg(u);
    }
    if (lu.permutationP().determinant() < 0) phase += kPi;
    phase = std::remainder(phase, 2.0 * kPi);
    if (phase <= -kPi) phase += 2.0 * kPi;
    return {log_abs, phase};
}

double condition_estimate(const CMatrix& c) {
    require_square(c, "condition_estimate");
    const LogDet d = log_det(c);
    if (d.singular()) return std::numeric_limits<double>::infinity();
    Eigen::PartialPivLU<CMatrix> lu(c);
    const CMatrix inv = lu.inverse();
    if (!all_finite(inv)) return std::numeric_limits<double>::infinity();
    const double norm_c = c.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_inv = inv.cwiseAbs().colwise().sum().maxCoeff();
    return norm_c * norm_inv;
}

}  // namespace minami
