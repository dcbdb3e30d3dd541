#include "minami/herglotz.hpp"

#include <cassert>
#include <sstream>
#include <utility>

#include "minami/errors.hpp"
#include "minami/rng.hpp"

namespace minami {

namespace {

double certify(const CMatrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1) throw InvalidInputError("HerglotzMatrix: matrix must be square");
    if (!all_finite(m)) throw InvalidInputError("HerglotzMatrix: non-finite entries");
    const double min_eig = smallest_imag_eigenvalue(m);
    if (!(min_eig > tol)) {
        std::ostringstream msg;
        msg << "HerglotzMatrix: imaginary part not positive definite (min eigenvalue " << min_eig
            << ", tolerance " << tol << ")";
        throw NotHerglotzError(msg.str(), min_eig);
    }
    return min_eig;
}

}  // namespace

HerglotzMatrix::HerglotzMatrix(CMatrix m) : mat_(std::move(m)), certified_min_eig_(certify(mat_, herglotz_tolerance(mat_))) {}

HerglotzMatrix::HerglotzMatrix(CMatrix m, double tol) : mat_(std::move(m)), certified_min_eig_(certify(mat_, tol)) {}

HerglotzMatrix neg_inverse(const HerglotzMatrix& c) {
    const CMatrix& m = c.matrix();
    const double cond = condition_estimate(m);
    if (!(cond < 1e12)) {
        std::ostringstream msg;
        msg << "neg_inverse: condition estimate " << cond << " exceeds 1e12; positivity certificate "
            << c.certified_min_eig() << " too weak numerically";
        throw ConditioningError(msg.str());
    }
    Eigen::PartialPivLU<CMatrix> lu(m);
    CMatrix result = -lu.inverse();
#ifndef NDEBUG
    {
        // Im(-C^{-1}) = C^{-1*} (Im C) C^{-1}
        const CMatrix inv = -result;
        const CMatrix expected = inv.adjoint() * imag_part(m) * inv;
        const double scale = 1.0 + expected.cwiseAbs().maxCoeff();
        assert((imag_part(result) - expected).cwiseAbs().maxCoeff() <= 1e-8 * scale);
    }
#endif
    try {
        return HerglotzMatrix(std::move(result));
    } catch (const NotHerglotzError& e) {
        throw ConditioningError(std::string("neg_inverse: inverse failed the positivity gate (") + e.what() + ")");
    }
}

HerglotzMatrix sample_random_herglotz(Index n, std::uint64_t seed, double spread) {
    if (n < 1) throw InvalidInputError("sample_random_herglotz: dimension must be >= 1");
    if (!(spread > 0.0)) throw InvalidInputError("sample_random_herglotz: spread must be > 0");
    Rng rng(seed);
    RMatrix r(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j) {
            const double v = rng.uniform_pm(spread);
            r(i, j) = v;
            r(j, i) = v;
        }
    CMatrix l(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) {
            const double re = rng.uniform_pm(spread);
            const double im = rng.uniform_pm(spread);
            l(i, j) = Complex(re, im);
        }
    const double eps = 0.05 * spread;
    CMatrix a = r.cast<Complex>() + Complex(0.0, 1.0) * (l * l.adjoint() + eps * CMatrix::Identity(n, n));
    return HerglotzMatrix(std::move(a), eps / 2.0);
}

}  // namespace minami
