#pragma once

#include <cstdint>

#include "minami/complex_matrix.hpp"

namespace minami {

/// A complex square matrix whose operator imaginary part is Hermitian
/// positive definite, certified at construction. Immutable after
/// construction; safe to share across threads.
class HerglotzMatrix {
  public:
    /// Gate with the default strictness tolerance; throws NotHerglotzError
    /// when the smallest eigenvalue of the imaginary part is not above it.
    explicit HerglotzMatrix(CMatrix m);
    HerglotzMatrix(CMatrix m, double tol);

    const CMatrix& matrix() const { return mat_; }
    Index dim() const { return mat_.rows(); }

    /// Smallest eigenvalue of imag_part(matrix()), cached at construction.
    /// Downstream code uses it to size peak widths and tolerances.
    double certified_min_eig() const { return certified_min_eig_; }

  private:
    CMatrix mat_;
    double certified_min_eig_;
};

/// -C^{-1}. Preserves the positive imaginary part; the map is an involution.
/// Throws ConditioningError when the condition estimate exceeds 1e12.
HerglotzMatrix neg_inverse(const HerglotzMatrix& c);

/// Test-case generator: A = R + i (L L* + eps I) with eps = 0.05 * spread.
/// R is real with entries i.i.d. uniform in [-spread, spread], drawn on the
/// upper triangle and mirrored; the symmetry keeps the imaginary part equal
/// to L L* + eps I, so every output is certified with margin >= eps. L has
/// i.i.d. complex entries in the centered box of half-width spread.
/// Deterministic in seed.
HerglotzMatrix sample_random_herglotz(Index n, std::uint64_t seed, double spread);

}  // namespace minami
