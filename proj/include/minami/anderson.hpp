#pragma once

#include <vector>

#include "minami/complex_matrix.hpp"
#include "minami/herglotz.hpp"
#include "minami/rng.hpp"

namespace minami {

enum class Boundary { open, periodic };

/// Finite box in Z^d. Sites are indexed row-major (last coordinate fastest).
struct LatticeBox {
    int dim = 1;
    std::vector<int> sides;
    Boundary boundary = Boundary::open;

    int site_count() const;
    int index_of(const std::vector<int>& coords) const;
    std::vector<int> coords_of(int index) const;
    void validate() const;
};

enum class Gauge { landau };

/// Nearest-neighbor hopping of amplitude t with an optional uniform magnetic
/// flux per plaquette (d = 2 only, Landau gauge: bonds along the fast axis
/// carry phase 2*pi*flux*(slow coordinate), bonds along the slow axis none).
/// diagonal_shift adds 2*d*t to the diagonal so the kinetic spectrum starts
/// at 0 when the flux vanishes.
struct HoppingSpec {
    double amplitude = 1.0;         // t >= 0; t = 0 is the hopping-free case
    double flux_per_plaquette = 0.0;  // in units of the flux quantum, [0, 1)
    Gauge gauge = Gauge::landau;
    bool diagonal_shift = true;
    void validate(const LatticeBox& box) const;
};

/// Single-site disorder law with an analytically known density sup-norm:
/// uniform on [-W/2, W/2] has sup 1/W, a centered Gaussian has
/// 1/(sigma sqrt(2 pi)).
struct PotentialDistribution {
    enum class Kind { uniform, gaussian };
    Kind kind = Kind::uniform;
    double param = 1.0;  // width W, or sigma

    double density_sup() const;
    double sample(Rng& rng) const;
    bool bounded_support() const { return kind == Kind::uniform; }
    double support_halfwidth() const;  // uniform only
    void validate() const;
};

/// Spectral parameter z with Im z > 0, enforced at construction.
struct SpectralParameter {
    explicit SpectralParameter(Complex value);
    Complex z;
};

/// H(x,x) = V_x (+ 2*d*t), H(x,y) = -t e^{i theta(x,y)} on nearest-neighbor
/// bonds. Hermitian exactly: the upper triangle is built and mirrored.
CMatrix build_hamiltonian(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential);

/// Gauge-invariant product of the four bond phases around the unit plaquette
/// whose lowest corner is (slow, fast), normalized by t^4; equals
/// e^{2 pi i flux} for every plaquette. d = 2 only.
Complex plaquette_phase(const CMatrix& h, const LatticeBox& box, const HoppingSpec& hop, int slow, int fast);

/// S x S block of (H - z)^{-1}. Always well defined for Im z > 0; the
/// imaginary part of the block is positive definite.
CMatrix green_block(const CMatrix& h, const SpectralParameter& z, const std::vector<int>& sites);

/// The matrix A with -A^{-1} equal to the S x S resolvent block of the
/// Hamiltonian with the potential zeroed on S. A has positive imaginary
/// part, and (diag(V_S) - A)^{-1} reproduces the resolvent block of the full
/// Hamiltonian.
HerglotzMatrix krein_matrix(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential,
                            const SpectralParameter& z, const std::vector<int>& sites);

/// Both sides of the block identity above, computed independently:
/// lhs = Im of the resolvent block of H, rhs = Im (diag(V_S) - A)^{-1}.
std::pair<CMatrix, CMatrix> krein_consistency(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential,
                                              const SpectralParameter& z, const std::vector<int>& sites);

}  // namespace minami
