#include "minami/anderson.hpp"

#include <cmath>
#include <sstream>

#include "minami/errors.hpp"

namespace minami {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr int kMaxSites = 4096;

void require_sites(const LatticeBox& box, const std::vector<int>& sites) {
    if (sites.empty()) throw InvalidInputError("site subset must not be empty");
    const int n = box.site_count();
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s : sites) {
        if (s < 0 || s >= n) throw InvalidInputError("site index out of range");
        if (seen[static_cast<std::size_t>(s)]) throw InvalidInputError("duplicate site index");
        seen[static_cast<std::size_t>(s)] = true;
    }
}

bool near_integer(double x) { return std::fabs(x - std::round(x)) < 1e-9; }

}  // namespace

int LatticeBox::site_count() const {
    int n = 1;
    for (int s : sides) n *= s;
    return n;
}

int LatticeBox::index_of(const std::vector<int>& coords) const {
    int idx = 0;
    for (int k = 0; k < dim; ++k) idx = idx * sides[static_cast<std::size_t>(k)] + coords[static_cast<std::size_t>(k)];
    return idx;
}

std::vector<int> LatticeBox::coords_of(int index) const {
    std::vector<int> coords(static_cast<std::size_t>(dim));
    for (int k = dim - 1; k >= 0; --k) {
        const int side = sides[static_cast<std::size_t>(k)];
        coords[static_cast<std::size_t>(k)] = index % side;
        index /= side;
    }
    return coords;
}

void LatticeBox::validate() const {
    if (dim < 1) throw InvalidConfigError("LatticeBox: dim must be >= 1");
    if (static_cast<int>(sides.size()) != dim) throw InvalidConfigError("LatticeBox: sides must have dim entries");
    for (int s : sides)
        if (s < 1) throw InvalidConfigError("LatticeBox: sides must be positive");
    if (site_count() > kMaxSites) throw InvalidConfigError("LatticeBox: site count above the dense-solver cap of 4096");
}

void HoppingSpec::validate(const LatticeBox& box) const {
    if (!(amplitude >= 0.0)) throw InvalidConfigError("HoppingSpec: amplitude must be >= 0");
    if (!(flux_per_plaquette >= 0.0 && flux_per_plaquette < 1.0))
        throw InvalidConfigError("HoppingSpec: flux must lie in [0, 1)");
    if (flux_per_plaquette != 0.0 && box.dim != 2)
        throw InvalidConfigError("HoppingSpec: nonzero flux is supported for d = 2 only");
    if (flux_per_plaquette != 0.0 && box.boundary == Boundary::periodic) {
        // The gauge phase grows along the slow axis, so a periodic box must
        // hold an integer number of flux quanta around each slow-axis ring.
        if (!near_integer(flux_per_plaquette * box.sides[0]))
            throw InvalidConfigError("HoppingSpec: flux * sides[0] must be an integer on a periodic box");
    }
}

double PotentialDistribution::density_sup() const {
    validate();
    if (kind == Kind::uniform) return 1.0 / param;
    return 1.0 / (param * 2.50662827463100050241576528481104525);
}

double PotentialDistribution::sample(Rng& rng) const {
    if (kind == Kind::uniform) return rng.uniform_pm(param / 2.0);  // degenerate width 0 gives V = 0
    return param * rng.gaussian();
}

double PotentialDistribution::support_halfwidth() const {
    if (kind != Kind::uniform) throw InvalidInputError("support_halfwidth: unbounded distribution");
    return param / 2.0;
}

void PotentialDistribution::validate() const {
    if (!(param > 0.0)) throw InvalidConfigError("PotentialDistribution: parameter must be > 0");
}

SpectralParameter::SpectralParameter(Complex value) : z(value) {
    if (!(z.imag() > 0.0)) throw InvalidInputError("SpectralParameter: Im z must be > 0");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidInputError("SpectralParameter: non-finite value");
}

CMatrix build_hamiltonian(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential) {
    box.validate();
    hop.validate(box);
    const int n = box.site_count();
    if (potential.size() != n) throw InvalidInputError("build_hamiltonian: potential length must equal site count");
    for (int i = 0; i < n; ++i)
        if (!std::isfinite(potential(i))) throw InvalidInputError("build_hamiltonian: non-finite potential");

    CMatrix h = CMatrix::Zero(n, n);
    const double shift = hop.diagonal_shift ? 2.0 * box.dim * hop.amplitude : 0.0;
    for (int i = 0; i < n; ++i) h(i, i) = potential(i) + shift;

    for (int site = 0; site < n; ++site) {
        const std::vector<int> coords = box.coords_of(site);
        for (int axis = 0; axis < box.dim; ++axis) {
            const int side = box.sides[static_cast<std::size_t>(axis)];
            const int c = coords[static_cast<std::size_t>(axis)];
            if (c + 1 >= side) {
                if (box.boundary == Boundary::open) continue;
                if (side <= 2) continue;  // wrap bond would be a self-loop or duplicate an existing bond
            }
            std::vector<int> next = coords;
            next[static_cast<std::size_t>(axis)] = (c + 1) % side;
            const int other = box.index_of(next);
            double theta = 0.0;
            if (box.dim == 2 && axis == 1 && hop.flux_per_plaquette != 0.0)
                theta = kTwoPi * hop.flux_per_plaquette * coords[0];
            const Complex amp = -hop.amplitude * Complex(std::cos(theta), std::sin(theta));
            h(other, site) += amp;
            h(site, other) += std::conj(amp);
        }
    }
    return h;
}

Complex plaquette_phase(const CMatrix& h, const LatticeBox& box, const HoppingSpec& hop, int slow, int fast) {
    if (box.dim != 2) throw InvalidInputError("plaquette_phase: d = 2 only");
    const int rows = box.sides[0], cols = box.sides[1];
    const bool wrap = box.boundary == Boundary::periodic;
    if (slow < 0 || fast < 0 || slow >= (wrap ? rows : rows - 1) || fast >= (wrap ? cols : cols - 1))
        throw InvalidInputError("plaquette_phase: plaquette out of range");
    const auto at = [&](int r, int c) { return box.index_of({r % rows, c % cols}); };
    const int s00 = at(slow, fast), s10 = at(slow + 1, fast), s11 = at(slow + 1, fast + 1), s01 = at(slow, fast + 1);
    const Complex loop = h(s10, s00) * h(s11, s10) * h(s01, s11) * h(s00, s01);
    const double t4 = std::pow(hop.amplitude, 4);
    if (!(t4 > 0.0)) throw InvalidInputError("plaquette_phase: zero hopping amplitude");
    return loop / t4;
}

CMatrix green_block(const CMatrix& h, const SpectralParameter& z, const std::vector<int>& sites) {
    if (h.rows() != h.cols()) throw InvalidInputError("green_block: Hamiltonian must be square");
    const int n = static_cast<int>(h.rows());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s : sites) {
        if (s < 0 || s >= n) throw InvalidInputError("green_block: site index out of range");
        if (seen[static_cast<std::size_t>(s)]) throw InvalidInputError("green_block: duplicate site index");
        seen[static_cast<std::size_t>(s)] = true;
    }
    if (sites.empty()) throw InvalidInputError("green_block: empty site subset");

    CMatrix shifted = h;
    shifted.diagonal().array() -= z.z;
    Eigen::PartialPivLU<CMatrix> lu(shifted);
    const Index m = static_cast<Index>(sites.size());
    CMatrix rhs = CMatrix::Zero(n, m);
    for (Index j = 0; j < m; ++j) rhs(sites[static_cast<std::size_t>(j)], j) = 1.0;
    const CMatrix cols = lu.solve(rhs);
    CMatrix block(m, m);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < m; ++j) block(i, j) = cols(sites[static_cast<std::size_t>(i)], j);
    return block;
}

HerglotzMatrix krein_matrix(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential,
                            const SpectralParameter& z, const std::vector<int>& sites) {
    require_sites(box, sites);
    CMatrix h = build_hamiltonian(box, hop, potential);
    for (int s : sites) h(s, s) -= potential(s);  // zero the potential on S, keep the kinetic diagonal
    const CMatrix block = green_block(h, z, sites);
    Eigen::PartialPivLU<CMatrix> lu(block);
    CMatrix a = -lu.inverse();
    if (!all_finite(a)) throw ConditioningError("krein_matrix: resolvent block numerically singular");
    try {
        return HerglotzMatrix(std::move(a));
    } catch (const NotHerglotzError& e) {
        throw ConditioningError(std::string("krein_matrix: positivity gate failed (") + e.what() + ")");
    }
}

std::pair<CMatrix, CMatrix> krein_consistency(const LatticeBox& box, const HoppingSpec& hop, const RVector& potential,
                                              const SpectralParameter& z, const std::vector<int>& sites) {
    require_sites(box, sites);
    const CMatrix h = build_hamiltonian(box, hop, potential);
    const CMatrix lhs = imag_part(green_block(h, z, sites));

    const HerglotzMatrix a = krein_matrix(box, hop, potential, z, sites);
    CMatrix shifted = -a.matrix();
    for (Index i = 0; i < shifted.rows(); ++i) shifted(i, i) += potential(sites[static_cast<std::size_t>(i)]);
    const CMatrix rhs = imag_part(shifted.partialPivLu().inverse());
    return {lhs, rhs};
}

}  // namespace minami
