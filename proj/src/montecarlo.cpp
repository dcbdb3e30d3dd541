#include "minami/montecarlo.hpp"

#include <cmath>
#include <sstream>

#include "minami/errors.hpp"
#include "minami/parallel.hpp"

namespace minami {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double det_of_imag(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(imag_part(m), Eigen::EigenvaluesOnly);
    double det = 1.0;
    for (Index i = 0; i < m.rows(); ++i) det *= solver.eigenvalues()(i);
    return det;
}

RVector draw_potential(const ExperimentConfig& cfg, std::uint64_t seed) {
    Rng rng(seed);
    const int n = cfg.box.site_count();
    RVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cfg.potential.sample(rng);
    return v;
}

}  // namespace

void ExperimentConfig::validate() const {
    box.validate();
    hop.validate(box);
    potential.validate();
    quadrature.validate();
    if (!(z.imag() > 0.0)) throw InvalidConfigError("ExperimentConfig: Im z must be > 0");
    if (sites.empty()) throw InvalidConfigError("ExperimentConfig: sites must not be empty");
    const int count = box.site_count();
    std::vector<bool> seen(static_cast<std::size_t>(count), false);
    for (int s : sites) {
        if (s < 0 || s >= count) throw InvalidConfigError("ExperimentConfig: site index out of range");
        if (seen[static_cast<std::size_t>(s)]) throw InvalidConfigError("ExperimentConfig: duplicate site index");
        seen[static_cast<std::size_t>(s)] = true;
    }
}

std::string to_string(Sampler s) { return s == Sampler::crude ? "crude" : "rao_blackwell"; }

std::optional<Sampler> sampler_from_string(const std::string& name) {
    if (name == "crude") return Sampler::crude;
    if (name == "rao_blackwell") return Sampler::rao_blackwell;
    return std::nullopt;
}

std::string to_string(EstimatorResult::Verdict v) {
    return v == EstimatorResult::Verdict::within_bound ? "within_bound" : "violates_at_3sigma";
}

double sample_det_im_block(const ExperimentConfig& cfg, std::uint64_t seed) {
    const RVector v = draw_potential(cfg, seed);
    const CMatrix h = build_hamiltonian(cfg.box, cfg.hop, v);
    const SpectralParameter z(cfg.z);
    const CMatrix block = green_block(h, z, cfg.sites);
    return det_of_imag(block);
}

std::optional<double> rao_blackwell_sample(const ExperimentConfig& cfg, std::uint64_t seed) {
    const Index n = static_cast<Index>(cfg.sites.size());
    if (n > 4) throw UnsupportedDimensionError("rao_blackwell_sample: probe set capped at 4 sites");
    const RVector v = draw_potential(cfg, seed);
    const SpectralParameter z(cfg.z);
    const HerglotzMatrix a = krein_matrix(cfg.box, cfg.hop, v, z, cfg.sites);

    if (cfg.potential.param == 0.0) {
        // point-mass disorder: the conditional expectation is one evaluation
        const std::vector<double> zeros(static_cast<std::size_t>(n), 0.0);
        const MinamiKernel kernel(a.matrix());
        return kernel(zeros.data());
    }

    const MinamiKernel kernel(a.matrix());
    const double width = std::max(a.certified_min_eig(), 1e-8);
    std::vector<quad::AxisSpec> axes(static_cast<std::size_t>(n));
    double prefactor = 1.0;
    for (Index i = 0; i < n; ++i) {
        auto& axis = axes[static_cast<std::size_t>(i)];
        const double peak = a.matrix()(i, i).real();
        if (cfg.potential.bounded_support()) {
            const double half = cfg.potential.support_halfwidth();
            axis.tangent = false;
            axis.lo = -half;
            axis.hi = half;
            axis.breaks = quad::peak_breaks_box(peak, width, axis.lo, axis.hi);
            prefactor /= cfg.potential.param;  // constant density 1/W
        } else {
            axis.tangent = true;
            axis.breaks = quad::peak_breaks_tangent(peak, width);
            axis.weight = quad::AxisSpec::Weight::gaussian;
            axis.sigma = cfg.potential.param;
        }
    }
    const double axis_tol = cfg.quadrature.rel_tol / (2.0 * static_cast<double>(n));
    const quad::NestedOutcome out = quad::integrate_nested(kernel, axes, axis_tol, cfg.quadrature.max_panels_per_axis);
    if (!out.converged) return std::nullopt;
    return out.value * prefactor;
}

EstimatorResult estimate_expectation(const ExperimentConfig& cfg, Sampler sampler, std::int64_t n,
                                     std::uint64_t base_seed) {
    if (n < 2) throw InvalidInputError("estimate_expectation: need at least 2 samples");
    cfg.validate();
    const auto n_sites = static_cast<double>(cfg.sites.size());
    const double bound = std::pow(kPi * cfg.potential.density_sup(), n_sites);

    std::vector<double> values(static_cast<std::size_t>(n), 0.0);
    std::vector<unsigned char> kept(static_cast<std::size_t>(n), 0);
    parallel_for(n, [&](std::int64_t i) {
        const std::uint64_t seed = derive_stream_seed(base_seed, static_cast<std::uint64_t>(i));
        if (sampler == Sampler::crude) {
            values[static_cast<std::size_t>(i)] = sample_det_im_block(cfg, seed);
            kept[static_cast<std::size_t>(i)] = 1;
        } else if (const auto sample = rao_blackwell_sample(cfg, seed)) {
            values[static_cast<std::size_t>(i)] = *sample;
            kept[static_cast<std::size_t>(i)] = 1;
        }
    });

    std::vector<double> usable;
    usable.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i)
        if (kept[static_cast<std::size_t>(i)]) usable.push_back(values[static_cast<std::size_t>(i)]);
    const auto flagged = static_cast<std::int64_t>(n - static_cast<std::int64_t>(usable.size()));
    if (static_cast<double>(flagged) > 1e-3 * static_cast<double>(n)) {
        std::ostringstream msg;
        msg << "estimate_expectation: " << flagged << " of " << n << " samples flagged (limit 0.1%)";
        throw EstimationFailedError(msg.str());
    }
    if (usable.size() < 2) throw EstimationFailedError("estimate_expectation: fewer than two usable samples");

    const auto count = static_cast<double>(usable.size());
    const double mean = pairwise_sum(usable.data(), usable.size()) / count;
    std::vector<double> sq(usable.size());
    for (std::size_t i = 0; i < usable.size(); ++i) {
        const double d = usable[i] - mean;
        sq[i] = d * d;
    }
    const double variance = pairwise_sum(sq.data(), sq.size()) / (count - 1.0);
    const double std_error = std::sqrt(variance / count);

    EstimatorResult result;
    result.mean = mean;
    result.std_error = std_error;
    result.samples = static_cast<std::int64_t>(usable.size());
    result.flagged = flagged;
    result.bound = bound;
    result.verdict = (mean - 3.0 * std_error > bound) ? EstimatorResult::Verdict::violates_at_3sigma
                                                      : EstimatorResult::Verdict::within_bound;
    result.seed = base_seed;
    return result;
}

}  // namespace minami
