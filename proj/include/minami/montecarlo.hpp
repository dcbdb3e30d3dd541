#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "minami/anderson.hpp"
#include "minami/quadrature.hpp"

namespace minami {

/// One cell of a disorder experiment: lattice, hopping, disorder law,
/// spectral parameter, probe sites, and the quadrature budget for
/// conditional-expectation sampling.
struct ExperimentConfig {
    LatticeBox box;
    HoppingSpec hop;
    PotentialDistribution potential;
    Complex z{0.0, 1.0};
    std::vector<int> sites;
    QuadratureConfig quadrature;

    void validate() const;  // full validation, including a positive-width disorder law
};

enum class Sampler { crude, rao_blackwell };

std::string to_string(Sampler s);
std::optional<Sampler> sampler_from_string(const std::string& name);

struct EstimatorResult {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;  // samples entering the mean
    std::int64_t flagged = 0;  // excluded (inner quadrature did not converge)
    double bound = 0.0;        // pi^n * density_sup^n
    enum class Verdict { within_bound, violates_at_3sigma } verdict = Verdict::within_bound;
    std::uint64_t seed = 0;
};

std::string to_string(EstimatorResult::Verdict v);

/// One crude sample: draw the full potential, return det Im of the resolvent
/// block on the probe sites. Strictly positive. Tolerates a zero-width
/// (deterministic) disorder law.
double sample_det_im_block(const ExperimentConfig& cfg, std::uint64_t seed);

/// One conditioned sample: draw the potential, integrate the probe-site
/// potentials out against their density by nested quadrature around the
/// reduced matrix from krein_matrix. Deterministically bounded by
/// pi^n * density_sup^n. Returns nullopt when the quadrature fails to
/// converge (a flagged sample).
std::optional<double> rao_blackwell_sample(const ExperimentConfig& cfg, std::uint64_t seed);

/// Mean and standard error over n independent samples with per-sample seeds
/// derived from base_seed by counter; deterministic for fixed inputs under
/// any thread count. Throws EstimationFailedError when more than 0.1% of
/// samples flag or fewer than two survive.
EstimatorResult estimate_expectation(const ExperimentConfig& cfg, Sampler sampler, std::int64_t n,
                                     std::uint64_t base_seed);

}  // namespace minami
