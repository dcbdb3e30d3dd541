#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace minami {

/// One row of the random-matrix identity suite: the positivity-preservation,
/// involution, restriction, Schur-inverse, cofactor and determinant-pivot
/// properties checked on generated Herglotz samples.
struct IdentityCheck {
    std::string name;
    int min_dim;
    int max_dim;
    double threshold;    // pass iff max_err <= threshold
    std::int64_t samples = 0;
    double max_err = 0.0;
    bool pass = true;
    std::uint64_t failing_seed = 0;  // seed of the first failing sample
    std::string note;
};

/// Runs every property over dims [min..max per property] with
/// count_per_dim samples each, spread 1. Deterministic in base_seed.
std::vector<IdentityCheck> run_identity_suite(std::uint64_t base_seed, std::int64_t count_per_dim);

bool all_pass(const std::vector<IdentityCheck>& checks);

}  // namespace minami
