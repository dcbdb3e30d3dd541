#include "minami/identity_suite.hpp"

#include <cmath>
#include <functional>

#include "minami/errors.hpp"
#include "minami/herglotz.hpp"
#include "minami/rng.hpp"

namespace minami {

namespace {

constexpr double kSpread = 1.0;

using SampleCheck = std::function<double(const HerglotzMatrix&, std::uint64_t seed)>;

IdentityCheck run_property(const char* name, int min_dim, int max_dim, double threshold, std::uint64_t base_seed,
                           std::int64_t count_per_dim, const SampleCheck& err_of) {
    IdentityCheck check;
    check.name = name;
    check.min_dim = min_dim;
    check.max_dim = max_dim;
    check.threshold = threshold;
    for (int dim = min_dim; dim <= max_dim; ++dim) {
        const std::uint64_t dim_seed = derive_stream_seed(base_seed, static_cast<std::uint64_t>(dim));
        for (std::int64_t i = 0; i < count_per_dim; ++i) {
            const std::uint64_t seed = derive_stream_seed(dim_seed, static_cast<std::uint64_t>(i));
            const HerglotzMatrix a = sample_random_herglotz(dim, seed, kSpread);
            double err;
            try {
                err = err_of(a, seed);
            } catch (const Error& e) {
                err = 1.0;
                if (check.note.empty()) check.note = e.what();
            }
            ++check.samples;
            if (err > check.max_err) {
                check.max_err = err;
                if (err > threshold && check.pass) {
                    check.pass = false;
                    check.failing_seed = seed;
                }
            }
        }
    }
    check.pass = check.max_err <= threshold;
    return check;
}

double rel_frobenius(const CMatrix& x, const CMatrix& ref) {
    const double scale = ref.norm();
    return (x - ref).norm() / (scale > 0.0 ? scale : 1.0);
}

std::vector<Index> random_subset(Rng& rng, Index n) {
    std::vector<Index> pool(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    const auto k = static_cast<Index>(1 + rng.next() % static_cast<std::uint64_t>(n));
    for (Index i = 0; i < k; ++i) {
        const auto j = i + static_cast<Index>(rng.next() % static_cast<std::uint64_t>(n - i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(std::uint64_t base_seed, std::int64_t count_per_dim) {
    std::vector<IdentityCheck> checks;

    checks.push_back(run_property(
        "neg_inverse_preserves_positivity", 1, 8, 0.5, derive_stream_seed(base_seed, 1), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t) {
            return is_herglotz(neg_inverse(a).matrix()) ? 0.0 : 1.0;
        }));

    checks.push_back(run_property(
        "neg_inverse_involution", 1, 8, 1e-9, derive_stream_seed(base_seed, 2), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t) {
            return rel_frobenius(neg_inverse(neg_inverse(a)).matrix(), a.matrix());
        }));

    checks.push_back(run_property(
        "restriction_preserves_positivity", 1, 8, 0.5, derive_stream_seed(base_seed, 3), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t seed) {
            Rng rng(derive_stream_seed(seed, 0x5eed));
            const auto subset = random_subset(rng, a.dim());
            return is_herglotz(restrict_to(a.matrix(), subset)) ? 0.0 : 1.0;
        }));

    checks.push_back(run_property(
        "restriction_commutes_with_imag_part", 1, 8, 1e-12, derive_stream_seed(base_seed, 4), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t seed) {
            Rng rng(derive_stream_seed(seed, 0x5eed));
            const auto subset = random_subset(rng, a.dim());
            const CMatrix lhs = imag_part(restrict_to(a.matrix(), subset));
            const CMatrix rhs = restrict_to(imag_part(a.matrix()), subset);
            return (lhs - rhs).cwiseAbs().maxCoeff() / (1.0 + rhs.cwiseAbs().maxCoeff());
        }));

    checks.push_back(run_property(
        "cofactor_ratio_identity", 1, 8, 1e-9, derive_stream_seed(base_seed, 5), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t) {
            const auto [lhs, rhs] = cofactor_ratio_identity(a.matrix());
            return std::abs(lhs - rhs) / std::abs(rhs);
        }));

    checks.push_back(run_property(
        "schur_inverse_equals_restricted_inverse", 2, 8, 1e-9, derive_stream_seed(base_seed, 6), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t) {
            const Index n = a.dim();
            const CMatrix b = schur_complement_last(a.matrix());
            const CMatrix b_inv = b.partialPivLu().inverse();
            const CMatrix full_inv = a.matrix().partialPivLu().inverse();
            return rel_frobenius(b_inv, full_inv.topLeftCorner(n - 1, n - 1));
        }));

    checks.push_back(run_property(
        "hpd_determinant_pivot_bound", 2, 8, 1e-12, derive_stream_seed(base_seed, 7), count_per_dim,
        [](const HerglotzMatrix& a, std::uint64_t) {
            // det C <= C_nn * det of the leading block, for C Hermitian positive definite
            const CMatrix c = imag_part(a.matrix());
            const Index n = c.rows();
            const double log_full = log_det(c).log_abs;
            const double log_leading = log_det(c.topLeftCorner(n - 1, n - 1).eval()).log_abs;
            const double slack = log_full - (std::log(c(n - 1, n - 1).real()) + log_leading);
            return std::max(slack, 0.0);
        }));

    return checks;
}

bool all_pass(const std::vector<IdentityCheck>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace minami
