#include "minami/cli.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "minami/errors.hpp"
#include "minami/identity_suite.hpp"
#include "minami/json_io.hpp"
#include "minami/lemma_closed_form.hpp"
#include "minami/montecarlo.hpp"
#include "minami/parallel.hpp"
#include "minami/quadrature.hpp"
#include "minami/version.hpp"

namespace minami::cli {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string iso_timestamp_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json make_manifest(const std::string& command, const std::string& config_path, std::uint64_t seed,
                   const std::string& output_path) {
    return Json{{"command", command},   {"config_path", config_path}, {"seed", seed},
                {"output_path", output_path}, {"version", kVersion},  {"timestamp", iso_timestamp_utc()}};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json integral_to_json(const IntegralResult& r) {
    return Json{{"value", r.value}, {"est_error", r.est_error}, {"panels_used", r.panels_used}, {"converged", r.converged}};
}

int cmd_identities(std::uint64_t seed, std::int64_t count, const std::string& out_path) {
    const auto checks = run_identity_suite(seed, count);
    std::printf("%-42s %-5s %9s %12s %12s  %s\n", "property", "dims", "samples", "max_err", "threshold", "result");
    for (const auto& c : checks) {
        std::printf("%-42s %d-%-3d %9lld %12.3e %12.3e  %s\n", c.name.c_str(), c.min_dim, c.max_dim,
                    static_cast<long long>(c.samples), c.max_err, c.threshold, c.pass ? "pass" : "FAIL");
        if (!c.pass) std::printf("  first failing seed: %" PRIu64 "  %s\n", c.failing_seed, c.note.c_str());
    }
    const bool ok = all_pass(checks);
    std::printf("%s (seed %" PRIu64 ", count per dim %lld)\n", ok ? "all properties passed" : "PROPERTY FAILURES",
                seed, static_cast<long long>(count));
    if (!out_path.empty()) {
        Json rows = Json::array();
        for (const auto& c : checks)
            rows.push_back(Json{{"property", c.name},
                                {"min_dim", c.min_dim},
                                {"max_dim", c.max_dim},
                                {"samples", c.samples},
                                {"max_err", c.max_err},
                                {"threshold", c.threshold},
                                {"pass", c.pass},
                                {"failing_seed", c.failing_seed}});
        write_json_file(out_path, Json{{"manifest", make_manifest("identities", "", seed, out_path)},
                                       {"checks", rows},
                                       {"pass", ok}});
    }
    return ok ? 0 : 1;
}

int cmd_lemma1(const std::string& config_path, std::uint64_t seed, double rel_tol, const std::string& out_path) {
    CMatrix m;
    if (!config_path.empty()) {
        m = matrix_from_json(load_json_file(config_path));
        if (m.rows() != 2) throw InvalidConfigError("lemma1: the matrix must be 2x2");
    } else {
        m = sample_random_herglotz(2, seed, 1.0).matrix();
    }

    Lemma1Report report;
    IntegralResult quad;
    try {
        const HerglotzMatrix a(m);
        report = lemma1_value(a);
        QuadratureConfig qc;
        qc.rel_tol = rel_tol;
        quad = integrate_minami_nd(a, qc);
    } catch (const NotHerglotzError& e) {
        std::cerr << "Im A not positive definite: smallest eigenvalue of Im A = " << e.min_imag_eigenvalue << "\n";
        return 2;
    }

    const double rel_diff = std::fabs(quad.value - report.value) / report.value;
    const double bound_slack = kPi * kPi * (1.0 + 1e-12);
    const bool pass = rel_diff <= 5.0 * rel_tol && report.value <= bound_slack && quad.value <= bound_slack;
    Json body{{"matrix", matrix_to_json(m)},
              {"report", lemma1_report_to_json(report)},
              {"quadrature", integral_to_json(quad)},
              {"rel_diff", rel_diff},
              {"pass", pass}};
    std::cout << body.dump(2) << "\n";
    if (!out_path.empty()) {
        body["manifest"] = make_manifest("lemma1", config_path, seed, out_path);
        write_json_file(out_path, body);
    }
    return pass ? 0 : 1;
}

int cmd_lemma2(int n, std::uint64_t seed, std::int64_t count, double rel_tol, const std::string& out_path) {
    QuadratureConfig qc;
    qc.rel_tol = rel_tol;
    qc.validate();
    const double bound = std::pow(kPi, n);
    const double limit = bound * (1.0 + 10.0 * rel_tol);

    std::vector<IntegralResult> results(static_cast<std::size_t>(count));
    parallel_for(count, [&](std::int64_t i) {
        const HerglotzMatrix a = sample_random_herglotz(n, derive_stream_seed(seed, static_cast<std::uint64_t>(i)), 1.0);
        results[static_cast<std::size_t>(i)] = integrate_minami_nd(a, qc);
    });

    double max_ratio = 0.0;
    std::int64_t violations = 0, unconverged = 0;
    for (std::int64_t i = 0; i < count; ++i) {
        const auto& r = results[static_cast<std::size_t>(i)];
        max_ratio = std::max(max_ratio, r.value / bound);
        if (!r.converged) {
            ++unconverged;
            std::fprintf(stderr, "warning: matrix %lld quadrature did not converge (est_error %s)\n",
                         static_cast<long long>(i), fmt_double(r.est_error).c_str());
        }
        if (r.value > limit) ++violations;
    }
    std::printf("n=%d  count=%lld  max ratio value/pi^n = %s  violations=%lld  unconverged=%lld\n", n,
                static_cast<long long>(count), fmt_double(max_ratio).c_str(), static_cast<long long>(violations),
                static_cast<long long>(unconverged));
    if (!out_path.empty()) {
        Json rows = Json::array();
        for (std::int64_t i = 0; i < count; ++i)
            rows.push_back(integral_to_json(results[static_cast<std::size_t>(i)]));
        write_json_file(out_path, Json{{"manifest", make_manifest("lemma2", "", seed, out_path)},
                                       {"n", n},
                                       {"count", count},
                                       {"rel_tol", rel_tol},
                                       {"bound", bound},
                                       {"max_ratio", max_ratio},
                                       {"violations", violations},
                                       {"results", rows}});
    }
    return violations == 0 ? 0 : 1;
}

std::string csv_path_for(const std::string& json_path) {
    const auto dot = json_path.rfind(".json");
    if (dot != std::string::npos && dot == json_path.size() - 5) return json_path.substr(0, dot) + ".csv";
    return json_path + ".csv";
}

int cmd_minami(const std::string& config_path, const std::string& sampler_name, std::int64_t count,
               std::uint64_t seed, const std::string& out_path) {
    const auto sampler = sampler_from_string(sampler_name);
    if (!sampler) throw InvalidConfigError("minami: unknown sampler '" + sampler_name + "'");
    const auto cells = experiment_sweep_from_json(load_json_file(config_path));

    Json sweep = Json::array();
    std::vector<std::string> csv_rows;
    bool all_within = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& cfg = cells[i];
        const EstimatorResult r =
            estimate_expectation(cfg, *sampler, count, derive_stream_seed(seed, static_cast<std::uint64_t>(i)));
        all_within = all_within && r.verdict == EstimatorResult::Verdict::within_bound;
        sweep.push_back(Json{{"config", config_to_json(cfg)}, {"result", estimator_result_to_json(r)}});
        std::ostringstream row;
        row << fmt_double(cfg.hop.flux_per_plaquette) << ',' << cfg.sites.size() << ','
            << fmt_double(cfg.potential.param) << ',' << fmt_double(cfg.z.imag()) << ',' << to_string(*sampler) << ','
            << count << ',' << fmt_double(r.mean) << ',' << fmt_double(r.std_error) << ',' << fmt_double(r.bound)
            << ',' << to_string(r.verdict);
        csv_rows.push_back(row.str());
        std::printf("flux=%g n=%zu W=%g im_z=%g  mean=%.6g  std_error=%.3g  bound=%.6g  %s\n",
                    cfg.hop.flux_per_plaquette, cfg.sites.size(), cfg.potential.param, cfg.z.imag(), r.mean,
                    r.std_error, r.bound, to_string(r.verdict).c_str());
    }

    const Json manifest = make_manifest("minami", config_path, seed, out_path);
    write_json_file(out_path, Json{{"manifest", manifest},
                                   {"sampler", to_string(*sampler)},
                                   {"requested_samples", count},
                                   {"sweep", sweep},
                                   {"all_within_bound", all_within}});
    std::ofstream csv(csv_path_for(out_path));
    if (!csv) throw Error("cannot write CSV next to " + out_path);
    csv << "# command=minami config=" << config_path << " seed=" << seed << " out=" << out_path
        << " version=" << kVersion << "\n";
    csv << "# timestamp=" << manifest.at("timestamp").get<std::string>() << "\n";
    csv << "flux,n,W,im_z,sampler,N,mean,std_error,bound,verdict\n";
    for (const auto& row : csv_rows) csv << row << "\n";
    return all_within ? 0 : 1;
}

}  // namespace

int run(std::vector<std::string> args) {
    CLI::App app{"minami-lab: numeric verification of determinant bounds for random lattice resolvents"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    std::int64_t count = 0;
    double rel_tol = 1e-7;
    int n = 2;
    std::string config_path, out_path, sampler_name = "crude";

    auto* identities = app.add_subcommand("identities", "run the matrix-identity property suite on random samples");
    identities->add_option("--seed", seed, "base seed")->capture_default_str();
    identities->add_option("--count", count, "samples per dimension")->default_val(std::int64_t{1000})
        ->check(CLI::PositiveNumber);
    identities->add_option("--out", out_path, "write a JSON report here");

    auto* lemma1 = app.add_subcommand("lemma1", "closed form vs quadrature for the 2x2 determinant integral");
    lemma1->add_option("--config", config_path, "path of a 2x2 matrix JSON file");
    lemma1->add_option("--seed", seed, "generator seed used when no matrix file is given")->capture_default_str();
    lemma1->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->capture_default_str();
    lemma1->add_option("--out", out_path, "write a JSON report here");

    auto* lemma2 = app.add_subcommand("lemma2", "bound check for the n-dimensional determinant integral");
    lemma2->add_option("--n", n, "matrix dimension (1..4)")->check(CLI::Range(1, 4))->capture_default_str();
    lemma2->add_option("--seed", seed, "base seed")->capture_default_str();
    lemma2->add_option("--count", count, "number of random matrices")->default_val(std::int64_t{10})
        ->check(CLI::PositiveNumber);
    lemma2->add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->capture_default_str();
    lemma2->add_option("--out", out_path, "write a JSON report here");

    auto* minami_cmd = app.add_subcommand("minami", "Monte Carlo check of the disorder-averaged determinant bound");
    minami_cmd->add_option("--config", config_path, "experiment config JSON")->required();
    minami_cmd->add_option("--sampler", sampler_name, "crude | rao_blackwell")
        ->check(CLI::IsMember({"crude", "rao_blackwell"}))
        ->capture_default_str();
    minami_cmd->add_option("--count", count, "samples per sweep cell")->default_val(std::int64_t{10000})
        ->check(CLI::PositiveNumber);
    minami_cmd->add_option("--seed", seed, "base seed")->capture_default_str();
    minami_cmd->add_option("--out", out_path, "output JSON path (a CSV is written alongside)")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(identities)) return cmd_identities(seed, count, out_path);
        if (app.got_subcommand(lemma1)) return cmd_lemma1(config_path, seed, rel_tol, out_path);
        if (app.got_subcommand(lemma2)) return cmd_lemma2(n, seed, count, rel_tol, out_path);
        if (app.got_subcommand(minami_cmd)) return cmd_minami(config_path, sampler_name, count, seed, out_path);
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace minami::cli
