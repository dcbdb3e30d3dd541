#include "minami/json_io.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "minami/errors.hpp"

namespace minami {

namespace {

double finite_number(const Json& j, const char* where) {
    if (!j.is_number()) throw InvalidConfigError(std::string(where) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvalidConfigError(std::string(where) + ": non-finite value");
    return v;
}

std::vector<std::vector<double>> square_array(const Json& j, Index n, const char* name) {
    if (!j.is_array() || static_cast<Index>(j.size()) != n)
        throw InvalidConfigError(std::string("matrix_from_json: '") + name + "' must be an n x n array");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<Index>(row.size()) != n)
            throw InvalidConfigError(std::string("matrix_from_json: ragged '") + name + "' array");
        std::vector<double> r;
        r.reserve(static_cast<std::size_t>(n));
        for (const auto& x : row) r.push_back(finite_number(x, "matrix_from_json"));
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<double> number_or_array(const Json& j, const char* where) {
    std::vector<double> values;
    if (j.is_array()) {
        if (j.empty()) throw InvalidConfigError(std::string(where) + ": empty sweep array");
        for (const auto& x : j) values.push_back(finite_number(x, where));
    } else {
        values.push_back(finite_number(j, where));
    }
    return values;
}

const Json& require_key(const Json& j, const char* key, const char* where) {
    const auto it = j.find(key);
    if (it == j.end()) throw InvalidConfigError(std::string(where) + ": missing key '" + key + "'");
    return *it;
}

ExperimentConfig config_from_point(const Json& j, double flux, double param, double im_z) {
    ExperimentConfig cfg;
    cfg.box.dim = require_key(j, "dim", "config").get<int>();
    cfg.box.sides = require_key(j, "sides", "config").get<std::vector<int>>();
    const std::string boundary = require_key(j, "boundary", "config").get<std::string>();
    if (boundary == "open")
        cfg.box.boundary = Boundary::open;
    else if (boundary == "periodic")
        cfg.box.boundary = Boundary::periodic;
    else
        throw InvalidConfigError("config: boundary must be 'open' or 'periodic'");

    cfg.hop.amplitude = finite_number(require_key(j, "t", "config"), "config.t");
    cfg.hop.flux_per_plaquette = flux;
    if (j.contains("diagonal_shift")) cfg.hop.diagonal_shift = j.at("diagonal_shift").get<bool>();

    const Json& pot = require_key(j, "potential", "config");
    const std::string kind = require_key(pot, "kind", "config.potential").get<std::string>();
    if (kind == "uniform")
        cfg.potential.kind = PotentialDistribution::Kind::uniform;
    else if (kind == "gaussian")
        cfg.potential.kind = PotentialDistribution::Kind::gaussian;
    else
        throw InvalidConfigError("config.potential: kind must be 'uniform' or 'gaussian'");
    cfg.potential.param = param;

    const Json& z = require_key(j, "z", "config");
    cfg.z = Complex(finite_number(require_key(z, "re", "config.z"), "config.z.re"), im_z);

    cfg.sites = require_key(j, "sites", "config").get<std::vector<int>>();

    if (j.contains("quadrature")) {
        const Json& q = j.at("quadrature");
        if (q.contains("rel_tol")) cfg.quadrature.rel_tol = finite_number(q.at("rel_tol"), "config.quadrature.rel_tol");
        if (q.contains("max_panels_per_axis")) cfg.quadrature.max_panels_per_axis = q.at("max_panels_per_axis").get<int>();
    }
    cfg.validate();
    return cfg;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json re = Json::array();
    Json im = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json re_row = Json::array();
        Json im_row = Json::array();
        for (Index j = 0; j < m.cols(); ++j) {
            re_row.push_back(m(i, j).real());
            im_row.push_back(m(i, j).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return Json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_object()) throw InvalidConfigError("matrix_from_json: expected an object");
    const Json& nj = require_key(j, "n", "matrix_from_json");
    if (!nj.is_number_integer() || nj.get<long long>() < 1)
        throw InvalidConfigError("matrix_from_json: 'n' must be a positive integer");
    const Index n = nj.get<Index>();
    const auto re = square_array(require_key(j, "re", "matrix_from_json"), n, "re");
    const auto im = square_array(require_key(j, "im", "matrix_from_json"), n, "im");
    CMatrix m(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k)
            m(i, k) = Complex(re[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                              im[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
    return m;
}

Json lemma1_report_to_json(const Lemma1Report& report) {
    return Json{{"det_im_a", report.det_im_a},
                {"delta", report.delta},
                {"value", report.value},
                {"bound", report.bound},
                {"ratio", report.ratio}};
}

Json config_to_json(const ExperimentConfig& cfg) {
    return Json{{"dim", cfg.box.dim},
                {"sides", cfg.box.sides},
                {"boundary", cfg.box.boundary == Boundary::open ? "open" : "periodic"},
                {"t", cfg.hop.amplitude},
                {"flux", cfg.hop.flux_per_plaquette},
                {"diagonal_shift", cfg.hop.diagonal_shift},
                {"potential",
                 {{"kind", cfg.potential.kind == PotentialDistribution::Kind::uniform ? "uniform" : "gaussian"},
                  {"param", cfg.potential.param}}},
                {"z", {{"re", cfg.z.real()}, {"im", cfg.z.imag()}}},
                {"sites", cfg.sites},
                {"quadrature",
                 {{"rel_tol", cfg.quadrature.rel_tol}, {"max_panels_per_axis", cfg.quadrature.max_panels_per_axis}}}};
}

ExperimentConfig config_from_json(const Json& j) {
    const double flux = finite_number(require_key(j, "flux", "config"), "config.flux");
    const double param = finite_number(require_key(require_key(j, "potential", "config"), "param", "config.potential"),
                                       "config.potential.param");
    const double im_z = finite_number(require_key(require_key(j, "z", "config"), "im", "config.z"), "config.z.im");
    return config_from_point(j, flux, param, im_z);
}

std::vector<ExperimentConfig> experiment_sweep_from_json(const Json& j) {
    const auto fluxes = number_or_array(require_key(j, "flux", "config"), "config.flux");
    const auto params = number_or_array(require_key(require_key(j, "potential", "config"), "param", "config.potential"),
                                        "config.potential.param");
    const auto ims = number_or_array(require_key(require_key(j, "z", "config"), "im", "config.z"), "config.z.im");
    std::vector<ExperimentConfig> cells;
    cells.reserve(fluxes.size() * params.size() * ims.size());
    for (double flux : fluxes)
        for (double param : params)
            for (double im_z : ims) cells.push_back(config_from_point(j, flux, param, im_z));
    return cells;
}

Json estimator_result_to_json(const EstimatorResult& result) {
    return Json{{"mean", result.mean},       {"std_error", result.std_error}, {"samples", result.samples},
                {"flagged", result.flagged}, {"bound", result.bound},         {"verdict", to_string(result.verdict)},
                {"seed", result.seed}};
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InvalidConfigError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace minami
