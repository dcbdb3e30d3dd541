#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "minami/complex_matrix.hpp"
#include "minami/lemma_closed_form.hpp"
#include "minami/montecarlo.hpp"

namespace minami {

using Json = nlohmann::json;

/// Matrix wire format: {"n": int, "re": [[...]], "im": [[...]]}, both arrays
/// row-major n x n. Ragged arrays are rejected.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json lemma1_report_to_json(const Lemma1Report& report);

Json config_to_json(const ExperimentConfig& cfg);

/// Parses one experiment cell. "flux", "potential.param" and "z.im" must be
/// scalars here; use experiment_sweep_from_json for array-valued sweeps.
ExperimentConfig config_from_json(const Json& j);

/// Cross product over array-valued "flux", "potential.param" and "z.im"
/// (scalars mean a single value), flux outermost, then the disorder
/// parameter, then Im z.
std::vector<ExperimentConfig> experiment_sweep_from_json(const Json& j);

Json estimator_result_to_json(const EstimatorResult& result);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace minami
