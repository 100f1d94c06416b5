#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "imlab/imaginarity.hpp"
#include "imlab/matcore.hpp"
#include "imlab/protocols.hpp"
#include "imlab/typicality.hpp"
#include "imlab/verify.hpp"

namespace imlab {

// Shared matrix file format: { "d": int, "entries": [[re, im], ...] },
// row-major, length d^2; writers emit 17 significant digits.
nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

void write_matrix_file(const std::string& path, const Mat& m);
Mat read_matrix_file(const std::string& path);

// full-precision decimal rendering used by every numeric payload
std::string format_full(double value);

std::string rei_sequence_csv(const ReiSequence& seq);
std::string threshold_csv(const ThresholdResult& result);
std::string typicality_csv(Eigen::Index d, int n, double delta, const std::string& dim,
                           double mass, double dim_bound, bool op_bound_ok, bool pi_real);

nlohmann::json lemma_report_json(const LemmaReport& report);
nlohmann::json chernoff_report_json(const ChernoffReport& report);
nlohmann::json converse_report_json(const ConverseReport& report);

}  // namespace imlab
