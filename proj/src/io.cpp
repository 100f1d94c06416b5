#include "imlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace imlab {

using nlohmann::json;

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

json matrix_to_json(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("matrix file format requires a square matrix");
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  return json{{"d", m.rows()}, {"entries", std::move(entries)}};
}

Mat matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("entries")) {
    throw ConfigError("matrix file must be an object with fields 'd' and 'entries'");
  }
  const auto d = j.at("d").get<Eigen::Index>();
  if (d < 1) throw ConfigError("field 'd' must be a positive integer");
  const auto& entries = j.at("entries");
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != d * d) {
    throw ConfigError("field 'entries' must have length d*d = " + std::to_string(d * d));
  }
  Mat m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto& e = entries.at(static_cast<std::size_t>(i * d + k));
      if (!e.is_array() || e.size() != 2) {
        throw ConfigError("each entry must be a [re, im] pair");
      }
      m(i, k) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

void write_matrix_file(const std::string& path, const Mat& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path);
  // dump entries at full precision by hand; json dump of doubles already
  // round-trips, but keep the payload layout fixed
  out << matrix_to_json(m).dump(2) << "\n";
}

Mat read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed matrix file " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

std::string rei_sequence_csv(const ReiSequence& seq) {
  std::ostringstream out;
  out << "n,rei,rei_per_copy\n";
  for (const auto& e : seq.values) {
    out << e.n << "," << format_full(e.value) << "," << format_full(e.per_copy) << "\n";
  }
  return out.str();
}

std::string threshold_csv(const ThresholdResult& r) {
  std::ostringstream out;
  out << "state_label,n,epsilon,trials,quantile,N_star,rate,saturated,seed\n";
  out << r.state_label << "," << r.n << "," << format_full(r.epsilon) << "," << r.trials << ","
      << format_full(r.quantile) << "," << r.n_star << "," << format_full(r.rate) << ","
      << (r.saturated ? "true" : "false") << "," << r.seed.master_seed << "\n";
  return out.str();
}

std::string typicality_csv(Eigen::Index d, int n, double delta, const std::string& dim,
                           double mass, double dim_bound, bool op_bound_ok, bool pi_real) {
  std::ostringstream out;
  out << "d,n,delta,D,mass,dim_bound,op_bound_ok,pi_real\n";
  out << d << "," << n << "," << format_full(delta) << "," << dim << "," << format_full(mass)
      << "," << format_full(dim_bound) << "," << (op_bound_ok ? "true" : "false") << ","
      << (pi_real ? "true" : "false") << "\n";
  return out.str();
}

json lemma_report_json(const LemmaReport& report) {
  return json{{"lemma_id", report.lemma_id},
              {"samples", report.samples},
              {"violations", report.violations},
              {"worst_margin", report.worst_margin},
              {"config", report.config}};
}

json chernoff_report_json(const ChernoffReport& report) {
  return json{{"d", report.d},
              {"N", report.num_samples},
              {"mu", report.mu},
              {"epsilon", report.epsilon},
              {"trials", report.trials},
              {"empirical_failures", report.empirical_failures},
              {"bound", report.bound},
              {"generator", report.generator}};
}

json converse_report_json(const ConverseReport& report) {
  return json{{"log2_N", report.log2_n},  {"S_E", report.s_e},
              {"S_EZ", report.s_ez},      {"S_Z", report.s_z},
              {"S_A", report.s_a},        {"S_output", report.s_output},
              {"n_S_rho", report.n_s_rho}, {"worst_slack", report.worst_slack},
              {"all_ok", report.all_ok}};
}

}  // namespace imlab
