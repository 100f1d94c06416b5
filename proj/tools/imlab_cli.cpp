// imlab: numerical experiments on the imaginarity of quantum states.
//
// Subcommands: rei, regularize, twirl, threshold, typical, verify, chernoff,
// converse. States come from builtin names or the shared JSON matrix format.
// Every command is deterministic for a fixed --seed.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "imlab/imaginarity.hpp"
#include "imlab/io.hpp"
#include "imlab/matcore.hpp"
#include "imlab/protocols.hpp"
#include "imlab/suites.hpp"
#include "imlab/typicality.hpp"
#include "imlab/verify.hpp"

namespace {

using imlab::DensityMatrix;
using nlohmann::json;

constexpr const char* kVersion = "imlab 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw imlab::ConfigError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

// builtin names: plus-i | maximally-mixed(d) | diag(p,...) | random(d,seed);
// anything else is read as a matrix file path
DensityMatrix parse_state(const std::string& spec) {
  if (spec == "plus-i") return DensityMatrix::plus_i();
  const auto open = spec.find('(');
  if (open != std::string::npos && spec.back() == ')') {
    const std::string name = spec.substr(0, open);
    const std::string args = spec.substr(open + 1, spec.size() - open - 2);
    if (name == "maximally-mixed") {
      return DensityMatrix::maximally_mixed(static_cast<Eigen::Index>(std::stol(args)));
    }
    if (name == "diag") {
      return DensityMatrix::diagonal(parse_number_list(args));
    }
    if (name == "random") {
      const auto nums = parse_number_list(args);
      if (nums.size() != 2) throw imlab::ConfigError("random(d,seed) takes two arguments");
      return imlab::random_density(static_cast<Eigen::Index>(nums[0]),
                                   imlab::Seed{static_cast<std::uint64_t>(nums[1]), 0});
    }
    throw imlab::ConfigError("unknown builtin state '" + name + "'");
  }
  try {
    return DensityMatrix(imlab::read_matrix_file(spec));
  } catch (const imlab::InvalidStateError& e) {
    throw imlab::ConfigError("state file " + spec + " violates state invariants: " + e.what());
  }
}

struct Output {
  std::string path;    // empty = stdout only
  std::string payload; // the numeric payload; bytes are the determinism contract
};

void emit(const Output& out, const json& manifest) {
  if (out.path.empty()) {
    std::cout << out.payload;
    return;
  }
  std::ofstream f(out.path);
  if (!f) throw imlab::ConfigError("cannot open output file " + out.path);
  f << out.payload;
  std::ofstream mf(out.path + ".manifest.json");
  mf << manifest.dump(2) << "\n";
  std::cout << out.payload;
}

json manifest_base(const std::string& command, const json& config, double wall_ms) {
  return json{{"version", kVersion},
              {"command", command},
              {"config", config},
              {"wall_time_ms", wall_ms}};
}

imlab::UnitaryEnsemble named_ensemble(const std::string& name, int n_qubits) {
  if (name == "z") return imlab::qubit_z_twirl();
  if (name == "full") return imlab::full_qubit_twirl();
  if (name == "real-pauli") return imlab::real_pauli_sampler(n_qubits);
  throw imlab::ConfigError("unknown ensemble '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the resource theory of imaginarity"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string state_spec = "plus-i";
  std::string output_path;
  std::string format = "csv";
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* cmd, bool with_seed = true) {
    cmd->add_option("--output", output_path, "output file (payload; manifest written beside it)");
    cmd->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    if (with_seed) cmd->add_option("--seed", seed_value, "64-bit master seed");
  };

  // rei
  auto* cmd_rei = app.add_subcommand("rei", "relative entropy of imaginarity of a state");
  cmd_rei->add_option("--state", state_spec, "builtin name or matrix file");
  add_common(cmd_rei, false);

  // regularize
  int n_max = 3;
  auto* cmd_reg = app.add_subcommand("regularize", "I_r(rho^n) and per-copy values for n=1..n-max");
  cmd_reg->add_option("--state", state_spec);
  cmd_reg->add_option("--n-max", n_max, "largest copy count")->check(CLI::PositiveNumber);
  add_common(cmd_reg, false);

  // twirl
  std::string ensemble_name = "full";
  int copies = 1;
  std::uint64_t num_samples = 0;
  bool exhaustive = false;
  std::string state_out;
  auto* cmd_twirl = app.add_subcommand("twirl", "average a state over a covariant ensemble");
  cmd_twirl->add_option("--state", state_spec);
  cmd_twirl->add_option("--ensemble", ensemble_name, "z|full|real-pauli|erasure");
  cmd_twirl->add_option("--n", copies, "copies")->check(CLI::PositiveNumber);
  cmd_twirl->add_option("--N", num_samples, "sample count (sampled mode; 0 = exact average)");
  cmd_twirl->add_flag("--exhaustive", exhaustive, "average over the full group");
  cmd_twirl->add_option("--state-out", state_out, "write the output state as matrix JSON");
  add_common(cmd_twirl);

  // threshold
  double epsilon = 0.05;
  int trials = 32;
  double quantile = 0.5;
  auto* cmd_thr = app.add_subcommand("threshold", "minimal ensemble size reaching a realness gap");
  cmd_thr->add_option("--state", state_spec);
  cmd_thr->add_option("--n", copies)->check(CLI::PositiveNumber);
  cmd_thr->add_option("--epsilon", epsilon, "target realness gap");
  cmd_thr->add_option("--trials", trials)->check(CLI::PositiveNumber);
  cmd_thr->add_option("--quantile", quantile, "success quantile in (0,1]");
  cmd_thr->add_option("--ensemble", ensemble_name, "real-pauli|haar");
  cmd_thr->add_flag("--exhaustive", exhaustive, "deterministic small-N multiset search");
  add_common(cmd_thr);

  // typical
  std::string probs_spec;
  double delta = 0.1;
  auto* cmd_typ = app.add_subcommand("typical", "delta-typical set / subspace statistics");
  cmd_typ->add_option("--state", state_spec, "operator mode input");
  cmd_typ->add_option("--probs", probs_spec, "classical mode probabilities, e.g. 0.9,0.1");
  cmd_typ->add_option("--n", copies)->check(CLI::PositiveNumber);
  cmd_typ->add_option("--delta", delta)->check(CLI::PositiveNumber);
  add_common(cmd_typ, false);

  // verify
  std::string suite = "all";
  int samples = 1000;
  std::string dims_spec = "2,3,4";
  auto* cmd_ver = app.add_subcommand("verify", "run the lemma verification suites");
  cmd_ver->add_option("--suite", suite,
                      "all|fannes|gentle|l4|l6|minimizer|converse|concavity");
  cmd_ver->add_option("--samples", samples)->check(CLI::PositiveNumber);
  cmd_ver->add_option("--dims", dims_spec, "comma list of dimensions");
  add_common(cmd_ver);

  // chernoff
  Eigen::Index chern_d = 2;
  std::string generator = "projector";
  auto* cmd_che = app.add_subcommand("chernoff", "operator Chernoff concentration experiment");
  cmd_che->add_option("--d", chern_d)->check(CLI::PositiveNumber);
  cmd_che->add_option("--N", num_samples, "samples per batch")->check(CLI::PositiveNumber);
  cmd_che->add_option("--trials", trials)->check(CLI::PositiveNumber);
  cmd_che->add_option("--epsilon", epsilon);
  cmd_che->add_option("--generator", generator, "projector|haar-psd");
  add_common(cmd_che);

  // converse
  int members = 4;
  std::string converse_kind = "z-pair";
  auto* cmd_con = app.add_subcommand("converse", "entropy chain of the tagged purification");
  cmd_con->add_option("--state", state_spec);
  cmd_con->add_option("--n", copies)->check(CLI::PositiveNumber);
  cmd_con->add_option("--ensemble", converse_kind, "z-pair|haar");
  cmd_con->add_option("--members", members, "ensemble size (haar kind)")
      ->check(CLI::PositiveNumber);
  add_common(cmd_con);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto wall_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  try {
    const imlab::Seed seed{seed_value, 0};
    Output out;
    out.path = output_path;
    json config;
    std::string command;
    int exit_code = kExitOk;

    if (cmd_rei->parsed()) {
      command = "rei";
      const double value = imlab::rei(parse_state(state_spec));
      config = {{"state", state_spec}};
      out.payload = format == "json" ? json{{"rei", value}}.dump(2) + "\n"
                                     : "rei\n" + imlab::format_full(value) + "\n";
    } else if (cmd_reg->parsed()) {
      command = "regularize";
      const imlab::ReiSequence seq =
          imlab::rei_sequence(parse_state(state_spec), n_max, state_spec);
      config = {{"state", state_spec}, {"n_max", n_max}};
      if (format == "json") {
        json rows = json::array();
        for (const auto& e : seq.values) {
          rows.push_back({{"n", e.n}, {"rei", e.value}, {"rei_per_copy", e.per_copy}});
        }
        out.payload = rows.dump(2) + "\n";
      } else {
        out.payload = imlab::rei_sequence_csv(seq);
      }
    } else if (cmd_twirl->parsed()) {
      command = "twirl";
      const DensityMatrix rho = parse_state(state_spec);
      config = {{"state", state_spec}, {"ensemble", ensemble_name}, {"n", copies},
                {"N", num_samples},    {"seed", seed_value},        {"exhaustive", exhaustive}};
      DensityMatrix result = rho;
      double dist = 0.0;
      if (ensemble_name == "erasure") {
        const DensityMatrix power = imlab::tensor_power(rho, copies);
        result = imlab::apply_ensemble(power, imlab::exact_erasure_ensemble(power));
        dist = imlab::imag_distance(result);
      } else if (num_samples == 0 || exhaustive) {
        // exact average
        if (ensemble_name == "real-pauli" || exhaustive) {
          const imlab::TwirlOutcome o = imlab::sampled_twirl(
              rho, copies, 1, named_ensemble("real-pauli", 1), seed, /*exhaustive=*/true);
          result = o.state;
          dist = o.imag_distance;
        } else {
          const DensityMatrix power = imlab::tensor_power(rho, copies);
          result = imlab::apply_ensemble(power, named_ensemble(ensemble_name, 1));
          dist = imlab::imag_distance(result);
        }
      } else {
        const imlab::UnitaryEnsemble sampler =
            ensemble_name == "haar"
                ? imlab::haar_orthogonal_sampler(imlab::tensor_power(rho, copies).dim())
                : named_ensemble(ensemble_name, 1);
        const imlab::TwirlOutcome o =
            imlab::sampled_twirl(rho, copies, num_samples, sampler, seed);
        result = o.state;
        dist = o.imag_distance;
      }
      if (!state_out.empty()) imlab::write_matrix_file(state_out, result.mat());
      out.payload = "ensemble,n,N,imag_distance\n" + ensemble_name + "," +
                    std::to_string(copies) + "," + std::to_string(num_samples) + "," +
                    imlab::format_full(dist) + "\n";
    } else if (cmd_thr->parsed()) {
      command = "threshold";
      const DensityMatrix rho = parse_state(state_spec);
      imlab::UnitaryEnsemble sampler;
      if (ensemble_name == "haar") {
        sampler = imlab::haar_orthogonal_sampler(imlab::tensor_power(rho, copies).dim());
      } else if (ensemble_name == "real-pauli" || ensemble_name == "full") {
        sampler = imlab::real_pauli_sampler(1);
      } else {
        throw imlab::ConfigError("threshold ensemble must be real-pauli or haar");
      }
      imlab::ThresholdOptions opts;
      opts.trials = trials;
      opts.quantile = quantile;
      opts.exhaustive = exhaustive;
      const imlab::ThresholdResult result =
          imlab::threshold_rate(rho, copies, epsilon, sampler, seed, opts, state_spec);
      config = {{"state", state_spec},   {"n", copies},        {"epsilon", epsilon},
                {"trials", trials},      {"quantile", quantile}, {"seed", seed_value},
                {"ensemble", ensemble_name}, {"exhaustive", exhaustive}};
      out.payload = imlab::threshold_csv(result);
    } else if (cmd_typ->parsed()) {
      command = "typical";
      config = {{"n", copies}, {"delta", delta}};
      if (!probs_spec.empty()) {
        const std::vector<double> probs = parse_number_list(probs_spec);
        const imlab::TypicalSet set = imlab::typical_stats(probs, copies, delta);
        double h = 0.0;
        for (double p : probs) {
          if (p > 0.0) h -= p * std::log2(p);
        }
        config["probs"] = probs_spec;
        out.payload = imlab::typicality_csv(static_cast<Eigen::Index>(probs.size()), copies,
                                            delta, set.member_count, set.mass,
                                            copies * (h + delta), true, true);
      } else {
        const DensityMatrix rho = parse_state(state_spec);
        const imlab::TypicalProjector tp = imlab::typical_projector(rho, copies, delta);
        const double s = imlab::von_neumann_entropy(rho);
        const imlab::Mat power = imlab::matrix_power_kron(rho.mat(), copies);
        // operator inequality 2^{n(S-delta)} Pi rho^n Pi <= Pi
        const imlab::Mat gap =
            tp.projector - std::exp2(copies * (s - delta)) * tp.projector * power * tp.projector;
        Eigen::SelfAdjointEigenSolver<imlab::Mat> es(gap, Eigen::EigenvaluesOnly);
        const bool op_bound_ok = es.eigenvalues().minCoeff() >= -1e-9;
        config["state"] = state_spec;
        out.payload = imlab::typicality_csv(rho.dim(), copies, delta,
                                            std::to_string(tp.subspace_dim), tp.mass,
                                            copies * (s + delta), op_bound_ok, tp.projector_real);
      }
    } else if (cmd_ver->parsed()) {
      command = "verify";
      std::vector<int> dims;
      for (double v : parse_number_list(dims_spec)) dims.push_back(static_cast<int>(v));
      if (dims.empty()) throw imlab::ConfigError("--dims must name at least one dimension");
      config = {{"suite", suite}, {"samples", samples}, {"dims", dims_spec}, {"seed", seed_value}};

      json reports = json::array();
      int violations = 0;
      auto push = [&](const imlab::LemmaReport& r) {
        reports.push_back(imlab::lemma_report_json(r));
        violations += r.violations;
      };
      const bool all = suite == "all";
      if (all || suite == "fannes") push(imlab::run_fannes_suite(samples, dims, seed.stream(1)));
      if (all || suite == "l4") push(imlab::run_l4_suite(samples, dims, seed.stream(2)));
      if (all || suite == "l6") push(imlab::run_l6_suite(samples, dims, seed.stream(3)));
      if (all || suite == "minimizer") {
        push(imlab::run_minimizer_suite(samples, dims, seed.stream(4)));
      }
      if (all || suite == "converse") {
        push(imlab::run_converse_suite(std::min(samples, 100), seed.stream(5)));
      }
      if (all || suite == "concavity") {
        push(imlab::run_concavity_suite(std::min(samples, 100), seed.stream(6)));
      }
      if (all || suite == "gentle") {
        const imlab::GentleSuiteReport g = imlab::run_gentle_suite(6, {0.1, 0.2, 0.3}, seed.stream(7));
        json entry = imlab::lemma_report_json(g.sqrt_form);
        entry["literal_bound_violations"] = g.literal_violations;  // diagnostic only
        reports.push_back(entry);
        violations += g.sqrt_form.violations;
      }
      if (reports.empty()) throw imlab::ConfigError("unknown suite '" + suite + "'");
      out.payload = reports.dump(2) + "\n";
      if (violations > 0) exit_code = kExitViolations;
    } else if (cmd_che->parsed()) {
      command = "chernoff";
      if (num_samples == 0) num_samples = 1000;
      const imlab::ChernoffGenerator gen =
          generator == "projector" ? imlab::ChernoffGenerator::RandomProjector
          : generator == "haar-psd"
              ? imlab::ChernoffGenerator::HaarConjugation
              : throw imlab::ConfigError("unknown generator '" + generator + "'");
      const imlab::ChernoffReport report =
          imlab::chernoff_experiment(chern_d, num_samples, trials, epsilon, gen, seed);
      config = {{"d", chern_d},     {"N", num_samples},      {"trials", trials},
                {"epsilon", epsilon}, {"generator", generator}, {"seed", seed_value}};
      out.payload = imlab::chernoff_report_json(report).dump(2) + "\n";
      const double freq = static_cast<double>(report.empirical_failures) / report.trials;
      const double margin =
          report.bound <= 1.0
              ? 3.0 * std::sqrt(report.bound * (1.0 - report.bound) / report.trials)
              : 0.0;
      if (report.bound <= 1.0 && freq > report.bound + margin) exit_code = kExitViolations;
    } else if (cmd_con->parsed()) {
      command = "converse";
      const DensityMatrix rho = parse_state(state_spec);
      imlab::UnitaryEnsemble ens;
      if (converse_kind == "z-pair") {
        const Eigen::Index dn = imlab::tensor_power(rho, copies).dim();
        imlab::RealMat z = imlab::RealMat::Identity(dn, dn);
        // sigma_z^{(x) n} needs a qubit base system
        if (rho.dim() != 2) throw imlab::ConfigError("z-pair ensemble needs a qubit state");
        for (Eigen::Index i = 0; i < dn; ++i) {
          int ones = 0;
          for (Eigen::Index b = i; b > 0; b >>= 1) ones += static_cast<int>(b & 1);
          z(i, i) = (ones % 2 == 0) ? 1.0 : -1.0;
        }
        ens.dim = dn;
        ens.members.push_back({0.5, imlab::RealMat::Identity(dn, dn)});
        ens.members.push_back({0.5, z});
      } else if (converse_kind == "haar") {
        ens = imlab::random_covariant_ensemble(imlab::tensor_power(rho, copies).dim(), members,
                                               seed);
      } else {
        throw imlab::ConfigError("unknown converse ensemble '" + converse_kind + "'");
      }
      const imlab::ConverseReport report = imlab::converse_chain(rho, ens, copies);
      config = {{"state", state_spec}, {"n", copies}, {"ensemble", converse_kind},
                {"members", members},  {"seed", seed_value}};
      out.payload = imlab::converse_report_json(report).dump(2) + "\n";
      if (!report.all_ok) exit_code = kExitViolations;
    }

    emit(out, manifest_base(command, config, wall_ms()));
    return exit_code;
  } catch (const imlab::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const imlab::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const imlab::InvalidInputError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
