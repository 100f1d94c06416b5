#include "imlab/suites.hpp"

#include <cmath>
#include <string>

#include "imlab/imaginarity.hpp"
#include "imlab/typicality.hpp"

namespace imlab {

namespace {

int dim_for_sample(const std::vector<int>& dims, int sample) {
  return dims[static_cast<std::size_t>(sample) % dims.size()];
}

std::string dims_config(int samples, const std::vector<int>& dims) {
  std::string cfg = "samples=" + std::to_string(samples) + " dims=";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    cfg += (i ? "," : "") + std::to_string(dims[i]);
  }
  return cfg;
}

}  // namespace

UnitaryEnsemble random_covariant_ensemble(Eigen::Index dim, int size, Seed seed) {
  UnitaryEnsemble ens;
  ens.dim = dim;
  const double w = 1.0 / size;
  for (int k = 0; k < size; ++k) {
    ens.members.push_back({w, haar_orthogonal(dim, seed.stream(static_cast<std::uint32_t>(k)))});
  }
  return ens;
}

LemmaReport run_fannes_suite(int samples, const std::vector<int>& dims, Seed seed) {
  LemmaReport report;
  report.lemma_id = "fannes";
  report.config = dims_config(samples, dims);
  for (int s = 0; s < samples; ++s) {
    const int d = dim_for_sample(dims, s);
    const Seed sub = seed.stream(static_cast<std::uint32_t>(s));
    const DensityMatrix rho = random_density(d, sub.stream(0));
    const DensityMatrix sigma = random_density(d, sub.stream(1));
    report.record(check_fannes(rho, sigma));
  }
  return report;
}

LemmaReport run_l4_suite(int samples, const std::vector<int>& dims, Seed seed) {
  LemmaReport report;
  report.lemma_id = "l4_real_part_entropy";
  report.config = dims_config(samples, dims);
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho =
        random_density(dim_for_sample(dims, s), seed.stream(static_cast<std::uint32_t>(s)));
    report.record(check_l4(rho), 1e-9);
  }
  return report;
}

LemmaReport run_l6_suite(int samples, const std::vector<int>& dims, Seed seed) {
  LemmaReport report;
  report.lemma_id = "l6_theta_entropy_invariance";
  report.config = dims_config(samples, dims);
  for (int s = 0; s < samples; ++s) {
    const int d = dim_for_sample(dims, s);
    const Seed sub = seed.stream(static_cast<std::uint32_t>(s));
    const DensityMatrix rho = random_density(d, sub.stream(0));
    const RealMat o = haar_orthogonal(d, sub.stream(1));
    report.record(check_l6(rho, o));
  }
  return report;
}

LemmaReport run_minimizer_suite(int samples, const std::vector<int>& dims, Seed seed) {
  LemmaReport report;
  report.lemma_id = "rei_minimizer_identity";
  report.config = dims_config(samples, dims);
  for (int s = 0; s < samples; ++s) {
    const DensityMatrix rho =
        random_density(dim_for_sample(dims, s), seed.stream(static_cast<std::uint32_t>(s)));
    const double direct = rei(rho);
    const double via_divergence = relative_entropy(rho, DensityMatrix(theta(rho.mat())));
    report.record(-std::abs(direct - via_divergence));
  }
  return report;
}

LemmaReport run_converse_suite(int samples, Seed seed) {
  LemmaReport report;
  report.lemma_id = "converse_chain";
  report.config = "samples=" + std::to_string(samples) + " d=2 n=2 members=4";
  for (int s = 0; s < samples; ++s) {
    const Seed sub = seed.stream(static_cast<std::uint32_t>(s));
    const DensityMatrix rho = random_density(2, sub.stream(0));
    const UnitaryEnsemble ens = random_covariant_ensemble(4, 4, sub.stream(1));
    report.record(converse_chain(rho, ens, 2).worst_slack);
  }
  return report;
}

LemmaReport run_concavity_suite(int samples, Seed seed) {
  LemmaReport report;
  report.lemma_id = "concavity_step";
  report.config = "samples=" + std::to_string(samples) + " d=2 n=2 members=4";
  for (int s = 0; s < samples; ++s) {
    const Seed sub = seed.stream(static_cast<std::uint32_t>(s));
    const DensityMatrix rho = random_density(2, sub.stream(0));
    const UnitaryEnsemble ens = random_covariant_ensemble(4, 4, sub.stream(1));
    const ConcavityCheck check = concavity_step_check(rho, ens, 2);
    report.record(std::min(check.margin_concavity, check.margin_invariance));
  }
  return report;
}

GentleSuiteReport run_gentle_suite(int n_max, const std::vector<double>& deltas, Seed seed) {
  GentleSuiteReport out;
  out.sqrt_form.lemma_id = "gentle_measurement";
  out.sqrt_form.config = "d=2 n<=" + std::to_string(n_max) + " grid";
  std::uint32_t stream = 0;
  for (int n = 1; n <= n_max; ++n) {
    for (double delta : deltas) {
      std::vector<DensityMatrix> states = {
          DensityMatrix::diagonal({0.75, 0.25}),
          DensityMatrix::diagonal({0.9, 0.1}),
          random_density(2, seed.stream(stream++)),
      };
      for (const DensityMatrix& rho : states) {
        const TypicalProjector tp = typical_projector(rho, n, delta);
        const GentleCheck check = check_gentle(tensor_power(rho, n), tp.projector);
        out.sqrt_form.record(check.margin());
        if (!check.literal_holds()) ++out.literal_violations;
      }
    }
  }
  // Typical projectors commute with rho^n, so the gap there is 2*eps and the
  // linear bound survives. Rotated rank-one probes realize the generic
  // non-commuting gap sqrt(eps^2 + 4(1-eps)eps), which beats 2*sqrt(2)*eps for
  // every eps < 4/11 while staying under the sqrt-form bound.
  for (double eps : {0.01, 0.05, 0.1, 0.2}) {
    const double theta_angle = std::asin(std::sqrt(eps));
    Vec zero(2), rotated(2);
    zero << 1, 0;
    rotated << std::cos(theta_angle), std::sin(theta_angle);
    const Mat probe = rotated * rotated.adjoint();
    const GentleCheck check = check_gentle(DensityMatrix::pure(zero), probe);
    out.sqrt_form.record(check.margin());
    if (!check.literal_holds()) ++out.literal_violations;
  }
  return out;
}

}  // namespace imlab
