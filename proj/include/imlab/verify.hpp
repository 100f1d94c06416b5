#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "imlab/matcore.hpp"
#include "imlab/protocols.hpp"

namespace imlab {

// Aggregated result of one lemma suite. A margin is the slack of the checked
// inequality (>= 0 means it holds); violations count margins below -1e-8.
struct LemmaReport {
  std::string lemma_id;
  int samples = 0;
  int violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string config;

  void record(double margin, double slack_tol = 1e-8) {
    ++samples;
    worst_margin = std::min(worst_margin, margin);
    if (margin < -slack_tol) ++violations;
  }
};

// eta(x) from the continuity bound: x - x*log2(x) for x <= 1/e, x + 1/e above.
double fannes_eta(double x);

// margin of |S(rho) - S(sigma)| <= eta(||rho-sigma||_1) * log2(d)
double check_fannes(const DensityMatrix& rho, const DensityMatrix& sigma);

// Gentle measurement: exact gap, the sqrt-form bound, and the literal
// linear-form value 2*sqrt(2)*eps (diagnostic; violated for small eps).
struct GentleCheck {
  double epsilon;       // 1 - tr(rho X)
  double gap;           // ||rho - sqrt(X) rho sqrt(X)||_1
  double bound_sqrt;    // 2*sqrt(2*eps)
  double bound_linear;  // 2*sqrt(2)*eps
  double margin() const { return bound_sqrt - gap; }
  bool literal_holds() const { return gap <= bound_linear + 1e-8; }
};
GentleCheck check_gentle(const DensityMatrix& rho, const Mat& x);

// margin of S(Theta(rho)) >= S(rho)
double check_l4(const DensityMatrix& rho);

// margin of |S(Theta(O rho O^T)) - S(Theta(rho))| <= tol (two-sided, so the
// margin is tol-free: returns -|difference|+0 shifted; we report -|diff|)
double check_l6(const DensityMatrix& rho, const RealMat& covariant_o);

struct ChernoffReport {
  Eigen::Index d = 0;
  std::uint64_t num_samples = 0;  // N per batch
  double mu = 0.0;                // min-eigenvalue floor of the mean
  double epsilon = 0.0;
  int trials = 0;
  int empirical_failures = 0;
  double bound = 0.0;  // 2 d exp(-N mu eps^2 / 2)
  std::string generator;
};

enum class ChernoffGenerator { RandomProjector, HaarConjugation };

ChernoffReport chernoff_experiment(Eigen::Index d, std::uint64_t num_samples, int trials,
                                   double epsilon, ChernoffGenerator generator, Seed seed);

// Entropy accounting of the converse construction: the tagged superposition
// purification and the chain log2 N >= S(E) >= S(EZ^n) - S(Z^n) = S(out) - nS(rho).
struct ConverseReport {
  double log2_n = 0.0;
  double s_e = 0.0;
  double s_ez = 0.0;
  double s_z = 0.0;
  double s_a = 0.0;
  double s_output = 0.0;  // S(apply_ensemble(rho^n))
  double n_s_rho = 0.0;
  double worst_slack = 0.0;  // most negative slack over all chain assertions
  bool all_ok = false;
};
ConverseReport converse_chain(const DensityMatrix& rho, const UnitaryEnsemble& ens, int n);

// margins of S(Theta(avg)) >= mean_k S(Theta(O_k rho^n O_k^T)) >= S(Theta(rho^n))
struct ConcavityCheck {
  double margin_concavity;
  double margin_invariance;
};
ConcavityCheck concavity_step_check(const DensityMatrix& rho, const UnitaryEnsemble& ens, int n);

}  // namespace imlab
