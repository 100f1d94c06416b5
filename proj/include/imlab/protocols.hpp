#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "imlab/matcore.hpp"

namespace imlab {

enum class EnsembleKind { ExplicitList, RealPauli, HaarOrthogonal };

// Finite weighted list of covariant-free (real orthogonal) unitaries, or a
// named sampler. Samplers materialize members on demand.
struct UnitaryEnsemble {
  EnsembleKind kind = EnsembleKind::ExplicitList;
  struct Member {
    double weight;
    RealMat op;
  };
  std::vector<Member> members;  // explicit kind
  int n_qubits = 0;             // real-pauli kind
  Eigen::Index dim = 0;         // haar kind (and cached for the others)

  // Finite group size for samplers that have one (4^n for real-pauli);
  // nullopt for continuous ensembles.
  std::optional<std::uint64_t> group_size() const;
};

UnitaryEnsemble qubit_z_twirl();
UnitaryEnsemble full_qubit_twirl();
UnitaryEnsemble real_pauli_group(int n_qubits);
UnitaryEnsemble real_pauli_sampler(int n_qubits);
UnitaryEnsemble haar_orthogonal_sampler(Eigen::Index d);

// Tensor product of {I, X, Z, XZ} selected by the base-4 digits of `index`.
RealMat real_pauli_member(int n_qubits, std::uint64_t index);

// 2^r sign-flip conjugations that erase Im(rho) exactly.
UnitaryEnsemble exact_erasure_ensemble(const DensityMatrix& rho);

DensityMatrix apply_ensemble(const DensityMatrix& rho, const UnitaryEnsemble& ens);

// N-sample uniform average of random conjugations of rho^{(x) n}.
struct TwirlOutcome {
  DensityMatrix state;
  double imag_distance;
};
TwirlOutcome sampled_twirl(const DensityMatrix& rho, int n, std::uint64_t num_samples,
                           const UnitaryEnsemble& sampler, Seed seed,
                           bool exhaustive = false);

struct ThresholdResult {
  std::string state_label;
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t n_star = 1;
  double rate = 0.0;
  int trials = 0;
  double quantile = 0.5;
  bool saturated = false;
  Seed seed;
};

struct ThresholdOptions {
  int trials = 32;
  double quantile = 0.5;
  // Exhaustive mode searches small-N deterministic multisets of group members
  // instead of the sampled quantile criterion.
  bool exhaustive = false;
  std::uint64_t max_samples = 1ull << 16;  // search ceiling for continuous samplers
};

ThresholdResult threshold_rate(const DensityMatrix& rho, int n, double epsilon,
                               const UnitaryEnsemble& sampler, Seed seed,
                               const ThresholdOptions& opts = {},
                               const std::string& label = "");

// ceil(2^{I_r(rho^{(x) n}) + 3 n delta}), the ensemble size the operator
// Chernoff argument asks for.
std::uint64_t chernoff_sufficient_N(const DensityMatrix& rho, int n, double delta);

}  // namespace imlab
