#pragma once

#include <string>
#include <vector>

#include "imlab/matcore.hpp"

namespace imlab {

// Classical delta-typical set statistics. member_count is exact (computed by
// composition classes with big integers); mass is one float conversion of an
// exact rational accumulation over the dyadic input probabilities.
struct TypicalSet {
  std::vector<double> probs;
  int n = 0;
  double delta = 0.0;
  std::string member_count;  // exact decimal integer
  double mass = 0.0;
};

bool is_typical(const std::vector<int>& seq, const std::vector<double>& probs,
                int n, double delta);

TypicalSet typical_stats(const std::vector<double>& probs, int n, double delta);

// Operator-mode typical projector for rho^{(x) n}, built from rho's eigenbasis.
struct TypicalProjector {
  int n = 0;
  double delta = 0.0;
  std::vector<std::vector<int>> basis_indices;  // typical eigenvalue sequences
  Mat projector;                                // Pi, dimension d^n
  Eigen::Index subspace_dim = 0;                // D
  double mass = 0.0;                            // mu = tr[Pi rho^n Pi]
  Mat eigenbasis;                               // the d eigenvectors used
  bool projector_real = false;                  // Pi real in the reference basis
};

TypicalProjector typical_projector(const DensityMatrix& rho, int n, double delta);

// (exact trace-norm gap ||rho^n - Pi rho^n Pi||_1, bound 2*sqrt(2(1-mu))).
struct GentleTruncation {
  double gap = 0.0;
  double bound = 0.0;
};
GentleTruncation gentle_truncation_check(const DensityMatrix& rho, int n, double delta);

}  // namespace imlab
