#pragma once

#include <vector>

#include "imlab/verify.hpp"

namespace imlab {

// Randomized suites behind the `verify` command. Each suite draws its
// instances from per-sample derived streams, so reports are reproducible.

LemmaReport run_fannes_suite(int samples, const std::vector<int>& dims, Seed seed);
LemmaReport run_l4_suite(int samples, const std::vector<int>& dims, Seed seed);
LemmaReport run_l6_suite(int samples, const std::vector<int>& dims, Seed seed);
// REI minimizer identity rei(rho) == D(rho || Theta(rho))
LemmaReport run_minimizer_suite(int samples, const std::vector<int>& dims, Seed seed);
LemmaReport run_converse_suite(int samples, Seed seed);
LemmaReport run_concavity_suite(int samples, Seed seed);

// Gentle measurement across the qubit typicality grid. The sqrt-form bound is
// the pass/fail channel; the paper-literal linear bound is diagnostic only.
struct GentleSuiteReport {
  LemmaReport sqrt_form;
  int literal_violations = 0;
};
GentleSuiteReport run_gentle_suite(int n_max, const std::vector<double>& deltas, Seed seed);

// uniform-weight ensemble of `size` Haar-orthogonal members
UnitaryEnsemble random_covariant_ensemble(Eigen::Index dim, int size, Seed seed);

}  // namespace imlab
