#pragma once

#include <vector>

#include "imlab/matcore.hpp"

namespace imlab {

// Transpose with respect to the fixed reference basis. On a composite
// dimension d^n this equals the tensor product of per-factor transposes.
Mat transpose_ref(const Mat& m);

// Theta(M) = (M + M^T)/2, the projection onto real symmetric matrices.
Mat theta(const Mat& m);

struct ReImParts {
  RealMat re;  // symmetric
  RealMat im;  // antisymmetric
};
ReImParts re_im_parts(const DensityMatrix& rho);

bool is_real_state(const DensityMatrix& rho, double tol);
bool is_real_operation(const std::vector<Mat>& kraus, double tol);
bool is_covariant_unitary(const Mat& u, double tol);

// Relative entropy of imaginarity: S(Theta(rho)) - S(rho), in bits.
double rei(const DensityMatrix& rho);

struct ReiSequence {
  std::string rho_label;
  struct Entry {
    int n;
    double value;     // I_r(rho^{(x) n})
    double per_copy;  // value / n
  };
  std::vector<Entry> values;
};
ReiSequence rei_sequence(const DensityMatrix& rho, int n_max,
                         const std::string& label = "");

// ||rho - Theta(rho)||_1; brackets the exact trace distance to the real set
// within a factor of 2.
double imag_distance(const DensityMatrix& rho);

// O A O^T = 0_{d-2r} (+) sum_k lambda_k [[0,1],[-1,0]], lambdas descending.
struct SkewCanonicalForm {
  RealMat orthogonal;           // the O above, rows are the new basis
  std::vector<double> lambdas;  // descending, all > 1e-10
  int block_count = 0;          // r
  Eigen::Index dim = 0;

  RealMat canonical() const;  // rebuild the block matrix from (lambdas, dim)
};
SkewCanonicalForm skew_canonical_form(const RealMat& antisymmetric);

}  // namespace imlab
