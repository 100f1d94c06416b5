#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "imlab/errors.hpp"
#include "imlab/seed.hpp"

namespace imlab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using RealMat = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;

// Tolerances used throughout the matrix kernel.
inline constexpr double kHermTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEigClip = 1e-12;  // eigenvalues below this count as zero

// Dimension cap for dense eigendecompositions; override with IMLAB_DIM_CAP.
std::size_t dimension_cap();
void require_within_cap(std::size_t dim);

// Hermitian PSD unit-trace matrix in the fixed reference basis.
class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity; throws InvalidStateError.
  explicit DensityMatrix(Mat m);

  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  static DensityMatrix maximally_mixed(Eigen::Index d);
  static DensityMatrix diagonal(const std::vector<double>& probs);
  static DensityMatrix pure(const Vec& amplitudes);
  // (|0> + i|1>)/sqrt(2), the maximally imaginary qubit state.
  static DensityMatrix plus_i();

 private:
  Mat m_;
};

// Unit vector, amplitudes in the reference basis.
struct PureState {
  Vec amplitudes;

  explicit PureState(Vec amps);
  Eigen::Index dim() const { return amplitudes.rows(); }
  DensityMatrix projector() const;
};

// Eigenvalues sorted descending; columns of `vectors` follow the same order
// with a deterministic phase fix (largest-magnitude component real positive).
struct EigenSystem {
  Eigen::VectorXd values;
  Mat vectors;
};

EigenSystem eig_hermitian(const Mat& hermitian);

bool is_hermitian(const Mat& m, double tol = kHermTol);

// Entropies in bits.
double von_neumann_entropy(const DensityMatrix& rho);

// D(rho||sigma) in bits; +infinity when supp(rho) is not inside supp(sigma).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

double trace_norm(const Mat& m);

Mat kron(const Mat& a, const Mat& b);
DensityMatrix tensor_power(const DensityMatrix& rho, int n);
Mat matrix_power_kron(const Mat& m, int n);

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<std::size_t>& keep);
Mat partial_trace(const Mat& state, const std::vector<Eigen::Index>& dims,
                  const std::vector<std::size_t>& keep);

// |psi>_{AZ} = sum_i sqrt(p_i) |v_i>_A |i>_Z with dim(Z) = rank(rho).
PureState purify(const DensityMatrix& rho);

// Hilbert-Schmidt random state via the complex Ginibre ensemble.
DensityMatrix random_density(Eigen::Index d, Seed seed);

// Haar-distributed real orthogonal matrix (QR with R-diagonal sign fix).
RealMat haar_orthogonal(Eigen::Index d, Seed seed);
RealMat haar_orthogonal(Eigen::Index d, Rng& rng);

}  // namespace imlab
