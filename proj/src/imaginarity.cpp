#include "imlab/imaginarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace imlab {

Mat transpose_ref(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("transpose requires a square matrix");
  return m.transpose();
}

Mat theta(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("theta requires a square matrix");
  return (m + m.transpose()) / 2.0;
}

ReImParts re_im_parts(const DensityMatrix& rho) {
  const Mat& m = rho.mat();
  const Mat re = (m + m.transpose()) / 2.0;
  const Mat im = (m - m.transpose()) / Complex(0.0, 2.0);
  return ReImParts{re.real(), im.real()};
}

bool is_real_state(const DensityMatrix& rho, double tol) {
  return trace_norm(rho.mat() - rho.mat().transpose().eval()) <= tol;
}

bool is_real_operation(const std::vector<Mat>& kraus, double tol) {
  if (kraus.empty()) return false;
  const Eigen::Index rows = kraus.front().rows();
  const Eigen::Index cols = kraus.front().cols();
  Mat completeness = Mat::Zero(cols, cols);
  for (const Mat& k : kraus) {
    if (k.rows() != rows || k.cols() != cols) {
      throw ShapeError("Kraus operators must share one shape");
    }
    if (k.imag().cwiseAbs().maxCoeff() > tol) return false;
    completeness += k.adjoint() * k;
  }
  return (completeness - Mat::Identity(cols, cols)).cwiseAbs().maxCoeff() <= tol;
}

bool is_covariant_unitary(const Mat& u, double tol) {
  if (u.rows() != u.cols()) throw ShapeError("unitary check requires a square matrix");
  if (u.imag().cwiseAbs().maxCoeff() > tol) return false;
  return (u * u.adjoint() - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

double rei(const DensityMatrix& rho) {
  const DensityMatrix flattened{theta(rho.mat())};
  const double value = von_neumann_entropy(flattened) - von_neumann_entropy(rho);
  return std::max(value, -1e-9);
}

ReiSequence rei_sequence(const DensityMatrix& rho, int n_max, const std::string& label) {
  if (n_max < 1) throw InvalidInputError("n_max must be positive");
  std::size_t dim = 1;
  for (int k = 0; k < n_max; ++k) dim *= static_cast<std::size_t>(rho.dim());
  require_within_cap(dim);

  ReiSequence seq;
  seq.rho_label = label;
  Mat power = rho.mat();
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) power = kron(power, rho.mat());
    const double value = rei(DensityMatrix(power));
    seq.values.push_back({n, value, value / n});
  }
  return seq;
}

double imag_distance(const DensityMatrix& rho) {
  return trace_norm(rho.mat() - theta(rho.mat()));
}

RealMat SkewCanonicalForm::canonical() const {
  RealMat c = RealMat::Zero(dim, dim);
  const Eigen::Index zero = dim - 2 * block_count;
  for (int k = 0; k < block_count; ++k) {
    const Eigen::Index off = zero + 2 * k;
    c(off, off + 1) = lambdas[static_cast<std::size_t>(k)];
    c(off + 1, off) = -lambdas[static_cast<std::size_t>(k)];
  }
  return c;
}

SkewCanonicalForm skew_canonical_form(const RealMat& a) {
  if (a.rows() != a.cols()) throw ShapeError("skew canonical form requires a square matrix");
  if ((a + a.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw InvalidInputError("matrix is not antisymmetric within 1e-10");
  }
  const Eigen::Index d = a.rows();
  constexpr double kZeroMode = 1e-10;

  // iA is Hermitian with spectrum {+-lambda_k, 0...}; eigenvectors of the
  // positive eigenvalues carry the 2x2 blocks.
  const Mat h = Complex(0.0, 1.0) * a.cast<Complex>();
  const EigenSystem sys = eig_hermitian(h);

  SkewCanonicalForm form;
  form.dim = d;
  std::vector<RealMat> pairs;  // d x 2 blocks (rows v^T then u^T)
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam = sys.values(i);
    if (lam <= kZeroMode) break;  // descending order, negatives follow zeros
    // w = x + iy with A x = lam y, A y = -lam x; |x| = |y| = 1/sqrt(2)
    const Eigen::VectorXd x = sys.vectors.col(i).real();
    const Eigen::VectorXd y = sys.vectors.col(i).imag();
    RealMat block(d, 2);
    block.col(0) = std::sqrt(2.0) * y;
    block.col(1) = std::sqrt(2.0) * x;
    form.lambdas.push_back(lam);
    pairs.push_back(std::move(block));
  }
  form.block_count = static_cast<int>(form.lambdas.size());
  const Eigen::Index zero_dim = d - 2 * form.block_count;

  form.orthogonal = RealMat::Zero(d, d);
  if (zero_dim > 0) {
    // kernel of A, orthonormalized
    Eigen::BDCSVD<RealMat> svd(a, Eigen::ComputeFullV);
    RealMat kernel(d, zero_dim);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < d && col < zero_dim; ++i) {
      if (svd.singularValues()(i) <= kZeroMode) {
        kernel.col(col++) = svd.matrixV().col(i);
      }
    }
    if (col != zero_dim) {
      throw InvalidInputError("kernel dimension mismatch in skew canonical form");
    }
    Eigen::HouseholderQR<RealMat> qr(kernel);
    const RealMat q = qr.householderQ() * RealMat::Identity(d, zero_dim);
    form.orthogonal.topRows(zero_dim) = q.transpose();
  }
  for (int k = 0; k < form.block_count; ++k) {
    form.orthogonal.row(zero_dim + 2 * k) = pairs[static_cast<std::size_t>(k)].col(0).transpose();
    form.orthogonal.row(zero_dim + 2 * k + 1) = pairs[static_cast<std::size_t>(k)].col(1).transpose();
  }
  return form;
}

}  // namespace imlab
