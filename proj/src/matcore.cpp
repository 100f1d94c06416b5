#include "imlab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace imlab {

namespace {

double log2c(double x) { return std::log2(x); }

}  // namespace

std::size_t dimension_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("IMLAB_DIM_CAP")) {
      const long v = std::atol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(4096);
  }();
  return cap;
}

void require_within_cap(std::size_t dim) {
  if (dim > dimension_cap()) {
    throw ResourceLimitError("dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(dimension_cap()));
  }
}

bool is_hermitian(const Mat& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw ShapeError("density matrix must be square");
  }
  if (!m_.allFinite()) {
    throw InvalidStateError("density matrix has non-finite entries");
  }
  if (!is_hermitian(m_, kHermTol)) {
    throw InvalidStateError("density matrix not Hermitian within 1e-10");
  }
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kTraceTol) {
    throw InvalidStateError("density matrix trace differs from 1 beyond 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InvalidStateError("density matrix has eigenvalue below -1e-10");
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index d) {
  if (d < 1) throw InvalidInputError("dimension must be positive");
  return DensityMatrix(Mat::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  if (probs.empty()) throw InvalidInputError("empty probability vector");
  Mat m = Mat::Zero(static_cast<Eigen::Index>(probs.size()),
                    static_cast<Eigen::Index>(probs.size()));
  for (std::size_t i = 0; i < probs.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probs[i];
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vec& amplitudes) {
  return PureState(amplitudes).projector();
}

DensityMatrix DensityMatrix::plus_i() {
  Vec psi(2);
  psi << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  return pure(psi);
}

PureState::PureState(Vec amps) : amplitudes(std::move(amps)) {
  if (amplitudes.rows() < 1) throw InvalidInputError("empty state vector");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12) {
    throw InvalidStateError("state vector norm differs from 1 beyond 1e-12");
  }
}

DensityMatrix PureState::projector() const {
  return DensityMatrix(amplitudes * amplitudes.adjoint());
}

EigenSystem eig_hermitian(const Mat& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw ShapeError("eigendecomposition requires a square matrix");
  }
  if (!is_hermitian(hermitian, kHermTol)) {
    throw InvalidStateError("matrix not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian);
  const Eigen::Index d = hermitian.rows();

  EigenSystem sys;
  sys.values.resize(d);
  sys.vectors.resize(d, d);
  // Eigen returns ascending order; flip to descending.
  for (Eigen::Index i = 0; i < d; ++i) {
    sys.values(i) = es.eigenvalues()(d - 1 - i);
    sys.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  // Phase convention: largest-magnitude component real positive.
  for (Eigen::Index i = 0; i < d; ++i) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < d; ++j) {
      const double a = std::abs(sys.vectors(j, i));
      if (a > best + 1e-14) {
        best = a;
        imax = j;
      }
    }
    const Complex pivot = sys.vectors(imax, i);
    if (std::abs(pivot) > 0.0) {
      sys.vectors.col(i) *= std::conj(pivot) / std::abs(pivot);
    }
  }
  // Lexicographic order inside degenerate clusters keeps outputs reproducible.
  auto lex_less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index j = 0; j < d; ++j) {
      const Complex& x = sys.vectors(j, a);
      const Complex& y = sys.vectors(j, b);
      if (std::abs(x.real() - y.real()) > 1e-12) return x.real() < y.real();
      if (std::abs(x.imag() - y.imag()) > 1e-12) return x.imag() < y.imag();
    }
    return false;
  };
  Eigen::Index start = 0;
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && std::abs(sys.values(end) - sys.values(start)) <= 1e-12) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(end - start));
      std::iota(idx.begin(), idx.end(), start);
      std::sort(idx.begin(), idx.end(), lex_less);
      Mat block(d, end - start);
      for (Eigen::Index k = 0; k < end - start; ++k) {
        block.col(k) = sys.vectors.col(idx[static_cast<std::size_t>(k)]);
      }
      sys.vectors.middleCols(start, end - start) = block;
    }
    start = end;
  }
  return sys;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().rows(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > kEigClip) s -= lam * log2c(lam);
  }
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ShapeError("relative entropy requires equal dimensions");
  }
  const EigenSystem er = eig_hermitian(rho.mat());
  const EigenSystem es = eig_hermitian(sigma.mat());
  const Eigen::Index d = rho.dim();

  double tr_rho_log_rho = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam = er.values(i);
    if (lam > kEigClip) tr_rho_log_rho += lam * log2c(lam);
  }
  double tr_rho_log_sigma = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mu = es.values(j);
    const double overlap =
        std::real(Complex(es.vectors.col(j).adjoint() * rho.mat() * es.vectors.col(j)));
    if (mu > kEigClip) {
      tr_rho_log_sigma += overlap * log2c(mu);
    } else if (overlap > 1e-10) {
      // support violation: rho has weight outside supp(sigma)
      return std::numeric_limits<double>::infinity();
    }
  }
  return std::max(tr_rho_log_rho - tr_rho_log_sigma, -1e-9);
}

double trace_norm(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("trace norm requires a square matrix");
  if (is_hermitian(m, 1e-12)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues().sum();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat matrix_power_kron(const Mat& m, int n) {
  if (n < 1) throw InvalidInputError("tensor power requires n >= 1");
  Mat out = m;
  for (int k = 1; k < n; ++k) {
    require_within_cap(static_cast<std::size_t>(out.rows()) *
                       static_cast<std::size_t>(m.rows()));
    out = kron(out, m);
  }
  return out;
}

DensityMatrix tensor_power(const DensityMatrix& rho, int n) {
  return DensityMatrix(matrix_power_kron(rho.mat(), n));
}

Mat partial_trace(const Mat& state, const std::vector<Eigen::Index>& dims,
                  const std::vector<std::size_t>& keep) {
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d < 1) throw ShapeError("factor dimensions must be positive");
    total *= d;
  }
  if (total != state.rows() || state.rows() != state.cols()) {
    throw ShapeError("product of factor dimensions does not match state dimension");
  }
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw ShapeError("keep index out of range");
  }
  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!std::binary_search(kept.begin(), kept.end(), f)) traced.push_back(f);
  }

  Eigen::Index dim_keep = 1, dim_tr = 1;
  for (std::size_t f : kept) dim_keep *= dims[f];
  for (std::size_t f : traced) dim_tr *= dims[f];

  // strides of each factor in the lexicographic composite index
  std::vector<Eigen::Index> stride(dims.size());
  Eigen::Index s = 1;
  for (std::size_t f = dims.size(); f-- > 0;) {
    stride[f] = s;
    s *= dims[f];
  }

  auto composite = [&](Eigen::Index ik, Eigen::Index it) {
    Eigen::Index idx = 0;
    Eigen::Index rk = ik;
    for (std::size_t p = kept.size(); p-- > 0;) {
      const std::size_t f = kept[p];
      idx += (rk % dims[f]) * stride[f];
      rk /= dims[f];
    }
    Eigen::Index rt = it;
    for (std::size_t p = traced.size(); p-- > 0;) {
      const std::size_t f = traced[p];
      idx += (rt % dims[f]) * stride[f];
      rt /= dims[f];
    }
    return idx;
  };

  Mat out = Mat::Zero(dim_keep, dim_keep);
  for (Eigen::Index i = 0; i < dim_keep; ++i) {
    for (Eigen::Index j = 0; j < dim_keep; ++j) {
      Complex acc(0.0, 0.0);
      for (Eigen::Index t = 0; t < dim_tr; ++t) {
        acc += state(composite(i, t), composite(j, t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& state,
                            const std::vector<Eigen::Index>& dims,
                            const std::vector<std::size_t>& keep) {
  return DensityMatrix(partial_trace(state.mat(), dims, keep));
}

PureState purify(const DensityMatrix& rho) {
  const EigenSystem sys = eig_hermitian(rho.mat());
  const Eigen::Index d = rho.dim();
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (sys.values(i) > kEigClip) ++rank;
  }
  if (rank == 0) throw InvalidStateError("cannot purify a zero-rank state");
  Vec psi = Vec::Zero(d * rank);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const double amp = std::sqrt(sys.values(i));
    for (Eigen::Index a = 0; a < d; ++a) {
      psi(a * rank + i) = amp * sys.vectors(a, i);
    }
  }
  psi /= psi.norm();
  return PureState(std::move(psi));
}

DensityMatrix random_density(Eigen::Index d, Seed seed) {
  if (d < 1) throw InvalidInputError("dimension must be positive");
  Rng rng(seed);
  Mat g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      g(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Mat w = g * g.adjoint();
  w /= w.trace().real();
  w = (w + w.adjoint()) / 2.0;  // scrub roundoff asymmetry
  return DensityMatrix(std::move(w));
}

RealMat haar_orthogonal(Eigen::Index d, Seed seed) {
  Rng rng(seed);
  return haar_orthogonal(d, rng);
}

RealMat haar_orthogonal(Eigen::Index d, Rng& rng) {
  if (d < 1) throw InvalidInputError("dimension must be positive");
  RealMat g(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      g(i, j) = rng.gaussian();
    }
  }
  Eigen::HouseholderQR<RealMat> qr(g);
  RealMat q = qr.householderQ();
  const RealMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  return q;
}

}  // namespace imlab
