#include "imlab/verify.hpp"

#include <algorithm>
#include <cmath>

#include "imlab/imaginarity.hpp"

namespace imlab {

double fannes_eta(double x) {
  if (x < 0.0) throw DomainError("fannes_eta requires x >= 0");
  if (x == 0.0) return 0.0;
  if (x <= 1.0 / M_E) return x - x * std::log2(x);
  return x + 1.0 / M_E;
}

double check_fannes(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ShapeError("fannes check requires equal dimensions");
  const double eps = trace_norm(rho.mat() - sigma.mat());
  const double delta_s = std::abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma));
  return fannes_eta(eps) * std::log2(static_cast<double>(rho.dim())) - delta_s;
}

GentleCheck check_gentle(const DensityMatrix& rho, const Mat& x) {
  if (x.rows() != rho.dim() || x.cols() != rho.dim()) {
    throw ShapeError("measurement operator dimension mismatch");
  }
  if (!is_hermitian(x, kHermTol)) {
    throw InvalidInputError("measurement operator must be Hermitian");
  }
  const EigenSystem sys = eig_hermitian(x);
  if (sys.values.minCoeff() < -1e-10 || sys.values.maxCoeff() > 1.0 + 1e-10) {
    throw InvalidInputError("measurement operator spectrum outside [0, 1]");
  }
  Mat sqrt_x = Mat::Zero(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double lam = std::clamp(sys.values(i), 0.0, 1.0);
    sqrt_x += std::sqrt(lam) * (sys.vectors.col(i) * sys.vectors.col(i).adjoint());
  }
  GentleCheck out;
  out.epsilon = std::max(1.0 - std::real((rho.mat() * x).trace()), 0.0);
  out.gap = trace_norm(rho.mat() - sqrt_x * rho.mat() * sqrt_x);
  out.bound_sqrt = 2.0 * std::sqrt(2.0 * out.epsilon);
  out.bound_linear = 2.0 * std::sqrt(2.0) * out.epsilon;
  return out;
}

double check_l4(const DensityMatrix& rho) {
  return von_neumann_entropy(DensityMatrix(theta(rho.mat()))) - von_neumann_entropy(rho);
}

double check_l6(const DensityMatrix& rho, const RealMat& covariant_o) {
  if (covariant_o.rows() != rho.dim()) throw ShapeError("dimension mismatch");
  if (!is_covariant_unitary(covariant_o.cast<Complex>(), 1e-10)) {
    throw InvalidInputError("operator is not a covariant-free unitary");
  }
  const Mat rotated = covariant_o * rho.mat() * covariant_o.transpose();
  const double lhs = von_neumann_entropy(DensityMatrix(theta(rotated)));
  const double rhs = von_neumann_entropy(DensityMatrix(theta(rho.mat())));
  return -std::abs(lhs - rhs);
}

ChernoffReport chernoff_experiment(Eigen::Index d, std::uint64_t num_samples, int trials,
                                   double epsilon, ChernoffGenerator generator, Seed seed) {
  if (d < 1 || num_samples < 1 || trials < 1) {
    throw InvalidInputError("d, N and trials must be positive");
  }
  if (epsilon < 0.0 || epsilon > 1.0) throw InvalidInputError("epsilon must lie in [0, 1]");

  ChernoffReport report;
  report.d = d;
  report.num_samples = num_samples;
  report.epsilon = epsilon;
  report.trials = trials;

  Mat mean;
  RealMat haar_seed_op;  // HaarConjugation model only
  switch (generator) {
    case ChernoffGenerator::RandomProjector:
      // uniformly random rank-1 projectors, E = I/d
      report.generator = "projector";
      report.mu = 1.0 / static_cast<double>(d);
      mean = Mat::Identity(d, d) / static_cast<double>(d);
      break;
    case ChernoffGenerator::HaarConjugation: {
      // O S O^T with S = diag((i+1)/d); Haar average is tr(S)/d * I
      report.generator = "haar-psd";
      haar_seed_op = RealMat::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        haar_seed_op(i, i) = static_cast<double>(i + 1) / static_cast<double>(d);
      }
      report.mu = haar_seed_op.trace() / static_cast<double>(d);
      mean = Complex(report.mu, 0.0) * Mat::Identity(d, d);
      break;
    }
    default:
      throw ConfigError("unknown chernoff generator");
  }
  report.bound = 2.0 * static_cast<double>(d) *
                 std::exp(-static_cast<double>(num_samples) * report.mu * epsilon * epsilon / 2.0);

  for (int t = 0; t < trials; ++t) {
    Rng rng(seed.stream(static_cast<std::uint32_t>(t)));
    Mat avg = Mat::Zero(d, d);
    for (std::uint64_t i = 0; i < num_samples; ++i) {
      if (generator == ChernoffGenerator::RandomProjector) {
        Vec v(d);
        for (Eigen::Index j = 0; j < d; ++j) v(j) = Complex(rng.gaussian(), rng.gaussian());
        v /= v.norm();
        avg += v * v.adjoint();
      } else {
        const RealMat o = haar_orthogonal(d, rng);
        avg += (o * haar_seed_op * o.transpose()).cast<Complex>();
      }
    }
    avg /= static_cast<double>(num_samples);
    avg = (avg + avg.adjoint()) / 2.0;

    Eigen::SelfAdjointEigenSolver<Mat> lower(avg - (1.0 - epsilon) * mean, Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat> upper((1.0 + epsilon) * mean - avg, Eigen::EigenvaluesOnly);
    if (lower.eigenvalues().minCoeff() < -1e-10 || upper.eigenvalues().minCoeff() < -1e-10) {
      ++report.empirical_failures;
    }
  }
  return report;
}

ConverseReport converse_chain(const DensityMatrix& rho, const UnitaryEnsemble& ens, int n) {
  if (n < 1) throw InvalidInputError("n must be positive");
  if (ens.members.empty()) throw ConfigError("converse chain needs an explicit ensemble");
  const Eigen::Index d = rho.dim();

  const PureState psi = purify(rho);
  const Eigen::Index rank = psi.dim() / d;

  Eigen::Index dim_a = 1, dim_z = 1;
  for (int k = 0; k < n; ++k) {
    dim_a *= d;
    dim_z *= rank;
  }
  const auto num_members = static_cast<Eigen::Index>(ens.members.size());
  require_within_cap(static_cast<std::size_t>(num_members) * static_cast<std::size_t>(dim_a) *
                     static_cast<std::size_t>(dim_z));
  for (const auto& m : ens.members) {
    if (m.op.rows() != dim_a) throw ShapeError("ensemble member must act on the n-copy system");
  }

  // |psi^n> rearranged to A^n Z^n order, stored as a (dim_a x dim_z) matrix
  Mat psi_mat = Mat::Zero(dim_a, dim_z);
  for (Eigen::Index a = 0; a < dim_a; ++a) {
    for (Eigen::Index z = 0; z < dim_z; ++z) {
      Complex amp(1.0, 0.0);
      Eigen::Index ra = a, rz = z;
      // factor k amplitudes, least-significant index is copy n-1
      for (int k = 0; k < n; ++k) {
        const Eigen::Index ak = ra % d;
        const Eigen::Index zk = rz % rank;
        ra /= d;
        rz /= rank;
        amp *= psi.amplitudes(ak * rank + zk);
      }
      psi_mat(a, z) = amp;
    }
  }

  // |psi_bar> = sum_k sqrt(w_k) |k>_E (O_k (x) I_Z) |psi^n>
  Vec psi_bar = Vec::Zero(num_members * dim_a * dim_z);
  for (Eigen::Index k = 0; k < num_members; ++k) {
    const Mat rotated = ens.members[static_cast<std::size_t>(k)].op * psi_mat;
    const double w = std::sqrt(ens.members[static_cast<std::size_t>(k)].weight);
    for (Eigen::Index a = 0; a < dim_a; ++a) {
      for (Eigen::Index z = 0; z < dim_z; ++z) {
        psi_bar(k * dim_a * dim_z + a * dim_z + z) = w * rotated(a, z);
      }
    }
  }
  psi_bar /= psi_bar.norm();

  const Mat full = psi_bar * psi_bar.adjoint();
  const std::vector<Eigen::Index> dims{num_members, dim_a, dim_z};

  auto entropy_of = [&](const std::vector<std::size_t>& keep) {
    return von_neumann_entropy(DensityMatrix(partial_trace(full, dims, keep)));
  };

  ConverseReport rep;
  rep.log2_n = std::log2(static_cast<double>(num_members));
  rep.s_e = entropy_of({0});
  rep.s_ez = entropy_of({0, 2});
  rep.s_z = entropy_of({2});
  rep.s_a = entropy_of({1});
  rep.s_output = von_neumann_entropy(apply_ensemble(tensor_power(rho, n), ens));
  rep.n_s_rho = n * von_neumann_entropy(rho);

  const double slacks[] = {
      rep.log2_n - rep.s_e,
      rep.s_e - (rep.s_ez - rep.s_z),
      -std::abs(rep.s_ez - rep.s_a),
      -std::abs(rep.s_a - rep.s_output),
      -std::abs(rep.s_z - rep.n_s_rho),
      rep.log2_n - (rep.s_output - rep.n_s_rho),
  };
  rep.worst_slack = *std::min_element(std::begin(slacks), std::end(slacks));
  rep.all_ok = rep.worst_slack >= -1e-8;
  return rep;
}

ConcavityCheck concavity_step_check(const DensityMatrix& rho, const UnitaryEnsemble& ens, int n) {
  const DensityMatrix power = tensor_power(rho, n);
  const DensityMatrix avg = apply_ensemble(power, ens);
  double mean_term = 0.0;
  for (const auto& m : ens.members) {
    const Mat rotated = m.op * power.mat() * m.op.transpose();
    mean_term += m.weight * von_neumann_entropy(DensityMatrix(theta(rotated)));
  }
  const double lhs = von_neumann_entropy(DensityMatrix(theta(avg.mat())));
  const double base = von_neumann_entropy(DensityMatrix(theta(power.mat())));
  return ConcavityCheck{lhs - mean_term, mean_term - base};
}

}  // namespace imlab
