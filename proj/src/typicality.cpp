#include "imlab/typicality.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace imlab {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

double shannon_entropy(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void validate_probs(const std::vector<double>& probs) {
  if (probs.empty()) throw InvalidInputError("empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw InvalidInputError("negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInputError("probabilities must sum to 1");
}

// log2 of the sequence probability of a composition (k_0..k_{d-1});
// -inf when a zero-probability symbol appears.
double composition_log2_prob(const std::vector<int>& counts,
                             const std::vector<double>& probs) {
  double lp = 0.0;
  for (std::size_t s = 0; s < probs.size(); ++s) {
    if (counts[s] == 0) continue;
    if (probs[s] <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += counts[s] * std::log2(probs[s]);
  }
  return lp;
}

bool in_window(double log2_prob, double h, int n, double delta) {
  // 2^{-n(H+delta)} <= p <= 2^{-n(H-delta)}
  return log2_prob >= -n * (h + delta) - 1e-12 &&
         log2_prob <= -n * (h - delta) + 1e-12;
}

BigInt multinomial(int n, const std::vector<int>& counts) {
  BigInt result = 1;
  int filled = 0;
  for (int c : counts) {
    for (int j = 1; j <= c; ++j) {
      result *= (filled + j);
      result /= j;
    }
    filled += c;
  }
  return result;
}

BigRat rational_of_double(double x) {
  // doubles are dyadic rationals; this conversion is exact
  if (x == 0.0) return BigRat(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  const std::int64_t scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  BigRat r(scaled);
  const int shift = exp - 53;
  if (shift >= 0) {
    r *= BigRat(BigInt(1) << shift);
  } else {
    r /= BigRat(BigInt(1) << (-shift));
  }
  return r;
}

template <typename Visit>
void for_each_composition(int n, int d, std::vector<int>& counts, int sym, Visit&& visit) {
  if (sym == d - 1) {
    counts[static_cast<std::size_t>(sym)] = n;
    visit(counts);
    return;
  }
  for (int k = 0; k <= n; ++k) {
    counts[static_cast<std::size_t>(sym)] = k;
    for_each_composition(n - k, d, counts, sym + 1, visit);
  }
}

}  // namespace

bool is_typical(const std::vector<int>& seq, const std::vector<double>& probs,
                int n, double delta) {
  validate_probs(probs);
  if (static_cast<int>(seq.size()) != n) throw InvalidInputError("sequence length != n");
  if (delta <= 0.0) throw InvalidInputError("delta must be positive");
  std::vector<int> counts(probs.size(), 0);
  for (int s : seq) {
    if (s < 0 || s >= static_cast<int>(probs.size())) {
      throw InvalidInputError("sequence symbol out of range");
    }
    ++counts[static_cast<std::size_t>(s)];
  }
  const double lp = composition_log2_prob(counts, probs);
  if (!std::isfinite(lp)) return false;
  return in_window(lp, shannon_entropy(probs), n, delta);
}

TypicalSet typical_stats(const std::vector<double>& probs, int n, double delta) {
  validate_probs(probs);
  if (n < 1) throw InvalidInputError("n must be positive");
  if (delta <= 0.0) throw InvalidInputError("delta must be positive");
  const int d = static_cast<int>(probs.size());
  const double h = shannon_entropy(probs);

  std::vector<BigRat> prob_rat(probs.size());
  for (std::size_t s = 0; s < probs.size(); ++s) prob_rat[s] = rational_of_double(probs[s]);

  BigInt count = 0;
  BigRat mass = 0;
  std::vector<int> counts(probs.size(), 0);
  for_each_composition(n, d, counts, 0, [&](const std::vector<int>& c) {
    const double lp = composition_log2_prob(c, probs);
    if (!std::isfinite(lp) || !in_window(lp, h, n, delta)) return;
    const BigInt mult = multinomial(n, c);
    count += mult;
    BigRat p = 1;
    for (std::size_t s = 0; s < probs.size(); ++s) {
      for (int j = 0; j < c[s]; ++j) p *= prob_rat[s];
    }
    mass += BigRat(mult) * p;
  });

  TypicalSet set;
  set.probs = probs;
  set.n = n;
  set.delta = delta;
  set.member_count = count.str();
  set.mass = mass.convert_to<double>();
  return set;
}

TypicalProjector typical_projector(const DensityMatrix& rho, int n, double delta) {
  if (n < 1) throw InvalidInputError("n must be positive");
  if (delta <= 0.0) throw InvalidInputError("delta must be positive");
  const Eigen::Index d = rho.dim();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(d);
  require_within_cap(total);
  const Eigen::Index dn = static_cast<Eigen::Index>(total);

  const EigenSystem sys = eig_hermitian(rho.mat());
  std::vector<double> probs(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) probs[static_cast<std::size_t>(i)] = std::max(sys.values(i), 0.0);
  const double h = shannon_entropy(probs);

  TypicalProjector tp;
  tp.n = n;
  tp.delta = delta;
  tp.eigenbasis = sys.vectors;
  tp.projector = Mat::Zero(dn, dn);

  std::vector<int> seq(static_cast<std::size_t>(n), 0);
  for (Eigen::Index flat = 0; flat < dn; ++flat) {
    Eigen::Index rest = flat;
    double lp = 0.0;
    bool zero = false;
    for (int pos = n; pos-- > 0;) {
      const int s = static_cast<int>(rest % d);
      seq[static_cast<std::size_t>(pos)] = s;
      rest /= d;
      const double p = probs[static_cast<std::size_t>(s)];
      if (p <= kEigClip) {
        zero = true;
        break;
      }
      lp += std::log2(p);
    }
    if (zero || !in_window(lp, h, n, delta)) continue;

    // |e_{i1}> (x) ... (x) |e_{in}>
    Vec basis_vec = sys.vectors.col(seq[0]);
    for (int pos = 1; pos < n; ++pos) {
      Vec next(basis_vec.rows() * d);
      for (Eigen::Index a = 0; a < basis_vec.rows(); ++a) {
        next.segment(a * d, d) = basis_vec(a) * sys.vectors.col(seq[static_cast<std::size_t>(pos)]);
      }
      basis_vec.swap(next);
    }
    tp.projector += basis_vec * basis_vec.adjoint();
    tp.basis_indices.push_back(seq);
    ++tp.subspace_dim;
  }

  const Mat power = matrix_power_kron(rho.mat(), n);
  tp.mass = std::real((tp.projector * power).trace());
  const Mat& pi = tp.projector;
  tp.projector_real = tp.subspace_dim == 0 ||
                      (pi.imag().cwiseAbs().maxCoeff() <= 1e-10 &&
                       (pi - pi.transpose().eval()).cwiseAbs().maxCoeff() <= 1e-10);
  return tp;
}

GentleTruncation gentle_truncation_check(const DensityMatrix& rho, int n, double delta) {
  const TypicalProjector tp = typical_projector(rho, n, delta);
  const Mat power = matrix_power_kron(rho.mat(), n);
  GentleTruncation out;
  out.gap = trace_norm(power - tp.projector * power * tp.projector);
  out.bound = 2.0 * std::sqrt(2.0 * std::max(1.0 - tp.mass, 0.0));
  return out;
}

}  // namespace imlab
