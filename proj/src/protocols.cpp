#include "imlab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imlab/imaginarity.hpp"

namespace imlab {

namespace {

RealMat pauli_factor(int digit) {
  RealMat m(2, 2);
  switch (digit) {
    case 0: m << 1, 0, 0, 1; break;        // I
    case 1: m << 0, 1, 1, 0; break;        // X
    case 2: m << 1, 0, 0, -1; break;       // Z
    default: m << 0, -1, 1, 0; break;      // XZ
  }
  return m;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// effective number of qubits for a dimension that must be a power of two
int qubits_for_dim(Eigen::Index dim) {
  int q = 0;
  Eigen::Index d = dim;
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++q;
  }
  if (d != 1) {
    throw InvalidInputError("real-pauli sampler requires a power-of-two dimension");
  }
  return q;
}

RealMat draw_member(const UnitaryEnsemble& sampler, Eigen::Index dim, Rng& rng) {
  switch (sampler.kind) {
    case EnsembleKind::RealPauli: {
      const int q = qubits_for_dim(dim);
      return real_pauli_member(q, rng.below(pow_u64(4, q)));
    }
    case EnsembleKind::HaarOrthogonal:
      return haar_orthogonal(dim, rng);
    case EnsembleKind::ExplicitList: {
      // weighted draw
      double u = rng.uniform();
      for (const auto& m : sampler.members) {
        if (m.op.rows() != dim) throw ShapeError("ensemble member dimension mismatch");
        u -= m.weight;
        if (u <= 0.0) return m.op;
      }
      return sampler.members.back().op;
    }
  }
  throw ConfigError("unknown ensemble kind");
}

std::uint64_t multiset_count(std::uint64_t g, std::uint64_t n) {
  // C(g+n-1, n), saturating
  long double r = 1.0L;
  for (std::uint64_t i = 0; i < n; ++i) {
    r *= static_cast<long double>(g + i) / static_cast<long double>(i + 1);
    if (r > 1e18L) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::optional<std::uint64_t> UnitaryEnsemble::group_size() const {
  switch (kind) {
    case EnsembleKind::ExplicitList:
      return members.size();
    case EnsembleKind::RealPauli:
      return pow_u64(4, n_qubits);
    case EnsembleKind::HaarOrthogonal:
      return std::nullopt;
  }
  return std::nullopt;
}

RealMat real_pauli_member(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1) throw InvalidInputError("n_qubits must be positive");
  // first factor = most significant base-4 digit
  std::vector<int> digits(static_cast<std::size_t>(n_qubits));
  for (int q = n_qubits; q-- > 0;) {
    digits[static_cast<std::size_t>(q)] = static_cast<int>(index % 4);
    index /= 4;
  }
  RealMat out = pauli_factor(digits[0]);
  for (int q = 1; q < n_qubits; ++q) {
    const RealMat f = pauli_factor(digits[static_cast<std::size_t>(q)]);
    RealMat next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
      }
    }
    out.swap(next);
  }
  return out;
}

UnitaryEnsemble qubit_z_twirl() {
  UnitaryEnsemble ens;
  ens.dim = 2;
  ens.members.push_back({0.5, pauli_factor(0)});
  ens.members.push_back({0.5, pauli_factor(2)});
  return ens;
}

UnitaryEnsemble full_qubit_twirl() {
  UnitaryEnsemble ens;
  ens.dim = 2;
  for (int k = 0; k < 4; ++k) ens.members.push_back({0.25, pauli_factor(k)});
  return ens;
}

UnitaryEnsemble real_pauli_group(int n_qubits) {
  if (n_qubits < 1) throw InvalidInputError("n_qubits must be positive");
  require_within_cap(pow_u64(2, n_qubits));
  const std::uint64_t size = pow_u64(4, n_qubits);
  UnitaryEnsemble ens;
  ens.dim = static_cast<Eigen::Index>(pow_u64(2, n_qubits));
  ens.n_qubits = n_qubits;
  const double w = 1.0 / static_cast<double>(size);
  for (std::uint64_t i = 0; i < size; ++i) {
    ens.members.push_back({w, real_pauli_member(n_qubits, i)});
  }
  return ens;
}

UnitaryEnsemble real_pauli_sampler(int n_qubits) {
  if (n_qubits < 1) throw InvalidInputError("n_qubits must be positive");
  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::RealPauli;
  ens.n_qubits = n_qubits;
  ens.dim = static_cast<Eigen::Index>(pow_u64(2, n_qubits));
  return ens;
}

UnitaryEnsemble haar_orthogonal_sampler(Eigen::Index d) {
  if (d < 1) throw InvalidInputError("dimension must be positive");
  UnitaryEnsemble ens;
  ens.kind = EnsembleKind::HaarOrthogonal;
  ens.dim = d;
  return ens;
}

UnitaryEnsemble exact_erasure_ensemble(const DensityMatrix& rho) {
  const ReImParts parts = re_im_parts(rho);
  const SkewCanonicalForm form = skew_canonical_form(parts.im);
  const Eigen::Index d = rho.dim();
  const Eigen::Index zero_dim = d - 2 * form.block_count;

  UnitaryEnsemble ens;
  ens.dim = d;
  const std::uint64_t count = pow_u64(2, form.block_count);
  const double w = 1.0 / static_cast<double>(count);
  for (std::uint64_t b = 0; b < count; ++b) {
    RealMat flips = RealMat::Identity(d, d);
    for (int k = 0; k < form.block_count; ++k) {
      if ((b >> k) & 1ull) {
        // sigma_z on block k negates its canonical 2x2 block
        flips(zero_dim + 2 * k + 1, zero_dim + 2 * k + 1) = -1.0;
      }
    }
    ens.members.push_back({w, form.orthogonal.transpose() * flips * form.orthogonal});
  }
  return ens;
}

DensityMatrix apply_ensemble(const DensityMatrix& rho, const UnitaryEnsemble& ens) {
  const UnitaryEnsemble* use = &ens;
  UnitaryEnsemble materialized;
  if (ens.kind == EnsembleKind::RealPauli && ens.members.empty()) {
    materialized = real_pauli_group(ens.n_qubits);
    use = &materialized;
  } else if (ens.kind == EnsembleKind::HaarOrthogonal) {
    throw ConfigError("Haar sampler has no finite member list; use sampled_twirl");
  }
  if (use->members.empty()) throw ConfigError("empty ensemble");
  Mat out = Mat::Zero(rho.dim(), rho.dim());
  for (const auto& m : use->members) {
    if (m.op.rows() != rho.dim()) throw ShapeError("ensemble member dimension mismatch");
    out += m.weight * (m.op * rho.mat() * m.op.transpose()).cast<Complex>();
  }
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

TwirlOutcome sampled_twirl(const DensityMatrix& rho, int n, std::uint64_t num_samples,
                           const UnitaryEnsemble& sampler, Seed seed, bool exhaustive) {
  if (n < 1) throw InvalidInputError("n must be positive");
  if (num_samples < 1 && !exhaustive) throw InvalidInputError("need at least one sample");
  const DensityMatrix power = tensor_power(rho, n);
  const Eigen::Index dn = power.dim();

  if (exhaustive) {
    if (sampler.kind == EnsembleKind::HaarOrthogonal) {
      throw ConfigError("exhaustive average undefined for the Haar sampler");
    }
    UnitaryEnsemble group = sampler.kind == EnsembleKind::RealPauli
                                ? real_pauli_group(qubits_for_dim(dn))
                                : sampler;
    const DensityMatrix avg = apply_ensemble(power, group);
    return TwirlOutcome{avg, imag_distance(avg)};
  }

  Rng rng(seed);
  Mat acc = Mat::Zero(dn, dn);
  for (std::uint64_t i = 0; i < num_samples; ++i) {
    const RealMat o = draw_member(sampler, dn, rng);
    acc += (o * power.mat() * o.transpose());
  }
  acc /= static_cast<double>(num_samples);
  acc = (acc + acc.adjoint()) / 2.0;
  DensityMatrix avg(std::move(acc));
  const double dist = imag_distance(avg);
  return TwirlOutcome{std::move(avg), dist};
}

namespace {

// quantile over `trials` independent sampled twirls
double quantile_distance(const DensityMatrix& rho, int n, std::uint64_t num_samples,
                         const UnitaryEnsemble& sampler, Seed seed,
                         const ThresholdOptions& opts) {
  std::vector<double> dists;
  dists.reserve(static_cast<std::size_t>(opts.trials));
  for (int t = 0; t < opts.trials; ++t) {
    dists.push_back(
        sampled_twirl(rho, n, num_samples, sampler, seed.stream(static_cast<std::uint32_t>(t)))
            .imag_distance);
  }
  std::sort(dists.begin(), dists.end());
  const int idx = std::clamp(
      static_cast<int>(std::ceil(opts.quantile * opts.trials)) - 1, 0, opts.trials - 1);
  return dists[static_cast<std::size_t>(idx)];
}

// Deterministic small-N search: all multisets of group members when that is
// affordable, otherwise the identity-anchored family {I,...,I,P}.
bool exhaustive_success(const DensityMatrix& power, const UnitaryEnsemble& sampler,
                        std::uint64_t num_samples, double epsilon) {
  const int q = sampler.kind == EnsembleKind::RealPauli ? qubits_for_dim(power.dim()) : 0;
  const std::uint64_t group = sampler.kind == EnsembleKind::RealPauli
                                  ? pow_u64(4, q)
                                  : sampler.members.size();
  auto member = [&](std::uint64_t i) -> RealMat {
    return sampler.kind == EnsembleKind::RealPauli ? real_pauli_member(q, i)
                                                   : sampler.members[i].op;
  };
  auto distance_of = [&](const std::vector<std::uint64_t>& picks) {
    Mat acc = Mat::Zero(power.dim(), power.dim());
    for (std::uint64_t i : picks) {
      const RealMat o = member(i);
      acc += o * power.mat() * o.transpose();
    }
    acc /= static_cast<double>(picks.size());
    return trace_norm(acc - theta(acc));
  };

  constexpr std::uint64_t kBudget = 20000;
  if (multiset_count(group, num_samples) <= kBudget) {
    std::vector<std::uint64_t> picks(num_samples, 0);
    while (true) {
      if (distance_of(picks) <= epsilon) return true;
      // next multiset (non-decreasing index tuples)
      std::size_t pos = picks.size();
      while (pos-- > 0) {
        if (picks[pos] + 1 < group) {
          const std::uint64_t v = picks[pos] + 1;
          for (std::size_t j = pos; j < picks.size(); ++j) picks[j] = v;
          break;
        }
        if (pos == 0) return false;
      }
    }
  }
  // identity-anchored fallback: N-1 identities plus one group member
  for (std::uint64_t i = 0; i < group; ++i) {
    std::vector<std::uint64_t> picks(num_samples, 0);
    picks.back() = i;
    if (distance_of(picks) <= epsilon) return true;
  }
  return false;
}

}  // namespace

ThresholdResult threshold_rate(const DensityMatrix& rho, int n, double epsilon,
                               const UnitaryEnsemble& sampler, Seed seed,
                               const ThresholdOptions& opts, const std::string& label) {
  if (epsilon <= 0.0 || epsilon >= 2.0) throw InvalidInputError("epsilon must lie in (0, 2)");
  if (n < 1) throw InvalidInputError("n must be positive");
  if (opts.trials < 1) throw InvalidInputError("trials must be positive");
  if (opts.quantile <= 0.0 || opts.quantile > 1.0) {
    throw InvalidInputError("quantile must lie in (0, 1]");
  }

  ThresholdResult result;
  result.state_label = label;
  result.n = n;
  result.epsilon = epsilon;
  result.trials = opts.trials;
  result.quantile = opts.quantile;
  result.seed = seed;

  const std::uint64_t bound = sampler.group_size().value_or(opts.max_samples);

  if (opts.exhaustive) {
    const DensityMatrix power = tensor_power(rho, n);
    if (sampler.kind == EnsembleKind::HaarOrthogonal) {
      throw ConfigError("exhaustive search needs a finite ensemble");
    }
    const std::uint64_t limit = std::min<std::uint64_t>(bound, 64);
    for (std::uint64_t num = 1; num <= limit; ++num) {
      if (exhaustive_success(power, sampler, num, epsilon)) {
        result.n_star = num;
        result.rate = std::log2(static_cast<double>(num)) / n;
        return result;
      }
    }
    result.n_star = bound;
    result.rate = std::log2(static_cast<double>(bound)) / n;
    result.saturated = true;
    return result;
  }

  auto success = [&](std::uint64_t num) {
    return quantile_distance(rho, n, num, sampler, seed, opts) <= epsilon;
  };

  // doubling phase
  std::uint64_t lo = 0, hi = 1;
  bool found = false;
  while (hi <= bound) {
    if (success(hi)) {
      found = true;
      break;
    }
    lo = hi;
    if (hi > bound / 2) break;
    hi *= 2;
  }
  if (!found) {
    if (hi < bound && success(bound)) {
      lo = hi;
      hi = bound;
      found = true;
    } else {
      result.n_star = bound;
      result.rate = std::log2(static_cast<double>(bound)) / n;
      result.saturated = true;
      return result;
    }
  }
  // bisection: success(hi), !success(lo) (lo == 0 means N=1 already succeeded)
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (success(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.n_star = hi;
  result.rate = std::log2(static_cast<double>(hi)) / n;
  return result;
}

std::uint64_t chernoff_sufficient_N(const DensityMatrix& rho, int n, double delta) {
  if (delta <= 0.0) throw InvalidInputError("delta must be positive");
  const double exponent = rei(tensor_power(rho, n)) + 3.0 * n * delta;
  return static_cast<std::uint64_t>(std::ceil(std::exp2(exponent)));
}

}  // namespace imlab
