#include <doctest.h>

#include <cmath>

#include "imlab/imaginarity.hpp"
#include "imlab/typicality.hpp"

using namespace imlab;

namespace {

// exhaustive enumeration oracle for small alphabets
std::pair<long, double> enumerate_typical(const std::vector<double>& probs, int n, double delta) {
  const int d = static_cast<int>(probs.size());
  long total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  long count = 0;
  double mass = 0.0;
  for (long flat = 0; flat < total; ++flat) {
    std::vector<int> seq(static_cast<std::size_t>(n));
    long rest = flat;
    for (int i = 0; i < n; ++i) {
      seq[static_cast<std::size_t>(i)] = static_cast<int>(rest % d);
      rest /= d;
    }
    if (is_typical(seq, probs, n, delta)) {
      ++count;
      double p = 1.0;
      for (int s : seq) p *= probs[static_cast<std::size_t>(s)];
      mass += p;
    }
  }
  return {count, mass};
}

}  // namespace

TEST_CASE("is_typical basics") {
  // uniform distribution: every sequence is typical
  for (int flat = 0; flat < 8; ++flat) {
    std::vector<int> seq{flat & 1, (flat >> 1) & 1, (flat >> 2) & 1};
    CHECK(is_typical(seq, {0.5, 0.5}, 3, 0.05));
  }
  // deterministic distribution: only the all-0 sequence
  CHECK(is_typical({0, 0, 0}, {1.0, 0.0}, 3, 0.1));
  CHECK_FALSE(is_typical({0, 1, 0}, {1.0, 0.0}, 3, 0.1));

  // p=(0.75,0.25), n=4, delta=0.2: exactly the four single-'1' sequences
  int typical_count = 0;
  for (int flat = 0; flat < 16; ++flat) {
    std::vector<int> seq{flat & 1, (flat >> 1) & 1, (flat >> 2) & 1, (flat >> 3) & 1};
    const bool t = is_typical(seq, {0.75, 0.25}, 4, 0.2);
    const int ones = seq[0] + seq[1] + seq[2] + seq[3];
    CHECK(t == (ones == 1));
    if (t) ++typical_count;
  }
  CHECK(typical_count == 4);
}

TEST_CASE("typical_stats golden case") {
  const TypicalSet set = typical_stats({0.75, 0.25}, 4, 0.2);
  CHECK(set.member_count == "4");
  CHECK(set.mass == doctest::Approx(0.421875).epsilon(1e-15));
}

TEST_CASE("typical_stats matches enumeration oracle") {
  for (double delta : {0.1, 0.25, 0.5}) {
    for (int n = 1; n <= 8; ++n) {
      const std::vector<double> p{0.6, 0.4};
      const auto [count, mass] = enumerate_typical(p, n, delta);
      const TypicalSet set = typical_stats(p, n, delta);
      CHECK(set.member_count == std::to_string(count));
      CHECK(set.mass == doctest::Approx(mass).epsilon(1e-12));
    }
  }
  // ternary alphabet
  const auto [count3, mass3] = enumerate_typical({0.5, 0.3, 0.2}, 5, 0.3);
  const TypicalSet set3 = typical_stats({0.5, 0.3, 0.2}, 5, 0.3);
  CHECK(set3.member_count == std::to_string(count3));
  CHECK(set3.mass == doctest::Approx(mass3).epsilon(1e-12));
}

TEST_CASE("typical_stats uniform and large-n classical mode") {
  CHECK(typical_stats({0.5, 0.5}, 12, 0.1).mass == doctest::Approx(1.0));
  // frozen exact binomial tail sums for p=(0.9,0.1), delta=0.1
  const double m50 = typical_stats({0.9, 0.1}, 50, 0.1).mass;
  const double m100 = typical_stats({0.9, 0.1}, 100, 0.1).mass;
  const double m200 = typical_stats({0.9, 0.1}, 200, 0.1).mass;
  const double m400 = typical_stats({0.9, 0.1}, 400, 0.1).mass;
  CHECK(m50 == doctest::Approx(0.519932935850316).epsilon(1e-12));
  CHECK(m200 == doctest::Approx(0.876213272789492).epsilon(1e-12));
  // law of large numbers: mass grows toward 1
  CHECK(m50 <= m100);
  CHECK(m100 <= m200);
  CHECK(m200 <= m400);
  CHECK(m400 >= 0.95);
  // member_count <= 2^{n(H+delta)}
  const double h = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
  CHECK(std::stod(typical_stats({0.9, 0.1}, 50, 0.1).member_count) <=
        std::exp2(50 * (h + 0.1)) * (1 + 1e-9));
}

TEST_CASE("typical projector golden cases") {
  SUBCASE("maximally mixed: full space") {
    const TypicalProjector tp = typical_projector(DensityMatrix::maximally_mixed(2), 3, 0.1);
    CHECK(tp.subspace_dim == 8);
    CHECK(tp.projector.isApprox(Mat::Identity(8, 8), 1e-12));
    CHECK(tp.mass == doctest::Approx(1.0));
    CHECK(tp.projector_real);
  }
  SUBCASE("diag(0.75,0.25), n=4, delta=0.2 matches the classical oracle") {
    const TypicalProjector tp = typical_projector(DensityMatrix::diagonal({0.75, 0.25}), 4, 0.2);
    CHECK(tp.subspace_dim == 4);
    CHECK(tp.mass == doctest::Approx(0.421875).epsilon(1e-12));
    CHECK(tp.projector_real);
  }
  SUBCASE("plus-i, n=2: rank one and not real") {
    const TypicalProjector tp = typical_projector(DensityMatrix::plus_i(), 2, 0.1);
    CHECK(tp.subspace_dim == 1);
    CHECK_FALSE(tp.projector_real);
  }
}

TEST_CASE("typical projector invariants") {
  for (int i = 0; i < 6; ++i) {
    const DensityMatrix rho = random_density(2, Seed{99, static_cast<std::uint32_t>(i)});
    const int n = 3 + i % 3;
    const double delta = 0.15 + 0.1 * (i % 2);
    const TypicalProjector tp = typical_projector(rho, n, delta);
    const Mat& pi = tp.projector;
    CHECK((pi * pi - pi).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    const double s = von_neumann_entropy(rho);
    CHECK(static_cast<double>(tp.subspace_dim) <= std::exp2(n * (s + delta)) * (1 + 1e-9));
    // operator bound 2^{n(S-delta)} Pi rho^n Pi <= Pi
    const Mat power = matrix_power_kron(rho.mat(), n);
    const Mat gap = pi - std::exp2(n * (s - delta)) * pi * power * pi;
    Eigen::SelfAdjointEigenSolver<Mat> es(gap, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("classical and operator modes agree on diagonal states") {
  for (int n = 2; n <= 6; ++n) {
    const TypicalSet set = typical_stats({0.8, 0.2}, n, 0.25);
    const TypicalProjector tp = typical_projector(DensityMatrix::diagonal({0.8, 0.2}), n, 0.25);
    CHECK(std::to_string(tp.subspace_dim) == set.member_count);
    CHECK(tp.mass == doctest::Approx(set.mass).epsilon(1e-12));
  }
}

TEST_CASE("gentle truncation bound") {
  SUBCASE("maximally mixed: zero gap") {
    const GentleTruncation g = gentle_truncation_check(DensityMatrix::maximally_mixed(2), 3, 0.1);
    CHECK(g.gap <= 1e-12);
  }
  SUBCASE("golden diagonal case") {
    const GentleTruncation g =
        gentle_truncation_check(DensityMatrix::diagonal({0.75, 0.25}), 4, 0.2);
    CHECK(g.bound == doctest::Approx(2.0 * std::sqrt(2.0 * 0.578125)).epsilon(1e-12));
    CHECK(g.gap <= g.bound);
  }
  SUBCASE("random full-rank states") {
    for (int i = 0; i < 5; ++i) {
      const DensityMatrix rho = random_density(2, Seed{123, static_cast<std::uint32_t>(i)});
      const GentleTruncation g = gentle_truncation_check(rho, 6, 0.3);
      CHECK(g.gap <= g.bound + 1e-10);
    }
  }
}

TEST_CASE("direct-part minimum-eigenvalue bound") {
  // D'_{n,d} * mu / D >= (1-eps) 2^{-(I_r(rho^n)+2n delta)} whenever mu >= 1-eps
  for (int i = 0; i < 5; ++i) {
    const DensityMatrix rho = random_density(2, Seed{321, static_cast<std::uint32_t>(i)});
    const int n = 5;
    const double delta = 0.25;
    const TypicalProjector tp = typical_projector(rho, n, delta);
    if (tp.subspace_dim == 0) {
      CHECK(tp.mass == 0.0);  // empty typical set: the bound is vacuous
      continue;
    }
    const double eps = 1.0 - tp.mass;
    const double s = von_neumann_entropy(rho);
    const double lhs = std::exp2(n * (s - delta)) * tp.mass / tp.subspace_dim;
    const double ir = rei(tensor_power(rho, n));
    const double rhs = (1.0 - eps) * std::exp2(-(ir + 2.0 * n * delta));
    CHECK(lhs >= rhs * (1 - 1e-9));
  }
}

TEST_CASE("typicality input validation") {
  CHECK_THROWS_AS(typical_stats({0.5, 0.6}, 4, 0.1), InvalidInputError);
  CHECK_THROWS_AS(typical_stats({0.5, 0.5}, 4, -0.1), InvalidInputError);
  CHECK_THROWS_AS(is_typical({0, 1}, {0.5, 0.5}, 3, 0.1), InvalidInputError);
  CHECK_THROWS_AS(typical_projector(DensityMatrix::maximally_mixed(8), 5, 0.1),
                  ResourceLimitError);
}
