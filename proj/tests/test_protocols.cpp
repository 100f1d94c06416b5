#include <doctest.h>

#include <cmath>

#include "imlab/imaginarity.hpp"
#include "imlab/protocols.hpp"

using namespace imlab;

TEST_CASE("qubit z twirl") {
  const UnitaryEnsemble ens = qubit_z_twirl();
  REQUIRE(ens.members.size() == 2);
  CHECK(apply_ensemble(DensityMatrix::plus_i(), ens).mat().isApprox(Mat::Identity(2, 2) / 2.0, 1e-14));
  const DensityMatrix diag = DensityMatrix::diagonal({0.7, 0.3});
  CHECK(apply_ensemble(diag, ens).mat().isApprox(diag.mat(), 1e-14));
  // |+><+| dephases to I/2
  Vec plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  CHECK(apply_ensemble(DensityMatrix::pure(plus), ens).mat().isApprox(Mat::Identity(2, 2) / 2.0, 1e-14));
}

TEST_CASE("full qubit twirl flattens every state") {
  const UnitaryEnsemble ens = full_qubit_twirl();
  REQUIRE(ens.members.size() == 4);
  for (const auto& m : ens.members) {
    CHECK(is_covariant_unitary(m.op.cast<Complex>(), 1e-10));
  }
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_density(2, Seed{10, static_cast<std::uint32_t>(i)});
    CHECK(trace_norm(apply_ensemble(rho, ens).mat() - Mat::Identity(2, 2) / 2.0) <= 1e-12);
  }
  CHECK(apply_ensemble(DensityMatrix::diagonal({0.7, 0.3}), ens)
            .mat()
            .isApprox(Mat::Identity(2, 2) / 2.0, 1e-14));
}

TEST_CASE("real pauli group") {
  const UnitaryEnsemble one = real_pauli_group(1);
  REQUIRE(one.members.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(one.members[k].op == full_qubit_twirl().members[k].op);
  }
  for (int n = 1; n <= 3; ++n) {
    const UnitaryEnsemble ens = real_pauli_group(n);
    CHECK(ens.members.size() == static_cast<std::size_t>(std::pow(4, n)));
    for (const auto& m : ens.members) {
      CHECK(is_covariant_unitary(m.op.cast<Complex>(), 1e-10));
    }
    const Eigen::Index dn = ens.dim;
    const DensityMatrix rho = random_density(dn, Seed{11, static_cast<std::uint32_t>(n)});
    CHECK(trace_norm(apply_ensemble(rho, ens).mat() -
                     Mat::Identity(dn, dn) / static_cast<double>(dn)) <= 1e-12);
  }
}

TEST_CASE("exact erasure ensemble") {
  SUBCASE("real state: identity only") {
    const UnitaryEnsemble ens = exact_erasure_ensemble(DensityMatrix::diagonal({0.6, 0.4}));
    CHECK(ens.members.size() == 1);
  }
  SUBCASE("plus-i reduces to a two-member twirl") {
    const DensityMatrix rho = DensityMatrix::plus_i();
    const UnitaryEnsemble ens = exact_erasure_ensemble(rho);
    REQUIRE(ens.members.size() == 2);
    const DensityMatrix out = apply_ensemble(rho, ens);
    CHECK(out.mat().isApprox(Mat::Identity(2, 2) / 2.0, 1e-10));
  }
  SUBCASE("random states d=2..6") {
    for (int d = 2; d <= 6; ++d) {
      for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho =
            random_density(d, Seed{12, static_cast<std::uint32_t>(100 * d + i)});
        const UnitaryEnsemble ens = exact_erasure_ensemble(rho);
        const int r = skew_canonical_form(re_im_parts(rho).im).block_count;
        CHECK(ens.members.size() == (1ull << r));
        CHECK(r <= d / 2);
        for (const auto& m : ens.members) {
          CHECK(is_covariant_unitary(m.op.cast<Complex>(), 1e-9));
        }
        CHECK(imag_distance(apply_ensemble(rho, ens)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("apply_ensemble is a channel") {
  const DensityMatrix rho = random_density(2, Seed{13, 0});
  UnitaryEnsemble singleton;
  singleton.dim = 2;
  singleton.members.push_back({1.0, RealMat::Identity(2, 2)});
  CHECK(apply_ensemble(rho, singleton).mat().isApprox(rho.mat()));
  // output of any ensemble passes the DensityMatrix invariants by construction
  const DensityMatrix out = apply_ensemble(rho, full_qubit_twirl());
  CHECK(std::abs(out.mat().trace().real() - 1.0) <= 1e-12);
  CHECK_THROWS_AS(apply_ensemble(DensityMatrix::maximally_mixed(3), full_qubit_twirl()),
                  ShapeError);
}

TEST_CASE("ensemble realness preservation") {
  const DensityMatrix sigma = DensityMatrix::diagonal({0.5, 0.3, 0.15, 0.05});
  for (const auto& ens : {real_pauli_group(2), exact_erasure_ensemble(random_density(4, Seed{14, 0}))}) {
    CHECK(is_real_state(apply_ensemble(sigma, ens), 1e-10));
  }
}

TEST_CASE("sampled twirl") {
  const DensityMatrix rho = DensityMatrix::plus_i();
  SUBCASE("exhaustive flag gives the exact flattening") {
    const TwirlOutcome out = sampled_twirl(rho, 2, 1, real_pauli_sampler(2), Seed{15, 0}, true);
    CHECK(out.imag_distance <= 1e-12);
    CHECK(out.state.mat().isApprox(Mat::Identity(4, 4) / 4.0, 1e-12));
  }
  SUBCASE("real input stays real for any sample count") {
    const DensityMatrix real_rho = DensityMatrix::diagonal({0.8, 0.2});
    for (std::uint64_t N : {1, 3, 7}) {
      CHECK(sampled_twirl(real_rho, 2, N, real_pauli_sampler(2), Seed{16, N != 1}).imag_distance <=
            1e-12);
    }
  }
  SUBCASE("deterministic per seed") {
    const TwirlOutcome a = sampled_twirl(rho, 2, 5, real_pauli_sampler(2), Seed{17, 3});
    const TwirlOutcome b = sampled_twirl(rho, 2, 5, real_pauli_sampler(2), Seed{17, 3});
    CHECK(a.state.mat() == b.state.mat());
    CHECK(a.imag_distance == b.imag_distance);
  }
  SUBCASE("haar sampler works on non-qubit dimensions") {
    const DensityMatrix r3 = random_density(3, Seed{18, 0});
    const TwirlOutcome out = sampled_twirl(r3, 1, 64, haar_orthogonal_sampler(3), Seed{18, 1});
    CHECK(out.imag_distance >= 0.0);
    CHECK(out.imag_distance < imag_distance(r3) + 1e-9);
  }
  SUBCASE("single identity draw cannot erase") {
    // N=1: distance of a single conjugation equals the single-copy distance
    const TwirlOutcome out = sampled_twirl(rho, 1, 1, real_pauli_sampler(1), Seed{19, 4});
    CHECK(out.imag_distance == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("threshold search") {
  const DensityMatrix rho = DensityMatrix::plus_i();
  SUBCASE("real state: one member suffices") {
    ThresholdOptions opts;
    opts.trials = 4;
    const ThresholdResult r = threshold_rate(DensityMatrix::diagonal({0.7, 0.3}), 2, 1e-9,
                                             real_pauli_sampler(2), Seed{20, 0}, opts);
    CHECK(r.n_star == 1);
    CHECK(r.rate == 0.0);
  }
  SUBCASE("exhaustive search on the maximally imaginary state") {
    ThresholdOptions opts;
    opts.exhaustive = true;
    for (int n = 1; n <= 3; ++n) {
      const ThresholdResult r =
          threshold_rate(rho, n, 1e-9, real_pauli_sampler(n), Seed{21, 0}, opts);
      CHECK(r.n_star == 2);  // N=1 cannot erase, the pair {I, Z^n} can
      CHECK(r.rate == doctest::Approx(1.0 / n));
      CHECK_FALSE(r.saturated);
    }
  }
  SUBCASE("determinism") {
    ThresholdOptions opts;
    opts.trials = 8;
    const ThresholdResult a = threshold_rate(rho, 1, 0.2, real_pauli_sampler(1), Seed{22, 0}, opts);
    const ThresholdResult b = threshold_rate(rho, 1, 0.2, real_pauli_sampler(1), Seed{22, 0}, opts);
    CHECK(a.n_star == b.n_star);
    CHECK(a.rate == b.rate);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS(threshold_rate(rho, 1, 2.5, real_pauli_sampler(1), Seed{23, 0}),
                    InvalidInputError);
    CHECK_THROWS_AS(threshold_rate(rho, 0, 0.1, real_pauli_sampler(1), Seed{23, 0}),
                    InvalidInputError);
  }
}

TEST_CASE("chernoff sufficient ensemble size") {
  // real state: I_r = 0, so N = ceil(2^{0.3 n})
  CHECK(chernoff_sufficient_N(DensityMatrix::diagonal({0.6, 0.4}), 2, 0.1) ==
        static_cast<std::uint64_t>(std::ceil(std::exp2(0.6))));
  CHECK(chernoff_sufficient_N(DensityMatrix::plus_i(), 2, 0.1) == 4);  // ceil(2^{1.6})
  // monotone in delta
  std::uint64_t prev = 0;
  for (double delta : {0.05, 0.1, 0.2, 0.4}) {
    const std::uint64_t n = chernoff_sufficient_N(DensityMatrix::plus_i(), 3, delta);
    CHECK(n >= prev);
    prev = n;
  }
}
