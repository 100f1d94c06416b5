#include <doctest.h>

#include <cmath>

#include "imlab/imaginarity.hpp"
#include "imlab/matcore.hpp"

using namespace imlab;

namespace {

Mat pauli_y_state() {
  // |+i><+i| = 1/2 [[1, -i], [i, 1]]
  Mat m(2, 2);
  m << Complex(0.5, 0.0), Complex(0.0, -0.5), Complex(0.0, 0.5), Complex(0.5, 0.0);
  return m;
}

}  // namespace

TEST_CASE("von Neumann entropy golden values") {
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix(pauli_y_state())) == doctest::Approx(0.0).epsilon(1e-10));
  // closed form: 0.5*1 + 2*(0.25*2) = 1.5
  CHECK(von_neumann_entropy(DensityMatrix::diagonal({0.5, 0.25, 0.25})) ==
        doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("entropy rejects non-states") {
  Mat bad(2, 2);
  bad << Complex(0.5, 0.0), Complex(0.3, 0.1), Complex(0.3, 0.3), Complex(0.5, 0.0);
  CHECK_THROWS_AS(DensityMatrix{bad}, InvalidStateError);
}

TEST_CASE("relative entropy golden values") {
  const DensityMatrix rho = random_density(3, Seed{11, 0});
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-9));

  Vec zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  CHECK(relative_entropy(DensityMatrix::pure(zero), DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isinf(relative_entropy(DensityMatrix::pure(zero), DensityMatrix::pure(one))));
}

TEST_CASE("trace norm") {
  Mat d(2, 2);
  d << 1, 0, 0, -1;
  CHECK(trace_norm(d) == doctest::Approx(2.0));
  // (rho - rho^T)/2 for |+i><+i| has eigenvalues +-1/2
  const Mat m = pauli_y_state();
  CHECK(trace_norm((m - m.transpose().eval()) / 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_norm(Mat::Zero(2, 3)), ShapeError);
}

TEST_CASE("tensor power") {
  const DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  const DensityMatrix sq = tensor_power(rho, 2);
  CHECK(sq.mat()(0, 0).real() == doctest::Approx(0.5625));
  CHECK(sq.mat()(1, 1).real() == doctest::Approx(0.1875));
  CHECK(sq.mat()(3, 3).real() == doctest::Approx(0.0625));
  CHECK(tensor_power(rho, 1).mat().isApprox(rho.mat()));
  CHECK(tensor_power(DensityMatrix::maximally_mixed(2), 3)
            .mat()
            .isApprox(Mat::Identity(8, 8) / 8.0));
  CHECK_THROWS_AS(tensor_power(DensityMatrix::maximally_mixed(8), 5), ResourceLimitError);
}

TEST_CASE("partial trace") {
  const DensityMatrix a = random_density(2, Seed{5, 0});
  const DensityMatrix b = random_density(3, Seed{5, 1});
  const DensityMatrix ab{kron(a.mat(), b.mat())};
  CHECK(partial_trace(ab, {2, 3}, {0}).mat().isApprox(a.mat(), 1e-12));
  CHECK(partial_trace(ab, {2, 3}, {1}).mat().isApprox(b.mat(), 1e-12));

  Vec bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  CHECK(partial_trace(DensityMatrix::pure(bell), {2, 2}, {0})
            .mat()
            .isApprox(Mat::Identity(2, 2) / 2.0, 1e-12));

  // GHZ, keep first two qubits
  Vec ghz = Vec::Zero(8);
  ghz(0) = ghz(7) = 1 / std::sqrt(2.0);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = expect(3, 3) = 0.5;
  CHECK(partial_trace(DensityMatrix::pure(ghz), {2, 2, 2}, {0, 1}).mat().isApprox(expect, 1e-12));

  CHECK_THROWS_AS(partial_trace(ab, {2, 2}, std::vector<std::size_t>{0}), ShapeError);
}

TEST_CASE("purification round trip") {
  const DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  const PureState psi = purify(rho);
  CHECK(psi.dim() == 4);
  CHECK(std::abs(psi.amplitudes(0)) == doctest::Approx(std::sqrt(0.75)));
  CHECK(std::abs(psi.amplitudes(3)) == doctest::Approx(std::sqrt(0.25)));

  for (int d = 2; d <= 5; ++d) {
    const DensityMatrix r = random_density(d, Seed{77, static_cast<std::uint32_t>(d)});
    const PureState p = purify(r);
    const Eigen::Index rank = p.dim() / d;
    const DensityMatrix back =
        partial_trace(p.projector(), {static_cast<Eigen::Index>(d), rank}, {0});
    CHECK((back.mat() - r.mat()).cwiseAbs().maxCoeff() <= 1e-10);
  }

  // pure input: trivial environment
  Vec zero(2);
  zero << 1, 0;
  CHECK(purify(DensityMatrix::pure(zero)).dim() == 2);
}

TEST_CASE("random density determinism and invariants") {
  const DensityMatrix a = random_density(4, Seed{123, 7});
  const DensityMatrix b = random_density(4, Seed{123, 7});
  CHECK(a.mat() == b.mat());
  const DensityMatrix c = random_density(4, Seed{123, 8});
  CHECK(a.mat() != c.mat());
}

TEST_CASE("random density mean purity matches the Hilbert-Schmidt value") {
  // Monte Carlo oracle: E[tr rho^2] = 2d/(d^2+1) = 0.8 at d = 2
  double acc = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    const DensityMatrix rho = random_density(2, Seed{2024, static_cast<std::uint32_t>(i)});
    acc += std::real((rho.mat() * rho.mat()).trace());
  }
  CHECK(acc / samples == doctest::Approx(0.8).epsilon(0.0125));
}

TEST_CASE("haar orthogonal basics") {
  for (int d = 2; d <= 6; ++d) {
    const RealMat o = haar_orthogonal(d, Seed{9, static_cast<std::uint32_t>(d)});
    CHECK((o * o.transpose() - RealMat::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(std::abs(o.determinant()) - 1.0) <= 1e-10);
  }
}

TEST_CASE("haar orthogonal rotation angle is uniform") {
  // chi^2 over 16 bins at the 1% level (crit value 30.58 for 15 dof),
  // conditioning on the det=+1 component
  const int bins = 16;
  std::vector<int> counts(bins, 0);
  int total = 0;
  for (int i = 0; i < 20000; ++i) {
    const RealMat o = haar_orthogonal(2, Seed{31337, static_cast<std::uint32_t>(i)});
    if (o.determinant() < 0.0) continue;
    double angle = std::atan2(o(1, 0), o(0, 0));
    if (angle < 0.0) angle += 2.0 * M_PI;
    ++counts[static_cast<std::size_t>(angle / (2.0 * M_PI) * bins) % bins];
    ++total;
  }
  const double expected = static_cast<double>(total) / bins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 30.58);
}

TEST_CASE("entropy invariance under orthogonal conjugation") {
  for (int i = 0; i < 50; ++i) {
    const int d = 2 + i % 5;
    const Seed s{555, static_cast<std::uint32_t>(i)};
    const DensityMatrix rho = random_density(d, s.stream(0));
    const RealMat o = haar_orthogonal(d, s.stream(1));
    const DensityMatrix rotated{(o * rho.mat() * o.transpose()).eval()};
    CHECK(std::abs(von_neumann_entropy(rotated) - von_neumann_entropy(rho)) <= 1e-9);
  }
}

TEST_CASE("transpose preserves the spectrum") {
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density(2 + i % 5, Seed{556, static_cast<std::uint32_t>(i)});
    const EigenSystem a = eig_hermitian(rho.mat());
    const EigenSystem b = eig_hermitian(rho.mat().transpose().eval());
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("subadditivity on random bipartite states") {
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_density(6, Seed{557, static_cast<std::uint32_t>(i)});
    const double s_ab = von_neumann_entropy(rho);
    const double s_a = von_neumann_entropy(partial_trace(rho, {2, 3}, {0}));
    const double s_b = von_neumann_entropy(partial_trace(rho, {2, 3}, {1}));
    CHECK(s_ab <= s_a + s_b + 1e-9);
  }
}

TEST_CASE("theta is trace-norm contractive on Hermitian inputs") {
  for (int i = 0; i < 50; ++i) {
    const Seed s{558, static_cast<std::uint32_t>(i)};
    const DensityMatrix a = random_density(4, s.stream(0));
    const DensityMatrix b = random_density(4, s.stream(1));
    const Mat h = a.mat() - b.mat();
    CHECK(trace_norm(theta(h)) <= trace_norm(h) + 1e-10);
  }
}

TEST_CASE("deterministic eigenvector convention") {
  const DensityMatrix rho = random_density(5, Seed{42, 0});
  const EigenSystem a = eig_hermitian(rho.mat());
  const EigenSystem b = eig_hermitian(rho.mat());
  CHECK(a.vectors == b.vectors);
  // phase fix: largest component of each eigenvector is real positive
  for (Eigen::Index i = 0; i < 5; ++i) {
    Eigen::Index imax = 0;
    a.vectors.col(i).cwiseAbs().maxCoeff(&imax);
    CHECK(a.vectors(imax, i).imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.vectors(imax, i).real() > 0.0);
  }
}
