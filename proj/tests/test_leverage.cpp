#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "actkrr/leverage.hpp"
#include "actkrr/rng.hpp"
#include "actkrr/statdim.hpp"

using namespace actkrr;

namespace {

Eigen::MatrixXd randn(rng::SplitMix& gen, int rows, int cols) {
  Eigen::MatrixXd A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = gen.normal();
  return A;
}

Eigen::VectorXd randn_vec(rng::SplitMix& gen, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gen.normal();
  return v;
}

}  // namespace

TEST_CASE("identity leverage scores") {
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  const Eigen::VectorXd tau = ridge_leverage(I, 1.0);
  CHECK(tau(0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(tau(1) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("scores vanish as epsilon grows") {
  rng::SplitMix gen(51);
  const Eigen::MatrixXd A = randn(gen, 10, 4);
  CHECK(ridge_leverage(A, 1e12).maxCoeff() < 1e-9);
}

TEST_CASE("scores lie in [0,1] and sum to the spectral statdim") {
  rng::SplitMix gen(52);
  for (int rep = 0; rep < 6; ++rep) {
    const Eigen::MatrixXd A = randn(gen, 20, 5);
    const double eps = std::exp(gen.uniform(std::log(1e-2), std::log(1e2)));
    const Eigen::VectorXd tau = ridge_leverage(A, eps);
    CHECK(tau.minCoeff() >= 0.0);
    CHECK(tau.maxCoeff() <= 1.0 + 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A,
                                                      Eigen::EigenvaluesOnly);
    CHECK(tau.sum() ==
          doctest::Approx(statdim_matrix(es.eigenvalues(), eps)).epsilon(1e-8));
  }
}

TEST_CASE("closed form equals the variational maximum") {
  rng::SplitMix gen(53);
  const Eigen::MatrixXd A = randn(gen, 20, 5);
  const double eps = 0.7;
  const Eigen::VectorXd tau = ridge_leverage(A, eps);
  const Eigen::MatrixXd G =
      A.transpose() * A + eps * Eigen::MatrixXd::Identity(5, 5);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd astar = ldlt.solve(A.row(i).transpose());
    const Eigen::VectorXd Aa = A * astar;
    const double at_star =
        Aa(i) * Aa(i) / (Aa.squaredNorm() + eps * astar.squaredNorm());
    CHECK(std::fabs(at_star - tau(i)) <= 1e-8);
  }
  for (int rep = 0; rep < 10000; ++rep) {
    const Eigen::VectorXd a = randn_vec(gen, 5);
    const Eigen::VectorXd Aa = A * a;
    const double denom = Aa.squaredNorm() + eps * a.squaredNorm();
    for (int i = 0; i < 20; i += 7)
      CHECK(Aa(i) * Aa(i) / denom <= tau(i) + 1e-8);
  }
}

TEST_CASE("rank-deficient matrix is rejected at eps = 0") {
  rng::SplitMix gen(54);
  Eigen::MatrixXd A = randn(gen, 20, 5);
  A.col(4) = A.col(0);  // dependent columns
  CHECK_THROWS_AS((void)ridge_leverage(A, 0.0), std::invalid_argument);
  CHECK_NOTHROW((void)ridge_leverage(A, 1e-3));
}

TEST_CASE("pairwise scores for a single identity design") {
  DesignSet ds;
  ds.designs = {Eigen::MatrixXd::Identity(2, 2)};
  ds.target = Eigen::VectorXd::Zero(2);
  ds.epsilon = 1.0;
  const Eigen::VectorXd tau = pairwise_scores(ds);
  // [I I] has row scores 2/3 at eps = 1
  CHECK(tau(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(tau(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("identical designs reduce to the single concatenated score") {
  rng::SplitMix gen(55);
  const Eigen::MatrixXd A = randn(gen, 15, 4);
  DesignSet one, two;
  one.designs = {A};
  two.designs = {A, A};
  one.target = two.target = Eigen::VectorXd::Zero(15);
  one.epsilon = two.epsilon = 0.5;
  CHECK((pairwise_scores(one) - pairwise_scores(two)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pairwise scores dominate every single-design score") {
  rng::SplitMix gen(56);
  DesignSet ds;
  for (int k = 0; k < 4; ++k) ds.designs.push_back(randn(gen, 18, 5));
  ds.target = Eigen::VectorXd::Zero(18);
  ds.epsilon = 0.3;
  const Eigen::VectorXd tau = pairwise_scores(ds);
  for (const auto& A : ds.designs) {
    const Eigen::VectorXd single = ridge_leverage(A, ds.epsilon);
    CHECK((tau - single).minCoeff() >= -1e-10);
  }
}

TEST_CASE("uniform scores reduce to uniform row sampling") {
  const int m = 12, n = 30;
  const Eigen::VectorXd tau = Eigen::VectorXd::Constant(m, 0.4);
  const SketchMatrix S = sample_rescale(tau, n, 77);
  const double expect = std::sqrt(double(m) / n);
  for (int i = 0; i < n; ++i)
    CHECK(S.scales(i) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("sketching is deterministic per seed") {
  rng::SplitMix gen(57);
  Eigen::VectorXd tau(8);
  for (int i = 0; i < 8; ++i) tau(i) = gen.uniform(0.1, 1.0);
  const SketchMatrix a = sample_rescale(tau, 20, 5);
  const SketchMatrix b = sample_rescale(tau, 20, 5);
  const SketchMatrix c = sample_rescale(tau, 20, 6);
  CHECK(a.rows == b.rows);
  CHECK(a.rows != c.rows);
}

TEST_CASE("sketch rejects bad scores") {
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS((void)sample_rescale(zero, 5, 1), std::invalid_argument);
  Eigen::VectorXd neg(2);
  neg << 0.5, -0.1;
  CHECK_THROWS_AS((void)sample_rescale(neg, 5, 1), std::invalid_argument);
}

TEST_CASE("mean of S^T S approaches the identity") {
  const int m = 30, n = 25, draws = 10000;
  rng::SplitMix gen(58);
  Eigen::VectorXd tau(m);
  for (int i = 0; i < m; ++i) tau(i) = gen.uniform(0.1, 1.0);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  for (int d = 0; d < draws; ++d) {
    const SketchMatrix S = sample_rescale(tau, n, rng::derive(6000, d));
    for (int i = 0; i < n; ++i) diag(S.rows[i]) += S.scales(i) * S.scales(i);
  }
  diag /= draws;
  const double err = (diag.array() - 1.0).matrix().norm() / std::sqrt(double(m));
  CHECK(err <= 0.05);
}

TEST_CASE("full sampling always passes the spectral check") {
  rng::SplitMix gen(59);
  const Eigen::MatrixXd A = randn(gen, 20, 6);
  const SketchMatrix S = SketchMatrix::identity(20);
  for (double Delta : {0.0, 0.2, 1.0})
    CHECK(spectral_check(A, S, 0.5, Delta));
}

TEST_CASE("zero sketch fails the spectral check for large designs") {
  rng::SplitMix gen(60);
  const Eigen::MatrixXd A = 10.0 * randn(gen, 20, 6);
  SketchMatrix S = SketchMatrix::identity(20);
  S.scales.setZero();
  CHECK_FALSE(spectral_check(A, S, 1e-6, 0.5));
}

TEST_CASE("full sampling gives the exact ridge solution and unit ratio") {
  rng::SplitMix gen(61);
  DesignSet ds;
  ds.designs = {randn(gen, 25, 6)};
  ds.target = randn_vec(gen, 25);
  ds.epsilon = 0.8;
  const SubsampleResult res = subsampled_select_with(ds, SketchMatrix::identity(25));
  CHECK(res.index == 0);
  CHECK(res.ratio == doctest::Approx(1.0).epsilon(1e-12));
  const Eigen::MatrixXd G = ds.designs[0].transpose() * ds.designs[0] +
                            0.8 * Eigen::MatrixXd::Identity(6, 6);
  const Eigen::VectorXd direct = G.ldlt().solve(ds.designs[0].transpose() * ds.target);
  CHECK((res.solution - direct).norm() <= 1e-10);
}

TEST_CASE("duplicated designs match the single-design run") {
  rng::SplitMix gen(62);
  const Eigen::MatrixXd A = randn(gen, 30, 5);
  const Eigen::VectorXd b = randn_vec(gen, 30);
  DesignSet one, two;
  one.designs = {A};
  two.designs = {A, A};
  one.target = two.target = b;
  one.epsilon = two.epsilon = 0.4;
  const SubsampleResult r1 = subsampled_select(one, 40, 99);
  const SubsampleResult r2 = subsampled_select(two, 40, 99);
  CHECK(r1.ratio == doctest::Approx(r2.ratio).epsilon(1e-12));
  CHECK((r1.solution - r2.solution).norm() <= 1e-12);
}

TEST_CASE("design set validation") {
  DesignSet ds;
  CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
  rng::SplitMix gen(63);
  ds.designs = {randn(gen, 5, 2), randn(gen, 6, 2)};
  ds.target = randn_vec(gen, 5);
  CHECK_THROWS_AS(ds.validate(), std::invalid_argument);
}
