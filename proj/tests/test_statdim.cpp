#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "actkrr/kernel.hpp"
#include "actkrr/leverage.hpp"
#include "actkrr/rng.hpp"
#include "actkrr/statdim.hpp"

using namespace actkrr;

namespace {

KernelSpec rbf(double sigma) {
  KernelSpec spec;
  spec.components = {{0.0, sigma, 1.0}};
  return spec;
}

KernelSpec flat_band(double F, int modes) {
  KernelSpec spec;
  spec.symmetric = true;
  const double spacing = F / modes;
  for (int k = 0; k < modes; ++k)
    spec.components.push_back({(k + 0.5) * spacing, 0.5 * spacing, 1.0 / modes});
  return spec;
}

}  // namespace

TEST_CASE("statdim of a matrix spectrum") {
  Eigen::VectorXd eigs(2);
  eigs << 1.0, 1.0;
  CHECK(statdim_matrix(eigs, 1.0) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::VectorXd mixed(4);
  mixed << 0.0, 2.0, 0.5, 0.0;
  CHECK(statdim_matrix(mixed, 0.0) == doctest::Approx(2.0));  // count of nonzeros
}

TEST_CASE("statdim matches the ridge leverage sum") {
  rng::SplitMix gen(71);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::MatrixXd A(20, 5);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 5; ++j) A(i, j) = gen.normal();
    const double eps = std::exp(gen.uniform(std::log(1e-2), std::log(10.0)));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A,
                                                      Eigen::EigenvaluesOnly);
    CHECK(ridge_leverage(A, eps).sum() ==
          doctest::Approx(statdim_matrix(es.eigenvalues(), eps)).epsilon(1e-8));
  }
}

TEST_CASE("huge regularization sends the statdim to zero") {
  const StatDimEstimate est = statdim_operator(rbf(1.0), 5.0, 1e6);
  CHECK(est.value < 1e-5);  // trace bound: total weight / eps
}

TEST_CASE("gram trace equals the kernel mass") {
  KernelSpec two;
  two.symmetric = true;
  two.components = {{0.7, 0.9, 0.8}, {2.0, 0.5, 0.6}};
  for (int n : {32, 128}) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(operator_gram_real(two, 6.0, n),
                                                      Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().sum() ==
          doctest::Approx(kernel_eval(two, 0.0).real()).epsilon(1e-6));
  }
}

TEST_CASE("doubling the grid at convergence moves the value by under 1%") {
  const KernelSpec spec = rbf(5.0);
  const StatDimEstimate est = statdim_operator(spec, 10.0, 1e-3);
  CHECK(est.converged);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(
      operator_gram_real(spec, 10.0, est.gridsize), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> b(
      operator_gram_real(spec, 10.0, 2 * est.gridsize), Eigen::EigenvaluesOnly);
  const double sa = statdim_matrix(a.eigenvalues(), 1e-3);
  const double sb = statdim_matrix(b.eigenvalues(), 1e-3);
  CHECK(std::fabs(sb - sa) / sb < 0.01);
  CHECK(est.value == doctest::Approx(sb).epsilon(0.02));
}

TEST_CASE("statdim decreases strictly in epsilon") {
  double prev = -1.0;
  for (double eps : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    const double s = statdim_operator(rbf(1.0), 6.0, eps).value;
    if (prev >= 0.0) CHECK(s < prev);
    prev = s;
  }
}

TEST_CASE("statdim respects the trace bound") {
  KernelSpec mix;
  mix.symmetric = true;
  mix.components = {{0.5, 0.6, 0.9}, {1.5, 0.4, 0.3}};
  for (double eps : {1e-3, 1e-2, 1e-1}) {
    const StatDimEstimate est = statdim_operator(mix, 5.0, eps);
    CHECK(est.value >= 0.0);
    CHECK(est.value <= mix.total_weight() / eps + 1e-9);
  }
}

TEST_CASE("flat-band statdim roughly doubles with the bandlimit") {
  const double s1 = statdim_operator(flat_band(2.0, 16), 10.0, 1e-3, 64).value;
  const double s2 = statdim_operator(flat_band(4.0, 32), 10.0, 1e-3, 64).value;
  CHECK(s2 / s1 >= 1.6);
  CHECK(s2 / s1 <= 2.4);
}

TEST_CASE("mixture statdim is subadditive in the components") {
  KernelSpec mix;
  mix.symmetric = true;
  mix.components = {{0.4, 0.5, 1.0}, {1.5, 0.8, 1.0}, {2.5, 0.3, 1.0}};
  const double T = 5.0, eps = 1e-3;
  const int n = 512;
  auto statdim_fixed = [&](const KernelSpec& spec) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(operator_gram_real(spec, T, n),
                                                      Eigen::EigenvaluesOnly);
    return statdim_matrix(es.eigenvalues(), eps);
  };
  double single_sum = 0.0;
  for (const auto& comp : mix.components) {
    KernelSpec one;
    one.symmetric = true;
    one.components = {comp};
    single_sum += statdim_fixed(one);
  }
  CHECK(statdim_fixed(mix) <= 1.01 * single_sum);
}

TEST_CASE("alpha covers the family and respects the floor") {
  KernelSpec narrow = rbf(0.05);
  CHECK(alpha_for({narrow}, 2.0, 1.0) ==
        doctest::Approx(std::pow(2.0, 1.0 / 6.0)).epsilon(1e-12));

  const KernelSpec a = rbf(0.8);
  KernelSpec b = rbf(1.6);
  const double alpha_one = alpha_for({a}, 5.0, 1e-3);
  const double alpha_two = alpha_for({a, b}, 5.0, 1e-3);
  CHECK(alpha_two >= alpha_one);

  const double s = statdim_operator(a, 5.0, 1e-3).value;
  CHECK(alpha_for({a}, 5.0, 1e-3, 2.0) == doctest::Approx(2.0 * s).epsilon(1e-9));
}

TEST_CASE("sample budget arithmetic") {
  CHECK(sample_budget(10.0, 1, 0.1, 10.0) == 461);
  // doubling Q adds about C0 * s * ln(2)
  const long n1 = sample_budget(10.0, 4, 0.1, 10.0);
  const long n2 = sample_budget(10.0, 8, 0.1, 10.0);
  CHECK(std::labs(n2 - n1 - static_cast<long>(std::round(100.0 * std::log(2.0)))) <= 1);
  // monotonicity in each argument
  CHECK(sample_budget(12.0, 1, 0.1, 10.0) > sample_budget(10.0, 1, 0.1, 10.0));
  CHECK(sample_budget(10.0, 2, 0.1, 10.0) > sample_budget(10.0, 1, 0.1, 10.0));
  CHECK(sample_budget(10.0, 1, 0.05, 10.0) > sample_budget(10.0, 1, 0.1, 10.0));
  CHECK_THROWS_AS((void)sample_budget(0.5, 1, 0.1, 10.0), std::invalid_argument);
  CHECK_THROWS_AS((void)sample_budget(10.0, 1, 1.5, 10.0), std::invalid_argument);
}

TEST_CASE("statdim input validation") {
  CHECK_THROWS_AS((void)statdim_operator(rbf(1.0), 5.0, 1e-3, 8), std::invalid_argument);
  CHECK_THROWS_AS((void)statdim_operator(rbf(1.0), 5.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)alpha_for({}, 5.0, 1e-3), std::invalid_argument);
}
