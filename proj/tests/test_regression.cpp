#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "actkrr/kernel.hpp"
#include "actkrr/quadrature.hpp"
#include "actkrr/regression.hpp"
#include "actkrr/rng.hpp"
#include "actkrr/sampling.hpp"

using namespace actkrr;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXcd random_psd(rng::SplitMix& gen, int n) {
  Eigen::MatrixXcd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = std::complex<double>(gen.normal(), gen.normal());
  return B * B.adjoint() / n;
}

Eigen::VectorXcd random_cvec(rng::SplitMix& gen, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = std::complex<double>(gen.normal(), gen.normal());
  return v;
}

KernelSpec test_spec() {
  KernelSpec spec;
  spec.symmetric = true;
  spec.components = {{0.5, 0.7, 1.0}, {1.4, 0.4, 0.8}};
  return spec;
}

Interpolant fitted_interpolant(std::uint64_t seed, int n, double eps) {
  const KernelSpec spec = test_spec();
  const UniversalDensity density(2.0, 4.0);
  const SampleDesign design = draw_design(density, n, seed);
  rng::SplitMix gen(rng::derive(seed, 9));
  ObservationVector ybar = random_cvec(gen, n);
  const Eigen::MatrixXcd K = kernel_matrix(spec, design);
  return Interpolant{krr_fit(K, ybar, eps), design, spec, eps};
}

}  // namespace

TEST_CASE("scalar krr fit") {
  Eigen::MatrixXcd K(1, 1);
  K(0, 0) = 1.0;
  ObservationVector y(1);
  y(0) = 2.0;
  const Eigen::VectorXcd a = krr_fit(K, y, 1.0);
  CHECK(std::abs(a(0) - 1.0) < 1e-14);
}

TEST_CASE("zero observations give zero coefficients") {
  rng::SplitMix gen(21);
  const Eigen::MatrixXcd K = random_psd(gen, 6);
  const Eigen::VectorXcd a = krr_fit(K, Eigen::VectorXcd::Zero(6), 0.3);
  CHECK(a.norm() == 0.0);
}

TEST_CASE("krr matches a dense inverse on random instances") {
  rng::SplitMix gen(22);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 8;
    const Eigen::MatrixXcd K = random_psd(gen, n);
    const Eigen::VectorXcd y = random_cvec(gen, n);
    const double eps = std::exp(gen.uniform(std::log(1e-3), std::log(1.0)));
    const Eigen::MatrixXcd shifted = K + eps * Eigen::MatrixXcd::Identity(n, n);
    const Eigen::VectorXcd expect = shifted.inverse() * y;
    const Eigen::VectorXcd got = krr_fit(K, y, eps);
    CHECK((got - expect).norm() <= 1e-10 * expect.norm());
  }
}

TEST_CASE("normal equation residual holds on random instances") {
  rng::SplitMix gen(23);
  for (int rep = 0; rep < 8; ++rep) {
    const int n = 12;
    const Eigen::MatrixXcd K = random_psd(gen, n);
    const Eigen::VectorXcd y = random_cvec(gen, n);
    const double eps = 0.05;
    const Eigen::VectorXcd a = krr_fit(K, y, eps);
    // stationarity K((K + eps I) a - y) = 0
    const Eigen::VectorXcd grad = K * ((K * a + eps * a) - y);
    CHECK(grad.norm() <= 1e-8 * std::max(1.0, y.norm()));
  }
}

TEST_CASE("krr rejects bad inputs") {
  Eigen::MatrixXcd K(2, 2);
  K.setIdentity();
  ObservationVector y(2);
  y.setOnes();
  CHECK_THROWS_AS((void)krr_fit(K, y, 0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)krr_fit(K, y, -1.0), std::invalid_argument);
  K(0, 1) = std::nan("");
  CHECK_THROWS_AS((void)krr_fit(K, y, 1.0), std::invalid_argument);
}

TEST_CASE("sample objective basics") {
  Eigen::MatrixXcd K(1, 1);
  K(0, 0) = 1.0;
  ObservationVector y(1);
  y(0) = 2.0;
  Eigen::VectorXcd a(1);
  a(0) = 1.0;
  CHECK(sample_objective(K, y, 1.0, a) == doctest::Approx(2.0).epsilon(1e-14));

  rng::SplitMix gen(24);
  const Eigen::MatrixXcd Kr = random_psd(gen, 7);
  const Eigen::VectorXcd yr = random_cvec(gen, 7);
  CHECK(sample_objective(Kr, yr, 0.4, Eigen::VectorXcd::Zero(7)) ==
        doctest::Approx(yr.squaredNorm()).epsilon(1e-13));
}

TEST_CASE("fitted coefficients beat random perturbations") {
  rng::SplitMix gen(25);
  const int n = 10;
  const Eigen::MatrixXcd K = random_psd(gen, n);
  const Eigen::VectorXcd y = random_cvec(gen, n);
  const double eps = 0.2;
  const Eigen::VectorXcd a = krr_fit(K, y, eps);
  const double base = sample_objective(K, y, eps, a);
  for (int rep = 0; rep < 100; ++rep) {
    const double eta = std::exp(gen.uniform(std::log(1e-4), std::log(1.0)));
    const Eigen::VectorXcd perturbed = a + eta * random_cvec(gen, n);
    CHECK(base <= sample_objective(K, y, eps, perturbed) + 1e-11);
  }
}

TEST_CASE("fitted objective is non-decreasing in epsilon") {
  rng::SplitMix gen(26);
  const int n = 14;
  const Eigen::MatrixXcd K = random_psd(gen, n);
  const Eigen::VectorXcd y = random_cvec(gen, n);
  double prev = -1.0;
  for (double eps : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    const double obj = sample_objective(K, y, eps, krr_fit(K, y, eps));
    CHECK(obj >= prev - 1e-12);
    prev = obj;
  }
}

TEST_CASE("scaling the kernel matrix up never increases the fitted objective") {
  rng::SplitMix gen(27);
  for (int rep = 0; rep < 6; ++rep) {
    const int n = 9;
    const Eigen::MatrixXcd K = random_psd(gen, n);
    const Eigen::VectorXcd y = random_cvec(gen, n);
    const double eps = 0.1;
    const double s = 1.0 + 3.0 * gen.uniform();
    const double base = sample_objective(K, y, eps, krr_fit(K, y, eps));
    const Eigen::MatrixXcd Ks = s * K;
    const double scaled = sample_objective(Ks, y, eps, krr_fit(Ks, y, eps));
    CHECK(scaled <= base + 1e-10 * std::max(1.0, base));
  }
}

TEST_CASE("selection reduces to a single fit for Q=1") {
  rng::SplitMix gen(28);
  const Eigen::MatrixXcd K = random_psd(gen, 8);
  const Eigen::VectorXcd y = random_cvec(gen, 8);
  const Selection sel = select_kernel({K}, y, 0.3);
  CHECK(sel.index == 0);
  CHECK((sel.coeffs - krr_fit(K, y, 0.3)).norm() == 0.0);
}

TEST_CASE("duplicate kernels break ties toward index zero") {
  rng::SplitMix gen(29);
  const Eigen::MatrixXcd K = random_psd(gen, 8);
  const Eigen::VectorXcd y = random_cvec(gen, 8);
  const Selection sel = select_kernel({K, K, K}, y, 0.3);
  CHECK(sel.index == 0);
}

TEST_CASE("selected objective never exceeds the generating kernel's objective") {
  rng::SplitMix gen(30);
  const KernelSpec truth = test_spec();
  KernelSpec other = truth;
  other.components[0].sigma *= 3.0;
  const UniversalDensity density(2.0, 4.0);
  const SampleDesign design = draw_design(density, 24, 555);
  RkhsSignal sig;
  for (int j = 0; j < 4; ++j) {
    sig.centers.push_back(gen.uniform(0.0, 4.0));
    sig.coeffs.push_back(gen.normal());
  }
  ObservationVector ybar(design.n());
  for (int i = 0; i < design.n(); ++i)
    ybar(i) = design.weights[i] * signal_eval(sig, truth, design.times[i]);
  const double eps = 1e-3;
  const std::vector<Eigen::MatrixXcd> Ks = {kernel_matrix(other, design),
                                            kernel_matrix(truth, design)};
  const Selection sel = select_kernel(Ks, ybar, eps);
  const double truth_obj = sample_objective(Ks[1], ybar, eps, krr_fit(Ks[1], ybar, eps));
  CHECK(sel.objective <= truth_obj + 1e-14);
}

TEST_CASE("selection rejects an empty kernel list") {
  ObservationVector y(1);
  y.setOnes();
  CHECK_THROWS_AS((void)select_kernel({}, y, 1.0), std::invalid_argument);
}

TEST_CASE("interpolant evaluation basics") {
  const Interpolant ip = fitted_interpolant(808, 18, 1e-2);

  Interpolant zero = ip;
  zero.coeffs.setZero();
  CHECK(std::abs(interpolant_eval(zero, 1.0)) == 0.0);

  // linearity in the coefficients
  Interpolant twice = ip;
  twice.coeffs *= 2.0;
  CHECK(std::abs(interpolant_eval(twice, 0.8) - 2.0 * interpolant_eval(ip, 0.8)) < 1e-12);

  // v_i * ytilde(t_i) = [K alpha]_i
  const Eigen::MatrixXcd K = kernel_matrix(ip.spec, ip.design);
  const Eigen::VectorXcd Ka = K * ip.coeffs;
  for (int i = 0; i < ip.design.n(); i += 4) {
    const std::complex<double> lhs =
        ip.design.weights[i] * interpolant_eval(ip, ip.design.times[i]);
    CHECK(std::abs(lhs - Ka(i)) < 1e-10);
  }
}

TEST_CASE("t-norm quadrature matches injected functions") {
  const double T = 4.0;
  auto zero = [](double) { return std::complex<double>(0.0); };
  CHECK(t_norm2(zero, T) == doctest::Approx(0.0));

  auto constant = [](double) { return std::complex<double>(0.7); };
  CHECK(t_norm2(constant, T) == doctest::Approx(0.49).epsilon(1e-10));
}

TEST_CASE("quadrature reports non-convergence") {
  quad::DoublingOptions opt;
  opt.max_panels = 32;
  opt.abs_floor = 0.0;
  // discontinuous integrand never meets 1e-7 at 32 panels
  auto step = [](double t) {
    return std::complex<double>(std::fmod(t, 0.173) < 0.05 ? 1.0 : 0.0);
  };
  CHECK_THROWS_AS((void)t_norm2(step, 4.0, opt), std::runtime_error);
}

TEST_CASE("continuous objective pieces") {
  const double eps = 1e-2;
  const Interpolant ip = fitted_interpolant(909, 16, eps);
  const double T = ip.design.horizon;

  // alpha = 0: objective equals ||target||^2
  Interpolant zero = ip;
  zero.coeffs.setZero();
  auto target = [&](double t) {
    return std::complex<double>(std::sin(2.0 * kPi * t / T), 0.0);
  };
  const double expect = t_norm2(target, T);
  CHECK(continuous_objective(zero, target) == doctest::Approx(expect).epsilon(1e-7));

  // perfect fit: objective equals the regularization term alone
  auto self = [&](double t) { return interpolant_eval(ip, t); };
  const Eigen::MatrixXcd K = kernel_matrix(ip.spec, ip.design);
  const double reg = ip.coeffs.dot(K * ip.coeffs).real();
  CHECK(continuous_objective(ip, self) == doctest::Approx(eps * reg).epsilon(1e-7));
}

TEST_CASE("regularization term matches frequency-domain quadrature") {
  const double eps = 5e-2;
  const Interpolant ip = fitted_interpolant(910, 14, eps);
  // g(xi) = sum_j v_j alpha_j e^{-2 pi i xi t_j}; reg term = int |g|^2 pdf
  auto g2pdf = [&](double xi) {
    std::complex<double> g = 0.0;
    for (int j = 0; j < ip.design.n(); ++j) {
      const double phase = -2.0 * kPi * xi * ip.design.times[j];
      g += ip.design.weights[j] * ip.coeffs(j) *
           std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return std::norm(g) * pdf_eval(ip.spec, xi);
  };
  const double oracle = quad::integrate_gk(g2pdf, -8.0, 8.0, 1e-11);
  const Eigen::MatrixXcd K = kernel_matrix(ip.spec, ip.design);
  const double reg = ip.coeffs.dot(K * ip.coeffs).real();
  CHECK(reg == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("interpolation error of an exactly representable truth is zero") {
  const Interpolant ip = fitted_interpolant(911, 12, 1e-2);
  // truth built from the interpolant's own expansion
  RkhsSignal mirror;
  for (int j = 0; j < ip.design.n(); ++j) {
    mirror.centers.push_back(ip.design.times[j]);
    mirror.coeffs.push_back(ip.design.weights[j] * ip.coeffs(j));
  }
  auto truth = [&](double t) { return signal_eval(mirror, ip.spec, t); };
  CHECK(interp_error(ip, truth) <= 1e-12);
}

TEST_CASE("constant offset integrates to its square") {
  const Interpolant ip = fitted_interpolant(912, 12, 1e-2);
  const double b = 0.37;
  auto shifted = [&](double t) { return interpolant_eval(ip, t) + b; };
  CHECK(interp_error(ip, shifted) == doctest::Approx(b * b).epsilon(1e-8));
}

TEST_CASE("interpolation error matches a dense Riemann sum") {
  const Interpolant ip = fitted_interpolant(913, 15, 1e-2);
  const double T = ip.design.horizon;
  RkhsSignal sig;
  rng::SplitMix gen(31);
  for (int j = 0; j < 3; ++j) {
    sig.centers.push_back(gen.uniform(0.0, T));
    sig.coeffs.push_back(gen.normal());
  }
  auto truth = [&](double t) { return signal_eval(sig, ip.spec, t); };
  const double got = interp_error(ip, truth);

  const int grid = 1000000;
  double riemann = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = (i + 0.5) * T / grid;
    riemann += std::norm(truth(t) - interpolant_eval(ip, t));
  }
  riemann /= grid;
  CHECK(got == doctest::Approx(riemann).epsilon(1e-4));
}
