#include "actkrr/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace actkrr {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPiSq = 2.0 * kPi * kPi;

double normal_pdf(double xi, double mean, double sigma) {
  const double z = (xi - mean) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * kPi));
}

void check_finite(const std::vector<double>& xs, const char* what) {
  for (double x : xs)
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

double KernelSpec::total_weight() const {
  double w = 0.0;
  for (const auto& c : components) w += c.weight;
  return w;
}

void KernelSpec::validate() const {
  if (components.empty())
    throw std::invalid_argument("kernel spec: components must be non-empty");
  for (const auto& c : components) {
    if (!(std::isfinite(c.mean) && std::isfinite(c.sigma) && std::isfinite(c.weight)))
      throw std::invalid_argument("kernel spec: non-finite component");
    if (!(c.sigma > 0.0)) throw std::invalid_argument("kernel spec: sigma must be positive");
    if (!(c.weight >= 0.0 && c.weight <= 1.0))
      throw std::invalid_argument("kernel spec: weight must lie in [0,1]");
  }
}

double pdf_eval(const KernelSpec& spec, double xi) {
  double v = 0.0;
  for (const auto& c : spec.components) {
    if (spec.symmetric)
      v += 0.5 * c.weight * (normal_pdf(xi, c.mean, c.sigma) + normal_pdf(xi, -c.mean, c.sigma));
    else
      v += c.weight * normal_pdf(xi, c.mean, c.sigma);
  }
  return v;
}

std::complex<double> kernel_eval(const KernelSpec& spec, double delta) {
  std::complex<double> v = 0.0;
  const double d2 = delta * delta;
  for (const auto& c : spec.components) {
    const double env = c.weight * std::exp(-kTwoPiSq * d2 * c.sigma * c.sigma);
    const double phase = 2.0 * kPi * delta * c.mean;
    if (spec.symmetric)
      v += env * std::cos(phase);
    else
      v += env * std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return v;
}

Eigen::MatrixXcd kernel_matrix(const KernelSpec& spec, const SampleDesign& design) {
  const int n = design.n();
  if (n < 1) throw std::invalid_argument("kernel_matrix: empty design");
  check_finite(design.times, "kernel_matrix: times");
  check_finite(design.weights, "kernel_matrix: weights");
  Eigen::MatrixXcd K(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = design.weights[i] * design.weights[i] * kernel_eval(spec, 0.0);
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> k =
          kernel_eval(spec, design.times[i] - design.times[j]);
      const double vv = design.weights[i] * design.weights[j];
      K(i, j) = vv * k;
      K(j, i) = vv * std::conj(k);
    }
  }
  return K;
}

Eigen::MatrixXd kernel_matrix_real(const KernelSpec& spec, const SampleDesign& design) {
  if (!spec.symmetric)
    throw std::invalid_argument("kernel_matrix_real: spec must be symmetric");
  const int n = design.n();
  if (n < 1) throw std::invalid_argument("kernel_matrix: empty design");
  check_finite(design.times, "kernel_matrix: times");
  check_finite(design.weights, "kernel_matrix: weights");
  Eigen::MatrixXd K(n, n);
  const double k0 = kernel_eval(spec, 0.0).real();
  for (int i = 0; i < n; ++i) {
    K(i, i) = design.weights[i] * design.weights[i] * k0;
    for (int j = i + 1; j < n; ++j) {
      const double k = kernel_eval(spec, design.times[i] - design.times[j]).real();
      const double vv = design.weights[i] * design.weights[j];
      K(i, j) = vv * k;
      K(j, i) = vv * k;
    }
  }
  return K;
}

void RkhsSignal::validate() const {
  if (centers.size() != coeffs.size())
    throw std::invalid_argument("rkhs signal: centers/coeffs length mismatch");
  for (double s : centers)
    if (!std::isfinite(s)) throw std::invalid_argument("rkhs signal: non-finite center");
}

std::complex<double> signal_eval(const RkhsSignal& sig, const KernelSpec& spec, double t) {
  std::complex<double> v = 0.0;
  for (std::size_t j = 0; j < sig.centers.size(); ++j)
    v += sig.coeffs[j] * kernel_eval(spec, t - sig.centers[j]);
  return v;
}

double signal_energy(const RkhsSignal& sig, const KernelSpec& spec) {
  const std::size_t q = sig.centers.size();
  if (q == 0) return 0.0;
  Eigen::MatrixXcd K(q, q);
  for (std::size_t j = 0; j < q; ++j)
    for (std::size_t l = 0; l < q; ++l)
      K(j, l) = kernel_eval(spec, sig.centers[j] - sig.centers[l]);
  Eigen::VectorXcd beta(q);
  for (std::size_t j = 0; j < q; ++j) beta(j) = sig.coeffs[j];
  const std::complex<double> e = beta.adjoint() * K * beta;
  const double scale = spec.total_weight() * beta.squaredNorm();
  if (e.real() < -1e-10 * (1.0 + scale))
    throw std::runtime_error("signal_energy: quadratic form came out negative");
  return std::max(e.real(), 0.0);
}

}  // namespace actkrr
