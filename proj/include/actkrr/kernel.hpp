#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "actkrr/sampling.hpp"

namespace actkrr {

// One Gaussian mode of a spectral density: mean (Hz), frequency-domain
// standard deviation (Hz), mixture weight.
struct GaussianComponent {
  double mean = 0.0;
  double sigma = 1.0;
  double weight = 1.0;
};

// Mixture-of-Gaussians spectral density. With symmetric=true every component
// is implicitly paired with its mirror at -mean (same sigma, the pair sharing
// the component's weight), which makes the kernel real-valued.
struct KernelSpec {
  std::vector<GaussianComponent> components;
  bool symmetric = true;

  double total_weight() const;
  void validate() const;  // throws std::invalid_argument
};

// Spectral density value at frequency xi. Non-negative; integrates to the
// total weight.
double pdf_eval(const KernelSpec& spec, double xi);

// Shift-invariant kernel value at lag delta (seconds):
//   sum_j w_j exp(-2 pi^2 delta^2 sigma_j^2) * phase_j(delta)
// with phase cos(2 pi delta c_j) when symmetric, exp(-2 pi i delta c_j)
// otherwise. Real for symmetric specs.
std::complex<double> kernel_eval(const KernelSpec& spec, double delta);

// Weighted kernel matrix on a sample design: [K]_ij = v_i v_j k(t_i - t_j).
Eigen::MatrixXcd kernel_matrix(const KernelSpec& spec, const SampleDesign& design);

// Real fast path; requires a symmetric spec.
Eigen::MatrixXd kernel_matrix_real(const KernelSpec& spec, const SampleDesign& design);

// Finite kernel expansion y(t) = sum_j beta_j k(t - s_j); lives in the RKHS
// of any spec it is evaluated against.
struct RkhsSignal {
  std::vector<double> centers;
  std::vector<std::complex<double>> coeffs;

  void validate() const;
};

std::complex<double> signal_eval(const RkhsSignal& sig, const KernelSpec& spec, double t);

// Squared RKHS norm of the signal under the spec: beta^H K_s beta with
// [K_s]_jl = k(s_j - s_l). Non-negative real.
double signal_energy(const RkhsSignal& sig, const KernelSpec& spec);

}  // namespace actkrr
