#pragma once

#include <Eigen/Dense>
#include <vector>

#include "actkrr/kernel.hpp"

namespace actkrr {

struct StatDimEstimate {
  double value = 0.0;
  int gridsize = 0;  // grid at which the estimate converged
  bool converged = false;
};

// Uniform-grid quadrature of the kernel integral operator on [0,T]:
// G_ij = k(t_i - t_j)/n at midpoint nodes. Trace equals k(0) exactly.
Eigen::MatrixXd operator_gram_real(const KernelSpec& spec, double T, int gridsize);
Eigen::MatrixXcd operator_gram(const KernelSpec& spec, double T, int gridsize);

// sum_i lambda_i / (lambda_i + eps) over non-negative eigenvalues; for
// eps = 0 this counts the positive eigenvalues.
double statdim_matrix(const Eigen::VectorXd& eigs, double epsilon);

// Effective dimension of the kernel operator at regularization eps, computed
// by eigendecomposing the Gram quadrature and doubling the grid until the
// value changes by less than 1%. Throws if 2^14 nodes do not suffice.
StatDimEstimate statdim_operator(const KernelSpec& spec, double T, double epsilon,
                                 int gridsize = 32);

// Density parameter for the universal sampler covering every spec in the
// family: max(c_alpha * max_q statdim, 2^(1/6)). The measured maximum
// statistical dimension is stored through s_max_out when given.
double alpha_for(const std::vector<KernelSpec>& specs, double T, double epsilon,
                 double c_alpha = 2.0, int gridsize = 32, int jobs = 0,
                 double* s_max_out = nullptr);

// Sample count ceil(C0 * s_max * ln(s_max * Q / delta)).
long sample_budget(double s_max, long Q, double delta, double C0);

}  // namespace actkrr
