#include "actkrr/statdim.hpp"

#include <cmath>
#include <stdexcept>

#include "actkrr/parallel.hpp"

namespace actkrr {

namespace {
constexpr int kMaxGrid = 1 << 14;
constexpr double kAlphaFloor = 1.1224620483093730;  // 2^(1/6)
}  // namespace

Eigen::MatrixXd operator_gram_real(const KernelSpec& spec, double T, int gridsize) {
  if (!spec.symmetric)
    throw std::invalid_argument("operator_gram_real: spec must be symmetric");
  const double h = T / gridsize;
  Eigen::MatrixXd G(gridsize, gridsize);
  // shift-invariant: entry depends on |i-j| only
  std::vector<double> row(gridsize);
  for (int d = 0; d < gridsize; ++d)
    row[d] = kernel_eval(spec, d * h).real() / gridsize;
  for (int i = 0; i < gridsize; ++i)
    for (int j = 0; j < gridsize; ++j) G(i, j) = row[std::abs(i - j)];
  return G;
}

Eigen::MatrixXcd operator_gram(const KernelSpec& spec, double T, int gridsize) {
  const double h = T / gridsize;
  std::vector<std::complex<double>> row(gridsize);
  for (int d = 0; d < gridsize; ++d)
    row[d] = kernel_eval(spec, d * h) / static_cast<double>(gridsize);
  Eigen::MatrixXcd G(gridsize, gridsize);
  for (int i = 0; i < gridsize; ++i)
    for (int j = 0; j < gridsize; ++j)
      G(i, j) = i >= j ? row[i - j] : std::conj(row[j - i]);
  return G;
}

double statdim_matrix(const Eigen::VectorXd& eigs, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("statdim_matrix: epsilon must be >= 0");
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double l = eigs(i);
    if (l <= 0.0) continue;
    s += epsilon == 0.0 ? 1.0 : l / (l + epsilon);
  }
  return s;
}

namespace {

double statdim_at(const KernelSpec& spec, double T, double epsilon, int n) {
  if (spec.symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(operator_gram_real(spec, T, n),
                                                      Eigen::EigenvaluesOnly);
    return statdim_matrix(es.eigenvalues(), epsilon);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(operator_gram(spec, T, n),
                                                     Eigen::EigenvaluesOnly);
  return statdim_matrix(es.eigenvalues(), epsilon);
}

}  // namespace

StatDimEstimate statdim_operator(const KernelSpec& spec, double T, double epsilon,
                                 int gridsize) {
  spec.validate();
  if (gridsize < 16) throw std::invalid_argument("statdim_operator: gridsize must be >= 16");
  if (!(epsilon > 0.0)) throw std::invalid_argument("statdim_operator: epsilon must be positive");
  int n = gridsize;
  double prev = statdim_at(spec, T, epsilon, n);
  while (n < kMaxGrid) {
    n *= 2;
    const double cur = statdim_at(spec, T, epsilon, n);
    const double change = std::fabs(cur - prev);
    prev = cur;
    if (change < 0.01 * std::max(cur, 1e-12)) return {cur, n, true};
  }
  throw std::runtime_error("statdim_operator: no convergence at gridsize 2^14");
}

double alpha_for(const std::vector<KernelSpec>& specs, double T, double epsilon,
                 double c_alpha, int gridsize, int jobs, double* s_max_out) {
  if (specs.empty()) throw std::invalid_argument("alpha_for: empty spec list");
  std::vector<double> s(specs.size());
  parallel_for(static_cast<int>(specs.size()), jobs, [&](int i) {
    s[i] = statdim_operator(specs[i], T, epsilon, gridsize).value;
  });
  double s_max = 0.0;
  for (double v : s) s_max = std::max(s_max, v);
  if (s_max_out) *s_max_out = s_max;
  return std::max(c_alpha * s_max, kAlphaFloor);
}

long sample_budget(double s_max, long Q, double delta, double C0) {
  if (!(s_max >= 1.0)) throw std::invalid_argument("sample_budget: s_max must be >= 1");
  if (Q < 1) throw std::invalid_argument("sample_budget: Q must be >= 1");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("sample_budget: delta must lie in (0,1)");
  if (!(C0 > 0.0)) throw std::invalid_argument("sample_budget: C0 must be positive");
  return static_cast<long>(
      std::ceil(C0 * s_max * std::log(s_max * static_cast<double>(Q) / delta)));
}

}  // namespace actkrr
