#include "actkrr/regression.hpp"

#include <cmath>
#include <stdexcept>

namespace actkrr {

namespace {

constexpr double kResidualTol = 1e-10;

bool is_real(const Eigen::MatrixXcd& K) {
  const double scale = K.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  return K.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

void check_inputs(double epsilon, const Eigen::MatrixXcd& K) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("krr: epsilon must be positive");
  if (!K.allFinite()) throw std::invalid_argument("krr: non-finite kernel matrix");
  if (K.rows() != K.cols()) throw std::invalid_argument("krr: kernel matrix must be square");
}

}  // namespace

KrrSolver::KrrSolver(const Eigen::MatrixXcd& K, double epsilon) : epsilon_(epsilon) {
  check_inputs(epsilon, K);
  const auto n = K.rows();
  if (is_real(K)) {
    real_ = true;
    shifted_real_ = K.real() + epsilon * Eigen::MatrixXd::Identity(n, n);
    ldlt_real_.compute(shifted_real_);
    if (ldlt_real_.info() != Eigen::Success)
      throw std::runtime_error("krr: factorization failed");
  } else {
    shifted_cplx_ = K + epsilon * Eigen::MatrixXcd::Identity(n, n);
    ldlt_cplx_.compute(shifted_cplx_);
    if (ldlt_cplx_.info() != Eigen::Success)
      throw std::runtime_error("krr: factorization failed");
  }
}

KrrSolver::KrrSolver(const Eigen::MatrixXd& K, double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("krr: epsilon must be positive");
  if (!K.allFinite()) throw std::invalid_argument("krr: non-finite kernel matrix");
  if (K.rows() != K.cols()) throw std::invalid_argument("krr: kernel matrix must be square");
  real_ = true;
  shifted_real_ = K + epsilon * Eigen::MatrixXd::Identity(K.rows(), K.rows());
  ldlt_real_.compute(shifted_real_);
  if (ldlt_real_.info() != Eigen::Success)
    throw std::runtime_error("krr: factorization failed");
}

void KrrSolver::check_residual(double res, double rhs_norm) const {
  if (rhs_norm == 0.0) return;
  if (!(res <= kResidualTol * rhs_norm))
    throw std::runtime_error("krr: solve residual above tolerance");
}

Eigen::VectorXd KrrSolver::solve(const Eigen::VectorXd& rhs) const {
  if (!real_) throw std::logic_error("krr: real solve on complex factorization");
  if (!rhs.allFinite()) throw std::invalid_argument("krr: non-finite observations");
  Eigen::VectorXd x = ldlt_real_.solve(rhs);
  Eigen::VectorXd r = rhs - shifted_real_ * x;
  x += ldlt_real_.solve(r);
  r = rhs - shifted_real_ * x;
  check_residual(r.norm(), rhs.norm());
  return x;
}

Eigen::VectorXcd KrrSolver::solve(const ObservationVector& rhs) const {
  if (!rhs.allFinite()) throw std::invalid_argument("krr: non-finite observations");
  if (real_) {
    Eigen::VectorXd re = ldlt_real_.solve(rhs.real());
    Eigen::VectorXd im = ldlt_real_.solve(rhs.imag());
    Eigen::VectorXcd x = re.cast<std::complex<double>>() +
                         std::complex<double>(0, 1) * im.cast<std::complex<double>>();
    Eigen::VectorXcd r = rhs - shifted_real_ * x;
    x += ldlt_real_.solve(r.real()).cast<std::complex<double>>() +
         std::complex<double>(0, 1) * ldlt_real_.solve(r.imag()).cast<std::complex<double>>();
    r = rhs - shifted_real_ * x;
    check_residual(r.norm(), rhs.norm());
    return x;
  }
  Eigen::VectorXcd x = ldlt_cplx_.solve(rhs);
  Eigen::VectorXcd r = rhs - shifted_cplx_ * x;
  x += ldlt_cplx_.solve(r);
  r = rhs - shifted_cplx_ * x;
  check_residual(r.norm(), rhs.norm());
  return x;
}

Eigen::VectorXcd krr_fit(const Eigen::MatrixXcd& K, const ObservationVector& ybar,
                         double epsilon) {
  if (ybar.size() != K.rows())
    throw std::invalid_argument("krr_fit: observation length mismatch");
  return KrrSolver(K, epsilon).solve(ybar);
}

Eigen::VectorXd krr_fit(const Eigen::MatrixXd& K, const Eigen::VectorXd& ybar,
                        double epsilon) {
  if (ybar.size() != K.rows())
    throw std::invalid_argument("krr_fit: observation length mismatch");
  return KrrSolver(K, epsilon).solve(ybar);
}

double sample_objective(const Eigen::MatrixXcd& K, const ObservationVector& ybar,
                        double epsilon, const Eigen::VectorXcd& alpha) {
  if (alpha.size() != K.rows() || ybar.size() != K.rows())
    throw std::invalid_argument("sample_objective: shape mismatch");
  const Eigen::VectorXcd Ka = K * alpha;
  const double fit = (Ka - ybar).squaredNorm();
  const double reg = alpha.dot(Ka).real();  // alpha^H K alpha
  return fit + epsilon * reg;
}

double sample_objective(const Eigen::MatrixXd& K, const Eigen::VectorXd& ybar,
                        double epsilon, const Eigen::VectorXd& alpha) {
  if (alpha.size() != K.rows() || ybar.size() != K.rows())
    throw std::invalid_argument("sample_objective: shape mismatch");
  const Eigen::VectorXd Ka = K * alpha;
  return (Ka - ybar).squaredNorm() + epsilon * alpha.dot(Ka);
}

Selection select_kernel(const std::vector<Eigen::MatrixXcd>& Ks,
                        const ObservationVector& ybar, double epsilon) {
  if (Ks.empty()) throw std::invalid_argument("select_kernel: empty kernel list");
  Selection best;
  for (std::size_t q = 0; q < Ks.size(); ++q) {
    Eigen::VectorXcd alpha = krr_fit(Ks[q], ybar, epsilon);
    const double obj = sample_objective(Ks[q], ybar, epsilon, alpha);
    if (best.index < 0 || obj < best.objective) {
      best.index = static_cast<int>(q);
      best.coeffs = std::move(alpha);
      best.objective = obj;
    }
  }
  return best;
}

std::complex<double> interpolant_eval(const Interpolant& ip, double t) {
  std::complex<double> v = 0.0;
  const int n = ip.design.n();
  for (int j = 0; j < n; ++j)
    v += ip.design.weights[j] * ip.coeffs(j) *
         kernel_eval(ip.spec, t - ip.design.times[j]);
  return v;
}

double t_norm2(const TimeFn& f, double T, const quad::DoublingOptions& opt) {
  auto sq = [&](double t) { return std::norm(f(t)); };
  return quad::integrate_doubling(sq, 0.0, T, opt) / T;
}

double continuous_objective(const Interpolant& ip, const TimeFn& target,
                            const quad::DoublingOptions& opt) {
  const double T = ip.design.horizon;
  auto diff = [&](double t) { return std::norm(interpolant_eval(ip, t) - target(t)); };
  const double fit = quad::integrate_doubling(diff, 0.0, T, opt) / T;
  const Eigen::MatrixXcd K = kernel_matrix(ip.spec, ip.design);
  const double reg = ip.coeffs.dot(K * ip.coeffs).real();
  return fit + ip.epsilon * reg;
}

double interp_error(const Interpolant& ip, const TimeFn& truth,
                    const quad::DoublingOptions& opt) {
  const double T = ip.design.horizon;
  auto diff = [&](double t) { return std::norm(truth(t) - interpolant_eval(ip, t)); };
  return quad::integrate_doubling(diff, 0.0, T, opt) / T;
}

}  // namespace actkrr
