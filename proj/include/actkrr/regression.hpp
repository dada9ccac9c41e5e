#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "actkrr/kernel.hpp"
#include "actkrr/quadrature.hpp"
#include "actkrr/sampling.hpp"

namespace actkrr {

// Reweighted observations ybar_i = v_i * (y(t_i) + z(t_i)).
using ObservationVector = Eigen::VectorXcd;

// Factors K + eps*I once (Hermitian LDLT); solves with one step of iterative
// refinement and a relative-residual acceptance of 1e-10. Switches to a real
// factorization when K has no imaginary part.
class KrrSolver {
 public:
  KrrSolver(const Eigen::MatrixXcd& K, double epsilon);
  KrrSolver(const Eigen::MatrixXd& K, double epsilon);

  Eigen::VectorXcd solve(const ObservationVector& rhs) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;  // real path only

  bool real_path() const { return real_; }

 private:
  bool real_ = false;
  double epsilon_ = 0.0;
  Eigen::MatrixXd shifted_real_;   // K + eps I
  Eigen::MatrixXcd shifted_cplx_;
  Eigen::LDLT<Eigen::MatrixXd> ldlt_real_;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt_cplx_;

  void check_residual(double res, double rhs_norm) const;
};

// KRR coefficients (K + eps I)^{-1} ybar.
Eigen::VectorXcd krr_fit(const Eigen::MatrixXcd& K, const ObservationVector& ybar,
                         double epsilon);
Eigen::VectorXd krr_fit(const Eigen::MatrixXd& K, const Eigen::VectorXd& ybar,
                        double epsilon);

// Regularized sample-side objective ||K a - ybar||^2 + eps * a^H K a.
double sample_objective(const Eigen::MatrixXcd& K, const ObservationVector& ybar,
                        double epsilon, const Eigen::VectorXcd& alpha);
double sample_objective(const Eigen::MatrixXd& K, const Eigen::VectorXd& ybar,
                        double epsilon, const Eigen::VectorXd& alpha);

struct Selection {
  int index = -1;
  Eigen::VectorXcd coeffs;
  double objective = 0.0;
};

// Fits every kernel matrix on the shared design and returns the argmin of the
// sample objective; ties break toward the smallest index.
Selection select_kernel(const std::vector<Eigen::MatrixXcd>& Ks,
                        const ObservationVector& ybar, double epsilon);

// KRR interpolant bound to its design and spec:
//   ytilde(t) = sum_j v_j alpha_j k(t - t_j).
struct Interpolant {
  Eigen::VectorXcd coeffs;
  SampleDesign design;
  KernelSpec spec;
  double epsilon = 0.0;
};

std::complex<double> interpolant_eval(const Interpolant& ip, double t);

using TimeFn = std::function<std::complex<double>(double)>;

// (1/T) * integral of |f|^2 over [0,T], composite Gauss-Legendre with panel
// doubling to the given relative tolerance.
double t_norm2(const TimeFn& f, double T, const quad::DoublingOptions& opt = {});

// ||ytilde - target||_T^2 + eps * alpha^H K alpha, where target is the
// observed signal y + z. The second term equals the squared mu-norm of the
// interpolant's frequency-domain representation.
double continuous_objective(const Interpolant& ip, const TimeFn& target,
                            const quad::DoublingOptions& opt = {});

// ||truth - ytilde||_T^2 by quadrature.
double interp_error(const Interpolant& ip, const TimeFn& truth,
                    const quad::DoublingOptions& opt = {});

}  // namespace actkrr
