#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace actkrr {

// Q real design matrices sharing dimensions, one target vector, one ridge
// parameter.
struct DesignSet {
  std::vector<Eigen::MatrixXd> designs;
  Eigen::VectorXd target;
  double epsilon = 0.0;

  void validate() const;
  int rows() const { return static_cast<int>(designs.front().rows()); }
  int cols() const { return static_cast<int>(designs.front().cols()); }
};

// Ridge leverage scores tau_i = a_i (A^T A + eps I)^{-1} a_i^T. For eps = 0
// the matrix must have full column rank.
Eigen::VectorXd ridge_leverage(const Eigen::MatrixXd& A, double epsilon);

// Upper-bound scores for a design set: per row, the maximum ridge leverage
// over all unordered pairs [A_j | A_k] of conjoined designs (j <= k, so Q=1
// uses [A_1 | A_1]).
Eigen::VectorXd pairwise_scores(const DesignSet& ds);

// Sparse row sampler with one nonzero per row:
//   S(i, r_i) = sqrt(s_tilde / (n * tau(r_i))).
struct SketchMatrix {
  std::vector<int> rows;    // sampled source-row indices r_i
  Eigen::VectorXd scales;   // per sampled row
  int source_rows = 0;

  int n() const { return static_cast<int>(rows.size()); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& A) const;  // S * A
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd dense() const;

  static SketchMatrix identity(int m);
};

// Rows sampled i.i.d. proportional to tau; E[S^T S] = I.
SketchMatrix sample_rescale(const Eigen::VectorXd& tau, int n, std::uint64_t seed);

// Tests (1-Delta)(A^T A - eps I) <= A^T S^T S A + eps I <= (1+Delta)(A^T A + eps I)
// in the semidefinite order, with a 1e-9-scaled eigenvalue tolerance.
bool spectral_check(const Eigen::MatrixXd& A, const SketchMatrix& S, double epsilon,
                    double Delta);

struct SubsampleResult {
  int index = -1;              // selected design
  Eigen::VectorXd solution;
  double sketched_objective = 0.0;
  double full_objective = 0.0;  // objective of (index, solution) on full data
  double optimum = 0.0;         // exact full-data optimum over all designs
  double ratio = 0.0;           // full_objective / optimum
};

// Draws a sketch from pairwise_scores and solves the subsampled regression
// problem argmin_{k,x} ||S A_k x - S b||^2 + eps ||x||^2.
SubsampleResult subsampled_select(const DesignSet& ds, int n, std::uint64_t seed);

// Same selection with a caller-provided sketch.
SubsampleResult subsampled_select_with(const DesignSet& ds, const SketchMatrix& S);

}  // namespace actkrr
