#include "actkrr/leverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "actkrr/rng.hpp"

namespace actkrr {

void DesignSet::validate() const {
  if (designs.empty()) throw std::invalid_argument("design set: need Q >= 1 designs");
  const auto r = designs.front().rows();
  const auto c = designs.front().cols();
  for (const auto& A : designs)
    if (A.rows() != r || A.cols() != c)
      throw std::invalid_argument("design set: designs must share dimensions");
  if (target.size() != r)
    throw std::invalid_argument("design set: target length must match rows");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("design set: epsilon must be >= 0");
}

Eigen::VectorXd ridge_leverage(const Eigen::MatrixXd& A, double epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("ridge_leverage: epsilon must be >= 0");
  const auto d = A.cols();
  Eigen::MatrixXd G = A.transpose() * A;
  if (epsilon == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    const double lmax = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() <= 1e-12 * std::max(lmax, 1.0))
      throw std::invalid_argument("ridge_leverage: singular A^T A at eps = 0");
  }
  G += epsilon * Eigen::MatrixXd::Identity(d, d);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("ridge_leverage: factorization failed");
  const Eigen::MatrixXd X = ldlt.solve(A.transpose());  // d x m
  return (A.array() * X.transpose().array()).rowwise().sum();
}

Eigen::VectorXd pairwise_scores(const DesignSet& ds) {
  ds.validate();
  const int Q = static_cast<int>(ds.designs.size());
  const int m = ds.rows();
  const int d = ds.cols();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd pair(m, 2 * d);
  for (int j = 0; j < Q; ++j) {
    for (int k = j; k < Q; ++k) {
      pair.leftCols(d) = ds.designs[j];
      pair.rightCols(d) = ds.designs[k];
      out = out.cwiseMax(ridge_leverage(pair, ds.epsilon));
    }
  }
  return out;
}

Eigen::MatrixXd SketchMatrix::apply(const Eigen::MatrixXd& A) const {
  if (A.rows() != source_rows) throw std::invalid_argument("sketch: row mismatch");
  Eigen::MatrixXd out(n(), A.cols());
  for (int i = 0; i < n(); ++i) out.row(i) = scales(i) * A.row(rows[i]);
  return out;
}

Eigen::VectorXd SketchMatrix::apply(const Eigen::VectorXd& v) const {
  if (v.size() != source_rows) throw std::invalid_argument("sketch: row mismatch");
  Eigen::VectorXd out(n());
  for (int i = 0; i < n(); ++i) out(i) = scales(i) * v(rows[i]);
  return out;
}

Eigen::MatrixXd SketchMatrix::dense() const {
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n(), source_rows);
  for (int i = 0; i < n(); ++i) S(i, rows[i]) = scales(i);
  return S;
}

SketchMatrix SketchMatrix::identity(int m) {
  SketchMatrix s;
  s.source_rows = m;
  s.rows.resize(m);
  s.scales = Eigen::VectorXd::Ones(m);
  for (int i = 0; i < m; ++i) s.rows[i] = i;
  return s;
}

SketchMatrix sample_rescale(const Eigen::VectorXd& tau, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_rescale: n must be >= 1");
  const int m = static_cast<int>(tau.size());
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    if (!(tau(i) >= 0.0))
      throw std::invalid_argument("sample_rescale: scores must be non-negative");
    total += tau(i);
  }
  if (!(total > 0.0))
    throw std::invalid_argument("sample_rescale: scores must not all be zero");

  std::vector<double> cum(m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    acc += tau(i);
    cum[i] = acc;
  }

  SketchMatrix s;
  s.source_rows = m;
  s.rows.resize(n);
  s.scales.resize(n);
  rng::SplitMix gen(seed);
  for (int i = 0; i < n; ++i) {
    const double u = gen.uniform() * total;
    const int r = static_cast<int>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    const int idx = std::min(r, m - 1);
    s.rows[i] = idx;
    s.scales(i) = std::sqrt(total / (n * tau(idx)));
  }
  return s;
}

namespace {

// min eigenvalue >= -1e-9 * spectral scale
bool psd_up_to_tol(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return lo >= -1e-9 * scale;
}

}  // namespace

bool spectral_check(const Eigen::MatrixXd& A, const SketchMatrix& S, double epsilon,
                    double Delta) {
  const auto d = A.cols();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd G = A.transpose() * A;
  const Eigen::MatrixXd SA = S.apply(A);
  const Eigen::MatrixXd Gs = SA.transpose() * SA + epsilon * I;
  const Eigen::MatrixXd lower = (1.0 - Delta) * (G - epsilon * I);
  const Eigen::MatrixXd upper = (1.0 + Delta) * (G + epsilon * I);
  return psd_up_to_tol(Gs - lower) && psd_up_to_tol(upper - Gs);
}

namespace {

Eigen::VectorXd ridge_solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                            double epsilon) {
  const auto d = A.cols();
  if (epsilon > 0.0) {
    Eigen::MatrixXd G = A.transpose() * A + epsilon * Eigen::MatrixXd::Identity(d, d);
    return Eigen::LDLT<Eigen::MatrixXd>(G).solve(A.transpose() * b);
  }
  return A.colPivHouseholderQr().solve(b);
}

double ridge_objective(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                       double epsilon, const Eigen::VectorXd& x) {
  return (A * x - b).squaredNorm() + epsilon * x.squaredNorm();
}

}  // namespace

SubsampleResult subsampled_select_with(const DesignSet& ds, const SketchMatrix& S) {
  ds.validate();
  const int Q = static_cast<int>(ds.designs.size());
  const Eigen::VectorXd Sb = S.apply(ds.target);

  SubsampleResult best;
  for (int k = 0; k < Q; ++k) {
    const Eigen::MatrixXd SA = S.apply(ds.designs[k]);
    const Eigen::VectorXd x = ridge_solve(SA, Sb, ds.epsilon);
    const double obj = ridge_objective(SA, Sb, ds.epsilon, x);
    if (best.index < 0 || obj < best.sketched_objective) {
      best.index = k;
      best.solution = x;
      best.sketched_objective = obj;
    }
  }

  best.full_objective =
      ridge_objective(ds.designs[best.index], ds.target, ds.epsilon, best.solution);
  double opt = std::numeric_limits<double>::infinity();
  for (int k = 0; k < Q; ++k) {
    const Eigen::VectorXd x = ridge_solve(ds.designs[k], ds.target, ds.epsilon);
    opt = std::min(opt, ridge_objective(ds.designs[k], ds.target, ds.epsilon, x));
  }
  best.optimum = opt;
  best.ratio = opt > 0.0 ? best.full_objective / opt
                         : (best.full_objective == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
  return best;
}

SubsampleResult subsampled_select(const DesignSet& ds, int n, std::uint64_t seed) {
  const Eigen::VectorXd tau = pairwise_scores(ds);
  return subsampled_select_with(ds, sample_rescale(tau, n, seed));
}

}  // namespace actkrr
