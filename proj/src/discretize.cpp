#include "actkrr/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace actkrr {

void GridConfig::validate() const {
  if (!(m > 0.0 && M >= m)) throw std::invalid_argument("grid: need 0 < m <= M");
  if (!(W >= 0.0)) throw std::invalid_argument("grid: W must be non-negative");
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("grid: rho must lie in (0,1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("grid: gamma must lie in (0,1]");
  if (q < 1) throw std::invalid_argument("grid: q must be >= 1");
}

std::vector<double> mean_grid(const GridConfig& cfg) {
  cfg.validate();
  std::vector<double> out;
  const double step = cfg.rho * cfg.m;
  const double tol = 1e-12 * std::max(1.0, cfg.W);
  for (std::size_t k = 0;; ++k) {
    const double c = static_cast<double>(k) * step;
    if (c >= cfg.W - tol) break;
    out.push_back(c);
    if (out.size() > cfg.cap)
      throw std::runtime_error("mean_grid: cap exceeded, need at least " +
                               std::to_string(out.size()) + " points");
  }
  out.push_back(cfg.W);
  return out;
}

std::vector<double> lengthscale_grid(const GridConfig& cfg) {
  cfg.validate();
  std::vector<double> out;
  const double ratio = 1.0 + cfg.gamma;
  const double top = cfg.M * ratio;  // needed to cover sigma = M
  double s = cfg.m * ratio;
  while (true) {
    out.push_back(s);
    if (out.size() > cfg.cap)
      throw std::runtime_error("lengthscale_grid: cap exceeded, need at least " +
                               std::to_string(out.size()) + " points");
    if (s >= top) break;
    s *= ratio;
  }
  return out;
}

std::size_t sm_grid_size(const GridConfig& cfg) {
  const std::size_t p = mean_grid(cfg).size() * lengthscale_grid(cfg).size();
  // multisets of size q over p items: C(p+q-1, q), saturating
  long double count = 1.0L;
  for (int i = 1; i <= cfg.q; ++i) {
    count *= static_cast<long double>(p + cfg.q - i);
    count /= static_cast<long double>(i);
    if (count > 1e18L) return static_cast<std::size_t>(-1);
  }
  return static_cast<std::size_t>(count + 0.5L);
}

namespace {

void enumerate_multisets(const std::vector<GaussianComponent>& pool, int q,
                         std::size_t start, std::vector<GaussianComponent>& cur,
                         std::vector<KernelSpec>& out) {
  if (q == 0) {
    out.push_back(KernelSpec{cur, true});
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    enumerate_multisets(pool, q - 1, i, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<KernelSpec> sm_grid(const GridConfig& cfg) {
  const std::size_t total = sm_grid_size(cfg);
  if (total > cfg.cap)
    throw std::runtime_error("sm_grid: cap exceeded, need cap >= " +
                             std::to_string(total));
  const std::vector<double> means = mean_grid(cfg);
  const std::vector<double> sigmas = lengthscale_grid(cfg);
  std::vector<GaussianComponent> pool;
  pool.reserve(means.size() * sigmas.size());
  for (double c : means)
    for (double s : sigmas) pool.push_back({c, s, 1.0});
  std::vector<KernelSpec> out;
  out.reserve(total);
  std::vector<GaussianComponent> cur;
  enumerate_multisets(pool, cfg.q, 0, cur, out);
  return out;
}

std::pair<double, double> round_params(double c_hat, double sigma_hat,
                                       const std::vector<double>& means,
                                       const std::vector<double>& sigmas,
                                       const GridConfig& cfg) {
  if (!(c_hat >= 0.0 && c_hat <= cfg.W))
    throw std::invalid_argument("round_params: mean outside [0,W]");
  if (!(sigma_hat >= cfg.m && sigma_hat <= cfg.M))
    throw std::invalid_argument("round_params: lengthscale outside [m,M]");
  double best_c = means.front();
  for (double c : means)
    if (std::fabs(c - c_hat) < std::fabs(best_c - c_hat)) best_c = c;
  const double target = sigma_hat * (1.0 + cfg.gamma);
  auto it = std::lower_bound(sigmas.begin(), sigmas.end(), target);
  if (it == sigmas.end())
    throw std::invalid_argument("round_params: lengthscale grid does not cover input");
  return {best_c, *it};
}

double distortion_constant(double rho, double gamma) {
  if (!(rho > 0.0 && gamma > 0.0))
    throw std::invalid_argument("distortion_constant: rho, gamma must be positive");
  const double r = 1.0 + gamma;
  return r * r * std::exp(0.5 * rho * rho / (1.0 - 1.0 / (r * r)));
}

}  // namespace actkrr
