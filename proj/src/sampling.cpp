#include "actkrr/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "actkrr/rng.hpp"

namespace actkrr {

namespace {
constexpr double kMinAlpha6 = 2.0;
}

UniversalDensity::UniversalDensity(double alpha_, double horizon_)
    : alpha(alpha_), horizon(horizon_) {
  if (!(std::isfinite(alpha) && std::isfinite(horizon)))
    throw std::invalid_argument("universal density: non-finite parameters");
  if (horizon <= 0.0) throw std::invalid_argument("universal density: T must be positive");
  if (std::pow(alpha, 6) < kMinAlpha6)
    throw std::invalid_argument("universal density: alpha^6 must be >= 2");
}

double UniversalDensity::pow6() const {
  const double a2 = alpha * alpha;
  return a2 * a2 * a2;
}

double density_eval(const UniversalDensity& d, double t) {
  if (!(t >= 0.0 && t <= d.horizon))
    throw std::invalid_argument("density_eval: t outside [0,T]");
  const double lo = d.edge_width();
  const double hi = d.horizon - lo;
  if (t <= lo || t >= hi) return d.pow6() / d.horizon;
  return d.alpha / std::min(t, d.horizon - t);
}

double density_mass(const UniversalDensity& d) {
  return 12.0 * d.alpha * std::log(d.alpha) - 2.0 * d.alpha * std::log(2.0) + 2.0;
}

// Unnormalized mass on [0,t]; exploits the density's symmetry about T/2.
static double mass_below(const UniversalDensity& d, double t) {
  const double T = d.horizon;
  const double lo = d.edge_width();
  const double P = density_mass(d);
  if (t <= 0.0) return 0.0;
  if (t >= T) return P;
  if (t > 0.5 * T) return P - mass_below(d, T - t);
  if (t <= lo) return d.pow6() * t / T;
  return 1.0 + d.alpha * std::log(t / lo);
}

double density_cdf(const UniversalDensity& d, double t) {
  if (!(t >= 0.0 && t <= d.horizon))
    throw std::invalid_argument("density_cdf: t outside [0,T]");
  return mass_below(d, t) / density_mass(d);
}

double inverse_cdf(const UniversalDensity& d, double u) {
  if (!(u >= 0.0 && u <= 1.0))
    throw std::invalid_argument("inverse_cdf: u outside [0,1]");
  const double T = d.horizon;
  const double P = density_mass(d);
  double m = u * P;
  bool flip = false;
  if (m > 0.5 * P) {
    m = P - m;
    flip = true;
  }
  const double lo = d.edge_width();
  double t;
  if (m <= 1.0)
    t = m * T / d.pow6();
  else
    t = lo * std::exp((m - 1.0) / d.alpha);
  if (flip) t = T - t;
  return std::min(std::max(t, 0.0), T);
}

SampleDesign draw_design(const UniversalDensity& d, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("draw_design: n must be >= 1");
  SampleDesign out;
  out.alpha = d.alpha;
  out.horizon = d.horizon;
  out.total_mass = density_mass(d);
  out.times.resize(n);
  out.weights.resize(n);
  rng::SplitMix gen(seed);
  for (int i = 0; i < n; ++i) {
    const double t = inverse_cdf(d, gen.uniform());
    out.times[i] = t;
    out.weights[i] =
        std::sqrt(out.total_mass / (n * d.horizon * density_eval(d, t)));
  }
  return out;
}

}  // namespace actkrr
