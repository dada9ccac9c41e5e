#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "actkrr/kernel.hpp"

namespace actkrr {

// Hyperparameter net over q-component spectral mixtures: means in [0,W]
// (mirrored by the symmetric kernel flag), frequency std-devs in [m,M],
// weights fixed to one. rho scales the additive mean step (rho*m); gamma is
// the multiplicative lengthscale ratio minus one. The main-text preset is
// rho = gamma = 1.
struct GridConfig {
  double W = 1.0;
  double m = 0.25;
  double M = 0.5;
  double rho = 0.5;
  double gamma = 0.5;
  int q = 1;
  std::size_t cap = 1000000;

  void validate() const;
};

// {0, rho*m, 2*rho*m, ...} up through the largest multiple below W, plus W.
// Every c in [0,W] has a grid point within rho*m.
std::vector<double> mean_grid(const GridConfig& cfg);

// Geometric grid with ratio (1+gamma) starting at m*(1+gamma), extended until
// it reaches M*(1+gamma). Every s in [m,M] has a grid point g with
// s*(1+gamma) <= g <= s*(1+gamma)^2.
std::vector<double> lengthscale_grid(const GridConfig& cfg);

// All symmetric q-component specs with means/lengthscales on the grids and
// unit weights, deduplicated by unordered component multiset.
std::vector<KernelSpec> sm_grid(const GridConfig& cfg);

// Number of specs sm_grid would produce (multisets of size q).
std::size_t sm_grid_size(const GridConfig& cfg);

// Rounds a continuous (mean, lengthscale) pair onto the grids: nearest mean
// point, and the smallest grid lengthscale >= sigma*(1+gamma).
std::pair<double, double> round_params(double c_hat, double sigma_hat,
                                       const std::vector<double>& means,
                                       const std::vector<double>& sigmas,
                                       const GridConfig& cfg);

// Worst-case density ratio incurred by rounding:
//   (1+gamma)^2 * exp(rho^2/2 * 1/(1 - 1/(1+gamma)^2)).
double distortion_constant(double rho, double gamma);

}  // namespace actkrr
