#pragma once

#include <cstdint>
#include <vector>

namespace actkrr {

// Kernel-independent sampling density on [0,T]:
//   alpha/min(t, T-t) on the middle band [T/alpha^6, T(1 - 1/alpha^6)],
//   alpha^6/T on the two edge bands.
// Valid for alpha^6 >= 2, i.e. alpha >= 2^(1/6).
struct UniversalDensity {
  double alpha = 2.0;
  double horizon = 1.0;  // T

  UniversalDensity(double alpha_, double horizon_);
  double edge_width() const { return horizon / pow6(); }
  double pow6() const;
};

double density_eval(const UniversalDensity& d, double t);

// Total mass P = integral of the unnormalized density over [0,T].
// Closed form 12*alpha*ln(alpha) - 2*alpha*ln(2) + 2; independent of T.
double density_mass(const UniversalDensity& d);

// CDF of the normalized density, in [0,1].
double density_cdf(const UniversalDensity& d, double t);

// Piecewise-analytic inverse of density_cdf (linear on the edge bands,
// exponential on the middle band).
double inverse_cdf(const UniversalDensity& d, double u);

// n times drawn i.i.d. from the normalized density, with reweighting values
// v_i = sqrt(P / (n*T*density(t_i))).
struct SampleDesign {
  double alpha = 0.0;
  double horizon = 0.0;
  double total_mass = 0.0;  // P
  std::vector<double> times;
  std::vector<double> weights;

  int n() const { return static_cast<int>(times.size()); }
};

SampleDesign draw_design(const UniversalDensity& d, int n, std::uint64_t seed);

}  // namespace actkrr
