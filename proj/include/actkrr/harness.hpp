#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "actkrr/discretize.hpp"
#include "actkrr/kernel.hpp"
#include "actkrr/regression.hpp"
#include "actkrr/statdim.hpp"

namespace actkrr {

// Fixed adversarial noise families with closed-form ||z||_T^2.
struct NoiseModel {
  enum class Kind { none, offset, sinusoid, spike_train };

  Kind kind = Kind::none;
  double offset = 0.0;  // offset level b
  double freq = 0.0;    // sinusoid frequency (Hz)
  double amp = 0.0;     // sinusoid / spike amplitude
  double period = 0.0;  // spike period
  double width = 0.0;   // spike on-width

  double eval(double t) const;
  double norm2(double T) const;  // (1/T) * integral of z^2
  // discontinuity locations inside [0,T]; quadrature splits here
  std::vector<double> breakpoints(double T) const;

  static NoiseModel none();
  static NoiseModel make_offset(double b);
  static NoiseModel make_sinusoid(double freq, double amp);
  static NoiseModel make_spike_train(double period, double amp, double width);
};

// Ground truth for one experiment: an RKHS signal under a known spectral
// density, plus an additive noise function on [0,T].
struct Scenario {
  double horizon = 1.0;
  KernelSpec truth;
  RkhsSignal signal;
  NoiseModel noise;
  double epsilon = 1e-3;
  double delta = 0.2;

  std::complex<double> y(double t) const { return signal_eval(signal, truth, t); }
  std::complex<double> observed(double t) const { return y(t) + noise.eval(t); }
  void validate() const;
};

struct ScenarioConfig {
  double T = 10.0;
  int q = 1;        // truth mixture components
  int centers = 4;  // signal centers
  double epsilon = 1e-3;
  double delta = 0.2;
  double W = 4.0;  // truth mean range [0,W]
  double m = 0.5;  // truth lengthscale range [m,M], drawn log-uniformly
  double M = 2.0;
  NoiseModel noise;

  void validate() const;
};

// Random truth spec from the continuous ranges and a unit-energy signal;
// deterministic per seed.
Scenario synth_scenario(const ScenarioConfig& cfg, std::uint64_t seed);

struct BudgetConfig {
  double c_alpha = 2.0;
  double C0 = 10.0;
};

// Everything about a tuning run that does not depend on the trial seed:
// the kernel family, the sampler parameter, and the sample count.
struct TunePlan {
  std::vector<KernelSpec> specs;
  double alpha = 0.0;
  long n = 0;
  double s_max = 0.0;
};

TunePlan make_plan(std::vector<KernelSpec> specs, double T, double epsilon,
                   double delta, const BudgetConfig& budget,
                   std::optional<long> n_override, int jobs = 0);

struct TrialRecord {
  long trial = 0;
  std::uint64_t seed = 0;
  long n = 0;
  long Q = 0;
  long chosen_index = -1;
  std::string chosen_params;
  double sample_obj = 0.0;
  double cont_obj = 0.0;
  double interp_err = 0.0;
  double noise_norm2 = 0.0;
  double energy = 0.0;
  double bound_rhs = 0.0;
  double ratio = 0.0;
  double wall_ms = 0.0;
};

// One end-to-end tuning trial: sample times from the universal density,
// fit every kernel in the plan on the shared design, select by sample
// objective, then score the winner against the ground truth.
TrialRecord run_trial(const Scenario& sc, const TunePlan& plan, std::uint64_t seed,
                      long trial_id);

// Grid construction + budget + one trial.
TrialRecord run_tune(const Scenario& sc, const GridConfig& grid,
                     const BudgetConfig& budget, std::optional<long> n_override,
                     std::uint64_t seed);

struct SweepConfig {
  std::string axis = "n";  // one of n, Q, sigma_max, epsilon
  std::vector<double> values;
  int trials = 10;
  std::optional<long> n_override;
};

struct HarnessConfig {
  ScenarioConfig scenario;
  GridConfig grid;
  BudgetConfig budget;
  SweepConfig sweep;
};

std::string csv_header();
std::string to_csv(const TrialRecord& r);
std::string format_double(double x);  // 17 significant digits
std::string format_spec(const KernelSpec& spec);

// One TrialRecord row per trial plus one aggregate success-rate row per sweep
// point (success: ratio <= 1). Returns all CSV lines, header first; rows are
// ordered by trial id regardless of the number of jobs.
std::vector<std::string> run_sweep(const HarnessConfig& cfg, std::uint64_t seed,
                                   int jobs = 0);

// Seed-stream labels; substream seed = rng::derive(seed, label).
namespace streams {
inline constexpr std::uint64_t kDesign = 1;
inline constexpr std::uint64_t kTruth = 2;
inline constexpr std::uint64_t kSignal = 3;
inline constexpr std::uint64_t kFamily = 4;
}  // namespace streams

}  // namespace actkrr
