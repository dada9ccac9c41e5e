#include "actkrr/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "actkrr/parallel.hpp"
#include "actkrr/rng.hpp"

namespace actkrr {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double NoiseModel::eval(double t) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::offset:
      return offset;
    case Kind::sinusoid:
      return amp * std::sin(2.0 * kPi * freq * t);
    case Kind::spike_train: {
      const double phase = t - period * std::floor(t / period);
      return phase < width ? amp : 0.0;
    }
  }
  return 0.0;
}

double NoiseModel::norm2(double T) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::offset:
      return offset * offset;
    case Kind::sinusoid: {
      // (1/T) int a^2 sin^2(2 pi f t) = a^2 (1/2 - sin(4 pi f T)/(8 pi f T))
      const double x = 4.0 * kPi * freq * T;
      return amp * amp * (0.5 - std::sin(x) / (2.0 * x));
    }
    case Kind::spike_train: {
      const double full = std::floor(T / period);
      const double rem = T - full * period;
      const double on = full * width + std::min(width, rem);
      return amp * amp * on / T;
    }
  }
  return 0.0;
}

std::vector<double> NoiseModel::breakpoints(double T) const {
  std::vector<double> out;
  if (kind != Kind::spike_train) return out;
  for (double base = 0.0; base < T; base += period) {
    if (base > 0.0) out.push_back(base);
    if (base + width < T) out.push_back(base + width);
  }
  std::sort(out.begin(), out.end());
  return out;
}

NoiseModel NoiseModel::none() { return {}; }

NoiseModel NoiseModel::make_offset(double b) {
  NoiseModel z;
  z.kind = Kind::offset;
  z.offset = b;
  return z;
}

NoiseModel NoiseModel::make_sinusoid(double freq, double amp) {
  if (!(freq > 0.0)) throw std::invalid_argument("sinusoid noise: freq must be positive");
  NoiseModel z;
  z.kind = Kind::sinusoid;
  z.freq = freq;
  z.amp = amp;
  return z;
}

NoiseModel NoiseModel::make_spike_train(double period, double amp, double width) {
  if (!(period > 0.0 && width > 0.0 && width <= period))
    throw std::invalid_argument("spike noise: need 0 < width <= period");
  NoiseModel z;
  z.kind = Kind::spike_train;
  z.period = period;
  z.amp = amp;
  z.width = width;
  return z;
}

void Scenario::validate() const {
  truth.validate();
  signal.validate();
  if (!(epsilon > 0.0)) throw std::invalid_argument("scenario: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("scenario: delta must lie in (0,1)");
  for (double s : signal.centers)
    if (!(s >= 0.0 && s <= horizon))
      throw std::invalid_argument("scenario: signal centers must lie in [0,T]");
}

void ScenarioConfig::validate() const {
  if (!(T > 0.0)) throw std::invalid_argument("scenario config: T must be positive");
  if (q < 1) throw std::invalid_argument("scenario config: q must be >= 1");
  if (centers < 0) throw std::invalid_argument("scenario config: centers must be >= 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("scenario config: epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("scenario config: delta must lie in (0,1)");
  if (!(m > 0.0 && M >= m)) throw std::invalid_argument("scenario config: need 0 < m <= M");
  if (!(W >= 0.0)) throw std::invalid_argument("scenario config: W must be >= 0");
}

Scenario synth_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Scenario sc;
  sc.horizon = cfg.T;
  sc.epsilon = cfg.epsilon;
  sc.delta = cfg.delta;
  sc.noise = cfg.noise;

  rng::SplitMix truth_gen(rng::derive(seed, streams::kTruth));
  sc.truth.symmetric = true;
  for (int j = 0; j < cfg.q; ++j) {
    GaussianComponent c;
    c.mean = truth_gen.uniform(0.0, cfg.W);
    c.sigma = std::exp(truth_gen.uniform(std::log(cfg.m), std::log(cfg.M)));
    c.weight = 1.0;
    sc.truth.components.push_back(c);
  }

  rng::SplitMix sig_gen(rng::derive(seed, streams::kSignal));
  for (int j = 0; j < cfg.centers; ++j) {
    sc.signal.centers.push_back(sig_gen.uniform(0.0, cfg.T));
    sc.signal.coeffs.push_back(sig_gen.normal());
  }
  if (cfg.centers > 0) {
    const double e = signal_energy(sc.signal, sc.truth);
    if (e > 0.0) {
      const double scale = 1.0 / std::sqrt(e);
      for (auto& b : sc.signal.coeffs) b *= scale;
    }
  }
  return sc;
}

TunePlan make_plan(std::vector<KernelSpec> specs, double T, double epsilon,
                   double delta, const BudgetConfig& budget,
                   std::optional<long> n_override, int jobs) {
  if (specs.empty()) throw std::invalid_argument("make_plan: empty kernel family");
  TunePlan plan;
  plan.alpha = alpha_for(specs, T, epsilon, budget.c_alpha, 32, jobs, &plan.s_max);
  if (n_override) {
    if (*n_override < 1) throw std::invalid_argument("make_plan: n override must be >= 1");
    plan.n = *n_override;
  } else {
    plan.n = sample_budget(std::max(plan.s_max, 1.0),
                           static_cast<long>(specs.size()), delta, budget.C0);
  }
  plan.specs = std::move(specs);
  return plan;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_spec(const KernelSpec& spec) {
  std::string out;
  for (std::size_t j = 0; j < spec.components.size(); ++j) {
    if (j > 0) out += "|";
    out += "c=" + format_double(spec.components[j].mean) +
           ";sigma=" + format_double(spec.components[j].sigma) +
           ";w=" + format_double(spec.components[j].weight);
  }
  return out;
}

namespace {

// Quadrature over [0,T] split at the noise discontinuities, with an initial
// panel count fine enough for the noise oscillation.
double scenario_norm2(const Scenario& sc, const TimeFn& f) {
  quad::DoublingOptions opt;
  opt.rel_tol = 1e-7;
  if (sc.noise.kind == NoiseModel::Kind::sinusoid) {
    const double cycles = sc.noise.freq * sc.horizon;
    int p = 32;
    while (p < 2.0 * cycles && p < 8192) p *= 2;
    opt.init_panels = p;
  } else {
    opt.init_panels = 32;
  }
  std::vector<double> cuts = sc.noise.breakpoints(sc.horizon);
  cuts.insert(cuts.begin(), 0.0);
  cuts.push_back(sc.horizon);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    auto sq = [&](double t) { return std::norm(f(t)); };
    acc += quad::integrate_doubling(sq, cuts[i], cuts[i + 1], opt);
  }
  return acc / sc.horizon;
}

}  // namespace

TrialRecord run_trial(const Scenario& sc, const TunePlan& plan, std::uint64_t seed,
                      long trial_id) {
  const auto t0 = std::chrono::steady_clock::now();
  sc.validate();
  if (plan.specs.empty()) throw std::invalid_argument("run_trial: empty plan");

  const UniversalDensity density(plan.alpha, sc.horizon);
  const SampleDesign design =
      draw_design(density, static_cast<int>(plan.n), rng::derive(seed, streams::kDesign));

  const int n = design.n();
  ObservationVector ybar(n);
  for (int i = 0; i < n; ++i)
    ybar(i) = design.weights[i] * sc.observed(design.times[i]);

  int best = -1;
  double best_obj = std::numeric_limits<double>::infinity();
  double best_reg = 0.0;
  Eigen::VectorXcd best_alpha;
  for (std::size_t q = 0; q < plan.specs.size(); ++q) {
    const Eigen::MatrixXcd K = kernel_matrix(plan.specs[q], design);
    Eigen::VectorXcd alpha = krr_fit(K, ybar, sc.epsilon);
    const Eigen::VectorXcd Ka = K * alpha;
    const double reg = alpha.dot(Ka).real();
    const double obj = (Ka - ybar).squaredNorm() + sc.epsilon * reg;
    if (best < 0 || obj < best_obj) {
      best = static_cast<int>(q);
      best_obj = obj;
      best_reg = reg;
      best_alpha = std::move(alpha);
    }
  }

  const Interpolant ip{best_alpha, design, plan.specs[best], sc.epsilon};
  const double fit_term =
      scenario_norm2(sc, [&](double t) { return interpolant_eval(ip, t) - sc.observed(t); });
  const double cont_obj = fit_term + sc.epsilon * best_reg;

  Scenario noiseless = sc;
  noiseless.noise = NoiseModel::none();
  const double err =
      scenario_norm2(noiseless, [&](double t) { return sc.y(t) - interpolant_eval(ip, t); });

  TrialRecord r;
  r.trial = trial_id;
  r.seed = seed;
  r.n = plan.n;
  r.Q = static_cast<long>(plan.specs.size());
  r.chosen_index = best;
  r.chosen_params = format_spec(plan.specs[best]);
  r.sample_obj = best_obj;
  r.cont_obj = cont_obj;
  r.interp_err = err;
  r.noise_norm2 = sc.noise.norm2(sc.horizon);
  r.energy = signal_energy(sc.signal, sc.truth);
  const double C = 9.0 + 8.0 / sc.delta;
  r.bound_rhs = 2.0 * (C + 1.0) * r.noise_norm2 + 2.0 * C * sc.epsilon * r.energy;
  if (r.bound_rhs > 0.0)
    r.ratio = r.interp_err / r.bound_rhs;
  else
    r.ratio = r.interp_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  return r;
}

TrialRecord run_tune(const Scenario& sc, const GridConfig& grid,
                     const BudgetConfig& budget, std::optional<long> n_override,
                     std::uint64_t seed) {
  TunePlan plan = make_plan(sm_grid(grid), sc.horizon, sc.epsilon, sc.delta, budget,
                            n_override);
  return run_trial(sc, plan, seed, 0);
}

std::string csv_header() {
  return "trial,seed,n,Q,chosen_index,chosen_params,sample_obj,cont_obj,"
         "interp_err,noise_norm2,energy,bound_rhs,ratio,wall_ms";
}

std::string to_csv(const TrialRecord& r) {
  std::string out;
  out += std::to_string(r.trial);
  out += ',' + std::to_string(r.seed);
  out += ',' + std::to_string(r.n);
  out += ',' + std::to_string(r.Q);
  out += ',' + std::to_string(r.chosen_index);
  out += ',' + r.chosen_params;
  out += ',' + format_double(r.sample_obj);
  out += ',' + format_double(r.cont_obj);
  out += ',' + format_double(r.interp_err);
  out += ',' + format_double(r.noise_norm2);
  out += ',' + format_double(r.energy);
  out += ',' + format_double(r.bound_rhs);
  out += ',' + format_double(r.ratio);
  out += ',' + format_double(r.wall_ms);
  return out;
}

namespace {

TrialRecord aggregate_row(const std::string& axis, double value, long n, long Q,
                          const std::vector<TrialRecord>& trials,
                          std::uint64_t seed) {
  TrialRecord agg;
  agg.trial = -1;
  agg.seed = seed;
  agg.n = n;
  agg.Q = Q;
  agg.chosen_index = -1;
  agg.chosen_params = "agg:" + axis + "=" + format_double(value);
  int ok = 0;
  double wall = 0.0;
  for (const auto& t : trials) {
    if (t.ratio <= 1.0) ++ok;
    wall += t.wall_ms;
  }
  agg.ratio = trials.empty() ? 0.0 : static_cast<double>(ok) / trials.size();
  agg.wall_ms = wall;
  return agg;
}

}  // namespace

std::vector<std::string> run_sweep(const HarnessConfig& cfg, std::uint64_t seed,
                                   int jobs) {
  const std::string& axis = cfg.sweep.axis;
  if (axis != "n" && axis != "Q" && axis != "sigma_max" && axis != "epsilon")
    throw std::invalid_argument("run_sweep: unknown axis " + axis);
  if (cfg.sweep.values.empty()) throw std::invalid_argument("run_sweep: no sweep values");
  if (cfg.sweep.trials < 1) throw std::invalid_argument("run_sweep: trials must be >= 1");

  std::vector<std::string> lines{csv_header()};
  long next_trial = 0;

  // n sweeps reuse one plan family; only the sample count changes.
  std::optional<TunePlan> base_plan;
  if (axis == "n") {
    base_plan = make_plan(sm_grid(cfg.grid), cfg.scenario.T, cfg.scenario.epsilon,
                          cfg.scenario.delta, cfg.budget, 1, jobs);
  }

  for (double value : cfg.sweep.values) {
    ScenarioConfig scfg = cfg.scenario;
    GridConfig grid = cfg.grid;
    std::optional<TunePlan> point_plan;

    if (axis == "n") {
      point_plan = *base_plan;
      point_plan->n = static_cast<long>(value);
      if (point_plan->n < 1) throw std::invalid_argument("run_sweep: n must be >= 1");
    } else if (axis == "sigma_max") {
      grid.M = value;
      point_plan = make_plan(sm_grid(grid), scfg.T, scfg.epsilon, scfg.delta,
                             cfg.budget, cfg.sweep.n_override, jobs);
    } else if (axis == "epsilon") {
      scfg.epsilon = value;
      point_plan = make_plan(sm_grid(grid), scfg.T, scfg.epsilon, scfg.delta,
                             cfg.budget, cfg.sweep.n_override, jobs);
    }
    // axis == "Q": per-trial family of size `value`, built around the truth

    const int trials = cfg.sweep.trials;
    std::vector<TrialRecord> records(trials);
    parallel_for(trials, jobs, [&](int k) {
      const long id = next_trial + k;
      const std::uint64_t tseed = rng::derive(seed, static_cast<std::uint64_t>(id));
      const Scenario sc = synth_scenario(scfg, tseed);
      if (axis == "Q") {
        const int Q = static_cast<int>(value);
        if (Q < 1) throw std::invalid_argument("run_sweep: Q must be >= 1");
        std::vector<KernelSpec> family{sc.truth};
        rng::SplitMix fam(rng::derive(tseed, streams::kFamily));
        for (int j = 1; j < Q; ++j) {
          KernelSpec spec;
          spec.symmetric = true;
          for (int comp = 0; comp < scfg.q; ++comp)
            spec.components.push_back(
                {fam.uniform(0.0, scfg.W),
                 std::exp(fam.uniform(std::log(scfg.m), std::log(scfg.M))), 1.0});
          family.push_back(spec);
        }
        const TunePlan plan = make_plan(std::move(family), scfg.T, scfg.epsilon,
                                        scfg.delta, cfg.budget, cfg.sweep.n_override, 1);
        records[k] = run_trial(sc, plan, tseed, id);
      } else {
        records[k] = run_trial(sc, *point_plan, tseed, id);
      }
    });

    for (const auto& r : records) lines.push_back(to_csv(r));
    lines.push_back(to_csv(aggregate_row(axis, value, records.front().n,
                                         records.front().Q, records, seed)));
    next_trial += trials;
  }
  return lines;
}

}  // namespace actkrr
