#include "actkrr/io.hpp"

#include <fstream>
#include <stdexcept>

namespace actkrr {

using nlohmann::json;

void to_json(json& j, const KernelSpec& spec) {
  json comps = json::array();
  for (const auto& c : spec.components)
    comps.push_back({{"c", c.mean}, {"sigma", c.sigma}, {"w", c.weight}});
  j = json{{"components", comps}, {"symmetric", spec.symmetric}};
}

void from_json(const json& j, KernelSpec& spec) {
  spec.components.clear();
  for (const auto& c : j.at("components")) {
    spec.components.push_back(
        {c.at("c").get<double>(), c.at("sigma").get<double>(), c.at("w").get<double>()});
  }
  spec.symmetric = j.at("symmetric").get<bool>();
  spec.validate();
}

void to_json(json& j, const SampleDesign& d) {
  j = json{{"alpha", d.alpha},
           {"T", d.horizon},
           {"times", d.times},
           {"weights", d.weights},
           {"P", d.total_mass}};
}

void from_json(const json& j, SampleDesign& d) {
  d.alpha = j.at("alpha").get<double>();
  d.horizon = j.at("T").get<double>();
  d.times = j.at("times").get<std::vector<double>>();
  d.weights = j.at("weights").get<std::vector<double>>();
  d.total_mass = j.at("P").get<double>();
  if (d.times.size() != d.weights.size())
    throw std::invalid_argument("sample design: times/weights length mismatch");
}

void to_json(json& j, const GridConfig& g) {
  j = json{{"W", g.W},     {"m", g.m},         {"M", g.M},  {"rho", g.rho},
           {"gamma", g.gamma}, {"q", g.q}, {"cap", g.cap}};
}

void from_json(const json& j, GridConfig& g) {
  g.W = j.at("W").get<double>();
  g.m = j.at("m").get<double>();
  g.M = j.at("M").get<double>();
  g.rho = j.value("rho", 0.5);
  g.gamma = j.value("gamma", 0.5);
  g.q = j.value("q", 1);
  g.cap = j.value("cap", std::size_t{1000000});
  g.validate();
}

void to_json(json& j, const NoiseModel& z) {
  switch (z.kind) {
    case NoiseModel::Kind::none:
      j = json{{"type", "none"}};
      break;
    case NoiseModel::Kind::offset:
      j = json{{"type", "offset"}, {"b", z.offset}};
      break;
    case NoiseModel::Kind::sinusoid:
      j = json{{"type", "sinusoid"}, {"freq", z.freq}, {"amp", z.amp}};
      break;
    case NoiseModel::Kind::spike_train:
      j = json{{"type", "spike_train"},
               {"period", z.period},
               {"amp", z.amp},
               {"width", z.width}};
      break;
  }
}

void from_json(const json& j, NoiseModel& z) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "none")
    z = NoiseModel::none();
  else if (type == "offset")
    z = NoiseModel::make_offset(j.at("b").get<double>());
  else if (type == "sinusoid")
    z = NoiseModel::make_sinusoid(j.at("freq").get<double>(), j.at("amp").get<double>());
  else if (type == "spike_train")
    z = NoiseModel::make_spike_train(j.at("period").get<double>(),
                                     j.at("amp").get<double>(),
                                     j.at("width").get<double>());
  else
    throw std::invalid_argument("noise: unknown type " + type);
}

void to_json(json& j, const ScenarioConfig& c) {
  j = json{{"T", c.T},       {"q", c.q},           {"centers", c.centers},
           {"epsilon", c.epsilon}, {"delta", c.delta}, {"W", c.W},
           {"m", c.m},       {"M", c.M},           {"noise", c.noise}};
}

void from_json(const json& j, ScenarioConfig& c) {
  c.T = j.at("T").get<double>();
  c.q = j.value("q", 1);
  c.centers = j.value("centers", 4);
  c.epsilon = j.at("epsilon").get<double>();
  c.delta = j.at("delta").get<double>();
  c.W = j.at("W").get<double>();
  c.m = j.at("m").get<double>();
  c.M = j.at("M").get<double>();
  if (j.contains("noise")) c.noise = j.at("noise").get<NoiseModel>();
  c.validate();
}

void to_json(json& j, const BudgetConfig& b) {
  j = json{{"c_alpha", b.c_alpha}, {"C0", b.C0}};
}

void from_json(const json& j, BudgetConfig& b) {
  b.c_alpha = j.value("c_alpha", 2.0);
  b.C0 = j.value("C0", 10.0);
}

void to_json(json& j, const SweepConfig& s) {
  j = json{{"axis", s.axis}, {"values", s.values}, {"trials", s.trials}};
  if (s.n_override) j["n_override"] = *s.n_override;
}

void from_json(const json& j, SweepConfig& s) {
  s.axis = j.value("axis", std::string("n"));
  s.values = j.value("values", std::vector<double>{});
  s.trials = j.value("trials", 10);
  if (j.contains("n_override")) s.n_override = j.at("n_override").get<long>();
}

void to_json(json& j, const HarnessConfig& c) {
  j = json{{"scenario", c.scenario}, {"grid", c.grid}, {"budget", c.budget},
           {"sweep", c.sweep}};
}

void from_json(const json& j, HarnessConfig& c) {
  c.scenario = j.at("scenario").get<ScenarioConfig>();
  c.grid = j.at("grid").get<GridConfig>();
  if (j.contains("budget")) c.budget = j.at("budget").get<BudgetConfig>();
  if (j.contains("sweep")) c.sweep = j.at("sweep").get<SweepConfig>();
}

void to_json(json& j, const Scenario& sc) {
  std::vector<double> re, im;
  for (const auto& b : sc.signal.coeffs) {
    re.push_back(b.real());
    im.push_back(b.imag());
  }
  j = json{{"T", sc.horizon},
           {"epsilon", sc.epsilon},
           {"delta", sc.delta},
           {"truth", sc.truth},
           {"signal", json{{"centers", sc.signal.centers},
                           {"coeffs_re", re},
                           {"coeffs_im", im}}},
           {"noise", sc.noise}};
}

void from_json(const json& j, Scenario& sc) {
  sc.horizon = j.at("T").get<double>();
  sc.epsilon = j.at("epsilon").get<double>();
  sc.delta = j.at("delta").get<double>();
  sc.truth = j.at("truth").get<KernelSpec>();
  const auto& sig = j.at("signal");
  sc.signal.centers = sig.at("centers").get<std::vector<double>>();
  const auto re = sig.at("coeffs_re").get<std::vector<double>>();
  const auto im = sig.at("coeffs_im").get<std::vector<double>>();
  if (re.size() != im.size() || re.size() != sc.signal.centers.size())
    throw std::invalid_argument("scenario: signal arrays must share length");
  sc.signal.coeffs.clear();
  for (std::size_t i = 0; i < re.size(); ++i)
    sc.signal.coeffs.emplace_back(re[i], im[i]);
  sc.noise = j.at("noise").get<NoiseModel>();
  sc.validate();
}

HarnessConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  in >> j;
  return j.get<HarnessConfig>();
}

}  // namespace actkrr
