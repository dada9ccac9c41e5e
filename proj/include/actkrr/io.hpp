#pragma once

#include <json.hpp>
#include <string>

#include "actkrr/discretize.hpp"
#include "actkrr/harness.hpp"
#include "actkrr/kernel.hpp"
#include "actkrr/sampling.hpp"

namespace actkrr {

// JSON shapes:
//   KernelSpec   {"components":[{"c":..,"sigma":..,"w":..}],"symmetric":bool}
//   SampleDesign {"alpha":..,"T":..,"times":[..],"weights":[..],"P":..}
//   GridConfig   {"W":..,"m":..,"M":..,"rho":..,"gamma":..,"q":..,"cap":..}
//   config file  {"scenario":{..},"grid":{..},"budget":{..},"sweep":{..}}

void to_json(nlohmann::json& j, const KernelSpec& spec);
void from_json(const nlohmann::json& j, KernelSpec& spec);

void to_json(nlohmann::json& j, const SampleDesign& d);
void from_json(const nlohmann::json& j, SampleDesign& d);

void to_json(nlohmann::json& j, const GridConfig& g);
void from_json(const nlohmann::json& j, GridConfig& g);

void to_json(nlohmann::json& j, const NoiseModel& z);
void from_json(const nlohmann::json& j, NoiseModel& z);

void to_json(nlohmann::json& j, const ScenarioConfig& c);
void from_json(const nlohmann::json& j, ScenarioConfig& c);

void to_json(nlohmann::json& j, const BudgetConfig& b);
void from_json(const nlohmann::json& j, BudgetConfig& b);

void to_json(nlohmann::json& j, const SweepConfig& s);
void from_json(const nlohmann::json& j, SweepConfig& s);

void to_json(nlohmann::json& j, const HarnessConfig& c);
void from_json(const nlohmann::json& j, HarnessConfig& c);

void to_json(nlohmann::json& j, const Scenario& sc);
void from_json(const nlohmann::json& j, Scenario& sc);

HarnessConfig load_config(const std::string& path);

}  // namespace actkrr
