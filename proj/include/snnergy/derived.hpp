/*
 * Copyright 2026 The snnergy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "alert.hpp"
#include "energy.hpp"
#include "error.hpp"

namespace snnergy {

inline constexpr double kSecondsPerYear = 365.25 * 24.0 * 3600.0;

struct VersionMeasurement {
  std::string version;
  double energy = 0.0;  // joules
  double time = 0.0;    // seconds
  std::optional<double> accuracy;
};

// old_over_new: ratios read "> 1 is better" and Powerup > 1 means the new
// version draws more average power. new_over_old reproduces the literal
// Time_new/Time_old and Energy_new/Energy_old forms.
enum class RatioOrientation { old_over_new, new_over_old };

inline double energy_delay_product(double energy, double time) {
  if (energy < 0.0 || time < 0.0) throw ValidationError("EDP: energy and time must be >= 0");
  return energy * time;
}

inline double speedup(const VersionMeasurement& old_m, const VersionMeasurement& new_m,
                      RatioOrientation o = RatioOrientation::old_over_new) {
  if (!(old_m.time > 0.0) || !(new_m.time > 0.0)) throw ValidationError("speedup: times must be positive");
  return o == RatioOrientation::old_over_new ? old_m.time / new_m.time : new_m.time / old_m.time;
}

inline double greenup(const VersionMeasurement& old_m, const VersionMeasurement& new_m,
                      RatioOrientation o = RatioOrientation::old_over_new) {
  if (!(old_m.energy > 0.0) || !(new_m.energy > 0.0))
    throw ValidationError("greenup: energies must be positive");
  return o == RatioOrientation::old_over_new ? old_m.energy / new_m.energy : new_m.energy / old_m.energy;
}

inline double powerup(double speedup_ratio, double greenup_ratio) {
  if (!(speedup_ratio > 0.0) || !(greenup_ratio > 0.0))
    throw ValidationError("powerup: speedup and greenup must be positive");
  return speedup_ratio / greenup_ratio;
}

struct BatteryLife {
  double seconds = 0.0;
  double years = 0.0;
  bool meets_requirement = false;  // life >= required years
};

inline double usable_battery_joules(const HardwareSpec& spec) {
  if (!spec.battery) throw CapabilityError("battery metrics require a battery capacity in the hardware spec");
  auto c = spec.battery->usable_capacity();
  if (!c) throw CapabilityError("battery capacity needs battery_capacity_joules or mAh and nominal voltage");
  return *c;
}

inline BatteryLife estimated_battery_life(double avg_power, const HardwareSpec& spec,
                                          double required_years = ActionabilityRules{}.min_battery_years) {
  if (!(avg_power > 0.0)) throw ValidationError("battery life: average power must be positive");
  BatteryLife life;
  life.seconds = usable_battery_joules(spec) / avg_power;
  life.years = life.seconds / kSecondsPerYear;
  life.meets_requirement = life.seconds >= required_years * kSecondsPerYear;
  return life;
}

struct DutyCycle {
  double inference_rate = 0.0;  // Hz
  double static_power = 0.0;    // W
};

struct InferenceBudget {
  std::uint64_t idealized = 0;
  std::optional<std::uint64_t> duty_cycled;
};

// Whole inferences a full charge pays for; the duty-cycled count also
// charges each inference its share of standby drain.
inline InferenceBudget inferences_per_battery_cycle(double e_per_inference, const HardwareSpec& spec,
                                                    std::optional<DutyCycle> duty = std::nullopt) {
  if (!(e_per_inference > 0.0)) throw ValidationError("inferences per battery cycle: zero inference energy");
  const double capacity = usable_battery_joules(spec);
  auto whole = [](double x) {
    constexpr double cap = static_cast<double>(std::numeric_limits<std::uint64_t>::max());
    return x >= cap ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(std::floor(x));
  };
  InferenceBudget b;
  b.idealized = whole(capacity / e_per_inference);
  if (duty) {
    if (!(duty->inference_rate > 0.0) || duty->static_power < 0.0)
      throw ValidationError("inferences per battery cycle: inference_rate must be positive");
    b.duty_cycled = whole(capacity / (e_per_inference + duty->static_power / duty->inference_rate));
  }
  return b;
}

inline double efficiency_ratio(const VersionMeasurement& m) {
  if (!m.accuracy) throw ValidationError("efficiency ratio: accuracy missing for version '" + m.version + "'");
  if (!(m.energy > 0.0)) throw ValidationError("efficiency ratio: energy must be positive");
  return *m.accuracy / m.energy;
}

struct TradeoffReport {
  double efficiency_ratio_old = 0.0;
  double efficiency_ratio_new = 0.0;
  std::optional<double> marginal_energy_cost;  // joules per unit of accuracy
  bool accuracy_regressed = false;
  bool accuracy_unchanged = false;
};

// Efficiency ratios alone hide whether extra energy bought accuracy; the
// marginal cost (E_new - E_old) / (acc_new - acc_old) is reported only for
// genuine accuracy gains.
inline TradeoffReport accuracy_energy_tradeoff(const VersionMeasurement& old_m, const VersionMeasurement& new_m) {
  TradeoffReport r;
  r.efficiency_ratio_old = efficiency_ratio(old_m);
  r.efficiency_ratio_new = efficiency_ratio(new_m);
  const double dacc = *new_m.accuracy - *old_m.accuracy;
  if (dacc > 0.0)
    r.marginal_energy_cost = (new_m.energy - old_m.energy) / dacc;
  else if (dacc < 0.0)
    r.accuracy_regressed = true;
  else
    r.accuracy_unchanged = true;
  return r;
}

}  // namespace snnergy
