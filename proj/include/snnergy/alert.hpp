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

#include <string>

namespace snnergy {

// Thresholds that make a metric actionable. Defaults: sparsity below 60 %
// marks an inefficient SNN, 10 mW/cm² is the RF-emitting implant limit, and
// implanted batteries are expected to last ten years.
struct ActionabilityRules {
  double min_activation_sparsity = 0.60;  // alert when strictly below
  double max_power_density = 10.0;        // mW/cm², alert when strictly above
  double min_battery_years = 10.0;        // alert when strictly below
};

struct Alert {
  std::string metric;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<" or ">": the violated relation value vs threshold
  std::string rationale;

  friend bool operator==(const Alert&, const Alert&) = default;
};

inline const char* kSparsityRationale =
    "activation sparsity below the threshold indicates a model that does not exploit "
    "event-driven sparsity; reduce spiking activity";
inline const char* kPowerDensityRationale =
    "power density above the safe delivery limit for the target implant; reduce power or "
    "increase chip area";
inline const char* kBatteryRationale =
    "estimated battery life is shorter than the required implant lifetime; reduce average "
    "power";

}  // namespace snnergy
