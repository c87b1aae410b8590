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

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "energy.hpp"
#include "error.hpp"

namespace snnergy {

enum class SourceTable { table1, table2, supporting };

// Which direction of change is an improvement in energy terms.
enum class Polarity { lower_is_better, higher_is_better };

inline std::string_view to_string(SourceTable t) {
  switch (t) {
    case SourceTable::table1: return "table1";
    case SourceTable::table2: return "table2";
    case SourceTable::supporting: return "supporting";
  }
  return "?";
}

inline std::string_view to_string(Polarity p) {
  return p == Polarity::lower_is_better ? "lower-is-better" : "higher-is-better";
}

inline Polarity parse_polarity(std::string_view s) {
  if (s == "lower-is-better") return Polarity::lower_is_better;
  if (s == "higher-is-better") return Polarity::higher_is_better;
  throw ParseError("unknown polarity '" + std::string(s) + "'");
}

/// Classification of one energy metric.
///
/// The four flags are accessibility (obtainable without neuromorphic
/// hardware), high fidelity (faithful to real energy use), actionability (has
/// an interpretation that tells the developer to act) and trend-based (useful
/// when tracked across versions). `assumes_estimation` marks flags that hold
/// only given a reliable spec-driven energy estimate; `trend_inherent` marks
/// metrics that are ratios over versions by construction.
///
/// Supporting quantities (raw MAC/AC splits, average power, ...) are not
/// catalogued metrics; they borrow the flags of `parent` so every report
/// entry still carries a classification.
struct MetricDescriptor {
  std::string key;
  std::string name;
  std::string unit;
  bool accessibility = false;
  bool high_fidelity = false;
  bool actionability = false;
  bool trend_based = false;
  bool assumes_estimation = false;
  bool trend_inherent = false;
  Provenance provenance_class = Provenance::computed;
  SourceTable source_table = SourceTable::table1;
  Polarity polarity = Polarity::lower_is_better;
  std::string parent;
};

namespace detail {

inline MetricDescriptor row(std::string key, std::string name, std::string unit, bool acc, bool hf, bool act,
                            bool trend, Provenance prov, SourceTable table, Polarity pol, bool star = false,
                            bool inherent = false) {
  MetricDescriptor d;
  d.key = std::move(key);
  d.name = std::move(name);
  d.unit = std::move(unit);
  d.accessibility = acc;
  d.high_fidelity = hf;
  d.actionability = act;
  d.trend_based = trend;
  d.assumes_estimation = star;
  d.trend_inherent = inherent;
  d.provenance_class = prov;
  d.source_table = table;
  d.polarity = pol;
  return d;
}

}  // namespace detail

inline const std::vector<MetricDescriptor>& builtin_catalog() {
  using P = Provenance;
  using T = SourceTable;
  constexpr auto lo = Polarity::lower_is_better;
  constexpr auto hi = Polarity::higher_is_better;
  static const std::vector<MetricDescriptor> catalog = {
      detail::row("parameters", "Parameters", "count", true, false, false, false, P::computed, T::table1, lo),
      detail::row("effective_synops", "Effective Synaptic Operations", "SOP", true, false, false, true,
                  P::computed, T::table1, lo),
      detail::row("membrane_updates", "Membrane Updates", "updates", true, false, false, true, P::computed,
                  T::table1, lo),
      detail::row("activation_sparsity", "Activation Sparsity", "ratio", true, false, true, true, P::computed,
                  T::table1, hi),
      detail::row("memory_footprint", "Memory Footprint", "bytes", true, false, false, false, P::computed,
                  T::table1, lo),
      detail::row("connection_sparsity", "Connection Sparsity", "ratio", true, false, false, false,
                  P::computed, T::table1, hi),
      detail::row("memory_accesses", "Memory Accesses", "accesses", true, false, false, true, P::computed,
                  T::table1, lo),
      detail::row("training_time", "Training Time", "s", true, false, false, true, P::ingested, T::table1, lo),
      detail::row("energy_per_inference", "Energy per Inference", "J", false, true, false, false,
                  P::estimated, T::table1, lo),
      detail::row("energy_per_learning", "Energy per Learning", "J", false, true, false, false, P::estimated,
                  T::table1, lo),
      detail::row("energy_area_fom", "Energy Area FoM", "W*cm^2*s/channel", false, true, false, false,
                  P::estimated, T::table1, lo),
      detail::row("peak_energy_per_sop", "Peak per Energy Consumption", "pJ/SOP", false, true, false, false,
                  P::estimated, T::table1, lo),
      detail::row("power_density", "Power Density", "mW/cm^2", false, true, true, false, P::estimated,
                  T::table1, lo),

      detail::row("energy_delay_product", "Energy Delay Product", "J*s", true, true, false, false,
                  P::estimated, T::table2, lo, true),
      detail::row("speedup", "Speedup", "ratio", true, true, true, true, P::computed, T::table2, hi, false, true),
      detail::row("greenup", "Greenup", "ratio", true, true, true, true, P::estimated, T::table2, hi, true, true),
      detail::row("powerup", "Powerup", "ratio", true, true, true, true, P::estimated, T::table2, lo, true, true),
      detail::row("estimated_battery_life", "Estimated battery life", "years", true, true, true, false,
                  P::estimated, T::table2, hi, true),
      detail::row("inferences_per_battery_cycle", "Inferences per battery cycle", "inferences", true, true,
                  true, false, P::estimated, T::table2, hi, true),
      detail::row("accuracy_efficiency_tradeoff", "Accuracy-Efficiency Tradeoff", "accuracy/J", true, true,
                  true, true, P::estimated, T::table2, hi, true),
  };
  return catalog;
}

namespace detail {

inline MetricDescriptor supporting(std::string key, std::string name, std::string unit, Polarity pol,
                                   std::string parent) {
  MetricDescriptor d;
  for (const auto& m : builtin_catalog())
    if (m.key == parent) d = m;
  d.key = std::move(key);
  d.name = std::move(name);
  d.unit = std::move(unit);
  d.polarity = pol;
  d.source_table = SourceTable::supporting;
  d.parent = std::move(parent);
  return d;
}

}  // namespace detail

// Quantities reported next to the catalogued metrics and accepted in
// snapshots without registration.
inline const std::vector<MetricDescriptor>& supporting_metrics() {
  constexpr auto lo = Polarity::lower_is_better;
  constexpr auto hi = Polarity::higher_is_better;
  using detail::supporting;
  static const std::vector<MetricDescriptor> list = {
      supporting("trainable_parameters", "Trainable parameters", "count", lo, "parameters"),
      supporting("synaptic_macs", "Synaptic MACs", "ops", lo, "effective_synops"),
      supporting("synaptic_acs", "Synaptic ACs", "ops", lo, "effective_synops"),
      supporting("dense_synops", "Dense synaptic operations (upper bound)", "SOP", lo, "effective_synops"),
      supporting("membrane_updates_dense", "Membrane updates (dense)", "updates", lo, "membrane_updates"),
      supporting("membrane_macs", "Membrane leak MACs", "ops", lo, "membrane_updates"),
      supporting("memory_reads", "Memory reads", "accesses", lo, "memory_accesses"),
      supporting("memory_writes", "Memory writes", "accesses", lo, "memory_accesses"),
      supporting("model_energy_per_inference", "Model energy per inference", "J", lo, "energy_per_inference"),
      supporting("overhead_energy_per_inference", "Overhead energy per inference", "J", lo,
                 "energy_per_inference"),
      supporting("energy_synop", "Synaptic operation energy", "J", lo, "energy_per_inference"),
      supporting("energy_membrane", "Membrane update energy", "J", lo, "energy_per_inference"),
      supporting("energy_memory", "Memory access energy", "J", lo, "energy_per_inference"),
      supporting("energy_layer_crossing", "Inter-layer processing energy", "J", lo, "energy_per_inference"),
      supporting("energy_static", "Static leakage energy", "J", lo, "energy_per_inference"),
      supporting("energy_adc", "ADC energy", "J", lo, "energy_per_inference"),
      supporting("energy_tx", "Transmission energy", "J", lo, "energy_per_inference"),
      supporting("inference_time", "Inference time", "s", lo, "speedup"),
      supporting("average_power", "Average power", "W", lo, "power_density"),
      supporting("peak_window_power", "Peak window power", "W", lo, "peak_energy_per_sop"),
      supporting("battery_life_seconds", "Estimated battery life (seconds)", "s", hi, "estimated_battery_life"),
      supporting("inferences_per_battery_cycle_duty", "Inferences per battery cycle (duty-cycled)",
                 "inferences", hi, "inferences_per_battery_cycle"),
      supporting("efficiency_ratio_old", "Efficiency ratio (old)", "accuracy/J", hi,
                 "accuracy_efficiency_tradeoff"),
      supporting("marginal_energy_cost", "Marginal energy cost", "J/accuracy", lo, "accuracy_efficiency_tradeoff"),
      supporting("energy_delay_product_old", "Energy Delay Product (old)", "J*s", lo, "energy_delay_product"),
  };
  return list;
}

// Catalog first, then supporting quantities.
inline const MetricDescriptor* find_builtin(std::string_view key) {
  for (const auto& m : builtin_catalog())
    if (m.key == key || m.name == key) return &m;
  for (const auto& m : supporting_metrics())
    if (m.key == key) return &m;
  return nullptr;
}

inline const MetricDescriptor& lookup_metric(std::string_view key) {
  if (const auto* m = find_builtin(key)) return *m;
  throw ValidationError("unknown metric '" + std::string(key) + "'");
}

}  // namespace snnergy
