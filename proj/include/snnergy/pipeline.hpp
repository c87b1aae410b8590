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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "alert.hpp"
#include "derived.hpp"
#include "energy.hpp"
#include "model.hpp"
#include "simulator.hpp"
#include "trendstore.hpp"
#include "workload.hpp"

namespace snnergy {

struct PipelineOptions {
  MemoryAccessOptions memory;
  ActionabilityRules rules;
  std::optional<DutyCycle> duty;
  std::optional<double> accuracy;
  // Externally supplied learning-pass counts (training is not simulated).
  std::optional<OpCounts> learning_ops;
  std::optional<double> learning_duration;
};

// Static metrics of a model alone.
struct StaticMetrics {
  ParameterCount parameters;
  std::optional<double> connection_sparsity;  // absent for input-only models
  std::uint64_t memory_footprint = 0;
};

inline StaticMetrics analyze_model(const ModelDescriptor& model) {
  StaticMetrics s;
  s.parameters = count_parameters(model);
  try {
    s.connection_sparsity = connection_sparsity(model);
  } catch (const ValidationError&) {
  }
  s.memory_footprint = memory_footprint(model);
  return s;
}

// Everything the hardware spec lets us derive from one inference.
struct EstimateResult {
  OpCounts ops;
  MemoryAccessCounts memory;
  EnergyBreakdown breakdown;
  double average_power = 0.0;
  std::optional<SopEnergy> sop;
  std::optional<PowerDensity> density;
  std::optional<AreaFom> fom;
  std::optional<BatteryLife> battery_life;
  std::optional<InferenceBudget> budget;
  std::optional<double> learning_energy;
  // Metrics skipped for lack of spec fields, with the reason.
  std::vector<std::pair<std::string, std::string>> unavailable;
};

// `trace` is optional: counts-only estimates have no per-timestep windows.
inline EstimateResult estimate_all(const OpCounts& ops, double duration, const HardwareSpec& spec,
                                   const WorkloadTrace* trace, const PipelineOptions& opts = {}) {
  EstimateResult r;
  r.ops = ops;
  r.memory = memory_accesses(ops, opts.memory);
  r.breakdown = estimate_energy(ops, r.memory, spec, duration);
  r.average_power = average_power(r.breakdown);

  if (ops.total_sops() == 0)
    r.unavailable.emplace_back("peak_energy_per_sop", "no synaptic operations");
  else if (!trace)
    r.unavailable.emplace_back("peak_energy_per_sop", "needs a trace for per-timestep windows");
  else
    r.sop = energy_per_sop(r.breakdown, ops, *trace, spec, opts.memory);

  try {
    r.density = power_density(r.average_power, spec);
  } catch (const CapabilityError& e) {
    r.unavailable.emplace_back("power_density", e.what());
  }
  try {
    r.fom = energy_area_fom(r.average_power, spec);
  } catch (const CapabilityError& e) {
    r.unavailable.emplace_back("energy_area_fom", e.what());
  }
  try {
    if (r.average_power > 0.0)
      r.battery_life = estimated_battery_life(r.average_power, spec, opts.rules.min_battery_years);
    if (r.breakdown.total > 0.0) r.budget = inferences_per_battery_cycle(r.breakdown.total, spec, opts.duty);
  } catch (const CapabilityError& e) {
    r.unavailable.emplace_back("estimated_battery_life", e.what());
    r.unavailable.emplace_back("inferences_per_battery_cycle", e.what());
  }
  if (opts.learning_ops) {
    const auto lmem = memory_accesses(*opts.learning_ops, opts.memory);
    r.learning_energy =
        energy_per_learning_sample(*opts.learning_ops, lmem, spec, opts.learning_duration.value_or(duration));
  } else {
    r.unavailable.emplace_back("energy_per_learning", "no learning-pass counts supplied");
  }
  return r;
}

struct PipelineResult {
  std::string model_name;
  std::string model_version;
  StaticMetrics statics;
  WorkloadTrace trace;
  OpCounts ops;
  OpCounts dense;
  SparsityReport sparsity;
  std::optional<EstimateResult> estimate;
  std::optional<double> accuracy;
};

inline PipelineResult run_pipeline(const ModelDescriptor& model, const Workload& workload,
                                   const HardwareSpec* spec, const PipelineOptions& opts = {}) {
  PipelineResult r;
  r.model_name = model.name;
  r.model_version = model.version;
  r.statics = analyze_model(model);
  r.trace = simulate(model, workload);
  r.ops = effective_synops(r.trace);
  r.dense = dense_synops(model, workload.config.timesteps, workload.config.input_mode);
  r.sparsity = activation_sparsity(r.trace, opts.rules.min_activation_sparsity);
  if (spec) r.estimate = estimate_all(r.ops, r.trace.duration(), *spec, &r.trace, opts);
  r.accuracy = opts.accuracy;
  return r;
}

// Values keyed by catalog / supporting metric keys.
inline std::map<std::string, double> static_values(const StaticMetrics& s) {
  std::map<std::string, double> v;
  v["parameters"] = static_cast<double>(s.parameters.total);
  v["trainable_parameters"] = static_cast<double>(s.parameters.trainable);
  if (s.connection_sparsity) v["connection_sparsity"] = *s.connection_sparsity;
  v["memory_footprint"] = static_cast<double>(s.memory_footprint);
  return v;
}

inline std::map<std::string, double> workload_values(const OpCounts& ops, const MemoryAccessCounts& mem) {
  std::map<std::string, double> v;
  v["effective_synops"] = static_cast<double>(ops.total_sops());
  v["synaptic_macs"] = static_cast<double>(ops.macs);
  v["synaptic_acs"] = static_cast<double>(ops.acs);
  v["membrane_updates"] = static_cast<double>(ops.membrane_updates_effective);
  v["membrane_updates_dense"] = static_cast<double>(ops.membrane_updates_dense);
  v["membrane_macs"] = static_cast<double>(ops.membrane_macs);
  v["memory_accesses"] = static_cast<double>(mem.reads + mem.writes);
  v["memory_reads"] = static_cast<double>(mem.reads);
  v["memory_writes"] = static_cast<double>(mem.writes);
  return v;
}

inline std::map<std::string, double> estimate_values(const EstimateResult& e, std::optional<double> accuracy) {
  std::map<std::string, double> v;
  const auto& b = e.breakdown;
  v["energy_per_inference"] = energy_per_inference(b);
  v["model_energy_per_inference"] = model_energy_per_inference(b);
  v["overhead_energy_per_inference"] = b.overhead.total;
  v["energy_synop"] = b.model.synop;
  v["energy_membrane"] = b.model.membrane;
  v["energy_memory"] = b.model.memory;
  v["energy_layer_crossing"] = b.model.layer_crossing;
  v["energy_static"] = b.overhead.static_energy;
  v["energy_adc"] = b.overhead.adc;
  v["energy_tx"] = b.overhead.tx;
  v["inference_time"] = b.duration;
  v["average_power"] = e.average_power;
  v["energy_delay_product"] = energy_delay_product(b.total, b.duration);
  if (e.sop) {
    v["peak_energy_per_sop"] = e.sop->average_pj_per_sop;
    v["peak_window_power"] = e.sop->peak_window_power;
  }
  if (e.density) v["power_density"] = e.density->mw_per_cm2;
  if (e.fom) v["energy_area_fom"] = e.fom->value;
  if (e.battery_life) {
    v["estimated_battery_life"] = e.battery_life->years;
    v["battery_life_seconds"] = e.battery_life->seconds;
  }
  if (e.budget) {
    v["inferences_per_battery_cycle"] = static_cast<double>(e.budget->idealized);
    if (e.budget->duty_cycled) v["inferences_per_battery_cycle_duty"] = static_cast<double>(*e.budget->duty_cycled);
  }
  if (e.learning_energy) v["energy_per_learning"] = *e.learning_energy;
  if (accuracy && b.total > 0.0)
    v["accuracy_efficiency_tradeoff"] = efficiency_ratio({"", b.total, b.duration, accuracy});
  return v;
}

inline MetricSnapshot to_snapshot(const PipelineResult& r, std::int64_t timestamp = 0, std::string notes = {}) {
  MetricSnapshot s;
  s.model_name = r.model_name;
  s.version = r.model_version;
  s.timestamp = timestamp;
  s.accuracy = r.accuracy;
  s.notes = std::move(notes);
  s.values = static_values(r.statics);
  const auto mem = r.estimate ? r.estimate->memory : memory_accesses(r.ops);
  s.values.merge(workload_values(r.ops, mem));
  s.values["dense_synops"] = static_cast<double>(r.dense.total_sops());
  s.values["activation_sparsity"] = r.sparsity.activation_sparsity;
  if (r.estimate) s.values.merge(estimate_values(*r.estimate, r.accuracy));
  for (const auto& [k, v] : s.values) s.provenance[k] = s.provenance_of(k);
  return s;
}

}  // namespace snnergy
