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
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "counts.hpp"
#include "error.hpp"
#include "simulator.hpp"
#include "workload.hpp"

namespace snnergy {

// Where a reported number comes from. Hardware-side metrics produced here are
// always `estimated`; values recorded from instruments or other tools are
// `measured` or `ingested`.
enum class Provenance { computed, estimated, ingested, measured };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::computed: return "computed";
    case Provenance::estimated: return "estimated";
    case Provenance::ingested: return "ingested";
    case Provenance::measured: return "measured";
  }
  return "?";
}

inline Provenance parse_provenance(std::string_view s) {
  if (s == "computed") return Provenance::computed;
  if (s == "estimated") return Provenance::estimated;
  if (s == "ingested") return Provenance::ingested;
  if (s == "measured") return Provenance::measured;
  throw ParseError("unknown provenance '" + std::string(s) + "'");
}

enum class MembraneCountMode { effective, dense };

struct BatterySpec {
  std::optional<double> capacity_joules;
  std::optional<double> capacity_mah;
  std::optional<double> nominal_voltage;
  double usable_fraction = 1.0;

  // Joules; mAh x V x 3.6 when no direct energy capacity is given.
  std::optional<double> capacity() const {
    if (capacity_joules) return *capacity_joules;
    if (capacity_mah && nominal_voltage) return *capacity_mah * *nominal_voltage * 3.6;
    return std::nullopt;
  }

  std::optional<double> usable_capacity() const {
    auto c = capacity();
    if (!c) return std::nullopt;
    return *c * usable_fraction;
  }
};

// Per-operation energy costs and device figures, all SI (J, W, cm², Hz).
struct HardwareSpec {
  double e_mac = 0.0;
  double e_ac = 0.0;
  double e_read = 0.0;
  double e_write = 0.0;
  double e_membrane_update = 0.0;
  double e_layer_crossing = 0.0;
  MembraneCountMode membrane_count_mode = MembraneCountMode::effective;

  double static_power = 0.0;
  double adc_energy_per_sample = 0.0;
  double adc_samples_per_inference = 0.0;
  double tx_energy_per_bit = 0.0;
  double tx_bits_per_inference = 0.0;

  std::optional<double> chip_area;           // cm²
  std::optional<double> channels;
  std::optional<double> sampling_frequency;  // Hz
  double power_density_limit = 10.0;         // mW/cm²
  std::optional<BatterySpec> battery;
};

inline void validate(const HardwareSpec& s) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError(std::string("hardware spec: ") + name + " must be finite and >= 0");
  };
  check(s.e_mac, "e_mac");
  check(s.e_ac, "e_ac");
  check(s.e_read, "e_read");
  check(s.e_write, "e_write");
  check(s.e_membrane_update, "e_membrane_update");
  check(s.e_layer_crossing, "e_layer_crossing");
  check(s.static_power, "static_power");
  check(s.adc_energy_per_sample, "adc_energy_per_sample");
  check(s.adc_samples_per_inference, "adc_samples_per_inference");
  check(s.tx_energy_per_bit, "tx_energy_per_bit");
  check(s.tx_bits_per_inference, "tx_bits_per_inference");
  check(s.power_density_limit, "power_density_limit");
  if (s.chip_area) check(*s.chip_area, "chip_area");
  if (s.channels) check(*s.channels, "channels");
  if (s.sampling_frequency) check(*s.sampling_frequency, "sampling_frequency");
  if (s.battery) {
    const auto& b = *s.battery;
    if (b.capacity_joules) check(*b.capacity_joules, "battery_capacity_joules");
    if (b.capacity_mah) check(*b.capacity_mah, "battery_capacity_mah");
    if (b.nominal_voltage) check(*b.nominal_voltage, "battery_nominal_voltage");
    if (!(b.usable_fraction > 0.0 && b.usable_fraction <= 1.0))
      throw ValidationError("hardware spec: battery_usable_fraction must be in (0,1]");
  }
}

struct ModelEnergy {
  double synop = 0.0;
  double membrane = 0.0;
  double memory = 0.0;
  double layer_crossing = 0.0;
  double total = 0.0;
};

struct OverheadEnergy {
  double static_energy = 0.0;
  double adc = 0.0;
  double tx = 0.0;
  double total = 0.0;
};

struct EnergyBreakdown {
  ModelEnergy model;
  OverheadEnergy overhead;
  double total = 0.0;
  double duration = 0.0;  // seconds
  Provenance provenance = Provenance::estimated;
};

namespace detail {

inline ModelEnergy model_energy(const OpCounts& ops, const MemoryAccessCounts& mem, const HardwareSpec& spec) {
  ModelEnergy m;
  const auto updates = spec.membrane_count_mode == MembraneCountMode::effective
                           ? ops.membrane_updates_effective
                           : ops.membrane_updates_dense;
  m.synop = static_cast<double>(ops.macs) * spec.e_mac + static_cast<double>(ops.acs) * spec.e_ac;
  m.membrane = static_cast<double>(updates) * spec.e_membrane_update;
  m.memory = static_cast<double>(mem.reads) * spec.e_read + static_cast<double>(mem.writes) * spec.e_write;
  m.layer_crossing = static_cast<double>(ops.layer_crossings) * spec.e_layer_crossing;
  m.total = m.synop + m.membrane + m.memory + m.layer_crossing;
  return m;
}

}  // namespace detail

// Splits energy into what the SNN itself costs and what the rest of the
// device costs. Overheads are fixed per inference.
inline EnergyBreakdown estimate_energy(const OpCounts& ops, const MemoryAccessCounts& mem,
                                       const HardwareSpec& spec, double duration) {
  validate(spec);
  if (!(duration > 0.0) || !std::isfinite(duration))
    throw ValidationError("estimate_energy: duration must be positive");
  EnergyBreakdown b;
  b.duration = duration;
  b.model = detail::model_energy(ops, mem, spec);
  b.overhead.static_energy = spec.static_power * duration;
  b.overhead.adc = spec.adc_energy_per_sample * spec.adc_samples_per_inference;
  b.overhead.tx = spec.tx_energy_per_bit * spec.tx_bits_per_inference;
  b.overhead.total = b.overhead.static_energy + b.overhead.adc + b.overhead.tx;
  b.total = b.model.total + b.overhead.total;
  return b;
}

inline double energy_per_inference(const EnergyBreakdown& b) { return b.total; }
inline double model_energy_per_inference(const EnergyBreakdown& b) { return b.model.total; }

// Training is not simulated; the learning-pass counts come from elsewhere.
inline double energy_per_learning_sample(const OpCounts& learning_ops, const MemoryAccessCounts& learning_mem,
                                         const HardwareSpec& spec, double duration) {
  return estimate_energy(learning_ops, learning_mem, spec, duration).total;
}

inline double average_power(const EnergyBreakdown& b) {
  if (!(b.duration > 0.0)) throw ValidationError("average_power: zero duration");
  return b.total / b.duration;
}

struct PowerDensity {
  double mw_per_cm2 = 0.0;
  double limit = 10.0;
  bool violation = false;  // strictly above the limit
  Provenance provenance = Provenance::estimated;
};

inline PowerDensity power_density(double power_watts, const HardwareSpec& spec) {
  if (!spec.chip_area) throw CapabilityError("power density requires chip_area in the hardware spec");
  if (!(*spec.chip_area > 0.0)) throw ValidationError("power density: chip_area must be positive");
  PowerDensity d;
  d.mw_per_cm2 = power_watts * 1e3 / *spec.chip_area;
  d.limit = spec.power_density_limit;
  d.violation = d.mw_per_cm2 > d.limit;
  return d;
}

struct SopEnergy {
  double average_pj_per_sop = 0.0;
  double peak_window_power = 0.0;  // watts, busiest timestep
  Provenance provenance = Provenance::estimated;
};

// The peak window is one timestep: its model energy over timestep_duration.
inline SopEnergy energy_per_sop(const EnergyBreakdown& b, const OpCounts& ops, const WorkloadTrace& trace,
                                const HardwareSpec& spec, MemoryAccessOptions mem_opts = {}) {
  if (ops.total_sops() == 0) throw ValidationError("energy per SOP: zero synaptic operations");
  if (!(trace.timestep_duration > 0.0)) throw ValidationError("energy per SOP: zero timestep duration");
  SopEnergy r;
  r.average_pj_per_sop = b.model.total / static_cast<double>(ops.total_sops()) * 1e12;
  for (const auto& step : trace.steps) {
    const double e = detail::model_energy(step, memory_accesses(step, mem_opts), spec).total;
    r.peak_window_power = std::max(r.peak_window_power, e / trace.timestep_duration);
  }
  return r;
}

struct AreaFom {
  double value = 0.0;
  static constexpr std::string_view unit = "W*cm^2*s/channel";
  // The formula (power / channels) * area / sampling_frequency is assumed.
  static constexpr bool assumed_formula = true;
  Provenance provenance = Provenance::estimated;
};

inline AreaFom energy_area_fom(double power_watts, const HardwareSpec& spec) {
  if (!spec.channels || !spec.chip_area || !spec.sampling_frequency)
    throw CapabilityError("energy-area FoM requires channels, chip_area and sampling_frequency");
  if (!(*spec.channels > 0.0 && *spec.chip_area > 0.0 && *spec.sampling_frequency > 0.0))
    throw ValidationError("energy-area FoM: channels, chip_area and sampling_frequency must be positive");
  return {power_watts / *spec.channels * *spec.chip_area / *spec.sampling_frequency};
}

// ---------------------------------------------------------------------------
// Hardware-spec file: flat JSON object, SI units, unknown keys rejected.

inline HardwareSpec hwspec_from_json(const nlohmann::json& j) {
  const std::string where = "hardware spec: ";
  if (!j.is_object()) throw ParseError(where + "must be a flat object");
  detail::reject_unknown(j,
                         {"e_mac", "e_ac", "e_read", "e_write", "e_membrane_update", "e_layer_crossing",
                          "membrane_count_mode", "static_power", "adc_energy_per_sample",
                          "adc_samples_per_inference", "tx_energy_per_bit", "tx_bits_per_inference",
                          "chip_area", "channels", "sampling_frequency", "power_density_limit",
                          "battery_capacity_joules", "battery_capacity_mah", "battery_nominal_voltage",
                          "battery_usable_fraction", "comment"},
                         where);
  auto num = [&](const char* key) { return detail::required<double>(j, key, where); };
  auto opt = [&](const char* key) -> std::optional<double> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return num(key);
  };
  auto dflt = [&](const char* key, double d) { return opt(key).value_or(d); };

  HardwareSpec s;
  s.e_mac = num("e_mac");
  s.e_ac = num("e_ac");
  s.e_read = num("e_read");
  s.e_write = num("e_write");
  s.e_membrane_update = num("e_membrane_update");
  s.e_layer_crossing = dflt("e_layer_crossing", 0.0);
  if (j.contains("membrane_count_mode")) {
    const auto mode = detail::required<std::string>(j, "membrane_count_mode", where);
    if (mode == "effective")
      s.membrane_count_mode = MembraneCountMode::effective;
    else if (mode == "dense")
      s.membrane_count_mode = MembraneCountMode::dense;
    else
      throw ParseError(where + "membrane_count_mode must be 'effective' or 'dense'");
  }
  s.static_power = dflt("static_power", 0.0);
  s.adc_energy_per_sample = dflt("adc_energy_per_sample", 0.0);
  s.adc_samples_per_inference = dflt("adc_samples_per_inference", 0.0);
  s.tx_energy_per_bit = dflt("tx_energy_per_bit", 0.0);
  s.tx_bits_per_inference = dflt("tx_bits_per_inference", 0.0);
  s.chip_area = opt("chip_area");
  s.channels = opt("channels");
  s.sampling_frequency = opt("sampling_frequency");
  s.power_density_limit = dflt("power_density_limit", 10.0);

  BatterySpec b;
  b.capacity_joules = opt("battery_capacity_joules");
  b.capacity_mah = opt("battery_capacity_mah");
  b.nominal_voltage = opt("battery_nominal_voltage");
  b.usable_fraction = dflt("battery_usable_fraction", 1.0);
  if (b.capacity_joules || b.capacity_mah || b.nominal_voltage || j.contains("battery_usable_fraction"))
    s.battery = b;

  validate(s);
  return s;
}

inline HardwareSpec load_hwspec(const std::filesystem::path& path) {
  return hwspec_from_json(detail::read_json_file(path));
}

}  // namespace snnergy
