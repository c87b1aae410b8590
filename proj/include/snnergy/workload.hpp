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
#include <span>

#include "alert.hpp"
#include "counts.hpp"
#include "error.hpp"
#include "model.hpp"
#include "simulator.hpp"

namespace snnergy {

struct MemoryAccessCounts {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;

  friend bool operator==(const MemoryAccessCounts&, const MemoryAccessCounts&) = default;
};

struct MemoryAccessOptions {
  // Leak MACs from membrane updates are fed to the MAC tally unless disabled.
  bool include_membrane_macs = true;
};

struct SparsityReport {
  double activation_sparsity = 1.0;
  std::uint64_t opportunities = 0;
  std::uint64_t spikes = 0;
  std::optional<Alert> alert;
};

inline OpCounts effective_synops(const WorkloadTrace& trace) { return trace.totals(); }

// Worst case: every neuron spikes every timestep over every synapse.
inline OpCounts dense_synops(const ModelDescriptor& model, std::size_t timesteps,
                             InputMode input_mode = InputMode::direct_spikes) {
  OpCounts per_step;
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    const auto& l = model.layers[k];
    if (!l.weighted()) continue;
    const std::uint64_t ff = l.weights.size();
    if (k == 1 && input_mode == InputMode::analog)
      per_step.macs += ff;
    else
      per_step.acs += ff;
    per_step.acs += l.recurrent_weights.size();
    per_step.membrane_updates_effective += l.out_size;
    per_step.membrane_updates_dense += l.out_size;
    if (l.neuron.beta != 0.0 && l.neuron.beta != 1.0) per_step.membrane_macs += l.out_size;
    per_step.layer_crossings += 1;
  }
  return per_step.scaled(timesteps);
}

// Derived access counts: three loads and one store per MAC, two loads and
// one store per AC.
inline MemoryAccessCounts memory_accesses(const OpCounts& ops, MemoryAccessOptions opts = {}) {
  const std::uint64_t macs = ops.macs + (opts.include_membrane_macs ? ops.membrane_macs : 0);
  return {3 * macs + 2 * ops.acs, macs + ops.acs};
}

inline SparsityReport sparsity_from_totals(std::uint64_t spikes, std::uint64_t opportunities,
                                           double threshold = ActionabilityRules{}.min_activation_sparsity) {
  if (opportunities == 0) throw ValidationError("activation sparsity: zero opportunities (empty trace)");
  SparsityReport r;
  r.spikes = spikes;
  r.opportunities = opportunities;
  r.activation_sparsity = 1.0 - static_cast<double>(spikes) / static_cast<double>(opportunities);
  if (r.activation_sparsity < threshold)
    r.alert = Alert{"activation_sparsity", r.activation_sparsity, threshold, "<", kSparsityRationale};
  return r;
}

// Input-layer spikes are workload, not model behaviour, and are excluded.
inline SparsityReport activation_sparsity(const WorkloadTrace& trace,
                                          double threshold = ActionabilityRules{}.min_activation_sparsity) {
  return sparsity_from_totals(trace.spikes(), trace.opportunities(), threshold);
}

// Group of inferences: spikes and opportunities are pooled.
inline SparsityReport activation_sparsity(std::span<const WorkloadTrace> traces,
                                          double threshold = ActionabilityRules{}.min_activation_sparsity) {
  std::uint64_t spikes = 0;
  std::uint64_t opportunities = 0;
  for (const auto& t : traces) {
    spikes += t.spikes();
    opportunities += t.opportunities();
  }
  return sparsity_from_totals(spikes, opportunities, threshold);
}

}  // namespace snnergy
