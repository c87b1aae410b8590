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

namespace snnergy {

// Operation tallies for one timestep or a whole inference.
//
// macs/acs are synaptic operations only. Leak multiplications performed while
// updating membrane potentials are kept apart in membrane_macs so that
// synaptic-op metrics are not inflated by neuron dynamics.
struct OpCounts {
  std::uint64_t macs = 0;
  std::uint64_t acs = 0;
  std::uint64_t membrane_macs = 0;
  std::uint64_t membrane_updates_effective = 0;  // neuron-timesteps whose state changed
  std::uint64_t membrane_updates_dense = 0;      // every non-input neuron-timestep
  std::uint64_t layer_crossings = 0;             // (timestep, layer) pairs with incoming events

  std::uint64_t total_sops() const { return macs + acs; }

  OpCounts& operator+=(const OpCounts& o) {
    macs += o.macs;
    acs += o.acs;
    membrane_macs += o.membrane_macs;
    membrane_updates_effective += o.membrane_updates_effective;
    membrane_updates_dense += o.membrane_updates_dense;
    layer_crossings += o.layer_crossings;
    return *this;
  }
  friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }

  OpCounts scaled(std::uint64_t k) const {
    return {macs * k, acs * k, membrane_macs * k, membrane_updates_effective * k,
            membrane_updates_dense * k, layer_crossings * k};
  }

  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

}  // namespace snnergy
