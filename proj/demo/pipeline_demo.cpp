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

// Builds a small recurrent model in code, simulates a rate-encoded input and
// prints the energy report next to the simulator's dense oracle counts.

#include <iostream>

#include <snnergy/snnergy.hpp>

int main() {
  using namespace snnergy;

  ModelDescriptor model;
  model.name = "demo-recurrent";
  model.version = "v1";
  model.layers.push_back({LayerKind::input, 4, 4, {}, {}, std::nullopt, {}, {}});

  LayerDescriptor hidden;
  hidden.kind = LayerKind::recurrent;
  hidden.in_size = 4;
  hidden.out_size = 3;
  hidden.weights = Matrix(3, 4, 0.4);
  hidden.weights(0, 3) = 0.0;
  hidden.recurrent_weights = Matrix(3, 3, 0.0);
  hidden.recurrent_weights(1, 0) = 0.3;
  hidden.neuron = {0.8, 1.0, ResetMode::subtract_threshold};
  model.layers.push_back(hidden);
  validate(model);

  Workload workload;
  workload.config.timesteps = 20;
  workload.config.seed = 2024;
  workload.config.input_mode = InputMode::rate_encode;
  workload.rates = std::vector<double>{0.1, 0.3, 0.5, 0.7};

  HardwareSpec spec;
  spec.e_mac = 4e-12;
  spec.e_ac = 1e-12;
  spec.e_read = 2e-12;
  spec.e_write = 2e-12;
  spec.e_membrane_update = 0.5e-12;
  spec.static_power = 1e-6;
  spec.chip_area = 0.1;

  const auto result = run_pipeline(model, workload, &spec);
  const auto input = rate_encode(*workload.rates, workload.config.timesteps, workload.config.seed);
  const auto oracle = dense_oracle_counts(model, input, workload.config);

  std::cout << render_text(report_from_snapshot(to_snapshot(result), {}, ActionabilityRules{}));
  std::cout << "oracle agrees: " << (oracle.counts == result.ops ? "yes" : "no") << '\n';
  return oracle.counts == result.ops ? 0 : 1;
}
