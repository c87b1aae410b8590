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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "counts.hpp"
#include "error.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace snnergy {

struct NeuronState {
  double v = 0.0;  // membrane potential
};

// Binary neuron x timestep matrix.
class SpikeTrain {
public:
  SpikeTrain() = default;
  SpikeTrain(std::size_t neurons, std::size_t timesteps)
      : neurons_(neurons), timesteps_(timesteps), bits_(neurons * timesteps, 0) {}

  std::size_t neurons() const { return neurons_; }
  std::size_t timesteps() const { return timesteps_; }

  bool spiked(std::size_t neuron, std::size_t t) const { return bits_[neuron * timesteps_ + t] != 0; }
  void set(std::size_t neuron, std::size_t t, bool spike = true) {
    bits_[neuron * timesteps_ + t] = spike ? 1 : 0;
  }

  std::uint64_t count() const {
    return static_cast<std::uint64_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
  }

  // (neuron, timestep) pairs ordered by timestep, then neuron.
  std::vector<std::pair<std::size_t, std::size_t>> events() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t t = 0; t < timesteps_; ++t)
      for (std::size_t n = 0; n < neurons_; ++n)
        if (spiked(n, t)) out.emplace_back(n, t);
    return out;
  }

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;

private:
  std::size_t neurons_ = 0;
  std::size_t timesteps_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Real-valued input currents (neurons x timesteps). Every nonzero entry is
// multiplied into the first layer's weights, so it costs MACs rather than ACs.
struct AnalogInput {
  Matrix values;
};

enum class InputMode { direct_spikes, rate_encode, analog };

struct SimulationConfig {
  std::size_t timesteps = 1;
  std::uint64_t seed = 0;
  InputMode input_mode = InputMode::direct_spikes;
  double timestep_duration = 1e-3;  // seconds
};

struct WorkloadTrace {
  std::string model_name;
  std::string model_version;
  std::size_t timesteps = 0;
  double timestep_duration = 0.0;
  bool analog_input = false;
  // Indexed by layer; entry 0 is the input (nonzero mask for analog input).
  std::vector<SpikeTrain> layer_spikes;
  // One entry per timestep.
  std::vector<OpCounts> steps;

  OpCounts totals() const {
    OpCounts sum;
    for (const auto& s : steps) sum += s;
    return sum;
  }

  double duration() const { return static_cast<double>(timesteps) * timestep_duration; }

  // Neuron-timestep slots over the non-input layers.
  std::uint64_t opportunities() const {
    std::uint64_t n = 0;
    for (std::size_t k = 1; k < layer_spikes.size(); ++k)
      n += static_cast<std::uint64_t>(layer_spikes[k].neurons()) * layer_spikes[k].timesteps();
    return n;
  }

  std::uint64_t spikes() const {
    std::uint64_t n = 0;
    for (std::size_t k = 1; k < layer_spikes.size(); ++k) n += layer_spikes[k].count();
    return n;
  }

  friend bool operator==(const WorkloadTrace&, const WorkloadTrace&) = default;
};

// Result of the exhaustive reference simulation.
struct OracleResult {
  OpCounts counts;
  std::vector<SpikeTrain> layer_spikes;
};

inline std::string_view to_string(InputMode m) {
  switch (m) {
    case InputMode::direct_spikes: return "direct-spikes";
    case InputMode::rate_encode: return "rate-encode";
    case InputMode::analog: return "analog";
  }
  return "?";
}

// Each neuron fires independently per timestep with probability values[i].
// Draw order: timestep-major, neuron-minor, one SplitMix64 uniform per slot.
inline SpikeTrain rate_encode(std::span<const double> values, std::size_t timesteps, std::uint64_t seed) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!(values[i] >= 0.0 && values[i] <= 1.0))
      throw ValidationError("rate_encode: value " + std::to_string(i) + " outside [0,1]");
  SpikeTrain train(values.size(), timesteps);
  SplitMix64 rng(seed);
  for (std::size_t t = 0; t < timesteps; ++t)
    for (std::size_t i = 0; i < values.size(); ++i)
      if (rng.uniform() < values[i]) train.set(i, t);
  return train;
}

struct LifStep {
  NeuronState state;
  bool spike = false;
};

inline LifStep step_lif(NeuronState state, double input_current, const NeuronParams& params) {
  double v = params.beta * state.v + input_current;
  if (v >= params.threshold) {
    v = params.reset_mode == ResetMode::to_zero ? 0.0 : v - params.threshold;
    return {{v}, true};
  }
  return {{v}, false};
}

namespace detail {

inline void check_inputs(const ModelDescriptor& model, std::size_t neurons, std::size_t timesteps,
                         const SimulationConfig& config) {
  if (config.timesteps < 1) throw ValidationError("simulation: timesteps must be >= 1");
  if (!(config.timestep_duration > 0.0) || !std::isfinite(config.timestep_duration))
    throw ValidationError("simulation: timestep_duration must be positive");
  if (model.layers.empty()) throw ValidationError("simulation: model has no layers");
  if (neurons != model.input_size())
    throw ValidationError("dimension mismatch: input has " + std::to_string(neurons) +
                          " neurons, input layer has " + std::to_string(model.input_size()));
  if (timesteps != config.timesteps)
    throw ValidationError("dimension mismatch: input has " + std::to_string(timesteps) +
                          " timesteps, config declares " + std::to_string(config.timesteps));
}

// Outgoing nonzero synapses, grouped by presynaptic neuron (CSR).
struct Fanout {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;
  std::vector<double> weights;

  explicit Fanout(const Matrix& w) : offsets(w.cols + 1, 0) {
    for (std::size_t pre = 0; pre < w.cols; ++pre) {
      for (std::size_t post = 0; post < w.rows; ++post) {
        if (w(post, pre) != 0.0) {
          targets.push_back(post);
          weights.push_back(w(post, pre));
        }
      }
      offsets[pre + 1] = targets.size();
    }
  }
};

struct ActiveInput {
  std::size_t neuron;
  double value;
};

template <typename InputAt>
WorkloadTrace simulate_events(const ModelDescriptor& model, std::size_t input_neurons, bool analog,
                              InputAt&& input_at, const SimulationConfig& config) {
  const std::size_t layers = model.layers.size();
  const std::size_t T = config.timesteps;

  std::vector<Fanout> forward;
  std::vector<std::optional<Fanout>> recurrent;
  forward.reserve(layers);
  recurrent.reserve(layers);
  for (const auto& l : model.layers) {
    forward.emplace_back(l.weights);
    recurrent.push_back(l.kind == LayerKind::recurrent ? std::optional<Fanout>(l.recurrent_weights)
                                                       : std::nullopt);
  }

  WorkloadTrace trace;
  trace.model_name = model.name;
  trace.model_version = model.version;
  trace.timesteps = T;
  trace.timestep_duration = config.timestep_duration;
  trace.analog_input = analog;
  for (const auto& l : model.layers) trace.layer_spikes.emplace_back(l.out_size, T);
  trace.steps.reserve(T);

  std::vector<std::vector<double>> potential(layers);
  for (std::size_t k = 0; k < layers; ++k) potential[k].assign(model.layers[k].out_size, 0.0);

  // Firing neurons per layer at the current and previous timestep.
  std::vector<std::vector<std::size_t>> fired(layers), fired_prev(layers);
  std::vector<ActiveInput> active_input;
  std::vector<double> current;
  std::vector<std::uint32_t> events;

  for (std::size_t t = 0; t < T; ++t) {
    OpCounts step;

    active_input.clear();
    for (std::size_t i = 0; i < input_neurons; ++i) {
      const double x = input_at(i, t);
      if (x != 0.0) {
        active_input.push_back({i, x});
        trace.layer_spikes[0].set(i, t);
      }
    }

    for (std::size_t k = 1; k < layers; ++k) {
      const auto& layer = model.layers[k];
      const std::size_t out = layer.out_size;
      current.assign(out, 0.0);
      events.assign(out, 0);
      std::uint64_t layer_events = 0;

      const auto& fan = forward[k];
      auto deliver = [&](const Fanout& f, std::size_t pre, double x, std::uint64_t& tally) {
        for (std::size_t e = f.offsets[pre]; e < f.offsets[pre + 1]; ++e) {
          current[f.targets[e]] += f.weights[e] * x;
          ++events[f.targets[e]];
          ++tally;
          ++layer_events;
        }
      };

      if (k == 1) {
        for (const auto& in : active_input)
          deliver(fan, in.neuron, analog ? in.value : 1.0, analog ? step.macs : step.acs);
      } else {
        for (std::size_t pre : fired[k - 1]) deliver(fan, pre, 1.0, step.acs);
      }
      if (recurrent[k])
        for (std::size_t pre : fired_prev[k]) deliver(*recurrent[k], pre, 1.0, step.acs);
      if (layer_events > 0) ++step.layer_crossings;

      fired[k].clear();
      const double beta = layer.neuron.beta;
      for (std::size_t j = 0; j < out; ++j) {
        const double bias = layer.biases ? (*layer.biases)[j] : 0.0;
        const double v = potential[k][j];
        const auto r = step_lif({v}, current[j] + bias, layer.neuron);
        potential[k][j] = r.state.v;

        ++step.membrane_updates_dense;
        if ((beta != 1.0 && v != 0.0) || events[j] > 0 || bias != 0.0 || r.spike)
          ++step.membrane_updates_effective;
        if (beta != 0.0 && beta != 1.0 && v != 0.0) ++step.membrane_macs;
        if (r.spike) {
          fired[k].push_back(j);
          trace.layer_spikes[k].set(j, t);
        }
      }
    }
    std::swap(fired, fired_prev);
    trace.steps.push_back(step);
  }
  return trace;
}

}  // namespace detail

// Clock-driven LIF dynamics with event-driven operation counting: only
// nonzero synapses reached by an actual spike (or nonzero analog input)
// are touched.
//
// Per timestep, layers are updated in order and a layer sees its
// predecessor's spikes from the same timestep; recurrent synapses carry the
// layer's own spikes from the previous timestep. A neuron's input current is
// the feed-forward sum, then the recurrent sum, then the bias.
//
// A membrane update is counted when the state changes: leak with beta != 1 on
// a nonzero potential, any incoming synaptic event, a nonzero bias, or a
// spike/reset. Leak with beta outside {0, 1} on a nonzero potential costs one
// membrane MAC. Threshold comparison is free.
inline WorkloadTrace run_inference(const ModelDescriptor& model, const SpikeTrain& input,
                                   const SimulationConfig& config) {
  detail::check_inputs(model, input.neurons(), input.timesteps(), config);
  return detail::simulate_events(
      model, input.neurons(), false,
      [&](std::size_t i, std::size_t t) { return input.spiked(i, t) ? 1.0 : 0.0; }, config);
}

inline WorkloadTrace run_inference(const ModelDescriptor& model, const AnalogInput& input,
                                   const SimulationConfig& config) {
  detail::check_inputs(model, input.values.rows, input.values.cols, config);
  return detail::simulate_events(
      model, input.values.rows, true,
      [&](std::size_t i, std::size_t t) { return input.values(i, t); }, config);
}

namespace detail {

// Visits every synapse at every timestep; shares no code with
// simulate_events beyond the model types.
inline OracleResult dense_reference(const ModelDescriptor& model, const Matrix& stimulus, bool analog,
                                    std::size_t T) {
  const std::size_t L = model.layers.size();
  OracleResult res;
  // spikes[k][n][t] as doubles so they can be multiplied straight in.
  std::vector<Matrix> spikes;
  for (const auto& l : model.layers) spikes.emplace_back(l.out_size, T, 0.0);
  for (std::size_t i = 0; i < stimulus.rows; ++i)
    for (std::size_t t = 0; t < T; ++t) spikes[0](i, t) = stimulus(i, t);

  std::vector<std::vector<double>> v(L);
  for (std::size_t k = 0; k < L; ++k) v[k].assign(model.layers[k].out_size, 0.0);

  for (std::size_t t = 0; t < T; ++t) {
    for (std::size_t k = 1; k < L; ++k) {
      const auto& layer = model.layers[k];
      bool layer_touched = false;
      for (std::size_t j = 0; j < layer.out_size; ++j) {
        double acc = 0.0;
        std::uint64_t hits = 0;
        for (std::size_t i = 0; i < layer.in_size; ++i) {
          const double x = spikes[k - 1](i, t);
          const double w = layer.weights(j, i);
          acc += w * x;
          if (x != 0.0 && w != 0.0) {
            ++hits;
            if (k == 1 && analog)
              ++res.counts.macs;
            else
              ++res.counts.acs;
          }
        }
        if (layer.kind == LayerKind::recurrent && t > 0) {
          for (std::size_t m = 0; m < layer.out_size; ++m) {
            const double x = spikes[k](m, t - 1);
            const double w = layer.recurrent_weights(j, m);
            acc += w * x;
            if (x != 0.0 && w != 0.0) {
              ++hits;
              ++res.counts.acs;
            }
          }
        }
        layer_touched = layer_touched || hits > 0;

        const double bias = layer.biases ? (*layer.biases)[j] : 0.0;
        acc += bias;
        const double beta = layer.neuron.beta;
        const double old_v = v[k][j];
        double new_v = beta * old_v + acc;
        bool fire = false;
        if (new_v >= layer.neuron.threshold) {
          fire = true;
          if (layer.neuron.reset_mode == ResetMode::to_zero)
            new_v = 0.0;
          else
            new_v -= layer.neuron.threshold;
        }
        v[k][j] = new_v;
        spikes[k](j, t) = fire ? 1.0 : 0.0;

        res.counts.membrane_updates_dense += 1;
        const bool leaks = beta != 1.0 && old_v != 0.0;
        if (leaks || hits > 0 || bias != 0.0 || fire) res.counts.membrane_updates_effective += 1;
        if (leaks && beta != 0.0) res.counts.membrane_macs += 1;
      }
      if (layer_touched) ++res.counts.layer_crossings;
    }
  }

  for (std::size_t k = 0; k < L; ++k) {
    SpikeTrain train(model.layers[k].out_size, T);
    for (std::size_t n = 0; n < train.neurons(); ++n)
      for (std::size_t t = 0; t < T; ++t) train.set(n, t, spikes[k](n, t) != 0.0);
    res.layer_spikes.push_back(std::move(train));
  }
  return res;
}

}  // namespace detail

// Exhaustive correctness reference for run_inference.
inline OracleResult dense_oracle_counts(const ModelDescriptor& model, const SpikeTrain& input,
                                        const SimulationConfig& config) {
  detail::check_inputs(model, input.neurons(), input.timesteps(), config);
  Matrix stimulus(input.neurons(), input.timesteps());
  for (std::size_t i = 0; i < input.neurons(); ++i)
    for (std::size_t t = 0; t < input.timesteps(); ++t) stimulus(i, t) = input.spiked(i, t) ? 1.0 : 0.0;
  return detail::dense_reference(model, stimulus, false, config.timesteps);
}

inline OracleResult dense_oracle_counts(const ModelDescriptor& model, const AnalogInput& input,
                                        const SimulationConfig& config) {
  detail::check_inputs(model, input.values.rows, input.values.cols, config);
  return detail::dense_reference(model, input.values, true, config.timesteps);
}

// ---------------------------------------------------------------------------
// Spike-train and workload files

struct LayerSpikes {
  std::size_t layer = 0;
  SpikeTrain train;
};

// {layer, timesteps, events: [[neuron, timestep], ...]}
inline LayerSpikes spike_train_from_json(const nlohmann::json& j, std::size_t neurons) {
  if (!j.is_object()) throw ParseError("spike train: must be an object");
  detail::reject_unknown(j, {"layer", "timesteps", "events"}, "spike train: ");
  LayerSpikes out;
  out.layer = j.contains("layer") ? detail::required<std::size_t>(j, "layer", "spike train: ") : 0;
  const auto T = detail::required<std::size_t>(j, "timesteps", "spike train: ");
  out.train = SpikeTrain(neurons, T);
  if (!j.contains("events") || !j["events"].is_array())
    throw ParseError("spike train: events must be an array");
  for (const auto& e : j["events"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned())
      throw ParseError("spike train: each event must be [neuron, timestep]");
    const auto n = e[0].get<std::size_t>();
    const auto t = e[1].get<std::size_t>();
    if (n >= neurons || t >= T)
      throw ValidationError("spike train: event (" + std::to_string(n) + ", " + std::to_string(t) +
                            ") out of range");
    out.train.set(n, t);
  }
  return out;
}

inline nlohmann::json spike_train_to_json(std::size_t layer, const SpikeTrain& train) {
  auto events = nlohmann::json::array();
  for (auto [n, t] : train.events()) events.push_back({n, t});
  return {{"layer", layer}, {"timesteps", train.timesteps()}, {"events", std::move(events)}};
}

// A simulation request: config plus the input in the form its mode needs.
struct Workload {
  SimulationConfig config;
  std::optional<SpikeTrain> spikes;         // direct-spikes
  std::optional<std::vector<double>> rates;  // rate-encode
  std::optional<AnalogInput> analog;        // analog
};

inline InputMode parse_input_mode(const std::string& s) {
  if (s == "direct-spikes") return InputMode::direct_spikes;
  if (s == "rate-encode") return InputMode::rate_encode;
  if (s == "analog") return InputMode::analog;
  throw ParseError("workload: unknown input_mode '" + s + "'");
}

// `base_dir` resolves a spike-train file referenced by path from "input".
inline Workload workload_from_json(const nlohmann::json& j, const ModelDescriptor& model,
                                   const std::filesystem::path& base_dir = {}) {
  const std::string where = "workload: ";
  if (!j.is_object()) throw ParseError(where + "must be an object");
  detail::reject_unknown(j, {"timesteps", "timestep_duration", "seed", "input_mode", "input", "rates",
                             "values"},
                         where);
  Workload w;
  w.config.timesteps = detail::required<std::size_t>(j, "timesteps", where);
  if (j.contains("timestep_duration"))
    w.config.timestep_duration = detail::required<double>(j, "timestep_duration", where);
  if (j.contains("seed")) w.config.seed = detail::required<std::uint64_t>(j, "seed", where);
  if (j.contains("input_mode"))
    w.config.input_mode = parse_input_mode(detail::required<std::string>(j, "input_mode", where));

  const std::size_t n = model.input_size();
  switch (w.config.input_mode) {
    case InputMode::direct_spikes: {
      if (!j.contains("input")) throw ParseError(where + "direct-spikes mode needs 'input'");
      nlohmann::json spikes = j["input"];
      if (spikes.is_string()) spikes = detail::read_json_file(base_dir / spikes.get<std::string>());
      auto ls = spike_train_from_json(spikes, n);
      if (ls.layer != 0) throw ValidationError(where + "input spike train must target layer 0");
      w.spikes = std::move(ls.train);
      break;
    }
    case InputMode::rate_encode: {
      if (!j.contains("rates")) throw ParseError(where + "rate-encode mode needs 'rates'");
      w.rates = detail::required<std::vector<double>>(j, "rates", where);
      if (w.rates->size() != n)
        throw ValidationError("dimension mismatch: " + std::to_string(w.rates->size()) +
                              " rates for an input layer of " + std::to_string(n));
      break;
    }
    case InputMode::analog: {
      if (!j.contains("values")) throw ParseError(where + "analog mode needs 'values'");
      w.analog = AnalogInput{detail::parse_matrix(j["values"], n, w.config.timesteps, where + "values: ")};
      break;
    }
  }
  return w;
}

inline Workload load_workload(const std::filesystem::path& path, const ModelDescriptor& model) {
  return workload_from_json(detail::read_json_file(path), model, path.parent_path());
}

// Resolves the workload's input (rate-encoding when asked) and runs it.
inline WorkloadTrace simulate(const ModelDescriptor& model, const Workload& w) {
  switch (w.config.input_mode) {
    case InputMode::direct_spikes: return run_inference(model, *w.spikes, w.config);
    case InputMode::rate_encode:
      return run_inference(model, rate_encode(*w.rates, w.config.timesteps, w.config.seed), w.config);
    case InputMode::analog: return run_inference(model, *w.analog, w.config);
  }
  throw ValidationError("workload: unsupported input mode");
}

// ---------------------------------------------------------------------------
// Trace file

inline nlohmann::json counts_to_json(const OpCounts& c) {
  return {{"macs", c.macs},
          {"acs", c.acs},
          {"membrane_macs", c.membrane_macs},
          {"membrane_updates_effective", c.membrane_updates_effective},
          {"membrane_updates_dense", c.membrane_updates_dense},
          {"layer_crossings", c.layer_crossings}};
}

inline OpCounts counts_from_json(const nlohmann::json& j) {
  const std::string where = "counts: ";
  if (!j.is_object()) throw ParseError(where + "must be an object");
  OpCounts c;
  auto get = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key)) return 0;
    if (!j[key].is_number_unsigned()) throw ParseError(where + "'" + key + "' must be a non-negative integer");
    return j[key].get<std::uint64_t>();
  };
  c.macs = get("macs");
  c.acs = get("acs");
  c.membrane_macs = get("membrane_macs");
  c.membrane_updates_effective = get("membrane_updates_effective");
  c.membrane_updates_dense = get("membrane_updates_dense");
  c.layer_crossings = get("layer_crossings");
  if (c.membrane_updates_effective > c.membrane_updates_dense && j.contains("membrane_updates_dense"))
    throw ValidationError(where + "membrane_updates_effective exceeds membrane_updates_dense");
  return c;
}

inline nlohmann::json trace_to_json(const WorkloadTrace& trace) {
  nlohmann::json j;
  j["model"] = trace.model_name;
  j["version"] = trace.model_version;
  j["timesteps"] = trace.timesteps;
  j["timestep_duration"] = trace.timestep_duration;
  j["analog_input"] = trace.analog_input;
  auto layers = nlohmann::json::array();
  for (std::size_t k = 0; k < trace.layer_spikes.size(); ++k) {
    auto lj = spike_train_to_json(k, trace.layer_spikes[k]);
    lj["neurons"] = trace.layer_spikes[k].neurons();
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  auto steps = nlohmann::json::array();
  for (const auto& s : trace.steps) steps.push_back(counts_to_json(s));
  j["steps"] = std::move(steps);
  return j;
}

inline WorkloadTrace trace_from_json(const nlohmann::json& j) {
  const std::string where = "trace: ";
  if (!j.is_object()) throw ParseError(where + "must be an object");
  WorkloadTrace t;
  t.model_name = detail::required<std::string>(j, "model", where);
  t.model_version = detail::required<std::string>(j, "version", where);
  t.timesteps = detail::required<std::size_t>(j, "timesteps", where);
  t.timestep_duration = detail::required<double>(j, "timestep_duration", where);
  t.analog_input = j.value("analog_input", false);
  if (!(t.timestep_duration > 0.0)) throw ValidationError(where + "timestep_duration must be positive");
  for (const auto& lj : detail::required<nlohmann::json>(j, "layers", where)) {
    auto copy = lj;
    const auto neurons = detail::required<std::size_t>(lj, "neurons", where);
    copy.erase("neurons");
    auto ls = spike_train_from_json(copy, neurons);
    if (ls.train.timesteps() != t.timesteps) throw ValidationError(where + "layer timesteps mismatch");
    t.layer_spikes.push_back(std::move(ls.train));
  }
  for (const auto& sj : detail::required<nlohmann::json>(j, "steps", where))
    t.steps.push_back(counts_from_json(sj));
  if (t.steps.size() != t.timesteps) throw ValidationError(where + "one step tally per timestep required");
  return t;
}

inline WorkloadTrace load_trace(const std::filesystem::path& path) {
  return trace_from_json(detail::read_json_file(path));
}

inline void save_trace(const WorkloadTrace& trace, const std::filesystem::path& path) {
  detail::write_text_file(path, trace_to_json(trace).dump() + "\n");
}

}  // namespace snnergy
