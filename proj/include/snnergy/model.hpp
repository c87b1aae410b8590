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
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace snnergy {

enum class ResetMode { to_zero, subtract_threshold };

enum class LayerKind { input, fully_connected, recurrent };

struct NeuronParams {
  double beta = 1.0;       // leak factor, dimensionless
  double threshold = 1.0;  // firing threshold, membrane-potential units
  ResetMode reset_mode = ResetMode::to_zero;

  friend bool operator==(const NeuronParams&, const NeuronParams&) = default;
};

// Dense row-major matrix; rows index the postsynaptic neuron.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::size_t size() const { return data.size(); }
  bool empty() const { return data.empty(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct TrainableFlags {
  bool weights = true;
  bool biases = true;
  bool neuron = false;

  friend bool operator==(const TrainableFlags&, const TrainableFlags&) = default;
};

struct LayerDescriptor {
  LayerKind kind = LayerKind::input;
  std::size_t in_size = 0;
  std::size_t out_size = 0;
  Matrix weights;            // out_size x in_size
  Matrix recurrent_weights;  // out_size x out_size, recurrent layers only
  std::optional<std::vector<double>> biases;
  NeuronParams neuron;
  TrainableFlags trainable;

  bool weighted() const { return kind != LayerKind::input; }

  friend bool operator==(const LayerDescriptor&, const LayerDescriptor&) = default;
};

struct Precision {
  unsigned weight_bits = 32;
  unsigned state_bits = 32;

  friend bool operator==(const Precision&, const Precision&) = default;
};

struct ModelDescriptor {
  std::string name;
  std::string version;
  std::vector<LayerDescriptor> layers;
  Precision precision;

  std::size_t input_size() const { return layers.empty() ? 0 : layers.front().out_size; }

  // Neurons that carry a membrane potential (everything past the input layer).
  std::size_t state_neurons() const {
    std::size_t n = 0;
    for (const auto& l : layers)
      if (l.weighted()) n += l.out_size;
    return n;
  }

  friend bool operator==(const ModelDescriptor&, const ModelDescriptor&) = default;
};

struct ParameterCount {
  std::uint64_t trainable = 0;
  std::uint64_t non_trainable = 0;
  std::uint64_t total = 0;

  friend bool operator==(const ParameterCount&, const ParameterCount&) = default;
};

// Number of per-neuron scalars (beta, threshold) counted as parameters.
inline constexpr std::size_t kNeuronParamsPerNeuron = 2;

inline std::string_view to_string(LayerKind k) {
  switch (k) {
    case LayerKind::input: return "input";
    case LayerKind::fully_connected: return "fully-connected";
    case LayerKind::recurrent: return "recurrent";
  }
  return "?";
}

inline std::string_view to_string(ResetMode m) {
  return m == ResetMode::to_zero ? "to-zero" : "subtract-threshold";
}

namespace detail {

inline std::string layer_prefix(std::size_t index) {
  return "layer " + std::to_string(index) + ": ";
}

inline void check_finite(const std::vector<double>& v, std::size_t index, std::string_view what) {
  for (double x : v)
    if (!std::isfinite(x))
      throw ValidationError(layer_prefix(index) + std::string(what) + " contains a non-finite value");
}

}  // namespace detail

// Throws ValidationError naming the first offending layer.
inline void validate(const ModelDescriptor& model) {
  if (model.version.empty()) throw ValidationError("model version must be non-empty");
  if (model.layers.empty()) throw ValidationError("model has no layers");
  if (model.layers.front().kind != LayerKind::input)
    throw ValidationError("layer 0: first layer must be of kind input");
  if (model.precision.weight_bits == 0 || model.precision.state_bits == 0)
    throw ValidationError("precision bits must be positive");

  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    const auto& l = model.layers[k];
    const auto prefix = detail::layer_prefix(k);
    if (l.out_size == 0) throw ValidationError(prefix + "out_size must be positive");
    if (l.kind == LayerKind::input) {
      if (k != 0) throw ValidationError(prefix + "input layer allowed only at position 0");
      if (l.in_size != l.out_size)
        throw ValidationError(prefix + "input layer in_size must equal out_size");
      if (!l.weights.empty() || !l.recurrent_weights.empty() || l.biases)
        throw ValidationError(prefix + "input layer must not carry weights or biases");
      continue;
    }
    const auto& prev = model.layers[k - 1];
    if (l.in_size != prev.out_size)
      throw ValidationError(prefix + "in_size " + std::to_string(l.in_size) +
                            " does not match previous out_size " + std::to_string(prev.out_size));
    if (l.weights.rows != l.out_size || l.weights.cols != l.in_size ||
        l.weights.data.size() != l.out_size * l.in_size)
      throw ValidationError(prefix + "weights must be out_size x in_size");
    if (l.kind == LayerKind::recurrent) {
      const auto& r = l.recurrent_weights;
      if (r.rows != l.out_size || r.cols != l.out_size || r.data.size() != l.out_size * l.out_size)
        throw ValidationError(prefix + "recurrent_weights must be out_size x out_size");
    } else if (!l.recurrent_weights.empty()) {
      throw ValidationError(prefix + "recurrent_weights only allowed on recurrent layers");
    }
    if (l.biases && l.biases->size() != l.out_size)
      throw ValidationError(prefix + "biases must have out_size entries");
    if (!(l.neuron.beta >= 0.0 && l.neuron.beta <= 1.0))
      throw ValidationError(prefix + "beta out of range [0,1]");
    if (!(l.neuron.threshold > 0.0) || !std::isfinite(l.neuron.threshold))
      throw ValidationError(prefix + "threshold must be positive");
    detail::check_finite(l.weights.data, k, "weights");
    detail::check_finite(l.recurrent_weights.data, k, "recurrent_weights");
    if (l.biases) detail::check_finite(*l.biases, k, "biases");
  }
}

// Every weight, bias and per-neuron scalar counted once, split by the
// layer's trainable flags.
inline ParameterCount count_parameters(const ModelDescriptor& model) {
  ParameterCount pc;
  for (const auto& l : model.layers) {
    if (!l.weighted()) continue;
    const std::uint64_t w = l.weights.size() + l.recurrent_weights.size();
    const std::uint64_t b = l.biases ? l.biases->size() : 0;
    const std::uint64_t n = kNeuronParamsPerNeuron * l.out_size;
    (l.trainable.weights ? pc.trainable : pc.non_trainable) += w;
    (l.trainable.biases ? pc.trainable : pc.non_trainable) += b;
    (l.trainable.neuron ? pc.trainable : pc.non_trainable) += n;
  }
  pc.total = pc.trainable + pc.non_trainable;
  return pc;
}

// Fraction of exactly-zero synaptic weights; biases are node parameters and
// do not enter.
inline double connection_sparsity(const ModelDescriptor& model) {
  std::uint64_t zeros = 0;
  std::uint64_t total = 0;
  auto tally = [&](const Matrix& m) {
    for (double w : m.data) zeros += (w == 0.0);
    total += m.size();
  };
  for (const auto& l : model.layers) {
    if (!l.weighted()) continue;
    tally(l.weights);
    tally(l.recurrent_weights);
  }
  if (total == 0) throw ValidationError("no connections");
  return static_cast<double>(zeros) / static_cast<double>(total);
}

// Stored tensors: weights and biases at weight precision. Beta/threshold are
// per-layer scalars in this representation and are not materialised per neuron.
inline std::uint64_t stored_parameters(const ModelDescriptor& model) {
  std::uint64_t n = 0;
  for (const auto& l : model.layers) {
    if (!l.weighted()) continue;
    n += l.weights.size() + l.recurrent_weights.size() + (l.biases ? l.biases->size() : 0);
  }
  return n;
}

// Bytes: stored parameters at weight_bits plus one membrane potential per
// non-input neuron at state_bits, each rounded up to whole bytes.
inline std::uint64_t memory_footprint(const ModelDescriptor& model) {
  auto bytes = [](std::uint64_t count, unsigned bits) { return (count * bits + 7) / 8; };
  return bytes(stored_parameters(model), model.precision.weight_bits) +
         bytes(model.state_neurons(), model.precision.state_bits);
}

// ---------------------------------------------------------------------------
// Model file (JSON)

namespace detail {

using nlohmann::json;

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(where + "unknown field '" + it.key() + "'");
  }
}

inline Matrix parse_matrix(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + "matrix must be a nested array");
  if (j.size() != rows) throw ValidationError(where + "matrix has " + std::to_string(j.size()) +
                                              " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array()) throw ParseError(where + "matrix row must be an array");
    if (row.size() != cols)
      throw ValidationError(where + "matrix row " + std::to_string(r) + " has " +
                            std::to_string(row.size()) + " columns, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) throw ParseError(where + "matrix entries must be numbers");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename T>
T required(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + "missing field '" + key + "'");
  if constexpr (std::is_same_v<T, std::size_t>) {
    if (!obj.at(key).is_number_unsigned())
      throw ParseError(where + "field '" + key + "' must be a non-negative integer");
  }
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + "field '" + key + "' has the wrong type");
  }
}

inline LayerKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "input") return LayerKind::input;
  if (s == "fully-connected") return LayerKind::fully_connected;
  if (s == "recurrent") return LayerKind::recurrent;
  throw ParseError(where + "unknown layer kind '" + s + "'");
}

inline ResetMode parse_reset(const std::string& s, const std::string& where) {
  if (s == "to-zero") return ResetMode::to_zero;
  if (s == "subtract-threshold") return ResetMode::subtract_threshold;
  throw ParseError(where + "unknown reset_mode '" + s + "'");
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace detail

inline ModelDescriptor model_from_json(const nlohmann::json& j) {
  using detail::required;
  if (!j.is_object()) throw ParseError("model: top level must be an object");
  detail::reject_unknown(j, {"name", "version", "precision", "layers"}, "model: ");

  ModelDescriptor m;
  m.name = required<std::string>(j, "name", "model: ");
  m.version = required<std::string>(j, "version", "model: ");
  if (j.contains("precision")) {
    const auto& p = j["precision"];
    detail::reject_unknown(p, {"weight_bits", "state_bits"}, "model.precision: ");
    m.precision.weight_bits = p.value("weight_bits", 32u);
    m.precision.state_bits = p.value("state_bits", 32u);
  }
  const auto& layers = j.contains("layers") ? j["layers"] : throw ParseError("model: missing field 'layers'");
  if (!layers.is_array()) throw ParseError("model: layers must be an array");

  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& lj = layers[k];
    const auto where = detail::layer_prefix(k);
    if (!lj.is_object()) throw ParseError(where + "must be an object");
    detail::reject_unknown(lj, {"kind", "in_size", "out_size", "weights", "recurrent_weights",
                                "biases", "neuron", "trainable"},
                           where);
    LayerDescriptor l;
    l.kind = detail::parse_kind(required<std::string>(lj, "kind", where), where);
    l.out_size = required<std::size_t>(lj, "out_size", where);
    l.in_size = lj.contains("in_size") ? required<std::size_t>(lj, "in_size", where)
                                       : (l.kind == LayerKind::input ? l.out_size : 0);
    if (l.kind == LayerKind::input) {
      if (lj.contains("weights") || lj.contains("recurrent_weights") ||
          (lj.contains("biases") && !lj["biases"].is_null()))
        throw ValidationError(where + "input layer must not carry weights or biases");
    } else {
      if (!lj.contains("weights")) throw ParseError(where + "missing field 'weights'");
      l.weights = detail::parse_matrix(lj["weights"], l.out_size, l.in_size, where + "weights: ");
      if (lj.contains("recurrent_weights"))
        l.recurrent_weights = detail::parse_matrix(lj["recurrent_weights"], l.out_size,
                                                   l.out_size, where + "recurrent_weights: ");
      else if (l.kind == LayerKind::recurrent)
        throw ParseError(where + "recurrent layer missing field 'recurrent_weights'");
      if (lj.contains("biases") && !lj["biases"].is_null()) {
        try {
          l.biases = lj["biases"].get<std::vector<double>>();
        } catch (const nlohmann::json::exception&) {
          throw ParseError(where + "biases must be an array of numbers");
        }
      }
      if (!lj.contains("neuron")) throw ParseError(where + "missing field 'neuron'");
      const auto& nj = lj["neuron"];
      detail::reject_unknown(nj, {"beta", "threshold", "reset_mode"}, where + "neuron: ");
      l.neuron.beta = required<double>(nj, "beta", where);
      l.neuron.threshold = required<double>(nj, "threshold", where);
      if (nj.contains("reset_mode"))
        l.neuron.reset_mode = detail::parse_reset(required<std::string>(nj, "reset_mode", where), where);
      if (lj.contains("trainable")) {
        const auto& tj = lj["trainable"];
        detail::reject_unknown(tj, {"weights", "biases", "neuron"}, where + "trainable: ");
        l.trainable.weights = tj.value("weights", true);
        l.trainable.biases = tj.value("biases", true);
        l.trainable.neuron = tj.value("neuron", false);
      }
    }
    m.layers.push_back(std::move(l));
  }
  validate(m);
  return m;
}

inline nlohmann::json model_to_json(const ModelDescriptor& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["version"] = m.version;
  j["precision"] = {{"weight_bits", m.precision.weight_bits}, {"state_bits", m.precision.state_bits}};
  auto layers = nlohmann::json::array();
  for (const auto& l : m.layers) {
    nlohmann::json lj;
    lj["kind"] = std::string(to_string(l.kind));
    lj["in_size"] = l.in_size;
    lj["out_size"] = l.out_size;
    if (l.weighted()) {
      lj["weights"] = detail::matrix_to_json(l.weights);
      if (l.kind == LayerKind::recurrent) lj["recurrent_weights"] = detail::matrix_to_json(l.recurrent_weights);
      lj["biases"] = l.biases ? nlohmann::json(*l.biases) : nlohmann::json(nullptr);
      lj["neuron"] = {{"beta", l.neuron.beta},
                      {"threshold", l.neuron.threshold},
                      {"reset_mode", std::string(to_string(l.neuron.reset_mode))}};
      lj["trainable"] = {{"weights", l.trainable.weights},
                         {"biases", l.trainable.biases},
                         {"neuron", l.trainable.neuron}};
    }
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j;
}

inline ModelDescriptor parse_model(std::string_view text) {
  try {
    return model_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model: ") + e.what());
  }
}

inline ModelDescriptor load_model(const std::filesystem::path& path) {
  return model_from_json(detail::read_json_file(path));
}

inline void save_model(const ModelDescriptor& model, const std::filesystem::path& path) {
  detail::write_text_file(path, model_to_json(model).dump(2) + "\n");
}

}  // namespace snnergy
