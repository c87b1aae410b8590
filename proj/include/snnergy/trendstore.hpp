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
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "alert.hpp"
#include "catalog.hpp"
#include "energy.hpp"
#include "error.hpp"

namespace snnergy {

struct MetricSnapshot {
  std::string model_name;
  std::string version;
  std::int64_t timestamp = 0;  // seconds since epoch
  std::map<std::string, double> values;
  // Missing entries default to the metric's catalog provenance class.
  std::map<std::string, Provenance> provenance;
  std::optional<double> accuracy;
  std::string notes;

  Provenance provenance_of(const std::string& key) const {
    if (auto it = provenance.find(key); it != provenance.end()) return it->second;
    if (const auto* d = find_builtin(key)) return d->provenance_class;
    return Provenance::ingested;
  }

  friend bool operator==(const MetricSnapshot&, const MetricSnapshot&) = default;
};

// A single value recorded after the fact (training time, measured energy).
struct ExternalMetric {
  std::string model_name;
  std::string version;
  std::int64_t timestamp = 0;
  std::string metric;
  double value = 0.0;
  Provenance provenance = Provenance::ingested;
  std::string notes;

  friend bool operator==(const ExternalMetric&, const ExternalMetric&) = default;
};

enum class TrendDirection { improving, degrading, flat };

inline std::string_view to_string(TrendDirection d) {
  switch (d) {
    case TrendDirection::improving: return "improving";
    case TrendDirection::degrading: return "degrading";
    case TrendDirection::flat: return "flat";
  }
  return "?";
}

inline TrendDirection direction_of(double from, double to, Polarity polarity) {
  if (to == from) return TrendDirection::flat;
  const bool increased = to > from;
  return increased == (polarity == Polarity::higher_is_better) ? TrendDirection::improving
                                                               : TrendDirection::degrading;
}

struct TrendPoint {
  std::string version;
  double value = 0.0;
  Provenance provenance = Provenance::computed;
};

struct TrendDelta {
  std::string from;
  std::string to;
  double absolute = 0.0;
  std::optional<double> percent;  // undefined when the earlier value is 0
  TrendDirection direction = TrendDirection::flat;
};

struct TrendReport {
  std::string metric;
  std::string unit;
  Polarity polarity = Polarity::lower_is_better;
  std::vector<TrendPoint> series;
  std::vector<TrendDelta> deltas;
  TrendDirection direction = TrendDirection::flat;  // first vs last point
};

// Builds deltas and the overall direction for an ordered series.
inline TrendReport make_trend(const MetricDescriptor& metric, std::vector<TrendPoint> series) {
  if (series.size() < 2)
    throw StoreError("trend for '" + metric.key + "' needs at least 2 versions, have " +
                     std::to_string(series.size()));
  TrendReport r;
  r.metric = metric.key;
  r.unit = metric.unit;
  r.polarity = metric.polarity;
  r.series = std::move(series);
  for (std::size_t i = 1; i < r.series.size(); ++i) {
    const auto& a = r.series[i - 1];
    const auto& b = r.series[i];
    TrendDelta d;
    d.from = a.version;
    d.to = b.version;
    d.absolute = b.value - a.value;
    if (a.value != 0.0) d.percent = d.absolute / std::abs(a.value) * 100.0;
    d.direction = direction_of(a.value, b.value, metric.polarity);
    r.deltas.push_back(std::move(d));
  }
  r.direction = direction_of(r.series.front().value, r.series.back().value, metric.polarity);
  return r;
}

struct AlertEvaluation {
  std::vector<Alert> alerts;
  std::vector<std::string> skipped;  // rules whose metric was absent
};

// Missing metric values skip their rule; they never raise.
inline AlertEvaluation evaluate_alerts(const MetricSnapshot& snapshot, const ActionabilityRules& rules = {}) {
  AlertEvaluation out;
  auto value = [&](const char* key) -> std::optional<double> {
    if (auto it = snapshot.values.find(key); it != snapshot.values.end()) return it->second;
    return std::nullopt;
  };
  if (auto s = value("activation_sparsity")) {
    if (*s < rules.min_activation_sparsity)
      out.alerts.push_back({"activation_sparsity", *s, rules.min_activation_sparsity, "<", kSparsityRationale});
  } else {
    out.skipped.emplace_back("activation_sparsity");
  }
  if (auto d = value("power_density")) {
    if (*d > rules.max_power_density)
      out.alerts.push_back({"power_density", *d, rules.max_power_density, ">", kPowerDensityRationale});
  } else {
    out.skipped.emplace_back("power_density");
  }
  if (auto y = value("estimated_battery_life")) {
    if (*y < rules.min_battery_years)
      out.alerts.push_back({"estimated_battery_life", *y, rules.min_battery_years, "<", kBatteryRationale});
  } else {
    out.skipped.emplace_back("estimated_battery_life");
  }
  return out;
}

/// Append-only, newline-delimited JSON store of metric snapshots.
///
/// Every line is one record with a "kind" discriminator:
///
///   {"kind":"snapshot","model":..,"version":..,"timestamp":..,"values":{..},
///    "accuracy":..|null,"provenance":{..},"notes":..}
///   {"kind":"external", same fields, exactly one entry in values}
///   {"kind":"register","metric":{"key":..,"unit":..,"polarity":..}}
///
/// A final line without a trailing newline is an unfinished write and is
/// ignored by readers. Writers must be serialised by the caller.
class TrendStore {
public:
  explicit TrendStore(std::filesystem::path path) : path_(std::move(path)) { reload(); }

  const std::filesystem::path& path() const { return path_; }

  void reload() {
    snapshots_.clear();
    externals_.clear();
    custom_.clear();
    order_.clear();
    std::ifstream in(path_, std::ios::binary);
    if (!in) {
      if (std::filesystem::exists(path_)) throw StoreError("cannot read store " + path_.string());
      return;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::size_t pos = 0;
    std::size_t lineno = 0;
    while (pos < text.size()) {
      const auto nl = text.find('\n', pos);
      if (nl == std::string::npos) break;  // partial trailing record
      ++lineno;
      const std::string line = text.substr(pos, nl - pos);
      pos = nl + 1;
      if (line.empty()) continue;
      try {
        apply(nlohmann::json::parse(line));
      } catch (const nlohmann::json::exception& e) {
        throw StoreError(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
      } catch (const Error& e) {
        throw StoreError(path_.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }

  const MetricDescriptor* find_metric(std::string_view key) const {
    if (const auto* d = find_builtin(key)) return d;
    for (const auto& d : custom_)
      if (d.key == key) return &d;
    return nullptr;
  }

  void register_metric(const std::string& key, const std::string& unit, Polarity polarity) {
    if (key.empty()) throw StoreError("metric key must be non-empty");
    if (find_metric(key)) throw StoreError("metric '" + key + "' is already known");
    nlohmann::json j = {{"kind", "register"},
                        {"metric", {{"key", key}, {"unit", unit}, {"polarity", std::string(to_string(polarity))}}}};
    append(j);
  }

  void record_snapshot(const MetricSnapshot& s) {
    check_identity(s.model_name, s.version);
    if (find_snapshot(s.model_name, s.version))
      throw StoreError("version '" + s.version + "' already recorded for model '" + s.model_name + "'");
    if (s.accuracy && !(*s.accuracy >= 0.0 && *s.accuracy <= 1.0))
      throw StoreError("accuracy must be in [0,1]");
    for (const auto& [k, v] : s.values) {
      if (!find_metric(k)) throw StoreError("unknown metric '" + k + "' (register it first)");
      if (!std::isfinite(v)) throw StoreError("metric '" + k + "' is not finite");
    }
    for (const auto& [k, p] : s.provenance)
      if (!s.values.count(k)) throw StoreError("provenance given for absent metric '" + k + "'");
    append(snapshot_to_json(s));
  }

  void record_external_metric(const std::string& model, const std::string& version, const std::string& metric,
                              double value, Provenance provenance, std::int64_t timestamp = 0,
                              const std::string& notes = {}) {
    check_identity(model, version);
    if (!find_metric(metric)) throw StoreError("unregistered metric '" + metric + "'");
    if (!std::isfinite(value)) throw StoreError("metric '" + metric + "' is not finite");
    for (const auto& e : externals_)
      if (e.model_name == model && e.version == version && e.metric == metric && e.provenance == provenance)
        throw StoreError("'" + metric + "' with provenance " + std::string(to_string(provenance)) +
                         " already recorded for " + model + " " + version);
    if (const auto* s = find_snapshot(model, version))
      if (s->values.count(metric) && s->provenance_of(metric) == provenance)
        throw StoreError("'" + metric + "' with this provenance already in the snapshot for " + version);
    ExternalMetric e{model, version, timestamp, metric, value, provenance, notes};
    append(external_to_json(e));
  }

  std::vector<MetricSnapshot> history(const std::string& model) const {
    std::vector<MetricSnapshot> out;
    for (const auto& s : snapshots_)
      if (s.model_name == model) out.push_back(s);
    return out;
  }

  const std::vector<MetricSnapshot>& snapshots() const { return snapshots_; }
  const std::vector<ExternalMetric>& externals() const { return externals_; }

  std::vector<ExternalMetric> externals_for(const std::string& model, const std::string& version) const {
    std::vector<ExternalMetric> out;
    for (const auto& e : externals_)
      if (e.model_name == model && e.version == version) out.push_back(e);
    return out;
  }

  // Versions of a model in the order they first appeared in the store.
  std::vector<std::string> versions(const std::string& model) const {
    std::vector<std::string> out;
    for (const auto& [m, v] : order_)
      if (m == model) out.push_back(v);
    return out;
  }

  std::vector<std::string> models() const {
    std::vector<std::string> out;
    for (const auto& [m, v] : order_)
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    return out;
  }

  const MetricSnapshot* find_snapshot(const std::string& model, const std::string& version) const {
    for (const auto& s : snapshots_)
      if (s.model_name == model && s.version == version) return &s;
    return nullptr;
  }

  // Per version: the snapshot value if present, else the first external
  // value. With a provenance filter only matching values are used.
  std::optional<TrendPoint> value_at(const std::string& model, const std::string& version,
                                     const std::string& metric,
                                     std::optional<Provenance> filter = std::nullopt) const {
    if (const auto* s = find_snapshot(model, version)) {
      if (auto it = s->values.find(metric); it != s->values.end()) {
        const auto p = s->provenance_of(metric);
        if (!filter || *filter == p) return TrendPoint{version, it->second, p};
      }
    }
    for (const auto& e : externals_)
      if (e.model_name == model && e.version == version && e.metric == metric &&
          (!filter || *filter == e.provenance))
        return TrendPoint{version, e.value, e.provenance};
    return std::nullopt;
  }

  TrendReport trend_report(const std::string& model, const std::string& metric,
                           std::optional<Provenance> filter = std::nullopt) const {
    const auto* desc = find_metric(metric);
    if (!desc) throw StoreError("unknown metric '" + metric + "'");
    std::vector<TrendPoint> series;
    for (const auto& v : versions(model))
      if (auto p = value_at(model, v, metric, filter)) series.push_back(*p);
    return make_trend(*desc, std::move(series));
  }

  static nlohmann::json snapshot_to_json(const MetricSnapshot& s) {
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [k, v] : s.values) {
      values[k] = v;
      prov[k] = std::string(to_string(s.provenance_of(k)));
    }
    return {{"kind", "snapshot"},
            {"model", s.model_name},
            {"version", s.version},
            {"timestamp", s.timestamp},
            {"values", values},
            {"accuracy", s.accuracy ? nlohmann::json(*s.accuracy) : nlohmann::json(nullptr)},
            {"provenance", prov},
            {"notes", s.notes}};
  }

  static nlohmann::json external_to_json(const ExternalMetric& e) {
    return {{"kind", "external"},
            {"model", e.model_name},
            {"version", e.version},
            {"timestamp", e.timestamp},
            {"values", {{e.metric, e.value}}},
            {"accuracy", nullptr},
            {"provenance", {{e.metric, std::string(to_string(e.provenance))}}},
            {"notes", e.notes}};
  }

private:
  static void check_identity(const std::string& model, const std::string& version) {
    if (model.empty()) throw StoreError("model name must be non-empty");
    if (version.empty()) throw StoreError("version must be non-empty");
  }

  void note_version(const std::string& model, const std::string& version) {
    for (const auto& mv : order_)
      if (mv.first == model && mv.second == version) return;
    order_.emplace_back(model, version);
  }

  void apply(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "register") {
      const auto& m = j.at("metric");
      MetricDescriptor d;
      d.key = m.at("key").get<std::string>();
      d.name = d.key;
      d.unit = m.at("unit").get<std::string>();
      d.polarity = parse_polarity(m.at("polarity").get<std::string>());
      d.provenance_class = Provenance::ingested;
      d.source_table = SourceTable::supporting;
      custom_.push_back(std::move(d));
      return;
    }
    if (kind != "snapshot" && kind != "external") throw StoreError("unknown record kind '" + kind + "'");

    MetricSnapshot s;
    s.model_name = j.at("model").get<std::string>();
    s.version = j.at("version").get<std::string>();
    s.timestamp = j.at("timestamp").get<std::int64_t>();
    for (const auto& [k, v] : j.at("values").items()) s.values[k] = v.get<double>();
    for (const auto& [k, v] : j.at("provenance").items()) s.provenance[k] = parse_provenance(v.get<std::string>());
    if (!j.at("accuracy").is_null()) s.accuracy = j.at("accuracy").get<double>();
    s.notes = j.at("notes").get<std::string>();
    note_version(s.model_name, s.version);

    if (kind == "snapshot") {
      snapshots_.push_back(std::move(s));
      return;
    }
    if (s.values.size() != 1) throw StoreError("external record must carry exactly one value");
    const auto& [metric, value] = *s.values.begin();
    externals_.push_back({s.model_name, s.version, s.timestamp, metric, value, s.provenance_of(metric), s.notes});
  }

  void append(const nlohmann::json& record) {
    const std::string line = record.dump() + "\n";
    {
      std::ofstream out(path_, std::ios::binary | std::ios::app);
      if (!out) throw StoreError("cannot open store " + path_.string() + " for append");
      out.write(line.data(), static_cast<std::streamsize>(line.size()));
      out.flush();
      if (!out) throw StoreError("write to store " + path_.string() + " failed");
    }
    apply(record);
  }

  std::filesystem::path path_;
  std::vector<MetricSnapshot> snapshots_;
  std::vector<ExternalMetric> externals_;
  std::vector<MetricDescriptor> custom_;
  std::vector<std::pair<std::string, std::string>> order_;
};

// Path-based entry points; each opens the store afresh.
inline void record_snapshot(const std::filesystem::path& store, const MetricSnapshot& s) {
  TrendStore(store).record_snapshot(s);
}

inline void record_external_metric(const std::filesystem::path& store, const std::string& model,
                                   const std::string& version, const std::string& metric, double value,
                                   Provenance provenance) {
  TrendStore(store).record_external_metric(model, version, metric, value, provenance);
}

inline TrendReport trend_report(const std::filesystem::path& store, const std::string& model,
                                const std::string& metric) {
  return TrendStore(store).trend_report(model, metric);
}

}  // namespace snnergy
