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

#include <array>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "alert.hpp"
#include "catalog.hpp"
#include "derived.hpp"
#include "trendstore.hpp"

namespace snnergy {

struct ReportEntry {
  MetricDescriptor metric;  // classification copied from the catalog
  double value = 0.0;
  Provenance provenance = Provenance::computed;
  std::string assumption;  // empty when the value rests on no stated assumption
};

struct ReportDocument {
  std::string model;
  std::string version;
  std::int64_t timestamp = 0;
  std::optional<double> accuracy;
  std::vector<ReportEntry> entries;
  std::vector<Alert> alerts;
  std::vector<std::string> skipped_rules;
  std::vector<TrendReport> trends;
  std::vector<std::string> notes;
};

enum class ReportFormat { text, json, csv, markdown };

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "text") return ReportFormat::text;
  if (s == "json" || s == "jsonl") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw ParseError("unknown format '" + std::string(s) + "'");
}

inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

inline std::string assumption_for(std::string_view key, RatioOrientation orientation = RatioOrientation::old_over_new) {
  if (key == "energy_area_fom") return "assumed formula: (power/channels)*chip_area/sampling_frequency";
  if (key == "peak_energy_per_sop") return "average pJ/SOP over the inference; peak window is one timestep";
  if (key == "peak_window_power") return "peak window is one timestep";
  if (key == "speedup" || key == "greenup" || key == "powerup")
    return orientation == RatioOrientation::old_over_new ? "orientation old/new; powerup>1 means more power"
                                                          : "orientation new/old";
  if (key == "estimated_battery_life") return "year = 365.25 days";
  return {};
}

namespace detail {

inline int catalog_rank(const MetricDescriptor& d) {
  int i = 0;
  for (const auto& m : builtin_catalog()) {
    if (m.key == d.key) return i;
    ++i;
  }
  for (const auto& m : supporting_metrics()) {
    if (m.key == d.key) return i;
    ++i;
  }
  return i;
}

}  // namespace detail

inline ReportEntry make_entry(const MetricDescriptor& d, double value, Provenance p,
                              RatioOrientation orientation = RatioOrientation::old_over_new) {
  return {d, value, p, assumption_for(d.key, orientation)};
}

// Entries for every value of a snapshot plus any external values, in
// catalog order. `store` resolves custom metrics; may be null.
inline ReportDocument report_from_snapshot(const MetricSnapshot& s, const std::vector<ExternalMetric>& externals,
                                           const ActionabilityRules& rules, const TrendStore* store = nullptr) {
  ReportDocument doc;
  doc.model = s.model_name;
  doc.version = s.version;
  doc.timestamp = s.timestamp;
  doc.accuracy = s.accuracy;
  auto describe = [&](const std::string& key) -> MetricDescriptor {
    if (const auto* d = store ? store->find_metric(key) : find_builtin(key)) return *d;
    MetricDescriptor d;
    d.key = d.name = key;
    d.provenance_class = Provenance::ingested;
    d.source_table = SourceTable::supporting;
    return d;
  };
  for (const auto& [k, v] : s.values) doc.entries.push_back(make_entry(describe(k), v, s.provenance_of(k)));
  for (const auto& e : externals) doc.entries.push_back(make_entry(describe(e.metric), e.value, e.provenance));
  std::stable_sort(doc.entries.begin(), doc.entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
    return detail::catalog_rank(a.metric) < detail::catalog_rank(b.metric);
  });
  auto eval = evaluate_alerts(s, rules);
  doc.alerts = std::move(eval.alerts);
  doc.skipped_rules = std::move(eval.skipped);
  return doc;
}

// Latest version of `model` with trends for every trend-based metric that
// has at least two recorded points. Empty history yields an empty document.
inline ReportDocument report_from_store(const TrendStore& store, const std::string& model,
                                        const ActionabilityRules& rules) {
  const auto versions = store.versions(model);
  if (versions.empty()) {
    ReportDocument doc;
    doc.model = model;
    return doc;
  }
  const auto& latest = versions.back();
  MetricSnapshot snap;
  if (const auto* s = store.find_snapshot(model, latest)) {
    snap = *s;
  } else {
    snap.model_name = model;
    snap.version = latest;
  }
  const auto externals = store.externals_for(model, latest);
  // External values count for alerting when the snapshot lacks them.
  MetricSnapshot for_alerts = snap;
  for (const auto& e : externals) for_alerts.values.emplace(e.metric, e.value);
  auto doc = report_from_snapshot(snap, externals, rules, &store);
  auto eval = evaluate_alerts(for_alerts, rules);
  doc.alerts = std::move(eval.alerts);
  doc.skipped_rules = std::move(eval.skipped);

  std::vector<std::string> keys;
  for (const auto& m : builtin_catalog())
    if (m.trend_based) keys.push_back(m.key);
  for (const auto& key : keys) {
    std::vector<TrendPoint> series;
    for (const auto& v : versions)
      if (auto p = store.value_at(model, v, key)) series.push_back(*p);
    if (series.size() >= 2) doc.trends.push_back(make_trend(*store.find_metric(key), std::move(series)));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string classification(const MetricDescriptor& d) {
  std::string s;
  s += "A:" + yes_no(d.accessibility);
  s += " HF:" + yes_no(d.high_fidelity);
  s += " Act:" + yes_no(d.actionability);
  s += " Trend:" + std::string(d.trend_inherent ? "inherent" : yes_no(d.trend_based));
  if (d.assumes_estimation) s += " *";
  return s;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string md_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}


}  // namespace detail

/// One JSON object per line: a header, then metric, alert, skipped-rule,
/// trend and note records. Keys and record order are stable.
inline std::string render_json(const ReportDocument& doc) {
  using nlohmann::json;
  std::string out;
  auto emit = [&](const json& j) { out += j.dump() + "\n"; };
  emit({{"record", "header"},
        {"schema", 1},
        {"model", doc.model},
        {"version", doc.version},
        {"timestamp", doc.timestamp},
        {"accuracy", doc.accuracy ? json(*doc.accuracy) : json(nullptr)},
        {"entries", doc.entries.size()},
        {"alerts", doc.alerts.size()}});
  for (const auto& e : doc.entries) {
    const auto& m = e.metric;
    emit({{"record", "metric"},
          {"key", m.key},
          {"name", m.name},
          {"value", e.value},
          {"unit", m.unit},
          {"provenance", std::string(to_string(e.provenance))},
          {"source", std::string(to_string(m.source_table))},
          {"accessibility", m.accessibility},
          {"high_fidelity", m.high_fidelity},
          {"actionability", m.actionability},
          {"trend_based", m.trend_based},
          {"trend_inherent", m.trend_inherent},
          {"assumes_estimation", m.assumes_estimation},
          {"assumption", e.assumption.empty() ? json(nullptr) : json(e.assumption)}});
  }
  for (const auto& a : doc.alerts) {
    const auto* d = find_builtin(a.metric);
    emit({{"record", "alert"},
          {"metric", a.metric},
          {"value", a.value},
          {"threshold", a.threshold},
          {"comparison", a.comparison},
          {"unit", d ? d->unit : ""},
          {"provenance", d ? std::string(to_string(d->provenance_class)) : "ingested"},
          {"rationale", a.rationale}});
  }
  for (const auto& r : doc.skipped_rules) emit({{"record", "skipped_rule"}, {"metric", r}});
  for (const auto& t : doc.trends) {
    json series = json::array();
    for (const auto& p : t.series)
      series.push_back({{"version", p.version}, {"value", p.value}, {"provenance", std::string(to_string(p.provenance))}});
    json deltas = json::array();
    for (const auto& d : t.deltas)
      deltas.push_back({{"from", d.from},
                        {"to", d.to},
                        {"absolute", d.absolute},
                        {"percent", d.percent ? json(*d.percent) : json(nullptr)},
                        {"direction", std::string(to_string(d.direction))}});
    emit({{"record", "trend"},
          {"metric", t.metric},
          {"unit", t.unit},
          {"polarity", std::string(to_string(t.polarity))},
          {"direction", std::string(to_string(t.direction))},
          {"series", series},
          {"deltas", deltas}});
  }
  for (const auto& n : doc.notes) emit({{"record", "note"}, {"text", n}});
  return out;
}

inline std::string render_csv(const ReportDocument& doc) {
  using detail::csv_field;
  std::ostringstream os;
  os << "record,model,version,key,value,unit,provenance,accessibility,high_fidelity,actionability,trend_based,"
        "assumes_estimation,detail\n";
  const std::string prefix = csv_field(doc.model) + "," + csv_field(doc.version) + ",";
  for (const auto& e : doc.entries) {
    const auto& m = e.metric;
    os << "metric," << prefix << csv_field(m.key) << ',' << format_number(e.value) << ',' << csv_field(m.unit)
       << ',' << to_string(e.provenance) << ',' << m.accessibility << ',' << m.high_fidelity << ','
       << m.actionability << ',' << m.trend_based << ',' << m.assumes_estimation << ','
       << csv_field(e.assumption) << '\n';
  }
  for (const auto& a : doc.alerts) {
    const auto* d = find_builtin(a.metric);
    os << "alert," << prefix << csv_field(a.metric) << ',' << format_number(a.value) << ','
       << csv_field(d ? d->unit : "") << ',' << (d ? to_string(d->provenance_class) : "ingested") << ",,,,,,"
       << csv_field(a.comparison + " " + format_number(a.threshold)) << '\n';
  }
  for (const auto& t : doc.trends) {
    os << "trend," << prefix << csv_field(t.metric) << ',' << format_number(t.series.back().value) << ','
       << csv_field(t.unit) << ',' << to_string(t.series.back().provenance) << ",,,,,," << to_string(t.direction)
       << '\n';
  }
  return os.str();
}

inline std::string render_markdown(const ReportDocument& doc) {
  using detail::md_cell;
  std::ostringstream os;
  os << "# Energy report: " << md_cell(doc.model) << ' ' << md_cell(doc.version) << "\n\n";
  if (doc.accuracy) os << "Accuracy: " << format_number(*doc.accuracy) << "\n\n";
  if (!doc.entries.empty()) {
    os << "| Metric | Value | Unit | Provenance | Accessible | High fidelity | Actionable | Trend-based | Note |\n"
       << "|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& e : doc.entries) {
      const auto& m = e.metric;
      os << "| " << md_cell(m.name) << " | " << format_number(e.value) << " | " << md_cell(m.unit) << " | "
         << to_string(e.provenance) << " | " << detail::yes_no(m.accessibility) << (m.assumes_estimation ? "*" : "")
         << " | " << detail::yes_no(m.high_fidelity) << (m.assumes_estimation ? "*" : "") << " | "
         << detail::yes_no(m.actionability) << " | "
         << (m.trend_inherent ? std::string("inherent") : detail::yes_no(m.trend_based)) << " | "
         << md_cell(e.assumption) << " |\n";
    }
    os << '\n';
  }
  if (!doc.alerts.empty()) {
    os << "## Alerts\n\n";
    for (const auto& a : doc.alerts)
      os << "- **" << a.metric << "** " << format_number(a.value) << ' ' << a.comparison << ' '
         << format_number(a.threshold) << ": " << a.rationale << '\n';
    os << '\n';
  }
  if (!doc.trends.empty()) {
    os << "## Trends\n\n| Metric | Series | Direction |\n|---|---|---|\n";
    for (const auto& t : doc.trends) {
      std::string series;
      for (const auto& p : t.series) series += (series.empty() ? "" : " -> ") + p.version + "=" + format_number(p.value);
      os << "| " << t.metric << " | " << md_cell(series) << " | " << to_string(t.direction) << " |\n";
    }
    os << '\n';
  }
  for (const auto& n : doc.notes) os << "> " << n << '\n';
  return os.str();
}

inline std::string render_text(const ReportDocument& doc) {
  std::ostringstream os;
  os << "model " << doc.model << (doc.version.empty() ? "" : " version " + doc.version) << '\n';
  if (doc.accuracy) os << "accuracy " << format_number(*doc.accuracy) << '\n';
  for (const auto& e : doc.entries) {
    os << "  " << e.metric.key << " = " << format_number(e.value) << ' ' << e.metric.unit << "  ["
       << to_string(e.provenance) << "; " << detail::classification(e.metric) << ']';
    if (!e.assumption.empty()) os << "  (" << e.assumption << ')';
    os << '\n';
  }
  for (const auto& a : doc.alerts)
    os << "ALERT " << a.metric << ' ' << format_number(a.value) << ' ' << a.comparison << ' '
       << format_number(a.threshold) << ": " << a.rationale << '\n';
  for (const auto& t : doc.trends) {
    os << "trend " << t.metric << ' ' << to_string(t.direction) << ':';
    for (const auto& p : t.series) os << ' ' << p.version << '=' << format_number(p.value);
    os << '\n';
  }
  for (const auto& n : doc.notes) os << "note: " << n << '\n';
  return os.str();
}

inline std::string render(const ReportDocument& doc, ReportFormat f) {
  switch (f) {
    case ReportFormat::text: return render_text(doc);
    case ReportFormat::json: return render_json(doc);
    case ReportFormat::csv: return render_csv(doc);
    case ReportFormat::markdown: return render_markdown(doc);
  }
  return {};
}

}  // namespace snnergy
