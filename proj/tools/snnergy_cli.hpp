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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <snnergy/snnergy.hpp>

namespace snnergy::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kMissingCapability = 3,
  kActionabilityAlert = 4,
};

// Splits "a=1,b=2" into pairs.
inline std::map<std::string, std::string> parse_kv_list(const std::string& text, const std::string& what) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(what + ": expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw ParseError(what + ": '" + s + "' is not a number");
  return v;
}

inline void apply_limit_overrides(ActionabilityRules& rules, const std::string& text) {
  for (const auto& [k, v] : parse_kv_list(text, "--limit-overrides")) {
    const double x = parse_double(v, "--limit-overrides " + k);
    if (k == "activation_sparsity" || k == "sparsity")
      rules.min_activation_sparsity = x;
    else if (k == "power_density")
      rules.max_power_density = x;
    else if (k == "battery_years" || k == "estimated_battery_life")
      rules.min_battery_years = x;
    else
      throw ParseError("--limit-overrides: unknown limit '" + k + "'");
  }
}

// "version=v2,energy=2e-3,time=0.01,accuracy=0.8"
inline VersionMeasurement parse_measurement(const std::string& text, const std::string& what) {
  VersionMeasurement m;
  bool have_energy = false, have_time = false;
  for (const auto& [k, v] : parse_kv_list(text, what)) {
    if (k == "version")
      m.version = v;
    else if (k == "energy")
      m.energy = parse_double(v, what), have_energy = true;
    else if (k == "time")
      m.time = parse_double(v, what), have_time = true;
    else if (k == "accuracy")
      m.accuracy = parse_double(v, what);
    else
      throw ParseError(what + ": unknown field '" + k + "'");
  }
  if (!have_energy || !have_time) throw ParseError(what + ": energy and time are required");
  if (m.accuracy && !(*m.accuracy >= 0.0 && *m.accuracy <= 1.0))
    throw ValidationError(what + ": accuracy must be in [0,1]");
  return m;
}

inline VersionMeasurement measurement_from_store(const TrendStore& store, const std::string& model,
                                                 const std::string& version) {
  auto energy = store.value_at(model, version, "energy_per_inference");
  auto time = store.value_at(model, version, "inference_time");
  if (!energy || !time)
    throw ValidationError("store has no energy_per_inference/inference_time for " + model + " " + version);
  VersionMeasurement m{version, energy->value, time->value, std::nullopt};
  if (const auto* s = store.find_snapshot(model, version)) m.accuracy = s->accuracy;
  return m;
}

inline ReportDocument compare_document(const VersionMeasurement& old_m, const VersionMeasurement& new_m,
                                       RatioOrientation orientation, const std::string& model = {}) {
  ReportDocument doc;
  doc.model = model.empty() ? "comparison" : model;
  doc.version = old_m.version + " -> " + new_m.version;
  doc.accuracy = new_m.accuracy;
  auto add = [&](const char* key, double value) {
    const auto& d = lookup_metric(key);
    doc.entries.push_back(make_entry(d, value, d.provenance_class, orientation));
  };
  const double s = speedup(old_m, new_m, orientation);
  const double g = greenup(old_m, new_m, orientation);
  add("speedup", s);
  add("greenup", g);
  add("powerup", powerup(s, g));
  add("energy_delay_product", energy_delay_product(new_m.energy, new_m.time));
  add("energy_delay_product_old", energy_delay_product(old_m.energy, old_m.time));
  doc.notes.push_back(orientation == RatioOrientation::old_over_new
                          ? "ratios are old/new: speedup, greenup > 1 favour the new version; powerup > 1 means "
                            "the new version draws more average power"
                          : "ratios are new/old");
  if (old_m.accuracy && new_m.accuracy) {
    const auto t = accuracy_energy_tradeoff(old_m, new_m);
    add("accuracy_efficiency_tradeoff", t.efficiency_ratio_new);
    add("efficiency_ratio_old", t.efficiency_ratio_old);
    if (t.marginal_energy_cost) add("marginal_energy_cost", *t.marginal_energy_cost);
    if (t.accuracy_regressed) doc.notes.emplace_back("accuracy regressed between versions");
    if (t.accuracy_unchanged) doc.notes.emplace_back("accuracy unchanged between versions");
  } else {
    doc.notes.emplace_back("accuracy-efficiency tradeoff skipped: accuracy missing");
  }
  return doc;
}

inline OpCounts read_counts(const std::filesystem::path& path, double& duration) {
  const auto j = detail::read_json_file(path);
  if (!j.is_object()) throw ParseError("counts: must be an object");
  detail::reject_unknown(j, {"macs", "acs", "membrane_macs", "membrane_updates_effective", "membrane_updates_dense",
                             "layer_crossings", "duration"},
                         "counts: ");
  duration = detail::required<double>(j, "duration", "counts: ");
  return counts_from_json(j);
}

struct Globals {
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  std::string store;
  std::string hwspec;
  std::string limit_overrides;
};

class Runner {
public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(int argc, const char* const* argv) {
    CLI::App app{"snnergy: energy metrics for spiking neural network models"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", g_.format, "Output format: text, json, csv, markdown")
        ->check(CLI::IsMember({"text", "json", "jsonl", "csv", "markdown", "md"}));
    app.add_option("--seed", g_.seed, "Override the workload seed");
    app.add_option("--store", g_.store, "Trend store file")->envname("SNNERGY_STORE");
    app.add_option("--hwspec", g_.hwspec, "Hardware specification file");
    app.add_option("--limit-overrides", g_.limit_overrides,
                   "Alert limits, e.g. activation_sparsity=0.6,power_density=10,battery_years=10");

    std::function<int()> action;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Static model metrics");
    analyze->add_option("--model", model_path_, "Model file")->required();
    analyze->callback([&] { action = [&] { return cmd_analyze(); }; });

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Run one inference and report workload metrics");
    simulate_cmd->add_option("--model", model_path_, "Model file")->required();
    simulate_cmd->add_option("--workload", workload_path_, "Workload file")->required();
    simulate_cmd->add_option("--trace-out", trace_out_, "Write the trace to this file");
    simulate_cmd->add_flag("--exclude-membrane-macs", exclude_membrane_macs_,
                           "Do not feed leak MACs into derived memory accesses");
    simulate_cmd->callback([&] { action = [&] { return cmd_simulate(); }; });

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Energy breakdown and hardware-side metrics");
    auto* trace_opt = estimate->add_option("--trace", trace_path_, "Trace file from simulate");
    auto* counts_opt = estimate->add_option("--counts", counts_path_, "Op-count file with duration");
    trace_opt->excludes(counts_opt);
    estimate->add_option("--metrics", requested_metrics_, "Metrics that must be produced")->delimiter(',');
    estimate->add_option("--learning-counts", learning_counts_path_, "Op counts of one training sample");
    estimate->add_option("--duty-rate", duty_rate_, "Inference rate (Hz) for the duty-cycled battery budget");
    estimate->add_option("--accuracy", accuracy_, "Model accuracy for the efficiency ratio");
    estimate->add_flag("--exclude-membrane-macs", exclude_membrane_macs_,
                       "Do not feed leak MACs into derived memory accesses");
    estimate->callback([&] { action = [&] { return cmd_estimate(); }; });

    // compare
    auto* compare = app.add_subcommand("compare", "Speedup, Greenup, Powerup, EDP and accuracy tradeoff");
    compare->add_option("--old", old_spec_, "Inline measurement: version=..,energy=..,time=..,accuracy=..");
    compare->add_option("--new", new_spec_, "Inline measurement for the new version");
    compare->add_option("--name", model_name_, "Model name in the store");
    compare->add_option("--old-version", old_version_, "Old version in the store");
    compare->add_option("--new-version", new_version_, "New version in the store");
    compare->add_option("--orientation", orientation_, "old-over-new (default) or new-over-old")
        ->check(CLI::IsMember({"old-over-new", "new-over-old"}));
    compare->callback([&] { action = [&] { return cmd_compare(); }; });

    // history
    auto* history = app.add_subcommand("history", "List versions or a metric trend from the store");
    history->add_option("--name", model_name_, "Model name")->required();
    history->add_option("--metric", metric_, "Metric key for a trend report");
    history->add_option("--provenance", provenance_, "Only values with this provenance");
    history->callback([&] { action = [&] { return cmd_history(); }; });

    // record
    auto* record = app.add_subcommand("record", "Run the pipeline and append a snapshot to the store");
    record->add_option("--model", model_path_, "Model file")->required();
    record->add_option("--workload", workload_path_, "Workload file")->required();
    record->add_option("--version", version_, "Version label (defaults to the model's)");
    record->add_option("--accuracy", accuracy_, "Model accuracy");
    record->add_option("--notes", notes_, "Free text");
    record->add_option("--timestamp", timestamp_, "Seconds since epoch (defaults to now)");
    record->add_option("--learning-counts", learning_counts_path_, "Op counts of one training sample");
    record->add_option("--duty-rate", duty_rate_, "Inference rate (Hz) for the duty-cycled battery budget");
    record->add_flag("--exclude-membrane-macs", exclude_membrane_macs_,
                     "Do not feed leak MACs into derived memory accesses");
    record->callback([&] { action = [&] { return cmd_record(); }; });

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Record an externally obtained metric value");
    ingest->add_option("--name", model_name_, "Model name")->required();
    ingest->add_option("--version", version_, "Version label")->required();
    ingest->add_option("--metric", metric_, "Metric key")->required();
    ingest->add_option("--value", value_, "Value")->required();
    ingest->add_option("--provenance", provenance_, "ingested (default), measured, estimated or computed");
    ingest->add_option("--register-unit", register_unit_, "Register an unknown metric with this unit");
    ingest->add_option("--register-polarity", register_polarity_, "lower-is-better or higher-is-better");
    ingest->add_option("--timestamp", timestamp_, "Seconds since epoch (defaults to now)");
    ingest->callback([&] { action = [&] { return cmd_ingest(); }; });

    // report
    auto* report = app.add_subcommand("report", "Render a report from the store or a live pipeline run");
    report->add_option("--name", model_name_, "Model name in the store");
    report->add_option("--model", model_path_, "Model file (live mode)");
    report->add_option("--workload", workload_path_, "Workload file (live mode)");
    report->add_option("--accuracy", accuracy_, "Model accuracy (live mode)");
    report->callback([&] { action = [&] { return cmd_report(); }; });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out_, err_);
      return code == 0 ? kOk : kInputError;
    }

    try {
      rules_ = ActionabilityRules{};
      if (!g_.hwspec.empty()) {
        spec_ = load_hwspec(g_.hwspec);
        rules_.max_power_density = spec_->power_density_limit;
      }
      if (!g_.limit_overrides.empty()) apply_limit_overrides(rules_, g_.limit_overrides);
      return action();
    } catch (const CapabilityError& e) {
      err_ << "error: " << e.what() << '\n';
      return kMissingCapability;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kInputError;
    }
  }

private:
  ReportFormat format() const { return parse_report_format(g_.format); }

  void emit(const ReportDocument& doc) { out_ << render(doc, format()); }

  const HardwareSpec& require_spec() const {
    if (!spec_) throw ValidationError("--hwspec is required for this command");
    return *spec_;
  }

  PipelineOptions pipeline_options() const {
    PipelineOptions o;
    o.memory.include_membrane_macs = !exclude_membrane_macs_;
    o.rules = rules_;
    o.accuracy = accuracy_;
    if (accuracy_ && !(*accuracy_ >= 0.0 && *accuracy_ <= 1.0))
      throw ValidationError("--accuracy must be in [0,1]");
    if (duty_rate_) o.duty = DutyCycle{*duty_rate_, spec_ ? spec_->static_power : 0.0};
    if (!learning_counts_path_.empty()) {
      double d = 0.0;
      o.learning_ops = read_counts(learning_counts_path_, d);
      o.learning_duration = d;
    }
    return o;
  }

  Workload load_workload_with_seed(const ModelDescriptor& model) const {
    auto w = load_workload(workload_path_, model);
    if (g_.seed) w.config.seed = *g_.seed;
    return w;
  }

  static std::int64_t now() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
  }

  ReportDocument document_for(const std::string& name, const std::string& version,
                              const std::map<std::string, double>& values) const {
    MetricSnapshot s;
    s.model_name = name;
    s.version = version;
    s.values = values;
    s.accuracy = accuracy_;
    return report_from_snapshot(s, {}, rules_);
  }

  int cmd_analyze() {
    const auto model = load_model(model_path_);
    auto doc = document_for(model.name, model.version, static_values(analyze_model(model)));
    doc.alerts.clear();
    doc.skipped_rules.clear();
    emit(doc);
    return kOk;
  }

  int cmd_simulate() {
    const auto model = load_model(model_path_);
    const auto workload = load_workload_with_seed(model);
    const auto trace = snnergy::simulate(model, workload);
    if (!trace_out_.empty()) save_trace(trace, trace_out_);
    const auto ops = effective_synops(trace);
    MemoryAccessOptions mo;
    mo.include_membrane_macs = !exclude_membrane_macs_;
    auto values = workload_values(ops, memory_accesses(ops, mo));
    values["dense_synops"] =
        static_cast<double>(dense_synops(model, workload.config.timesteps, workload.config.input_mode).total_sops());
    values["activation_sparsity"] = activation_sparsity(trace, rules_.min_activation_sparsity).activation_sparsity;
    values["inference_time"] = trace.duration();
    auto doc = document_for(model.name, model.version, values);
    doc.skipped_rules.clear();
    emit(doc);
    return kOk;
  }

  int cmd_estimate() {
    const auto& spec = require_spec();
    std::optional<WorkloadTrace> trace;
    OpCounts ops;
    double duration = 0.0;
    std::string name = "counts", version = "-";
    if (!trace_path_.empty()) {
      trace = load_trace(trace_path_);
      ops = effective_synops(*trace);
      duration = trace->duration();
      name = trace->model_name;
      version = trace->model_version;
    } else if (!counts_path_.empty()) {
      ops = read_counts(counts_path_, duration);
    } else {
      throw ValidationError("estimate needs --trace or --counts");
    }
    const auto opts = pipeline_options();
    const auto est = estimate_all(ops, duration, spec, trace ? &*trace : nullptr, opts);
    for (const auto& key : requested_metrics_) {
      if (!find_builtin(key)) throw ValidationError("unknown metric '" + key + "'");
      for (const auto& [k, why] : est.unavailable)
        if (k == key) throw CapabilityError(key + ": " + why);
    }
    auto values = workload_values(ops, est.memory);
    values.merge(estimate_values(est, accuracy_));
    if (trace) values["activation_sparsity"] = activation_sparsity(*trace, rules_.min_activation_sparsity).activation_sparsity;
    auto doc = document_for(name, version, values);
    doc.skipped_rules.clear();
    for (const auto& [k, why] : est.unavailable) doc.notes.push_back(k + " not computed: " + why);
    emit(doc);
    return kOk;
  }

  int cmd_compare() {
    const auto orientation =
        orientation_ == "new-over-old" ? RatioOrientation::new_over_old : RatioOrientation::old_over_new;
    VersionMeasurement old_m, new_m;
    if (!old_spec_.empty() || !new_spec_.empty()) {
      if (old_spec_.empty() || new_spec_.empty()) throw ValidationError("compare needs both --old and --new");
      old_m = parse_measurement(old_spec_, "--old");
      new_m = parse_measurement(new_spec_, "--new");
      if (old_m.version.empty()) old_m.version = "old";
      if (new_m.version.empty()) new_m.version = "new";
    } else {
      if (g_.store.empty() || model_name_.empty() || old_version_.empty() || new_version_.empty())
        throw ValidationError("compare needs --old/--new or --store, --name, --old-version and --new-version");
      TrendStore store(g_.store);
      old_m = measurement_from_store(store, model_name_, old_version_);
      new_m = measurement_from_store(store, model_name_, new_version_);
    }
    emit(compare_document(old_m, new_m, orientation, model_name_));
    return kOk;
  }

  int cmd_history() {
    if (g_.store.empty()) throw ValidationError("--store (or SNNERGY_STORE) is required");
    TrendStore store(g_.store);
    ReportDocument doc;
    doc.model = model_name_;
    if (!metric_.empty()) {
      std::optional<Provenance> filter;
      if (!provenance_.empty()) filter = parse_provenance(provenance_);
      doc.trends.push_back(store.trend_report(model_name_, metric_, filter));
    } else {
      for (const auto& s : store.history(model_name_))
        doc.notes.push_back("version " + s.version + " timestamp " + std::to_string(s.timestamp) + " metrics " +
                            std::to_string(s.values.size()) + (s.notes.empty() ? "" : " notes: " + s.notes));
      for (const auto& e : store.externals())
        if (e.model_name == model_name_)
          doc.notes.push_back("version " + e.version + " external " + e.metric + "=" + format_number(e.value) + " (" +
                              std::string(to_string(e.provenance)) + ")");
    }
    emit(doc);
    return kOk;
  }

  int cmd_record() {
    if (g_.store.empty()) throw ValidationError("--store (or SNNERGY_STORE) is required");
    const auto model = load_model(model_path_);
    const auto workload = load_workload_with_seed(model);
    auto result = run_pipeline(model, workload, spec_ ? &*spec_ : nullptr, pipeline_options());
    if (!version_.empty()) result.model_version = version_;
    const auto snap = to_snapshot(result, timestamp_.value_or(now()), notes_);
    TrendStore store(g_.store);
    store.record_snapshot(snap);
    out_ << "recorded " << snap.model_name << ' ' << snap.version << " (" << snap.values.size() << " metrics)\n";
    return kOk;
  }

  int cmd_ingest() {
    if (g_.store.empty()) throw ValidationError("--store (or SNNERGY_STORE) is required");
    TrendStore store(g_.store);
    if (!store.find_metric(metric_)) {
      if (register_unit_.empty())
        throw ValidationError("unregistered metric '" + metric_ + "' (pass --register-unit to register it)");
      store.register_metric(metric_, register_unit_,
                            register_polarity_.empty() ? Polarity::lower_is_better : parse_polarity(register_polarity_));
    }
    const auto prov = provenance_.empty() ? Provenance::ingested : parse_provenance(provenance_);
    store.record_external_metric(model_name_, version_, metric_, value_, prov, timestamp_.value_or(now()));
    out_ << "ingested " << metric_ << '=' << format_number(value_) << " (" << to_string(prov) << ") for "
         << model_name_ << ' ' << version_ << '\n';
    return kOk;
  }

  int cmd_report() {
    ReportDocument doc;
    if (!model_path_.empty()) {
      if (!model_name_.empty()) throw ValidationError("report takes either --name or --model, not both");
      if (workload_path_.empty()) throw ValidationError("live report needs --workload");
      const auto model = load_model(model_path_);
      const auto workload = load_workload_with_seed(model);
      const auto result = run_pipeline(model, workload, spec_ ? &*spec_ : nullptr, pipeline_options());
      doc = report_from_snapshot(to_snapshot(result, 0), {}, rules_);
      if (result.estimate)
        for (const auto& [k, why] : result.estimate->unavailable) doc.notes.push_back(k + " not computed: " + why);
    } else {
      if (g_.store.empty()) throw ValidationError("--store (or SNNERGY_STORE) is required");
      if (model_name_.empty()) throw ValidationError("report needs --name (store) or --model (live)");
      doc = report_from_store(TrendStore(g_.store), model_name_, rules_);
    }
    emit(doc);
    return doc.alerts.empty() ? kOk : kActionabilityAlert;
  }

  std::ostream& out_;
  std::ostream& err_;
  Globals g_;
  ActionabilityRules rules_;
  std::optional<HardwareSpec> spec_;

  std::string model_path_, workload_path_, trace_out_, trace_path_, counts_path_, learning_counts_path_;
  std::vector<std::string> requested_metrics_;
  std::optional<double> duty_rate_, accuracy_;
  bool exclude_membrane_macs_ = false;
  std::string old_spec_, new_spec_, model_name_, old_version_, new_version_, orientation_ = "old-over-new";
  std::string metric_, provenance_, version_, notes_, register_unit_, register_polarity_;
  std::optional<std::int64_t> timestamp_;
  double value_ = 0.0;
};

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return Runner(out, err).run(argc, argv);
}

}  // namespace snnergy::cli
