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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and nowhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "snnergy_cli.hpp"
#include "test_support.hpp"

using namespace snnergy;

namespace {

constexpr double kRelTol = 1e-12;
constexpr auto kCatalogBudget = std::chrono::seconds(1);
constexpr auto kOracleBudget = std::chrono::seconds(60);
constexpr int kOracleCases = 1000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

bool rel_eq(double a, double b) { return test::close_rel(a, b, kRelTol); }

Outcome catalog_fidelity() {
  Outcome o;
  struct Row {
    const char* name;
    bool acc, hf, act, trend;
  };
  const Row rows[] = {
      {"Parameters", true, false, false, false},
      {"Effective Synaptic Operations", true, false, false, true},
      {"Membrane Updates", true, false, false, true},
      {"Activation Sparsity", true, false, true, true},
      {"Memory Footprint", true, false, false, false},
      {"Connection Sparsity", true, false, false, false},
      {"Memory Accesses", true, false, false, true},
      {"Training Time", true, false, false, true},
      {"Energy per Inference", false, true, false, false},
      {"Energy per Learning", false, true, false, false},
      {"Energy Area FoM", false, true, false, false},
      {"Peak per Energy Consumption", false, true, false, false},
      {"Power Density", false, true, true, false},
      {"Energy Delay Product", true, true, false, false},
      {"Speedup", true, true, true, true},
      {"Greenup", true, true, true, true},
      {"Powerup", true, true, true, true},
      {"Estimated battery life", true, true, true, false},
      {"Inferences per battery cycle", true, true, true, false},
      {"Accuracy-Efficiency Tradeoff", true, true, true, true},
  };
  const auto start = std::chrono::steady_clock::now();
  const auto& cat = builtin_catalog();
  std::size_t t1 = 0, t2 = 0, mismatches = 0;
  for (const auto& d : cat) {
    t1 += d.source_table == SourceTable::table1;
    t2 += d.source_table == SourceTable::table2;
  }
  for (std::size_t i = 0; i < std::size(rows); ++i) {
    const auto* d = find_builtin(rows[i].name);
    const auto table = i < 13 ? SourceTable::table1 : SourceTable::table2;
    if (!d || d->source_table != table || d->accessibility != rows[i].acc || d->high_fidelity != rows[i].hf ||
        d->actionability != rows[i].act || d->trend_based != rows[i].trend)
      ++mismatches;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  o.require(cat.size() == 20 && t1 == 13 && t2 == 7, "catalog shape is not 13 + 7");
  o.require(mismatches == 0, std::to_string(mismatches) + " row mismatches");
  o.require(elapsed < kCatalogBudget, "catalog check exceeded 1 s");
  o.detail = o.pass ? "20/20 rows, 0 mismatches" : o.detail;
  return o;
}

Outcome memory_access_derivation() {
  Outcome o;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> n(0, std::uint64_t{1} << 40);
  for (int i = 0; i < 1000; ++i) {
    OpCounts c;
    c.macs = n(rng);
    c.acs = n(rng);
    const auto m = memory_accesses(c, {.include_membrane_macs = false});
    o.require(m.reads == 3 * c.macs + 2 * c.acs && m.writes == c.macs + c.acs,
              "identity broken at case " + std::to_string(i));
  }
  if (o.pass) o.detail = "1000/1000 exact";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(3);
  std::size_t to_zero = 0, subtract = 0;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < kOracleCases; ++i) {
    const auto c = test::random_case(rng, 32, 64);
    for (const auto& l : c.model.layers)
      if (l.weighted()) (l.neuron.reset_mode == ResetMode::to_zero ? to_zero : subtract)++;
    const auto trace = test::run(c);
    const auto ref = test::oracle(c);
    o.require(trace.totals() == ref.counts, "tallies differ at case " + std::to_string(i));
    o.require(trace.layer_spikes == ref.layer_spikes, "spike trains differ at case " + std::to_string(i));
  }
  const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(to_zero > 0 && subtract > 0, "both reset modes not exercised");
  o.require(secs < std::chrono::duration<double>(kOracleBudget).count(), "exceeded 60 s");
  if (o.pass) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%d cases identical in %.2f s", kOracleCases, kOracleCases, secs);
    o.detail = buf;
  }
  return o;
}

Outcome actionability_thresholds() {
  Outcome o;
  auto alerts_for = [](const char* key, double v) {
    MetricSnapshot s;
    s.values[key] = v;
    return evaluate_alerts(s).alerts.size();
  };
  o.require(alerts_for("activation_sparsity", 0.59) == 1, "sparsity 0.59 did not alert");
  o.require(alerts_for("activation_sparsity", 0.60) == 0, "sparsity 0.60 alerted");
  o.require(sparsity_from_totals(41, 100).alert.has_value(), "trace sparsity 0.59 did not alert");
  o.require(!sparsity_from_totals(40, 100).alert.has_value(), "trace sparsity 0.60 alerted");

  HardwareSpec area;
  area.chip_area = 1.0;
  o.require(power_density(10.01e-3, area).violation, "10.01 mW/cm2 compliant");
  o.require(!power_density(10.00e-3, area).violation, "10.00 mW/cm2 violated");
  o.require(alerts_for("power_density", 10.01) == 1 && alerts_for("power_density", 10.00) == 0,
            "power density alert boundary");

  HardwareSpec battery;
  battery.battery = BatterySpec{};
  battery.battery->capacity_joules = 10.0 * kSecondsPerYear;
  o.require(estimated_battery_life(1.0, battery).meets_requirement, "10.0 years failed");
  o.require(!estimated_battery_life(10.0 / 9.99, battery).meets_requirement, "9.99 years passed");
  o.require(alerts_for("estimated_battery_life", 9.99) == 1 && alerts_for("estimated_battery_life", 10.0) == 0,
            "battery alert boundary");
  if (o.pass) o.detail = "all six boundaries exact";
  return o;
}

Outcome reference_scenario() {
  Outcome o;
  for (double e : {1e-3, 1.0, 3.7e-9, 42.0}) {
    const auto r = accuracy_energy_tradeoff({"V1", e, 1.0, 0.7}, {"V2", 2 * e, 1.0, 0.8});
    o.require(rel_eq(r.efficiency_ratio_old, 0.7 / e), "V1 efficiency ratio");
    o.require(rel_eq(r.efficiency_ratio_new, 0.4 / e), "V2 efficiency ratio");
    o.require(r.marginal_energy_cost && rel_eq(*r.marginal_energy_cost, 10 * e), "marginal energy cost");
  }
  if (o.pass) o.detail = "ratios 0.7/E, 0.4/E and marginal 10E within 1e-12";
  return o;
}

Outcome powerup_consistency() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> logv(-12.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const VersionMeasurement a{"old", std::pow(10.0, logv(rng)), std::pow(10.0, logv(rng)), {}};
    const VersionMeasurement b{"new", std::pow(10.0, logv(rng)), std::pow(10.0, logv(rng)), {}};
    const double p = powerup(speedup(a, b), greenup(a, b));
    const double p_old = a.energy / a.time, p_new = b.energy / b.time;
    o.require(rel_eq(p, p_new / p_old), "ratio mismatch at case " + std::to_string(i));
    o.require((p > 1.0) == (p_new > p_old), "orientation mismatch at case " + std::to_string(i));
  }
  if (o.pass) o.detail = "1000/1000 within 1e-12, >1 iff more power";
  return o;
}

Outcome energy_conservation() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(0.0, 1e-11), power(0.0, 1e-3), dur(1e-4, 10.0);
  std::uniform_int_distribution<std::uint64_t> n(0, 10'000'000);
  for (int i = 0; i < 1000; ++i) {
    HardwareSpec s;
    s.e_mac = coef(rng);
    s.e_ac = coef(rng);
    s.e_read = coef(rng);
    s.e_write = coef(rng);
    s.e_membrane_update = coef(rng);
    s.e_layer_crossing = coef(rng);
    s.static_power = power(rng);
    s.adc_energy_per_sample = coef(rng);
    s.adc_samples_per_inference = static_cast<double>(n(rng) % 1000);
    s.tx_energy_per_bit = coef(rng);
    s.tx_bits_per_inference = static_cast<double>(n(rng) % 1000);
    s.membrane_count_mode = rng() % 2 ? MembraneCountMode::effective : MembraneCountMode::dense;
    OpCounts c;
    c.macs = n(rng);
    c.acs = n(rng);
    c.membrane_macs = n(rng);
    c.membrane_updates_dense = n(rng);
    c.membrane_updates_effective = c.membrane_updates_dense / 2;
    c.layer_crossings = n(rng) % 1000;
    const double d = dur(rng);
    const auto b = estimate_energy(c, memory_accesses(c), s, d);
    o.require(b.total == b.model.total + b.overhead.total, "conservation broken at case " + std::to_string(i));
    for (std::uint64_t k : {2u, 10u}) {
      const auto bk = estimate_energy(c.scaled(k), memory_accesses(c.scaled(k)), s, d);
      o.require(rel_eq(bk.model.total, static_cast<double>(k) * b.model.total),
                "homogeneity broken at case " + std::to_string(i));
      o.require(bk.overhead.static_energy == b.overhead.static_energy, "static energy changed");
    }
  }
  if (o.pass) o.detail = "1000/1000 exact conservation, k in {2,10} within 1e-12";
  return o;
}

Outcome determinism() {
  Outcome o;
  const auto hw = test::fixture("illustrative.hwspec.json").string();
  const auto model = test::fixture("fc_2x3.model.json").string();
  const auto workload = test::fixture("rate.workload.json").string();
  auto run = [&](const char* format) {
    const std::vector<std::string> args = {"snnergy", "--seed",  "11",  "--hwspec",  hw,      "--format",
                                           format,    "report",  "--model", model, "--workload", workload};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  for (const char* f : {"json", "csv"}) {
    const auto a = run(f), b = run(f);
    o.require(a.first == 0 || a.first == 4, std::string(f) + " run failed");
    o.require(!a.second.empty() && a.second == b.second, std::string(f) + " output differs between runs");
  }
  if (o.pass) o.detail = "json and csv byte-identical across runs";
  return o;
}

Outcome store_round_trip() {
  Outcome o;
  test::TempDir dir("acceptance");
  const auto path = dir / "store.jsonl";
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> v(0.0, 1e6);
  std::vector<MetricSnapshot> written;
  {
    TrendStore store(path);
    for (int i = 0; i < 100; ++i) {
      MetricSnapshot s;
      s.model_name = "model-" + std::to_string(i % 3);
      s.version = "v" + std::to_string(i / 3);
      s.timestamp = 1'700'000'000 + i;
      s.values = {{"effective_synops", static_cast<double>(i / 3 + 1) * 100.0},
                  {"energy_per_inference", v(rng) * 1e-12},
                  {"activation_sparsity", v(rng) / 1e6}};
      s.accuracy = static_cast<double>(rng() % 1001) / 1000.0;
      s.notes = "run " + std::to_string(i);
      store.record_snapshot(s);
      written.push_back(store.snapshots().back());
    }
  }
  const TrendStore reopened(path);
  o.require(reopened.snapshots() == written, "snapshots not recovered losslessly");
  for (std::size_t i = 0; i < written.size(); ++i)
    o.require(written[i].values == reopened.snapshots()[i].values, "value drift");

  bool rejected = false;
  try {
    record_snapshot(path, written.front());
  } catch (const StoreError&) {
    rejected = true;
  }
  o.require(rejected, "duplicate version accepted");
  o.require(TrendStore(path).snapshots().size() == 100, "store changed after rejected write");
  o.require(trend_report(path, "model-0", "effective_synops").direction == TrendDirection::degrading,
            "increasing effective synops not degrading");
  if (o.pass) o.detail = "100 snapshots over 3 models recovered; duplicate rejected; degrading";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"catalog fidelity", catalog_fidelity},
      {"memory-access derivation", memory_access_derivation},
      {"oracle equivalence", oracle_equivalence},
      {"actionability thresholds", actionability_thresholds},
      {"reference scenario reproduction", reference_scenario},
      {"powerup consistency", powerup_consistency},
      {"energy conservation and homogeneity", energy_conservation},
      {"end-to-end determinism", determinism},
      {"trend store round-trip", store_round_trip},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failures += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
