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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "snnergy_cli.hpp"
#include "test_support.hpp"

using namespace snnergy;
using snnergy::test::fixture;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "snnergy");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string fx(const char* name) { return fixture(name).string(); }

std::vector<std::string> live_report_args(const char* format) {
  return {"--hwspec", fx("illustrative.hwspec.json"), "--format", format,       "report",
          "--model",  fx("fc_2x3.model.json"),         "--workload", fx("fc_2x3.workload.json")};
}

// key -> value for every "metric" record of a JSON-lines report.
std::map<std::string, double> json_metrics(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j.at("record") == "metric") out[j.at("key").get<std::string>()] = j.at("value").get<double>();
  }
  return out;
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

std::map<std::string, double> csv_metrics(const std::string& text) {
  std::map<std::string, double> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto cells = csv_split(line);
    if (cells.at(0) == "metric") out[cells.at(3)] = std::strtod(cells.at(4).c_str(), nullptr);
  }
  return out;
}

void check_golden(const std::string& name, const std::string& actual) {
  const auto path = std::filesystem::path(SNNERGY_GOLDEN_DIR) / name;
  if (std::getenv("SNNERGY_UPDATE_GOLDEN")) {
    std::ofstream(path, std::ios::binary) << actual;
    GTEST_SKIP() << "rewrote " << path;
  }
  std::ifstream in(path, std::ios::binary);
  ASSERT_TRUE(in) << "missing golden file " << path;
  const std::string expected{std::istreambuf_iterator<char>(in), {}};
  EXPECT_EQ(actual, expected) << "golden mismatch for " << name;
}

// Two versions of the fixture model plus an ingested training time, all
// with pinned timestamps.
void populate_store(const std::filesystem::path& store) {
  const auto s = store.string();
  const auto hw = fx("illustrative.hwspec.json");
  ASSERT_EQ(invoke({"--store", s, "--hwspec", hw, "record", "--model", fx("fc_2x3.model.json"), "--workload",
                 fx("fc_2x3.workload.json"), "--version", "v1", "--accuracy", "0.7", "--timestamp", "100"})
                .code,
            0);
  ASSERT_EQ(invoke({"--store", s, "--hwspec", hw, "record", "--model", fx("fc_2x3.model.json"), "--workload",
                 fx("rate.workload.json"), "--version", "v2", "--accuracy", "0.8", "--timestamp", "200"})
                .code,
            0);
  ASSERT_EQ(invoke({"--store", s, "ingest", "--name", "fc-2x3", "--version", "v2", "--metric", "training_time",
                 "--value", "3600", "--timestamp", "300"})
                .code,
            0);
}

}  // namespace

TEST(Cli, SimulateReportsFixtureCounts) {
  const auto r = invoke({"--format", "json", "simulate", "--model", fx("fc_2x3.model.json"), "--workload",
                      fx("fc_2x3.workload.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_EQ(m.at("synaptic_acs"), 9.0);
  EXPECT_EQ(m.at("effective_synops"), 9.0);
  EXPECT_EQ(m.at("memory_reads"), 36.0);
}

TEST(Cli, SimulateIsDeterministicPerSeed) {
  auto args = std::vector<std::string>{"--seed", "5", "--format", "json", "simulate", "--model",
                                       fx("fc_2x3.model.json"), "--workload", fx("rate.workload.json")};
  const auto a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  args[1] = "6";
  EXPECT_NE(invoke(args).out, a.out);
}

TEST(Cli, SimulateTraceFeedsEstimate) {
  test::TempDir dir("cli");
  const auto trace = (dir / "trace.json").string();
  ASSERT_EQ(invoke({"simulate", "--model", fx("fc_2x3.model.json"), "--workload", fx("fc_2x3.workload.json"),
                 "--trace-out", trace})
                .code,
            0);
  const auto r = invoke({"--hwspec", fx("zero_overhead.hwspec.json"), "--format", "json", "estimate", "--trace", trace});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  // 9 ACs at 1 pJ plus (36 reads + 15 writes) at 2 pJ
  EXPECT_TRUE(test::close_rel(m.at("model_energy_per_inference"), 111e-12, 1e-12));
}

TEST(Cli, EstimateFromCounts) {
  const auto r = invoke({"--hwspec", fx("zero_overhead.hwspec.json"), "--format", "json", "estimate", "--counts",
                      fx("acs10.counts.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_TRUE(test::close_rel(m.at("model_energy_per_inference"), 70e-12, 1e-12));
  EXPECT_TRUE(test::close_rel(m.at("energy_per_inference"), 70e-12, 1e-12));
  EXPECT_EQ(m.at("overhead_energy_per_inference"), 0.0);
}

TEST(Cli, EstimateZeroOpsIsStaticOnly) {
  test::TempDir dir("cli");
  std::ofstream(dir / "hw.json") << R"({"e_mac":4e-12,"e_ac":1e-12,"e_read":2e-12,"e_write":2e-12,
                                        "e_membrane_update":0,"static_power":1e-6})";
  std::ofstream(dir / "zero.json") << R"({"macs":0,"acs":0,"duration":1.0})";
  const auto r = invoke({"--hwspec", (dir / "hw.json").string(), "--format", "json", "estimate", "--counts",
                      (dir / "zero.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_EQ(m.at("model_energy_per_inference"), 0.0);
  EXPECT_TRUE(test::close_rel(m.at("energy_per_inference"), 1e-6, 1e-12));
}

TEST(Cli, CompareInlineScenario) {
  const auto r = invoke({"--format", "json", "compare", "--old", "version=v1,energy=1e-3,time=1,accuracy=0.7", "--new",
                      "version=v2,energy=2e-3,time=1,accuracy=0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_TRUE(test::close_rel(m.at("marginal_energy_cost"), 1e-2, 1e-12));
  EXPECT_TRUE(test::close_rel(m.at("efficiency_ratio_old"), 700, 1e-12));
  EXPECT_TRUE(test::close_rel(m.at("accuracy_efficiency_tradeoff"), 400, 1e-12));
  EXPECT_EQ(m.at("powerup"), 2.0);
  EXPECT_EQ(m.at("speedup"), 1.0);
}

TEST(Cli, CompareIdenticalVersions) {
  const auto r = invoke({"--format", "json", "compare", "--old", "version=a,energy=3e-3,time=0.2", "--new",
                      "version=b,energy=3e-3,time=0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_EQ(m.at("speedup"), 1.0);
  EXPECT_EQ(m.at("greenup"), 1.0);
  EXPECT_EQ(m.at("powerup"), 1.0);
  EXPECT_EQ(m.count("marginal_energy_cost"), 0u);
}

TEST(Cli, CompareLiteralOrientation) {
  const auto r = invoke({"--format", "json", "compare", "--orientation", "new-over-old", "--old",
                      "energy=1,time=1", "--new", "energy=2,time=1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = json_metrics(r.out);
  EXPECT_EQ(m.at("greenup"), 2.0);
  EXPECT_EQ(m.at("powerup"), 0.5);
}

TEST(Cli, CompareFromStore) {
  test::TempDir dir("cli");
  const auto store = dir / "s.jsonl";
  populate_store(store);
  const auto r = invoke({"--store", store.string(), "--format", "json", "compare", "--name", "fc-2x3",
                      "--old-version", "v1", "--new-version", "v2"});
  ASSERT_EQ(r.code, 0) << r.err;
  // v1 runs 4 x 2.5 ms, v2 runs 50 x 1 ms
  EXPECT_TRUE(test::close_rel(json_metrics(r.out).at("speedup"), 0.01 / 0.05, 1e-12));
}

TEST(Cli, HistoryTrend) {
  test::TempDir dir("cli");
  const auto store = dir / "s.jsonl";
  populate_store(store);
  const auto r = invoke({"--store", store.string(), "history", "--name", "fc-2x3", "--metric", "effective_synops"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("degrading"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"--store", store.string(), "history", "--name", "fc-2x3", "--metric", "training_time"}).code, 2);
}

TEST(Cli, IngestUnknownMetricNeedsRegistration) {
  test::TempDir dir("cli");
  const auto s = (dir / "s.jsonl").string();
  EXPECT_EQ(invoke({"--store", s, "ingest", "--name", "n", "--version", "v", "--metric", "chip_temp", "--value", "40"}).code,
            2);
  EXPECT_EQ(invoke({"--store", s, "ingest", "--name", "n", "--version", "v", "--metric", "chip_temp", "--value", "40",
                 "--provenance", "measured", "--register-unit", "C"})
                .code,
            0);
}

TEST(ExitCodes, Contract) {
  test::TempDir dir("codes");
  const auto bad_model = dir / "bad.json";
  std::ofstream(bad_model) << R"({"name":"x","version":"1","layers":[{"kind":"input","out_size":1},
      {"kind":"fully-connected","in_size":1,"out_size":1,"weights":[[1]],"neuron":{"beta":1.2,"threshold":1}}]})";
  const auto bad_spec = dir / "bad.hwspec.json";
  std::ofstream(bad_spec) << R"({"e_mac":1,"e_ac":1,"e_read":1,"e_write":1,"e_membrane_update":0,"e_mca":1})";

  EXPECT_EQ(invoke({"analyze", "--model", fx("fc_2x3.model.json")}).code, 0);
  EXPECT_EQ(invoke({"analyze", "--model", (dir / "missing.json").string()}).code, 2);
  const auto invalid = invoke({"analyze", "--model", bad_model.string()});
  EXPECT_EQ(invalid.code, 2);
  EXPECT_NE(invalid.err.find("beta"), std::string::npos);
  EXPECT_EQ(invoke({"--hwspec", bad_spec.string(), "estimate", "--counts", fx("acs10.counts.json")}).code, 2);
  EXPECT_EQ(invoke({"estimate", "--counts", fx("acs10.counts.json")}).code, 2);
  EXPECT_EQ(invoke({"compare", "--old", "energy=1,time=1"}).code, 2);
  EXPECT_EQ(invoke({"bogus-verb"}).code, 2);
  EXPECT_EQ(invoke({"--format", "yaml", "analyze", "--model", fx("fc_2x3.model.json")}).code, 2);
  EXPECT_EQ(invoke({"--hwspec", fx("zero_overhead.hwspec.json"), "estimate", "--counts", fx("acs10.counts.json"),
                 "--metrics", "power_density"})
                .code,
            3);
  EXPECT_EQ(invoke({"--hwspec", fx("zero_overhead.hwspec.json"), "estimate", "--counts", fx("acs10.counts.json"),
                 "--metrics", "estimated_battery_life"})
                .code,
            3);
  EXPECT_EQ(invoke({"--hwspec", fx("zero_overhead.hwspec.json"), "estimate", "--counts", fx("acs10.counts.json"),
                 "--metrics", "energy_per_inference"})
                .code,
            0);
}

TEST(Report, SparsityAlertExitsFour) {
  test::TempDir dir("report");
  const auto store = dir / "s.jsonl";
  MetricSnapshot s;
  s.model_name = "net";
  s.version = "v1";
  s.values = {{"activation_sparsity", 0.55}, {"effective_synops", 100}};
  record_snapshot(store, s);
  const auto r = invoke({"--store", store.string(), "--format", "json", "report", "--name", "net"});
  EXPECT_EQ(r.code, 4);
  bool found = false;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j["record"] == "alert" && j["metric"] == "activation_sparsity") found = true;
  }
  EXPECT_TRUE(found) << r.out;
  // Alerts are informational elsewhere: simulate on the same data exits 0.
  EXPECT_EQ(invoke({"simulate", "--model", fx("fc_2x3.model.json"), "--workload", fx("fc_2x3.workload.json")}).code, 0);
}

TEST(Report, LimitOverrideSilencesAlert) {
  test::TempDir dir("report");
  const auto store = dir / "s.jsonl";
  MetricSnapshot s;
  s.model_name = "net";
  s.version = "v1";
  s.values = {{"power_density", 20.0}};
  record_snapshot(store, s);
  EXPECT_EQ(invoke({"--store", store.string(), "report", "--name", "net"}).code, 4);
  EXPECT_EQ(invoke({"--store", store.string(), "--limit-overrides", "power_density=40", "report", "--name", "net"}).code,
            0);
}

TEST(Report, EmptyHistoryIsValid) {
  test::TempDir dir("report");
  const auto r = invoke({"--store", (dir / "s.jsonl").string(), "--format", "json", "report", "--name", "nobody"});
  EXPECT_EQ(r.code, 0);
  const auto header = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_EQ(header["record"], "header");
  EXPECT_EQ(header["entries"], 0);
  const auto csv = invoke({"--store", (dir / "s.jsonl").string(), "--format", "csv", "report", "--name", "nobody"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 1);
}

TEST(Report, CsvAndJsonCarrySameValues) {
  const auto j = invoke(live_report_args("json"));
  const auto c = invoke(live_report_args("csv"));
  ASSERT_EQ(j.code, 0) << j.err;
  ASSERT_EQ(c.code, 0) << c.err;
  const auto jm = json_metrics(j.out);
  EXPECT_FALSE(jm.empty());
  EXPECT_EQ(jm, csv_metrics(c.out));
}

TEST(Report, EveryMachineValueHasUnitAndProvenance) {
  const auto r = invoke(live_report_args("json"));
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);) {
    const auto j = nlohmann::json::parse(line);
    if (j["record"] != "metric") continue;
    EXPECT_FALSE(j["unit"].get<std::string>().empty()) << line;
    const auto p = parse_provenance(j["provenance"].get<std::string>());
    const auto& d = lookup_metric(j["key"].get<std::string>());
    if (d.provenance_class == Provenance::estimated) {
      EXPECT_EQ(p, Provenance::estimated) << line;
    }
    EXPECT_EQ(j["accessibility"], d.accessibility);
    EXPECT_EQ(j["high_fidelity"], d.high_fidelity);
    EXPECT_EQ(j["actionability"], d.actionability);
    EXPECT_EQ(j["trend_based"], d.trend_based);
  }
}

TEST(Report, EndToEndDeterminism) {
  for (const char* f : {"json", "csv", "markdown", "text"}) {
    const auto a = invoke(live_report_args(f));
    const auto b = invoke(live_report_args(f));
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << f;
  }
}

TEST(Golden, LiveReportJson) { check_golden("live_report.jsonl", invoke(live_report_args("json")).out); }

TEST(Golden, LiveReportCsv) { check_golden("live_report.csv", invoke(live_report_args("csv")).out); }

TEST(Golden, StoreReportJson) {
  test::TempDir dir("golden");
  populate_store(dir / "s.jsonl");
  const auto r = invoke({"--store", (dir / "s.jsonl").string(), "--format", "json", "report", "--name", "fc-2x3"});
  ASSERT_EQ(r.code, 0) << r.err;
  check_golden("store_report.jsonl", r.out);
}

TEST(Golden, StoreReportCsv) {
  test::TempDir dir("golden");
  populate_store(dir / "s.jsonl");
  const auto r = invoke({"--store", (dir / "s.jsonl").string(), "--format", "csv", "report", "--name", "fc-2x3"});
  ASSERT_EQ(r.code, 0) << r.err;
  check_golden("store_report.csv", r.out);
}

TEST(Golden, CompareJson) {
  check_golden("compare.jsonl",
               invoke({"--format", "json", "compare", "--old", "version=v1,energy=1e-3,time=1,accuracy=0.7", "--new",
                    "version=v2,energy=2e-3,time=1,accuracy=0.8"})
                   .out);
}
