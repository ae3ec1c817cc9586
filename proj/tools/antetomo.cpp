// Copyright 2026 The antetomo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 2 validation failure,
// 3 numerical nonconvergence.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antetomo/pipeline.hpp"

namespace fs = std::filesystem;
using namespace antetomo;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

/// ISO-8601 UTC; honours SOURCE_DATE_EPOCH for reproducible manifests.
std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(epoch));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string in_dir(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

void write_manifest(const std::string& dir, const std::string& command, const std::string& config,
                    const std::vector<std::string>& stages, std::uint64_t seed, const std::vector<std::string>& inputs) {
  json m{{"tool", "antetomo"},
         {"version", kToolVersion},
         {"command", command},
         {"config", config},
         {"inputs", inputs},
         {"out", dir},
         {"stages", stages},
         {"seed", seed},
         {"timestamp", timestamp()}};
  write_text_file(in_dir(dir, "manifest_" + command + ".json"), dump(m));
}

struct Args {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string group = "combined";
  bool unscramble = false;
  int resamples = 100;
  unsigned workers = 1;
  std::string counts;
  std::vector<std::string> reports;
};

RunOptions run_options(const Args& a, std::uint64_t default_seed) {
  RunOptions opt;
  opt.seed = a.seed.value_or(default_seed);
  opt.resamples = a.resamples;
  opt.workers = std::max(1u, a.workers);
  return opt;
}

ExperimentConfig load_config(const Args& a) {
  ExperimentConfig cfg = config_from_json(read_json_file(a.config));
  if (a.seed) cfg.seed = *a.seed;
  return cfg;
}

void run_report(const std::vector<json>& docs, const std::string& out) {
  const ReportTables t = report(docs);
  write_text_file(in_dir(out, "summary.csv"), t.summary_csv);
  write_text_file(in_dir(out, "plot_data.csv"), t.plot_csv);
  std::cout << t.summary_csv;
}

int cmd_simulate(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  prepare_dir(a.out);
  write_text_file(in_dir(a.out, "counts.json"), dump(simulate(cfg, a.workers)));
  write_manifest(a.out, "simulate", a.config, {"simulate"}, cfg.seed, {});
  return 0;
}

int cmd_reconstruct(const Args& a) {
  const CountsTable counts = counts_from_json(read_json_file(a.counts));
  const BellGroup group = parse_bell_group(a.group);
  const RunOptions opt = run_options(a, 0);
  prepare_dir(a.out);
  write_text_file(in_dir(a.out, "reconstruct_" + to_string(group) + ".json"),
                  dump(reconstruct(counts, group, opt, a.unscramble)));
  write_manifest(a.out, "reconstruct", "", {"reconstruct:" + to_string(group)}, opt.seed, {a.counts});
  return 0;
}

int cmd_process(const Args& a) {
  const CountsTable counts = counts_from_json(read_json_file(a.counts));
  const RunOptions opt = run_options(a, 0);
  prepare_dir(a.out);
  write_text_file(in_dir(a.out, "process.json"), dump(process(counts, opt)));
  write_manifest(a.out, "process", "", {"process"}, opt.seed, {a.counts});
  return 0;
}

int cmd_report(const Args& a) {
  std::vector<json> docs;
  for (const auto& path : a.reports) docs.push_back(read_json_file(path));
  prepare_dir(a.out);
  run_report(docs, a.out);
  write_manifest(a.out, "report", "", {"report"}, 0, a.reports);
  return 0;
}

int cmd_fixtures(const Args& a) {
  prepare_dir(a.out);
  write_text_file(in_dir(a.out, "fixtures.json"), dump(fixtures_catalog()));
  for (BellGroup g : {BellGroup::phi_plus, BellGroup::phi_minus, BellGroup::combined})
    write_text_file(in_dir(a.out, "fixture_" + to_string(g) + ".json"), dump(fixture_state_report(g)));
  write_text_file(in_dir(a.out, "fixture_process.json"), dump(fixture_process_report()));
  write_manifest(a.out, "fixtures", "", {"fixtures"}, 0, {});
  return 0;
}

/// simulate -> reconstruct (all groups) -> process -> report, sharing one seed.
int cmd_pipeline(const Args& a) {
  const ExperimentConfig cfg = load_config(a);
  const RunOptions opt = run_options(a, cfg.seed);
  prepare_dir(a.out);

  const json counts_doc = simulate(cfg, a.workers);
  write_text_file(in_dir(a.out, "counts.json"), dump(counts_doc));
  const CountsTable counts = counts_from_json(counts_doc);

  std::vector<json> docs;
  for (BellGroup g : {BellGroup::phi_plus, BellGroup::phi_minus, BellGroup::combined}) {
    docs.push_back(reconstruct(counts, g, opt));
    write_text_file(in_dir(a.out, "reconstruct_" + to_string(g) + ".json"), dump(docs.back()));
  }
  docs.push_back(process(counts, opt));
  write_text_file(in_dir(a.out, "process.json"), dump(docs.back()));
  run_report(docs, a.out);
  write_manifest(a.out, "pipeline", a.config,
                 {"simulate", "reconstruct:phi+", "reconstruct:phi-", "reconstruct:combined", "process", "report"},
                 opt.seed, {});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"antetomo: antedated quantum tomography simulation and reconstruction"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&a](CLI::App* sub) {
    sub->add_option("--out", a.out, "Output directory")->capture_default_str();
    sub->add_option("--workers", a.workers, "Worker threads (output does not depend on this)")->capture_default_str();
  };
  auto add_seed = [&a](CLI::App* sub) { sub->add_option("--seed", a.seed, "Root random seed"); };
  auto add_resamples = [&a](CLI::App* sub) {
    sub->add_option("--resamples", a.resamples, "Poisson bootstrap resamples")->capture_default_str();
  };

  auto* sim = app.add_subcommand("simulate", "Monte Carlo simulation of the experiment; writes counts.json");
  sim->add_option("--config", a.config, "Experiment config (JSON)")->required();
  add_seed(sim);
  add_common(sim);

  auto* rec = app.add_subcommand("reconstruct", "Per-state MLE tomography of one Bell group");
  rec->add_option("counts", a.counts, "Counts file")->required();
  rec->add_option("--group", a.group, "phi+, phi- or combined")->capture_default_str();
  rec->add_flag("--unscramble", a.unscramble, "Sign-correct the phi- group before reconstruction");
  add_seed(rec);
  add_resamples(rec);
  add_common(rec);

  auto* proc = app.add_subcommand("process", "Process tomography of the time channel per Bell group");
  proc->add_option("counts", a.counts, "Counts file")->required();
  add_seed(proc);
  add_resamples(proc);
  add_common(proc);

  auto* rep = app.add_subcommand("report", "Summary table and plot-data CSV from report files");
  rep->add_option("reports", a.reports, "Report files")->required();
  add_common(rep);

  auto* fix = app.add_subcommand("fixtures", "Dump the published matrices and their reports");
  add_common(fix);

  auto* pipe = app.add_subcommand("pipeline", "simulate, reconstruct, process and report in one run");
  pipe->add_option("--config", a.config, "Experiment config (JSON)")->required();
  add_seed(pipe);
  add_resamples(pipe);
  add_common(pipe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(a);
    if (*rec) return cmd_reconstruct(a);
    if (*proc) return cmd_process(a);
    if (*rep) return cmd_report(a);
    if (*fix) return cmd_fixtures(a);
    if (*pipe) return cmd_pipeline(a);
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
