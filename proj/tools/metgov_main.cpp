// Copyright 2026 The Metgov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "metgov/amendments.hpp"
#include "metgov/errors.hpp"
#include "metgov/fixtures.hpp"
#include "metgov/sim.hpp"

namespace {

using namespace metgov;

int cmd_epoch_run(const std::string& config, const std::string& out) {
  Json j = load_json_file(config);
  EpochSpec spec = epoch_spec_from_json(j);
  EpochResult res =
      run_epoch(spec.space, spec.status_quo, spec.votes, spec.sources, spec.config);
  for (const std::string& line : res.trace) std::printf("%s\n", line.c_str());
  std::printf("outcome: %s (%s after %d rounds)\n",
              spec.space->show(res.outcome).c_str(),
              res.reached_quiescence ? "quiescent" : "cut off", res.rounds_used);
  if (!out.empty()) save_text_file(out, epoch_result_to_json(*spec.space, res).dump(2) + "\n");
  return 0;
}

int cmd_examples_verify(const std::string& dir) {
  std::vector<FixtureResult> results = run_fixture_dir(dir);
  if (results.empty()) throw ConfigError("no fixtures found in " + dir);
  size_t width = 0;
  for (const FixtureResult& r : results) width = std::max(width, r.name.size());
  int failed = 0;
  for (const FixtureResult& r : results) {
    std::printf("%-*s  %s\n", static_cast<int>(width), r.name.c_str(),
                r.pass ? "pass" : "FAIL");
    if (!r.pass) {
      ++failed;
      for (const std::string& note : r.notes)
        std::printf("%-*s    %s\n", static_cast<int>(width), "", note.c_str());
    }
  }
  std::printf("%zu/%zu fixtures pass\n", results.size() - failed, results.size());
  return failed == 0 ? 0 : 1;
}

int cmd_sweep(const std::string& config, const std::string& out,
              const std::string& records, bool seed_set, uint64_t seed,
              bool jobs_set, int jobs, bool profiles_set, int profiles,
              const std::string& grid, const std::string& status_quo) {
  SweepSettings s;
  if (!config.empty())
    s = sweep_settings_from_json(load_json_file(config));
  else if (!seed_set)
    throw ConfigError("sweep: pass --seed (or a --config that pins master_seed)");
  if (seed_set) s.master_seed = seed;
  if (jobs_set) s.jobs = jobs;
  if (profiles_set) s.profiles = profiles;
  if (!status_quo.empty()) s.status_quo_policy = status_quo;
  if (s.rows.empty()) {
    if (grid == "headline")
      s.rows = headline_grid();
    else if (grid != "full")
      throw ConfigError("sweep: --grid must be 'full' or 'headline'");
  }
  std::fprintf(stderr,
               "sweep: master_seed=%llu profiles=%d sigma=%g jobs=%d status_quo=%s rows=%zu\n",
               static_cast<unsigned long long>(s.master_seed), s.profiles, s.sigma, s.jobs,
               s.status_quo_policy.c_str(), s.rows.empty() ? full_grid().size() : s.rows.size());
  SweepResult res = run_sweep(s);
  std::string csv = stats_csv(res);
  if (out.empty())
    std::fputs(csv.c_str(), stdout);
  else
    save_text_file(out, csv);
  if (!records.empty()) save_text_file(records, records_jsonl(res));
  return 0;
}

std::vector<double> parse_vote_list(const std::string& csv) {
  std::vector<double> votes;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      votes.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("hrule: bad vote value '" + tok + "'");
    }
  }
  if (votes.empty()) throw ConfigError("hrule: --votes is empty");
  return votes;
}

int cmd_hrule(double sigma, const std::string& votes_csv, const std::string& mode,
              double step) {
  std::vector<double> votes = parse_vote_list(votes_csv);
  if (mode != "voted" && mode != "grid" && mode != "both")
    throw ConfigError("hrule: --mode must be voted, grid, or both");
  if (mode != "grid") {
    HRuleResult r = h_rule(sigma, votes, HRuleMode::VotedValues);
    std::printf("voted-values: %.10g\n", r.sigma_after);
  }
  if (mode != "voted") {
    HRuleResult r = h_rule(sigma, votes, HRuleMode::DenseGrid, step);
    std::printf("dense-grid: %.10g\n", r.sigma_after);
  }
  return 0;
}

bool numeric_field(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

void check_summary_csv(const std::string& path, std::vector<std::string>& problems) {
  std::ifstream in(path);
  if (!in) {
    problems.push_back("cannot open file");
    return;
  }
  static const char* kHeader = "setting,n,profiles,positive_cg_freq,gap_closing_ratio,hit_rate";
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    problems.push_back("bad header (want '" + std::string(kHeader) + "')");
    return;
  }
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) fields.push_back(tok);
    if (fields.size() != 6) {
      problems.push_back("row " + std::to_string(row) + ": want 6 fields, got " +
                         std::to_string(fields.size()));
      continue;
    }
    for (size_t i = 1; i < 6; ++i)
      if (!numeric_field(fields[i]))
        problems.push_back("row " + std::to_string(row) + ": field '" + fields[i] +
                           "' is not a number");
  }
}

void check_records_jsonl(const std::string& path, std::vector<std::string>& problems) {
  std::ifstream in(path);
  if (!in) {
    problems.push_back("cannot open file");
    return;
  }
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      problems.push_back("line " + std::to_string(row) + ": not valid JSON");
      continue;
    }
    for (const char* key : {"setting", "n", "index", "seed", "attempts", "opt", "peak",
                            "gap", "cg_positive", "hit", "heuristic_score", "closing_ratio"})
      if (!j.contains(key))
        problems.push_back("line " + std::to_string(row) + ": missing '" + key + "'");
  }
  if (row == 0) problems.push_back("empty file");
}

int cmd_schema_check(const std::string& path) {
  std::vector<std::string> problems;
  auto ends_with = [&](const char* suffix) {
    std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".csv")) {
    check_summary_csv(path, problems);
  } else if (ends_with(".jsonl")) {
    check_records_jsonl(path, problems);
  } else {
    Json j = load_json_file(path);
    if (j.is_object() && j.contains("space"))
      problems = check_epoch_spec(j);
    else {
      try {
        sweep_settings_from_json(j);
      } catch (const ConfigError& e) {
        problems.push_back(e.what());
      }
    }
  }
  if (problems.empty()) {
    std::printf("%s: ok\n", path.c_str());
    return 0;
  }
  for (const std::string& p : problems) std::printf("%s: %s\n", path.c_str(), p.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"governance rounds, epochs, and the compromise-gap laboratory"};
  app.require_subcommand(1);

  // epoch run
  CLI::App* epoch = app.add_subcommand("epoch", "single-epoch protocol driver");
  epoch->require_subcommand(1);
  CLI::App* epoch_run_cmd = epoch->add_subcommand("run", "run one epoch from a config");
  std::string epoch_config, epoch_out;
  epoch_run_cmd->add_option("--config", epoch_config, "epoch config document")->required();
  epoch_run_cmd->add_option("--out", epoch_out, "write the full result as JSON");

  // examples verify
  CLI::App* examples = app.add_subcommand("examples", "worked-example fixtures");
  examples->require_subcommand(1);
  CLI::App* verify = examples->add_subcommand("verify", "run every fixture and report");
  std::string fixtures_dir = default_fixtures_dir();
  verify->add_option("--fixtures", fixtures_dir, "fixture directory");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "compromise-gap simulation sweep");
  std::string sweep_config, sweep_out, sweep_records, sweep_grid = "full";
  uint64_t seed = 0;
  int jobs = 1, profiles = 300;
  sweep->add_option("--config", sweep_config, "sweep config document");
  sweep->add_option("--out", sweep_out, "summary CSV path (default: stdout)");
  sweep->add_option("--records", sweep_records, "line-delimited JSON records path");
  CLI::Option* seed_opt = sweep->add_option("--seed", seed, "master seed");
  CLI::Option* jobs_opt = sweep->add_option("--jobs", jobs, "worker thread count");
  CLI::Option* profiles_opt = sweep->add_option("--profiles", profiles, "profiles per row");
  sweep->add_option("--grid", sweep_grid, "row set when the config names none: full|headline");
  std::string sweep_status_quo;
  sweep->add_option("--status-quo", sweep_status_quo,
                    "status-quo policy: auto|sampled|center (default auto)");

  // hrule
  CLI::App* hrule = app.add_subcommand("hrule", "threshold self-amendment");
  double hr_sigma = 0.5, hr_step = 0.05;
  std::string hr_votes, hr_mode = "both";
  hrule->add_option("--sigma", hr_sigma, "current threshold")->required();
  hrule->add_option("--votes", hr_votes, "comma-separated preferred thresholds")->required();
  hrule->add_option("--mode", hr_mode, "candidate set: voted|grid|both");
  hrule->add_option("--step", hr_step, "dense-grid spacing");

  // schema-check
  CLI::App* schema = app.add_subcommand("schema-check", "validate emitted or config files");
  std::string schema_file;
  schema->add_option("--file", schema_file, "csv, jsonl, or json document")->required();

  int rc = 0;
  epoch_run_cmd->callback([&] { rc = cmd_epoch_run(epoch_config, epoch_out); });
  verify->callback([&] { rc = cmd_examples_verify(fixtures_dir); });
  sweep->callback([&] {
    rc = cmd_sweep(sweep_config, sweep_out, sweep_records, seed_opt->count() > 0, seed,
                   jobs_opt->count() > 0, jobs, profiles_opt->count() > 0, profiles,
                   sweep_grid, sweep_status_quo);
  });
  hrule->callback([&] { rc = cmd_hrule(hr_sigma, hr_votes, hr_mode, hr_step); });
  schema->callback([&] { rc = cmd_schema_check(schema_file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are config errors
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ProtocolError& e) {
    std::fprintf(stderr, "protocol error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return rc;
}
