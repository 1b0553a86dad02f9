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

#include "metgov/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "metgov/amendments.hpp"
#include "metgov/errors.hpp"
#include "metgov/gap.hpp"

namespace metgov {
namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Collects mismatch notes; a fixture passes when none accumulate.
struct Check {
  std::vector<std::string>& notes;
  double tol;

  void num(const std::string& what, double got, double want) {
    if (!close(got, want, tol))
      notes.push_back(what + ": got " + fmt(got) + ", want " + fmt(want));
  }
  void num(const std::string& what, double got, double want, double t) {
    if (!close(got, want, t))
      notes.push_back(what + ": got " + fmt(got) + ", want " + fmt(want));
  }
  void count(const std::string& what, int got, int want) {
    if (got != want)
      notes.push_back(what + ": got " + std::to_string(got) + ", want " +
                      std::to_string(want));
  }
  void truth(const std::string& what, bool got, bool want) {
    if (got != want)
      notes.push_back(what + ": got " + (got ? "true" : "false") + ", want " +
                      (want ? "true" : "false"));
  }
  void text(const std::string& what, const std::string& got, const std::string& want) {
    if (got != want) notes.push_back(what + ": got " + got + ", want " + want);
  }
  // Real-valued spaces compare by distance (computed coordinates carry
  // rounding); discrete spaces compare exactly.
  void point(const std::string& what, const Space& sp, const Point& got,
             const Point& want) {
    bool ok = sp.real_valued() ? sp.dist(got, want) <= tol : got == want;
    if (!ok)
      notes.push_back(what + ": got " + sp.show(got) + ", want " + sp.show(want));
  }
};

std::vector<Point> points_from(const Space& sp, const Json& arr, const char* what) {
  if (!arr.is_array()) throw ConfigError(std::string(what) + ": expected an array");
  std::vector<Point> out;
  for (const Json& v : arr) out.push_back(point_from_json(sp, v));
  return out;
}

struct RuleInputs {
  SpacePtr space;
  Point s;
  std::vector<Point> votes;
  Aggregator agg = Aggregator::median();
  double sigma = 0.5;
};

RuleInputs rule_inputs(const Json& j) {
  RuleInputs in;
  in.space = space_from_json(j.at("space"));
  in.s = point_from_json(*in.space, j.at("status_quo"));
  in.votes = points_from(*in.space, j.at("votes"), "votes");
  if (j.contains("sigma")) in.sigma = j.at("sigma").get<double>();
  if (j.contains("aggregator"))
    in.agg = aggregator_from_string(j.at("aggregator").get<std::string>());
  return in;
}

void run_round(const Json& j, Check& ck) {
  RuleInputs in = rule_inputs(j);
  std::vector<Point> proposals = j.contains("proposals")
                                     ? points_from(*in.space, j.at("proposals"), "proposals")
                                     : in.votes;
  RoundResult res =
      evaluate_round(*in.space, in.s, in.votes, proposals, in.agg, in.sigma);
  const Json& ex = j.at("expect");
  if (ex.contains("scores")) {
    const Json& want = ex.at("scores");
    ck.count("score count", static_cast<int>(res.scored.size()),
             static_cast<int>(want.size()));
    for (size_t i = 0; i < res.scored.size() && i < want.size(); ++i)
      ck.num("score[" + std::to_string(i) + "]", res.scored[i].score,
             want[i].get<double>());
  }
  if (ex.contains("supports")) {
    const Json& want = ex.at("supports");
    for (size_t i = 0; i < res.scored.size() && i < want.size(); ++i)
      ck.count("support[" + std::to_string(i) + "]", res.scored[i].support,
               want[i].get<int>());
  }
  if (ex.contains("utilities")) {
    const Json& want = ex.at("utilities");
    for (size_t i = 0; i < res.scored.size() && i < want.size(); ++i) {
      const Json& row = want[i];
      for (size_t q = 0; q < res.scored[i].utilities.size() && q < row.size(); ++q)
        ck.num("utility[" + std::to_string(i) + "][" + std::to_string(q) + "]",
               res.scored[i].utilities[q], row[q].get<double>());
    }
  }
  if (ex.contains("winner")) {
    if (ex.at("winner").is_null()) {
      if (res.winner_index)
        ck.notes.push_back("winner: got " + in.space->show(*res.winner()) +
                           ", want none");
    } else {
      Point want = point_from_json(*in.space, ex.at("winner"));
      if (!res.winner_index)
        ck.notes.push_back("winner: got none, want " + in.space->show(want));
      else
        ck.point("winner", *in.space, *res.winner(), want);
    }
  }
  if (ex.contains("winning_score")) {
    std::optional<double> got = res.winning_score();
    if (!got)
      ck.notes.push_back("winning_score: no winner");
    else
      ck.num("winning_score", *got, ex.at("winning_score").get<double>());
  }
}

void run_epoch_fixture(const Json& j, Check& ck) {
  EpochSpec spec = epoch_spec_from_json(j);
  EpochResult res =
      run_epoch(spec.space, spec.status_quo, spec.votes, spec.sources, spec.config);
  const Json& ex = j.at("expect");
  if (ex.contains("outcome"))
    ck.point("outcome", *spec.space, res.outcome,
             point_from_json(*spec.space, ex.at("outcome")));
  if (ex.contains("rounds_used")) ck.count("rounds_used", res.rounds_used, ex.at("rounds_used").get<int>());
  if (ex.contains("reached_quiescence"))
    ck.truth("reached_quiescence", res.reached_quiescence,
             ex.at("reached_quiescence").get<bool>());
  if (ex.contains("winning_score")) {
    const RoundRecord& last = res.rounds.back();
    std::optional<double> got = last.result.winning_score();
    if (!got)
      ck.notes.push_back("winning_score: final round had no winner");
    else
      ck.num("winning_score", *got, ex.at("winning_score").get<double>());
  }
}

void run_gap(const Json& j, Check& ck) {
  RuleInputs in = rule_inputs(j);
  GapReport g = compromise_gap(*in.space, in.s, in.votes, in.agg, in.sigma);
  const Json& ex = j.at("expect");
  if (ex.contains("opt")) ck.num("opt", g.opt.score, ex.at("opt").get<double>());
  if (ex.contains("peak")) ck.num("peak", g.peak.score, ex.at("peak").get<double>());
  if (ex.contains("gap")) ck.num("gap", g.gap, ex.at("gap").get<double>());
  if (ex.contains("lipschitz"))
    ck.num("lipschitz", g.lipschitz, ex.at("lipschitz").get<double>());
  if (ex.contains("vacuous"))
    ck.truth("vacuous", g.vacuous, ex.at("vacuous").get<bool>());
  if (ex.contains("opt_point"))
    ck.point("opt_point", *in.space, g.opt.argmax,
             point_from_json(*in.space, ex.at("opt_point")));
}

void run_hrule(const Json& j, Check& ck) {
  double sigma = j.at("sigma").get<double>();
  std::vector<double> votes = j.at("votes").get<std::vector<double>>();
  double step = j.contains("step") ? j.at("step").get<double>() : 0.05;
  const Json& ex = j.at("expect");
  if (ex.contains("voted_values"))
    ck.num("voted_values", h_rule(sigma, votes, HRuleMode::VotedValues, step).sigma_after,
           ex.at("voted_values").get<double>());
  if (ex.contains("dense_grid"))
    ck.num("dense_grid", h_rule(sigma, votes, HRuleMode::DenseGrid, step).sigma_after,
           ex.at("dense_grid").get<double>());
}

void run_membership(const Json& j, Check& ck) {
  bool existing = j.value("already_member", false);
  bool consent = j.value("consent", true);
  std::vector<bool> in_votes = j.at("in_votes").get<std::vector<bool>>();
  double sigma = j.value("sigma", 0.5);
  MembershipOutcome got = membership_referendum(existing, consent, in_votes, sigma);
  ck.text("outcome", membership_outcome_name(got),
          j.at("expect").at("outcome").get<std::string>());
}

void run_heuristic(const Json& j, Check& ck) {
  RuleInputs in = rule_inputs(j);
  std::vector<Point> existing =
      j.contains("existing") ? points_from(*in.space, j.at("existing"), "existing")
                             : in.votes;
  HeuristicResult h =
      heuristic_p(*in.space, in.s, in.votes, existing, in.agg, in.sigma);
  const Json& ex = j.at("expect");
  if (ex.contains("candidate")) {
    if (ex.at("candidate").is_null()) {
      if (h.candidate)
        ck.notes.push_back("candidate: got " + in.space->show(*h.candidate) +
                           ", want none");
    } else {
      Point want = point_from_json(*in.space, ex.at("candidate"));
      if (!h.candidate)
        ck.notes.push_back("candidate: got none, want " + in.space->show(want));
      else
        ck.point("candidate", *in.space, *h.candidate, want);
    }
  }
  if (ex.contains("score")) ck.num("score", h.candidate_score, ex.at("score").get<double>());
  if (ex.contains("baseline")) ck.num("baseline", h.baseline, ex.at("baseline").get<double>());
  if (ex.contains("pool_size")) ck.count("pool_size", h.pool_size, ex.at("pool_size").get<int>());
}

// Runs the same epoch twice: once with member 0 voting their true ideal and
// once with a misreport, then compares true utilities of the two outcomes.
void run_misreport(const Json& j, Check& ck) {
  SpacePtr space = space_from_json(j.at("space"));
  Point s = point_from_json(*space, j.at("status_quo"));
  Point ideal = point_from_json(*space, j.at("true_ideal"));

  auto spec_for = [&](const char* votes_key, const char* script_key) {
    Json spec;
    spec["space"] = j.at("space");
    spec["status_quo"] = j.at("status_quo");
    spec["votes"] = j.at(votes_key);
    for (const char* k : {"sigma", "aggregator", "epsilon", "max_rounds", "nonce"})
      if (j.contains(k)) spec[k] = j.at(k);
    if (j.contains(script_key)) {
      Json src;
      src["type"] = "script";
      src["actions"] = j.at(script_key);
      spec["sources"] = Json::array({src});
    }
    return epoch_spec_from_json(spec);
  };

  EpochSpec sincere = spec_for("sincere_votes", "sincere_script");
  EpochSpec mis = spec_for("misreport_votes", "script");
  EpochResult rs = run_epoch(sincere.space, sincere.status_quo, sincere.votes,
                             sincere.sources, sincere.config);
  EpochResult rm =
      run_epoch(mis.space, mis.status_quo, mis.votes, mis.sources, mis.config);

  double u_sincere = space->dist(ideal, s) - space->dist(ideal, rs.outcome);
  double u_mis = space->dist(ideal, s) - space->dist(ideal, rm.outcome);

  const Json& ex = j.at("expect");
  if (ex.contains("sincere_outcome"))
    ck.point("sincere_outcome", *space, rs.outcome,
             point_from_json(*space, ex.at("sincere_outcome")));
  if (ex.contains("misreport_outcome"))
    ck.point("misreport_outcome", *space, rm.outcome,
             point_from_json(*space, ex.at("misreport_outcome")));
  if (ex.contains("sincere_true_utility"))
    ck.num("sincere_true_utility", u_sincere, ex.at("sincere_true_utility").get<double>());
  if (ex.contains("misreport_true_utility"))
    ck.num("misreport_true_utility", u_mis, ex.at("misreport_true_utility").get<double>());
  if (ex.contains("profitable"))
    ck.truth("profitable", u_mis > u_sincere, ex.at("profitable").get<bool>());
  if (ex.contains("sincere_rounds")) ck.count("sincere_rounds", rs.rounds_used, ex.at("sincere_rounds").get<int>());
  if (ex.contains("misreport_rounds")) ck.count("misreport_rounds", rm.rounds_used, ex.at("misreport_rounds").get<int>());
  if (ex.contains("misreport_utilities")) {
    std::vector<double> u = utility_vector(*space, s, mis.votes, rm.outcome);
    const Json& want = ex.at("misreport_utilities");
    for (size_t q = 0; q < u.size() && q < want.size(); ++q)
      ck.num("misreport_utilities[" + std::to_string(q) + "]", u[q],
             want[q].get<double>());
  }
}

}  // namespace

FixtureResult run_fixture(const Json& j, const std::string& name) {
  FixtureResult r;
  r.name = name;
  try {
    std::string type = j.at("type").get<std::string>();
    double tol = j.contains("tol") ? j.at("tol").get<double>() : 1e-6;
    Check ck{r.notes, tol};
    if (type == "round")
      run_round(j, ck);
    else if (type == "epoch")
      run_epoch_fixture(j, ck);
    else if (type == "gap")
      run_gap(j, ck);
    else if (type == "hrule")
      run_hrule(j, ck);
    else if (type == "membership")
      run_membership(j, ck);
    else if (type == "heuristic")
      run_heuristic(j, ck);
    else if (type == "misreport")
      run_misreport(j, ck);
    else
      r.notes.push_back("unknown fixture type '" + type + "'");
  } catch (const std::exception& e) {
    r.notes.push_back(std::string("error: ") + e.what());
  }
  r.pass = r.notes.empty();
  return r;
}

std::vector<FixtureResult> run_fixture_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw ConfigError("fixture directory not found: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<FixtureResult> out;
  for (const fs::path& p : files) {
    FixtureResult r = run_fixture(load_json_file(p.string()), p.stem().string());
    r.path = p.string();
    out.push_back(std::move(r));
  }
  return out;
}

std::string default_fixtures_dir() {
#ifdef METGOV_FIXTURES_DEFAULT
  return METGOV_FIXTURES_DEFAULT;
#else
  return "fixtures";
#endif
}

}  // namespace metgov
