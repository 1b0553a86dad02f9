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

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "metgov/epoch.hpp"
#include "metgov/errors.hpp"
#include "metgov/sim.hpp"

namespace metgov {

namespace {

struct ScenarioSpace {
  SpacePtr space;
  Point status_quo;  // vacancy for plurality, a fixed point elsewhere
  bool sample_s;     // most kinds draw a fresh status quo per trial
};

// One representative per metric kind, small enough that millions of distance
// evaluations stay cheap.
std::vector<ScenarioSpace> scenario_spaces() {
  std::vector<ScenarioSpace> out;
  auto plur = std::make_shared<PluralitySpace>(
      std::vector<std::string>{"a", "b", "c", "d"});
  out.push_back({plur, plur->vacancy(), false});
  out.push_back({std::make_shared<Scalar1DSpace>(0.0, 1.0), Point::scalar(0.5), true});
  out.push_back({std::make_shared<SimplexSpace>(3), Point::scalar(0), true});
  out.push_back({std::make_shared<Euclid2DSpace>(), Point::scalar(0), true});
  out.push_back({std::make_shared<PermutationSpace>(4), Point::scalar(0), true});
  out.push_back({std::make_shared<SubsetSpace>(
                     std::vector<std::string>{"p", "q", "r", "t", "u"}),
                 Point::scalar(0), true});
  out.push_back({std::make_shared<StringSpace>("ab", 3), Point::scalar(0), true});
  return out;
}

uint64_t mix(uint64_t seed, const std::string& tag, long t) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return derive_seed(seed, h ^ static_cast<uint64_t>(t));
}

// A sampled point at distance > floor from every element of `away`; gives up
// (and returns nullopt) after a while, e.g. when the space is too small.
std::optional<Point> sample_apart(const Space& space, Rng& rng,
                                  const std::vector<Point>& away, double floor) {
  for (int tries = 0; tries < 200; ++tries) {
    Point p = space.sample(rng);
    bool ok = true;
    for (const Point& a : away)
      if (space.dist(p, a) <= floor) {
        ok = false;
        break;
      }
    if (ok) return p;
  }
  return std::nullopt;
}

void note_violation(ScenarioPart& part, const std::string& msg) {
  ++part.violations;
  if (part.notes.size() < 5) part.notes.push_back(msg);
}

int count_positive(const std::vector<double>& u) {
  int c = 0;
  for (double x : u)
    if (x > 0) ++c;
  return c;
}

// --- (a) separating epochs -------------------------------------------------
//
// For sigma = 1/2, any misreport loses to sincere voting on the bifurcated
// profile: k-1 others at the true ideal, k-1 at the misreport, the rest at
// the status quo. Sincere elects the ideal (utility d(v*,s)); the misreport
// elects the decoy (utility d(v*,s) - d(v*,decoy)) or, when the misreport is
// the status quo itself, stalls at s (utility 0).
ScenarioPart separating_epochs(uint64_t seed, int pairs) {
  ScenarioPart part;
  part.name = "separating-epoch";
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    double floor = space.real_valued() ? 1e-6 : 0.0;
    for (int t = 0; t < pairs; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/sep", t));
      int n = 3 + t % 4;  // alternate odd and even committees
      int k = support_threshold(0.5, n);

      Point s = sc.status_quo;
      if (sc.sample_s) s = space.sample(rng);
      std::optional<Point> vstar = sample_apart(space, rng, {s}, floor);
      if (!vstar) continue;
      Point decoy;
      if (t % 8 == 7) {
        decoy = s;  // exercise the misreport-at-the-status-quo branch
      } else {
        std::optional<Point> d = sample_apart(space, rng, {s, *vstar}, floor);
        if (!d) continue;
        decoy = *d;
      }

      std::vector<Point> others;
      for (int j = 0; j < k - 1; ++j) others.push_back(*vstar);
      for (int j = 0; j < k - 1; ++j) others.push_back(decoy);
      for (int j = 0; j < n - 2 * k + 1; ++j) others.push_back(s);

      EpochConfig cfg;
      cfg.sigma = 0.5;
      cfg.nonce = mix(seed, "nonce", t);
      auto with_vote = [&](const Point& mine) {
        std::vector<Point> votes{mine};
        votes.insert(votes.end(), others.begin(), others.end());
        return run_epoch(sc.space, s, votes, {}, cfg);
      };
      EpochResult sincere = with_vote(*vstar);
      EpochResult mis = with_vote(decoy);

      ++part.checked;
      double base = space.dist(*vstar, s);
      double u_sin = base - space.dist(*vstar, sincere.outcome);
      double u_mis = base - space.dist(*vstar, mis.outcome);
      Point want_mis = decoy == s ? s : decoy;
      if (!sincere.reached_quiescence || !mis.reached_quiescence)
        note_violation(part, space.name() + ": epoch failed to quiesce");
      else if (!(sincere.outcome == *vstar))
        note_violation(part, space.name() + ": sincere outcome is not the ideal");
      else if (!(mis.outcome == want_mis))
        note_violation(part, space.name() + ": misreport outcome off-script");
      else if (!(u_sin > u_mis))
        note_violation(part, space.name() + ": sincere does not strictly beat misreport");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

// --- (b) the planar manipulation that does succeed -------------------------
//
// s=(0,0), ideals (1,0), (0,1), (-1,-1). Sincere voting leaves every peak
// unsupported; misreporting (0.5,0.5) makes that point the winner with
// utilities ~(0.707, 0.293, -0.707), median ~0.293, a strict gain for the
// manipulator. Establishes that per-round manipulation can pay in the plane.
ScenarioPart planar_manipulation() {
  ScenarioPart part;
  part.name = "planar-manipulation";
  part.trials = part.checked = 1;
  auto space = std::make_shared<Euclid2DSpace>();
  Point s = Point::vector({0, 0});
  Point v1 = Point::vector({1, 0});
  Point v2 = Point::vector({0, 1});
  Point v3 = Point::vector({-1, -1});
  Point c = Point::vector({0.5, 0.5});
  std::vector<Point> sincere{v1, v2, v3};

  RoundResult before = evaluate_round(*space, s, sincere, sincere,
                                      Aggregator::median(), 0.5);
  if (before.winner())
    note_violation(part, "sincere round should leave the status quo standing");
  double u_before = 0;  // outcome s

  std::vector<Point> mis{c, v2, v3};
  RoundResult after = evaluate_round(*space, s, mis, mis, Aggregator::median(), 0.5);
  const ScoredProposal* sc = nullptr;
  for (const ScoredProposal& p : after.scored)
    if (p.proposal == c) sc = &p;
  const double r2 = std::sqrt(0.5);  // 0.7071...
  if (!sc) {
    note_violation(part, "misreported point missing from the round");
  } else {
    double want[3] = {r2, 1 - r2, -r2};
    for (int i = 0; i < 3; ++i)
      if (std::fabs(sc->utilities[static_cast<size_t>(i)] - want[i]) > 1e-3)
        note_violation(part, "utility " + std::to_string(i) + " off the expected value");
    if (std::fabs(sc->score - (1 - r2)) > 1e-3)
      note_violation(part, "median utility off the expected 0.293");
    if (!sc->supported) note_violation(part, "misreported point should be supported");
  }
  if (!after.winner() || !(*after.winner() == c))
    note_violation(part, "misreported point should win the round");
  else {
    double u_after = space->dist(v1, s) - space->dist(v1, *after.winner());
    if (!(u_after > u_before))
      note_violation(part, "manipulation should strictly pay");
  }
  part.pass = part.violations == 0;
  return part;
}

// --- (c) exhaustive 1-D misreport search -----------------------------------
ScenarioPart scalar_misreport(uint64_t seed, int profiles) {
  ScenarioPart part;
  part.name = "scalar-misreport";
  Scalar1DSpace space(0.0, 1.0);
  const int grid_n = 21;
  auto grid_point = [&](int j) { return Point::scalar(j / 20.0); };
  const double sigmas[] = {0.5, 0.55, 0.6, 2.0 / 3.0, 0.75};

  long half_quota_checked = 0;
  for (int t = 0; t < profiles; ++t) {
    ++part.trials;
    Rng rng(mix(seed, "1d", t));
    int n = 2 + static_cast<int>(rng.below(6));  // 2..7
    double sigma = sigmas[rng.below(5)];
    int k = support_threshold(sigma, n);
    bool strict_majority = 2 * k > n;  // false only for even n at sigma = 1/2
    if (!strict_majority) ++half_quota_checked;
    Point s = grid_point(static_cast<int>(rng.below(grid_n)));
    std::vector<Point> votes;
    for (int j = 0; j < n; ++j)
      votes.push_back(grid_point(static_cast<int>(rng.below(grid_n))));
    int i = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    Point truth = votes[static_cast<size_t>(i)];

    auto outcome_util = [&](const std::vector<Point>& v) {
      RoundResult r = evaluate_round(space, s, v, v, Aggregator::median(), sigma);
      const Point* w = r.winner();
      return space.dist(truth, s) - space.dist(truth, w ? *w : s);
    };
    double honest = outcome_util(votes);
    ++part.checked;
    for (int j = 0; j < grid_n; ++j) {
      std::vector<Point> lies = votes;
      lies[static_cast<size_t>(i)] = grid_point(j);
      if (outcome_util(lies) > honest + 1e-12) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "profitable misreport at trial %d (sigma %.3f, n %d, lie %.2f)%s",
                      t, sigma, n, j / 20.0,
                      strict_majority ? "" : " [half-quota regime: k = n/2]");
        note_violation(part, buf);
        if (strict_majority) ++part.violations_strict;
        break;
      }
    }
  }
  if (part.violations > 0) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%ld violation(s): %ld under a strict-majority quota, %ld in the "
                  "half-quota regime (even n, sigma 1/2; %ld profiles drawn there)",
                  part.violations, part.violations_strict,
                  part.violations - part.violations_strict, half_quota_checked);
    part.notes.push_back(buf);
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

// --- (d) randomized counterexample searches --------------------------------

struct LemmaDraw {
  int n = 0;
  double sigma = 0.5;
  int k = 0;
  Point s;
  std::vector<Point> votes;
};

LemmaDraw draw_profile(const ScenarioSpace& sc, Rng& rng) {
  LemmaDraw d;
  d.n = 3 + static_cast<int>(rng.below(5));  // 3..7
  const double sigmas[] = {0.5, 0.6, 2.0 / 3.0};
  d.sigma = sigmas[rng.below(3)];
  d.k = support_threshold(d.sigma, d.n);
  d.s = sc.sample_s ? sc.space->sample(rng) : sc.status_quo;
  for (int j = 0; j < d.n; ++j) d.votes.push_back(sc.space->sample(rng));
  return d;
}

ScenarioPart flip_unsupported_search(uint64_t seed, long trials) {
  ScenarioPart part;
  part.name = "flip-unsupported";
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    double eps = space.real_valued() ? 1e-12 : 0.0;
    for (long t = 0; t < trials; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/flip", t));
      LemmaDraw d = draw_profile(sc, rng);
      Point w = space.sample(rng);
      if (w == d.s) continue;
      std::vector<double> u = utility_vector(space, d.s, d.votes, w);
      if (count_positive(u) >= d.k) continue;  // lemma wants W unsupported
      int i = static_cast<int>(rng.below(static_cast<uint64_t>(d.n)));
      Point lie = space.sample(rng);
      if (lie == d.votes[static_cast<size_t>(i)]) continue;
      std::vector<Point> bent = d.votes;
      bent[static_cast<size_t>(i)] = lie;
      if (count_positive(utility_vector(space, d.s, bent, w)) < d.k) continue;
      ++part.checked;
      if (u[static_cast<size_t>(i)] > eps)
        note_violation(part, space.name() + ": flip by a member who preferred W");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

ScenarioPart compromise_replicates_search(uint64_t seed, long trials) {
  ScenarioPart part;
  part.name = "compromise-replicates";
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    for (long t = 0; t < trials; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/repl", t));
      LemmaDraw d = draw_profile(sc, rng);
      Point c = space.sample(rng);
      if (c == d.s) continue;
      std::vector<double> u = utility_vector(space, d.s, d.votes, c);
      int i = static_cast<int>(rng.below(static_cast<uint64_t>(d.n)));
      if (!(u[static_cast<size_t>(i)] > 0)) continue;  // member must prefer c
      bool as_public = count_positive(u) >= d.k;
      std::vector<Point> bent = d.votes;
      bent[static_cast<size_t>(i)] = c;
      bool as_misreport =
          count_positive(utility_vector(space, d.s, bent, c)) >= d.k;
      ++part.checked;
      if (as_public != as_misreport)
        note_violation(part, space.name() + ": support status differs between channels");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

ScenarioPart winner_swap_search(uint64_t seed, long trials) {
  ScenarioPart part;
  part.name = "winner-swap";
  Aggregator med = Aggregator::median();
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    for (long t = 0; t < trials; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/swap", t));
      LemmaDraw d = draw_profile(sc, rng);
      Point w0 = space.sample(rng);
      Point wt = space.sample(rng);
      if (w0 == wt || w0 == d.s || wt == d.s) continue;
      std::vector<double> u0 = utility_vector(space, d.s, d.votes, w0);
      std::vector<double> ut = utility_vector(space, d.s, d.votes, wt);
      double phi0 = aggregate(med, d.sigma, u0);
      double phit = aggregate(med, d.sigma, ut);
      if (!(count_positive(u0) >= d.k && count_positive(ut) >= d.k)) continue;
      if (!(phi0 > phit && phit > 0)) continue;
      int i = static_cast<int>(rng.below(static_cast<uint64_t>(d.n)));
      // Misreporting at the trailing proposal is the natural attack; mixing
      // in arbitrary lies keeps the search honest.
      Point lie = rng.coin() ? wt : space.sample(rng);
      if (lie == d.votes[static_cast<size_t>(i)]) continue;
      std::vector<Point> bent = d.votes;
      bent[static_cast<size_t>(i)] = lie;
      double phi0b = aggregate(med, d.sigma, utility_vector(space, d.s, bent, w0));
      double phitb = aggregate(med, d.sigma, utility_vector(space, d.s, bent, wt));
      if (!(phi0b < phi0 && phitb > phit)) continue;  // both must move strictly
      ++part.checked;
      if (!(u0[static_cast<size_t>(i)] > ut[static_cast<size_t>(i)]))
        note_violation(part, space.name() + ": swap by a member not preferring W0");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

ScenarioPart coalition_compromise_search(uint64_t seed, long trials) {
  ScenarioPart part;
  part.name = "coalition-compromise";
  Aggregator med = Aggregator::median();
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    for (long t = 0; t < trials; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/coal", t));
      LemmaDraw d = draw_profile(sc, rng);
      RoundResult base = evaluate_round(space, d.s, d.votes, d.votes, med, d.sigma);
      std::vector<Point> joint = d.votes;
      int extras = 1 + static_cast<int>(rng.below(3));
      for (int e = 0; e < extras; ++e) joint.push_back(space.sample(rng));
      RoundResult ext = evaluate_round(space, d.s, d.votes, joint, med, d.sigma);
      ++part.checked;
      bool bad = false;
      // Fixed votes: the submissions cannot move any sitting proposal's score.
      for (size_t j = 0; j < d.votes.size(); ++j)
        if (ext.scored[j].score != base.scored[j].score) bad = true;
      // The winner is either unchanged or one of the submissions.
      if (ext.winner_index && *ext.winner_index < d.n &&
          (!base.winner_index || *base.winner_index != *ext.winner_index))
        bad = true;
      if (!ext.winner_index && base.winner_index) bad = true;
      if (bad)
        note_violation(part, space.name() + ": submissions perturbed the sitting round");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

ScenarioPart coalition_flip_search(uint64_t seed, long trials) {
  ScenarioPart part;
  part.name = "coalition-flip";
  for (const ScenarioSpace& sc : scenario_spaces()) {
    const Space& space = *sc.space;
    double eps = space.real_valued() ? 1e-12 : 0.0;
    for (long t = 0; t < trials; ++t) {
      ++part.trials;
      Rng rng(mix(seed, space.name() + "/cflip", t));
      LemmaDraw d = draw_profile(sc, rng);
      Point w = space.sample(rng);
      if (w == d.s) continue;
      std::vector<double> u = utility_vector(space, d.s, d.votes, w);
      if (count_positive(u) >= d.k) continue;
      std::vector<int> coalition;
      for (int j = 0; j < d.n; ++j)
        if (rng.coin()) coalition.push_back(j);
      if (coalition.empty()) continue;
      std::vector<Point> bent = d.votes;
      for (int j : coalition) {
        // Half the liars aim straight at W; that is what makes flips common
        // enough to check.
        bent[static_cast<size_t>(j)] = rng.coin() ? w : space.sample(rng);
      }
      if (count_positive(utility_vector(space, d.s, bent, w)) < d.k) continue;
      ++part.checked;
      bool has_self_defeating = false;
      for (int j : coalition)
        if (u[static_cast<size_t>(j)] <= eps) has_self_defeating = true;
      if (!has_self_defeating)
        note_violation(part, space.name() + ": flip without a self-defeating member");
    }
  }
  part.pass = part.violations == 0 && part.checked > 0;
  return part;
}

// --- (e) the seven-member support-monotonicity failure ---------------------
ScenarioPart table_monotonicity() {
  ScenarioPart part;
  part.name = "non-monotonicity";
  part.trials = part.checked = 1;
  std::vector<std::string> labels{"s", "w", "p", "v1", "v2", "v3", "v4", "v5"};
  std::vector<std::vector<double>> dist{
      {0, 10, 10, 10, 10, 10, 10, 10},
      {10, 0, 5, 13, 12, 11, 9.99, 9.98},
      {10, 5, 0, 16, 14, 12, 10.01, 9.9},
      {10, 13, 16, 0, 20, 20, 20, 20},
      {10, 12, 14, 20, 0, 20, 20, 20},
      {10, 11, 12, 20, 20, 0, 20, 20},
      {10, 9.99, 10.01, 20, 20, 20, 0, 19.91},
      {10, 9.98, 9.9, 20, 20, 20, 19.91, 0}};
  auto space = std::make_shared<FiniteTableSpace>(labels, dist);
  Point s = space->label("s");
  Point w = space->label("w");
  Point p = space->label("p");
  std::vector<Point> votes{space->label("v1"), space->label("v2"), space->label("v3"),
                           space->label("v4"), space->label("v5"), p, w};
  std::vector<Point> proposals{w, p};
  Aggregator med = Aggregator::median();

  RoundResult before = evaluate_round(*space, s, votes, proposals, med, 0.5);
  auto close = [](double a, double b) { return std::fabs(a - b) < 1e-9; };
  if (!close(before.scored[0].score, 0.01) || !close(before.scored[1].score, -0.01))
    note_violation(part, "sincere medians are not 0.01 / -0.01");
  if (!before.winner() || !(*before.winner() == w))
    note_violation(part, "w should win the sincere round");

  votes[3] = w;  // member 4 moves all the way to w -- more support for w
  RoundResult after = evaluate_round(*space, s, votes, proposals, med, 0.5);
  if (!close(after.scored[0].score, 0.02) || !close(after.scored[1].score, 0.1))
    note_violation(part, "post-move medians are not 0.02 / 0.1");
  if (!after.winner() || !(*after.winner() == p))
    note_violation(part, "p should overtake w after the move");
  part.pass = part.violations == 0;
  return part;
}

}  // namespace

bool ScenarioReport::all_pass() const {
  for (const ScenarioPart& p : parts)
    if (!p.pass) return false;
  return !parts.empty();
}

ScenarioReport scenario_suite(uint64_t seed, const ScenarioOptions& opts) {
  ScenarioReport rep;
  rep.parts.push_back(separating_epochs(seed, opts.separating_pairs));
  rep.parts.push_back(planar_manipulation());
  rep.parts.push_back(scalar_misreport(seed, opts.misreport_profiles));
  rep.parts.push_back(flip_unsupported_search(seed, opts.lemma_trials));
  rep.parts.push_back(compromise_replicates_search(seed, opts.lemma_trials));
  rep.parts.push_back(winner_swap_search(seed, opts.lemma_trials));
  rep.parts.push_back(coalition_compromise_search(seed, opts.lemma_trials));
  rep.parts.push_back(coalition_flip_search(seed, opts.lemma_trials));
  rep.parts.push_back(table_monotonicity());
  return rep;
}

}  // namespace metgov
