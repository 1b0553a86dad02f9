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

// Randomized property suites shared between the unit tests (small budgets)
// and the acceptance gate (full budgets). Generators are hand-rolled on the
// library Rng; every violation is captured with enough context to replay.
#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "metgov/epoch.hpp"
#include "metgov/gap.hpp"
#include "metgov/rng.hpp"
#include "metgov/rule.hpp"
#include "metgov/space.hpp"

namespace props {

using namespace metgov;

struct PropReport {
  std::string name;
  long trials = 0;
  long checked = 0;  // trials that reached the property's precondition
  long violations = 0;
  std::vector<std::string> notes;
  bool pass() const { return violations == 0 && checked > 0; }
};

inline void flag(PropReport& r, const std::string& msg) {
  ++r.violations;
  if (r.notes.size() < 5) r.notes.push_back(msg);
}

// The per-kind roster used across the suites. Small instances; millions of
// distance evaluations have to stay cheap.
inline std::vector<SpacePtr> property_spaces() {
  return {
      std::make_shared<PluralitySpace>(std::vector<std::string>{"a", "b", "c", "d"}),
      std::make_shared<Scalar1DSpace>(0.0, 1.0),
      std::make_shared<SimplexSpace>(3),
      std::make_shared<Euclid2DSpace>(),
      std::make_shared<PermutationSpace>(4),
      std::make_shared<SubsetSpace>(std::vector<std::string>{"p", "q", "r", "t", "u"}),
      std::make_shared<StringSpace>("ab", 3),
  };
}

inline Point status_quo_for(const Space& space, Rng& rng) {
  if (space.kind() == SpaceKind::Plurality) return Point::index(-1);
  return space.sample(rng);
}

inline uint64_t mix(uint64_t seed, const std::string& tag, long t) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return derive_seed(seed, h ^ static_cast<uint64_t>(t));
}

// --- metric axioms ---------------------------------------------------------
inline PropReport metric_axioms(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "metric-axioms";
  for (const SpacePtr& sp : property_spaces()) {
    const Space& space = *sp;
    double slack = space.real_valued() ? 1e-12 : 0.0;
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/axioms", t));
      Point a = space.sample(rng), b = space.sample(rng), c = space.sample(rng);
      ++r.checked;
      if (space.dist(a, a) != 0.0) flag(r, space.name() + ": d(a,a) != 0");
      if (space.dist(a, b) != space.dist(b, a))
        flag(r, space.name() + ": asymmetric distance");
      if (!(a == b) && !(space.dist(a, b) > 0))
        flag(r, space.name() + ": distinct points at distance zero");
      if (space.dist(a, c) > space.dist(a, b) + space.dist(b, c) + slack)
        flag(r, space.name() + ": triangle inequality violated");
      if (!space.contains(a)) flag(r, space.name() + ": sampler left the space");
    }
  }
  return r;
}

// --- phi-positivity <=> support --------------------------------------------
inline PropReport support_positivity(uint64_t seed, long trials) {
  PropReport r;
  r.name = "phi-positivity-support";
  for (long t = 0; t < trials; ++t) {
    ++r.trials;
    Rng rng(mix(seed, "possupp", t));
    int n = 1 + static_cast<int>(rng.below(12));
    double sigma = 0.5 + 0.5 * rng.uniform() * (1.0 - 1e-9);
    std::vector<double> u(static_cast<size_t>(n));
    for (double& x : u) {
      // Mix signs, exact zeros, and repeated values; ties are where the
      // equivalence could plausibly break.
      switch (rng.below(4)) {
        case 0: x = 0.0; break;
        case 1: x = rng.uniform(-1, 1); break;
        case 2: x = rng.below(5) * 0.25 - 0.5; break;
        default: x = u[rng.below(u.size())]; break;
      }
    }
    int k = support_threshold(sigma, n);
    int pos = static_cast<int>(std::count_if(u.begin(), u.end(),
                                             [](double x) { return x > 0; }));
    double phi = aggregate(Aggregator::median(), sigma, u);
    ++r.checked;
    if ((phi > 0) != (pos >= k))
      flag(r, "phi " + std::to_string(phi) + " vs " + std::to_string(pos) +
                  " positives, k=" + std::to_string(k));
  }
  return r;
}

// --- reality-awareness -----------------------------------------------------
// The all-zero vector scores zero, a round with no supported proposal leaves
// the status quo, and any winner is supported with strictly positive score.
inline PropReport reality_awareness(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "reality-awareness";
  std::vector<SpacePtr> roster = property_spaces();
  for (const SpacePtr& sp : roster) {
    const Space& space = *sp;
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/reality", t));
      int n = 1 + static_cast<int>(rng.below(7));
      double sigma = rng.coin() ? 0.5 : 0.5 + 0.4 * rng.uniform();
      Aggregator agg = rng.coin() ? Aggregator::median() : Aggregator::mean();
      Point s = status_quo_for(space, rng);
      std::vector<Point> votes;
      for (int j = 0; j < n; ++j) votes.push_back(space.sample(rng));
      std::vector<Point> proposals = votes;
      proposals.push_back(s);  // the status quo itself must never win
      RoundResult round = evaluate_round(space, s, votes, proposals, agg, sigma);
      ++r.checked;
      if (aggregate(agg, sigma, std::vector<double>(static_cast<size_t>(n), 0.0)) != 0.0)
        flag(r, space.name() + ": phi(0) != 0");
      const ScoredProposal& sq = round.scored.back();
      if (sq.score != 0.0 || sq.supported)
        flag(r, space.name() + ": the status quo scored nonzero");
      if (round.winner_index) {
        const ScoredProposal& w = round.scored[static_cast<size_t>(*round.winner_index)];
        if (!w.supported || !(w.score > space.score_epsilon()))
          flag(r, space.name() + ": winner unsupported or not positive");
      } else {
        for (const ScoredProposal& p : round.scored)
          if (p.supported && p.score > space.score_epsilon())
            flag(r, space.name() + ": positive supported proposal ignored");
      }
    }
  }
  return r;
}

// --- sigma-majoritarity ----------------------------------------------------
// A bloc of ceil(sigma*n) members sharing an ideal forces that ideal through
// any round it enters, provided sigma > 1/2 or n is odd.
inline PropReport sigma_majoritarity(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "sigma-majoritarity";
  for (const SpacePtr& sp : property_spaces()) {
    const Space& space = *sp;
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/major", t));
      int n = 3 + static_cast<int>(rng.below(7));
      double sigma;
      if (rng.coin()) {
        sigma = 0.5;
        if (n % 2 == 0) n += 1;  // sigma = 1/2 needs odd committees
      } else {
        sigma = 0.51 + 0.4 * rng.uniform();
      }
      int k = support_threshold(sigma, n);
      Point s = status_quo_for(space, rng);
      Point ideal = space.sample(rng);
      if (!(space.dist(ideal, s) > 0)) continue;
      std::vector<Point> votes;
      for (int j = 0; j < k; ++j) votes.push_back(ideal);
      for (int j = k; j < n; ++j) votes.push_back(space.sample(rng));
      std::vector<Point> proposals{ideal};
      int extras = 1 + static_cast<int>(rng.below(3));
      for (int j = 0; j < extras; ++j) proposals.push_back(space.sample(rng));
      RoundResult round =
          evaluate_round(space, s, votes, proposals, Aggregator::median(), sigma);
      ++r.checked;
      if (!round.winner() || !(*round.winner() == ideal)) {
        flag(r, space.name() + ": bloc ideal failed to win");
        continue;
      }
      double top = *round.winning_score();
      if (!(top >= space.dist(ideal, s) - 1e-12))
        flag(r, space.name() + ": bloc ideal scored below d(ideal,s)");
      for (const ScoredProposal& p : round.scored)
        if (!(p.proposal == ideal) && !(p.score < top))
          flag(r, space.name() + ": rival proposal matched the bloc score");
    }
  }
  return r;
}

// --- zero gap in one dimension ---------------------------------------------
// Odd committee, sigma = 1/2: the optimum is attained at a peak, exactly.
inline PropReport zero_gap_1d(uint64_t seed, long trials) {
  PropReport r;
  r.name = "zero-gap-1d";
  for (long t = 0; t < trials; ++t) {
    ++r.trials;
    Rng rng(mix(seed, "1dgap", t));
    double lo = rng.uniform(-5, 0), hi = rng.uniform(0.1, 5);
    Scalar1DSpace space(lo, hi);
    int n = 1 + 2 * static_cast<int>(rng.below(8));
    Point s = space.sample(rng);
    std::vector<Point> votes;
    for (int j = 0; j < n; ++j) votes.push_back(space.sample(rng));
    GapReport g = compromise_gap(space, s, votes, Aggregator::median(), 0.5);
    ++r.checked;
    if (g.gap > 1e-12) flag(r, "1-D gap " + std::to_string(g.gap));
    if (g.opt.method != "closed-form-1d") flag(r, "unexpected OPT method " + g.opt.method);
  }
  return r;
}

// --- Lipschitz bound wherever OPT is exact ---------------------------------
inline PropReport lipschitz_bound(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "lipschitz-bound";
  for (const SpacePtr& sp : property_spaces()) {
    const Space& space = *sp;
    if (!space.enumerable()) continue;  // exact OPT only
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/lip", t));
      int n = 1 + static_cast<int>(rng.below(7));
      Point s = status_quo_for(space, rng);
      std::vector<Point> votes;
      for (int j = 0; j < n; ++j) votes.push_back(space.sample(rng));
      GapReport g = compromise_gap(space, s, votes, Aggregator::median(),
                                   rng.coin() ? 0.5 : 2.0 / 3.0);
      ++r.checked;
      if (g.gap > g.lipschitz + 1e-12)
        flag(r, space.name() + ": gap " + std::to_string(g.gap) + " above bound " +
                    std::to_string(g.lipschitz));
      if (g.gap < -1e-12) flag(r, space.name() + ": negative gap");
    }
  }
  return r;
}

// --- Heuristic P gating ----------------------------------------------------
// A candidate is returned only when it strictly beats every existing score,
// and when none is returned no pool point could have.
inline PropReport heuristic_gating(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "heuristic-gating";
  for (const SpacePtr& sp : property_spaces()) {
    const Space& space = *sp;
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/heur", t));
      int n = 2 + static_cast<int>(rng.below(5));
      double sigma = rng.coin() ? 0.5 : 0.6;
      Point s = status_quo_for(space, rng);
      std::vector<Point> votes;
      for (int j = 0; j < n; ++j) votes.push_back(space.sample(rng));
      Aggregator agg = Aggregator::median();
      HeuristicResult h = heuristic_p(space, s, votes, votes, agg, sigma);

      auto score_of = [&](const Point& c) {
        return aggregate(agg, sigma, utility_vector(space, s, votes, c));
      };
      double baseline = -1e300;
      for (const Point& v : votes) baseline = std::max(baseline, score_of(v));
      ++r.checked;
      if (h.baseline != baseline) {
        flag(r, space.name() + ": baseline mismatch");
        continue;
      }
      if (h.candidate) {
        if (!(h.candidate_score > h.baseline))
          flag(r, space.name() + ": candidate does not strictly beat the table");
        if (score_of(*h.candidate) != h.candidate_score)
          flag(r, space.name() + ": reported candidate score is stale");
        if (!space.contains(*h.candidate))
          flag(r, space.name() + ": candidate outside the space");
      } else {
        double pool_best = -1e300;
        for (size_t i = 0; i < votes.size(); ++i)
          for (size_t j = i + 1; j < votes.size(); ++j)
            for (const Point& c : space.midpoint_candidates(votes[i], votes[j]))
              pool_best = std::max(pool_best, score_of(c));
        if (pool_best > baseline)
          flag(r, space.name() + ": a pool point beat the table but was withheld");
      }
    }
  }
  return r;
}

// --- epoch termination and novelty separation ------------------------------
inline PropReport epoch_termination(uint64_t seed, long trials_per_kind) {
  PropReport r;
  r.name = "epoch-termination";
  for (const SpacePtr& sp : property_spaces()) {
    const Space& space = *sp;
    for (long t = 0; t < trials_per_kind; ++t) {
      ++r.trials;
      Rng rng(mix(seed, space.name() + "/term", t));
      int n = 3 + static_cast<int>(rng.below(3));
      Point s = status_quo_for(space, rng);
      std::vector<Point> votes;
      for (int j = 0; j < n; ++j) votes.push_back(space.sample(rng));
      EpochConfig cfg;
      cfg.sigma = rng.coin() ? 0.5 : 0.6;
      cfg.nonce = mix(seed, "term-nonce", t);
      std::vector<std::shared_ptr<ProposalSource>> sources{
          std::make_shared<HeuristicSource>()};
      if (space.kind() == SpaceKind::Simplex || space.kind() == SpaceKind::Euclid2D)
        sources.push_back(std::make_shared<CentroidSource>());
      ++r.checked;
      try {
        EpochResult res = run_epoch(sp, s, votes, sources, cfg);
        if (!res.reached_quiescence)
          flag(r, space.name() + ": epoch returned without quiescence");
        if (res.rounds_used > 10 * n + 10)
          flag(r, space.name() + ": epoch over the round budget");
        // Every admitted submission honours the novelty radius against the
        // votes and all earlier admissions.
        std::vector<Point> ledger = votes;
        double eps = cfg.epsilon < 0 ? space.default_epsilon() : cfg.epsilon;
        for (const SubmissionRecord& sub : res.submissions) {
          if (sub.verdict != Admissibility::Ok) continue;
          for (const Point& q : ledger)
            if (space.dist(sub.point, q) < eps - 1e-12)
              flag(r, space.name() + ": admitted submission violates novelty");
          ledger.push_back(sub.point);
        }
      } catch (const ProtocolError& e) {
        flag(r, space.name() + ": protocol error: " + e.what());
      }
    }
  }
  return r;
}

}  // namespace props
