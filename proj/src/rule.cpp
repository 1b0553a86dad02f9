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

#include "metgov/rule.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "metgov/errors.hpp"

namespace metgov {

const char* aggregator_name(AggregatorKind k) {
  switch (k) {
    case AggregatorKind::SigmaMedian: return "sigma-median";
    case AggregatorKind::Mean: return "mean";
  }
  return "?";
}

int support_threshold(double sigma, int n) {
  if (n <= 0) throw ConfigError("support_threshold: need at least one member");
  if (!(sigma >= 0.5) || !(sigma < 1.0))
    throw ConfigError("support_threshold: sigma must lie in [1/2, 1)");
  int k = static_cast<int>(std::ceil(sigma * n - 1e-9));
  return std::max(1, k);
}

double aggregate(const Aggregator& agg, double sigma, std::vector<double> u) {
  if (u.empty()) throw ConfigError("aggregate: empty utility vector");
  if (agg.kind == AggregatorKind::Mean) {
    double s = std::accumulate(u.begin(), u.end(), 0.0);
    return s / static_cast<double>(u.size());
  }
  int n = static_cast<int>(u.size());
  int k = support_threshold(sigma, n);
  // k-th largest entry
  std::nth_element(u.begin(), u.begin() + (k - 1), u.end(), std::greater<double>());
  return u[static_cast<size_t>(k - 1)];
}

std::vector<double> utility_vector(const Space& space, const Point& s,
                                   const std::vector<Point>& votes, const Point& p) {
  std::vector<double> u;
  u.reserve(votes.size());
  for (const Point& v : votes) u.push_back(space.dist(v, s) - space.dist(v, p));
  return u;
}

std::vector<int> support_set(const std::vector<double>& u) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(u.size()); ++i)
    if (u[static_cast<size_t>(i)] > 0) out.push_back(i);
  return out;
}

RoundResult evaluate_round(const Space& space, const Point& s,
                           const std::vector<Point>& votes,
                           const std::vector<Point>& proposals,
                           const Aggregator& agg, double sigma) {
  if (votes.empty()) throw ConfigError("evaluate_round: no votes");
  int n = static_cast<int>(votes.size());
  int k = support_threshold(sigma, n);
  double eps = space.score_epsilon();

  // d(v_i, s) is shared across proposals.
  std::vector<double> base(votes.size());
  for (size_t i = 0; i < votes.size(); ++i) base[i] = space.dist(votes[i], s);

  RoundResult res;
  res.scored.reserve(proposals.size());
  for (const Point& p : proposals) {
    ScoredProposal sp;
    sp.proposal = p;
    sp.utilities.resize(votes.size());
    for (size_t i = 0; i < votes.size(); ++i)
      sp.utilities[i] = base[i] - space.dist(votes[i], p);
    sp.support = static_cast<int>(support_set(sp.utilities).size());
    sp.supported = sp.support >= k;
    sp.score = aggregate(agg, sigma, sp.utilities);
    res.scored.push_back(std::move(sp));
  }

  for (int i = 0; i < static_cast<int>(res.scored.size()); ++i) {
    const ScoredProposal& sp = res.scored[static_cast<size_t>(i)];
    if (sp.supported) res.any_supported = true;
    if (!sp.supported || !(sp.score > eps)) continue;
    if (!res.winner_index) {
      res.winner_index = i;
      continue;
    }
    const ScoredProposal& best = res.scored[static_cast<size_t>(*res.winner_index)];
    if (sp.score > best.score ||
        (sp.score == best.score && sp.proposal < best.proposal))
      res.winner_index = i;
  }
  return res;
}

std::optional<Point> majority_favourite(const Space& space, const Point& s,
                                        const std::vector<Point>& votes, double sigma) {
  int n = static_cast<int>(votes.size());
  if (n == 0) return std::nullopt;
  int k = support_threshold(sigma, n);
  std::map<Point, int> tally;
  for (const Point& v : votes) tally[v]++;
  std::optional<Point> best;
  int best_count = 0;
  for (const auto& [pt, count] : tally) {
    if (count < k) continue;
    if (pt == s) continue;
    if (count > best_count) {  // map order = canonical, so first max wins ties
      best = pt;
      best_count = count;
    }
  }
  (void)space;
  return best;
}

}  // namespace metgov
