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

#pragma once

#include <optional>
#include <vector>

#include "metgov/space.hpp"

namespace metgov {

// Aggregators over utility vectors. SigmaMedian is the k-th largest entry
// with k = ceil(sigma*n); Mean is the utilitarian alternative. Both are
// 1-Lipschitz in the sup norm and zero on the all-zero vector.
enum class AggregatorKind { SigmaMedian, Mean };

struct Aggregator {
  AggregatorKind kind = AggregatorKind::SigmaMedian;
  static Aggregator median() { return {AggregatorKind::SigmaMedian}; }
  static Aggregator mean() { return {AggregatorKind::Mean}; }
};

const char* aggregator_name(AggregatorKind k);

// ceil(sigma*n), floored at 1. The epsilon guards against products like
// 0.55*20 evaluating to 11.000000000000002 and ceiling to 12.
int support_threshold(double sigma, int n);

// phi applied to a utility vector (copied; selection mutates its argument).
double aggregate(const Aggregator& agg, double sigma, std::vector<double> u);

// u_i = d(v_i, s) - d(v_i, p) for each vote.
std::vector<double> utility_vector(const Space& space, const Point& s,
                                   const std::vector<Point>& votes, const Point& p);

// Members strictly preferring p to the status quo.
std::vector<int> support_set(const std::vector<double>& u);

struct ScoredProposal {
  Point proposal;
  std::vector<double> utilities;
  double score = 0;
  int support = 0;
  bool supported = false;
};

struct RoundResult {
  std::vector<ScoredProposal> scored;  // one per proposal, input order
  std::optional<int> winner_index;     // into scored
  bool any_supported = false;

  const Point* winner() const {
    return winner_index ? &scored[static_cast<size_t>(*winner_index)].proposal : nullptr;
  }
  std::optional<double> winning_score() const {
    if (!winner_index) return std::nullopt;
    return scored[static_cast<size_t>(*winner_index)].score;
  }
};

// One application of the constitutional governance rule: score every proposal
// against the status quo, adopt the supported proposal of positive maximal
// score, ties broken by canonical point order. No-winner rounds leave
// winner_index empty (the status quo prevails for that round).
RoundResult evaluate_round(const Space& space, const Point& s,
                           const std::vector<Point>& votes,
                           const std::vector<Point>& proposals,
                           const Aggregator& agg, double sigma);

// The shared ideal of a sigma-supermajority, if one exists (largest bloc,
// canonical tie-break), excluding the status quo itself. Under sigma > 1/2 or
// odd n, such a point beats every other proposal in any round it enters.
std::optional<Point> majority_favourite(const Space& space, const Point& s,
                                        const std::vector<Point>& votes, double sigma);

}  // namespace metgov
