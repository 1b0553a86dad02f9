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
#include <string>
#include <vector>

#include "metgov/rule.hpp"

namespace metgov {

// Best achievable score over the whole space (exhaustive, scanned, or via the
// one-dimensional characterisation). Every scan folds in the votes and the
// status quo, so opt >= peak and opt >= 0 hold without rounding slop.
struct OptResult {
  Point argmax;
  double score = 0;
  std::string method;  // "enumerate" | "grid" | "closed-form-1d"
};

OptResult opt_enumerate(const Space& space, const Point& s,
                        const std::vector<Point>& votes, const Aggregator& agg,
                        double sigma);
OptResult opt_grid(const Space& space, const Point& s,
                   const std::vector<Point>& votes, const Aggregator& agg,
                   double sigma);
OptResult opt_closed_1d(const Space& space, const Point& s,
                        const std::vector<Point>& votes, double sigma);
// Picks the cheapest exact-or-dense option for the space at hand.
OptResult opt_auto(const Space& space, const Point& s,
                   const std::vector<Point>& votes, const Aggregator& agg,
                   double sigma);

// Best score among the votes themselves (canonical argmin on ties).
struct PeakResult {
  int index = -1;
  double score = 0;
};
PeakResult peak_score(const Space& space, const Point& s,
                      const std::vector<Point>& votes, const Aggregator& agg,
                      double sigma);

struct GapReport {
  OptResult opt;
  PeakResult peak;
  double gap = 0;        // opt - peak, never negative
  bool vacuous = false;  // opt fails to clear the score epsilon
  double lipschitz = 0;  // min_i d(argmax, v_i); an upper bound on gap
};

GapReport compromise_gap(const Space& space, const Point& s,
                         const std::vector<Point>& votes, const Aggregator& agg,
                         double sigma);

// Candidate generator "P": scores pairwise in-between points of the votes and
// puts the best one forward only when it strictly beats every raw proposal
// score already on the table.
struct HeuristicResult {
  std::optional<Point> candidate;
  double candidate_score = 0;  // meaningful when candidate is set
  double baseline = 0;         // best raw score among existing proposals
  int pool_size = 0;           // how many in-between points were scored
};
HeuristicResult heuristic_p(const Space& space, const Point& s,
                            const std::vector<Point>& votes,
                            const std::vector<Point>& existing_proposals,
                            const Aggregator& agg, double sigma);

// Coordinate helpers for the vector-valued spaces.
Point centroid_point(const std::vector<Point>& points);
// Weiszfeld iteration with the usual fix-up when an iterate lands on a vote.
Point geometric_median(const std::vector<Point>& points, double tol = 1e-12,
                       int max_iter = 10000);

}  // namespace metgov
