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

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "metgov/errors.hpp"
#include "metgov/point.hpp"
#include "metgov/rng.hpp"

namespace metgov {

enum class SpaceKind {
  Plurality,
  Scalar1D,
  Simplex,
  Euclid2D,
  Permutations,
  Subsets,
  Strings,
  FiniteTable,
};

const char* space_kind_name(SpaceKind k);

// A decision space (X, d). Subclasses supply the metric, membership
// validation, optional exhaustive enumeration, uniform sampling, the default
// novelty radius, and the midpoint-candidate generator used by Heuristic P.
class Space {
 public:
  virtual ~Space() = default;

  SpaceKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

  virtual double dist(const Point& a, const Point& b) const = 0;

  // Every violated membership invariant, human-readable; empty == valid.
  virtual std::vector<std::string> validate(const Point& p) const = 0;
  bool contains(const Point& p) const { return validate(p).empty(); }

  virtual bool enumerable() const { return false; }
  virtual std::vector<Point> enumerate_all() const {
    throw ConfigError(name_ + ": space is not enumerable");
  }

  // Approximate midpoints of (p, q), canonical order within the generator's
  // ranking, at most `cap` entries, each strictly between p and q. Empty when
  // the space has no proper intermediate point for the pair.
  virtual std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                                 int cap = 8) const {
    (void)p;
    (void)q;
    (void)cap;
    return {};
  }

  virtual Point sample(Rng& rng) const = 0;

  // Default novelty radius for the epoch protocol's admissibility check.
  virtual double default_epsilon() const = 0;

  // Real-valued metrics compare scores with a 1e-12 slack; exact (integer or
  // rational with exact representation) metrics compare with zero slack.
  virtual bool real_valued() const { return true; }
  double score_epsilon() const { return real_valued() ? 1e-12 : 0.0; }

  virtual std::string show(const Point& p) const;

 protected:
  Space(SpaceKind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

 private:
  SpaceKind kind_;
  std::string name_;
};

using SpacePtr = std::shared_ptr<const Space>;

// A ∪ {⊥} under the discrete metric; ⊥ (the vacancy) is Point::index(-1) and
// is the canonical status quo. Utilities are then +1 (prefer p to vacancy),
// 0, or -1, and the σ-median rule degenerates to plurality-with-quota.
class PluralitySpace : public Space {
 public:
  explicit PluralitySpace(std::vector<std::string> candidates);

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  bool enumerable() const override { return true; }
  std::vector<Point> enumerate_all() const override;
  Point sample(Rng& rng) const override;  // uniform over A (never the vacancy)
  double default_epsilon() const override { return 1.0; }
  bool real_valued() const override { return false; }
  std::string show(const Point& p) const override;

  Point vacancy() const { return Point::index(-1); }
  Point candidate(const std::string& name) const;
  const std::vector<std::string>& candidates() const { return candidates_; }

 private:
  std::vector<std::string> candidates_;
};

// Closed interval (or the whole line) with d(x,y) = |x - y|.
class Scalar1DSpace : public Space {
 public:
  Scalar1DSpace(double lo = -std::numeric_limits<double>::infinity(),
                double hi = std::numeric_limits<double>::infinity());

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override;

  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
};

// Probability simplex Δ^{m-1} under the Euclidean metric. Membership uses a
// 1e-9 tolerance on the sum-to-one constraint and nonnegativity.
class SimplexSpace : public Space {
 public:
  explicit SimplexSpace(int m, std::vector<std::string> labels = {});

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;  // Dirichlet(1,...,1)
  double default_epsilon() const override { return 1e-3; }

  int m() const { return m_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  int m_;
  std::vector<std::string> labels_;
};

// The Euclidean plane; sampling draws uniformly from a box ([0,1]^2 unless
// configured otherwise). Points anywhere in the plane are valid.
class Euclid2DSpace : public Space {
 public:
  Euclid2DSpace(double box_lo = 0.0, double box_hi = 1.0);

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override { return 1e-3; }

  double box_lo() const { return box_lo_; }
  double box_hi() const { return box_hi_; }

 private:
  double box_lo_, box_hi_;
};

// S_m under swap distance (minimum adjacent transpositions = inversion
// count). Items may carry display names; a point ranks item perm[i] at
// position i.
class PermutationSpace : public Space {
 public:
  explicit PermutationSpace(int m, std::vector<std::string> items = {});

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  bool enumerable() const override { return m_ <= 8; }
  std::vector<Point> enumerate_all() const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override { return 1.0; }
  bool real_valued() const override { return false; }
  std::string show(const Point& p) const override;

  int m() const { return m_; }
  const std::vector<std::string>& items() const { return items_; }

  // The bubble-sort geodesic from a to b: a = g[0], ..., g[d] = b, each step
  // one adjacent transposition. Deterministic (left-to-right passes).
  std::vector<Point> geodesic(const Point& a, const Point& b) const;

 private:
  int m_;
  std::vector<std::string> items_;
};

// 2^A (or the k-element slice of it) under symmetric-difference distance.
class SubsetSpace : public Space {
 public:
  explicit SubsetSpace(std::vector<std::string> elements, int fixed_k = -1);

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  bool enumerable() const override { return elements_.size() <= 16; }
  std::vector<Point> enumerate_all() const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override { return 1.0; }
  bool real_valued() const override { return false; }
  std::string show(const Point& p) const override;

  int ground_size() const { return static_cast<int>(elements_.size()); }
  int fixed_k() const { return fixed_k_; }
  const std::vector<std::string>& elements() const { return elements_; }
  Point subset_of(const std::vector<std::string>& names) const;

 private:
  std::vector<std::string> elements_;
  int fixed_k_;
};

// Texts over a finite alphabet, length <= lmax. Insertions and deletions
// cost 1; swapping adjacent characters costs 1/lmax^2, so any amount of
// reordering is cheaper than one insertion. The distance is computed exactly:
// surplus characters (per character class) must be deleted/inserted, and the
// retained occurrences are matched order-preservingly within their class,
// minimising the induced inversion count over the choice of which surplus
// occurrences to drop.
class StringSpace : public Space {
 public:
  StringSpace(std::string alphabet, int lmax);

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  bool enumerable() const override;
  std::vector<Point> enumerate_all() const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override { return swap_weight(); }

  const std::string& alphabet() const { return alphabet_; }
  int lmax() const { return lmax_; }
  double swap_weight() const { return 1.0 / (static_cast<double>(lmax_) * lmax_); }

  // The edit script realising dist(a, b): deletions (right to left), then
  // adjacent swaps (bubble passes), then insertions (left to right). Each
  // entry is the string after applying one more operation; front() == a.
  std::vector<std::string> edit_path(const std::string& a, const std::string& b) const;

 private:
  struct Matching;
  Matching best_matching(const std::string& a, const std::string& b) const;

  std::string alphabet_;
  int lmax_;
};

// An explicit finite metric given by a symmetric distance matrix. The
// constructor rejects tables violating symmetry, identity, positivity, or the
// triangle inequality (beyond a 1e-9 slack for hand-entered decimals).
class FiniteTableSpace : public Space {
 public:
  FiniteTableSpace(std::vector<std::string> labels,
                   std::vector<std::vector<double>> table);

  double dist(const Point& a, const Point& b) const override;
  std::vector<std::string> validate(const Point& p) const override;
  bool enumerable() const override { return true; }
  std::vector<Point> enumerate_all() const override;
  std::vector<Point> midpoint_candidates(const Point& p, const Point& q,
                                         int cap) const override;
  Point sample(Rng& rng) const override;
  double default_epsilon() const override { return 1.0; }
  std::string show(const Point& p) const override;

  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  Point label(const std::string& name) const;

  // Issues found in a candidate table; used by the constructor and exposed
  // for config-time diagnostics.
  static std::vector<std::string> check_table(
      const std::vector<std::vector<double>>& table);

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> table_;
};

}  // namespace metgov
