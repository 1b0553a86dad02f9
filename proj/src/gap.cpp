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

#include "metgov/gap.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "metgov/errors.hpp"

namespace metgov {

namespace {

// Incremental best-tracker with the canonical tie-break.
struct Best {
  bool has = false;
  Point point;
  double score = 0;

  void offer(const Point& p, double sc) {
    if (!has || sc > score || (sc == score && p < point)) {
      has = true;
      point = p;
      score = sc;
    }
  }
};

double score_of(const Space& space, const Point& s, const std::vector<Point>& votes,
                const std::vector<double>& base, const Point& p, const Aggregator& agg,
                double sigma) {
  std::vector<double> u(votes.size());
  for (size_t i = 0; i < votes.size(); ++i)
    u[i] = base[i] - space.dist(votes[i], p);
  (void)s;
  return aggregate(agg, sigma, std::move(u));
}

std::vector<double> base_distances(const Space& space, const Point& s,
                                   const std::vector<Point>& votes) {
  std::vector<double> base(votes.size());
  for (size_t i = 0; i < votes.size(); ++i) base[i] = space.dist(votes[i], s);
  return base;
}

void offer_anchors(Best& best, const Space& space, const Point& s,
                   const std::vector<Point>& votes, const std::vector<double>& base,
                   const Aggregator& agg, double sigma) {
  best.offer(s, score_of(space, s, votes, base, s, agg, sigma));
  for (const Point& v : votes)
    best.offer(v, score_of(space, s, votes, base, v, agg, sigma));
}

OptResult opt_grid_scalar(const Scalar1DSpace& space, const Point& s,
                          const std::vector<Point>& votes, const Aggregator& agg,
                          double sigma) {
  std::vector<double> base = base_distances(space, s, votes);
  Best best;
  offer_anchors(best, space, s, votes, base, agg, sigma);

  double lo = s.x, hi = s.x;
  for (const Point& v : votes) {
    lo = std::min(lo, v.x);
    hi = std::max(hi, v.x);
  }
  // The optimum lies in the convex hull of votes and status quo: moving
  // outward increases every member's distance.
  if (hi - lo > 1e-12) {
    double step = (hi - lo) / 1000.0;
    for (int i = 0; i <= 1000; ++i) {
      Point p = Point::scalar(lo + step * static_cast<double>(i));
      best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
    }
    double c = best.point.tag == Point::Tag::Scalar ? best.point.x : s.x;
    double fine = step / 10.0;
    for (int i = -10; i <= 10; ++i) {
      double x = c + fine * static_cast<double>(i);
      if (x < lo || x > hi) continue;
      Point p = Point::scalar(x);
      best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
    }
  }
  return {best.point, best.score, "grid"};
}

OptResult opt_grid_euclid2d(const Euclid2DSpace& space, const Point& s,
                            const std::vector<Point>& votes, const Aggregator& agg,
                            double sigma) {
  std::vector<double> base = base_distances(space, s, votes);
  Best best;
  offer_anchors(best, space, s, votes, base, agg, sigma);

  double lo0 = s.vec[0], hi0 = s.vec[0], lo1 = s.vec[1], hi1 = s.vec[1];
  for (const Point& v : votes) {
    lo0 = std::min(lo0, v.vec[0]);
    hi0 = std::max(hi0, v.vec[0]);
    lo1 = std::min(lo1, v.vec[1]);
    hi1 = std::max(hi1, v.vec[1]);
  }
  double pad = std::max({0.1 * (hi0 - lo0), 0.1 * (hi1 - lo1), 1e-6});
  lo0 -= pad;
  hi0 += pad;
  lo1 -= pad;
  hi1 += pad;

  double sx = (hi0 - lo0) / 100.0, sy = (hi1 - lo1) / 100.0;
  for (int i = 0; i <= 100; ++i)
    for (int j = 0; j <= 100; ++j) {
      Point p = Point::vector({lo0 + sx * i, lo1 + sy * j});
      best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
    }

  if (best.point.tag == Point::Tag::Vector) {
    double cx = best.point.vec[0], cy = best.point.vec[1];
    double fx = sx / 10.0, fy = sy / 10.0;
    for (int i = -10; i <= 10; ++i)
      for (int j = -10; j <= 10; ++j) {
        Point p = Point::vector({cx + fx * i, cy + fy * j});
        best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
      }
  }
  return {best.point, best.score, "grid"};
}

// All integer m-tuples with sum `total` and lo[i] <= x[i] <= hi[i].
void windowed_compositions(int m, int total, const std::vector<int>& lo,
                           const std::vector<int>& hi,
                           const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> x(static_cast<size_t>(m), 0);
  std::vector<int> lo_suffix(static_cast<size_t>(m) + 1, 0),
      hi_suffix(static_cast<size_t>(m) + 1, 0);
  for (int i = m - 1; i >= 0; --i) {
    lo_suffix[static_cast<size_t>(i)] = lo_suffix[static_cast<size_t>(i) + 1] + lo[static_cast<size_t>(i)];
    hi_suffix[static_cast<size_t>(i)] = hi_suffix[static_cast<size_t>(i) + 1] + hi[static_cast<size_t>(i)];
  }
  std::function<void(int, int)> rec = [&](int i, int rem) {
    if (i == m - 1) {
      if (rem >= lo[static_cast<size_t>(i)] && rem <= hi[static_cast<size_t>(i)]) {
        x[static_cast<size_t>(i)] = rem;
        emit(x);
      }
      return;
    }
    int from = std::max(lo[static_cast<size_t>(i)], rem - hi_suffix[static_cast<size_t>(i) + 1]);
    int to = std::min(hi[static_cast<size_t>(i)], rem - lo_suffix[static_cast<size_t>(i) + 1]);
    for (int v = from; v <= to; ++v) {
      x[static_cast<size_t>(i)] = v;
      rec(i + 1, rem - v);
    }
  };
  if (m > 0) rec(0, total);
}

OptResult opt_grid_simplex(const SimplexSpace& space, const Point& s,
                           const std::vector<Point>& votes, const Aggregator& agg,
                           double sigma) {
  std::vector<double> base = base_distances(space, s, votes);
  Best best;
  offer_anchors(best, space, s, votes, base, agg, sigma);

  int m = space.m();
  const int kCoarse = 50;
  std::vector<int> lo(static_cast<size_t>(m), 0), hi(static_cast<size_t>(m), kCoarse);
  std::vector<double> coords(static_cast<size_t>(m));
  std::vector<int> coarse_best;
  double coarse_score = -std::numeric_limits<double>::infinity();
  windowed_compositions(m, kCoarse, lo, hi, [&](const std::vector<int>& x) {
    for (int i = 0; i < m; ++i)
      coords[static_cast<size_t>(i)] = static_cast<double>(x[static_cast<size_t>(i)]) / kCoarse;
    Point p = Point::vector(coords);
    double sc = score_of(space, s, votes, base, p, agg, sigma);
    best.offer(p, sc);
    if (sc > coarse_score) {
      coarse_score = sc;
      coarse_best = x;
    }
  });

  if (!coarse_best.empty()) {
    const int kFine = 500;  // 10x the coarse resolution
    const int kScale = kFine / kCoarse;
    std::vector<int> flo(static_cast<size_t>(m)), fhi(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      int c = coarse_best[static_cast<size_t>(i)] * kScale;
      flo[static_cast<size_t>(i)] = std::max(0, c - kScale);
      fhi[static_cast<size_t>(i)] = std::min(kFine, c + kScale);
    }
    windowed_compositions(m, kFine, flo, fhi, [&](const std::vector<int>& x) {
      for (int i = 0; i < m; ++i)
        coords[static_cast<size_t>(i)] = static_cast<double>(x[static_cast<size_t>(i)]) / kFine;
      Point p = Point::vector(coords);
      best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
    });
  }
  return {best.point, best.score, "grid"};
}

}  // namespace

OptResult opt_enumerate(const Space& space, const Point& s,
                        const std::vector<Point>& votes, const Aggregator& agg,
                        double sigma) {
  if (!space.enumerable())
    throw ConfigError(space.name() + ": cannot enumerate for exact optimum");
  std::vector<double> base = base_distances(space, s, votes);
  Best best;
  offer_anchors(best, space, s, votes, base, agg, sigma);
  for (const Point& p : space.enumerate_all())
    best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
  return {best.point, best.score, "enumerate"};
}

OptResult opt_grid(const Space& space, const Point& s, const std::vector<Point>& votes,
                   const Aggregator& agg, double sigma) {
  switch (space.kind()) {
    case SpaceKind::Scalar1D:
      return opt_grid_scalar(static_cast<const Scalar1DSpace&>(space), s, votes, agg, sigma);
    case SpaceKind::Euclid2D:
      return opt_grid_euclid2d(static_cast<const Euclid2DSpace&>(space), s, votes, agg, sigma);
    case SpaceKind::Simplex:
      return opt_grid_simplex(static_cast<const SimplexSpace&>(space), s, votes, agg, sigma);
    default:
      throw ConfigError(space.name() + ": no grid optimiser for this space");
  }
}

OptResult opt_closed_1d(const Space& space, const Point& s,
                        const std::vector<Point>& votes, double sigma) {
  if (space.kind() != SpaceKind::Scalar1D)
    throw ConfigError("opt_closed_1d: requires a one-dimensional space");
  Aggregator agg = Aggregator::median();
  std::vector<double> base = base_distances(space, s, votes);
  Best best;
  offer_anchors(best, space, s, votes, base, agg, sigma);

  // For p above s the score equals the utility of the (n-k+1)-th vote in
  // ascending order; for p below s, the k-th. Each side is therefore
  // maximised at that order statistic itself (when it lies on that side),
  // and at s's own score (zero) otherwise.
  int n = static_cast<int>(votes.size());
  int k = support_threshold(sigma, n);
  std::vector<double> xs(votes.size());
  for (size_t i = 0; i < votes.size(); ++i) xs[i] = votes[i].x;
  std::sort(xs.begin(), xs.end());
  double below = xs[static_cast<size_t>(k - 1)];
  double above = xs[static_cast<size_t>(n - k)];
  if (below < s.x) {
    Point p = Point::scalar(below);
    best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
  }
  if (above > s.x) {
    Point p = Point::scalar(above);
    best.offer(p, score_of(space, s, votes, base, p, agg, sigma));
  }
  return {best.point, best.score, "closed-form-1d"};
}

OptResult opt_auto(const Space& space, const Point& s, const std::vector<Point>& votes,
                   const Aggregator& agg, double sigma) {
  if (space.enumerable()) return opt_enumerate(space, s, votes, agg, sigma);
  if (space.kind() == SpaceKind::Scalar1D && agg.kind == AggregatorKind::SigmaMedian)
    return opt_closed_1d(space, s, votes, sigma);
  return opt_grid(space, s, votes, agg, sigma);
}

PeakResult peak_score(const Space& space, const Point& s, const std::vector<Point>& votes,
                      const Aggregator& agg, double sigma) {
  if (votes.empty()) throw ConfigError("peak_score: no votes");
  std::vector<double> base = base_distances(space, s, votes);
  PeakResult out;
  for (int i = 0; i < static_cast<int>(votes.size()); ++i) {
    double sc = score_of(space, s, votes, base, votes[static_cast<size_t>(i)], agg, sigma);
    if (out.index < 0 || sc > out.score) {
      out.index = i;
      out.score = sc;
    }
  }
  return out;
}

GapReport compromise_gap(const Space& space, const Point& s,
                         const std::vector<Point>& votes, const Aggregator& agg,
                         double sigma) {
  GapReport rep;
  rep.opt = opt_auto(space, s, votes, agg, sigma);
  rep.peak = peak_score(space, s, votes, agg, sigma);
  rep.gap = rep.opt.score - rep.peak.score;
  rep.vacuous = !(rep.opt.score > space.score_epsilon());
  double lb = std::numeric_limits<double>::infinity();
  for (const Point& v : votes) lb = std::min(lb, space.dist(rep.opt.argmax, v));
  rep.lipschitz = lb;
  return rep;
}

HeuristicResult heuristic_p(const Space& space, const Point& s,
                            const std::vector<Point>& votes,
                            const std::vector<Point>& existing_proposals,
                            const Aggregator& agg, double sigma) {
  std::vector<double> base = base_distances(space, s, votes);
  HeuristicResult out;

  out.baseline = -std::numeric_limits<double>::infinity();
  for (const Point& p : existing_proposals)
    out.baseline = std::max(out.baseline,
                            score_of(space, s, votes, base, p, agg, sigma));

  std::set<Point> pool;
  for (size_t i = 0; i < votes.size(); ++i)
    for (size_t j = i + 1; j < votes.size(); ++j)
      for (Point& c : space.midpoint_candidates(votes[i], votes[j]))
        pool.insert(std::move(c));
  out.pool_size = static_cast<int>(pool.size());

  Best best;
  for (const Point& c : pool)
    best.offer(c, score_of(space, s, votes, base, c, agg, sigma));

  if (best.has && best.score > out.baseline) {
    out.candidate = best.point;
    out.candidate_score = best.score;
  } else if (best.has) {
    out.candidate_score = best.score;  // informational: best pool score
  }
  return out;
}

Point centroid_point(const std::vector<Point>& points) {
  if (points.empty()) throw ConfigError("centroid_point: empty input");
  if (points.front().tag != Point::Tag::Vector)
    throw ConfigError("centroid_point: needs coordinate points");
  size_t dim = points.front().vec.size();
  std::vector<double> acc(dim, 0.0);
  for (const Point& p : points) {
    if (p.tag != Point::Tag::Vector || p.vec.size() != dim)
      throw ConfigError("centroid_point: mixed dimensions");
    for (size_t i = 0; i < dim; ++i) acc[i] += p.vec[i];
  }
  for (double& a : acc) a /= static_cast<double>(points.size());
  return Point::vector(std::move(acc));
}

Point geometric_median(const std::vector<Point>& points, double tol, int max_iter) {
  if (points.empty()) throw ConfigError("geometric_median: empty input");
  Point y = centroid_point(points);
  size_t dim = y.vec.size();
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<double> t(dim, 0.0), r(dim, 0.0);
    double wsum = 0.0;
    int at_y = 0;
    for (const Point& p : points) {
      double d2 = 0.0;
      for (size_t i = 0; i < dim; ++i) {
        double diff = p.vec[i] - y.vec[i];
        d2 += diff * diff;
      }
      double d = std::sqrt(d2);
      if (d <= 1e-14) {
        ++at_y;
        continue;
      }
      double w = 1.0 / d;
      wsum += w;
      for (size_t i = 0; i < dim; ++i) {
        t[i] += p.vec[i] * w;
        r[i] += (p.vec[i] - y.vec[i]) * w;
      }
    }
    if (wsum == 0.0) break;  // all points coincide with y
    for (size_t i = 0; i < dim; ++i) t[i] /= wsum;
    std::vector<double> next(dim);
    if (at_y > 0) {
      double rn2 = 0.0;
      for (size_t i = 0; i < dim; ++i) rn2 += r[i] * r[i];
      double rn = std::sqrt(rn2);
      if (rn <= static_cast<double>(at_y)) break;  // y is the median
      double beta = static_cast<double>(at_y) / rn;
      for (size_t i = 0; i < dim; ++i)
        next[i] = (1.0 - beta) * t[i] + beta * y.vec[i];
    } else {
      next = t;
    }
    double move2 = 0.0;
    for (size_t i = 0; i < dim; ++i) {
      double diff = next[i] - y.vec[i];
      move2 += diff * diff;
    }
    y.vec = std::move(next);
    if (std::sqrt(move2) < tol) break;
  }
  return y;
}

}  // namespace metgov
