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

#include "metgov/sim.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "metgov/errors.hpp"
#include "metgov/gap.hpp"
#include "metgov/rule.hpp"

namespace metgov {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<std::string> numbered(const char* prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Positive-gap test: exact metrics compare against zero, real-valued ones
// against the score epsilon, discounting pure float noise.
bool gap_counts_as_positive(const Space& space, double gap) {
  return gap > space.score_epsilon();
}

double profile_score(const Space& space, const Point& s,
                     const std::vector<Point>& votes, const Point& c,
                     const Aggregator& agg, double sigma) {
  std::vector<double> u;
  u.reserve(votes.size());
  for (const Point& v : votes) u.push_back(space.dist(v, s) - space.dist(v, c));
  return aggregate(agg, sigma, std::move(u));
}

// Sweep-side optimum: a flat ~5000-point evaluation budget per profile keeps
// rows comparable across spaces. Enumerable spaces are scanned exactly,
// euclid2d gets a 71x71 lattice over its sampling box, and the simplex gets
// the densest lattice of compositions that fits the budget. The status quo
// and every vote are folded in, so opt >= max(0, peak) and the gap is never
// negative.
double sweep_opt(const Space& space, const Point& s,
                 const std::vector<Point>& votes, const Aggregator& agg,
                 double sigma) {
  double best = 0.0;  // the status quo itself scores zero
  auto consider = [&](const Point& c) {
    best = std::max(best, profile_score(space, s, votes, c, agg, sigma));
  };
  if (space.enumerable()) {
    for (const Point& c : space.enumerate_all()) consider(c);
  } else if (space.kind() == SpaceKind::Euclid2D) {
    const auto& e = static_cast<const Euclid2DSpace&>(space);
    const int r = 71;  // 71*71 = 5041 points
    double lo = e.box_lo(), span = e.box_hi() - e.box_lo();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        consider(Point::vector({lo + span * i / (r - 1), lo + span * j / (r - 1)}));
  } else if (space.kind() == SpaceKind::Simplex) {
    int m = static_cast<const SimplexSpace&>(space).m();
    int denom = 1;  // largest d with C(d+m-1, m-1) <= 5000
    for (int d = 2;; ++d) {
      double npts = 1;
      for (int t = 1; t < m; ++t) npts = npts * (d + t) / t;
      if (npts > 5000.0) break;
      denom = d;
    }
    std::vector<double> x(static_cast<size_t>(m));
    auto rec = [&](auto&& self, int pos, int rem) -> void {
      if (pos == m - 1) {
        x[static_cast<size_t>(pos)] = static_cast<double>(rem) / denom;
        consider(Point::vector(x));
        return;
      }
      for (int t = 0; t <= rem; ++t) {
        x[static_cast<size_t>(pos)] = static_cast<double>(t) / denom;
        self(self, pos + 1, rem - t);
      }
    };
    rec(rec, 0, denom);
  } else if (space.kind() == SpaceKind::Scalar1D) {
    const auto& sc = static_cast<const Scalar1DSpace&>(space);
    const int r = 5041;
    for (int i = 0; i < r; ++i)
      consider(Point::scalar(sc.lo() + (sc.hi() - sc.lo()) * i / (r - 1.0)));
  } else {
    throw ConfigError(space.name() + ": no sweep optimum rule for this space");
  }
  for (const Point& v : votes) consider(v);
  return best;
}

// A pinned central status quo, for the spaces where "the middle" means
// something.
std::optional<Point> center_point(const Space& space) {
  switch (space.kind()) {
    case SpaceKind::Euclid2D: {
      const auto& e = static_cast<const Euclid2DSpace&>(space);
      double c = 0.5 * (e.box_lo() + e.box_hi());
      return Point::vector({c, c});
    }
    case SpaceKind::Scalar1D: {
      const auto& sc = static_cast<const Scalar1DSpace&>(space);
      return Point::scalar(0.5 * (sc.lo() + sc.hi()));
    }
    case SpaceKind::Simplex: {
      int m = static_cast<const SimplexSpace&>(space).m();
      return Point::vector(std::vector<double>(static_cast<size_t>(m), 1.0 / m));
    }
    default:
      return std::nullopt;
  }
}

// A point when the status quo is pinned under `policy`, nullopt when it is
// sampled alongside the peaks.
std::optional<Point> pinned_status_quo(const Space& space, const std::string& policy) {
  if (policy == "sampled") return std::nullopt;
  if (policy == "center") {
    std::optional<Point> c = center_point(space);
    if (!c)
      throw ConfigError(space.name() + ": status-quo policy 'center' needs a space with a middle");
    return c;
  }
  if (policy == "auto")
    return space.kind() == SpaceKind::Euclid2D ? center_point(space) : std::nullopt;
  throw ConfigError("sweep: unknown status-quo policy '" + policy + "'");
}

}  // namespace

SpacePtr sweep_space(const std::string& setting) {
  if (setting == "euclid2d") return std::make_shared<Euclid2DSpace>();
  if (setting == "simplex-m3") return std::make_shared<SimplexSpace>(3);
  if (setting == "simplex-m4") return std::make_shared<SimplexSpace>(4);
  if (setting == "hypercube-a6") return std::make_shared<SubsetSpace>(numbered("e", 6));
  if (setting == "hypercube-a8") return std::make_shared<SubsetSpace>(numbered("e", 8));
  if (setting == "hypercube-a10") return std::make_shared<SubsetSpace>(numbered("e", 10));
  if (setting == "permutations-m4") return std::make_shared<PermutationSpace>(4);
  if (setting == "permutations-m5") return std::make_shared<PermutationSpace>(5);
  if (setting == "permutations-m6") return std::make_shared<PermutationSpace>(6);
  if (setting == "scalar") return std::make_shared<Scalar1DSpace>(0.0, 1.0);
  throw ConfigError("sweep: unknown setting '" + setting + "'");
}

std::vector<SweepRowSpec> full_grid() {
  std::vector<SweepRowSpec> rows;
  for (int n : {5, 11, 21, 51}) rows.push_back({"euclid2d", n});
  for (const char* s : {"simplex-m3", "simplex-m4"})
    for (int n : {5, 11, 21}) rows.push_back({s, n});
  for (const char* s : {"hypercube-a6", "hypercube-a8", "hypercube-a10"})
    for (int n : {5, 11, 21}) rows.push_back({s, n});
  for (const char* s : {"permutations-m4", "permutations-m5", "permutations-m6"})
    for (int n : {5, 11, 21}) rows.push_back({s, n});
  return rows;
}

std::vector<SweepRowSpec> headline_grid() {
  return {{"euclid2d", 5},      {"euclid2d", 21},       {"euclid2d", 51},
          {"simplex-m4", 5},    {"simplex-m4", 21},     {"hypercube-a8", 5},
          {"hypercube-a8", 21}, {"permutations-m5", 5}, {"permutations-m5", 21}};
}

uint64_t row_seed(uint64_t master_seed, const SweepRowSpec& row) {
  return derive_seed(master_seed, fnv1a(row.setting) ^ static_cast<uint64_t>(row.n));
}

ProfileRecord run_profile(const Space& space, const SweepRowSpec& row,
                          uint64_t rseed, int index, const Aggregator& agg,
                          double sigma, const std::string& policy) {
  std::optional<Point> pinned = pinned_status_quo(space, policy);
  for (int attempt = 0;; ++attempt) {
    if (attempt > 10000)
      throw ProtocolError("sweep: profile " + std::to_string(index) + " of " +
                          row.setting + " stayed vacuous after 10000 redraws");
    uint64_t seed = derive_seed(rseed, static_cast<uint64_t>(index) * 1000003ULL +
                                           static_cast<uint64_t>(attempt));
    Rng rng(seed);
    Point s = pinned ? *pinned : space.sample(rng);
    std::vector<Point> votes;
    votes.reserve(static_cast<size_t>(row.n));
    for (int i = 0; i < row.n; ++i) votes.push_back(space.sample(rng));

    double opt = sweep_opt(space, s, votes, agg, sigma);
    if (opt <= space.score_epsilon()) continue;  // vacuous; redraw
    double peak = -std::numeric_limits<double>::infinity();
    for (const Point& v : votes)
      peak = std::max(peak, profile_score(space, s, votes, v, agg, sigma));
    double gap = opt - peak;

    HeuristicResult h = heuristic_p(space, s, votes, votes, agg, sigma);

    ProfileRecord rec;
    rec.setting = row.setting;
    rec.n = row.n;
    rec.index = index;
    rec.seed = seed;
    rec.attempts = attempt;
    rec.opt = opt;
    rec.peak = peak;
    rec.gap = gap;
    rec.cg_positive = gap_counts_as_positive(space, gap);
    rec.hit = h.candidate.has_value();
    if (rec.hit) rec.heuristic_score = h.candidate_score;
    if (rec.hit && rec.cg_positive)
      rec.closing_ratio = std::clamp((h.candidate_score - peak) / gap, 0.0, 1.0);
    return rec;
  }
}

SweepResult run_sweep(const SweepSettings& settings) {
  if (settings.profiles <= 0) throw ConfigError("sweep: profiles must be positive");
  std::vector<SweepRowSpec> rows =
      settings.rows.empty() ? full_grid() : settings.rows;
  int jobs = std::max(1, settings.jobs);

  SweepResult result;
  for (const SweepRowSpec& row : rows) {
    SpacePtr space = sweep_space(row.setting);
    // Fails fast on a bad policy (or "center" in a centerless space) before
    // any worker starts.
    (void)pinned_status_quo(*space, settings.status_quo_policy);
    uint64_t rseed = row_seed(settings.master_seed, row);
    std::vector<ProfileRecord> recs(static_cast<size_t>(settings.profiles));

    auto worker = [&](int from, int to) {
      for (int i = from; i < to; ++i)
        recs[static_cast<size_t>(i)] =
            run_profile(*space, row, rseed, i, settings.agg, settings.sigma,
                        settings.status_quo_policy);
    };
    if (jobs == 1) {
      worker(0, settings.profiles);
    } else {
      std::vector<std::thread> pool;
      std::exception_ptr err;
      std::mutex err_mu;
      auto guarded = [&](int from, int to) {
        try {
          worker(from, to);
        } catch (...) {
          std::lock_guard<std::mutex> g(err_mu);
          if (!err) err = std::current_exception();
        }
      };
      int chunk = (settings.profiles + jobs - 1) / jobs;
      for (int j = 0; j < jobs; ++j) {
        int from = j * chunk;
        int to = std::min(settings.profiles, from + chunk);
        if (from >= to) break;
        pool.emplace_back(guarded, from, to);
      }
      for (std::thread& t : pool) t.join();
      if (err) std::rethrow_exception(err);
    }

    RowStats st;
    st.row = row;
    st.profiles = settings.profiles;
    int pos = 0, hits = 0;
    long draws = 0;
    double ratio_sum = 0;
    for (const ProfileRecord& r : recs) {
      draws += r.attempts + 1;
      if (r.hit) ++hits;
      if (r.cg_positive) {
        ++pos;
        ratio_sum += r.closing_ratio;  // zero when the heuristic declined
      }
    }
    st.positive_cg_freq = static_cast<double>(pos) / settings.profiles;
    st.hit_rate = draws > 0 ? static_cast<double>(hits) / draws : 0.0;
    st.gap_closing_ratio = pos > 0 ? ratio_sum / pos : 0.0;
    result.stats.push_back(std::move(st));
    result.records.insert(result.records.end(),
                          std::make_move_iterator(recs.begin()),
                          std::make_move_iterator(recs.end()));
  }
  return result;
}

std::string stats_csv(const SweepResult& r) {
  std::string out = "setting,n,profiles,positive_cg_freq,gap_closing_ratio,hit_rate\n";
  char buf[160];
  for (const RowStats& st : r.stats) {
    std::snprintf(buf, sizeof buf, "%s,%d,%d,%.4f,%.4f,%.4f\n",
                  st.row.setting.c_str(), st.row.n, st.profiles,
                  st.positive_cg_freq, st.gap_closing_ratio, st.hit_rate);
    out += buf;
  }
  return out;
}

std::string records_jsonl(const SweepResult& r) {
  std::string out;
  for (const ProfileRecord& rec : r.records) {
    Json j;
    j["setting"] = rec.setting;
    j["n"] = rec.n;
    j["index"] = rec.index;
    j["seed"] = rec.seed;
    j["attempts"] = rec.attempts;
    j["opt"] = rec.opt;
    j["peak"] = rec.peak;
    j["gap"] = rec.gap;
    j["cg_positive"] = rec.cg_positive;
    j["hit"] = rec.hit;
    j["heuristic_score"] = rec.heuristic_score;
    j["closing_ratio"] = rec.closing_ratio;
    out += j.dump();
    out += '\n';
  }
  return out;
}

SweepSettings sweep_settings_from_json(const Json& j) {
  SweepSettings s;
  if (!j.is_object()) throw ConfigError("sweep config: expected an object");
  if (j.contains("master_seed")) s.master_seed = j.at("master_seed").get<uint64_t>();
  if (j.contains("profiles")) s.profiles = j.at("profiles").get<int>();
  if (j.contains("sigma")) s.sigma = j.at("sigma").get<double>();
  if (j.contains("aggregator"))
    s.agg = aggregator_from_string(j.at("aggregator").get<std::string>());
  if (j.contains("jobs")) s.jobs = j.at("jobs").get<int>();
  if (j.contains("status_quo_policy")) {
    s.status_quo_policy = j.at("status_quo_policy").get<std::string>();
    if (s.status_quo_policy != "auto" && s.status_quo_policy != "sampled" &&
        s.status_quo_policy != "center")
      throw ConfigError("sweep config: status_quo_policy must be auto, sampled, or center");
  }
  if (j.contains("rows")) {
    if (!j.at("rows").is_array()) throw ConfigError("sweep config: 'rows' must be an array");
    for (const Json& rj : j.at("rows")) {
      SweepRowSpec row;
      row.setting = rj.at("setting").get<std::string>();
      row.n = rj.at("n").get<int>();
      if (row.n <= 0) throw ConfigError("sweep config: row n must be positive");
      s.rows.push_back(std::move(row));
    }
  }
  return s;
}

}  // namespace metgov
