#include "metgov/space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

namespace metgov {

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  for (;;) {
    out.push_back(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  double r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

const char* space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Plurality: return "plurality";
    case SpaceKind::Scalar1D: return "scalar";
    case SpaceKind::Simplex: return "simplex";
    case SpaceKind::Euclid2D: return "euclid2d";
    case SpaceKind::Permutations: return "permutations";
    case SpaceKind::Subsets: return "subsets";
    case SpaceKind::Strings: return "strings";
    case SpaceKind::FiniteTable: return "table";
  }
  return "?";
}

std::string Space::show(const Point& p) const {
  switch (p.tag) {
    case Point::Tag::Index:
      return p.idx < 0 ? "_" : std::to_string(p.idx);
    case Point::Tag::Scalar:
      return fmt_num(p.x);
    case Point::Tag::Vector: {
      std::string s = "(";
      for (size_t i = 0; i < p.vec.size(); ++i) {
        if (i) s += ", ";
        s += fmt_num(p.vec[i]);
      }
      return s + ")";
    }
    case Point::Tag::Perm: {
      std::string s;
      for (size_t i = 0; i < p.perm.size(); ++i) {
        if (i) s += ">";
        s += std::to_string(p.perm[i]);
      }
      return s;
    }
    case Point::Tag::Mask: {
      std::string s = "{";
      bool first = true;
      for (int j = 0; j < 64; ++j)
        if (p.mask >> j & 1) {
          if (!first) s += ",";
          s += std::to_string(j);
          first = false;
        }
      return s + "}";
    }
    case Point::Tag::Str:
      return "\"" + p.str + "\"";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Plurality

PluralitySpace::PluralitySpace(std::vector<std::string> candidates)
    : Space(SpaceKind::Plurality,
            "plurality(" + std::to_string(candidates.size()) + ")"),
      candidates_(std::move(candidates)) {
  if (candidates_.empty()) throw ConfigError("plurality: empty candidate list");
}

double PluralitySpace::dist(const Point& a, const Point& b) const {
  return a == b ? 0.0 : 1.0;
}

std::vector<std::string> PluralitySpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Index)
    out.push_back("plurality point must be a candidate index or the vacancy");
  else if (p.idx < -1 || p.idx >= static_cast<int64_t>(candidates_.size()))
    out.push_back("candidate index " + std::to_string(p.idx) + " out of range");
  return out;
}

std::vector<Point> PluralitySpace::enumerate_all() const {
  std::vector<Point> out;
  out.push_back(vacancy());
  for (size_t i = 0; i < candidates_.size(); ++i)
    out.push_back(Point::index(static_cast<int64_t>(i)));
  return out;
}

Point PluralitySpace::sample(Rng& rng) const {
  return Point::index(rng.below_int(static_cast<int>(candidates_.size())));
}

std::string PluralitySpace::show(const Point& p) const {
  if (p.is_vacancy()) return "_";
  if (p.tag == Point::Tag::Index && p.idx >= 0 &&
      p.idx < static_cast<int64_t>(candidates_.size()))
    return candidates_[static_cast<size_t>(p.idx)];
  return Space::show(p);
}

Point PluralitySpace::candidate(const std::string& name) const {
  for (size_t i = 0; i < candidates_.size(); ++i)
    if (candidates_[i] == name) return Point::index(static_cast<int64_t>(i));
  throw ConfigError("plurality: unknown candidate '" + name + "'");
}

// ---------------------------------------------------------------------------
// Scalar1D

Scalar1DSpace::Scalar1DSpace(double lo, double hi)
    : Space(SpaceKind::Scalar1D, "scalar"), lo_(lo), hi_(hi) {
  if (!(lo_ < hi_)) throw ConfigError("scalar: empty interval");
}

double Scalar1DSpace::dist(const Point& a, const Point& b) const {
  return std::fabs(a.x - b.x);
}

std::vector<std::string> Scalar1DSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Scalar) {
    out.push_back("scalar point must carry a single value");
    return out;
  }
  if (!std::isfinite(p.x)) out.push_back("value is not finite");
  if (p.x < lo_) out.push_back("value below interval lower bound");
  if (p.x > hi_) out.push_back("value above interval upper bound");
  return out;
}

std::vector<Point> Scalar1DSpace::midpoint_candidates(const Point& p, const Point& q,
                                                      int cap) const {
  if (cap <= 0 || p.x == q.x) return {};
  double mid = (p.x + q.x) / 2;
  if (mid == p.x || mid == q.x) return {};
  return {Point::scalar(mid)};
}

Point Scalar1DSpace::sample(Rng& rng) const {
  if (!std::isfinite(lo_) || !std::isfinite(hi_))
    throw ConfigError("scalar: cannot sample from an unbounded interval");
  return Point::scalar(rng.uniform(lo_, hi_));
}

double Scalar1DSpace::default_epsilon() const {
  if (std::isfinite(lo_) && std::isfinite(hi_)) return 1e-3 * (hi_ - lo_);
  return 1e-3;
}

// ---------------------------------------------------------------------------
// Simplex

SimplexSpace::SimplexSpace(int m, std::vector<std::string> labels)
    : Space(SpaceKind::Simplex, "simplex(" + std::to_string(m) + ")"),
      m_(m),
      labels_(std::move(labels)) {
  if (m_ < 2) throw ConfigError("simplex: need at least two coordinates");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != m_)
    throw ConfigError("simplex: label count does not match dimension");
}

double SimplexSpace::dist(const Point& a, const Point& b) const {
  double s = 0;
  for (int i = 0; i < m_; ++i) {
    double d = a.vec[i] - b.vec[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::vector<std::string> SimplexSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Vector || static_cast<int>(p.vec.size()) != m_) {
    out.push_back("simplex point must carry " + std::to_string(m_) + " coordinates");
    return out;
  }
  double sum = 0;
  for (double v : p.vec) {
    if (!std::isfinite(v)) {
      out.push_back("coordinate is not finite");
      return out;
    }
    if (v < -1e-9) out.push_back("coordinate " + fmt_num(v) + " is negative");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    out.push_back("coordinates sum to " + fmt_num(sum) + ", expected 1");
  return out;
}

std::vector<Point> SimplexSpace::midpoint_candidates(const Point& p, const Point& q,
                                                     int cap) const {
  if (cap <= 0 || p == q) return {};
  std::vector<double> mid(m_);
  for (int i = 0; i < m_; ++i) mid[i] = (p.vec[i] + q.vec[i]) / 2;
  Point c = Point::vector(std::move(mid));
  if (c == p || c == q) return {};
  return {c};
}

Point SimplexSpace::sample(Rng& rng) const {
  std::vector<double> v(m_);
  double sum = 0;
  for (int i = 0; i < m_; ++i) {
    v[i] = rng.exponential();
    sum += v[i];
  }
  for (int i = 0; i < m_; ++i) v[i] /= sum;
  return Point::vector(std::move(v));
}

// ---------------------------------------------------------------------------
// Euclid2D

Euclid2DSpace::Euclid2DSpace(double box_lo, double box_hi)
    : Space(SpaceKind::Euclid2D, "euclid2d"), box_lo_(box_lo), box_hi_(box_hi) {
  if (!(box_lo_ < box_hi_)) throw ConfigError("euclid2d: empty sampling box");
}

double Euclid2DSpace::dist(const Point& a, const Point& b) const {
  double dx = a.vec[0] - b.vec[0];
  double dy = a.vec[1] - b.vec[1];
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::string> Euclid2DSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Vector || p.vec.size() != 2) {
    out.push_back("plane point must carry exactly two coordinates");
    return out;
  }
  for (double v : p.vec)
    if (!std::isfinite(v)) {
      out.push_back("coordinate is not finite");
      break;
    }
  return out;
}

std::vector<Point> Euclid2DSpace::midpoint_candidates(const Point& p, const Point& q,
                                                      int cap) const {
  if (cap <= 0 || p == q) return {};
  Point c = Point::vector({(p.vec[0] + q.vec[0]) / 2, (p.vec[1] + q.vec[1]) / 2});
  if (c == p || c == q) return {};
  return {c};
}

Point Euclid2DSpace::sample(Rng& rng) const {
  double x = rng.uniform(box_lo_, box_hi_);
  double y = rng.uniform(box_lo_, box_hi_);
  return Point::vector({x, y});
}

// ---------------------------------------------------------------------------
// Permutations

PermutationSpace::PermutationSpace(int m, std::vector<std::string> items)
    : Space(SpaceKind::Permutations, "permutations(" + std::to_string(m) + ")"),
      m_(m),
      items_(std::move(items)) {
  if (m_ < 2 || m_ > 16) throw ConfigError("permutations: need 2 <= m <= 16");
  if (!items_.empty() && static_cast<int>(items_.size()) != m_)
    throw ConfigError("permutations: item count does not match m");
}

double PermutationSpace::dist(const Point& a, const Point& b) const {
  int pos[16];
  for (int i = 0; i < m_; ++i) pos[b.perm[i]] = i;
  int inv = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = i + 1; j < m_; ++j)
      if (pos[a.perm[i]] > pos[a.perm[j]]) ++inv;
  return inv;
}

std::vector<std::string> PermutationSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Perm || static_cast<int>(p.perm.size()) != m_) {
    out.push_back("point must rank exactly " + std::to_string(m_) + " items");
    return out;
  }
  std::vector<bool> seen(m_, false);
  for (int v : p.perm) {
    if (v < 0 || v >= m_) {
      out.push_back("item index " + std::to_string(v) + " out of range");
      return out;
    }
    if (seen[v]) out.push_back("item " + std::to_string(v) + " ranked twice");
    seen[v] = true;
  }
  return out;
}

std::vector<Point> PermutationSpace::enumerate_all() const {
  std::vector<int> cur(m_);
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<Point> out;
  do {
    out.push_back(Point::permutation(cur));
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

std::vector<Point> PermutationSpace::geodesic(const Point& a, const Point& b) const {
  int pos[16];
  for (int i = 0; i < m_; ++i) pos[b.perm[i]] = i;
  std::vector<int> cur = a.perm, r(m_);
  for (int i = 0; i < m_; ++i) r[i] = pos[cur[i]];
  std::vector<Point> out{Point::permutation(cur)};
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < m_; ++i)
      if (r[i] > r[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        std::swap(r[i], r[i + 1]);
        out.push_back(Point::permutation(cur));
        moved = true;
      }
  }
  return out;
}

std::vector<Point> PermutationSpace::midpoint_candidates(const Point& p, const Point& q,
                                                         int cap) const {
  int d = static_cast<int>(dist(p, q));
  if (cap <= 0 || d < 2) return {};
  std::vector<Point> out;
  auto add = [&](const Point& c) {
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  std::vector<Point> fwd = geodesic(p, q), rev = geodesic(q, p);
  add(fwd[d / 2]);
  add(rev[d / 2]);
  std::sort(out.begin(), out.end());
  if (static_cast<int>(out.size()) > cap) out.resize(cap);
  return out;
}

Point PermutationSpace::sample(Rng& rng) const {
  std::vector<int> v(m_);
  std::iota(v.begin(), v.end(), 0);
  for (int i = m_ - 1; i > 0; --i) std::swap(v[i], v[rng.below_int(i + 1)]);
  return Point::permutation(v);
}

std::string PermutationSpace::show(const Point& p) const {
  if (p.tag != Point::Tag::Perm || items_.empty()) return Space::show(p);
  std::string s;
  for (size_t i = 0; i < p.perm.size(); ++i) {
    if (i) s += ">";
    s += items_[static_cast<size_t>(p.perm[i])];
  }
  return s;
}

// ---------------------------------------------------------------------------
// Subsets

SubsetSpace::SubsetSpace(std::vector<std::string> elements, int fixed_k)
    : Space(SpaceKind::Subsets,
            fixed_k < 0 ? "subsets(" + std::to_string(elements.size()) + ")"
                        : "subsets(" + std::to_string(elements.size()) + " choose " +
                              std::to_string(fixed_k) + ")"),
      elements_(std::move(elements)),
      fixed_k_(fixed_k) {
  if (elements_.empty() || elements_.size() > 16)
    throw ConfigError("subsets: need 1 <= |A| <= 16");
  if (fixed_k_ > static_cast<int>(elements_.size()))
    throw ConfigError("subsets: fixed size exceeds ground set");
}

double SubsetSpace::dist(const Point& a, const Point& b) const {
  return static_cast<double>(std::popcount(a.mask ^ b.mask));
}

std::vector<std::string> SubsetSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Mask) {
    out.push_back("subset point must carry a bitmask");
    return out;
  }
  if (p.mask >> elements_.size())
    out.push_back("bitmask mentions elements outside the ground set");
  if (fixed_k_ >= 0 && std::popcount(p.mask) != fixed_k_)
    out.push_back("subset has " + std::to_string(std::popcount(p.mask)) +
                  " elements, expected exactly " + std::to_string(fixed_k_));
  return out;
}

std::vector<Point> SubsetSpace::enumerate_all() const {
  std::vector<Point> out;
  uint64_t top = 1ULL << elements_.size();
  for (uint64_t m = 0; m < top; ++m)
    if (fixed_k_ < 0 || std::popcount(m) == fixed_k_) out.push_back(Point::subset(m));
  return out;
}

std::vector<Point> SubsetSpace::midpoint_candidates(const Point& p, const Point& q,
                                                    int cap) const {
  if (cap <= 0 || p.mask == q.mask) return {};
  uint64_t delta = p.mask ^ q.mask, base = p.mask & q.mask;
  // Points of the lattice interval [p∩q, p∪q] other than the endpoints lie on
  // a geodesic; rank them by how evenly they split the pair, then by mask.
  std::vector<std::pair<int, uint64_t>> cand;
  uint64_t t = delta;
  for (;;) {
    uint64_t x = base | t;
    if (x != p.mask && x != q.mask) {
      Point c = Point::subset(x);
      if (fixed_k_ < 0 || std::popcount(x) == fixed_k_) {
        int da = std::popcount(x ^ p.mask), db = std::popcount(x ^ q.mask);
        cand.emplace_back(std::abs(da - db), x);
      }
    }
    if (t == 0) break;
    t = (t - 1) & delta;
  }
  std::sort(cand.begin(), cand.end());
  std::vector<Point> out;
  for (auto& [bal, x] : cand) {
    (void)bal;
    out.push_back(Point::subset(x));
    if (static_cast<int>(out.size()) >= cap) break;
  }
  return out;
}

Point SubsetSpace::sample(Rng& rng) const {
  int n = ground_size();
  if (fixed_k_ < 0) return Point::subset(rng.below(1ULL << n));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  uint64_t mask = 0;
  for (int i = 0; i < fixed_k_; ++i) {
    int j = i + rng.below_int(n - i);
    std::swap(idx[i], idx[j]);
    mask |= 1ULL << idx[i];
  }
  return Point::subset(mask);
}

std::string SubsetSpace::show(const Point& p) const {
  if (p.tag != Point::Tag::Mask) return Space::show(p);
  std::string s = "{";
  bool first = true;
  for (size_t j = 0; j < elements_.size(); ++j)
    if (p.mask >> j & 1) {
      if (!first) s += ",";
      s += elements_[j];
      first = false;
    }
  return s + "}";
}

Point SubsetSpace::subset_of(const std::vector<std::string>& names) const {
  uint64_t mask = 0;
  for (const auto& n : names) {
    auto it = std::find(elements_.begin(), elements_.end(), n);
    if (it == elements_.end()) throw ConfigError("subsets: unknown element '" + n + "'");
    mask |= 1ULL << (it - elements_.begin());
  }
  return Point::subset(mask);
}

// ---------------------------------------------------------------------------
// Strings

namespace {
// Label = (character class, copy number among kept occurrences).
struct KeptSeq {
  std::vector<int> labels;  // label ids in positional order
};
}  // namespace

struct StringSpace::Matching {
  long long dels = 0, inss = 0, swaps = 0;
  std::vector<int> keep_a, keep_b;  // kept positions, ascending
};

StringSpace::StringSpace(std::string alphabet, int lmax)
    : Space(SpaceKind::Strings,
            "strings(" + std::to_string(alphabet.size()) + "," + std::to_string(lmax) + ")"),
      alphabet_(std::move(alphabet)),
      lmax_(lmax) {
  if (alphabet_.empty()) throw ConfigError("strings: empty alphabet");
  if (lmax_ < 1) throw ConfigError("strings: max length must be positive");
  std::string sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ConfigError("strings: alphabet has repeated characters");
}

StringSpace::Matching StringSpace::best_matching(const std::string& a,
                                                 const std::string& b) const {
  std::map<char, std::vector<int>> pa, pb;
  for (size_t i = 0; i < a.size(); ++i) pa[a[i]].push_back(static_cast<int>(i));
  for (size_t i = 0; i < b.size(); ++i) pb[b[i]].push_back(static_cast<int>(i));

  struct Cls {
    std::vector<int> apos, bpos;
    int k;
    std::vector<std::vector<int>> achoice, bchoice;  // combinations of kept slots
  };
  std::vector<Cls> classes;
  std::map<char, int> cls_of;
  for (auto& [c, v] : pa) cls_of.emplace(c, 0);
  for (auto& [c, v] : pb) cls_of.emplace(c, 0);

  Matching m;
  double combos = 1;
  for (auto& [c, slot] : cls_of) {
    Cls cl;
    if (auto it = pa.find(c); it != pa.end()) cl.apos = it->second;
    if (auto it = pb.find(c); it != pb.end()) cl.bpos = it->second;
    cl.k = static_cast<int>(std::min(cl.apos.size(), cl.bpos.size()));
    m.dels += static_cast<long long>(cl.apos.size()) - cl.k;
    m.inss += static_cast<long long>(cl.bpos.size()) - cl.k;
    cl.achoice = combinations(static_cast<int>(cl.apos.size()), cl.k);
    cl.bchoice = combinations(static_cast<int>(cl.bpos.size()), cl.k);
    combos *= binom(static_cast<int>(cl.apos.size()), cl.k) *
              binom(static_cast<int>(cl.bpos.size()), cl.k);
    slot = static_cast<int>(classes.size());
    classes.push_back(std::move(cl));
  }
  if (combos > 1e6)
    throw ConfigError("strings: distance computation too ambiguous (" +
                      std::to_string(static_cast<long long>(combos)) + " matchings)");

  // Odometer over (a-choice, b-choice) per class; first minimum wins, which
  // makes the retained-occurrence choice deterministic.
  size_t nc = classes.size();
  std::vector<size_t> ai(nc, 0), bi(nc, 0);
  long long best = -1;
  std::vector<int> best_ka, best_kb;
  std::vector<int> label_rank;  // rank of label id within kept-b order
  for (;;) {
    // Kept positions with label ids; labels are numbered per (class, copy).
    std::vector<std::pair<int, int>> akeep, bkeep;  // (position, label)
    int label_base = 0;
    for (size_t ci = 0; ci < nc; ++ci) {
      const Cls& cl = classes[ci];
      const auto& ac = cl.achoice[ai[ci]];
      const auto& bc = cl.bchoice[bi[ci]];
      for (int j = 0; j < cl.k; ++j) {
        akeep.emplace_back(cl.apos[ac[j]], label_base + j);
        bkeep.emplace_back(cl.bpos[bc[j]], label_base + j);
      }
      label_base += cl.k;
    }
    std::sort(akeep.begin(), akeep.end());
    std::sort(bkeep.begin(), bkeep.end());
    label_rank.assign(label_base, 0);
    for (size_t r = 0; r < bkeep.size(); ++r) label_rank[bkeep[r].second] = static_cast<int>(r);
    long long inv = 0;
    for (size_t i = 0; i < akeep.size(); ++i)
      for (size_t j = i + 1; j < akeep.size(); ++j)
        if (label_rank[akeep[i].second] > label_rank[akeep[j].second]) ++inv;
    if (best < 0 || inv < best) {
      best = inv;
      best_ka.clear();
      best_kb.clear();
      for (auto& [pos, lbl] : akeep) best_ka.push_back(pos);
      for (auto& [pos, lbl] : bkeep) best_kb.push_back(pos);
    }
    // advance odometer
    size_t ci = 0;
    for (; ci < nc; ++ci) {
      if (++ai[ci] < classes[ci].achoice.size()) break;
      ai[ci] = 0;
      if (++bi[ci] < classes[ci].bchoice.size()) break;
      bi[ci] = 0;
    }
    if (ci == nc) break;
  }
  m.swaps = best < 0 ? 0 : best;
  m.keep_a = std::move(best_ka);
  m.keep_b = std::move(best_kb);
  return m;
}

double StringSpace::dist(const Point& a, const Point& b) const {
  if (a.str == b.str) return 0;
  Matching m = best_matching(a.str, b.str);
  return static_cast<double>(m.dels + m.inss) + static_cast<double>(m.swaps) * swap_weight();
}

std::vector<std::string> StringSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Str) {
    out.push_back("string point must carry text");
    return out;
  }
  if (static_cast<int>(p.str.size()) > lmax_)
    out.push_back("text longer than the maximum length " + std::to_string(lmax_));
  for (char c : p.str)
    if (alphabet_.find(c) == std::string::npos) {
      out.push_back(std::string("character '") + c + "' not in the alphabet");
      break;
    }
  return out;
}

bool StringSpace::enumerable() const {
  double total = 0, p = 1;
  for (int len = 0; len <= lmax_; ++len) {
    total += p;
    p *= static_cast<double>(alphabet_.size());
  }
  return total <= 30000;
}

std::vector<Point> StringSpace::enumerate_all() const {
  if (!enumerable()) throw ConfigError(name() + ": space is not enumerable");
  std::vector<Point> out;
  std::string sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::string> layer{""};
  for (int len = 0; len <= lmax_; ++len) {
    for (const auto& s : layer) out.push_back(Point::text(s));
    if (len == lmax_) break;
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : sorted) next.push_back(s + c);
    layer = std::move(next);
  }
  return out;
}

std::vector<std::string> StringSpace::edit_path(const std::string& a,
                                                const std::string& b) const {
  std::vector<std::string> path{a};
  if (a == b) return path;
  Matching m = best_matching(a, b);

  // Deletions, right to left, of the positions not retained.
  std::string cur = a;
  std::vector<bool> keep(a.size(), false);
  for (int pos : m.keep_a) keep[static_cast<size_t>(pos)] = true;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!keep[static_cast<size_t>(i)]) {
      cur.erase(static_cast<size_t>(i), 1);
      path.push_back(cur);
    }

  // Adjacent swaps: bubble the retained characters into target order. Ranks
  // come from the per-class, order-preserving pairing of kept occurrences.
  std::map<char, std::vector<int>> branks;
  for (size_t r = 0; r < m.keep_b.size(); ++r)
    branks[b[static_cast<size_t>(m.keep_b[r])]].push_back(static_cast<int>(r));
  std::map<char, size_t> used;
  std::vector<int> rank(cur.size());
  for (size_t i = 0; i < cur.size(); ++i) rank[i] = branks[cur[i]][used[cur[i]]++];
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i + 1 < cur.size(); ++i)
      if (rank[i] > rank[i + 1]) {
        std::swap(cur[i], cur[i + 1]);
        std::swap(rank[i], rank[i + 1]);
        path.push_back(cur);
        moved = true;
      }
  }

  // Insertions, left to right, at their positions in b.
  std::vector<bool> bkeep(b.size(), false);
  for (int pos : m.keep_b) bkeep[static_cast<size_t>(pos)] = true;
  for (size_t i = 0; i < b.size(); ++i)
    if (!bkeep[i]) {
      cur.insert(i, 1, b[i]);
      path.push_back(cur);
    }
  return path;
}

std::vector<Point> StringSpace::midpoint_candidates(const Point& p, const Point& q,
                                                    int cap) const {
  if (cap <= 0 || p.str == q.str) return {};
  std::vector<std::string> path = edit_path(p.str, q.str);
  size_t k = path.size() - 1;
  if (k < 2) return {};
  return {Point::text(path[k / 2])};
}

Point StringSpace::sample(Rng& rng) const {
  int len = rng.below_int(lmax_ + 1);
  std::string s;
  for (int i = 0; i < len; ++i)
    s += alphabet_[static_cast<size_t>(rng.below_int(static_cast<int>(alphabet_.size())))];
  return Point::text(s);
}

// ---------------------------------------------------------------------------
// FiniteTable

std::vector<std::string> FiniteTableSpace::check_table(
    const std::vector<std::vector<double>>& t) {
  std::vector<std::string> out;
  size_t n = t.size();
  for (size_t i = 0; i < n; ++i)
    if (t[i].size() != n) {
      out.push_back("row " + std::to_string(i) + " has wrong width");
      return out;
    }
  for (size_t i = 0; i < n; ++i) {
    if (t[i][i] != 0) out.push_back("diagonal entry " + std::to_string(i) + " is nonzero");
    for (size_t j = 0; j < n; ++j) {
      if (!std::isfinite(t[i][j]) || t[i][j] < 0) {
        out.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) +
                      ") is not a nonnegative number");
        return out;
      }
      if (i != j && t[i][j] == 0)
        out.push_back("off-diagonal entry (" + std::to_string(i) + "," +
                      std::to_string(j) + ") is zero");
      if (t[i][j] != t[j][i])
        out.push_back("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k)
        if (t[i][j] > t[i][k] + t[k][j] + 1e-9) {
          out.push_back("triangle inequality fails: d(" + std::to_string(i) + "," +
                        std::to_string(j) + ") > d(.," + std::to_string(k) + ") sum");
          return out;
        }
  return out;
}

FiniteTableSpace::FiniteTableSpace(std::vector<std::string> labels,
                                   std::vector<std::vector<double>> table)
    : Space(SpaceKind::FiniteTable, "table(" + std::to_string(labels.size()) + ")"),
      labels_(std::move(labels)),
      table_(std::move(table)) {
  if (labels_.empty()) throw ConfigError("table: empty point set");
  if (table_.size() != labels_.size())
    throw ConfigError("table: matrix size does not match label count");
  auto issues = check_table(table_);
  if (!issues.empty()) throw ConfigError("table: " + issues.front());
}

double FiniteTableSpace::dist(const Point& a, const Point& b) const {
  return table_[static_cast<size_t>(a.idx)][static_cast<size_t>(b.idx)];
}

std::vector<std::string> FiniteTableSpace::validate(const Point& p) const {
  std::vector<std::string> out;
  if (p.tag != Point::Tag::Index || p.idx < 0 ||
      p.idx >= static_cast<int64_t>(labels_.size()))
    out.push_back("point must name one of the table's rows");
  return out;
}

std::vector<Point> FiniteTableSpace::enumerate_all() const {
  std::vector<Point> out;
  for (size_t i = 0; i < labels_.size(); ++i)
    out.push_back(Point::index(static_cast<int64_t>(i)));
  return out;
}

std::vector<Point> FiniteTableSpace::midpoint_candidates(const Point& p, const Point& q,
                                                         int cap) const {
  if (cap <= 0 || p.idx == q.idx) return {};
  double dpq = dist(p, q);
  struct Cand {
    double sum, bal;
    int64_t idx;
  };
  std::vector<Cand> cand;
  for (int64_t i = 0; i < static_cast<int64_t>(labels_.size()); ++i) {
    if (i == p.idx || i == q.idx) continue;
    Point t = Point::index(i);
    double dp = dist(p, t), dq = dist(t, q);
    if (dp < dpq && dq < dpq) cand.push_back({dp + dq, std::fabs(dp - dq), i});
  }
  if (cand.empty()) return {};
  std::sort(cand.begin(), cand.end(), [](const Cand& a, const Cand& b) {
    return std::tie(a.sum, a.bal, a.idx) < std::tie(b.sum, b.bal, b.idx);
  });
  double min_sum = cand.front().sum;
  std::vector<Point> out;
  for (const Cand& c : cand) {
    if (c.sum > min_sum + 1e-12) break;
    out.push_back(Point::index(c.idx));
    if (static_cast<int>(out.size()) >= cap) break;
  }
  return out;
}

Point FiniteTableSpace::sample(Rng& rng) const {
  return Point::index(rng.below_int(size()));
}

std::string FiniteTableSpace::show(const Point& p) const {
  if (p.tag == Point::Tag::Index && p.idx >= 0 &&
      p.idx < static_cast<int64_t>(labels_.size()))
    return labels_[static_cast<size_t>(p.idx)];
  return Space::show(p);
}

Point FiniteTableSpace::label(const std::string& name) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == name) return Point::index(static_cast<int64_t>(i));
  throw ConfigError("table: unknown label '" + name + "'");
}

}  // namespace metgov
