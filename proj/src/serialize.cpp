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

#include "metgov/serialize.hpp"

#include <algorithm>
#include <fstream>

#include "metgov/errors.hpp"

namespace metgov {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ConfigError(what); }

double num(const Json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + ": expected an integer");
  return j.get<int>();
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> str_list(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : j) out.push_back(str(e, what));
  return out;
}

int index_of(const std::vector<std::string>& names, const std::string& name,
             const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) bad(std::string(what) + ": unknown name '" + name + "'");
  return static_cast<int>(it - names.begin());
}

void require_valid(const Space& space, const Point& p) {
  std::vector<std::string> problems = space.validate(p);
  if (problems.empty()) return;
  std::string msg = space.name() + ": invalid point:";
  for (const std::string& pr : problems) msg += " " + pr + ";";
  bad(msg);
}

}  // namespace

Json space_to_json(const Space& space) {
  Json j;
  switch (space.kind()) {
    case SpaceKind::Plurality: {
      const auto& s = static_cast<const PluralitySpace&>(space);
      j["kind"] = "plurality";
      j["candidates"] = s.candidates();
      break;
    }
    case SpaceKind::Scalar1D: {
      const auto& s = static_cast<const Scalar1DSpace&>(space);
      j["kind"] = "scalar";
      if (std::isfinite(s.lo())) j["lo"] = s.lo();
      if (std::isfinite(s.hi())) j["hi"] = s.hi();
      break;
    }
    case SpaceKind::Simplex: {
      const auto& s = static_cast<const SimplexSpace&>(space);
      j["kind"] = "simplex";
      j["m"] = s.m();
      if (!s.labels().empty()) j["labels"] = s.labels();
      break;
    }
    case SpaceKind::Euclid2D: {
      const auto& s = static_cast<const Euclid2DSpace&>(space);
      j["kind"] = "euclid2d";
      j["box"] = {s.box_lo(), s.box_hi()};
      break;
    }
    case SpaceKind::Permutations: {
      const auto& s = static_cast<const PermutationSpace&>(space);
      j["kind"] = "permutations";
      if (!s.items().empty())
        j["items"] = s.items();
      else
        j["m"] = s.m();
      break;
    }
    case SpaceKind::Subsets: {
      const auto& s = static_cast<const SubsetSpace&>(space);
      j["kind"] = "subsets";
      j["elements"] = s.elements();
      if (s.fixed_k() >= 0) j["fixed_k"] = s.fixed_k();
      break;
    }
    case SpaceKind::Strings: {
      const auto& s = static_cast<const StringSpace&>(space);
      j["kind"] = "strings";
      j["alphabet"] = s.alphabet();
      j["max_len"] = s.lmax();
      break;
    }
    case SpaceKind::FiniteTable: {
      const auto& s = static_cast<const FiniteTableSpace&>(space);
      j["kind"] = "table";
      j["labels"] = s.labels();
      Json rows = Json::array();
      for (int a = 0; a < s.size(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < s.size(); ++b)
          row.push_back(s.dist(Point::index(a), Point::index(b)));
        rows.push_back(std::move(row));
      }
      j["distances"] = std::move(rows);
      break;
    }
  }
  return j;
}

SpacePtr space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) bad("space: expected {\"kind\": ...}");
  std::string kind = str(j.at("kind"), "space.kind");
  if (kind == "plurality") {
    if (!j.contains("candidates")) bad("plurality space: missing 'candidates'");
    return std::make_shared<PluralitySpace>(str_list(j.at("candidates"), "candidates"));
  }
  if (kind == "scalar") {
    double lo = j.contains("lo") ? num(j.at("lo"), "scalar.lo")
                                 : -std::numeric_limits<double>::infinity();
    double hi = j.contains("hi") ? num(j.at("hi"), "scalar.hi")
                                 : std::numeric_limits<double>::infinity();
    return std::make_shared<Scalar1DSpace>(lo, hi);
  }
  if (kind == "simplex") {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = str_list(j.at("labels"), "simplex.labels");
    int m = j.contains("m") ? integer(j.at("m"), "simplex.m")
                            : static_cast<int>(labels.size());
    return std::make_shared<SimplexSpace>(m, std::move(labels));
  }
  if (kind == "euclid2d") {
    double lo = 0.0, hi = 1.0;
    if (j.contains("box")) {
      const Json& b = j.at("box");
      if (!b.is_array() || b.size() != 2) bad("euclid2d.box: expected [lo, hi]");
      lo = num(b[0], "euclid2d.box");
      hi = num(b[1], "euclid2d.box");
    }
    return std::make_shared<Euclid2DSpace>(lo, hi);
  }
  if (kind == "permutations") {
    if (j.contains("items")) {
      std::vector<std::string> items = str_list(j.at("items"), "permutations.items");
      return std::make_shared<PermutationSpace>(static_cast<int>(items.size()),
                                                std::move(items));
    }
    if (!j.contains("m")) bad("permutations space: need 'items' or 'm'");
    return std::make_shared<PermutationSpace>(integer(j.at("m"), "permutations.m"));
  }
  if (kind == "subsets") {
    if (!j.contains("elements")) bad("subsets space: missing 'elements'");
    int fixed_k = j.contains("fixed_k") ? integer(j.at("fixed_k"), "subsets.fixed_k") : -1;
    return std::make_shared<SubsetSpace>(str_list(j.at("elements"), "elements"), fixed_k);
  }
  if (kind == "strings") {
    if (!j.contains("alphabet") || !j.contains("max_len"))
      bad("strings space: need 'alphabet' and 'max_len'");
    return std::make_shared<StringSpace>(str(j.at("alphabet"), "strings.alphabet"),
                                         integer(j.at("max_len"), "strings.max_len"));
  }
  if (kind == "table") {
    if (!j.contains("labels") || !j.contains("distances"))
      bad("table space: need 'labels' and 'distances'");
    std::vector<std::vector<double>> rows;
    for (const Json& r : j.at("distances")) {
      std::vector<double> row;
      for (const Json& e : r) row.push_back(num(e, "table.distances"));
      rows.push_back(std::move(row));
    }
    return std::make_shared<FiniteTableSpace>(str_list(j.at("labels"), "labels"),
                                              std::move(rows));
  }
  bad("space: unknown kind '" + kind + "'");
}

Json point_to_json(const Space& space, const Point& p) {
  switch (space.kind()) {
    case SpaceKind::Plurality: {
      const auto& s = static_cast<const PluralitySpace&>(space);
      if (p.is_vacancy()) return nullptr;
      return s.candidates().at(static_cast<size_t>(p.idx));
    }
    case SpaceKind::Scalar1D:
      return p.x;
    case SpaceKind::Simplex:
    case SpaceKind::Euclid2D:
      return Json(p.vec);
    case SpaceKind::Permutations: {
      const auto& s = static_cast<const PermutationSpace&>(space);
      Json arr = Json::array();
      for (int i : p.perm) {
        if (!s.items().empty())
          arr.push_back(s.items().at(static_cast<size_t>(i)));
        else
          arr.push_back(i);
      }
      return arr;
    }
    case SpaceKind::Subsets: {
      const auto& s = static_cast<const SubsetSpace&>(space);
      Json arr = Json::array();
      for (int i = 0; i < s.ground_size(); ++i)
        if (p.mask & (1ULL << i)) arr.push_back(s.elements()[static_cast<size_t>(i)]);
      return arr;
    }
    case SpaceKind::Strings:
      return p.str;
    case SpaceKind::FiniteTable: {
      const auto& s = static_cast<const FiniteTableSpace&>(space);
      return s.labels().at(static_cast<size_t>(p.idx));
    }
  }
  bad("point_to_json: unhandled space kind");
}

Point point_from_json(const Space& space, const Json& j) {
  Point p;
  switch (space.kind()) {
    case SpaceKind::Plurality: {
      const auto& s = static_cast<const PluralitySpace&>(space);
      if (j.is_null()) return s.vacancy();
      p = s.candidate(str(j, "plurality point"));
      break;
    }
    case SpaceKind::Scalar1D:
      p = Point::scalar(num(j, "scalar point"));
      break;
    case SpaceKind::Simplex:
    case SpaceKind::Euclid2D: {
      if (!j.is_array()) bad("coordinate point: expected an array");
      std::vector<double> v;
      for (const Json& e : j) v.push_back(num(e, "coordinate"));
      p = Point::vector(std::move(v));
      break;
    }
    case SpaceKind::Permutations: {
      const auto& s = static_cast<const PermutationSpace&>(space);
      if (!j.is_array()) bad("permutation point: expected an array");
      std::vector<int> perm;
      for (const Json& e : j) {
        if (e.is_string())
          perm.push_back(index_of(s.items(), e.get<std::string>(), "permutation item"));
        else
          perm.push_back(integer(e, "permutation entry"));
      }
      p = Point::permutation(std::move(perm));
      break;
    }
    case SpaceKind::Subsets: {
      const auto& s = static_cast<const SubsetSpace&>(space);
      if (!j.is_array()) bad("subset point: expected an array of element names");
      uint64_t mask = 0;
      for (const Json& e : j)
        mask |= 1ULL << index_of(s.elements(), str(e, "subset element"), "subset element");
      p = Point::subset(mask);
      break;
    }
    case SpaceKind::Strings:
      p = Point::text(str(j, "string point"));
      break;
    case SpaceKind::FiniteTable: {
      const auto& s = static_cast<const FiniteTableSpace&>(space);
      p = s.label(str(j, "table point"));
      break;
    }
  }
  require_valid(space, p);
  return p;
}

std::string canonical_point_string(const Space& space, const Point& p) {
  return point_to_json(space, p).dump();
}

Aggregator aggregator_from_string(const std::string& s) {
  if (s == "sigma-median" || s == "median") return Aggregator::median();
  if (s == "mean") return Aggregator::mean();
  bad("aggregator: expected 'sigma-median' or 'mean', got '" + s + "'");
}

namespace {

std::shared_ptr<ProposalSource> source_from_json(const Space& space, const Json& j) {
  std::string type = str(j.at("type"), "source.type");
  if (type == "geometric-median") return std::make_shared<GeometricMedianSource>();
  if (type == "centroid") return std::make_shared<CentroidSource>();
  if (type == "heuristic") return std::make_shared<HeuristicSource>();
  if (type == "script") {
    std::vector<ScriptedAction> actions;
    if (j.contains("actions"))
      for (const Json& a : j.at("actions")) {
        ScriptedAction act;
        act.round = integer(a.at("round"), "action.round");
        if (a.contains("member")) act.member = integer(a.at("member"), "action.member");
        if (a.contains("withdraw") && a.at("withdraw").is_boolean())
          act.withdraw = a.at("withdraw").get<bool>();
        if (a.contains("point")) act.point = point_from_json(space, a.at("point"));
        if (!act.withdraw && !act.point) bad("script action: need 'point' or 'withdraw'");
        actions.push_back(std::move(act));
      }
    return std::make_shared<ScriptedSource>(std::move(actions));
  }
  bad("source: unknown type '" + type + "'");
}

}  // namespace

EpochSpec epoch_spec_from_json(const Json& j) {
  if (!j.is_object()) bad("epoch spec: expected an object");
  if (!j.contains("space")) bad("epoch spec: missing 'space'");
  if (!j.contains("status_quo")) bad("epoch spec: missing 'status_quo'");
  if (!j.contains("votes")) bad("epoch spec: missing 'votes'");
  EpochSpec spec;
  spec.space = space_from_json(j.at("space"));
  spec.status_quo = point_from_json(*spec.space, j.at("status_quo"));
  if (!j.at("votes").is_array() || j.at("votes").empty())
    bad("epoch spec: 'votes' must be a non-empty array");
  for (const Json& v : j.at("votes"))
    spec.votes.push_back(point_from_json(*spec.space, v));
  if (j.contains("sigma")) spec.config.sigma = num(j.at("sigma"), "sigma");
  if (j.contains("aggregator"))
    spec.config.agg = aggregator_from_string(str(j.at("aggregator"), "aggregator"));
  if (j.contains("epsilon")) spec.config.epsilon = num(j.at("epsilon"), "epsilon");
  if (j.contains("max_rounds"))
    spec.config.max_rounds = integer(j.at("max_rounds"), "max_rounds");
  if (j.contains("nonce")) {
    if (!j.at("nonce").is_number_unsigned() && !j.at("nonce").is_number_integer())
      bad("nonce: expected a nonnegative integer");
    spec.config.nonce = j.at("nonce").get<uint64_t>();
  }
  if (j.contains("sources"))
    for (const Json& sj : j.at("sources"))
      spec.sources.push_back(source_from_json(*spec.space, sj));
  return spec;
}

Json round_result_to_json(const Space& space, const RoundRecord& rec) {
  Json j;
  j["round"] = rec.round;
  Json scored = Json::array();
  for (const ScoredProposal& sp : rec.result.scored) {
    Json e;
    e["proposal"] = point_to_json(space, sp.proposal);
    e["score"] = sp.score;
    e["support"] = sp.support;
    e["supported"] = sp.supported;
    scored.push_back(std::move(e));
  }
  j["proposals"] = std::move(scored);
  const Point* w = rec.result.winner();
  j["winner"] = w ? point_to_json(space, *w) : Json(nullptr);
  if (w) j["winning_score"] = *rec.result.winning_score();
  return j;
}

Json epoch_result_to_json(const Space& space, const EpochResult& r) {
  Json j;
  j["outcome"] = point_to_json(space, r.outcome);
  j["rounds_used"] = r.rounds_used;
  j["quiescent"] = r.reached_quiescence;
  Json rounds = Json::array();
  for (const RoundRecord& rec : r.rounds) rounds.push_back(round_result_to_json(space, rec));
  j["rounds"] = std::move(rounds);
  Json subs = Json::array();
  for (const SubmissionRecord& sr : r.submissions) {
    Json e;
    e["round"] = sr.round;
    e["member"] = sr.member;
    e["point"] = point_to_json(space, sr.point);
    e["verdict"] = admissibility_name(sr.verdict);
    subs.push_back(std::move(e));
  }
  j["submissions"] = std::move(subs);
  j["trace"] = r.trace;
  return j;
}

Json gap_report_to_json(const Space& space, const GapReport& g) {
  Json j;
  j["opt"] = {{"point", point_to_json(space, g.opt.argmax)},
              {"score", g.opt.score},
              {"method", g.opt.method}};
  j["peak"] = {{"index", g.peak.index}, {"score", g.peak.score}};
  j["gap"] = g.gap;
  j["vacuous"] = g.vacuous;
  j["lipschitz"] = g.lipschitz;
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    bad(path + ": JSON parse error: " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write file: " + path);
  out << text;
  if (!out) bad("write failed: " + path);
}

std::vector<std::string> check_epoch_spec(const Json& j) {
  std::vector<std::string> problems;
  try {
    EpochSpec spec = epoch_spec_from_json(j);
    Epoch probe(spec.space, spec.status_quo, static_cast<int>(spec.votes.size()),
                spec.config);  // validates sigma, status quo, bounds
    (void)probe;
  } catch (const ConfigError& e) {
    problems.push_back(e.what());
  }
  return problems;
}

}  // namespace metgov
