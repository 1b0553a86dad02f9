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

#include "metgov/amendments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "metgov/errors.hpp"

namespace metgov {

namespace {

constexpr double kTol = 1e-12;

std::vector<double> candidate_thresholds(double /*sigma*/,
                                         const std::vector<double>& votes,
                                         HRuleMode mode, double step) {
  std::set<double> cands;
  if (mode == HRuleMode::VotedValues) {
    for (double v : votes)
      if (v >= 0.5 - kTol && v < 1.0 - kTol) cands.insert(v);
  } else {
    if (!(step > 0)) throw ConfigError("h_rule: step must be positive");
    for (int i = 0;; ++i) {
      double v = 0.5 + step * static_cast<double>(i);
      if (v >= 1.0 - kTol) break;
      cands.insert(v);
    }
  }
  return {cands.begin(), cands.end()};
}

int count_at_least(const std::vector<double>& votes, double t) {
  int c = 0;
  for (double v : votes)
    if (v >= t - kTol) ++c;
  return c;
}

int count_at_most(const std::vector<double>& votes, double t) {
  int c = 0;
  for (double v : votes)
    if (v <= t + kTol) ++c;
  return c;
}

}  // namespace

HRuleResult h_rule(double sigma, const std::vector<double>& votes, HRuleMode mode,
                   double step) {
  if (votes.empty()) throw ConfigError("h_rule: no votes");
  if (!(sigma >= 0.5) || !(sigma < 1.0))
    throw ConfigError("h_rule: sigma must lie in [1/2, 1)");
  for (double v : votes)
    if (!(v >= 0.5 - kTol) || !(v < 1.0 - kTol))
      throw ConfigError("h_rule: threshold votes must lie in [1/2, 1)");

  int n = static_cast<int>(votes.size());
  HRuleResult res;
  res.sigma_before = sigma;
  res.sigma_after = sigma;

  std::vector<double> cands = candidate_thresholds(sigma, votes, mode, step);

  // Raise: the highest candidate that clears its own (stricter) quota.
  for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
    double t = *it;
    if (!(t > sigma + kTol)) continue;
    if (count_at_least(votes, t) >= support_threshold(t, n)) {
      res.sigma_after = t;
      res.direction = HRuleResult::Direction::Raised;
      return res;
    }
  }
  // Lower: the lowest candidate that a current-quota bloc would accept.
  int k_now = support_threshold(sigma, n);
  for (double t : cands) {
    if (!(t < sigma - kTol)) continue;
    if (count_at_most(votes, t) >= k_now) {
      res.sigma_after = t;
      res.direction = HRuleResult::Direction::Lowered;
      return res;
    }
  }
  return res;
}

const char* membership_outcome_name(MembershipOutcome m) {
  switch (m) {
    case MembershipOutcome::Admitted: return "admitted";
    case MembershipOutcome::Retained: return "retained";
    case MembershipOutcome::Rejected: return "rejected";
  }
  return "?";
}

MembershipOutcome membership_referendum(bool already_member, bool consent,
                                        const std::vector<bool>& in_votes,
                                        double sigma) {
  if (in_votes.empty()) throw ConfigError("membership_referendum: no votes");
  int n = static_cast<int>(in_votes.size());
  int yes = static_cast<int>(std::count(in_votes.begin(), in_votes.end(), true));
  // Consent gates joining only; retention of a sitting member needs no re-consent.
  bool pass = (already_member || consent) && yes >= support_threshold(sigma, n);
  if (!pass) return MembershipOutcome::Rejected;
  return already_member ? MembershipOutcome::Retained : MembershipOutcome::Admitted;
}

bool is_procedural_key(const std::string& key) {
  return key == "sigma" || key == "aggregator" || key == "epsilon";
}

namespace {
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace

void amend_sigma(Constitution& c, AmendmentLog& log, double new_sigma) {
  if (!(new_sigma >= 0.5) || !(new_sigma < 1.0))
    throw ConfigError("amend_sigma: sigma must lie in [1/2, 1)");
  c.sigma = new_sigma;
  c.version += 1;
  log.entries.push_back({c.version, "sigma", fmt(new_sigma)});
}

void amend_aggregator(Constitution& c, AmendmentLog& log, const Aggregator& agg) {
  c.agg = agg;
  c.version += 1;
  log.entries.push_back({c.version, "aggregator", aggregator_name(agg.kind)});
}

void amend_epsilon(Constitution& c, AmendmentLog& log, double new_epsilon) {
  if (!(new_epsilon >= 0)) throw ConfigError("amend_epsilon: epsilon must be nonnegative");
  c.epsilon = new_epsilon;
  c.version += 1;
  log.entries.push_back({c.version, "epsilon", fmt(new_epsilon)});
}

void amend_policy(Constitution& c, AmendmentLog& log, const std::string& key,
                  const std::string& value) {
  if (is_procedural_key(key))
    throw ConfigError("amend_policy: '" + key + "' is procedural; use the typed amender");
  c.policies[key] = value;
  c.version += 1;
  log.entries.push_back({c.version, "policy", key + "=" + value});
}

HRuleResult apply_h_rule(Constitution& c, AmendmentLog& log,
                         const std::vector<double>& votes, HRuleMode mode,
                         double step) {
  HRuleResult res = h_rule(c.sigma, votes, mode, step);
  if (res.direction != HRuleResult::Direction::Unchanged) {
    c.sigma = res.sigma_after;
    c.version += 1;
    log.entries.push_back({c.version, "h-rule",
                           fmt(res.sigma_before) + " -> " + fmt(res.sigma_after)});
  }
  return res;
}

}  // namespace metgov
