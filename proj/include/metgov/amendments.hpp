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

#include <map>
#include <string>
#include <vector>

#include "metgov/rule.hpp"

namespace metgov {

// Threshold self-amendment. Raising needs the new, stricter quota met at the
// proposed value itself; lowering only needs the current quota of members at
// or below the proposed value. Candidates come either from the voted values
// or from a dense grid of step multiples in [1/2, 1).
enum class HRuleMode { VotedValues, DenseGrid };

struct HRuleResult {
  double sigma_before = 0;
  double sigma_after = 0;
  enum class Direction { Raised, Lowered, Unchanged } direction = Direction::Unchanged;
};

HRuleResult h_rule(double sigma, const std::vector<double>& votes, HRuleMode mode,
                   double step = 0.05);

// Per-candidate binary referendum on the member roster. Admission needs the
// candidate's consent plus a sigma-quota of "in" votes; retention of a
// sitting member needs only the quota.
enum class MembershipOutcome { Admitted, Retained, Rejected };
const char* membership_outcome_name(MembershipOutcome m);

MembershipOutcome membership_referendum(bool already_member, bool consent,
                                        const std::vector<bool>& in_votes,
                                        double sigma);

// A versioned bundle of procedural parameters and substantive policies.
// Procedural entries (sigma, aggregator, epsilon) govern how future rounds
// are scored; policies are opaque key/value text decided by those rounds.
struct Constitution {
  double sigma = 0.5;
  Aggregator agg = Aggregator::median();
  double epsilon = -1.0;
  std::map<std::string, std::string> policies;
  int version = 1;
};

struct Amendment {
  int version = 0;      // version the amendment produced
  std::string kind;     // "sigma" | "aggregator" | "epsilon" | "policy" | "h-rule"
  std::string detail;
};

struct AmendmentLog {
  std::vector<Amendment> entries;
};

bool is_procedural_key(const std::string& key);

void amend_sigma(Constitution& c, AmendmentLog& log, double new_sigma);
void amend_aggregator(Constitution& c, AmendmentLog& log, const Aggregator& agg);
void amend_epsilon(Constitution& c, AmendmentLog& log, double new_epsilon);
void amend_policy(Constitution& c, AmendmentLog& log, const std::string& key,
                  const std::string& value);

// Runs the h-rule against the constitution's current sigma and records the
// outcome (when it moves) in the log.
HRuleResult apply_h_rule(Constitution& c, AmendmentLog& log,
                         const std::vector<double>& votes, HRuleMode mode,
                         double step = 0.05);

}  // namespace metgov
