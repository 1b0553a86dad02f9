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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "metgov/amendments.hpp"
#include "metgov/errors.hpp"

using namespace metgov;

TEST_CASE("h-rule: voted values cannot raise past their own quota") {
  // Thresholds (1/2, 1/2, 2/3, 2/3, 3/4): raising to 2/3 needs ceil(2/3*5)=4
  // members at 2/3 or above, but only 3 are. Voted values stay put.
  std::vector<double> votes{0.5, 0.5, 2.0 / 3, 2.0 / 3, 0.75};
  HRuleResult r = h_rule(0.5, votes, HRuleMode::VotedValues);
  CHECK(r.sigma_after == doctest::Approx(0.5));
  CHECK(r.direction == HRuleResult::Direction::Unchanged);
}

TEST_CASE("h-rule: the dense grid finds the 3/5 compromise") {
  // On the 0.05 grid, 0.6 needs ceil(0.6*5)=3 members at or above -- exactly
  // the three at 2/3, 2/3, 3/4.
  std::vector<double> votes{0.5, 0.5, 2.0 / 3, 2.0 / 3, 0.75};
  HRuleResult r = h_rule(0.5, votes, HRuleMode::DenseGrid);
  CHECK(r.sigma_after == doctest::Approx(0.6));
  CHECK(r.direction == HRuleResult::Direction::Raised);
}

TEST_CASE("h-rule: lowering needs only the current quota") {
  // From 2/3 with five members, the current quota is 4; four sit at 1/2.
  std::vector<double> votes{0.5, 0.5, 0.5, 0.5, 0.75};
  HRuleResult voted = h_rule(2.0 / 3, votes, HRuleMode::VotedValues);
  CHECK(voted.sigma_after == doctest::Approx(0.5));
  CHECK(voted.direction == HRuleResult::Direction::Lowered);
  HRuleResult grid = h_rule(2.0 / 3, votes, HRuleMode::DenseGrid);
  CHECK(grid.sigma_after == doctest::Approx(0.5));
  CHECK(grid.direction == HRuleResult::Direction::Lowered);
}

TEST_CASE("h-rule: raising prefers the highest clearing candidate") {
  // Both 0.6 and 0.75 clear their own quotas; the rule takes 0.75.
  std::vector<double> votes{0.75, 0.75, 0.75, 0.75, 0.5};
  HRuleResult r = h_rule(0.5, votes, HRuleMode::VotedValues);
  CHECK(r.sigma_after == doctest::Approx(0.75));
  CHECK(r.direction == HRuleResult::Direction::Raised);
}

TEST_CASE("h-rule: a unanimous status quo stays put") {
  std::vector<double> votes{0.5, 0.5, 0.5};
  for (HRuleMode mode : {HRuleMode::VotedValues, HRuleMode::DenseGrid}) {
    HRuleResult r = h_rule(0.5, votes, mode);
    CHECK(r.sigma_after == doctest::Approx(0.5));
    CHECK(r.direction == HRuleResult::Direction::Unchanged);
  }
}

TEST_CASE("h-rule rejects parameters off the constitutional scale") {
  CHECK_THROWS_AS(h_rule(0.4, {0.5, 0.6}, HRuleMode::VotedValues), ConfigError);
  CHECK_THROWS_AS(h_rule(0.5, {0.5, 1.0}, HRuleMode::VotedValues), ConfigError);
  CHECK_THROWS_AS(h_rule(0.5, {0.5, 0.3}, HRuleMode::VotedValues), ConfigError);
  CHECK_THROWS_AS(h_rule(0.5, {}, HRuleMode::VotedValues), ConfigError);
  CHECK_THROWS_AS(h_rule(0.5, {0.5, 0.6}, HRuleMode::DenseGrid, 0.0), ConfigError);
}

TEST_CASE("membership: admission takes consent plus the quota") {
  CHECK(membership_referendum(false, true, {true, true, true, false, false}, 0.5) ==
        MembershipOutcome::Admitted);
  // Same tallies, no consent: nobody is conscripted.
  CHECK(membership_referendum(false, false, {true, true, true, false, false}, 0.5) ==
        MembershipOutcome::Rejected);
  // Quota short by one.
  CHECK(membership_referendum(false, true, {true, true, false, false, false}, 0.5) ==
        MembershipOutcome::Rejected);
}

TEST_CASE("membership: retention asks no fresh consent") {
  CHECK(membership_referendum(true, false, {true, true, true, true, false},
                              2.0 / 3) == MembershipOutcome::Retained);
  CHECK(membership_referendum(true, false, {true, true, false, false, false},
                              2.0 / 3) == MembershipOutcome::Rejected);
  CHECK_THROWS_AS(membership_referendum(true, true, {}, 0.5), ConfigError);
}

TEST_CASE("constitution amendments are versioned and logged") {
  Constitution c;
  AmendmentLog log;
  CHECK(c.version == 1);

  amend_sigma(c, log, 0.6);
  CHECK(c.sigma == doctest::Approx(0.6));
  CHECK(c.version == 2);
  REQUIRE(log.entries.size() == 1);
  CHECK(log.entries[0].kind == "sigma");
  CHECK(log.entries[0].version == 2);

  amend_aggregator(c, log, Aggregator::mean());
  CHECK(c.agg.kind == AggregatorKind::Mean);
  amend_epsilon(c, log, 0.25);
  CHECK(c.epsilon == doctest::Approx(0.25));
  amend_policy(c, log, "meeting-day", "thursday");
  CHECK(c.policies.at("meeting-day") == "thursday");
  CHECK(c.version == 5);
  CHECK(log.entries.size() == 4);

  // Procedural keys are fenced off from the policy channel.
  CHECK(is_procedural_key("sigma"));
  CHECK(is_procedural_key("aggregator"));
  CHECK(is_procedural_key("epsilon"));
  CHECK_FALSE(is_procedural_key("meeting-day"));
  CHECK_THROWS_AS(amend_policy(c, log, "sigma", "0.9"), ConfigError);
  CHECK_THROWS_AS(amend_sigma(c, log, 0.3), ConfigError);
}

TEST_CASE("the h-rule plugs into the constitution") {
  Constitution c;
  AmendmentLog log;
  std::vector<double> votes{0.5, 0.5, 2.0 / 3, 2.0 / 3, 0.75};
  HRuleResult r = apply_h_rule(c, log, votes, HRuleMode::DenseGrid);
  CHECK(r.direction == HRuleResult::Direction::Raised);
  CHECK(c.sigma == doctest::Approx(0.6));
  CHECK(c.version == 2);
  REQUIRE(log.entries.size() == 1);
  CHECK(log.entries[0].kind == "h-rule");

  // An unchanged outcome leaves the version alone.
  HRuleResult again = apply_h_rule(c, log, {0.6, 0.6, 0.6}, HRuleMode::VotedValues);
  CHECK(again.direction == HRuleResult::Direction::Unchanged);
  CHECK(c.version == 2);
  CHECK(log.entries.size() == 1);
}
