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

#include <memory>

#include "metgov/epoch.hpp"
#include "metgov/errors.hpp"
#include "metgov/space.hpp"
#include "properties.hpp"

using namespace metgov;

namespace {

// The rate committee: round 1 winner 18 at score 2, which is already optimal.
struct RateEpoch {
  SpacePtr space = std::make_shared<Scalar1DSpace>(0, 100);
  Point s = Point::scalar(20);
  std::vector<Point> votes{Point::scalar(10), Point::scalar(15), Point::scalar(18),
                           Point::scalar(22), Point::scalar(25)};

  Epoch open(uint64_t nonce = 7) const {
    EpochConfig cfg;
    cfg.nonce = nonce;
    Epoch e(space, s, 5, cfg);
    for (int i = 0; i < 5; ++i) {
      std::string salt = "salt-" + std::to_string(i);
      e.commit(i, Epoch::commitment_digest(*space, cfg.nonce, i, votes[(size_t)i], salt));
      e.reveal(i, votes[(size_t)i], salt);
    }
    e.close_voting();
    return e;
  }
};

}  // namespace

TEST_CASE("commitments bind the ballot") {
  RateEpoch rig;
  EpochConfig cfg;
  Epoch e(rig.space, rig.s, 5, cfg);

  std::string d0 = Epoch::commitment_digest(*rig.space, cfg.nonce, 0, rig.votes[0], "s0");
  CHECK(d0 == Epoch::commitment_digest(*rig.space, cfg.nonce, 0, rig.votes[0], "s0"));
  CHECK(d0 != Epoch::commitment_digest(*rig.space, cfg.nonce, 1, rig.votes[0], "s0"));
  CHECK(d0 != Epoch::commitment_digest(*rig.space, cfg.nonce, 0, rig.votes[1], "s0"));
  CHECK(d0 != Epoch::commitment_digest(*rig.space, cfg.nonce, 0, rig.votes[0], "s1"));
  CHECK(d0 != Epoch::commitment_digest(*rig.space, 99, 0, rig.votes[0], "s0"));

  e.commit(0, d0);
  CHECK_THROWS_AS(e.commit(0, d0), ProtocolError);              // double commit
  CHECK_THROWS_AS(e.reveal(1, rig.votes[1], "s1"), ProtocolError);  // never committed
  // Tampered reveal: a different vote under the committed digest.
  CHECK_THROWS_AS(e.reveal(0, rig.votes[1], "s0"), ProtocolError);
  // Tampered salt.
  CHECK_THROWS_AS(e.reveal(0, rig.votes[0], "other"), ProtocolError);
  e.reveal(0, rig.votes[0], "s0");
  CHECK_THROWS_AS(e.close_voting(), ProtocolError);  // four members missing
}

TEST_CASE("round one puts the votes on the table") {
  RateEpoch rig;
  Epoch e = rig.open();
  REQUIRE(e.rounds().size() == 1);
  const RoundResult& r1 = e.rounds()[0].result;
  REQUIRE(r1.winner());
  CHECK(r1.winner()->x == doctest::Approx(18.0));
  CHECK(*r1.winning_score() == doctest::Approx(2.0));
}

TEST_CASE("admissibility checks run in their stated order") {
  RateEpoch rig;
  Epoch e = rig.open();

  // Not preferred: member 0 at 10 would move the rate past itself.
  CHECK(e.try_submit(0, Point::scalar(30)) == Admissibility::NotPreferred);
  // Not supported: only members at 10 and 15 gain from 12.
  CHECK(e.try_submit(0, Point::scalar(12)) == Admissibility::NotSupported);
  // Too close: 18.05 is supported but sits 0.05 < epsilon from the vote 18.
  CHECK(e.epsilon() == doctest::Approx(0.1));
  CHECK(e.try_submit(0, Point::scalar(18.05)) == Admissibility::TooClose);
  // No improvement: 17.9 is supported and clears the radius, but scores 1.9 < 2.
  CHECK(e.try_submit(0, Point::scalar(17.9)) == Admissibility::NoImprovement);
  // Rejected submissions leave the slot free; an admitted one occupies it.
  CHECK(e.active_slots()[0] == std::nullopt);
  CHECK(e.submissions().size() == 4);
}

TEST_CASE("slot bookkeeping: one active proposal per member") {
  Euclid2DSpace raw;
  SpacePtr space = std::make_shared<Euclid2DSpace>();
  Point s = Point::vector({0, 0});
  std::vector<Point> votes{Point::vector({1, 0}), Point::vector({0, 1}),
                           Point::vector({1, 1})};
  EpochConfig cfg;
  Epoch e(space, s, 3, cfg);
  for (int i = 0; i < 3; ++i) {
    std::string salt = "p" + std::to_string(i);
    e.commit(i, Epoch::commitment_digest(*space, cfg.nonce, i, votes[(size_t)i], salt));
    e.reveal(i, votes[(size_t)i], salt);
  }
  e.close_voting();

  // The pairwise midpoint (0.5, 1) beats the round-1 winner 0.5 to 0.4142.
  CHECK(e.try_submit(1, Point::vector({0.5, 1})) == Admissibility::Ok);
  CHECK(e.try_submit(1, Point::vector({0.9, 0.9})) == Admissibility::SlotTaken);
  CHECK(e.withdraw(1));
  CHECK_FALSE(e.withdraw(1));  // nothing left to withdraw
  // After withdrawal the slot frees up, but the history still guards novelty.
  CHECK(e.try_submit(1, Point::vector({0.5, 1})) == Admissibility::TooClose);

  const RoundRecord& r2 = e.close_round();
  // The withdrawn proposal is gone; the votes alone remain.
  CHECK(r2.proposals.size() == 3);
}

TEST_CASE("quiescence: the same winner twice settles the epoch") {
  RateEpoch rig;
  EpochConfig cfg;
  cfg.nonce = 11;
  EpochResult res = run_epoch(rig.space, rig.s, rig.votes, {}, cfg);
  CHECK(res.reached_quiescence);
  CHECK(res.rounds_used == 2);
  CHECK(res.outcome.x == doctest::Approx(18.0));
  REQUIRE(res.rounds.size() == 2);
  CHECK(res.rounds[0].result.winner()->x == doctest::Approx(18.0));
  CHECK(res.rounds[1].result.winner()->x == doctest::Approx(18.0));
}

TEST_CASE("quiescence: two unsupported rounds retain the status quo") {
  SpacePtr space = std::make_shared<PluralitySpace>(
      std::vector<std::string>{"ada", "bo", "cy"});
  Point s = Point::index(-1);  // vacant seat
  std::vector<Point> votes{Point::index(0), Point::index(0), Point::index(1),
                           Point::index(1), Point::index(2)};
  EpochResult res = run_epoch(space, s, votes, {}, EpochConfig{});
  CHECK(res.reached_quiescence);
  CHECK(res.rounds_used == 2);
  CHECK(res.outcome.is_vacancy());
  CHECK_FALSE(res.rounds[0].result.any_supported);
}

TEST_CASE("quiescence: winnerless stalemate on an unchanged table settles") {
  // Supported proposals whose scores sit under the real-kind epsilon: no
  // winner, but support exists, so only the unchanged-set clause can fire.
  SpacePtr space = std::make_shared<Scalar1DSpace>(0, 1);
  Point s = Point::scalar(0.5);
  std::vector<Point> votes{Point::scalar(0.5 + 5e-13), Point::scalar(0.5 - 5e-13)};
  EpochResult res = run_epoch(space, s, votes, {}, EpochConfig{});
  CHECK(res.reached_quiescence);
  CHECK(res.rounds_used == 2);
  CHECK(res.outcome.x == doctest::Approx(0.5));
  CHECK(res.rounds[0].result.any_supported);           // support without a winner
  CHECK_FALSE(res.rounds[0].result.winner());
}

TEST_CASE("an epoch that cannot settle hits the round limit") {
  RateEpoch rig;
  EpochConfig cfg;
  cfg.max_rounds = 1;  // quiescence needs two closed rounds
  CHECK_THROWS_AS(run_epoch(rig.space, rig.s, rig.votes, {}, cfg), ProtocolError);
}

TEST_CASE("budget epoch: the centroid is admitted in round 2 and wins") {
  SpacePtr space = std::make_shared<SimplexSpace>(
      3, std::vector<std::string>{"marketing", "infrastructure", "buffer"});
  Point s = Point::vector({1.0 / 3, 1.0 / 3, 1.0 / 3});
  std::vector<Point> votes{
      Point::vector({0.5, 0.3, 0.2}), Point::vector({0.5, 0.2, 0.3}),
      Point::vector({0.3, 0.5, 0.2}), Point::vector({0.2, 0.4, 0.4}),
      Point::vector({0.2, 0.6, 0.2})};
  EpochResult res = run_epoch(space, s, votes,
                              {std::make_shared<CentroidSource>()}, EpochConfig{});
  CHECK(res.reached_quiescence);
  CHECK(res.rounds_used == 3);
  REQUIRE(res.outcome.tag == Point::Tag::Vector);
  CHECK(res.outcome.vec[0] == doctest::Approx(0.34).epsilon(1e-6));
  CHECK(res.outcome.vec[1] == doctest::Approx(0.40).epsilon(1e-6));
  CHECK(res.outcome.vec[2] == doctest::Approx(0.26).epsilon(1e-6));
  CHECK(*res.rounds.back().result.winning_score() ==
        doctest::Approx(0.0180347912).epsilon(1e-6));
  // Exactly one admitted submission: the centroid itself.
  int admitted = 0;
  for (const SubmissionRecord& sub : res.submissions)
    if (sub.verdict == Admissibility::Ok) ++admitted;
  CHECK(admitted == 1);
}

TEST_CASE("scripted sources replay an exact transcript") {
  RateEpoch rig;
  std::vector<ScriptedAction> acts;
  acts.push_back({2, 0, Point::scalar(12), false});    // NotSupported
  acts.push_back({2, 1, Point::scalar(17.9), false});  // NoImprovement
  EpochConfig cfg;
  EpochResult res = run_epoch(rig.space, rig.s, rig.votes,
                              {std::make_shared<ScriptedSource>(acts)}, cfg);
  REQUIRE(res.submissions.size() == 2);
  CHECK(res.submissions[0].verdict == Admissibility::NotSupported);
  CHECK(res.submissions[1].verdict == Admissibility::NoImprovement);
  CHECK(res.outcome.x == doctest::Approx(18.0));
}

TEST_CASE("identical seeds give byte-identical traces") {
  SpacePtr space = std::make_shared<Euclid2DSpace>();
  Point s = Point::vector({0.5, 0.5});
  Rng rng(424242);
  std::vector<Point> votes;
  for (int i = 0; i < 5; ++i) votes.push_back(space->sample(rng));
  EpochConfig cfg;
  cfg.nonce = 99;
  auto sources = [] {
    return std::vector<std::shared_ptr<ProposalSource>>{
        std::make_shared<HeuristicSource>(), std::make_shared<CentroidSource>()};
  };
  EpochResult a = run_epoch(space, s, votes, sources(), cfg);
  EpochResult b = run_epoch(space, s, votes, sources(), cfg);
  CHECK(a.trace == b.trace);
  CHECK(a.outcome == b.outcome);
  CHECK(a.rounds_used == b.rounds_used);
}

TEST_CASE("random small epochs all terminate cleanly") {
  props::PropReport r = props::epoch_termination(2033, 120);
  for (const auto& n : r.notes) INFO(n);
  CHECK(r.pass());
}

TEST_CASE("constructor and lifecycle guards") {
  RateEpoch rig;
  EpochConfig cfg;
  CHECK_THROWS_AS(Epoch(nullptr, rig.s, 3, cfg), ConfigError);
  CHECK_THROWS_AS(Epoch(rig.space, rig.s, 0, cfg), ConfigError);
  CHECK_THROWS_AS(Epoch(rig.space, Point::scalar(500), 3, cfg), ConfigError);

  Epoch fresh(rig.space, rig.s, 5, cfg);
  CHECK_THROWS_AS(fresh.try_submit(0, Point::scalar(15)), ProtocolError);  // voting open
  CHECK_THROWS_AS(fresh.close_round(), ProtocolError);

  Epoch open = rig.open();
  CHECK_THROWS_AS(open.commit(0, "zz"), ProtocolError);  // voting closed
  CHECK_THROWS_AS(open.try_submit(9, Point::scalar(15)), ProtocolError);
  CHECK_THROWS_AS(open.try_submit(0, Point::scalar(200)), ConfigError);  // off the scale
  CHECK_THROWS_AS(run_epoch(rig.space, rig.s, {}, {}, cfg), ConfigError);
}
