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

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metgov/gap.hpp"
#include "metgov/rule.hpp"

namespace metgov {

struct EpochConfig {
  double sigma = 0.5;
  Aggregator agg = Aggregator::median();
  double epsilon = -1.0;  // negative: use the space's default novelty radius
  int max_rounds = -1;    // negative: 10n + 10
  uint64_t nonce = 0;     // salts ballots; fixed nonce => reproducible traces
};

// Why a submission was turned away, in the order the checks run.
enum class Admissibility {
  Ok,
  SlotTaken,      // member already has an active proposal
  NotPreferred,   // proposer does not strictly prefer it to the status quo
  NotSupported,   // fewer than ceil(sigma*n) members strictly prefer it
  TooClose,       // within epsilon of a vote or of any earlier submission
  NoImprovement,  // score does not strictly beat last round's winning score
};
const char* admissibility_name(Admissibility a);

struct SubmissionRecord {
  int round = 0;
  int member = -1;
  Point point;
  Admissibility verdict = Admissibility::Ok;
};

struct RoundRecord {
  int round = 0;
  std::vector<Point> proposals;  // votes first, then active submissions
  RoundResult result;
};

// One governance epoch: sealed voting (commit/reveal), then numbered rounds.
// Round 1 scores the revealed votes themselves; later rounds add members'
// public proposals, one active slot per member. The epoch is quiescent once
// consecutive rounds repeat a winner, go unsupported twice, or stall
// winnerless on an unchanged proposal set; the outcome is then the repeated
// winner, or the status quo if rounds stalled without one.
class Epoch {
 public:
  Epoch(SpacePtr space, Point status_quo, int n_members, EpochConfig cfg);

  static std::string commitment_digest(const Space& space, uint64_t nonce, int member,
                                       const Point& vote, const std::string& salt);

  void commit(int member, const std::string& digest);
  void reveal(int member, const Point& vote, const std::string& salt);
  const RoundRecord& close_voting();  // all reveals in; evaluates round 1

  Admissibility try_submit(int member, const Point& proposal);
  bool withdraw(int member);
  const RoundRecord& close_round();

  bool quiescent() const;
  Point outcome() const;

  bool voting_closed() const { return !rounds_.empty(); }
  int round() const { return static_cast<int>(rounds_.size()) + 1; }  // open round
  const std::vector<RoundRecord>& rounds() const { return rounds_; }
  const std::vector<Point>& votes() const { return votes_; }
  const std::vector<Point>& submission_history() const { return history_; }
  const std::vector<SubmissionRecord>& submissions() const { return log_; }
  const std::vector<std::optional<Point>>& active_slots() const { return active_; }
  std::vector<Point> current_proposals() const;
  const Point& status_quo() const { return s_; }
  const Space& space() const { return *space_; }
  SpacePtr space_ptr() const { return space_; }
  const EpochConfig& config() const { return cfg_; }
  double epsilon() const { return epsilon_; }
  int max_rounds() const { return max_rounds_; }
  int members() const { return n_; }
  std::optional<double> prev_winning_score() const;

 private:
  SpacePtr space_;
  Point s_;
  int n_;
  EpochConfig cfg_;
  double epsilon_;
  int max_rounds_;

  std::vector<std::optional<std::string>> commits_;
  std::vector<std::optional<Point>> revealed_;
  std::vector<Point> votes_;  // filled by close_voting, member order

  std::vector<std::optional<Point>> active_;
  std::vector<Point> history_;  // every admitted submission, ever
  std::vector<SubmissionRecord> log_;
  std::vector<RoundRecord> rounds_;
};

// A proposal-generation strategy consulted once per open round. Offers
// without an explicit member are attributed to the first member who has a
// free slot and strictly prefers the point.
struct Offer {
  std::optional<int> member;
  std::optional<Point> point;
  bool withdraw = false;
};

class ProposalSource {
 public:
  virtual ~ProposalSource() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Offer> offers(const Epoch& epoch) = 0;
};

class GeometricMedianSource : public ProposalSource {
 public:
  std::string name() const override { return "geometric-median"; }
  std::vector<Offer> offers(const Epoch& epoch) override;
};

class CentroidSource : public ProposalSource {
 public:
  std::string name() const override { return "centroid"; }
  std::vector<Offer> offers(const Epoch& epoch) override;
};

// Wraps Heuristic P: pairwise in-between candidates, gated on strictly
// beating every score already on the table.
class HeuristicSource : public ProposalSource {
 public:
  std::string name() const override { return "heuristic"; }
  std::vector<Offer> offers(const Epoch& epoch) override;
};

struct ScriptedAction {
  int round = 0;
  int member = -1;  // negative: attribute automatically
  std::optional<Point> point;
  bool withdraw = false;
};

class ScriptedSource : public ProposalSource {
 public:
  explicit ScriptedSource(std::vector<ScriptedAction> actions)
      : actions_(std::move(actions)) {}
  std::string name() const override { return "script"; }
  std::vector<Offer> offers(const Epoch& epoch) override;

 private:
  std::vector<ScriptedAction> actions_;
};

struct EpochResult {
  std::vector<RoundRecord> rounds;
  std::vector<SubmissionRecord> submissions;
  Point outcome;
  int rounds_used = 0;
  bool reached_quiescence = false;
  std::vector<std::string> trace;
};

// Drives a full epoch: derives ballot salts from the nonce, runs the sealed
// exchange, then consults the sources each round until quiescence. Throws
// ProtocolError if the round limit is hit first.
EpochResult run_epoch(SpacePtr space, const Point& s, const std::vector<Point>& votes,
                      const std::vector<std::shared_ptr<ProposalSource>>& sources,
                      const EpochConfig& cfg);

}  // namespace metgov
