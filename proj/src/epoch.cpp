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

#include "metgov/epoch.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

#include "metgov/errors.hpp"
#include "metgov/serialize.hpp"

namespace metgov {

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw ProtocolError("sha256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xf]);
  }
  return out;
}

std::vector<Point> sorted_points(std::vector<Point> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

const char* admissibility_name(Admissibility a) {
  switch (a) {
    case Admissibility::Ok: return "ok";
    case Admissibility::SlotTaken: return "slot-taken";
    case Admissibility::NotPreferred: return "not-preferred";
    case Admissibility::NotSupported: return "not-supported";
    case Admissibility::TooClose: return "too-close";
    case Admissibility::NoImprovement: return "no-improvement";
  }
  return "?";
}

Epoch::Epoch(SpacePtr space, Point status_quo, int n_members, EpochConfig cfg)
    : space_(std::move(space)),
      s_(std::move(status_quo)),
      n_(n_members),
      cfg_(cfg) {
  if (!space_) throw ConfigError("epoch: null space");
  if (n_ <= 0) throw ConfigError("epoch: need at least one member");
  if (!space_->contains(s_)) {
    std::string why;
    for (const std::string& v : space_->validate(s_)) why += " " + v;
    throw ConfigError("epoch: status quo outside the space:" + why);
  }
  support_threshold(cfg_.sigma, n_);  // validates sigma up front
  epsilon_ = cfg_.epsilon >= 0 ? cfg_.epsilon : space_->default_epsilon();
  max_rounds_ = cfg_.max_rounds >= 0 ? cfg_.max_rounds : 10 * n_ + 10;
  commits_.resize(static_cast<size_t>(n_));
  revealed_.resize(static_cast<size_t>(n_));
  active_.resize(static_cast<size_t>(n_));
}

std::string Epoch::commitment_digest(const Space& space, uint64_t nonce, int member,
                                     const Point& vote, const std::string& salt) {
  std::string payload = "metgov1|" + std::to_string(nonce) + "|" +
                        std::to_string(member) + "|" +
                        canonical_point_string(space, vote) + "|" + salt;
  return sha256_hex(payload);
}

void Epoch::commit(int member, const std::string& digest) {
  if (voting_closed()) throw ProtocolError("commit after voting closed");
  if (member < 0 || member >= n_) throw ProtocolError("commit: bad member index");
  if (commits_[static_cast<size_t>(member)])
    throw ProtocolError("commit: member " + std::to_string(member) + " already committed");
  commits_[static_cast<size_t>(member)] = digest;
}

void Epoch::reveal(int member, const Point& vote, const std::string& salt) {
  if (voting_closed()) throw ProtocolError("reveal after voting closed");
  if (member < 0 || member >= n_) throw ProtocolError("reveal: bad member index");
  const auto& c = commits_[static_cast<size_t>(member)];
  if (!c) throw ProtocolError("reveal: member " + std::to_string(member) + " never committed");
  if (revealed_[static_cast<size_t>(member)])
    throw ProtocolError("reveal: member " + std::to_string(member) + " already revealed");
  if (!space_->contains(vote))
    throw ConfigError("reveal: vote outside the space");
  if (commitment_digest(*space_, cfg_.nonce, member, vote, salt) != *c)
    throw ProtocolError("reveal: digest mismatch for member " + std::to_string(member));
  revealed_[static_cast<size_t>(member)] = vote;
}

const RoundRecord& Epoch::close_voting() {
  if (voting_closed()) throw ProtocolError("voting already closed");
  votes_.clear();
  votes_.reserve(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    if (!revealed_[static_cast<size_t>(i)])
      throw ProtocolError("close_voting: member " + std::to_string(i) + " has not revealed");
    votes_.push_back(*revealed_[static_cast<size_t>(i)]);
  }
  RoundRecord rec;
  rec.round = 1;
  rec.proposals = votes_;
  rec.result = evaluate_round(*space_, s_, votes_, rec.proposals, cfg_.agg, cfg_.sigma);
  rounds_.push_back(std::move(rec));
  return rounds_.back();
}

std::vector<Point> Epoch::current_proposals() const {
  std::vector<Point> out = votes_;
  for (const auto& a : active_)
    if (a) out.push_back(*a);
  return out;
}

std::optional<double> Epoch::prev_winning_score() const {
  if (rounds_.empty()) return std::nullopt;
  return rounds_.back().result.winning_score();
}

Admissibility Epoch::try_submit(int member, const Point& proposal) {
  if (!voting_closed()) throw ProtocolError("submit before voting closed");
  if (quiescent()) throw ProtocolError("submit after quiescence");
  if (member < 0 || member >= n_) throw ProtocolError("submit: bad member index");
  if (!space_->contains(proposal)) throw ConfigError("submit: point outside the space");

  Admissibility verdict = Admissibility::Ok;
  if (active_[static_cast<size_t>(member)]) {
    verdict = Admissibility::SlotTaken;
  } else {
    std::vector<double> u = utility_vector(*space_, s_, votes_, proposal);
    if (!(u[static_cast<size_t>(member)] > 0)) {
      verdict = Admissibility::NotPreferred;
    } else if (static_cast<int>(support_set(u).size()) <
               support_threshold(cfg_.sigma, n_)) {
      verdict = Admissibility::NotSupported;
    } else {
      bool close = false;
      for (const Point& v : votes_)
        if (space_->dist(proposal, v) < epsilon_) {
          close = true;
          break;
        }
      if (!close)
        for (const Point& h : history_)
          if (space_->dist(proposal, h) < epsilon_) {
            close = true;
            break;
          }
      if (close) {
        verdict = Admissibility::TooClose;
      } else {
        double baseline = std::max(prev_winning_score().value_or(0.0), 0.0);
        double sc = aggregate(cfg_.agg, cfg_.sigma, u);
        if (!(sc > baseline)) verdict = Admissibility::NoImprovement;
      }
    }
  }

  log_.push_back({round(), member, proposal, verdict});
  if (verdict == Admissibility::Ok) {
    active_[static_cast<size_t>(member)] = proposal;
    history_.push_back(proposal);
  }
  return verdict;
}

bool Epoch::withdraw(int member) {
  if (!voting_closed()) throw ProtocolError("withdraw before voting closed");
  if (member < 0 || member >= n_) throw ProtocolError("withdraw: bad member index");
  if (!active_[static_cast<size_t>(member)]) return false;
  active_[static_cast<size_t>(member)].reset();
  return true;
}

const RoundRecord& Epoch::close_round() {
  if (!voting_closed()) throw ProtocolError("close_round before voting closed");
  if (quiescent()) throw ProtocolError("close_round after quiescence");
  int num = round();
  if (num > max_rounds_)
    throw ProtocolError("epoch exceeded " + std::to_string(max_rounds_) + " rounds");
  RoundRecord rec;
  rec.round = num;
  rec.proposals = current_proposals();
  rec.result = evaluate_round(*space_, s_, votes_, rec.proposals, cfg_.agg, cfg_.sigma);
  rounds_.push_back(std::move(rec));
  return rounds_.back();
}

bool Epoch::quiescent() const {
  if (rounds_.size() < 2) return false;
  const RoundRecord& a = rounds_[rounds_.size() - 2];
  const RoundRecord& b = rounds_.back();
  const Point* wa = a.result.winner();
  const Point* wb = b.result.winner();
  if (wa && wb && *wa == *wb) return true;
  if (!a.result.any_supported && !b.result.any_supported) return true;
  // Safety valve: two winnerless rounds over an unchanged proposal set can
  // never start winning later, so the epoch settles on the status quo.
  if (!wa && !wb && sorted_points(a.proposals) == sorted_points(b.proposals))
    return true;
  return false;
}

Point Epoch::outcome() const {
  if (quiescent()) {
    const Point* w = rounds_.back().result.winner();
    if (w) return *w;
  }
  return s_;
}

std::vector<Offer> GeometricMedianSource::offers(const Epoch& epoch) {
  Offer o;
  o.point = geometric_median(epoch.votes());
  return {o};
}

std::vector<Offer> CentroidSource::offers(const Epoch& epoch) {
  Offer o;
  o.point = centroid_point(epoch.votes());
  return {o};
}

std::vector<Offer> HeuristicSource::offers(const Epoch& epoch) {
  HeuristicResult h =
      heuristic_p(epoch.space(), epoch.status_quo(), epoch.votes(),
                  epoch.current_proposals(), epoch.config().agg, epoch.config().sigma);
  if (!h.candidate) return {};
  Offer o;
  o.point = *h.candidate;
  return {o};
}

std::vector<Offer> ScriptedSource::offers(const Epoch& epoch) {
  std::vector<Offer> out;
  for (const ScriptedAction& a : actions_) {
    if (a.round != epoch.round()) continue;
    Offer o;
    if (a.member >= 0) o.member = a.member;
    o.point = a.point;
    o.withdraw = a.withdraw;
    out.push_back(std::move(o));
  }
  return out;
}

EpochResult run_epoch(SpacePtr space, const Point& s, const std::vector<Point>& votes,
                      const std::vector<std::shared_ptr<ProposalSource>>& sources,
                      const EpochConfig& cfg) {
  if (votes.empty()) throw ConfigError("run_epoch: no votes");
  int n = static_cast<int>(votes.size());
  Epoch epoch(space, s, n, cfg);
  EpochResult res;

  // Sealed exchange with deterministic per-member salts.
  std::vector<std::string> salts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(
                      derive_seed(cfg.nonce, static_cast<uint64_t>(i))));
    salts[static_cast<size_t>(i)] = buf;
    epoch.commit(i, Epoch::commitment_digest(*space, cfg.nonce, i,
                                             votes[static_cast<size_t>(i)],
                                             salts[static_cast<size_t>(i)]));
  }
  for (int i = 0; i < n; ++i)
    epoch.reveal(i, votes[static_cast<size_t>(i)], salts[static_cast<size_t>(i)]);

  const RoundRecord& first = epoch.close_voting();
  {
    const Point* w = first.result.winner();
    res.trace.push_back("round 1: votes on the table; " +
                        (w ? "winner " + space->show(*w) : std::string("no winner")));
  }

  while (!epoch.quiescent()) {
    if (epoch.round() > epoch.max_rounds())
      throw ProtocolError("epoch exceeded " + std::to_string(epoch.max_rounds()) +
                          " rounds without quiescence");
    std::string rtag = "round " + std::to_string(epoch.round());
    for (const auto& src : sources) {
      for (const Offer& offer : src->offers(epoch)) {
        if (offer.withdraw) {
          if (!offer.member) continue;
          bool did = epoch.withdraw(*offer.member);
          res.trace.push_back(rtag + ": member " + std::to_string(*offer.member) +
                              (did ? " withdraws" : " has nothing to withdraw"));
          continue;
        }
        if (!offer.point) continue;
        const Point& pt = *offer.point;
        // Skip candidates already on the ledger; resubmitting them is a
        // guaranteed novelty rejection and only clutters the trace.
        bool seen = false;
        for (const Point& h : epoch.submission_history())
          if (epoch.space().dist(pt, h) < epoch.epsilon()) {
            seen = true;
            break;
          }
        if (seen) continue;
        int member = -1;
        if (offer.member) {
          member = *offer.member;
        } else {
          std::vector<double> u = utility_vector(epoch.space(), s, epoch.votes(), pt);
          for (int i = 0; i < n; ++i)
            if (!epoch.active_slots()[static_cast<size_t>(i)] &&
                u[static_cast<size_t>(i)] > 0) {
              member = i;
              break;
            }
          if (member < 0) {
            res.trace.push_back(rtag + ": no member can sponsor " + src->name() +
                                " candidate " + space->show(pt));
            continue;
          }
        }
        Admissibility verdict = epoch.try_submit(member, pt);
        res.trace.push_back(rtag + ": member " + std::to_string(member) + " offers " +
                            space->show(pt) + " (" + src->name() + "): " +
                            admissibility_name(verdict));
      }
    }
    const RoundRecord& rec = epoch.close_round();
    const Point* w = rec.result.winner();
    res.trace.push_back(rtag + ": " + std::to_string(rec.proposals.size()) +
                        " proposals; " +
                        (w ? "winner " + space->show(*w) : std::string("no winner")));
  }

  res.rounds = epoch.rounds();
  res.submissions = epoch.submissions();
  res.outcome = epoch.outcome();
  res.rounds_used = static_cast<int>(epoch.rounds().size());
  res.reached_quiescence = true;
  res.trace.push_back("quiescent after round " + std::to_string(res.rounds_used) +
                      "; outcome " + space->show(res.outcome));
  return res;
}

}  // namespace metgov
