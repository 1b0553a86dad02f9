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

#include <string>
#include <vector>

#include "json.hpp"
#include "metgov/epoch.hpp"

namespace metgov {

// ordered_json keeps object keys in insertion order, so dumps are stable --
// which the commit/reveal digests and the byte-identical-output checks rely on.
using Json = nlohmann::ordered_json;

Json space_to_json(const Space& space);
SpacePtr space_from_json(const Json& j);

// Points render in space-appropriate terms: candidate names (null for the
// vacancy), raw numbers, coordinate arrays, ranked item names, element-name
// arrays, text, or table labels.
Json point_to_json(const Space& space, const Point& p);
Point point_from_json(const Space& space, const Json& j);

// Stable textual form of a point; the sealed-ballot digest hashes this.
std::string canonical_point_string(const Space& space, const Point& p);

Aggregator aggregator_from_string(const std::string& s);

struct EpochSpec {
  SpacePtr space;
  Point status_quo;
  std::vector<Point> votes;
  std::vector<std::shared_ptr<ProposalSource>> sources;
  EpochConfig config;
};

EpochSpec epoch_spec_from_json(const Json& j);
Json epoch_result_to_json(const Space& space, const EpochResult& r);
Json round_result_to_json(const Space& space, const RoundRecord& rec);
Json gap_report_to_json(const Space& space, const GapReport& g);

Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

// Structural problems with an epoch spec; empty means it parses cleanly.
std::vector<std::string> check_epoch_spec(const Json& j);

}  // namespace metgov
