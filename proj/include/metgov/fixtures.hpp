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

#include "metgov/serialize.hpp"

namespace metgov {

// Worked examples ship as fixture documents; each document states its inputs
// and the values the implementation must reproduce. run_fixture executes one
// and reports every mismatch, not just the first.
struct FixtureResult {
  std::string name;
  std::string path;
  bool pass = false;
  std::vector<std::string> notes;  // empty iff pass
};

// Dispatches on j["type"]: "round", "epoch", "gap", "hrule", "misreport",
// "membership", or "heuristic". Comparisons use j["tol"] (default 1e-6).
FixtureResult run_fixture(const Json& j, const std::string& name);

// Runs every *.json under dir, sorted by filename.
std::vector<FixtureResult> run_fixture_dir(const std::string& dir);

std::string default_fixtures_dir();

}  // namespace metgov
