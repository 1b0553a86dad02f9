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

#include <cstdint>
#include <string>
#include <vector>

namespace metgov {

// A point in a decision space. One flat struct with a tag instead of a
// std::variant: payloads are small, copies are cheap, and a flat layout keeps
// the canonical comparison (used for tie-breaking and for std::map keys)
// readable. Which field is live depends on the owning space's kind:
//
//   Index  - candidate index (plurality, -1 = vacancy) or table row index
//   Scalar - 1-D value
//   Vector - simplex / Euclidean coordinates
//   Perm   - permutation of {0..m-1} (position i holds the item ranked i-th)
//   Mask   - subset bitmask over the ground set (bit j = element j present)
//   Str    - text over the space's alphabet
struct Point {
  enum class Tag : uint8_t { Index, Scalar, Vector, Perm, Mask, Str };

  Tag tag = Tag::Index;
  int64_t idx = 0;
  double x = 0.0;
  std::vector<double> vec;
  std::vector<int> perm;
  uint64_t mask = 0;
  std::string str;

  static Point index(int64_t i) {
    Point p;
    p.tag = Tag::Index;
    p.idx = i;
    return p;
  }
  static Point scalar(double v) {
    Point p;
    p.tag = Tag::Scalar;
    p.x = v;
    return p;
  }
  static Point vector(std::vector<double> v) {
    Point p;
    p.tag = Tag::Vector;
    p.vec = std::move(v);
    return p;
  }
  static Point permutation(std::vector<int> v) {
    Point p;
    p.tag = Tag::Perm;
    p.perm = std::move(v);
    return p;
  }
  static Point subset(uint64_t m) {
    Point p;
    p.tag = Tag::Mask;
    p.mask = m;
    return p;
  }
  static Point text(std::string s) {
    Point p;
    p.tag = Tag::Str;
    p.str = std::move(s);
    return p;
  }

  bool is_vacancy() const { return tag == Tag::Index && idx < 0; }
};

bool operator==(const Point& a, const Point& b);
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }

// Canonical order, used everywhere a deterministic tie-break is needed:
// scalars/vectors lexicographic by coordinates, subsets by bitmask value,
// permutations lexicographic, strings by length then lexicographic, indices
// numeric (vacancy first). Cross-tag falls back to tag order; a well-formed
// space never mixes tags.
bool operator<(const Point& a, const Point& b);

}  // namespace metgov
