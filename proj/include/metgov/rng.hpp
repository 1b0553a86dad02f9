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

#include <cmath>
#include <cstdint>

namespace metgov {

// splitmix64: tiny, fast, and -- unlike std::mt19937 + std::*_distribution --
// produces the same stream on every platform. All randomized paths (sampling,
// child-seed derivation, property tests) go through this so that raw-record
// outputs are byte-identical across runs and across machines.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0,1) with 53 random bits; ldexp keeps it exact.
  double uniform() { return std::ldexp(static_cast<double>(next() >> 11), -53); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, bound) via rejection.
  uint64_t below(uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t threshold = (0ULL - bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

  bool coin() { return (next() & 1) != 0; }

  // Standard exponential(1); used for Dirichlet simplex sampling.
  double exponential() {
    double u;
    do { u = uniform(); } while (u <= 0.0);
    return -std::log(u);
  }

 private:
  uint64_t state_;
};

// Stateless child-seed derivation: one splitmix64 scramble of (seed ^ stream).
// Profile k, attempt a of row r uses derive(derive(master, r), k * 1000003 + a),
// so resampling a vacuous profile never perturbs its neighbours' streams.
inline uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace metgov
