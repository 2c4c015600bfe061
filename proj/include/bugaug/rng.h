// Copyright 2026 The bugaug Authors.
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

#ifndef BUGAUG_RNG_H_
#define BUGAUG_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace bugaug {

// Derives an independent stream seed from a master seed and a key path, e.g.
// (seed, "augment", bug_id, ordinal). Streams keyed this way do not depend on
// the order in which work items are scheduled.
class SeedKey {
 public:
  explicit SeedKey(std::uint64_t master);

  SeedKey& add(std::string_view part);
  SeedKey& add(std::uint64_t part);

  std::uint64_t value() const;

 private:
  std::uint64_t state_;
};

template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t master, const Parts&... parts) {
  SeedKey key(master);
  (key.add(parts), ...);
  return key.value();
}

// Seeded generator. Draw helpers are written out explicitly instead of using
// <random> distributions, whose output is implementation-defined; artifacts
// must be byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  // Uniform integer in [lo, hi] inclusive.
  std::size_t uniform_between(std::size_t lo, std::size_t hi);

  // Uniform double in [0, 1).
  double uniform_real();

  bool bernoulli(double p) { return uniform_real() < p; }

  // Draws min(k, n) distinct indices from [0, n) in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_index(i)]);
    }
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bugaug

#endif  // BUGAUG_RNG_H_
