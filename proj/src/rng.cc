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

#include "bugaug/rng.h"

#include <numeric>
#include <stdexcept>

namespace bugaug {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

SeedKey::SeedKey(std::uint64_t master) : state_(splitmix64(master)) {}

SeedKey& SeedKey::add(std::string_view part) {
  // Length prefix keeps ("ab","c") and ("a","bc") apart.
  state_ = splitmix64(state_ ^ splitmix64(part.size()));
  state_ = splitmix64(state_ ^ fnv1a(part));
  return *this;
}

SeedKey& SeedKey::add(std::uint64_t part) {
  state_ = splitmix64(state_ ^ splitmix64(part ^ 0x5bd1e9955bd1e995ULL));
  return *this;
}

std::uint64_t SeedKey::value() const { return splitmix64(state_); }

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  // Rejection sampling on the largest multiple of bound.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return static_cast<std::size_t>(x % bound);
}

std::size_t Rng::uniform_between(std::size_t lo, std::size_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_between: hi < lo");
  return lo + uniform_index(hi - lo + 1);
}

double Rng::uniform_real() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n,
                                                         std::size_t k) {
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const std::size_t take = std::min(k, n);
  for (std::size_t i = 0; i < take; ++i) {
    std::swap(pool[i], pool[i + uniform_index(n - i)]);
  }
  pool.resize(take);
  return pool;
}

}  // namespace bugaug
