// Copyright 2026 The aspforge Authors
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

#ifndef ASPFORGE_HASHING_HPP_
#define ASPFORGE_HASHING_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace aspforge {

// FNV-1a, used for stable record ids and file checksums. Platform-independent
// by construction; do not swap for std::hash (unspecified across builds).
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t combine_seeds(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
  return h;
}

std::string to_hex(std::uint64_t value);

// Deterministic PRNG with a fully specified output sequence (splitmix64).
// Template and corpus generation depend on byte-identical reruns, so the
// standard <random> distributions (implementation-defined) are avoided.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), rejection-sampled to stay unbiased.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi);

  bool chance(double p);

 private:
  std::uint64_t state_;
};

}  // namespace aspforge

#endif  // ASPFORGE_HASHING_HPP_
