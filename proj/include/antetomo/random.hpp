// Copyright 2026 The antetomo Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Seed derivation. Every random stream in the toolkit is a std::mt19937_64
 * seeded with derive_seed(root, stage, index): the root seed is mixed with a
 * stage tag and a partition index through SplitMix64, so streams for
 * different stages and partitions never share a seed by construction.
 */
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace antetomo {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// FNV-1a of the stage tag.
inline constexpr std::uint64_t stage_tag(std::string_view stage) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : stage) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline constexpr std::uint64_t derive_seed(std::uint64_t root, std::string_view stage, std::uint64_t index = 0) {
  return splitmix64(splitmix64(root ^ stage_tag(stage)) + index);
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t root, std::string_view stage, std::uint64_t index = 0) {
  return Rng(derive_seed(root, stage, index));
}

}  // namespace antetomo
