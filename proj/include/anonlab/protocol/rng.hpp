// Copyright 2026 The anonlab Authors.
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
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace anonlab::protocol {

/// Name recorded in study metadata so other implementations can reproduce
/// trial orders bit-for-bit.
inline constexpr std::string_view kRandomizerName =
    "mt19937_64(splitmix64(seed_base ^ fnv1a64(listener_id) ^ stream)); "
    "rejection-sampled bounded draws; Fisher-Yates from the back";

std::uint64_t fnv1a64(std::string_view text);
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for one randomization stream of one listener.
std::uint64_t session_seed(std::uint64_t seed_base, std::string_view listener_id, std::uint64_t stream);

/// Deterministic generator whose draws depend only on the seed. The standard
/// distributions are implementation-defined, so bounded draws are done here.
class SessionRng {
 public:
  explicit SessionRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace anonlab::protocol
