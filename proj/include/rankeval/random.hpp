#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace rankeval {

/// Engine used everywhere randomness is needed. mt19937_64's output sequence is
/// fixed by the standard, so seeded results are portable across toolchains.
using Engine = std::mt19937_64;

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Per-query seed: `seed XOR fnv1a64(qid)`. Results never depend on the order
/// in which queries are visited.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view qid) noexcept;

/// Uniform integer in [0, bound) by rejection sampling. bound must be > 0.
std::uint64_t uniform_below(Engine& engine, std::uint64_t bound);

/// Uniform real in [0, 1) with 53 random bits.
double uniform_unit(Engine& engine);

/// Unbiased Fisher-Yates shuffle.
template <class T>
void shuffle(std::span<T> items, Engine& engine) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(engine, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Shuffles only the first `prefix` slots: after the call items[0..prefix) is a
/// uniformly random ordered sample without replacement from the whole span.
template <class T>
void partial_shuffle(std::span<T> items, std::size_t prefix, Engine& engine) {
  const std::size_t n = items.size();
  for (std::size_t i = 0; i < prefix && i + 1 < n; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_below(engine, n - i));
    std::swap(items[i], items[j]);
  }
}

}  // namespace rankeval
