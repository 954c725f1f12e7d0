#include "rankeval/random.hpp"

#include <stdexcept>

namespace rankeval {

std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view qid) noexcept {
  return seed ^ fnv1a64(qid);
}

std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Reject the tail that would bias the modulo.
  const std::uint64_t limit = Engine::max() - (Engine::max() % bound + 1) % bound;
  std::uint64_t draw = engine();
  while (draw > limit) draw = engine();
  return draw % bound;
}

double uniform_unit(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace rankeval
