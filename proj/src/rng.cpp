#include "ccsim/rng.hpp"

namespace ccsim {

std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, std::uint64_t counter) noexcept {
  // FNV-1a over the label, then fold in parent and counter.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return mix64(mix64(parent ^ h) + mix64(counter + 0x632BE59BD9B4E019ULL));
}

std::uint64_t RandomStream::below(std::uint64_t bound) noexcept {
  // Lemire-style rejection on the top of the range.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t r;
  do {
    r = (*this)();
  } while (r >= limit);
  return r % bound;
}

}  // namespace ccsim
