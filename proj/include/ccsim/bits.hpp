#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace ccsim {

// A string of bits x_1 x_2 ... x_n. Position 0 holds x_1. Entries are 0 or 1.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}
  BitString(std::initializer_list<int> bits);

  // Parses a string of '0'/'1' characters; anything else throws ArgumentError.
  static BitString parse(std::string_view text);
  // The `width` low-order bits of `value`, most significant first.
  static BitString from_uint(std::uint64_t value, std::size_t width);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }
  void push_back(bool v) { bits_.push_back(v ? 1 : 0); }
  void append(const BitString& other);

  // Reads the bits as an unsigned integer, first bit most significant.
  std::uint64_t to_uint() const;
  std::string str() const;
  std::size_t weight() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// Number of positions where x and y differ. Lengths must match.
std::size_t hamming_distance(const BitString& x, const BitString& y);

// Parity of the bitwise AND. Lengths must match.
bool inner_product(const BitString& x, const BitString& a);

// Number of bits needed to write any value in [0, modulus): ceil(lg modulus).
unsigned bit_width_for(std::uint64_t modulus);

}  // namespace ccsim
