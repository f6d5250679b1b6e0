#include "ccsim/bits.hpp"

#include "ccsim/errors.hpp"

namespace ccsim {

BitString::BitString(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ArgumentError("bit value must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ArgumentError("bit string may only contain '0' and '1': \"" + std::string(text) + "\"");
    }
    out.bits_.push_back(c == '1' ? 1 : 0);
  }
  return out;
}

BitString BitString::from_uint(std::uint64_t value, std::size_t width) {
  if (width > 64) throw ArgumentError("from_uint width exceeds 64 bits");
  BitString out(width);
  for (std::size_t i = 0; i < width; ++i) {
    out.bits_[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  }
  return out;
}

void BitString::append(const BitString& other) {
  bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::uint64_t BitString::to_uint() const {
  if (bits_.size() > 64) throw ArgumentError("bit string longer than 64 bits");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BitString::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::size_t BitString::weight() const {
  std::size_t w = 0;
  for (auto b : bits_) w += b;
  return w;
}

std::size_t hamming_distance(const BitString& x, const BitString& y) {
  if (x.size() != y.size()) throw ArgumentError("hamming_distance: length mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] != y[i]) ? 1 : 0;
  return d;
}

bool inner_product(const BitString& x, const BitString& a) {
  if (x.size() != a.size()) throw ArgumentError("inner_product: length mismatch");
  bool parity = false;
  for (std::size_t i = 0; i < x.size(); ++i) parity ^= (x[i] && a[i]);
  return parity;
}

unsigned bit_width_for(std::uint64_t modulus) {
  unsigned w = 0;
  while (w < 64 && (std::uint64_t{1} << w) < modulus) ++w;
  return w;
}

}  // namespace ccsim
