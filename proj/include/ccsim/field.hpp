#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "ccsim/bits.hpp"

namespace ccsim {

// Non-negative rational number num/den with den > 0.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  // Accepts "3", "1/4" or a decimal such as "0.25" (converted exactly).
  static Rational parse(std::string_view text);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

// n / eps as an exact rational.
Rational divide(std::uint64_t n, Rational eps);

inline constexpr std::uint64_t kPrimeSearchCap = 10'000'000;

bool is_prime(std::uint64_t n);

// Smallest prime p > t. Verifies p <= 2t before returning.
std::uint64_t smallest_prime_above(Rational t);

class FieldElement {
 public:
  FieldElement(std::uint64_t value, std::uint64_t modulus);

  std::uint64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

  FieldElement operator+(FieldElement o) const;
  FieldElement operator*(FieldElement o) const;
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  struct Unchecked {};
  FieldElement(Unchecked, std::uint64_t value, std::uint64_t modulus) : value_(value), modulus_(modulus) {}

  std::uint64_t value_;
  std::uint64_t modulus_;
};

// P(w) = c_1 + c_2 w + ... + c_n w^{n-1} over F_p by Horner's rule, where the
// coefficients are the bits of `coefficients`.
FieldElement evaluate_bit_polynomial(const BitString& coefficients, FieldElement w);

}  // namespace ccsim
