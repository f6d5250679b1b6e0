#include "ccsim/field.hpp"

#include <charconv>
#include <numeric>

#include "ccsim/errors.hpp"

namespace ccsim {
namespace {

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ArgumentError("not a rational number: \"" + std::string(whole) + "\"");
  }
  return v;
}

Rational reduced(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ArgumentError("rational with zero denominator");
  const auto g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return reduced(parse_uint(text.substr(0, slash), text), parse_uint(text.substr(slash + 1), text));
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 18) throw ArgumentError("too many decimal digits: \"" + std::string(text) + "\"");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::uint64_t whole = dot == 0 ? 0 : parse_uint(text.substr(0, dot), text);
    const std::uint64_t part = frac.empty() ? 0 : parse_uint(frac, text);
    return reduced(whole * den + part, den);
  }
  return {parse_uint(text, text), 1};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational divide(std::uint64_t n, Rational eps) {
  if (eps.num == 0) throw ArgumentError("division by zero");
  return reduced(n * eps.den, eps.num);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t smallest_prime_above(Rational t) {
  if (t.den == 0 || t.num < t.den) throw ArgumentError("smallest_prime_above: t must be at least 1");
  const std::uint64_t floor_t = t.num / t.den;
  if (floor_t >= kPrimeSearchCap) {
    throw CapacityError("smallest_prime_above: t = " + t.str() + " exceeds the search bound " +
                        std::to_string(kPrimeSearchCap));
  }
  std::uint64_t p = floor_t + 1;
  while (!is_prime(p)) ++p;
  // p <= 2t, i.e. p * den <= 2 * num.
  if (p * t.den > 2 * t.num) {
    throw std::logic_error("no prime found in (t, 2t] for t = " + t.str());
  }
  return p;
}

FieldElement::FieldElement(std::uint64_t value, std::uint64_t modulus) : value_(value), modulus_(modulus) {
  if (!is_prime(modulus)) throw ArgumentError("field modulus " + std::to_string(modulus) + " is not prime");
  if (modulus > (std::uint64_t{1} << 32)) throw CapacityError("field modulus does not fit in 32 bits");
  if (value >= modulus) throw ArgumentError("field element out of range");
}

FieldElement FieldElement::operator+(FieldElement o) const {
  if (o.modulus_ != modulus_) throw ArgumentError("field elements from different fields");
  return {Unchecked{}, (value_ + o.value_) % modulus_, modulus_};
}

FieldElement FieldElement::operator*(FieldElement o) const {
  if (o.modulus_ != modulus_) throw ArgumentError("field elements from different fields");
  return {Unchecked{}, (value_ * o.value_) % modulus_, modulus_};
}

FieldElement evaluate_bit_polynomial(const BitString& coefficients, FieldElement w) {
  const FieldElement one(1 % w.modulus(), w.modulus());
  FieldElement acc(0, w.modulus());
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    acc = acc * w;
    if (coefficients[i]) acc = acc + one;
  }
  return acc;
}

}  // namespace ccsim
