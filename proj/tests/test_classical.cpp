#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ccsim/classical.hpp"
#include "ccsim/errors.hpp"

using namespace ccsim;

namespace {

std::vector<SharedSetup> all_setups(std::size_t count, std::size_t len) {
  std::vector<SharedSetup> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << (count * len)); ++v) {
    SharedSetup s;
    for (std::size_t i = 0; i < count; ++i) {
      s.shared_bits.push_back(BitString::from_uint((v >> (i * len)) & ((1u << len) - 1), len));
    }
    out.push_back(std::move(s));
  }
  return out;
}

// sum_i c_i w^(i-1) mod p, computed with explicit powers.
std::uint64_t poly_naive(const BitString& c, std::uint64_t w, std::uint64_t p) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i]) total = (total + power) % p;
    power = power * w % p;
  }
  return total;
}

}  // namespace

TEST(Rational, ParsesExactly) {
  const auto a = Rational::parse("0.25");
  EXPECT_EQ(a.num, 1u);
  EXPECT_EQ(a.den, 4u);
  const auto b = Rational::parse("6/8");
  EXPECT_EQ(b.num, 3u);
  EXPECT_EQ(b.den, 4u);
  EXPECT_EQ(Rational::parse("3").str(), "3");
  EXPECT_THROW(Rational::parse("1/0"), ArgumentError);
  EXPECT_THROW(Rational::parse("abc"), ArgumentError);
}

TEST(Primes, SmallestAbove) {
  EXPECT_EQ(smallest_prime_above(Rational{64, 1}), 67u);
  EXPECT_EQ(smallest_prime_above(Rational{2, 1}), 3u);
  EXPECT_EQ(smallest_prime_above(Rational{5, 2}), 3u);
  EXPECT_EQ(smallest_prime_above(Rational{1, 1}), 2u);
  EXPECT_THROW(smallest_prime_above(Rational{kPrimeSearchCap, 1}), CapacityError);
}

TEST(Field, Arithmetic) {
  const FieldElement a(5, 7), b(4, 7);
  EXPECT_EQ((a + b).value(), 2u);
  EXPECT_EQ((a * b).value(), 6u);
  EXPECT_THROW(FieldElement(7, 7), ArgumentError);
  EXPECT_THROW(FieldElement(1, 8), ArgumentError);
}

TEST(Field, HornerMatchesExplicitPowers) {
  RandomStream rng(8);
  for (int t = 0; t < 200; ++t) {
    BitString c(16);
    for (std::size_t i = 0; i < 16; ++i) c.set(i, rng.coin());
    const std::uint64_t w = rng.below(67);
    EXPECT_EQ(evaluate_bit_polynomial(c, FieldElement(w, 67)).value(), poly_naive(c, w, 67));
  }
}

TEST(Fingerprint, ParamsAtSixteen) {
  const auto p = fingerprint_params(16, Rational{1, 4});
  EXPECT_EQ(p.prime, 67u);
  EXPECT_EQ(p.element_bits, 7u);
  EXPECT_THROW(fingerprint_params(16, Rational{1, 1}), ArgumentError);
}

TEST(Fingerprint, SendsTwoFieldElements) {
  const auto x = BitString::parse("1011001110001111");
  const auto r = fingerprint_equality(x, x, Rational{1, 4}, 9);
  EXPECT_EQ(r.verdict, EqualityVerdict::Equal);
  EXPECT_EQ(r.outcome.channel.classical_bits_sent, 14u);
}

TEST(Fingerprint, CollisionsMatchNaiveCount) {
  RandomStream rng(21);
  for (int t = 0; t < 30; ++t) {
    BitString x(16), y(16);
    for (std::size_t i = 0; i < 16; ++i) {
      x.set(i, rng.coin());
      y.set(i, rng.coin());
    }
    std::uint64_t naive = 0;
    for (std::uint64_t w = 0; w < 67; ++w) naive += poly_naive(x, w, 67) == poly_naive(y, w, 67);
    EXPECT_EQ(fingerprint_collisions(x, y, 67), naive);
    if (x != y) EXPECT_LE(naive, 15u);  // nonzero polynomial of degree < 16
  }
}

TEST(Fingerprint, NeverSaysDifferentOnEqualInputs) {
  const auto x = BitString::parse("0110");
  for (std::uint64_t s = 0; s < 200; ++s) {
    EXPECT_EQ(fingerprint_equality(x, x, Rational{1, 3}, s).verdict, EqualityVerdict::Equal);
  }
}

TEST(SharedRandomness, FrozenCountAtThreeBits) {
  // x xor y = 110; a_i . 110 = 0 for 4 of 8 strings, so both for 16 of 64 setups
  const auto x = BitString::parse("101"), y = BitString::parse("011");
  std::size_t equal = 0;
  for (const auto& s : all_setups(2, 3)) {
    equal += shared_randomness_equality(x, y, s).verdict == EqualityVerdict::Equal;
  }
  EXPECT_EQ(equal, 16u);
}

TEST(SharedRandomness, SendsMBits) {
  const auto p = make_shared_randomness_protocol(4, 3);
  const auto o = run(p, BitString::parse("1100"), BitString::parse("1100"), 2);
  EXPECT_EQ(o.channel.classical_bits_sent, 3u);
  EXPECT_EQ(verdict_from(o), EqualityVerdict::Equal);
}

TEST(EprOneBit, RejectsClosedEndpoints) {
  const auto p = make_epr_one_bit_protocol();
  EXPECT_THROW(run(p, 0.0, 0.5, 1), ArgumentError);
  EXPECT_THROW(run(p, 0.5, 1.0, 1), ArgumentError);
  EXPECT_THROW(run(p, BitString{1}, 0.5, 1), ArgumentError);
}

TEST(EprOneBit, ConditionalAgreement) {
  EXPECT_DOUBLE_EQ(epr_one_bit_agreement_given(0.2, 0.7, 0.1), 1.0);
  EXPECT_DOUBLE_EQ(epr_one_bit_agreement_given(0.2, 0.7, 0.9), 1.0);
  EXPECT_NEAR(epr_one_bit_agreement_given(0.2, 0.7, 0.5), 1.0 - std::sin(0.4), 1e-15);
  EXPECT_NEAR(epr_one_bit_agreement_given(0.7, 0.2, 0.5), 1.0 - std::sin(0.6), 1e-15);
}

TEST(EprOneBit, ExactlyOneBitAndUniformMarginal) {
  const auto p = make_epr_one_bit_protocol();
  constexpr int trials = 40000;
  int a_zero = 0;
  for (int t = 0; t < trials; ++t) {
    const auto o = run(p, 0.3, 0.8, static_cast<std::uint64_t>(t));
    ASSERT_EQ(o.channel.classical_bits_sent, 1u);
    a_zero += !o.a[0];
  }
  EXPECT_NEAR(a_zero / double(trials), 0.5, 5 * std::sqrt(0.25 / trials));
}

TEST(EprOneBit, FixedSetupReplays) {
  SharedSetup s;
  s.shared_bits = {BitString{1}};
  s.shared_reals = {0.95};
  const auto o = simulate_epr_one_bit({0.2, 0.7}, s, 3);
  // r outside (x, y): Bob keeps c
  EXPECT_EQ(o.a, BitString{1});
  EXPECT_EQ(o.b, BitString{1});
}

TEST(EprOneBit, FlipWeightDiagnostic) {
  EXPECT_TRUE(flip_weight_diagnostic(1.0).valid);
  const auto wide = flip_weight_diagnostic(std::numbers::pi);
  EXPECT_FALSE(wide.valid);
  EXPECT_DOUBLE_EQ(wide.first_invalid_separation, std::numbers::pi / 2);
  EXPECT_FALSE(wide.invalid_separations.empty());
}

TEST(FakeDj, FrozenCountAtFourBits) {
  // Delta = 2, k = 2: x.t and y.t agree for 8 of 16 strings t, so 64 of 256 setups
  const auto x = BitString::parse("0000"), y = BitString::parse("0011");
  std::size_t same = 0;
  for (const auto& s : all_setups(2, 4)) {
    const auto r = fake_dj(x, y, s);
    same += r.a == r.b;
  }
  EXPECT_EQ(same, 64u);
}

TEST(FakeDj, ViolationRate) {
  for (std::size_t k : {1, 2}) {
    const auto x = BitString::parse("1010"), y = BitString::parse("0110");
    std::size_t violations = 0;
    const auto setups = all_setups(k, 4);
    for (const auto& s : setups) {
      const auto r = fake_dj(x, y, s);
      violations += r.a == r.b;  // the relation demands a != b here
    }
    EXPECT_DOUBLE_EQ(violations / double(setups.size()), std::ldexp(1.0, -static_cast<int>(k)));
  }
}

TEST(FakeDj, EqualInputsAlwaysAgree) {
  const auto x = BitString::parse("10010110");
  for (const auto& s : all_setups(1, 8)) {
    const auto r = fake_dj(x, x, s);
    EXPECT_EQ(r.a, r.b);
  }
}

TEST(FakeDj, IsZeroCommunication) {
  const auto o = run(make_fake_dj_protocol(8), BitString::parse("00001111"), BitString::parse("00000000"), 4);
  EXPECT_EQ(o.channel.classical_bits_sent + o.channel.qubits_sent, 0u);
  EXPECT_EQ(o.a.size(), 3u);
  EXPECT_THROW(make_fake_dj_protocol(6), ArgumentError);
}
