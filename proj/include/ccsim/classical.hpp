#pragma once

// Classical protocols: two randomized equality tests, the one-bit simulation
// of the restricted-range EPR task, and the zero-communication fake of the
// Deutsch-Jozsa relation.

#include <cstdint>
#include <vector>

#include "ccsim/bits.hpp"
#include "ccsim/field.hpp"
#include "ccsim/runtime.hpp"

namespace ccsim {

enum class EqualityVerdict : std::uint8_t { Equal, Different };

// Bob's verdict is his one-bit output: 1 = Equal, 0 = Different. Alice's
// output is empty. Different is only ever emitted on certain evidence.
struct EqualityResult {
  EqualityVerdict verdict;
  ProtocolOutcome outcome;
};

EqualityVerdict verdict_from(const ProtocolOutcome& outcome);

// ---- polynomial fingerprint ------------------------------------------------

struct FingerprintParams {
  std::size_t n;
  Rational epsilon;
  std::uint64_t prime;     // smallest prime above n / epsilon
  unsigned element_bits;   // ceil(lg prime)
};

FingerprintParams fingerprint_params(std::size_t n, Rational epsilon);

// Alice draws w in F_p, sends w || P(w) (each element big-endian in
// element_bits bits); Bob compares with Q(w).
Protocol make_fingerprint_protocol(std::size_t n, Rational epsilon);

EqualityResult fingerprint_equality(const BitString& x, const BitString& y, Rational epsilon, std::uint64_t seed);

// Number of w in F_p with P(w) = Q(w).
std::uint64_t fingerprint_collisions(const BitString& x, const BitString& y, std::uint64_t prime);

// ---- shared-randomness inner products --------------------------------------

// Setup: m shared strings a_1..a_m of length n. Alice sends x.a_i for each i.
Protocol make_shared_randomness_protocol(std::size_t n, std::size_t m);

EqualityResult shared_randomness_equality(const BitString& x, const BitString& y, const SharedSetup& shared,
                                          std::uint64_t seed = 0);

// ---- one-bit EPR simulation -------------------------------------------------

struct EprInputs {
  double x;
  double y;
};

// Both angles must lie strictly inside (0, 1).
void validate(const EprInputs& in);

// Setup: one shared bit c and one shared real r uniform in (0,1).
// Alice outputs a = c and sends [r < x]. Bob flips c with probability
// sin(2|y - r|) when r lies strictly between x and y, otherwise outputs c.
Protocol make_epr_one_bit_protocol();

ProtocolOutcome simulate_epr_one_bit(const EprInputs& in, const SharedSetup& shared, std::uint64_t seed);

// Conditional probability that a = b given r, for the protocol above.
double epr_one_bit_agreement_given(double x, double y, double r);

// Widening the angle range forces the flip weight sin(2d) for separation d.
// Reports the separations on a uniform grid of (0, range] where that weight
// leaves [0, 1].
struct FlipWeightDiagnostic {
  double range;
  bool valid;                         // weight stays in [0,1] on the whole range
  double first_invalid_separation;    // pi/2 when invalid
  std::vector<double> invalid_separations;
};
FlipWeightDiagnostic flip_weight_diagnostic(double range, std::size_t samples = 1000);

// ---- faking the Deutsch-Jozsa relation --------------------------------------

// Setup: k shared strings t_1..t_k of length n; a_i = x.t_i, b_i = y.t_i.
// n must be a power of two; k = 0 means k = lg n.
Protocol make_fake_dj_protocol(std::size_t n, std::size_t k = 0);

struct BitPair {
  BitString a;
  BitString b;
};

// k is the number of shared strings in the setup.
BitPair fake_dj(const BitString& x, const BitString& y, const SharedSetup& shared);

// log2(n) for a power of two n >= 2; throws ArgumentError otherwise.
std::size_t log2_exact(std::size_t n);

}  // namespace ccsim
