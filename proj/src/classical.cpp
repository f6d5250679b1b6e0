#include "ccsim/classical.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ccsim/errors.hpp"

namespace ccsim {
namespace {

const BitString& bits_of(const Input& in, const char* what) {
  const auto* b = std::get_if<BitString>(&in);
  if (!b) throw ArgumentError(std::string(what) + ": expected a bit string input");
  return *b;
}

double real_of(const Input& in, const char* what) {
  const auto* d = std::get_if<double>(&in);
  if (!d) throw ArgumentError(std::string(what) + ": expected a real input");
  return *d;
}

void require_same_length(const BitString& x, const BitString& y, std::size_t n, const char* what) {
  if (x.size() != n || y.size() != n) {
    throw ArgumentError(std::string(what) + ": inputs must both have length " + std::to_string(n));
  }
}

BitString verdict_bit(bool equal) { return BitString(1, equal); }

}  // namespace

EqualityVerdict verdict_from(const ProtocolOutcome& outcome) {
  if (outcome.b.size() != 1) throw ArgumentError("outcome does not carry an equality verdict");
  return outcome.b[0] ? EqualityVerdict::Equal : EqualityVerdict::Different;
}

std::size_t log2_exact(std::size_t n) {
  if (n < 2 || (n & (n - 1)) != 0) throw ArgumentError("n = " + std::to_string(n) + " is not a power of two >= 2");
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

FingerprintParams fingerprint_params(std::size_t n, Rational epsilon) {
  if (n == 0) throw ArgumentError("fingerprint: n must be at least 1");
  if (epsilon.num == 0 || epsilon.num >= epsilon.den) throw ArgumentError("fingerprint: epsilon must lie in (0,1)");
  const auto p = smallest_prime_above(divide(n, epsilon));
  return {n, epsilon, p, bit_width_for(p)};
}

Protocol make_fingerprint_protocol(std::size_t n, Rational epsilon) {
  const auto params = fingerprint_params(n, epsilon);
  Protocol proto;
  proto.name = "fingerprint-equality";
  proto.validate = [n](const Input& x, const Input& y) {
    require_same_length(bits_of(x, "fingerprint"), bits_of(y, "fingerprint"), n, "fingerprint");
  };
  proto.body = [params](Session& s, const Input& xi, const Input& yi) {
    const auto& x = std::get<BitString>(xi);
    const auto& y = std::get<BitString>(yi);
    const std::uint64_t p = params.prime;
    const unsigned width = params.element_bits;

    auto rng = s.stream(PartyId::Alice, "fingerprint");
    const FieldElement w(rng.below(p), p);
    const FieldElement v = evaluate_bit_polynomial(x, w);
    BitString message = BitString::from_uint(w.value(), width);
    message.append(BitString::from_uint(v.value(), width));
    s.local_op(PartyId::Alice, "evaluate P(w)");
    s.output(PartyId::Alice, BitString{});

    const BitString received = s.send_bits(PartyId::Alice, message);
    std::uint64_t w_rx = 0;
    std::uint64_t v_rx = 0;
    for (unsigned i = 0; i < width; ++i) {
      w_rx = (w_rx << 1) | (received[i] ? 1U : 0U);
      v_rx = (v_rx << 1) | (received[width + i] ? 1U : 0U);
    }
    const FieldElement q = evaluate_bit_polynomial(y, FieldElement(w_rx, p));
    s.local_op(PartyId::Bob, "evaluate Q(w)");
    s.output(PartyId::Bob, verdict_bit(q.value() == v_rx));
  };
  return proto;
}

EqualityResult fingerprint_equality(const BitString& x, const BitString& y, Rational epsilon, std::uint64_t seed) {
  if (x.size() != y.size()) throw ArgumentError("fingerprint_equality: length mismatch");
  auto outcome = run(make_fingerprint_protocol(x.size(), epsilon), x, y, seed);
  const auto verdict = verdict_from(outcome);
  return {verdict, std::move(outcome)};
}

std::uint64_t fingerprint_collisions(const BitString& x, const BitString& y, std::uint64_t prime) {
  if (x.size() != y.size()) throw ArgumentError("fingerprint_collisions: length mismatch");
  std::uint64_t count = 0;
  for (std::uint64_t w = 0; w < prime; ++w) {
    const FieldElement fw(w, prime);
    if (evaluate_bit_polynomial(x, fw) == evaluate_bit_polynomial(y, fw)) ++count;
  }
  return count;
}

Protocol make_shared_randomness_protocol(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw ArgumentError("shared-randomness equality: n and m must be at least 1");
  Protocol proto;
  proto.name = "shared-randomness-equality";
  proto.setup_spec.with_bits(m, n);
  proto.validate = [n](const Input& x, const Input& y) {
    require_same_length(bits_of(x, "shared-randomness"), bits_of(y, "shared-randomness"), n, "shared-randomness");
  };
  proto.body = [n, m](Session& s, const Input& xi, const Input& yi) {
    const auto& x = std::get<BitString>(xi);
    const auto& y = std::get<BitString>(yi);
    const auto& shared = s.shared().shared_bits;
    if (shared.size() != m) throw ArgumentError("shared-randomness equality: setup must hold m shared strings");
    for (const auto& a : shared) {
      if (a.size() != n) throw ArgumentError("shared-randomness equality: shared strings must have length n");
    }
    BitString b(m);
    for (std::size_t i = 0; i < m; ++i) b.set(i, inner_product(x, shared[i]));
    s.local_op(PartyId::Alice, "inner products");
    s.output(PartyId::Alice, BitString{});
    const BitString received = s.send_bits(PartyId::Alice, b);
    bool equal = true;
    for (std::size_t i = 0; i < m; ++i) equal = equal && (received[i] == inner_product(y, shared[i]));
    s.local_op(PartyId::Bob, "compare inner products");
    s.output(PartyId::Bob, verdict_bit(equal));
  };
  return proto;
}

EqualityResult shared_randomness_equality(const BitString& x, const BitString& y, const SharedSetup& shared,
                                          std::uint64_t seed) {
  if (x.size() != y.size()) throw ArgumentError("shared_randomness_equality: length mismatch");
  if (shared.shared_bits.empty()) throw ArgumentError("shared_randomness_equality: setup holds no shared strings");
  auto outcome = run_with_setup(make_shared_randomness_protocol(x.size(), shared.shared_bits.size()), shared, x, y, seed);
  const auto verdict = verdict_from(outcome);
  return {verdict, std::move(outcome)};
}

void validate(const EprInputs& in) {
  if (!(in.x > 0.0 && in.x < 1.0) || !(in.y > 0.0 && in.y < 1.0)) {
    throw ArgumentError("one-bit EPR simulation: angles must lie strictly inside (0,1)");
  }
}

double epr_one_bit_agreement_given(double x, double y, double r) {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  if (r > lo && r < hi) return 1.0 - std::sin(2.0 * std::abs(y - r));
  return 1.0;
}

Protocol make_epr_one_bit_protocol() {
  Protocol proto;
  proto.name = "epr-classical";
  proto.setup_spec.with_bits(1, 1).with_reals(1, {0.0, 1.0});
  proto.validate = [](const Input& x, const Input& y) {
    validate(EprInputs{real_of(x, "epr-classical"), real_of(y, "epr-classical")});
  };
  proto.body = [](Session& s, const Input& xi, const Input& yi) {
    const double x = std::get<double>(xi);
    const double y = std::get<double>(yi);
    const auto& sh = s.shared();
    if (sh.shared_bits.size() != 1 || sh.shared_bits[0].size() != 1 || sh.shared_reals.size() != 1) {
      throw ArgumentError("one-bit EPR simulation: setup must hold one shared bit and one shared real");
    }
    const bool c = sh.shared_bits[0][0];
    const double r = sh.shared_reals[0];

    s.output(PartyId::Alice, BitString(1, c));
    const bool r_below_x = s.send_bits(PartyId::Alice, BitString(1, r < x))[0];

    // r is strictly between x and y iff exactly one of them exceeds r.
    const bool between = (r_below_x != (r < y)) && r != y;
    bool b = c;
    if (between) {
      auto coin = s.stream(PartyId::Bob, "coin");
      if (coin.bernoulli(std::sin(2.0 * std::abs(y - r)))) b = !c;
      s.local_op(PartyId::Bob, "flip coin");
    }
    s.output(PartyId::Bob, BitString(1, b));
  };
  return proto;
}

ProtocolOutcome simulate_epr_one_bit(const EprInputs& in, const SharedSetup& shared, std::uint64_t seed) {
  validate(in);
  static const Protocol proto = make_epr_one_bit_protocol();
  return run_with_setup(proto, shared, in.x, in.y, seed);
}

FlipWeightDiagnostic flip_weight_diagnostic(double range, std::size_t samples) {
  if (!(range > 0.0) || samples == 0) throw ArgumentError("flip_weight_diagnostic: need a positive range and samples");
  FlipWeightDiagnostic out{range, true, 0.0, {}};
  for (std::size_t i = 1; i <= samples; ++i) {
    const double d = range * static_cast<double>(i) / static_cast<double>(samples);
    const double w = std::sin(2.0 * d);
    if (w < 0.0 || w > 1.0) out.invalid_separations.push_back(d);
  }
  if (range > std::numbers::pi / 2) {
    out.valid = false;
    out.first_invalid_separation = std::numbers::pi / 2;
  }
  return out;
}

Protocol make_fake_dj_protocol(std::size_t n, std::size_t k) {
  const std::size_t lg = log2_exact(n);
  if (k == 0) k = lg;
  Protocol proto;
  proto.name = "fake-dj";
  proto.zero_communication = true;
  proto.setup_spec.with_bits(k, n);
  proto.validate = [n](const Input& x, const Input& y) {
    require_same_length(bits_of(x, "fake-dj"), bits_of(y, "fake-dj"), n, "fake-dj");
  };
  proto.promise = [n](const Input& x, const Input& y) {
    const auto d = hamming_distance(std::get<BitString>(x), std::get<BitString>(y));
    return d == 0 || 2 * d == n;
  };
  proto.body = [n, k](Session& s, const Input& xi, const Input& yi) {
    const auto& t = s.shared().shared_bits;
    if (t.size() != k) throw ArgumentError("fake-dj: setup must hold k shared strings");
    for (const auto& ti : t) {
      if (ti.size() != n) throw ArgumentError("fake-dj: shared strings must have length n");
    }
    for (auto [party, input] : {std::pair{PartyId::Alice, &xi}, std::pair{PartyId::Bob, &yi}}) {
      BitString out(k);
      for (std::size_t i = 0; i < k; ++i) out.set(i, inner_product(std::get<BitString>(*input), t[i]));
      s.local_op(party, "inner products");
      s.output(party, std::move(out));
    }
  };
  return proto;
}

BitPair fake_dj(const BitString& x, const BitString& y, const SharedSetup& shared) {
  if (x.size() != y.size()) throw ArgumentError("fake_dj: length mismatch");
  auto outcome = run_with_setup(make_fake_dj_protocol(x.size(), shared.shared_bits.size()), shared, x, y, 0);
  return {std::move(outcome.a), std::move(outcome.b)};
}

}  // namespace ccsim
