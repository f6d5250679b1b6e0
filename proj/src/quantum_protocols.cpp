#include "ccsim/quantum_protocols.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "ccsim/errors.hpp"

namespace ccsim {
namespace {

std::vector<std::size_t> iota_qubits(std::size_t first, std::size_t count) {
  std::vector<std::size_t> q(count);
  std::iota(q.begin(), q.end(), first);
  return q;
}

double angle_of(const Input& in) {
  const auto* d = std::get_if<double>(&in);
  if (!d) throw ArgumentError("epr-quantum: expected a real angle");
  if (!(*d >= 0.0 && *d <= std::numbers::pi)) throw ArgumentError("epr-quantum: angle outside [0, pi]");
  return *d;
}

const BitString& dj_input(const Input& in, std::size_t n, const char* what) {
  const auto* b = std::get_if<BitString>(&in);
  if (!b) throw ArgumentError(std::string(what) + ": expected a bit string input");
  if (b->size() != n) throw ArgumentError(std::string(what) + ": input length must be " + std::to_string(n));
  return *b;
}

bool dj_promise(const BitString& x, const BitString& y) {
  const auto d = hamming_distance(x, y);
  return d == 0 || 2 * d == x.size();
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

Protocol make_epr_quantum_protocol() {
  Protocol proto;
  proto.name = "epr-quantum";
  proto.zero_communication = true;
  proto.setup_spec.with_ebits(1);
  proto.validate = [](const Input& x, const Input& y) {
    angle_of(x);
    angle_of(y);
  };
  proto.body = [](Session& s, const Input& x, const Input& y) {
    s.rotate(PartyId::Alice, 0, std::get<double>(x));
    s.rotate(PartyId::Bob, 1, std::get<double>(y));
    s.record_exact_distribution();
    const std::size_t alice_q[] = {0};
    const std::size_t bob_q[] = {1};
    s.output(PartyId::Alice, s.measure(PartyId::Alice, alice_q));
    s.output(PartyId::Bob, s.measure(PartyId::Bob, bob_q));
  };
  return proto;
}

ProtocolOutcome epr_task_quantum(double x, double y, std::uint64_t seed) {
  static const Protocol proto = make_epr_quantum_protocol();
  return run(proto, x, y, seed);
}

EprStatistics epr_statistics(const OutcomeDistribution& joint) {
  if (joint.size() != 4) throw ArgumentError("epr_statistics: expected a 2-qubit distribution");
  return {joint[0] + joint[3], joint[0] + joint[1], joint[0] + joint[2]};
}

DjInstance DjInstance::make(std::size_t k, BitString x, BitString y) {
  if (k == 0) throw ArgumentError("DJ instance: k must be at least 1");
  if (k > kMaxQubits / 2) throw CapacityError("DJ instance: k exceeds the simulator cap");
  const std::size_t n = std::size_t{1} << k;
  if (x.size() != n || y.size() != n) {
    throw ArgumentError("DJ instance: inputs must have length 2^k = " + std::to_string(n));
  }
  return {k, std::move(x), std::move(y)};
}

bool DjInstance::promise_holds() const { return dj_promise(x, y); }

bool dj_relation(const BitString& x, const BitString& y, const BitString& a, const BitString& b) {
  const auto d = hamming_distance(x, y);
  if (d == 0) return a == b;
  if (2 * d == x.size()) return a != b;
  return true;
}

Protocol make_dj_pseudo_telepathy_protocol(std::size_t k) {
  if (k == 0) throw ArgumentError("dj-pseudo-telepathy: k must be at least 1");
  const std::size_t n = std::size_t{1} << k;
  Protocol proto;
  proto.name = "dj-pseudo-telepathy";
  proto.zero_communication = true;
  proto.setup_spec.with_ebits(k);
  proto.validate = [n](const Input& x, const Input& y) {
    dj_input(x, n, "dj-pseudo-telepathy");
    dj_input(y, n, "dj-pseudo-telepathy");
  };
  proto.promise = [](const Input& x, const Input& y) {
    return dj_promise(std::get<BitString>(x), std::get<BitString>(y));
  };
  proto.body = [k](Session& s, const Input& x, const Input& y) {
    if (!s.quantum_state() || s.quantum_state()->num_qubits() != 2 * k) {
      throw ArgumentError("dj-pseudo-telepathy: setup must provide k shared pairs");
    }
    const auto alice = iota_qubits(0, k);
    const auto bob = iota_qubits(k, k);
    s.phase_oracle(PartyId::Alice, alice, SignVector::from_bits(std::get<BitString>(x)));
    s.phase_oracle(PartyId::Bob, bob, SignVector::from_bits(std::get<BitString>(y)));
    s.hadamard(PartyId::Alice, alice);
    s.hadamard(PartyId::Bob, bob);
    s.record_exact_distribution();
    s.output(PartyId::Alice, s.measure(PartyId::Alice, alice));
    s.output(PartyId::Bob, s.measure(PartyId::Bob, bob));
  };
  return proto;
}

ProtocolOutcome dj_pseudo_telepathy(const DjInstance& instance, std::uint64_t seed) {
  return run(make_dj_pseudo_telepathy_protocol(instance.k), instance.x, instance.y, seed);
}

double dj_forbidden_mass(const DjInstance& instance, const OutcomeDistribution& joint) {
  const std::size_t outputs = std::size_t{1} << instance.k;
  if (joint.size() != outputs * outputs) throw ArgumentError("dj_forbidden_mass: distribution size mismatch");
  return joint.mass_where([&](std::size_t idx) {
    const auto a = BitString::from_uint(idx / outputs, instance.k);
    const auto b = BitString::from_uint(idx % outputs, instance.k);
    return !dj_relation(instance.x, instance.y, a, b);
  });
}

Protocol make_dj_qubit_protocol(std::size_t k) {
  if (k == 0) throw ArgumentError("dj-qubit: k must be at least 1");
  const std::size_t n = std::size_t{1} << k;
  Protocol proto;
  proto.name = "dj-qubit";
  proto.validate = [n](const Input& x, const Input& y) {
    dj_input(x, n, "dj-qubit");
    dj_input(y, n, "dj-qubit");
  };
  proto.promise = [](const Input& x, const Input& y) {
    return dj_promise(std::get<BitString>(x), std::get<BitString>(y));
  };
  proto.body = [k](Session& s, const Input& x, const Input& y) {
    const auto reg = s.allocate_qubits(PartyId::Alice, k);
    s.hadamard(PartyId::Alice, reg);
    s.phase_oracle(PartyId::Alice, reg, SignVector::from_bits(std::get<BitString>(x)));
    s.output(PartyId::Alice, BitString{});
    s.send_qubits(PartyId::Alice, reg);
    s.phase_oracle(PartyId::Bob, reg, SignVector::from_bits(std::get<BitString>(y)));
    s.hadamard(PartyId::Bob, reg);
    s.record_exact_distribution();
    const BitString z = s.measure(PartyId::Bob, reg);
    s.output(PartyId::Bob, BitString(1, z.weight() == 0));
  };
  return proto;
}

ProtocolOutcome dj_qubit_protocol(const DjInstance& instance, std::uint64_t seed) {
  return run(make_dj_qubit_protocol(instance.k), instance.x, instance.y, seed);
}

double dj_qubit_correctness(const DjInstance& instance, const OutcomeDistribution& bob_outcomes) {
  if (bob_outcomes.size() != instance.n()) throw ArgumentError("dj_qubit_correctness: distribution size mismatch");
  const double p_equal = bob_outcomes[0];
  return instance.x == instance.y ? p_equal : 1.0 - p_equal;
}

ScheduleInstance ScheduleInstance::make(BitString x, BitString y) {
  if (x.size() != y.size()) throw ArgumentError("schedule: calendars must have equal length");
  const std::size_t n = x.size();
  if (n == 0 || (n & (n - 1)) != 0) throw ArgumentError("schedule: n = " + std::to_string(n) + " is not a power of two");
  if (ceil_log2(n) + 1 > kMaxQubits) throw CapacityError("schedule: register exceeds the simulator cap");
  return {std::move(x), std::move(y)};
}

GroverSchedule grover_schedule(std::size_t n) {
  const std::size_t k = ceil_log2(n);
  std::size_t root = 1;
  while (root * root < n) ++root;
  // ceil(3 lg n); lg n is an integer for a power of two.
  return {k, root, std::max<std::size_t>(1, 3 * k)};
}

ScheduleAnswer decode_schedule_answer(const BitString& output) {
  if (output.empty()) throw ArgumentError("schedule output is empty");
  if (!output[0]) return std::nullopt;
  std::size_t idx = 0;
  for (std::size_t i = 1; i < output.size(); ++i) idx = (idx << 1) | (output[i] ? 1U : 0U);
  return idx + 1;
}

Protocol make_grover_protocol(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw ArgumentError("grover-schedule: n = " + std::to_string(n) + " is not a power of two");
  const auto plan = grover_schedule(n);
  Protocol proto;
  proto.name = "grover-schedule";
  proto.validate = [n](const Input& x, const Input& y) {
    const auto* bx = std::get_if<BitString>(&x);
    const auto* by = std::get_if<BitString>(&y);
    if (!bx || !by || bx->size() != n || by->size() != n) {
      throw ArgumentError("grover-schedule: calendars must be bit strings of length " + std::to_string(n));
    }
  };
  proto.body = [plan](Session& s, const Input& xi, const Input& yi) {
    const auto& x = std::get<BitString>(xi);
    const auto& y = std::get<BitString>(yi);
    const std::size_t k = plan.index_qubits;
    const auto all = s.allocate_qubits(PartyId::Alice, k + 1);
    const std::vector<std::size_t> index(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
    const std::size_t mark = all.back();
    auto schedule_rng = s.stream(PartyId::Alice, "iterations");

    auto finish = [&](BitString answer) {
      s.output(PartyId::Alice, answer);
      s.output(PartyId::Bob, std::move(answer));
    };

    for (std::size_t round = 0; round < plan.rounds; ++round) {
      const std::size_t iterations = 1 + schedule_rng.below(plan.max_iterations);
      s.hadamard(PartyId::Alice, index);
      for (std::size_t t = 0; t < iterations; ++t) {
        s.indexed_toggle(PartyId::Alice, index, mark, x);
        s.send_qubits(PartyId::Alice, all);
        s.indexed_phase(PartyId::Bob, index, mark, y);
        s.send_qubits(PartyId::Bob, all);
        s.indexed_toggle(PartyId::Alice, index, mark, x);
        s.diffusion(PartyId::Alice, index);
      }
      const BitString measured = s.measure(PartyId::Alice, all);
      std::vector<std::size_t> ones;
      for (std::size_t q = 0; q < all.size(); ++q) {
        if (measured[q]) ones.push_back(all[q]);
      }
      s.pauli_x(PartyId::Alice, ones);

      std::uint64_t candidate = 0;
      for (std::size_t q = 0; q < k; ++q) candidate = (candidate << 1) | (measured[q] ? 1U : 0U);
      BitString claim = BitString::from_uint(candidate, k);
      claim.push_back(x[candidate]);
      const BitString at_bob = s.send_bits(PartyId::Alice, claim);
      std::uint64_t i_bob = 0;
      for (std::size_t q = 0; q < k; ++q) i_bob = (i_bob << 1) | (at_bob[q] ? 1U : 0U);
      const bool bob_free = y[i_bob];
      const bool alice_free = at_bob[k];
      const bool reply = s.send_bits(PartyId::Bob, BitString(1, bob_free))[0];
      if (alice_free && reply) {
        BitString answer(1, true);
        answer.append(BitString::from_uint(candidate, k));
        finish(std::move(answer));
        return;
      }
    }
    finish(BitString(1 + k, false));
  };
  return proto;
}

GroverResult distributed_grover_schedule(const ScheduleInstance& instance, std::uint64_t seed) {
  const auto plan = grover_schedule(instance.n());
  auto outcome = run(make_grover_protocol(instance.n()), instance.x, instance.y, seed);
  GroverResult result;
  result.answer = decode_schedule_answer(outcome.a);
  if (result.answer) {
    const std::size_t i = *result.answer - 1;
    // Soundness is checked, not assumed.
    if (!(instance.x[i] && instance.y[i])) throw std::logic_error("grover-schedule returned an unverified day");
  }
  for (const auto& e : outcome.transcript.events) {
    if (e.kind == EventKind::SendBits && e.actor == PartyId::Bob) ++result.rounds_used;
  }
  result.oracle_calls = outcome.channel.qubits_sent / (2 * (plan.index_qubits + 1));
  result.outcome = std::move(outcome);
  return result;
}

double grover_cost_constant(std::uint64_t qubits_sent, std::size_t n) {
  if (n < 2) throw ArgumentError("grover_cost_constant: n must be at least 2");
  const double lg = std::log2(static_cast<double>(n));
  return static_cast<double>(qubits_sent) / (std::sqrt(static_cast<double>(n)) * lg);
}

}  // namespace ccsim
