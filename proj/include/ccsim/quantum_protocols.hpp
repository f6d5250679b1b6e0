#pragma once

// Quantum protocols: the EPR task on a shared |Phi+>, Deutsch-Jozsa pseudo
// telepathy on k shared pairs, the k-qubit one-way promise-equality protocol
// and the distributed Grover search for a common free day.

#include <cstdint>
#include <optional>

#include "ccsim/bits.hpp"
#include "ccsim/runtime.hpp"

namespace ccsim {

// ---- EPR task --------------------------------------------------------------

// Angles in [0, pi]. Each party rotates its half of |Phi+> by its angle and
// measures; zero communication.
Protocol make_epr_quantum_protocol();
ProtocolOutcome epr_task_quantum(double x, double y, std::uint64_t seed);

struct EprStatistics {
  double p_equal;   // P(a = b)
  double p_a_zero;  // P(a = 0)
  double p_b_zero;  // P(b = 0)
};

// Reads the statistics off a 2-qubit joint distribution (a = qubit 0).
EprStatistics epr_statistics(const OutcomeDistribution& joint);

// ---- Deutsch-Jozsa relation -------------------------------------------------

struct DjInstance {
  std::size_t k;
  BitString x;
  BitString y;

  // Throws ArgumentError unless both strings have length 2^k.
  static DjInstance make(std::size_t k, BitString x, BitString y);
  std::size_t n() const noexcept { return std::size_t{1} << k; }
  bool promise_holds() const;
};

// (x, y, a, b) is in the relation: x = y and a = b, or distance n/2 and
// a != b, or the promise fails.
bool dj_relation(const BitString& x, const BitString& y, const BitString& a, const BitString& b);

Protocol make_dj_pseudo_telepathy_protocol(std::size_t k);
ProtocolOutcome dj_pseudo_telepathy(const DjInstance& instance, std::uint64_t seed = 0);

// Probability mass the joint distribution (index a * 2^k + b) puts on output
// pairs outside the relation.
double dj_forbidden_mass(const DjInstance& instance, const OutcomeDistribution& joint);

// Alice prepares the k-qubit fingerprint of x and sends it; Bob applies y's
// phases and Walsh-Hadamard, and declares Equal iff he measures 0^k.
Protocol make_dj_qubit_protocol(std::size_t k);
ProtocolOutcome dj_qubit_protocol(const DjInstance& instance, std::uint64_t seed = 0);

// Probability that the verdict is correct, from Bob's outcome distribution.
double dj_qubit_correctness(const DjInstance& instance, const OutcomeDistribution& bob_outcomes);

// ---- distributed Grover -----------------------------------------------------

struct ScheduleInstance {
  BitString x;
  BitString y;

  static ScheduleInstance make(BitString x, BitString y);
  std::size_t n() const noexcept { return x.size(); }
};

struct GroverSchedule {
  std::size_t index_qubits;    // ceil(lg n)
  std::size_t max_iterations;  // ceil(sqrt n); per-round count is uniform in [1, this]
  std::size_t rounds;          // ceil(3 lg n), at least 1
};
GroverSchedule grover_schedule(std::size_t n);

// 1-based day index, or nothing.
using ScheduleAnswer = std::optional<std::size_t>;

struct GroverResult {
  ScheduleAnswer answer;
  ProtocolOutcome outcome;
  std::size_t rounds_used = 0;
  std::size_t oracle_calls = 0;
};

// Outputs of both parties: found flag followed by the day index minus one in
// index_qubits bits.
Protocol make_grover_protocol(std::size_t n);
GroverResult distributed_grover_schedule(const ScheduleInstance& instance, std::uint64_t seed);
ScheduleAnswer decode_schedule_answer(const BitString& output);

// qubits_sent / (sqrt(n) lg n).
double grover_cost_constant(std::uint64_t qubits_sent, std::size_t n);

}  // namespace ccsim
