#pragma once

// Two-party protocol execution with resource accounting.
//
// A run has two phases. During initialization the parties share random bit
// strings, random reals and entangled pairs; none of that is counted. The
// main phase starts when the inputs arrive: from then on every classical bit
// and every qubit that crosses between the parties is counted, and every
// local quantum operation must touch only qubits the acting party holds.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ccsim/bits.hpp"
#include "ccsim/quantum.hpp"
#include "ccsim/rng.hpp"

namespace ccsim {

enum class PartyId : std::uint8_t { Alice = 0, Bob = 1 };

constexpr PartyId other(PartyId p) noexcept { return p == PartyId::Alice ? PartyId::Bob : PartyId::Alice; }
std::string_view to_string(PartyId p) noexcept;

struct RealInterval {
  double lo = 0.0;
  double hi = 1.0;
};

// What the initialization phase must establish.
struct SetupSpec {
  std::vector<std::size_t> bit_string_lengths;  // one entry per shared string
  std::vector<RealInterval> real_intervals;     // one entry per shared real, drawn from the open interval
  std::size_t ebits = 0;

  SetupSpec& with_bits(std::size_t count, std::size_t length);
  SetupSpec& with_reals(std::size_t count, RealInterval interval);
  SetupSpec& with_ebits(std::size_t k);
};

struct SharedSetup {
  std::vector<BitString> shared_bits;
  std::vector<double> shared_reals;
  std::optional<StateVector> entangled_state;
  std::vector<PartyId> ownership;  // ownership[q] holds qubit q
  std::size_t ebits = 0;
};

// Deterministic in (spec, seed). With k ebits the state is
// new_entangled_pairs(k): qubits 0..k-1 go to Alice, k..2k-1 to Bob.
SharedSetup setup(const SetupSpec& spec, std::uint64_t seed);

struct Channel {
  std::uint64_t classical_bits_sent = 0;
  std::uint64_t qubits_sent = 0;
  std::array<std::uint64_t, 2> bits_from{};    // indexed by PartyId
  std::array<std::uint64_t, 2> qubits_from{};

  friend bool operator==(const Channel&, const Channel&) = default;
};

enum class EventKind : std::uint8_t { SendBits, SendQubits, LocalOp, Measure, Output };
std::string_view to_string(EventKind k) noexcept;

struct Event {
  std::size_t step = 0;
  PartyId actor = PartyId::Alice;
  EventKind kind = EventKind::LocalOp;
  std::size_t payload_bits = 0;  // bits for SendBits, qubits for SendQubits
  std::string summary;
  std::vector<std::size_t> qubits;  // qubits touched, sent or measured
  Channel counters;                 // channel state after the event

  friend bool operator==(const Event&, const Event&) = default;
};

struct Transcript {
  std::vector<Event> events;

  // One JSON object per line, fields: step, actor, kind, payload_bits,
  // summary, qubits, counters.
  std::string to_ndjson() const;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct ProtocolOutcome {
  BitString a;
  BitString b;
  Channel channel;
  Transcript transcript;
  std::optional<bool> promise_holds;
  std::size_t ebits = 0;
  // Joint distribution of the final measurement, when the protocol recorded
  // one just before measuring.
  std::optional<OutcomeDistribution> exact_distribution;
};

class Session {
 public:
  Session(SharedSetup shared, std::uint64_t seed);

  const SharedSetup& shared() const noexcept { return shared_; }
  bool in_main_phase() const noexcept { return main_phase_; }
  void begin_main_phase() noexcept { main_phase_ = true; }

  // Derived stream for (party, purpose); repeated requests get fresh streams.
  RandomStream stream(PartyId party, std::string_view purpose);

  // Classical transmission: counts payload.size() bits. Returns the payload
  // as received by the other party.
  BitString send_bits(PartyId from, const BitString& payload);

  // Hands the listed qubits to the other party.
  void send_qubits(PartyId from, std::span<const std::size_t> qubits);

  // Prepares `count` fresh |0> qubits held by `owner`; returns their indices.
  std::vector<std::size_t> allocate_qubits(PartyId owner, std::size_t count);

  void hadamard(PartyId actor, std::span<const std::size_t> qubits);
  void phase_oracle(PartyId actor, std::span<const std::size_t> reg, const SignVector& signs);
  void pauli_x(PartyId actor, std::span<const std::size_t> qubits);
  void rotate(PartyId actor, std::size_t qubit, double angle);
  void indexed_toggle(PartyId actor, std::span<const std::size_t> reg, std::size_t target, const BitString& mask);
  void indexed_phase(PartyId actor, std::span<const std::size_t> reg, std::size_t control, const BitString& mask);
  void diffusion(PartyId actor, std::span<const std::size_t> reg);
  BitString measure(PartyId actor, std::span<const std::size_t> qubits);

  // Records a classical local computation.
  void local_op(PartyId actor, std::string summary);

  // Stores the current joint outcome distribution in the outcome.
  void record_exact_distribution();

  void output(PartyId actor, BitString value);

  const Channel& channel() const noexcept { return channel_; }
  const Transcript& transcript() const noexcept { return transcript_; }
  const std::optional<StateVector>& quantum_state() const noexcept { return shared_.entangled_state; }
  PartyId owner(std::size_t qubit) const;

  // Requires both outputs; consumes the session.
  ProtocolOutcome finish() &&;

 private:
  void require_main(const char* op) const;
  void require_owned(PartyId actor, std::span<const std::size_t> qubits, const char* op) const;
  StateVector& state(const char* op);
  void record(PartyId actor, EventKind kind, std::size_t payload, std::string summary,
              std::vector<std::size_t> qubits = {});

  SharedSetup shared_;
  std::uint64_t seed_;
  bool main_phase_ = false;
  Channel channel_;
  Transcript transcript_;
  std::vector<std::pair<std::string, std::uint64_t>> stream_counters_;
  std::array<std::optional<BitString>, 2> outputs_;
  std::optional<OutcomeDistribution> exact_;
};

// Inputs are bit strings or real angles, depending on the protocol.
using Input = std::variant<BitString, double>;
std::string describe(const Input& in);

struct Protocol {
  std::string name;
  bool zero_communication = false;
  SetupSpec setup_spec;
  // Throws ArgumentError on inputs outside the protocol's domain.
  std::function<void(const Input& x, const Input& y)> validate;
  // Evaluated and recorded, never enforced.
  std::function<bool(const Input& x, const Input& y)> promise;
  // Optional pre-input work; no communication allowed.
  std::function<void(Session&)> initialize;
  std::function<void(Session&, const Input& x, const Input& y)> body;
};

ProtocolOutcome run(const Protocol& protocol, const Input& x, const Input& y, std::uint64_t seed);

// Runs the main phase against a caller-supplied setup (exhaustive enumeration
// over shared randomness goes through here).
ProtocolOutcome run_with_setup(const Protocol& protocol, SharedSetup shared, const Input& x, const Input& y,
                               std::uint64_t seed);

// Counters recomputed from the event log alone.
Channel count_from_transcript(const Transcript& t);

// Replays ownership from the initial map and checks that every local
// operation and measurement touched only qubits held by the actor, that sends
// came from the holder, and that counters never decrease. Returns an empty
// string when valid, otherwise a description of the first violation.
std::string check_transcript(const std::vector<PartyId>& initial_ownership, const Transcript& t);

}  // namespace ccsim
