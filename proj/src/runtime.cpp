#include "ccsim/runtime.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "ccsim/errors.hpp"

namespace ccsim {

std::string_view to_string(PartyId p) noexcept { return p == PartyId::Alice ? "alice" : "bob"; }

std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::SendBits:
      return "send_bits";
    case EventKind::SendQubits:
      return "send_qubits";
    case EventKind::LocalOp:
      return "local_op";
    case EventKind::Measure:
      return "measure";
    case EventKind::Output:
      return "output";
  }
  return "unknown";
}

SetupSpec& SetupSpec::with_bits(std::size_t count, std::size_t length) {
  bit_string_lengths.insert(bit_string_lengths.end(), count, length);
  return *this;
}

SetupSpec& SetupSpec::with_reals(std::size_t count, RealInterval interval) {
  if (!(interval.lo < interval.hi)) throw ArgumentError("shared real interval must have lo < hi");
  real_intervals.insert(real_intervals.end(), count, interval);
  return *this;
}

SetupSpec& SetupSpec::with_ebits(std::size_t k) {
  ebits = k;
  return *this;
}

SharedSetup setup(const SetupSpec& spec, std::uint64_t seed) {
  SharedSetup out;
  RandomStream bits(derive_seed(seed, "init/bits"));
  out.shared_bits.reserve(spec.bit_string_lengths.size());
  for (auto len : spec.bit_string_lengths) {
    BitString s(len);
    for (std::size_t i = 0; i < len; ++i) s.set(i, bits.coin());
    out.shared_bits.push_back(std::move(s));
  }
  RandomStream reals(derive_seed(seed, "init/reals"));
  out.shared_reals.reserve(spec.real_intervals.size());
  for (const auto& iv : spec.real_intervals) {
    double r;
    do {
      r = iv.lo + (iv.hi - iv.lo) * reals.uniform_open();
    } while (!(r > iv.lo && r < iv.hi));
    out.shared_reals.push_back(r);
  }
  if (spec.ebits > 0) {
    out.entangled_state = new_entangled_pairs(spec.ebits);
    out.ownership.assign(2 * spec.ebits, PartyId::Bob);
    std::fill_n(out.ownership.begin(), spec.ebits, PartyId::Alice);
    out.ebits = spec.ebits;
  }
  return out;
}

Session::Session(SharedSetup shared, std::uint64_t seed) : shared_(std::move(shared)), seed_(seed) {
  const std::size_t nq = shared_.entangled_state ? shared_.entangled_state->num_qubits() : 0;
  if (shared_.ownership.size() != nq) throw ArgumentError("ownership map does not cover the shared state");
  transcript_.events.reserve(8);
}

RandomStream Session::stream(PartyId party, std::string_view purpose) {
  std::string tag(to_string(party));
  tag += '/';
  tag += purpose;
  auto it = std::find_if(stream_counters_.begin(), stream_counters_.end(),
                         [&](const auto& e) { return e.first == tag; });
  std::uint64_t counter = 0;
  if (it == stream_counters_.end()) {
    stream_counters_.emplace_back(tag, 1);
  } else {
    counter = it->second++;
  }
  return RandomStream(derive_seed(seed_, tag, counter));
}

void Session::require_main(const char* op) const {
  if (!main_phase_) {
    throw ProtocolMisuse(transcript_.events.size(),
                         std::string(op) + " during the initialization phase; communication happens after inputs");
  }
}

PartyId Session::owner(std::size_t qubit) const {
  if (qubit >= shared_.ownership.size()) throw ArgumentError("no qubit " + std::to_string(qubit));
  return shared_.ownership[qubit];
}

void Session::require_owned(PartyId actor, std::span<const std::size_t> qubits, const char* op) const {
  for (auto q : qubits) {
    if (q >= shared_.ownership.size()) {
      throw ProtocolMisuse(transcript_.events.size(), std::string(op) + ": no qubit " + std::to_string(q));
    }
    if (shared_.ownership[q] != actor) {
      throw ProtocolMisuse(transcript_.events.size(), std::string(op) + ": " + std::string(to_string(actor)) +
                                                          " does not hold qubit " + std::to_string(q));
    }
  }
}

StateVector& Session::state(const char* op) {
  if (!shared_.entangled_state) throw ProtocolMisuse(transcript_.events.size(), std::string(op) + ": no qubits");
  return *shared_.entangled_state;
}

void Session::record(PartyId actor, EventKind kind, std::size_t payload, std::string summary,
                     std::vector<std::size_t> qubits) {
  Event e;
  e.step = transcript_.events.size();
  e.actor = actor;
  e.kind = kind;
  e.payload_bits = payload;
  e.summary = std::move(summary);
  e.qubits = std::move(qubits);
  e.counters = channel_;
  transcript_.events.push_back(std::move(e));
}

BitString Session::send_bits(PartyId from, const BitString& payload) {
  require_main("send_bits");
  channel_.classical_bits_sent += payload.size();
  channel_.bits_from[static_cast<std::size_t>(from)] += payload.size();
  record(from, EventKind::SendBits, payload.size(), payload.str());
  return payload;
}

void Session::send_qubits(PartyId from, std::span<const std::size_t> qubits) {
  require_main("send_qubits");
  require_owned(from, qubits, "send_qubits");
  for (auto q : qubits) shared_.ownership[q] = other(from);
  channel_.qubits_sent += qubits.size();
  channel_.qubits_from[static_cast<std::size_t>(from)] += qubits.size();
  record(from, EventKind::SendQubits, qubits.size(), {}, {qubits.begin(), qubits.end()});
}

std::vector<std::size_t> Session::allocate_qubits(PartyId owner, std::size_t count) {
  if (count == 0) return {};
  std::vector<std::size_t> fresh(count);
  const std::size_t first = shared_.ownership.size();
  for (std::size_t i = 0; i < count; ++i) fresh[i] = first + i;
  if (shared_.entangled_state) {
    shared_.entangled_state = shared_.entangled_state->tensor(StateVector(count));
  } else {
    shared_.entangled_state = StateVector(count);
  }
  shared_.ownership.insert(shared_.ownership.end(), count, owner);
  record(owner, EventKind::LocalOp, 0, "prepare", fresh);
  return fresh;
}

void Session::hadamard(PartyId actor, std::span<const std::size_t> qubits) {
  require_owned(actor, qubits, "hadamard");
  auto& s = state("hadamard");
  s = apply_hadamard(std::move(s), qubits);
  record(actor, EventKind::LocalOp, 0, "hadamard", {qubits.begin(), qubits.end()});
}

void Session::phase_oracle(PartyId actor, std::span<const std::size_t> reg, const SignVector& signs) {
  require_owned(actor, reg, "phase_oracle");
  auto& s = state("phase_oracle");
  s = apply_phase_oracle(std::move(s), reg, signs);
  record(actor, EventKind::LocalOp, 0, "phase_oracle", {reg.begin(), reg.end()});
}

void Session::pauli_x(PartyId actor, std::span<const std::size_t> qubits) {
  require_owned(actor, qubits, "pauli_x");
  auto& s = state("pauli_x");
  s = apply_pauli_x(std::move(s), qubits);
  record(actor, EventKind::LocalOp, 0, "pauli_x", {qubits.begin(), qubits.end()});
}

void Session::rotate(PartyId actor, std::size_t qubit, double angle) {
  const std::size_t q[] = {qubit};
  require_owned(actor, q, "rotate");
  auto& s = state("rotate");
  s = apply_rotation(std::move(s), qubit, angle);
  record(actor, EventKind::LocalOp, 0, "rotate", {qubit});
}

void Session::indexed_toggle(PartyId actor, std::span<const std::size_t> reg, std::size_t target,
                             const BitString& mask) {
  require_owned(actor, reg, "indexed_toggle");
  const std::size_t t[] = {target};
  require_owned(actor, t, "indexed_toggle");
  auto& s = state("indexed_toggle");
  s = apply_indexed_toggle(std::move(s), reg, target, mask);
  std::vector<std::size_t> touched(reg.begin(), reg.end());
  touched.push_back(target);
  record(actor, EventKind::LocalOp, 0, "indexed_toggle", std::move(touched));
}

void Session::indexed_phase(PartyId actor, std::span<const std::size_t> reg, std::size_t control,
                            const BitString& mask) {
  require_owned(actor, reg, "indexed_phase");
  const std::size_t c[] = {control};
  require_owned(actor, c, "indexed_phase");
  auto& s = state("indexed_phase");
  s = apply_indexed_phase(std::move(s), reg, control, mask);
  std::vector<std::size_t> touched(reg.begin(), reg.end());
  touched.push_back(control);
  record(actor, EventKind::LocalOp, 0, "indexed_phase", std::move(touched));
}

void Session::diffusion(PartyId actor, std::span<const std::size_t> reg) {
  require_owned(actor, reg, "diffusion");
  auto& s = state("diffusion");
  s = apply_diffusion(std::move(s), reg);
  record(actor, EventKind::LocalOp, 0, "diffusion", {reg.begin(), reg.end()});
}

BitString Session::measure(PartyId actor, std::span<const std::size_t> qubits) {
  require_owned(actor, qubits, "measure");
  auto& s = state("measure");
  auto rng = stream(actor, "measure");
  auto m = measure_qubits(std::move(s), qubits, rng);
  s = std::move(m.post_state);
  record(actor, EventKind::Measure, 0, m.outcome.str(), {qubits.begin(), qubits.end()});
  return m.outcome;
}

void Session::local_op(PartyId actor, std::string summary) {
  record(actor, EventKind::LocalOp, 0, std::move(summary));
}

void Session::record_exact_distribution() { exact_ = outcome_distribution(state("record_exact_distribution")); }

void Session::output(PartyId actor, BitString value) {
  auto& slot = outputs_[static_cast<std::size_t>(actor)];
  if (slot) throw ProtocolMisuse(transcript_.events.size(), std::string(to_string(actor)) + " output twice");
  record(actor, EventKind::Output, 0, value.str());
  slot = std::move(value);
}

ProtocolOutcome Session::finish() && {
  for (auto p : {PartyId::Alice, PartyId::Bob}) {
    if (!outputs_[static_cast<std::size_t>(p)]) {
      throw ProtocolMisuse(transcript_.events.size(), std::string(to_string(p)) + " produced no output");
    }
  }
  ProtocolOutcome out;
  out.a = std::move(*outputs_[0]);
  out.b = std::move(*outputs_[1]);
  out.channel = channel_;
  out.transcript = std::move(transcript_);
  out.ebits = shared_.ebits;
  out.exact_distribution = std::move(exact_);
  return out;
}

std::string Transcript::to_ndjson() const {
  std::string out;
  for (const auto& e : events) {
    nlohmann::ordered_json j;
    j["step"] = e.step;
    j["actor"] = to_string(e.actor);
    j["kind"] = to_string(e.kind);
    j["payload_bits"] = e.payload_bits;
    j["summary"] = e.summary;
    j["qubits"] = e.qubits;
    j["counters"] = {{"classical_bits_sent", e.counters.classical_bits_sent},
                     {"qubits_sent", e.counters.qubits_sent}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string describe(const Input& in) {
  if (const auto* b = std::get_if<BitString>(&in)) return b->str();
  nlohmann::json j = std::get<double>(in);
  return j.dump();
}

ProtocolOutcome run_with_setup(const Protocol& protocol, SharedSetup shared, const Input& x, const Input& y,
                               std::uint64_t seed) {
  if (protocol.validate) protocol.validate(x, y);
  Session session(std::move(shared), derive_seed(seed, "main"));
  if (protocol.initialize) protocol.initialize(session);
  session.begin_main_phase();
  protocol.body(session, x, y);
  auto outcome = std::move(session).finish();
  if (protocol.promise) outcome.promise_holds = protocol.promise(x, y);
  if (protocol.zero_communication && (outcome.channel.classical_bits_sent != 0 || outcome.channel.qubits_sent != 0)) {
    throw ProtocolMisuse(outcome.transcript.events.size(), protocol.name + " is declared zero-communication but communicated");
  }
  return outcome;
}

ProtocolOutcome run(const Protocol& protocol, const Input& x, const Input& y, std::uint64_t seed) {
  return run_with_setup(protocol, setup(protocol.setup_spec, derive_seed(seed, "setup")), x, y, seed);
}

Channel count_from_transcript(const Transcript& t) {
  Channel c;
  for (const auto& e : t.events) {
    const auto who = static_cast<std::size_t>(e.actor);
    if (e.kind == EventKind::SendBits) {
      c.classical_bits_sent += e.payload_bits;
      c.bits_from[who] += e.payload_bits;
    } else if (e.kind == EventKind::SendQubits) {
      c.qubits_sent += e.qubits.size();
      c.qubits_from[who] += e.qubits.size();
    }
  }
  return c;
}

std::string check_transcript(const std::vector<PartyId>& initial_ownership, const Transcript& t) {
  std::vector<PartyId> owner = initial_ownership;
  Channel prev;
  for (const auto& e : t.events) {
    const std::string where = "step " + std::to_string(e.step) + ": ";
    if (e.counters.classical_bits_sent < prev.classical_bits_sent || e.counters.qubits_sent < prev.qubits_sent) {
      return where + "counters decreased";
    }
    prev = e.counters;
    if (e.kind == EventKind::LocalOp && e.summary == "prepare") {
      for (auto q : e.qubits) {
        if (q != owner.size()) return where + "prepared qubits are not fresh";
        owner.push_back(e.actor);
      }
      continue;
    }
    for (auto q : e.qubits) {
      if (q >= owner.size()) return where + "unknown qubit " + std::to_string(q);
      if (owner[q] != e.actor) {
        return where + std::string(to_string(e.actor)) + " touched qubit " + std::to_string(q) + " it does not hold";
      }
    }
    if (e.kind == EventKind::SendQubits) {
      for (auto q : e.qubits) owner[q] = other(e.actor);
    }
  }
  return {};
}

}  // namespace ccsim
