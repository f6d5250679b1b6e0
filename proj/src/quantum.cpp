#include "ccsim/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccsim/errors.hpp"

namespace ccsim {
namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t qubit_mask(std::size_t num_qubits, std::size_t qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubits(const StateVector& s, std::span<const std::size_t> qubits, const char* op) {
  std::vector<bool> seen(s.num_qubits(), false);
  for (auto q : qubits) {
    if (q >= s.num_qubits()) {
      throw ArgumentError(std::string(op) + ": qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(s.num_qubits()) + " qubits");
    }
    if (seen[q]) throw ArgumentError(std::string(op) + ": duplicate qubit index " + std::to_string(q));
    seen[q] = true;
  }
}

// Basis-index offset contributed by each register value.
std::vector<std::size_t> register_offsets(std::size_t num_qubits, std::span<const std::size_t> reg) {
  const std::size_t k = reg.size();
  std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    std::size_t off = 0;
    for (std::size_t t = 0; t < k; ++t) {
      if ((i >> (k - 1 - t)) & 1U) off |= qubit_mask(num_qubits, reg[t]);
    }
    offsets[i] = off;
  }
  return offsets;
}

std::size_t register_value(std::size_t index, std::size_t num_qubits, std::span<const std::size_t> reg) {
  std::size_t v = 0;
  for (auto q : reg) v = (v << 1) | ((index & qubit_mask(num_qubits, q)) ? 1U : 0U);
  return v;
}

std::size_t sample_index(std::span<const double> probs, RandomStream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_nonzero = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  // Rounding left u beyond the accumulated mass.
  return last_nonzero;
}

}  // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) throw ArgumentError("state vector needs at least one qubit");
  if (num_qubits > kMaxQubits) {
    throw CapacityError("state vector of " + std::to_string(num_qubits) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::vector<Amplitude> amplitudes) : num_qubits_(0), amplitudes_(std::move(amplitudes)) {
  if (!is_power_of_two(amplitudes_.size()) || amplitudes_.size() < 2) {
    throw ArgumentError("amplitude count must be a power of two, at least 2");
  }
  while ((std::size_t{1} << num_qubits_) < amplitudes_.size()) ++num_qubits_;
  if (num_qubits_ > kMaxQubits) throw CapacityError("state vector exceeds the qubit cap");
  for (const auto& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ArgumentError("non-finite amplitude");
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) throw ArgumentError("amplitudes are not normalized");
}

StateVector StateVector::basis(std::size_t num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dimension()) throw ArgumentError("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const noexcept {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

StateVector StateVector::tensor(const StateVector& other) const {
  StateVector out(num_qubits_ + other.num_qubits_);
  const std::size_t low = other.dimension();
  for (std::size_t i = 0; i < dimension(); ++i) {
    for (std::size_t j = 0; j < low; ++j) out.amplitudes_[i * low + j] = amplitudes_[i] * other.amplitudes_[j];
  }
  return out;
}

SignVector::SignVector(std::vector<int> signs) : signs_(std::move(signs)) {
  for (int s : signs_) {
    if (s != 1 && s != -1) throw ArgumentError("sign vector entries must be +1 or -1");
  }
}

SignVector SignVector::from_bits(const BitString& x) {
  std::vector<int> signs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) signs[i] = x[i] ? -1 : 1;
  return SignVector(std::move(signs));
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0 && p <= 1.0 + kNormTolerance)) throw ArgumentError("probability outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance) throw ArgumentError("probabilities do not sum to 1");
}

StateVector new_entangled_pairs(std::size_t k) {
  if (k == 0) throw ArgumentError("new_entangled_pairs: k must be at least 1");
  if (2 * k > kMaxQubits) {
    throw CapacityError("new_entangled_pairs: " + std::to_string(2 * k) + " qubits exceeds the cap of " +
                        std::to_string(kMaxQubits));
  }
  StateVector s(2 * k);
  auto amps = s.mutable_amplitudes();
  amps[0] = 0.0;
  const double c = std::pow(2.0, -0.5 * static_cast<double>(k));
  const std::size_t half = std::size_t{1} << k;
  for (std::size_t z = 0; z < half; ++z) amps[z * half + z] = c;
  return s;
}

StateVector apply_hadamard(StateVector state, std::span<const std::size_t> qubits) {
  check_qubits(state, qubits, "apply_hadamard");
  const double h = 1.0 / std::sqrt(2.0);
  auto amps = state.mutable_amplitudes();
  for (auto q : qubits) {
    const std::size_t bit = qubit_mask(state.num_qubits(), q);
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if (j & bit) continue;
      const Amplitude a0 = amps[j];
      const Amplitude a1 = amps[j | bit];
      amps[j] = h * (a0 + a1);
      amps[j | bit] = h * (a0 - a1);
    }
  }
  return state;
}

StateVector apply_hadamard(StateVector state, std::initializer_list<std::size_t> qubits) {
  return apply_hadamard(std::move(state), std::span<const std::size_t>(qubits.begin(), qubits.size()));
}

StateVector apply_phase_oracle(StateVector state, std::span<const std::size_t> reg, const SignVector& signs) {
  check_qubits(state, reg, "apply_phase_oracle");
  if (signs.size() != (std::size_t{1} << reg.size())) {
    throw ArgumentError("apply_phase_oracle: " + std::to_string(signs.size()) + " signs for a " +
                        std::to_string(reg.size()) + "-qubit register");
  }
  auto amps = state.mutable_amplitudes();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    if (signs[register_value(j, state.num_qubits(), reg)] < 0) amps[j] = -amps[j];
  }
  return state;
}

StateVector apply_pauli_x(StateVector state, std::span<const std::size_t> qubits) {
  check_qubits(state, qubits, "apply_pauli_x");
  auto amps = state.mutable_amplitudes();
  for (auto q : qubits) {
    const std::size_t bit = qubit_mask(state.num_qubits(), q);
    for (std::size_t j = 0; j < amps.size(); ++j) {
      if (!(j & bit)) std::swap(amps[j], amps[j | bit]);
    }
  }
  return state;
}

StateVector apply_rotation(StateVector state, std::size_t qubit, double angle) {
  const std::size_t q[] = {qubit};
  check_qubits(state, q, "apply_rotation");
  const double theta = -angle;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::size_t bit = qubit_mask(state.num_qubits(), qubit);
  auto amps = state.mutable_amplitudes();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    if (j & bit) continue;
    const Amplitude a0 = amps[j];
    const Amplitude a1 = amps[j | bit];
    amps[j] = c * a0 - s * a1;
    amps[j | bit] = s * a0 + c * a1;
  }
  return state;
}

StateVector apply_indexed_toggle(StateVector state, std::span<const std::size_t> reg, std::size_t target,
                                 const BitString& mask) {
  check_qubits(state, reg, "apply_indexed_toggle");
  if (std::find(reg.begin(), reg.end(), target) != reg.end() || target >= state.num_qubits()) {
    throw ArgumentError("apply_indexed_toggle: invalid target qubit");
  }
  if (mask.size() != (std::size_t{1} << reg.size())) throw ArgumentError("apply_indexed_toggle: mask length");
  const std::size_t bit = qubit_mask(state.num_qubits(), target);
  auto amps = state.mutable_amplitudes();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    if (j & bit) continue;
    if (mask[register_value(j, state.num_qubits(), reg)]) std::swap(amps[j], amps[j | bit]);
  }
  return state;
}

StateVector apply_indexed_phase(StateVector state, std::span<const std::size_t> reg, std::size_t control,
                                const BitString& mask) {
  check_qubits(state, reg, "apply_indexed_phase");
  if (std::find(reg.begin(), reg.end(), control) != reg.end() || control >= state.num_qubits()) {
    throw ArgumentError("apply_indexed_phase: invalid control qubit");
  }
  if (mask.size() != (std::size_t{1} << reg.size())) throw ArgumentError("apply_indexed_phase: mask length");
  const std::size_t bit = qubit_mask(state.num_qubits(), control);
  auto amps = state.mutable_amplitudes();
  for (std::size_t j = 0; j < amps.size(); ++j) {
    if ((j & bit) && mask[register_value(j, state.num_qubits(), reg)]) amps[j] = -amps[j];
  }
  return state;
}

StateVector apply_diffusion(StateVector state, std::span<const std::size_t> reg) {
  check_qubits(state, reg, "apply_diffusion");
  const auto offsets = register_offsets(state.num_qubits(), reg);
  std::size_t reg_bits = 0;
  for (auto q : reg) reg_bits |= qubit_mask(state.num_qubits(), q);
  auto amps = state.mutable_amplitudes();
  const double inv = 1.0 / static_cast<double>(offsets.size());
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & reg_bits) continue;
    Amplitude mean = 0.0;
    for (auto off : offsets) mean += amps[base | off];
    mean *= inv;
    for (auto off : offsets) amps[base | off] = 2.0 * mean - amps[base | off];
  }
  return state;
}

OutcomeDistribution outcome_distribution(const StateVector& state) {
  std::vector<double> probs(state.dimension());
  for (std::size_t j = 0; j < probs.size(); ++j) probs[j] = std::norm(state[j]);
  return OutcomeDistribution(std::move(probs));
}

BitString measure_all(const StateVector& state, RandomStream& rng) {
  std::vector<double> probs(state.dimension());
  for (std::size_t j = 0; j < probs.size(); ++j) probs[j] = std::norm(state[j]);
  return BitString::from_uint(sample_index(probs, rng), state.num_qubits());
}

PartialMeasurement measure_qubits(StateVector state, std::span<const std::size_t> qubits, RandomStream& rng) {
  check_qubits(state, qubits, "measure_qubits");
  const std::size_t m = state.num_qubits();
  std::vector<double> marginal(std::size_t{1} << qubits.size(), 0.0);
  auto amps = state.mutable_amplitudes();
  for (std::size_t j = 0; j < amps.size(); ++j) marginal[register_value(j, m, qubits)] += std::norm(amps[j]);

  const std::size_t observed = sample_index(marginal, rng);
  const double scale = 1.0 / std::sqrt(marginal[observed]);
  for (std::size_t j = 0; j < amps.size(); ++j) {
    if (register_value(j, m, qubits) == observed) {
      amps[j] *= scale;
    } else {
      amps[j] = 0.0;
    }
  }
  return {BitString::from_uint(observed, qubits.size()), std::move(state)};
}

}  // namespace ccsim
