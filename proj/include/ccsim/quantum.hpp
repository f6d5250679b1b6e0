#pragma once

// Dense state-vector simulation for the handful of qubits the protocols need.
//
// Basis ordering: qubit 0 is the most significant bit of the basis index, so
// on m qubits the basis index of |q0 q1 ... q(m-1)> is q0*2^(m-1) + ... + q(m-1).
// All gate functions take the state by value and return the updated state.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ccsim/bits.hpp"
#include "ccsim/rng.hpp"

namespace ccsim {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 20;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kIdentityTolerance = 1e-12;

class StateVector {
 public:
  // |0...0> on num_qubits qubits.
  explicit StateVector(std::size_t num_qubits);
  // Takes ownership of explicit amplitudes; length must be a power of two and
  // the vector must be normalized within kNormTolerance.
  explicit StateVector(std::vector<Amplitude> amplitudes);

  static StateVector basis(std::size_t num_qubits, std::uint64_t index);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm_squared() const noexcept;

  // Tensor product: this register first (high-order qubits), then `other`.
  StateVector tensor(const StateVector& other) const;

  std::span<Amplitude> mutable_amplitudes() noexcept { return amplitudes_; }

 private:
  std::size_t num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

// Signs (+1/-1) indexed by the value i of a k-qubit register; built from an
// n = 2^k bit input as (-1)^{x_i}.
class SignVector {
 public:
  explicit SignVector(std::vector<int> signs);
  static SignVector from_bits(const BitString& x);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }

 private:
  std::vector<int> signs_;
};

class OutcomeDistribution {
 public:
  explicit OutcomeDistribution(std::vector<double> probabilities);

  std::size_t size() const noexcept { return probabilities_.size(); }
  double operator[](std::size_t i) const { return probabilities_[i]; }
  std::span<const double> probabilities() const noexcept { return probabilities_; }

  // Total mass on outcomes for which pred(index) is true.
  template <typename Pred>
  double mass_where(Pred pred) const {
    double total = 0.0;
    for (std::size_t i = 0; i < probabilities_.size(); ++i) {
      if (pred(i)) total += probabilities_[i];
    }
    return total;
  }

 private:
  std::vector<double> probabilities_;
};

// sum_z 2^{-k/2} |z, z> on 2k qubits: the first k qubits are one party's
// halves of k |Phi+> pairs, the last k the other party's.
StateVector new_entangled_pairs(std::size_t k);

StateVector apply_hadamard(StateVector state, std::span<const std::size_t> qubits);
StateVector apply_hadamard(StateVector state, std::initializer_list<std::size_t> qubits);

// Multiplies every amplitude whose register reads i by signs[i]. The register
// is read with its first listed qubit as most significant bit.
StateVector apply_phase_oracle(StateVector state, std::span<const std::size_t> reg, const SignVector& signs);

// Bit flip on each listed qubit.
StateVector apply_pauli_x(StateVector state, std::span<const std::size_t> qubits);

// Real-plane rotation by -angle: measuring the rotated qubit in the
// computational basis is measuring the original at polarization `angle`.
StateVector apply_rotation(StateVector state, std::size_t qubit, double angle);

// Flips `target` on every basis state whose register value i has mask[i] = 1.
StateVector apply_indexed_toggle(StateVector state, std::span<const std::size_t> reg, std::size_t target,
                                 const BitString& mask);

// Negates every basis state with `control` = 1 and mask[register value] = 1.
StateVector apply_indexed_phase(StateVector state, std::span<const std::size_t> reg, std::size_t control,
                                const BitString& mask);

// Grover diffusion 2|s><s| - I on the register, |s> the uniform superposition.
StateVector apply_diffusion(StateVector state, std::span<const std::size_t> reg);

OutcomeDistribution outcome_distribution(const StateVector& state);

// Samples a basis index by an inverse-CDF walk; returned as num_qubits bits.
BitString measure_all(const StateVector& state, RandomStream& rng);

struct PartialMeasurement {
  BitString outcome;  // one bit per measured qubit, in the order given
  StateVector post_state;
};

// Measures the listed qubits and collapses the state onto the observed values.
PartialMeasurement measure_qubits(StateVector state, std::span<const std::size_t> qubits, RandomStream& rng);

}  // namespace ccsim
