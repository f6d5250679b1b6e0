#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ccsim/errors.hpp"
#include "ccsim/quantum.hpp"

using namespace ccsim;

namespace {

constexpr double kTol = 1e-12;

StateVector random_state(std::size_t qubits, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Amplitude> amps(std::size_t{1} << qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  return StateVector(std::move(amps));
}

double distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(StateVector, StartsInAllZeros) {
  StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_NEAR(s[0].real(), 1.0, kTol);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(s[i], Amplitude(0.0));
}

TEST(StateVector, RejectsBadConstruction) {
  EXPECT_THROW(StateVector(std::vector<Amplitude>{1.0, 0.0, 0.0}), ArgumentError);
  EXPECT_THROW(StateVector(std::vector<Amplitude>{1.0, 1.0}), ArgumentError);
  EXPECT_THROW(StateVector(std::size_t{0}), ArgumentError);
  EXPECT_THROW(StateVector(kMaxQubits + 1), CapacityError);
}

TEST(StateVector, TensorPutsOtherInLowOrderQubits) {
  const auto s = StateVector::basis(1, 1).tensor(StateVector::basis(2, 2));
  // |1>|10> = |110> = index 6
  EXPECT_NEAR(std::abs(s[6]), 1.0, kTol);
}

TEST(EntangledPairs, OnePairIsPhiPlus) {
  const auto s = new_entangled_pairs(1);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s[0].real(), h, kTol);
  EXPECT_NEAR(std::abs(s[1]), 0.0, kTol);
  EXPECT_NEAR(std::abs(s[2]), 0.0, kTol);
  EXPECT_NEAR(s[3].real(), h, kTol);
}

TEST(EntangledPairs, TwoPairsPairQubitIWithKPlusI) {
  const auto s = new_entangled_pairs(2);
  // nonzero exactly on |z, z>: indices z*4 + z
  for (std::size_t i = 0; i < 16; ++i) {
    const bool diag = (i >> 2) == (i & 3);
    EXPECT_NEAR(std::abs(s[i]), diag ? 0.5 : 0.0, kTol) << i;
  }
}

TEST(EntangledPairs, Bounds) {
  EXPECT_THROW(new_entangled_pairs(0), ArgumentError);
  EXPECT_THROW(new_entangled_pairs(kMaxQubits / 2 + 1), CapacityError);
}

TEST(Gates, HadamardOnZero) {
  const auto s = apply_hadamard(StateVector(1), {0});
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), kTol);
  EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), kTol);
}

TEST(Gates, HadamardIsInvolution) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = random_state(4, seed);
    const std::vector<std::size_t> q{0, 2, 3};
    const auto t = apply_hadamard(apply_hadamard(s, q), q);
    EXPECT_LT(distance(s, t), kTol);
  }
}

TEST(Gates, PreserveNorm) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = random_state(4, seed);
    const std::vector<std::size_t> reg{1, 2};
    s = apply_hadamard(s, {0, 3});
    s = apply_phase_oracle(s, reg, SignVector::from_bits(BitString{1, 0, 0, 1}));
    s = apply_rotation(s, 2, 0.37 * static_cast<double>(seed));
    s = apply_indexed_toggle(s, reg, 0, BitString{0, 1, 1, 0});
    s = apply_indexed_phase(s, reg, 3, BitString{1, 1, 0, 0});
    s = apply_diffusion(s, reg);
    EXPECT_NEAR(s.norm_squared(), 1.0, kNormTolerance);
  }
}

TEST(Gates, RotationSignConvention) {
  // angle pi/2 takes |0> to -|1>
  const auto s = apply_rotation(StateVector(1), 0, std::numbers::pi / 2);
  EXPECT_NEAR(std::abs(s[0]), 0.0, kTol);
  EXPECT_NEAR(s[1].real(), -1.0, kTol);
}

TEST(Gates, RotationsAdd) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = random_state(2, seed);
    const double a = 0.3 * static_cast<double>(seed), b = 1.1;
    EXPECT_LT(distance(apply_rotation(apply_rotation(s, 1, a), 1, b), apply_rotation(s, 1, a + b)), kTol);
  }
}

TEST(Gates, PhaseOracleReadsFirstQubitAsMsb) {
  auto s = apply_hadamard(StateVector(2), {0, 1});
  s = apply_phase_oracle(s, std::vector<std::size_t>{0, 1}, SignVector::from_bits(BitString{0, 0, 1, 0}));
  EXPECT_NEAR(s[2].real(), -0.5, kTol);
  EXPECT_NEAR(s[1].real(), 0.5, kTol);
  // reversed register order reads index 2 as qubit1=1, qubit0=0
  auto r = apply_hadamard(StateVector(2), {0, 1});
  r = apply_phase_oracle(r, std::vector<std::size_t>{1, 0}, SignVector::from_bits(BitString{0, 0, 1, 0}));
  EXPECT_NEAR(r[1].real(), -0.5, kTol);
}

TEST(Gates, DiffusionAmplifiesMarkedItem) {
  // one Grover iteration on 2 qubits finds the marked item with certainty
  const std::vector<std::size_t> reg{0, 1};
  auto s = apply_hadamard(StateVector(2), reg);
  s = apply_phase_oracle(s, reg, SignVector::from_bits(BitString{0, 0, 0, 1}));
  s = apply_diffusion(s, reg);
  EXPECT_NEAR(std::norm(s[3]), 1.0, kTol);
}

TEST(Gates, IndexedToggleFlipsTargetOnMask) {
  // register qubits 0,1 in |10>, target qubit 2
  const auto s = apply_indexed_toggle(StateVector::basis(3, 4), std::vector<std::size_t>{0, 1}, 2,
                                      BitString{0, 0, 1, 0});
  EXPECT_NEAR(std::abs(s[5]), 1.0, kTol);
}

TEST(Gates, RejectDuplicateOrOutOfRangeQubits) {
  EXPECT_THROW(apply_hadamard(StateVector(2), {0, 0}), ArgumentError);
  EXPECT_THROW(apply_hadamard(StateVector(2), {2}), ArgumentError);
  EXPECT_THROW(apply_phase_oracle(StateVector(2), std::vector<std::size_t>{0}, SignVector::from_bits(BitString{0, 1, 1, 0})),
               ArgumentError);
}

TEST(Measurement, DistributionIsSquaredMagnitudes) {
  const auto s = apply_rotation(StateVector(1), 0, 0.4);
  const auto d = outcome_distribution(s);
  EXPECT_NEAR(d[0], std::cos(0.4) * std::cos(0.4), kTol);
  EXPECT_NEAR(d[1], std::sin(0.4) * std::sin(0.4), kTol);
}

TEST(Measurement, SampleFrequenciesWithinFiveSigma) {
  const auto s = random_state(3, 99);
  const auto d = outcome_distribution(s);
  RandomStream rng(5);
  constexpr int trials = 200000;
  std::vector<int> counts(8);
  for (int t = 0; t < trials; ++t) ++counts[measure_all(s, rng).to_uint()];
  for (std::size_t i = 0; i < 8; ++i) {
    const double p = d[i];
    const double se = std::sqrt(p * (1 - p) / trials);
    EXPECT_LE(std::abs(counts[i] / double(trials) - p), 5 * se + 1e-12) << i;
  }
}

TEST(Measurement, PartialCollapseOnBellPair) {
  RandomStream rng(17);
  for (int t = 0; t < 50; ++t) {
    auto m = measure_qubits(new_entangled_pairs(1), std::vector<std::size_t>{0}, rng);
    const std::size_t both = m.outcome[0] ? 3 : 0;
    EXPECT_NEAR(std::norm(m.post_state[both]), 1.0, kTol);
    EXPECT_NEAR(m.post_state.norm_squared(), 1.0, kNormTolerance);
  }
}

TEST(Measurement, DeterministicForSeed) {
  const auto s = random_state(4, 3);
  RandomStream a(42), b(42);
  for (int t = 0; t < 100; ++t) EXPECT_EQ(measure_all(s, a), measure_all(s, b));
}
