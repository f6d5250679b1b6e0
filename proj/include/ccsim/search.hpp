#pragma once

// Exhaustive classical baselines on small tasks.
//
// Success probabilities are distributional (under the task's input weights).
// For a fixed distribution, shared randomness never beats the best
// deterministic strategy, so only deterministic strategies are enumerated.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccsim/bits.hpp"
#include "ccsim/runtime.hpp"

namespace ccsim {

struct TaskSpec {
  std::string name;
  std::vector<std::string> X, Y, A, B;
  std::function<bool(std::size_t x, std::size_t y, std::size_t a, std::size_t b)> relation;
  // Empty means every input pair is on-promise.
  std::function<bool(std::size_t x, std::size_t y)> promise;
  // Row-major |X| x |Y|; empty means uniform over on-promise pairs.
  std::vector<double> weights;
  // Set for the Deutsch-Jozsa relation on n = 2^k bits.
  std::optional<std::size_t> dj_k;

  bool on_promise(std::size_t x, std::size_t y) const { return !promise || promise(x, y); }
  // Normalized weight of (x, y); zero off-promise.
  double weight(std::size_t x, std::size_t y) const;
  // Throws ConfigError on empty sets, negative weights or weights not summing to 1.
  void check() const;
};

TaskSpec make_dj_task(std::size_t k);
// Both parties must output [x = y] on n-bit inputs.
TaskSpec make_equality_task(std::size_t n);

enum class CvdntDistribution { UniformAll, BothNonzero };
// X = Y = {0,1}^2; both parties output x1 y1 + x2 y2 mod 2.
TaskSpec make_cvdnt_task(CvdntDistribution dist);

struct LocalStrategy {
  std::vector<std::size_t> alice_map;  // x -> index into A
  std::vector<std::size_t> bob_map;    // y -> index into B

  friend bool operator==(const LocalStrategy&, const LocalStrategy&) = default;
};

struct StrategyScore {
  double success;     // distributional
  double worst_case;  // minimum over on-promise pairs
};

// Scores a zero-communication strategy from scratch.
StrategyScore evaluate_local(const TaskSpec& task, const LocalStrategy& s);

struct SearchLimits {
  std::uint64_t max_enumeration = std::uint64_t{1} << 22;  // local maps tried
  std::size_t max_inputs_per_party = 8;                    // protocol-tree search
  std::uint64_t max_backtrack_nodes = 50'000'000;          // DJ coloring search
};

struct ZeroCommResult {
  LocalStrategy strategy;
  double success = 0.0;
  double worst_case = 0.0;
  bool perfect = false;
  std::string method;  // "exhaustive" or "dj-coloring"
};

ZeroCommResult best_zero_comm(const TaskSpec& task, const SearchLimits& limits = {});

// ---- Deutsch-Jozsa coloring -------------------------------------------------

enum class ColoringStatus { Found, Impossible, BudgetExhausted };

struct ColoringResult {
  ColoringStatus status;
  std::vector<std::size_t> colors;  // colors[x] for x in {0,1}^n when Found
  std::uint64_t nodes = 0;
};

// Colors {0,1}^n, n = 2^k, with 2^k colors so that strings at distance n/2
// get different colors. Backtracking with saturation ordering.
ColoringResult dj_coloring_search(std::size_t k, std::uint64_t node_budget);

// ---- bounded communication ----------------------------------------------------

struct ProtocolTree {
  struct Node {
    bool leaf = true;
    PartyId speaker = PartyId::Alice;
    std::vector<std::uint8_t> message;  // speaker's input -> bit sent
    std::array<std::size_t, 2> child{};
    std::vector<std::size_t> alice_output;  // leaf: x -> index into A
    std::vector<std::size_t> bob_output;    // leaf: y -> index into B
  };

  std::vector<Node> nodes;  // nodes[0] is the root

  // Longest root-leaf path, which is the worst-case number of bits sent.
  std::size_t depth() const;
  // Walks the tree on (x, y); returns (a, b, bits communicated).
  std::array<std::size_t, 3> execute(std::size_t x, std::size_t y) const;
};

struct BoundedCommResult {
  ProtocolTree tree;
  double success = 0.0;
};

// Exact optimum over deterministic protocol trees of depth <= budget.
BoundedCommResult best_bounded_comm(const TaskSpec& task, std::size_t budget, const SearchLimits& limits = {});

// Scores a protocol tree from scratch by running it on every input pair.
double evaluate_tree(const TaskSpec& task, const ProtocolTree& tree);

// ---- CHSH / local polytope ------------------------------------------------------

// Required P(a = b | x, y) for binary inputs, ordered (0,0), (0,1), (1,0), (1,1).
struct CorrelationVector {
  std::array<double, 4> p_equal{};
};

// x in {0, pi/6}, y in {0, 5pi/6}, P(a = b) = cos^2(x - y).
CorrelationVector epr_restricted_correlations();

struct DeterministicLocal {
  std::array<std::uint8_t, 2> a{};  // a[x]
  std::array<std::uint8_t, 2> b{};  // b[y]
};

struct ChshResult {
  bool feasible = false;
  std::array<double, 4> correlators{};  // E = 2 P(a = b) - 1
  double max_chsh = 0.0;                // max over the four sign placements of |S|
  std::size_t minus_position = 3;       // placement attaining max_chsh
  // Feasible: exact convex weights over the 16 deterministic strategies.
  std::vector<std::pair<DeterministicLocal, std::string>> combination;
  // Infeasible: the violated inequality and its value.
  std::string violated_inequality;
};

ChshResult chsh_feasibility(const CorrelationVector& required);

// Max |S| of each of the 16 deterministic strategies.
std::vector<double> deterministic_chsh_values();

}  // namespace ccsim
