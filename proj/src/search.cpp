#include "ccsim/search.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "ccsim/errors.hpp"

namespace ccsim {
namespace {

using Exact = boost::multiprecision::cpp_rational;

constexpr double kTie = 1e-12;

std::uint64_t checked_power(std::size_t base, std::size_t exp, std::uint64_t bound) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && v > bound / base) return bound + 1;
    v *= base;
  }
  return v;
}

std::vector<std::string> bit_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n).str());
  return out;
}

// Dense normalized weights, zero off-promise.
std::vector<double> weight_matrix(const TaskSpec& task) {
  const std::size_t nx = task.X.size();
  const std::size_t ny = task.Y.size();
  std::vector<double> w(nx * ny, 0.0);
  if (task.weights.empty()) {
    std::size_t count = 0;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) count += task.on_promise(x, y) ? 1 : 0;
    }
    if (count == 0) throw ConfigError("task", "no input pair satisfies the promise");
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) w[x * ny + y] = task.on_promise(x, y) ? 1.0 / static_cast<double>(count) : 0.0;
    }
    return w;
  }
  double total = 0.0;
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (task.on_promise(x, y)) total += task.weights[x * ny + y];
    }
  }
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      if (task.on_promise(x, y)) w[x * ny + y] = task.weights[x * ny + y] / total;
    }
  }
  return w;
}

// rel[((x * ny + y) * na + a) * nb + b]
std::vector<std::uint8_t> relation_table(const TaskSpec& task) {
  const std::size_t nx = task.X.size(), ny = task.Y.size(), na = task.A.size(), nb = task.B.size();
  const std::uint64_t size = static_cast<std::uint64_t>(nx) * ny * na * nb;
  if (size > (std::uint64_t{1} << 26)) throw CapacityError("relation table too large for exhaustive search");
  std::vector<std::uint8_t> rel(size);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b) rel[((x * ny + y) * na + a) * nb + b] = task.relation(x, y, a, b) ? 1 : 0;
  return rel;
}

TaskSpec transposed(const TaskSpec& t) {
  TaskSpec s;
  s.name = t.name;
  s.X = t.Y;
  s.Y = t.X;
  s.A = t.B;
  s.B = t.A;
  auto rel = t.relation;
  s.relation = [rel](std::size_t x, std::size_t y, std::size_t a, std::size_t b) { return rel(y, x, b, a); };
  if (t.promise) {
    auto pr = t.promise;
    s.promise = [pr](std::size_t x, std::size_t y) { return pr(y, x); };
  }
  if (!t.weights.empty()) {
    s.weights.resize(t.weights.size());
    for (std::size_t x = 0; x < t.X.size(); ++x)
      for (std::size_t y = 0; y < t.Y.size(); ++y) s.weights[y * t.X.size() + x] = t.weights[x * t.Y.size() + y];
  }
  return s;
}

ZeroCommResult exhaustive_zero_comm(const TaskSpec& task, const SearchLimits& limits) {
  const std::size_t nx = task.X.size(), ny = task.Y.size(), na = task.A.size(), nb = task.B.size();
  const auto count = checked_power(na, nx, limits.max_enumeration);
  if (count > limits.max_enumeration) {
    throw CapacityError("zero-communication search space |A|^|X| exceeds the bound " +
                        std::to_string(limits.max_enumeration));
  }
  const auto w = weight_matrix(task);
  const auto rel = relation_table(task);

  ZeroCommResult best;
  best.success = -1.0;
  std::vector<std::size_t> alice(nx, 0);
  std::vector<std::size_t> bob(ny, 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::size_t x = nx; x-- > 0;) {
      alice[x] = c % na;
      c /= na;
    }
    double total = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      double best_y = -1.0;
      for (std::size_t b = 0; b < nb; ++b) {
        double v = 0.0;
        for (std::size_t x = 0; x < nx; ++x) v += w[x * ny + y] * rel[((x * ny + y) * na + alice[x]) * nb + b];
        if (v > best_y + kTie) {
          best_y = v;
          bob[y] = b;
        }
      }
      total += best_y;
    }
    if (total > best.success + kTie) {
      best.success = total;
      best.strategy = {alice, bob};
    }
  }
  best.method = "exhaustive";
  return best;
}

}  // namespace

double TaskSpec::weight(std::size_t x, std::size_t y) const { return weight_matrix(*this)[x * Y.size() + y]; }

void TaskSpec::check() const {
  if (X.empty() || Y.empty() || A.empty() || B.empty()) throw ConfigError(name, "X, Y, A and B must be non-empty");
  if (!relation) throw ConfigError(name, "missing relation");
  if (!weights.empty()) {
    if (weights.size() != X.size() * Y.size()) throw ConfigError(name + ".weights", "expected |X|*|Y| entries");
    double total = 0.0;
    for (std::size_t x = 0; x < X.size(); ++x) {
      for (std::size_t y = 0; y < Y.size(); ++y) {
        const double v = weights[x * Y.size() + y];
        if (!(v >= 0.0)) throw ConfigError(name + ".weights", "weights must be nonnegative");
        if (on_promise(x, y)) total += v;
      }
    }
    if (std::abs(total - 1.0) > 1e-9) throw ConfigError(name + ".weights", "weights must sum to 1 over the support");
  }
}

TaskSpec make_dj_task(std::size_t k) {
  if (k == 0 || k > 3) throw CapacityError("DJ task: k must be 1, 2 or 3");
  const std::size_t n = std::size_t{1} << k;
  TaskSpec t;
  t.name = "dj";
  t.X = bit_labels(n);
  t.Y = t.X;
  t.A = bit_labels(k);
  t.B = t.A;
  t.relation = [n](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    const auto d = static_cast<std::size_t>(std::popcount(x ^ y));
    if (d == 0) return a == b;
    if (2 * d == n) return a != b;
    return true;
  };
  t.promise = [n](std::size_t x, std::size_t y) {
    const auto d = static_cast<std::size_t>(std::popcount(x ^ y));
    return d == 0 || 2 * d == n;
  };
  t.dj_k = k;
  return t;
}

TaskSpec make_equality_task(std::size_t n) {
  if (n == 0 || n > 8) throw CapacityError("equality task: n must be in 1..8");
  TaskSpec t;
  t.name = "equality";
  t.X = bit_labels(n);
  t.Y = t.X;
  t.A = {"0", "1"};
  t.B = t.A;
  t.relation = [](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    const std::size_t eq = x == y ? 1 : 0;
    return a == eq && b == eq;
  };
  return t;
}

TaskSpec make_cvdnt_task(CvdntDistribution dist) {
  TaskSpec t;
  t.name = dist == CvdntDistribution::UniformAll ? "cvdnt-uniform" : "cvdnt-nonzero";
  t.X = bit_labels(2);
  t.Y = t.X;
  t.A = {"0", "1"};
  t.B = t.A;
  t.relation = [](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    const std::size_t f = static_cast<std::size_t>(std::popcount(x & y) & 1);
    return a == f && b == f;
  };
  if (dist == CvdntDistribution::BothNonzero) {
    t.weights.assign(16, 0.0);
    for (std::size_t x = 1; x < 4; ++x)
      for (std::size_t y = 1; y < 4; ++y) t.weights[x * 4 + y] = 1.0 / 9.0;
  }
  return t;
}

StrategyScore evaluate_local(const TaskSpec& task, const LocalStrategy& s) {
  if (s.alice_map.size() != task.X.size() || s.bob_map.size() != task.Y.size()) {
    throw ArgumentError("evaluate_local: strategy does not match the task");
  }
  const auto w = weight_matrix(task);
  StrategyScore score{0.0, 1.0};
  for (std::size_t x = 0; x < task.X.size(); ++x) {
    for (std::size_t y = 0; y < task.Y.size(); ++y) {
      if (!task.on_promise(x, y)) continue;
      const bool ok = task.relation(x, y, s.alice_map[x], s.bob_map[y]);
      if (ok) score.success += w[x * task.Y.size() + y];
      if (!ok) score.worst_case = 0.0;
    }
  }
  return score;
}

ColoringResult dj_coloring_search(std::size_t k, std::uint64_t node_budget) {
  if (k == 0 || k > 3) throw CapacityError("DJ coloring search supports k = 1, 2, 3");
  const std::size_t n = std::size_t{1} << k;
  const std::size_t vertices = std::size_t{1} << n;
  const std::size_t colors = n;

  std::vector<std::uint32_t> flips;  // masks of weight n/2
  for (std::uint32_t m = 0; m < vertices; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) * 2 == n) flips.push_back(m);
  }

  std::vector<int> color(vertices, -1);
  std::vector<std::uint32_t> blocked(vertices * colors, 0);  // neighbors holding each color
  std::vector<std::size_t> saturation(vertices, 0);
  ColoringResult result{ColoringStatus::Impossible, {}, 0};

  auto assign = [&](std::size_t v, std::size_t c, int delta) {
    for (auto m : flips) {
      const std::size_t u = v ^ m;
      auto& cnt = blocked[u * colors + c];
      if (delta > 0) {
        if (cnt++ == 0) ++saturation[u];
      } else {
        if (--cnt == 0) --saturation[u];
      }
    }
  };

  // Returns true when solved; stops on budget.
  std::function<bool(std::size_t, std::size_t)> solve = [&](std::size_t done, std::size_t used) -> bool {
    if (done == vertices) return true;
    if (++result.nodes > node_budget) {
      result.status = ColoringStatus::BudgetExhausted;
      return false;
    }
    std::size_t pick = vertices;
    for (std::size_t v = 0; v < vertices; ++v) {
      if (color[v] >= 0) continue;
      if (pick == vertices || saturation[v] > saturation[pick]) pick = v;
    }
    const std::size_t limit = std::min(used + 1, colors);
    for (std::size_t c = 0; c < limit; ++c) {
      if (blocked[pick * colors + c] != 0) continue;
      color[pick] = static_cast<int>(c);
      assign(pick, c, +1);
      if (solve(done + 1, std::max(used, c + 1))) return true;
      assign(pick, c, -1);
      color[pick] = -1;
      if (result.status == ColoringStatus::BudgetExhausted) return false;
    }
    return false;
  };

  if (solve(0, 0)) {
    result.status = ColoringStatus::Found;
    result.colors.assign(color.begin(), color.end());
  }
  return result;
}

ZeroCommResult best_zero_comm(const TaskSpec& task, const SearchLimits& limits) {
  task.check();
  if (task.dj_k) {
    const auto coloring = dj_coloring_search(*task.dj_k, limits.max_backtrack_nodes);
    if (coloring.status != ColoringStatus::Found) {
      throw CapacityError(coloring.status == ColoringStatus::Impossible
                              ? "no perfect zero-communication DJ strategy exists; the distributional optimum is "
                                "beyond the exhaustive bound"
                              : "DJ coloring search exhausted its budget of " +
                                    std::to_string(limits.max_backtrack_nodes) + " nodes");
    }
    ZeroCommResult r;
    r.strategy = {coloring.colors, coloring.colors};
    const auto score = evaluate_local(task, r.strategy);
    r.worst_case = score.worst_case;
    r.perfect = score.worst_case == 1.0;
    // Correct on every weighted pair; skip the rounding of the weighted sum.
    r.success = r.perfect ? 1.0 : score.success;
    r.method = "dj-coloring";
    return r;
  }

  const auto alice_side = checked_power(task.A.size(), task.X.size(), limits.max_enumeration);
  const auto bob_side = checked_power(task.B.size(), task.Y.size(), limits.max_enumeration);
  ZeroCommResult r;
  if (bob_side < alice_side) {
    r = exhaustive_zero_comm(transposed(task), limits);
    std::swap(r.strategy.alice_map, r.strategy.bob_map);
  } else {
    r = exhaustive_zero_comm(task, limits);
  }
  const auto score = evaluate_local(task, r.strategy);
  r.worst_case = score.worst_case;
  r.perfect = score.worst_case == 1.0 && std::abs(r.success - 1.0) < kTie;
  return r;
}

// ---- protocol trees -----------------------------------------------------------

std::size_t ProtocolTree::depth() const {
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    const auto& n = nodes[i];
    return n.leaf ? 0 : 1 + std::max(walk(n.child[0]), walk(n.child[1]));
  };
  return nodes.empty() ? 0 : walk(0);
}

std::array<std::size_t, 3> ProtocolTree::execute(std::size_t x, std::size_t y) const {
  std::size_t i = 0;
  std::size_t bits = 0;
  while (!nodes[i].leaf) {
    const auto& n = nodes[i];
    const std::size_t input = n.speaker == PartyId::Alice ? x : y;
    i = n.child[n.message[input]];
    ++bits;
  }
  return {nodes[i].alice_output[x], nodes[i].bob_output[y], bits};
}

namespace {

class TreeSearch {
 public:
  TreeSearch(const TaskSpec& task, std::size_t budget, const SearchLimits& limits)
      : task_(task),
        nx_(task.X.size()),
        ny_(task.Y.size()),
        na_(task.A.size()),
        nb_(task.B.size()),
        budget_(budget),
        w_(weight_matrix(task)),
        rel_(relation_table(task)) {
    if (nx_ > limits.max_inputs_per_party || ny_ > limits.max_inputs_per_party) {
      throw CapacityError("protocol-tree search supports at most " + std::to_string(limits.max_inputs_per_party) +
                          " inputs per party");
    }
    if (checked_power(na_, nx_, limits.max_enumeration) > limits.max_enumeration) {
      throw CapacityError("leaf enumeration |A|^|X| exceeds the bound " + std::to_string(limits.max_enumeration));
    }
    memo_.assign((std::size_t{1} << nx_) * (std::size_t{1} << ny_) * (budget_ + 1), Entry{});
    leaf_memo_.assign((std::size_t{1} << nx_) * (std::size_t{1} << ny_), -1.0);
  }

  double value(std::uint32_t s, std::uint32_t t, std::size_t d) { return solve(s, t, d).value; }

  ProtocolTree build() {
    ProtocolTree tree;
    emit(tree, full(nx_), full(ny_), budget_);
    return tree;
  }

 private:
  struct Entry {
    bool known = false;
    double value = 0.0;
    int kind = 0;  // 0 leaf, 1 Alice splits, 2 Bob splits
    std::uint32_t part = 0;
  };

  static std::uint32_t full(std::size_t n) { return n == 32 ? ~0U : (1U << n) - 1; }

  // Best leaf on the rectangle, optionally returning the output maps.
  double leaf(std::uint32_t s, std::uint32_t t, std::vector<std::size_t>* alice_out = nullptr,
              std::vector<std::size_t>* bob_out = nullptr) {
    double& cached = leaf_memo_[(static_cast<std::size_t>(s) << ny_) | t];
    if (cached >= 0.0 && !alice_out) return cached;
    std::vector<std::size_t> xs, ys;
    for (std::size_t x = 0; x < nx_; ++x)
      if (s >> x & 1U) xs.push_back(x);
    for (std::size_t y = 0; y < ny_; ++y)
      if (t >> y & 1U) ys.push_back(y);

    const std::uint64_t count = checked_power(na_, xs.size(), ~std::uint64_t{0} >> 1);
    double best = -1.0;
    std::vector<std::size_t> a(nx_, 0), b(ny_, 0), best_a(nx_, 0), best_b(ny_, 0);
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = xs.size(); i-- > 0;) {
        a[xs[i]] = c % na_;
        c /= na_;
      }
      double total = 0.0;
      for (auto y : ys) {
        double best_y = -1.0;
        for (std::size_t bb = 0; bb < nb_; ++bb) {
          double v = 0.0;
          for (auto x : xs) v += w_[x * ny_ + y] * rel_[((x * ny_ + y) * na_ + a[x]) * nb_ + bb];
          if (v > best_y + kTie) {
            best_y = v;
            b[y] = bb;
          }
        }
        total += best_y;
      }
      if (total > best + kTie) {
        best = total;
        best_a = a;
        best_b = b;
      }
    }
    cached = best;
    if (alice_out) {
      *alice_out = best_a;
      *bob_out = best_b;
    }
    return best;
  }

  const Entry& solve(std::uint32_t s, std::uint32_t t, std::size_t d) {
    Entry& e = memo_[((static_cast<std::size_t>(s) << ny_) | t) * (budget_ + 1) + d];
    if (e.known) return e;
    Entry best;
    best.value = leaf(s, t);
    if (d > 0) {
      // Alice splits s; each unordered partition once (sub holds the lowest element).
      if (std::popcount(s) > 1) {
        const std::uint32_t low = s & (~s + 1);
        for (std::uint32_t sub = (s - 1) & s; sub != 0; sub = (sub - 1) & s) {
          if (!(sub & low)) continue;
          const double v = solve(sub, t, d - 1).value + solve(s & ~sub, t, d - 1).value;
          if (v > best.value + kTie) best = {true, v, 1, sub};
        }
      }
      if (std::popcount(t) > 1) {
        const std::uint32_t low = t & (~t + 1);
        for (std::uint32_t sub = (t - 1) & t; sub != 0; sub = (sub - 1) & t) {
          if (!(sub & low)) continue;
          const double v = solve(s, sub, d - 1).value + solve(s, t & ~sub, d - 1).value;
          if (v > best.value + kTie) best = {true, v, 2, sub};
        }
      }
    }
    best.known = true;
    e = best;  // memo_ is pre-sized, so e stays valid across the recursion
    return e;
  }

  std::size_t emit(ProtocolTree& tree, std::uint32_t s, std::uint32_t t, std::size_t d) {
    const Entry e = solve(s, t, d);
    const std::size_t idx = tree.nodes.size();
    tree.nodes.emplace_back();
    if (e.kind == 0) {
      std::vector<std::size_t> a, b;
      leaf(s, t, &a, &b);
      tree.nodes[idx].leaf = true;
      tree.nodes[idx].alice_output = std::move(a);
      tree.nodes[idx].bob_output = std::move(b);
      return idx;
    }
    const bool alice = e.kind == 1;
    const std::size_t n_inputs = alice ? nx_ : ny_;
    std::vector<std::uint8_t> message(n_inputs, 0);
    const std::uint32_t whole = alice ? s : t;
    for (std::size_t i = 0; i < n_inputs; ++i) {
      if ((whole >> i & 1U) && !(e.part >> i & 1U)) message[i] = 1;
    }
    std::size_t c0, c1;
    if (alice) {
      c0 = emit(tree, e.part, t, d - 1);
      c1 = emit(tree, s & ~e.part, t, d - 1);
    } else {
      c0 = emit(tree, s, e.part, d - 1);
      c1 = emit(tree, s, t & ~e.part, d - 1);
    }
    auto& node = tree.nodes[idx];
    node.leaf = false;
    node.speaker = alice ? PartyId::Alice : PartyId::Bob;
    node.message = std::move(message);
    node.child = {c0, c1};
    return idx;
  }

  const TaskSpec& task_;
  std::size_t nx_, ny_, na_, nb_, budget_;
  std::vector<double> w_;
  std::vector<std::uint8_t> rel_;
  std::vector<Entry> memo_;
  std::vector<double> leaf_memo_;
};

}  // namespace

BoundedCommResult best_bounded_comm(const TaskSpec& task, std::size_t budget, const SearchLimits& limits) {
  task.check();
  if (budget > 16) throw CapacityError("protocol-tree budget above 16 bits");
  TreeSearch search(task, budget, limits);
  BoundedCommResult r;
  r.tree = search.build();
  r.success = search.value((1U << task.X.size()) - 1, (1U << task.Y.size()) - 1, budget);
  return r;
}

double evaluate_tree(const TaskSpec& task, const ProtocolTree& tree) {
  const auto w = weight_matrix(task);
  double total = 0.0;
  for (std::size_t x = 0; x < task.X.size(); ++x) {
    for (std::size_t y = 0; y < task.Y.size(); ++y) {
      if (!task.on_promise(x, y)) continue;
      const auto [a, b, bits] = tree.execute(x, y);
      if (task.relation(x, y, a, b)) total += w[x * task.Y.size() + y];
    }
  }
  return total;
}

// ---- CHSH -------------------------------------------------------------------------

CorrelationVector epr_restricted_correlations() {
  const double xs[2] = {0.0, std::numbers::pi / 6};
  const double ys[2] = {0.0, 5 * std::numbers::pi / 6};
  CorrelationVector v;
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      const double c = std::cos(xs[x] - ys[y]);
      v.p_equal[2 * x + y] = c * c;
    }
  }
  return v;
}

namespace {

DeterministicLocal strategy_from_code(std::size_t s) {
  DeterministicLocal d;
  d.a = {static_cast<std::uint8_t>(s >> 3 & 1U), static_cast<std::uint8_t>(s >> 2 & 1U)};
  d.b = {static_cast<std::uint8_t>(s >> 1 & 1U), static_cast<std::uint8_t>(s & 1U)};
  return d;
}

// S_j = sum of correlators with the j-th one negated.
template <typename T>
std::array<T, 4> chsh_variants(const std::array<T, 4>& e) {
  const T sum = e[0] + e[1] + e[2] + e[3];
  return {sum - 2 * e[0], sum - 2 * e[1], sum - 2 * e[2], sum - 2 * e[3]};
}

// Phase-one simplex with Bland's rule over exact rationals. Rows are
// equality constraints A lambda = rhs with rhs >= 0, lambda >= 0.
std::optional<std::vector<Exact>> feasible_point(const std::vector<std::vector<Exact>>& a, const std::vector<Exact>& rhs) {
  const std::size_t rows = a.size();
  const std::size_t vars = a[0].size();
  const std::size_t cols = vars + rows;  // plus artificials
  std::vector<std::vector<Exact>> tab(rows, std::vector<Exact>(cols + 1));
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < vars; ++c) tab[r][c] = a[r][c];
    tab[r][vars + r] = 1;
    tab[r][cols] = rhs[r];
    basis[r] = vars + r;
  }
  // Reduced cost of minimizing the sum of artificials.
  std::vector<Exact> cost(cols + 1);
  for (std::size_t c = 0; c <= cols; ++c) {
    if (c >= vars && c < cols) continue;
    for (std::size_t r = 0; r < rows; ++r) cost[c] -= tab[r][c];
  }
  for (;;) {
    std::size_t enter = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (cost[c] < 0) {
        enter = c;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = rows;
    Exact best_ratio;
    for (std::size_t r = 0; r < rows; ++r) {
      if (tab[r][enter] > 0) {
        Exact ratio = tab[r][cols] / tab[r][enter];
        if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave == rows) break;  // unbounded cannot happen in phase one
    const Exact piv = tab[leave][enter];
    for (auto& v : tab[leave]) v /= piv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave || tab[r][enter] == 0) continue;
      const Exact f = tab[r][enter];
      for (std::size_t c = 0; c <= cols; ++c) tab[r][c] -= f * tab[leave][c];
    }
    const Exact f = cost[enter];
    for (std::size_t c = 0; c <= cols; ++c) cost[c] -= f * tab[leave][c];
    basis[leave] = enter;
  }
  if (cost[cols] != 0) return std::nullopt;  // -(sum of artificials) at optimum
  std::vector<Exact> point(vars);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < vars) point[basis[r]] = tab[r][cols];
  }
  return point;
}

}  // namespace

std::vector<double> deterministic_chsh_values() {
  std::vector<double> out;
  for (std::size_t s = 0; s < 16; ++s) {
    const auto d = strategy_from_code(s);
    std::array<int, 4> e{};
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) e[2 * x + y] = d.a[x] == d.b[y] ? 1 : -1;
    int best = 0;
    for (int v : chsh_variants(e)) best = std::max(best, std::abs(v));
    out.push_back(best);
  }
  return out;
}

ChshResult chsh_feasibility(const CorrelationVector& required) {
  std::array<Exact, 4> p;
  for (std::size_t i = 0; i < 4; ++i) {
    const double v = required.p_equal[i];
    if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError("chsh_feasibility: agreement probabilities must lie in [0,1]");
    p[i] = Exact(v);
  }
  ChshResult result;
  std::array<Exact, 4> e;
  for (std::size_t i = 0; i < 4; ++i) {
    e[i] = 2 * p[i] - 1;
    result.correlators[i] = static_cast<double>(e[i]);
  }
  const auto variants = chsh_variants(e);
  Exact best_abs = -1;
  for (std::size_t j = 0; j < 4; ++j) {
    const Exact mag = boost::multiprecision::abs(variants[j]);
    if (mag > best_abs) {
      best_abs = mag;
      result.minus_position = j;
    }
  }
  result.max_chsh = static_cast<double>(best_abs);

  std::vector<std::vector<Exact>> a(5, std::vector<Exact>(16));
  std::vector<Exact> rhs(5);
  rhs[0] = 1;
  for (std::size_t s = 0; s < 16; ++s) {
    const auto d = strategy_from_code(s);
    a[0][s] = 1;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y) a[1 + 2 * x + y][s] = d.a[x] == d.b[y] ? 1 : 0;
  }
  for (std::size_t i = 0; i < 4; ++i) rhs[1 + i] = p[i];

  const auto point = feasible_point(a, rhs);
  result.feasible = point.has_value();
  if (point) {
    for (std::size_t s = 0; s < 16; ++s) {
      if ((*point)[s] != 0) result.combination.emplace_back(strategy_from_code(s), (*point)[s].str());
    }
    return result;
  }
  if (best_abs <= 2) throw std::logic_error("local polytope infeasible but no CHSH inequality is violated");
  static const char* names[4] = {"E00", "E01", "E10", "E11"};
  std::string expr;
  for (std::size_t i = 0; i < 4; ++i) {
    expr += (i == 0 ? (i == result.minus_position ? "-" : "") : (i == result.minus_position ? " - " : " + "));
    expr += names[i];
  }
  if (variants[result.minus_position] < 0) expr = "-(" + expr + ")";
  result.violated_inequality = expr + " <= 2";
  return result;
}

}  // namespace ccsim
