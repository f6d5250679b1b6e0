#include "ccsim/harness.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

#include "ccsim/classical.hpp"
#include "ccsim/errors.hpp"
#include "ccsim/quantum_protocols.hpp"

namespace ccsim {
namespace {

using nlohmann::ordered_json;

enum class PassRule { ExactWithinSigma, Schedule };

struct Driver {
  Protocol protocol;
  bool angles = false;
  RealInterval angle_range{0.0, 1.0};
  bool open_range = true;
  std::size_t n = 0;
  bool promise_pairs_only = false;
  PassRule rule = PassRule::ExactWithinSigma;
  // The per-run statistic being estimated.
  std::function<bool(const ProtocolOutcome&, const Input&, const Input&)> statistic;
  // Exact value of the statistic, when known. Receives one representative run.
  std::function<std::optional<double>(const Input&, const Input&, const ProtocolOutcome&)> exact;
};

const BitString& bits(const Input& in) { return std::get<BitString>(in); }

bool dj_promise(const BitString& x, const BitString& y) {
  const auto d = hamming_distance(x, y);
  return d == 0 || 2 * d == x.size();
}

Driver equality_driver(Protocol p, std::size_t n,
                       std::function<std::optional<double>(const BitString&, const BitString&)> exact) {
  Driver d;
  d.protocol = std::move(p);
  d.n = n;
  d.statistic = [](const ProtocolOutcome& o, const Input& x, const Input& y) {
    return (verdict_from(o) == EqualityVerdict::Equal) == (bits(x) == bits(y));
  };
  d.exact = [exact](const Input& x, const Input& y, const ProtocolOutcome&) { return exact(bits(x), bits(y)); };
  return d;
}

Driver make_driver(const std::string& name, const ProtocolParams& params) {
  if (name == "fingerprint-equality") {
    const std::size_t n = params.n ? params.n : 4;
    const auto fp = fingerprint_params(n, params.epsilon);
    return equality_driver(make_fingerprint_protocol(n, params.epsilon), n,
                           [fp](const BitString& x, const BitString& y) -> std::optional<double> {
                             if (x == y) return 1.0;
                             return 1.0 - static_cast<double>(fingerprint_collisions(x, y, fp.prime)) /
                                              static_cast<double>(fp.prime);
                           });
  }
  if (name == "shared-randomness-equality") {
    const std::size_t n = params.n ? params.n : 3;
    const std::size_t m = params.m;
    return equality_driver(make_shared_randomness_protocol(n, m), n,
                           [m](const BitString& x, const BitString& y) -> std::optional<double> {
                             return x == y ? 1.0 : 1.0 - std::ldexp(1.0, -static_cast<int>(m));
                           });
  }
  if (name == "epr-classical") {
    Driver d;
    d.protocol = make_epr_one_bit_protocol();
    d.angles = true;
    d.angle_range = {0.0, 1.0};
    d.open_range = true;
    d.statistic = [](const ProtocolOutcome& o, const Input&, const Input&) { return o.a == o.b; };
    d.exact = [](const Input& x, const Input& y, const ProtocolOutcome&) -> std::optional<double> {
      const double c = std::cos(std::get<double>(x) - std::get<double>(y));
      return c * c;
    };
    return d;
  }
  if (name == "epr-quantum") {
    Driver d;
    d.protocol = make_epr_quantum_protocol();
    d.angles = true;
    d.angle_range = {0.0, std::numbers::pi};
    d.open_range = false;
    d.statistic = [](const ProtocolOutcome& o, const Input&, const Input&) { return o.a == o.b; };
    d.exact = [](const Input&, const Input&, const ProtocolOutcome& o) -> std::optional<double> {
      return epr_statistics(*o.exact_distribution).p_equal;
    };
    return d;
  }
  const std::size_t k = params.k;
  // DJ protocols take n = 2^k; an explicit n fixes k.
  const bool dj = name == "dj-pseudo-telepathy" || name == "dj-qubit";
  const std::size_t dj_k = dj && params.n ? log2_exact(params.n) : k;
  if (name == "fake-dj") {
    Driver d;
    d.n = params.n ? params.n : std::size_t{1} << k;
    // An explicit n decouples the number of shared strings from lg n.
    const std::size_t kk = params.n ? k : log2_exact(d.n);
    d.protocol = make_fake_dj_protocol(d.n, kk);
    d.promise_pairs_only = true;
    d.statistic = [](const ProtocolOutcome& o, const Input& x, const Input& y) {
      const auto dist = hamming_distance(bits(x), bits(y));
      if (dist == 0) return o.a == o.b;
      if (2 * dist == bits(x).size()) return o.a != o.b;
      return true;
    };
    d.exact = [kk](const Input& x, const Input& y, const ProtocolOutcome&) -> std::optional<double> {
      const auto dist = hamming_distance(bits(x), bits(y));
      if (2 * dist == bits(x).size()) return 1.0 - std::ldexp(1.0, -static_cast<int>(kk));
      return 1.0;
    };
    return d;
  }
  if (name == "dj-pseudo-telepathy") {
    Driver d;
    d.n = std::size_t{1} << dj_k;
    d.protocol = make_dj_pseudo_telepathy_protocol(dj_k);
    d.promise_pairs_only = true;
    d.statistic = [](const ProtocolOutcome& o, const Input& x, const Input& y) {
      return dj_relation(bits(x), bits(y), o.a, o.b);
    };
    d.exact = [dj_k](const Input& x, const Input& y, const ProtocolOutcome& o) -> std::optional<double> {
      return 1.0 - dj_forbidden_mass(DjInstance::make(dj_k, bits(x), bits(y)), *o.exact_distribution);
    };
    return d;
  }
  if (name == "dj-qubit") {
    Driver d;
    d.n = std::size_t{1} << dj_k;
    d.protocol = make_dj_qubit_protocol(dj_k);
    d.promise_pairs_only = true;
    d.statistic = [](const ProtocolOutcome& o, const Input& x, const Input& y) {
      if (!dj_promise(bits(x), bits(y))) return true;
      return (verdict_from(o) == EqualityVerdict::Equal) == (bits(x) == bits(y));
    };
    d.exact = [dj_k](const Input& x, const Input& y, const ProtocolOutcome& o) -> std::optional<double> {
      if (!dj_promise(bits(x), bits(y))) return 1.0;
      return dj_qubit_correctness(DjInstance::make(dj_k, bits(x), bits(y)), *o.exact_distribution);
    };
    return d;
  }
  if (name == "grover-schedule") {
    Driver d;
    d.n = params.n ? params.n : std::size_t{1} << k;
    d.protocol = make_grover_protocol(d.n);
    d.rule = PassRule::Schedule;
    d.statistic = [](const ProtocolOutcome& o, const Input& x, const Input& y) {
      const auto answer = decode_schedule_answer(o.a);
      const BitString& xs = bits(x);
      const BitString& ys = bits(y);
      bool exists = false;
      for (std::size_t i = 0; i < xs.size(); ++i) exists = exists || (xs[i] && ys[i]);
      if (!answer) return !exists;
      return xs[*answer - 1] && ys[*answer - 1];
    };
    d.exact = [](const Input&, const Input&, const ProtocolOutcome&) -> std::optional<double> { return std::nullopt; };
    return d;
  }
  throw ConfigError("protocol", "unknown protocol \"" + name + "\"");
}

std::string input_id(const Input& x, const Input& y) {
  auto part = [](const Input& in) {
    if (const auto* b = std::get_if<BitString>(&in)) return b->str();
    return format_number(std::get<double>(in));
  };
  return "x=" + part(x) + ";y=" + part(y);
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(where, "not a number: \"" + s + "\"");
  return v;
}

std::vector<BitString> all_strings(std::size_t n) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(BitString::from_uint(v, n));
  return out;
}

std::vector<std::pair<Input, Input>> build_inputs(const ExperimentConfig& cfg, const Driver& d) {
  std::vector<std::pair<Input, Input>> out;
  switch (cfg.mode) {
    case InputMode::Explicit:
      for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
        const std::string where = "inputs[" + std::to_string(i) + "]";
        const auto& [xs, ys] = cfg.inputs[i];
        try {
          if (d.angles) {
            out.emplace_back(parse_double(xs, where), parse_double(ys, where));
          } else {
            out.emplace_back(BitString::parse(xs), BitString::parse(ys));
          }
        } catch (const ArgumentError& e) {
          throw ConfigError(where, e.what());
        }
      }
      break;
    case InputMode::Grid: {
      if (!d.angles) throw ConfigError("inputs.mode", "grid inputs apply to angle protocols only");
      const std::size_t g = cfg.grid_points;
      if (g == 0 || (!d.open_range && g < 2)) throw ConfigError("inputs.points", "grid needs more points");
      std::vector<double> axis(g);
      const double lo = d.angle_range.lo, hi = d.angle_range.hi;
      for (std::size_t i = 0; i < g; ++i) {
        axis[i] = d.open_range ? lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(g + 1)
                               : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g - 1);
      }
      for (double x : axis)
        for (double y : axis) out.emplace_back(x, y);
      break;
    }
    case InputMode::Exhaustive: {
      if (d.angles) throw ConfigError("inputs.mode", "angle protocols have no exhaustive input set");
      if (d.n > 8) throw ConfigError("params.n", "exhaustive inputs need n <= 8");
      const auto strings = all_strings(d.n);
      for (const auto& x : strings) {
        for (const auto& y : strings) {
          if (d.promise_pairs_only && !dj_promise(x, y)) continue;
          out.emplace_back(x, y);
        }
      }
      break;
    }
    case InputMode::Random: {
      RandomStream rng(derive_seed(cfg.seed, "inputs"));
      for (std::size_t i = 0; i < cfg.random_count; ++i) {
        if (d.angles) {
          auto draw = [&] {
            return d.open_range ? d.angle_range.lo + (d.angle_range.hi - d.angle_range.lo) * rng.uniform_open()
                                : d.angle_range.lo + (d.angle_range.hi - d.angle_range.lo) * rng.uniform();
          };
          const double x = draw();
          out.emplace_back(x, draw());
          continue;
        }
        BitString x(d.n);
        for (std::size_t j = 0; j < d.n; ++j) x.set(j, rng.coin());
        BitString y = x;
        if (d.promise_pairs_only) {
          if (rng.coin()) {
            // Flip a uniformly random half of the positions.
            std::vector<std::size_t> pos(d.n);
            for (std::size_t j = 0; j < d.n; ++j) pos[j] = j;
            for (std::size_t j = d.n; j > 1; --j) std::swap(pos[j - 1], pos[rng.below(j)]);
            for (std::size_t j = 0; j < d.n / 2; ++j) y.set(pos[j], !y[pos[j]]);
          }
        } else {
          for (std::size_t j = 0; j < d.n; ++j) y.set(j, rng.coin());
        }
        out.emplace_back(std::move(x), std::move(y));
      }
      break;
    }
  }
  return out;
}

struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t max_bits = 0;
  std::uint64_t max_qubits = 0;
  std::uint64_t mismatches = 0;
  std::size_t ebits = 0;
  std::optional<ProtocolOutcome> first;
};

Tally run_trials(const Driver& d, const Input& x, const Input& y, const std::string& id, std::uint64_t master,
                 std::uint64_t begin, std::uint64_t end) {
  Tally t;
  for (std::uint64_t trial = begin; trial < end; ++trial) {
    auto o = run(d.protocol, x, y, derive_seed(master, id, trial));
    if (d.statistic(o, x, y)) ++t.hits;
    t.max_bits = std::max(t.max_bits, o.channel.classical_bits_sent);
    t.max_qubits = std::max(t.max_qubits, o.channel.qubits_sent);
    if (!(count_from_transcript(o.transcript) == o.channel)) ++t.mismatches;
    t.ebits = o.ebits;
    if (trial == begin && begin == 0) t.first = std::move(o);
  }
  return t;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<RegistryEntry> registered_protocols() {
  return {
      {"fingerprint-equality", "bits", "polynomial fingerprint over F_p, params n, epsilon"},
      {"shared-randomness-equality", "bits", "m shared strings, m inner-product bits, params n, m"},
      {"epr-classical", "angles", "one-bit simulation of the EPR task on (0,1)"},
      {"fake-dj", "bits", "zero-communication inner-product fake of the DJ relation, params k or n"},
      {"epr-quantum", "angles", "EPR task on a shared |Phi+> for angles in [0,pi]"},
      {"dj-pseudo-telepathy", "bits", "DJ relation with k shared pairs and no communication, param k"},
      {"dj-qubit", "bits", "k-qubit one-way promise-equality protocol, param k"},
      {"grover-schedule", "bits", "distributed Grover search for a common free day, param n or k"},
  };
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", e.what());
  }
  ExperimentConfig cfg;
  try {
    if (!doc.contains("protocol")) throw ConfigError("protocol", "missing");
    cfg.protocol = doc["protocol"].get<std::string>();
    if (!doc.contains("seed")) throw ConfigError("seed", "missing; every experiment needs an explicit seed");
    cfg.seed = doc["seed"].get<std::uint64_t>();
    cfg.trials = doc.value("trials", std::uint64_t{1});
    if (cfg.trials == 0) throw ConfigError("trials", "must be at least 1");
    cfg.threads = doc.value("threads", 1U);
    const auto fmt = doc.value("format", std::string("csv"));
    if (fmt == "csv") {
      cfg.format = ReportFormat::Csv;
    } else if (fmt == "json") {
      cfg.format = ReportFormat::Json;
    } else {
      throw ConfigError("format", "expected csv or json");
    }
    if (doc.contains("tolerance")) cfg.sigma_bound = doc["tolerance"].value("sigma", 5.0);
    if (doc.contains("params")) {
      const auto& p = doc["params"];
      cfg.params.n = p.value("n", std::size_t{0});
      cfg.params.k = p.value("k", std::size_t{2});
      cfg.params.m = p.value("m", std::size_t{2});
      if (p.contains("epsilon")) {
        cfg.params.epsilon = p["epsilon"].is_string() ? Rational::parse(p["epsilon"].get<std::string>())
                                                      : Rational::parse(p["epsilon"].dump());
      }
    }
    const auto& in = doc.contains("inputs") ? doc["inputs"] : nlohmann::json::object();
    const auto mode = in.value("mode", std::string("exhaustive"));
    if (mode == "exhaustive") {
      cfg.mode = InputMode::Exhaustive;
    } else if (mode == "grid") {
      cfg.mode = InputMode::Grid;
      cfg.grid_points = in.value("points", std::size_t{5});
    } else if (mode == "random") {
      cfg.mode = InputMode::Random;
      cfg.random_count = in.value("count", std::size_t{10});
    } else if (mode == "explicit") {
      cfg.mode = InputMode::Explicit;
      if (!in.contains("pairs")) throw ConfigError("inputs.pairs", "missing");
      for (const auto& pr : in["pairs"]) {
        auto str = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (!pr.is_array() || pr.size() != 2) throw ConfigError("inputs.pairs", "expected [x, y] pairs");
        cfg.inputs.emplace_back(str(pr[0]), str(pr[1]));
      }
    } else {
      throw ConfigError("inputs.mode", "unknown mode \"" + mode + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", e.what());
  } catch (const ArgumentError& e) {
    throw ConfigError("params", e.what());
  }
  return cfg;
}

void apply_seed_override(ExperimentConfig& config) {
  const char* env = std::getenv(kSeedEnvVar);
  if (!env || !*env) return;
  std::uint64_t v = 0;
  const std::string_view s(env);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ConfigError(kSeedEnvVar, "not an unsigned integer");
  config.seed = v;
  config.seed_source = std::string("env:") + kSeedEnvVar;
}

Report run_experiment(const ExperimentConfig& config) {
  if (config.trials == 0) throw ConfigError("trials", "must be at least 1");
  // Explicit bit-string inputs fix n unless it was given.
  ProtocolParams params = config.params;
  if (config.mode == InputMode::Explicit && params.n == 0 && !config.inputs.empty()) {
    const auto& first = config.inputs.front().first;
    if (!first.empty() && first.find_first_not_of("01") == std::string::npos) params.n = first.size();
  }
  Driver driver;
  try {
    driver = make_driver(config.protocol, params);
  } catch (const ArgumentError& e) {
    throw ConfigError("params", e.what());
  } catch (const CapacityError& e) {
    throw ConfigError("params", e.what());
  }
  const auto inputs = build_inputs(config, driver);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    try {
      if (driver.protocol.validate) driver.protocol.validate(inputs[i].first, inputs[i].second);
    } catch (const ArgumentError& e) {
      throw ConfigError("inputs[" + std::to_string(i) + "]", e.what());
    }
  }

  Report report;
  report.config = config;
  const unsigned threads = std::max(1U, config.threads);
  for (const auto& [x, y] : inputs) {
    const std::string id = input_id(x, y);
    Tally total;
    if (threads == 1 || config.trials < 2 * threads) {
      total = run_trials(driver, x, y, id, config.seed, 0, config.trials);
    } else {
      std::vector<Tally> parts(threads);
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t begin = config.trials * t / threads;
        const std::uint64_t end = config.trials * (t + 1) / threads;
        pool.emplace_back([&, t, begin, end] { parts[t] = run_trials(driver, x, y, id, config.seed, begin, end); });
      }
      for (auto& th : pool) th.join();
      for (auto& p : parts) {
        total.hits += p.hits;
        total.max_bits = std::max(total.max_bits, p.max_bits);
        total.max_qubits = std::max(total.max_qubits, p.max_qubits);
        total.mismatches += p.mismatches;
        total.ebits = p.ebits;
        if (p.first) total.first = std::move(p.first);
      }
    }

    EstimateRow row;
    row.protocol = config.protocol;
    row.input_id = id;
    row.trials = config.trials;
    const double trials = static_cast<double>(config.trials);
    row.estimate = static_cast<double>(total.hits) / trials;
    row.std_err = std::sqrt(row.estimate * (1.0 - row.estimate) / trials);
    row.exact = driver.exact(x, y, *total.first);
    row.resources = {total.max_bits, total.max_qubits, total.ebits};
    row.accounting_mismatches = total.mismatches;
    bool ok = total.mismatches == 0;
    if (row.exact) {
      row.abs_err = std::abs(row.estimate - *row.exact);
      const double p = *row.exact;
      const double bound = config.sigma_bound * std::sqrt(std::max(0.0, p * (1.0 - p)) / trials) + 1e-12;
      ok = ok && *row.abs_err <= bound;
    } else if (driver.rule == PassRule::Schedule) {
      const auto& xs = std::get<BitString>(x);
      const auto& ys = std::get<BitString>(y);
      bool exists = false;
      for (std::size_t i = 0; i < xs.size(); ++i) exists = exists || (xs[i] && ys[i]);
      ok = ok && (exists ? row.estimate >= 2.0 / 3.0 : total.hits == config.trials);
    }
    row.pass = ok;
    report.rows.push_back(std::move(row));
  }
  return report;
}

bool Report::all_pass() const {
  for (const auto& r : rows) {
    if (!r.pass) return false;
  }
  return true;
}

std::string Report::to_csv() const {
  std::string out = "# ccsim report protocol=" + config.protocol + " trials=" + std::to_string(config.trials) +
                    " seed=" + std::to_string(config.seed) + " seed_source=" + config.seed_source +
                    " sigma_bound=" + format_number(config.sigma_bound) + "\n";
  out += "protocol,input_id,trials,estimate,std_err,exact,abs_err,bits_sent,qubits_sent,ebits,pass\n";
  for (const auto& r : rows) {
    out += r.protocol + "," + r.input_id + "," + std::to_string(r.trials) + "," + format_number(r.estimate) + "," +
           format_number(r.std_err) + "," + (r.exact ? format_number(*r.exact) : "") + "," +
           (r.abs_err ? format_number(*r.abs_err) : "") + "," + std::to_string(r.resources.bits_sent) + "," +
           std::to_string(r.resources.qubits_sent) + "," + std::to_string(r.resources.ebits) + "," +
           (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

std::string Report::to_json() const {
  ordered_json doc;
  doc["header"] = {{"protocol", config.protocol},
                   {"trials", config.trials},
                   {"seed", config.seed},
                   {"seed_source", config.seed_source},
                   {"sigma_bound", config.sigma_bound}};
  doc["rows"] = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["protocol"] = r.protocol;
    j["input_id"] = r.input_id;
    j["trials"] = r.trials;
    j["estimate"] = r.estimate;
    j["std_err"] = r.std_err;
    j["exact"] = r.exact ? ordered_json(*r.exact) : ordered_json(nullptr);
    j["abs_err"] = r.abs_err ? ordered_json(*r.abs_err) : ordered_json(nullptr);
    j["bits_sent"] = r.resources.bits_sent;
    j["qubits_sent"] = r.resources.qubits_sent;
    j["ebits"] = r.resources.ebits;
    j["pass"] = r.pass;
    doc["rows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ccsim
