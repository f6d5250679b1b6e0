#include "ccsim/task_json.hpp"

#include <map>
#include <set>
#include <tuple>

#include <nlohmann/json.hpp>

#include "ccsim/errors.hpp"
#include "ccsim/field.hpp"

namespace ccsim {
namespace {

using nlohmann::json;

double number_or_fraction(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>()).value();
    } catch (const ArgumentError& e) {
      throw ConfigError(where, e.what());
    }
  }
  throw ConfigError(where, "expected a number or a \"p/q\" string");
}

std::vector<std::string> labels(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty()) {
    throw ConfigError(key, "expected a non-empty array of element labels");
  }
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& e : doc[key]) {
    std::string s = e.is_string() ? e.get<std::string>() : e.dump();
    if (!seen.insert(s).second) throw ConfigError(key, "duplicate element " + s);
    out.push_back(std::move(s));
  }
  return out;
}

std::size_t index_of(const std::vector<std::string>& set, const json& e, const std::string& where) {
  const std::string s = e.is_string() ? e.get<std::string>() : e.dump();
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] == s) return i;
  }
  throw ConfigError(where, "unknown element " + s);
}

TaskSpec explicit_task(const json& doc) {
  TaskSpec t;
  t.name = doc.value("name", std::string("custom"));
  t.X = labels(doc, "X");
  t.Y = labels(doc, "Y");
  t.A = labels(doc, "A");
  t.B = labels(doc, "B");
  if (!doc.contains("allowed") || !doc["allowed"].is_array()) throw ConfigError("allowed", "expected an array of quadruples");

  const std::size_t ny = t.Y.size(), na = t.A.size(), nb = t.B.size();
  auto allowed = std::make_shared<std::vector<std::uint8_t>>(t.X.size() * ny * na * nb, 0);
  for (std::size_t i = 0; i < doc["allowed"].size(); ++i) {
    const auto& q = doc["allowed"][i];
    const std::string where = "allowed[" + std::to_string(i) + "]";
    if (!q.is_array() || q.size() != 4) throw ConfigError(where, "expected [x, y, a, b]");
    const auto x = index_of(t.X, q[0], where), y = index_of(t.Y, q[1], where);
    const auto a = index_of(t.A, q[2], where), b = index_of(t.B, q[3], where);
    (*allowed)[((x * ny + y) * na + a) * nb + b] = 1;
  }
  t.relation = [allowed, ny, na, nb](std::size_t x, std::size_t y, std::size_t a, std::size_t b) {
    return (*allowed)[((x * ny + y) * na + a) * nb + b] != 0;
  };

  if (doc.contains("promise")) {
    auto ok = std::make_shared<std::vector<std::uint8_t>>(t.X.size() * ny, 0);
    for (std::size_t i = 0; i < doc["promise"].size(); ++i) {
      const auto& p = doc["promise"][i];
      const std::string where = "promise[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2) throw ConfigError(where, "expected [x, y]");
      (*ok)[index_of(t.X, p[0], where) * ny + index_of(t.Y, p[1], where)] = 1;
    }
    t.promise = [ok, ny](std::size_t x, std::size_t y) { return (*ok)[x * ny + y] != 0; };
  }

  if (doc.contains("weights")) {
    t.weights.assign(t.X.size() * ny, 0.0);
    for (std::size_t i = 0; i < doc["weights"].size(); ++i) {
      const auto& w = doc["weights"][i];
      const std::string where = "weights[" + std::to_string(i) + "]";
      if (!w.is_array() || w.size() != 3) throw ConfigError(where, "expected [x, y, weight]");
      t.weights[index_of(t.X, w[0], where) * ny + index_of(t.Y, w[1], where)] = number_or_fraction(w[2], where);
    }
  }
  t.check();
  return t;
}

}  // namespace

SearchRequest builtin_task(std::string_view name) {
  if (name == "dj" || name == "dj-2") return make_dj_task(2);
  if (name == "dj-1") return make_dj_task(1);
  if (name == "dj-3") return make_dj_task(3);
  if (name == "cvdnt" || name == "cvdnt-uniform") return make_cvdnt_task(CvdntDistribution::UniformAll);
  if (name == "cvdnt-nonzero") return make_cvdnt_task(CvdntDistribution::BothNonzero);
  if (name == "equality") return make_equality_task(1);
  if (name == "epr-restricted") return epr_restricted_correlations();
  throw ConfigError("task", "unknown builtin task \"" + std::string(name) + "\"");
}

SearchRequest parse_task_document(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("document", e.what());
  }
  if (!doc.is_object()) throw ConfigError("document", "expected a JSON object");

  if (doc.contains("builtin")) {
    const auto name = doc["builtin"].get<std::string>();
    if (name == "dj") return make_dj_task(doc.value("k", std::size_t{2}));
    if (name == "equality") return make_equality_task(doc.value("n", std::size_t{1}));
    if (name == "cvdnt") {
      const auto dist = doc.value("distribution", std::string("uniform"));
      if (dist == "uniform") return make_cvdnt_task(CvdntDistribution::UniformAll);
      if (dist == "nonzero") return make_cvdnt_task(CvdntDistribution::BothNonzero);
      throw ConfigError("distribution", "expected \"uniform\" or \"nonzero\"");
    }
    return builtin_task(name);
  }
  if (doc.contains("correlations")) {
    const auto& c = doc["correlations"];
    if (!c.is_array() || c.size() != 4) throw ConfigError("correlations", "expected four agreement probabilities");
    CorrelationVector v;
    for (std::size_t i = 0; i < 4; ++i) v.p_equal[i] = number_or_fraction(c[i], "correlations[" + std::to_string(i) + "]");
    return v;
  }
  return explicit_task(doc);
}

}  // namespace ccsim
