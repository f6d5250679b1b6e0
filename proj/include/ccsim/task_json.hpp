#pragma once

// Task documents for the `search` subcommand.
//
//   {"builtin": "dj", "k": 2}
//   {"builtin": "cvdnt", "distribution": "uniform" | "nonzero"}
//   {"builtin": "equality", "n": 1}
//   {"builtin": "epr-restricted"}
//   {"correlations": [1, "3/4", "3/4", "1/4"]}
//   {"X": [...], "Y": [...], "A": [...], "B": [...],
//    "allowed": [[x, y, a, b], ...],
//    "promise": [[x, y], ...],            (optional)
//    "weights": [[x, y, w], ...]}         (optional; w a number or "p/q")

#include <string>
#include <string_view>
#include <variant>

#include "ccsim/search.hpp"

namespace ccsim {

using SearchRequest = std::variant<TaskSpec, CorrelationVector>;

// Throws ConfigError naming the offending field.
SearchRequest parse_task_document(std::string_view json_text);

// Shorthand names accepted on the command line: "dj", "dj-1", "dj-2",
// "dj-3", "cvdnt", "cvdnt-uniform", "cvdnt-nonzero", "equality",
// "epr-restricted".
SearchRequest builtin_task(std::string_view name);

}  // namespace ccsim
