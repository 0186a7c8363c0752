#pragma once

// JSON documents in, JSON reports out: the plumbing behind the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circount/counter.hpp"
#include "json.hpp"

namespace circount::cli {

using nlohmann::json;

struct InputDocument {
  PolySystem system;
  std::optional<std::string> label;

  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

/// Reads one JSON object with fields n, exponents (t vectors of n integers),
/// coefficients (n rows of t integers) and an optional label. Integers may be
/// JSON numbers or decimal strings. Throws ParseError (syntax, types, missing
/// fields) or ValidationError (shapes and system invariants).
InputDocument parse(std::string_view text);
InputDocument from_json(const json& j);

/// Integers are written as decimal strings.
json to_json(const InputDocument& doc);
std::string serialize(const InputDocument& doc);

/// One entry of a batch: a document or the error that replaced it.
struct BatchItem {
  std::optional<InputDocument> doc;
  std::string error_kind;
  std::string error_message;
  std::size_t line = 0;  // 1-based source line, 0 when not line-oriented
};

/// Accepts a single object, a JSON array of objects, or one object per line.
/// Failures are isolated per document.
std::vector<BatchItem> parse_batch(std::string_view text);

struct Targets {
  bool positive = false;
  bool torus = false;
  bool affine = false;

  bool any() const { return positive || torus || affine; }
};

struct RunOptions {
  Targets targets;
  bool verify = false;
  bool explain = false;
  long precision_cap_bits = 0;
  std::size_t verify_samples = 100000;  // per system, spread over its cells
};

struct Report {
  json body;
  int exit_code = 0;
  std::string summary;  // one human-readable line
};

enum ExitCode : int { kCounted = 0, kInvalidInput = 1, kGenericityFailure = 2, kInfinite = 3, kInternal = 4 };

int exit_code_for(const CountResult& r);
/// Exit code for a library exception kind such as "BudgetExceeded".
int exit_code_for_error(std::string_view kind);

Report run(const InputDocument& doc, const RunOptions& opts, std::size_t index = 0);
Report error_report(const BatchItem& item, std::size_t index);

/// Positive cap from COUNT_PRECISION_CAP_BITS, 0 when unset. Throws ParseError when malformed.
long precision_cap_from_env();

}  // namespace circount::cli
