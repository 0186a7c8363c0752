#include "circount/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <sstream>

#include "circount/errors.hpp"
#include "circount/verify.hpp"

namespace circount::cli {

namespace {

constexpr std::size_t kMaxDimension = 4096;

std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

mpz_class parse_int(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool digits = s.size() > start &&
                  std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (!digits) throw ParseError(field + ": \"" + s + "\" is not a decimal integer");
    return mpz_class(s[0] == '+' ? s.substr(1) : s);
  }
  throw ParseError(field + ": expected an integer (number or decimal string), got " + std::string(v.type_name()));
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string rational(const mpq_class& q) { return q.get_str(); }

std::string endpoint(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::NegInf:
      return "-inf";
    case Endpoint::Kind::PosInf:
      return "+inf";
    case Endpoint::Kind::Finite:
      break;
  }
  return rational(e.value);
}

json strings(const std::vector<mpz_class>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json interval_json(const IsolatingInterval& j) {
  return {{"lo", rational(j.lo)}, {"hi", rational(j.hi)}, {"approx", mpq_class((j.lo + j.hi) / 2).get_d()}};
}

json result_json(const CountResult& r) {
  json out{{"kind", to_string(r.kind)}};
  if (r.kind == CountResult::Kind::Finite || r.kind == CountResult::Kind::UnverifiedGenericity)
    out["count"] = std::to_string(r.count);
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

json explain_json(const Explanation& ex) {
  json out = json::object();
  if (ex.circuit) {
    json sigma = json::array();
    for (std::size_t j : ex.circuit->sigma) sigma.push_back(j + 1);
    out["circuit"] = {{"sigma", sigma}, {"relation", strings(ex.circuit->relation)}};
  }
  if (ex.gale) {
    json order = json::array();
    for (std::size_t j : ex.gale->indexing.order) order.push_back(j + 1);
    out["labelling"] = order;
    out["relation"] = strings(ex.gale->indexing.relation);
    json gammas = json::array();
    for (const auto& g : ex.gale->gammas) gammas.push_back({{"slope", rational(g.slope)}, {"offset", rational(g.offset)}});
    out["gammas"] = gammas;
  }
  if (ex.form) out["form"] = to_string(*ex.form);
  if (ex.critical) {
    out["critical_polynomial"] = {{"degree", ex.critical->g.degree()},
                                  {"coefficients", strings(ex.critical->g.coeffs())},
                                  {"text", to_string(ex.critical->g)}};
    json pts = json::array();
    for (const auto& j : ex.critical->intervals) pts.push_back(interval_json(j));
    out["critical_points"] = pts;
  }
  if (ex.budget) {
    out["budget"] = {{"ceiling_bits", ex.ceiling_bits}, {"rho_log2", ex.budget->rho.floor_log2()}};
  }
  if (!ex.cells.empty()) {
    json cells = json::array();
    for (const auto& c : ex.cells) {
      json cell{{"lo", endpoint(c.lo)}, {"hi", endpoint(c.hi)}, {"eligible", c.eligible}};
      if (!c.eps.empty()) {
        cell["eps"] = c.eps;
        cell["u_sign"] = c.u_sign;
      }
      if (c.tally) {
        cell["signs"] = c.tally->signs;
        json crit = json::array();
        for (const auto& j : c.tally->critical) crit.push_back(interval_json(j));
        cell["critical_points"] = crit;
        cell["sign_changes"] = c.tally->sign_changes;
        cell["degenerate"] = c.tally->degenerate;
        cell["roots"] = c.tally->total();
      }
      cells.push_back(cell);
    }
    out["cells"] = cells;
    out["orthant_rank"] = ex.orthant_rank;
    out["multiplier"] = std::to_string(ex.multiplier);
  }
  if (!ex.notes.empty()) out["notes"] = ex.notes;
  return out;
}

json genericity_json(const CountResult& r, const Explanation& ex) {
  if (r.kind == CountResult::Kind::GenericityFailure) return {{"passed", false}, {"detail", r.detail}};
  json out{{"passed", true}};
  if (ex.gale) {
    json order = json::array();
    for (std::size_t j : ex.gale->indexing.order) order.push_back(j + 1);
    out["labelling"] = order;
  }
  return out;
}

struct Target {
  const char* name;
  CountResult (*fn)(const PolySystem&, const CountOptions&, Explanation*);
};

}  // namespace

InputDocument from_json(const json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object, got " + std::string(j.type_name()));
  const json& jn = require(j, "n");
  mpz_class nz = parse_int(jn, "n");
  if (nz < 1 || nz > static_cast<long>(kMaxDimension))
    throw ValidationError("n must lie in [1, " + std::to_string(kMaxDimension) + "]");
  const std::size_t n = nz.get_ui();
  const json& je = require(j, "exponents");
  const json& jc = require(j, "coefficients");
  if (!je.is_array()) throw ParseError("exponents: expected an array of exponent vectors");
  if (!jc.is_array()) throw ParseError("coefficients: expected an array of coefficient rows");
  const std::size_t t = je.size();
  if (t != n + 1 && t != n + 2)
    throw ValidationError("unsupported support size: t = " + std::to_string(t) + " with n = " + std::to_string(n) +
                          " (need n+1 or n+2 monomials)");
  InputDocument doc;
  doc.system.exponents = IntMatrix(n, t);
  doc.system.coeffs = IntMatrix(n, t);
  for (std::size_t k = 0; k < t; ++k) {
    const std::string f = "exponents[" + std::to_string(k) + "]";
    if (!je[k].is_array()) throw ParseError(f + ": expected an array of " + std::to_string(n) + " integers");
    if (je[k].size() != n)
      throw ValidationError(f + ": has " + std::to_string(je[k].size()) + " entries, expected n = " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) doc.system.exponents(i, k) = parse_int(je[k][i], f + "[" + std::to_string(i) + "]");
  }
  if (jc.size() != n)
    throw ValidationError("coefficients: has " + std::to_string(jc.size()) + " rows, expected n = " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string f = "coefficients[" + std::to_string(i) + "]";
    if (!jc[i].is_array()) throw ParseError(f + ": expected an array of " + std::to_string(t) + " integers");
    if (jc[i].size() != t)
      throw ValidationError(f + ": has " + std::to_string(jc[i].size()) + " entries, expected t = " + std::to_string(t));
    for (std::size_t k = 0; k < t; ++k) doc.system.coeffs(i, k) = parse_int(jc[i][k], f + "[" + std::to_string(k) + "]");
  }
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError("label: expected a string");
    doc.label = it->get<std::string>();
  }
  doc.system.validate();
  return doc;
}

InputDocument parse(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON at " + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
  return from_json(j);
}

json to_json(const InputDocument& doc) {
  const PolySystem& f = doc.system;
  json exps = json::array();
  for (std::size_t k = 0; k < f.terms(); ++k) exps.push_back(strings(f.exponents.column(k)));
  json rows = json::array();
  for (std::size_t i = 0; i < f.dim(); ++i) {
    auto r = f.coeffs.row(i);
    rows.push_back(strings(std::vector<mpz_class>(r.begin(), r.end())));
  }
  json out{{"n", f.dim()}, {"exponents", exps}, {"coefficients", rows}};
  if (doc.label) out["label"] = *doc.label;
  return out;
}

std::string serialize(const InputDocument& doc) { return to_json(doc).dump(); }

std::vector<BatchItem> parse_batch(std::string_view text) {
  std::vector<BatchItem> out;
  auto one = [&](auto&& produce, std::size_t line) {
    BatchItem item;
    item.line = line;
    try {
      item.doc = produce();
    } catch (const Error& e) {
      item.error_kind = e.kind();
      item.error_message = (line ? "line " + std::to_string(line) + ": " : std::string()) + e.what();
    }
    out.push_back(std::move(item));
  };

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0, lineno = 1;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    if (l.find_first_not_of(" \t\r") != std::string_view::npos) lines.emplace_back(lineno, l);
    start = end + 1;
    ++lineno;
  }
  if (lines.empty()) return out;

  json whole;
  bool whole_ok = true;
  try {
    whole = json::parse(text);
  } catch (const json::parse_error&) {
    whole_ok = false;
  }
  if (whole_ok && whole.is_array()) {
    for (std::size_t k = 0; k < whole.size(); ++k) {
      const json& e = whole[k];
      one([&] { return from_json(e); }, 0);
      if (!out.back().doc) out.back().error_message = "document " + std::to_string(k) + ": " + out.back().error_message;
    }
    return out;
  }
  if (whole_ok || lines.size() == 1) {
    one([&] { return parse(text); }, 0);
    return out;
  }
  for (const auto& [no, l] : lines) one([&] { return parse(l); }, no);
  return out;
}

int exit_code_for(const CountResult& r) {
  switch (r.kind) {
    case CountResult::Kind::Finite:
    case CountResult::Kind::UnverifiedGenericity:
      return kCounted;
    case CountResult::Kind::GenericityFailure:
      return kGenericityFailure;
    case CountResult::Kind::Infinite:
      return kInfinite;
  }
  return kInternal;
}

int exit_code_for_error(std::string_view kind) {
  if (kind == "ParseError" || kind == "ValidationError" || kind == "HyperplaneSupport") return kInvalidInput;
  return kInternal;
}

Report run(const InputDocument& doc, const RunOptions& opts, std::size_t index) {
  const auto t0 = std::chrono::steady_clock::now();
  Targets tg = opts.targets.any() ? opts.targets : Targets{true, true, true};
  std::vector<Target> targets;
  if (tg.positive) targets.push_back({"positive", count_positive});
  if (tg.torus) targets.push_back({"torus", count_torus});
  if (tg.affine) targets.push_back({"affine", count_affine});

  Report rep;
  json& body = rep.body;
  body["index"] = index;
  if (doc.label) body["label"] = *doc.label;
  body["n"] = doc.system.dim();
  body["terms"] = doc.system.terms();
  json results = json::object();
  json explain = json::object();
  json verify = json::object();
  json genericity;
  std::vector<std::string> verify_failures;
  std::ostringstream summary;
  summary << "#" << index;
  if (doc.label) summary << " " << *doc.label;
  summary << ":";

  CountOptions co;
  co.precision_cap_bits = opts.precision_cap_bits;
  std::optional<DirectCounts> direct;
  bool direct_tried = false;

  for (const Target& t : targets) {
    Explanation ex;
    try {
      CountResult r = t.fn(doc.system, co, &ex);
      results[t.name] = result_json(r);
      rep.exit_code = std::max(rep.exit_code, exit_code_for(r));
      if (genericity.is_null()) genericity = genericity_json(r, ex);
      if (opts.explain) explain[t.name] = explain_json(ex);
      summary << " " << t.name << "=" << to_string(r);

      if (opts.verify) {
        json v = json::object();
        std::size_t tallied = 0;
        for (const auto& c : ex.cells) tallied += c.tally.has_value();
        if (ex.form && ex.critical && tallied > 0) {
          std::size_t per_cell = std::max<std::size_t>(1, opts.verify_samples / tallied);
          SamplingCheck sc = check_sampling(*ex.form, *ex.critical, ex.cells, per_cell, 0x5eed + index);
          json problems = json::array();
          for (std::size_t k = 0; k < sc.problems.size() && k < 5; ++k) problems.push_back(sc.problems[k]);
          v["sampling"] = {{"consistent", sc.consistent}, {"samples", sc.samples}, {"unresolved", sc.unresolved},
                           {"sign_changes", sc.sign_changes}, {"problems", problems}};
          if (!sc.consistent) verify_failures.push_back(std::string(t.name) + ": sampled signs contradict the count");
        }
        const bool univariate_target = std::string_view(t.name) != "affine";
        if (doc.system.dim() == 1 && univariate_target) {
          if (!direct_tried) {
            direct_tried = true;
            try {
              direct = direct_univariate_counts(doc.system);
            } catch (const Error&) {
              direct.reset();
            }
          }
          if (direct) {
            std::uint64_t expected = std::string_view(t.name) == "positive" ? direct->positive : direct->torus;
            json d{{"count", std::to_string(expected)}};
            if (r.kind == CountResult::Kind::Finite) {
              d["agrees"] = r.count == expected;
              if (r.count != expected)
                verify_failures.push_back(std::string(t.name) + ": direct isolation finds " + std::to_string(expected) +
                                          " roots");
            }
            v["direct"] = d;
          }
        }
        verify[t.name] = v;
      }
    } catch (const Error& e) {
      results[t.name] = {{"kind", "error"}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
      rep.exit_code = std::max(rep.exit_code, exit_code_for_error(e.kind()));
      summary << " " << t.name << "=error(" << e.kind() << ")";
    } catch (const std::exception& e) {
      results[t.name] = {{"kind", "error"}, {"error", {{"kind", "InternalError"}, {"message", e.what()}}}};
      rep.exit_code = kInternal;
      summary << " " << t.name << "=error(InternalError)";
    }
  }

  body["results"] = results;
  body["genericity"] = genericity.is_null() ? json{{"passed", nullptr}} : genericity;
  if (opts.verify) {
    verify["passed"] = verify_failures.empty();
    body["verify"] = verify;
    if (!verify_failures.empty()) {
      std::string msg;
      for (std::size_t k = 0; k < verify_failures.size(); ++k) msg += (k ? "; " : "") + verify_failures[k];
      body["error"] = {{"kind", "VerificationFailed"}, {"message", msg}};
      rep.exit_code = kInternal;
      summary << " VERIFY FAILED";
    } else {
      summary << " (verified)";
    }
  }
  if (opts.explain) body["explain"] = explain;
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  body["elapsed_ms"] = ms;
  body["exit_code"] = rep.exit_code;
  summary << " [" << static_cast<long>(ms) << " ms]";
  rep.summary = summary.str();
  return rep;
}

Report error_report(const BatchItem& item, std::size_t index) {
  Report rep;
  rep.exit_code = exit_code_for_error(item.error_kind);
  rep.body = {{"index", index},
              {"error", {{"kind", item.error_kind}, {"message", item.error_message}}},
              {"exit_code", rep.exit_code}};
  if (item.line) rep.body["line"] = item.line;
  rep.summary = "#" + std::to_string(index) + ": " + item.error_kind + ": " + item.error_message;
  return rep;
}

long precision_cap_from_env() {
  const char* v = std::getenv("COUNT_PRECISION_CAP_BITS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  long cap = std::strtol(v, &end, 10);
  if (*end != '\0' || cap <= 0) throw ParseError(std::string("COUNT_PRECISION_CAP_BITS must be a positive integer, got \"") + v + "\"");
  return cap;
}

}  // namespace circount::cli
