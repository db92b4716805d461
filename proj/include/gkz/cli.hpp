#pragma once

// Command-line front end. Every command builds one JSON document; the text
// format is rendered from that document, so both outputs always agree.
//
// Exit codes: 0 analysis completed, 2 invalid input, 1 internal error.

#include "gkz/gkz.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gkz::cli {

using json = nlohmann::ordered_json;

inline constexpr const char *schema_version = "1";

inline const std::vector<std::string> &commands() {
  static const std::vector<std::string> names{"validate", "faces",    "toric-ideal", "qdeg",
                                              "sres",     "res",      "contiguity",  "shift",
                                              "border",   "export",   "report"};
  return names;
}

struct ProblemInput {
  std::optional<IntMatrix> A;
  std::optional<RatVector> beta;
  std::vector<ColumnSet> taus;  // 0-based
  std::optional<ColumnSet> face;
  std::optional<std::size_t> j;
  std::string order = "grevlex";
};

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Scanner {
public:
  Scanner(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[nodiscard]] bool done() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorKind::ParseError, source_ + ": line " + std::to_string(line_) + ", column " +
                                           std::to_string(col_) + ": " + what);
  }

  // Skips blanks and comments; newlines are skipped only when asked.
  void skip(bool newlines) {
    while (!done()) {
      char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        advance();
      } else {
        break;
      }
    }
  }

  Int integer() {
    std::string digits;
    if (!done() && (peek() == '-' || peek() == '+')) {
      if (peek() == '-') digits += '-';
      advance();
    }
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      digits += peek();
      advance();
    }
    if (digits.empty() || digits == "-") fail(found("an integer"));
    return Int(digits);
  }

  Rat rational() {
    Int num = integer();
    Int den = 1;
    if (!done() && peek() == '/') {
      advance();
      if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) fail(found("a denominator"));
      den = integer();
      if (den == 0) fail("zero denominator");
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
  }

  [[nodiscard]] std::string found(const std::string &expected) const {
    if (done()) return "expected " + expected + ", found end of input";
    return "expected " + expected + ", found '" + std::string(1, peek()) + "'";
  }

private:
  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

} // namespace detail

/// Rows separated by ';' or newlines, entries by whitespace; '#' starts a comment.
inline IntMatrix parse_matrix(std::string_view text, const std::string &source) {
  detail::Scanner s(text, source);
  std::vector<IntVector> rows;
  IntVector row;
  auto end_row = [&] {
    if (row.empty()) return;
    if (!rows.empty() && row.size() != rows.front().size())
      s.fail("row " + std::to_string(rows.size() + 1) + " has " + std::to_string(row.size()) +
             " entries, expected " + std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
    row.clear();
  };
  for (;;) {
    s.skip(false);
    if (s.done()) break;
    char c = s.peek();
    if (c == ';' || c == '\n') {
      end_row();
      s.advance();
      continue;
    }
    row.push_back(s.integer());
    if (!s.done() && !std::isspace(static_cast<unsigned char>(s.peek())) && s.peek() != ';' && s.peek() != '#')
      s.fail(s.found("a separator"));
  }
  end_row();
  if (rows.empty()) s.fail("empty matrix");
  IntMatrix A(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t k = 0; k < rows[i].size(); ++k) A(i, k) = rows[i][k];
  return A;
}

/// Rationals "p" or "p/q" separated by commas or whitespace.
inline RatVector parse_rationals(std::string_view text, const std::string &source) {
  detail::Scanner s(text, source);
  RatVector out;
  for (;;) {
    s.skip(true);
    if (s.done()) break;
    out.push_back(s.rational());
    s.skip(true);
    if (!s.done() && s.peek() == ',') {
      s.advance();
      s.skip(true);
      if (s.done()) s.fail(s.found("a rational number"));
    }
  }
  if (out.empty()) s.fail("empty parameter vector");
  return out;
}

/// 1-based column indices separated by commas or whitespace, returned 0-based.
inline ColumnSet parse_columns(std::string_view text, const std::string &source) {
  detail::Scanner s(text, source);
  ColumnSet out;
  for (;;) {
    s.skip(true);
    if (s.done()) break;
    Int v = s.integer();
    if (v < 1 || !v.fits_ulong_p()) s.fail("column indices start at 1");
    out.push_back(v.get_ui() - 1);
    s.skip(true);
    if (!s.done() && s.peek() == ',') s.advance();
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline TermOrder parse_order(const std::string &name) {
  if (name == "grevlex") return TermOrder::grevlex();
  if (name == "lex") return TermOrder::lex();
  throw Error(ErrorKind::ParseError, "--order: unknown term order '" + name + "' (grevlex or lex)");
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Int json_integer(const nlohmann::json &v, const std::string &where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? Int(v.get<unsigned long>()) : Int(v.get<long>());
  if (v.is_string()) return Scanner(v.get<std::string>(), where).integer();
  throw Error(ErrorKind::ParseError, where + ": expected an integer");
}

inline ColumnSet json_columns(const nlohmann::json &v, const std::string &where) {
  if (!v.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array of column indices");
  ColumnSet out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int c = json_integer(v[i], where + "[" + std::to_string(i) + "]");
    if (c < 1 || !c.fits_ulong_p())
      throw Error(ErrorKind::ParseError, where + "[" + std::to_string(i) + "]: column indices start at 1");
    out.push_back(c.get_ui() - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace detail

/// Structured input: the "input" object of a report, or a whole report.
inline ProblemInput parse_json_input(std::string_view text, const std::string &source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::ParseError, source + ": line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": malformed JSON");
  }
  if (doc.is_object() && doc.contains("input")) doc = doc["input"];
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, source + ": expected a JSON object");

  ProblemInput in;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string &key = it.key();
    const auto &v = it.value();
    const std::string where = source + ": " + key;
    if (key == "A") {
      if (!v.is_array() || v.empty()) throw Error(ErrorKind::ParseError, where + ": expected a nonempty array of rows");
      std::vector<IntVector> rows;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_array() || v[i].empty())
          throw Error(ErrorKind::ParseError, where + "[" + std::to_string(i) + "]: expected a nonempty row");
        IntVector row;
        for (std::size_t k = 0; k < v[i].size(); ++k)
          row.push_back(detail::json_integer(v[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        if (!rows.empty() && row.size() != rows.front().size())
          throw Error(ErrorKind::ParseError, where + "[" + std::to_string(i) + "]: rows differ in length");
        rows.push_back(std::move(row));
      }
      IntMatrix A(rows.size(), rows.front().size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t k = 0; k < rows[i].size(); ++k) A(i, k) = rows[i][k];
      in.A = std::move(A);
    } else if (key == "beta") {
      if (!v.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array");
      RatVector beta;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (v[i].is_string()) {
          detail::Scanner s(v[i].get<std::string>(), at);
          beta.push_back(s.rational());
          if (!s.done()) s.fail(s.found("end of the number"));
        } else {
          beta.emplace_back(detail::json_integer(v[i], at));
        }
      }
      in.beta = std::move(beta);
    } else if (key == "tau") {
      if (!v.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array of column lists");
      for (std::size_t i = 0; i < v.size(); ++i)
        in.taus.push_back(detail::json_columns(v[i], where + "[" + std::to_string(i) + "]"));
    } else if (key == "face") {
      in.face = detail::json_columns(v, where);
    } else if (key == "j") {
      Int c = detail::json_integer(v, where);
      if (c < 1 || !c.fits_ulong_p()) throw Error(ErrorKind::ParseError, where + ": column indices start at 1");
      in.j = c.get_ui() - 1;
    } else if (key == "order") {
      if (!v.is_string()) throw Error(ErrorKind::ParseError, where + ": expected a string");
      in.order = v.get<std::string>();
    } else {
      throw Error(ErrorKind::ParseError, where + ": unknown key");
    }
  }
  return in;
}

/// A file holding either structured JSON or a bare matrix.
inline ProblemInput parse_input_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, path + ": cannot open file");
  std::stringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_input(text, path);
  ProblemInput in;
  in.A = parse_matrix(text, path);
  return in;
}

// ---------------------------------------------------------------------------
// JSON building blocks

namespace detail {

inline json num(const Int &v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}
inline json nums(const IntVector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(num(x));
  return a;
}
inline json rat(const Rat &q) { return q.get_str(); }
inline json rats(const RatVector &v) {
  json a = json::array();
  for (const auto &x : v) a.push_back(rat(x));
  return a;
}
inline json cols(const ColumnSet &c) {
  json a = json::array();
  for (auto j : c) a.push_back(j + 1);
  return a;
}
inline json basis(const LatticeBasis &b) {
  json a = json::array();
  for (std::size_t i = 0; i < b.rank(); ++i) a.push_back(nums(b.vector(i)));
  return a;
}
inline json piece(const QdegPiece &p) { return json{{"shift", nums(p.shift)}, {"span", cols(p.span)}}; }
inline json arrangement(const QdegArrangement &a) {
  json out = json::array();
  for (const auto &p : a.pieces) out.push_back(piece(p));
  return out;
}
inline json error_object(const Error &e) { return json{{"kind", to_string(e.kind())}, {"message", e.detail()}}; }

inline json echo(const ProblemInput &in) {
  json o = json::object();
  if (in.A) {
    json rows = json::array();
    for (std::size_t i = 0; i < in.A->rows(); ++i) rows.push_back(nums(in.A->row(i)));
    o["A"] = rows;
  }
  if (in.beta) o["beta"] = rats(*in.beta);
  if (!in.taus.empty()) {
    json t = json::array();
    for (const auto &tau : in.taus) t.push_back(cols(tau));
    o["tau"] = t;
  }
  if (in.face) o["face"] = cols(*in.face);
  if (in.j) o["j"] = *in.j + 1;
  o["order"] = in.order;
  return o;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Analyses

struct Context {
  ProblemInput input;
  std::string dialect = "macaulay2";
  std::string payload = "ek";
};

class Runner {
public:
  Runner(const Context &ctx, const GkzMatrix &G)
      : ctx_(ctx), g_(G), ord_(parse_order(ctx.input.order)), res_(G, ord_) {}

  json section(const std::string &name) {
    if (name == "validate") return validate_section();
    if (name == "faces") return faces_section();
    if (name == "toric-ideal") return toric_section();
    if (name == "qdeg") return qdeg_section();
    if (name == "sres") return sres_section();
    if (name == "res") return res_section();
    if (name == "contiguity") return contiguity_section();
    if (name == "shift") return shift_section();
    if (name == "border") return border_section();
    return export_section();
  }

  json validate_section() const {
    return json{{"ok", true},
                {"d", g_.d()},
                {"n", g_.n()},
                {"failures", json::array()},
                {"smith_divisors", detail::nums(g_.smith().divisors())},
                {"positive_functional", detail::nums(g_.positive_functional())}};
  }

  json faces_section() const {
    json out = json::array();
    for (const auto &f : g_.faces()) {
      json o{{"columns", detail::cols(f.columns)}, {"dim", f.dim}};
      o["normal"] = f.normal ? detail::nums(*f.normal) : json(nullptr);
      out.push_back(o);
    }
    return out;
  }

  json toric_section() const {
    json gens = json::array();
    for (const auto &b : toric_ideal(g_, ord_).generators) gens.push_back(to_string(b));
    return json{{"order", ctx_.input.order}, {"generators", gens}};
  }

  json qdeg_section() const {
    json out = json::array();
    for (const auto &tau : taus_or_singletons())
      out.push_back(json{{"tau", detail::cols(tau)}, {"pieces", detail::arrangement(qdeg_quotient(g_, tau, ord_))}});
    return out;
  }

  json sres_section() const {
    const auto &beta = need_beta();
    auto v = res_.verdict(beta);
    json per = json::array();
    for (const auto &s : v.per_column) {
      json o{{"j", s.j + 1}, {"strongly_resonant", s.strongly_resonant}};
      if (s.witness) o["witness"] = json{{"k", detail::num(s.witness->k)}, {"piece", detail::piece(s.witness->piece)}};
      per.push_back(o);
    }
    json out{{"per_column", per},
             {"strongly_resonant", v.strongly_resonant},
             {"isomorphic", v.isomorphic},
             {"statement", v.statement}};
    if (g_.d() == 2) {
      json rows = json::array();
      for (int b2 = 5; b2 >= -5; --b2) {
        std::string row;
        for (int b1 = -5; b1 <= 5; ++b1) row += res_.strongly_resonant({Rat(b1), Rat(b2)}) ? '#' : '.';
        rows.push_back(row);
      }
      out["grid"] = json{{"min", -5}, {"max", 5}, {"rows", rows}};
    }
    return out;
  }

  json res_section() const {
    auto r = res_.is_resonant(need_beta());
    json o{{"resonant", r.resonant}};
    o["face"] = r.face ? detail::cols(r.face->columns) : json(nullptr);
    return o;
  }

  json contiguity_section() const {
    const auto &beta = need_beta();
    json out = json::array();
    for (auto j : columns_or_all()) {
      json o{{"j", j + 1}, {"quasi_isomorphism", res_.contiguity_shift_qiso(beta, j)}};
      try {
        json levels = json::array();
        for (const auto &k : res_.cokernel_levels(beta, j)) levels.push_back(detail::num(k));
        o["cokernel_levels"] = levels;
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::InfiniteFamily) throw;
        o["cokernel_levels"] = nullptr;
        o["infinite_family"] = e.detail();
      }
      out.push_back(o);
    }
    return out;
  }

  json shift_section() const {
    const auto &beta = need_beta();
    json out{{"epsilon_A", detail::nums(res_.epsilon())}};
    try {
      out["minimal_full"] = detail::num(res_.minimal_shift_full(beta));
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::InfiniteFamily) throw;
      out["minimal_full"] = nullptr;
      out["infinite_family"] = e.detail();
    }
    json partial = json::array();
    for (const auto &tau : ctx_.input.taus) {
      json o{{"tau", detail::cols(tau)}};
      try {
        o["k"] = detail::num(res_.minimal_shift_partial(beta, tau));
      } catch (const Error &e) {
        if (e.kind() != ErrorKind::InfiniteFamily) throw;
        o["k"] = nullptr;
        o["infinite_family"] = e.detail();
      }
      partial.push_back(o);
    }
    out["partial"] = partial;
    return out;
  }

  json border_section() const {
    json out = json::array();
    for (const auto &r : border_reports()) {
      json alpha = json::array();
      for (const auto &a : r.alpha) alpha.push_back(detail::rats(a));
      out.push_back(json{{"face", detail::cols(r.face.columns)},
                         {"dim", r.dim},
                         {"qprime", detail::basis(r.qprime)},
                         {"k", detail::nums(r.k)},
                         {"index", detail::num(r.index)},
                         {"qsecond", detail::basis(r.qsecond)},
                         {"beta_prime", detail::rats(r.beta_prime)},
                         {"beta_second", detail::rats(r.beta_second)},
                         {"nonzero", r.nonzero},
                         {"alpha", alpha},
                         {"multiplicity", detail::nums(r.multiplicity)},
                         {"polynomial_variables", detail::cols(r.polynomial_variables)}});
    }
    return out;
  }

  json export_section() const {
    return json{{"dialect", ctx_.dialect}, {"payload", ctx_.payload}, {"script", script()}};
  }

private:
  [[nodiscard]] const RatVector &need_beta() const {
    if (!ctx_.input.beta) throw Error(ErrorKind::UnsupportedInput, "this command needs a parameter vector (-b)");
    return *ctx_.input.beta;
  }

  [[nodiscard]] std::vector<ColumnSet> taus_or_singletons() const {
    if (!ctx_.input.taus.empty()) return ctx_.input.taus;
    std::vector<ColumnSet> out;
    for (std::size_t j = 0; j < g_.n(); ++j) out.push_back({j});
    return out;
  }

  [[nodiscard]] std::vector<std::size_t> columns_or_all() const {
    if (ctx_.input.j) return {*ctx_.input.j};
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < g_.n(); ++j) out.push_back(j);
    return out;
  }

  [[nodiscard]] std::vector<BorderImageReport> border_reports() const {
    const auto &beta = need_beta();
    std::vector<BorderImageReport> out;
    if (ctx_.input.face) {
      out.push_back(border_image(g_, *ctx_.input.face, beta));
    } else {
      for (const auto &f : g_.faces()) out.push_back(border_image(g_, f.columns, beta));
    }
    return out;
  }

  [[nodiscard]] std::string script() const {
    const auto &name = ctx_.payload;
    if (name == "ek") return export_script(ctx_.dialect, ek_complex(g_, need_beta(), ord_));
    if (name == "contiguity") {
      if (!ctx_.input.j) throw Error(ErrorKind::UnsupportedInput, "the contiguity payload needs a column (-j)");
      return export_script(ctx_.dialect, contiguity_payload(g_, need_beta(), *ctx_.input.j, ord_));
    }
    if (name == "border") return export_script(ctx_.dialect, BorderPayload{g_.matrix(), need_beta(), border_reports()});
    throw Error(ErrorKind::UnsupportedInput, "unknown export payload '" + name + "' (ek, contiguity or border)");
  }

  const Context &ctx_;
  const GkzMatrix &g_;
  TermOrder ord_;
  ResonanceAnalyzer res_;
};

// ---------------------------------------------------------------------------
// Text rendering

namespace detail {

inline std::string scalar(const json &v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline std::string tuple(const json &arr) {
  std::string s = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? ", " : "") + scalar(arr[i]);
  return s + ")";
}
inline std::string set(const json &arr) {
  std::string s = "{";
  for (std::size_t i = 0; i < arr.size(); ++i) s += (i ? "," : "") + scalar(arr[i]);
  return s + "}";
}
inline std::string piece_text(const json &p) {
  std::string s = tuple(p["shift"]);
  if (!p["span"].empty()) s += " + C" + set(p["span"]);
  return s;
}
inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline void render_section(std::ostream &o, const std::string &name, const json &s) {
  if (name == "validate") {
    if (!s["ok"].get<bool>()) {
      o << "validate\n  hypotheses fail:";
      for (const auto &f : s["failures"]) o << " " << f.get<std::string>();
      o << "\n";
      return;
    }
    o << "validate\n  ok: d = " << s["d"] << ", n = " << s["n"] << ", Smith divisors "
      << tuple(s["smith_divisors"]) << ", positive functional " << tuple(s["positive_functional"]) << "\n";
  } else if (name == "faces") {
    o << "faces\n";
    for (const auto &f : s) {
      o << "  " << set(f["columns"]) << "  dim " << f["dim"];
      if (!f["normal"].is_null()) o << "  normal " << tuple(f["normal"]);
      o << "\n";
    }
  } else if (name == "toric-ideal") {
    o << "toric-ideal (" << s["order"].get<std::string>() << ")\n";
    for (const auto &g : s["generators"]) o << "  " << g.get<std::string>() << "\n";
  } else if (name == "qdeg") {
    o << "qdeg\n";
    for (const auto &t : s) {
      o << "  tau " << set(t["tau"]) << ":";
      if (t["pieces"].empty()) o << " empty";
      for (std::size_t i = 0; i < t["pieces"].size(); ++i) o << (i ? ";" : "") << " " << piece_text(t["pieces"][i]);
      o << "\n";
    }
  } else if (name == "sres") {
    o << "sres\n";
    for (const auto &c : s["per_column"]) {
      o << "  j = " << c["j"] << ": ";
      if (c.contains("witness"))
        o << "yes, k = " << scalar(c["witness"]["k"]) << ", piece " << piece_text(c["witness"]["piece"]) << "\n";
      else
        o << "no\n";
    }
    o << "  verdict: " << s["statement"].get<std::string>() << "\n";
    if (s.contains("grid")) {
      o << "  strongly resonant integer parameters in [-5,5]^2 (# = member), beta2 from 5 down to -5:\n";
      int b2 = 5;
      for (const auto &row : s["grid"]["rows"]) {
        std::string label = std::to_string(b2--);
        o << "  " << std::string(3 - label.size(), ' ') << label << " " << row.get<std::string>() << "\n";
      }
    }
  } else if (name == "res") {
    o << "res\n  resonant: " << yes(s["resonant"].get<bool>());
    if (!s["face"].is_null()) o << ", face " << set(s["face"]);
    o << "\n";
  } else if (name == "contiguity") {
    o << "contiguity\n";
    for (const auto &c : s) {
      o << "  j = " << c["j"] << ": quasi-isomorphism " << yes(c["quasi_isomorphism"].get<bool>());
      if (c["cokernel_levels"].is_null()) o << "; cokernel levels infinite (" << c["infinite_family"].get<std::string>() << ")";
      else o << "; cokernel levels " << set(c["cokernel_levels"]);
      o << "\n";
    }
  } else if (name == "shift") {
    o << "shift\n  epsilon_A = " << tuple(s["epsilon_A"]) << "\n  minimal full shift: ";
    if (s["minimal_full"].is_null()) o << "none (" << s["infinite_family"].get<std::string>() << ")\n";
    else o << scalar(s["minimal_full"]) << "\n";
    for (const auto &p : s["partial"]) {
      o << "  minimal shift along tau " << set(p["tau"]) << ": ";
      if (p["k"].is_null()) o << "none (" << p["infinite_family"].get<std::string>() << ")\n";
      else o << scalar(p["k"]) << "\n";
    }
  } else if (name == "border") {
    o << "border\n";
    for (const auto &r : s) {
      o << "  face " << set(r["face"]) << ": dim " << r["dim"] << ", K = " << tuple(r["k"]) << ", index "
        << scalar(r["index"]) << ", " << (r["nonzero"].get<bool>() ? "nonzero" : "zero") << "\n";
      o << "    Q' =";
      for (const auto &v : r["qprime"]) o << " " << tuple(v);
      o << "; Q'' =";
      for (const auto &v : r["qsecond"]) o << " " << tuple(v);
      o << "\n    beta' = " << tuple(r["beta_prime"]) << ", beta'' = " << tuple(r["beta_second"]) << "\n";
      o << "    alpha:";
      if (r["alpha"].empty()) o << " none";
      for (const auto &a : r["alpha"]) o << " " << tuple(a);
      o << "\n    multiplicities " << tuple(r["multiplicity"]) << ", polynomial variables";
      if (r["polynomial_variables"].empty()) o << " none";
      for (const auto &j : r["polynomial_variables"]) o << " x" << j;
      o << "\n";
    }
  } else if (name == "export") {
    o << "export (" << s["dialect"].get<std::string>() << ", " << s["payload"].get<std::string>() << ")\n";
    o << s["script"].get<std::string>();
  }
}

inline std::string render_text(const json &doc) {
  std::ostringstream o;
  const auto &in = doc["input"];
  o << "gkz " << doc["command"].get<std::string>() << "\n";
  if (in.contains("A")) {
    o << "A = [";
    for (std::size_t i = 0; i < in["A"].size(); ++i) {
      o << (i ? "; " : "");
      for (std::size_t k = 0; k < in["A"][i].size(); ++k) o << (k ? " " : "") << scalar(in["A"][i][k]);
    }
    o << "]\n";
  }
  if (in.contains("beta")) o << "beta = " << tuple(in["beta"]) << "\n";
  if (in.contains("tau"))
    for (const auto &t : in["tau"]) o << "tau = " << set(t) << "\n";
  if (in.contains("face")) o << "face = " << set(in["face"]) << "\n";
  if (in.contains("j")) o << "j = " << in["j"] << "\n";
  o << "order = " << in["order"].get<std::string>() << "\n";
  if (doc.contains("sections"))
    for (auto it = doc["sections"].begin(); it != doc["sections"].end(); ++it) {
      o << "\n";
      render_section(o, it.key(), it.value());
    }
  if (doc.contains("error"))
    o << "\nerror: " << doc["error"]["kind"].get<std::string>() << ": " << doc["error"]["message"].get<std::string>() << "\n";
  return o.str();
}

} // namespace detail

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Exact analysis of A-hypergeometric systems", "gkz"};
  std::string command, matrix_text, beta_text, face_text, input_path, out_path, order;
  std::vector<std::string> tau_texts;
  std::size_t j_flag = 0;
  bool as_json = false;
  Context ctx;

  app.add_option("command", command, "validate | faces | toric-ideal | qdeg | sres | res | contiguity | shift | border | export | report")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("-A,--matrix", matrix_text, "matrix rows separated by ';', entries by spaces");
  app.add_option("-b,--beta", beta_text, "parameter vector, e.g. \"1,-1/2\"");
  app.add_option("--tau", tau_texts, "column subset, e.g. \"1,2\" (repeatable)");
  app.add_option("--face", face_text, "face as a column subset, e.g. \"1\"");
  app.add_option("-j,--column", j_flag, "column index (1-based)")->check(CLI::PositiveNumber);
  app.add_option("--order", order, "term order: grevlex or lex");
  app.add_option("--input", input_path, "input file: JSON or matrix syntax");
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--out", out_path, "write the report to a file");
  app.add_option("--dialect", ctx.dialect, "export dialect")->capture_default_str();
  app.add_option("--payload", ctx.payload, "export payload: ek, contiguity or border")->capture_default_str();

  std::vector<const char *> argv{"gkz"};
  for (const auto &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "gkz: " << e.what() << "\n";
    return 2;
  }

  json doc;
  doc["schema_version"] = schema_version;
  doc["command"] = command;
  int code = 0;

  auto fail = [&](const Error &e) {
    doc["error"] = detail::error_object(e);
    err << "gkz: " << e.what() << "\n";
    return 2;
  };

  try {
    try {
      if (!input_path.empty()) ctx.input = parse_input_file(input_path);
      if (!matrix_text.empty()) ctx.input.A = parse_matrix(matrix_text, "-A");
      if (!beta_text.empty()) ctx.input.beta = parse_rationals(beta_text, "-b");
      for (const auto &t : tau_texts) ctx.input.taus.push_back(parse_columns(t, "--tau"));
      if (!face_text.empty()) ctx.input.face = parse_columns(face_text, "--face");
      if (j_flag > 0) ctx.input.j = j_flag - 1;
      if (!order.empty()) ctx.input.order = order;
      doc["input"] = detail::echo(ctx.input);

      parse_order(ctx.input.order);
      if (!ctx.input.A) throw Error(ErrorKind::ParseError, "no matrix given (use -A or --input)");
      const IntMatrix &A = *ctx.input.A;
      if (ctx.input.beta && ctx.input.beta->size() != A.rows())
        throw Error(ErrorKind::DimensionMismatch, "beta has " + std::to_string(ctx.input.beta->size()) +
                                                      " entries but A has " + std::to_string(A.rows()) + " rows");
      auto check_cols = [&](const ColumnSet &c, const char *what) {
        for (auto x : c)
          if (x >= A.cols())
            throw Error(ErrorKind::IndexOutOfRange, std::string(what) + ": column " + std::to_string(x + 1) +
                                                        " but A has " + std::to_string(A.cols()) + " columns");
      };
      for (const auto &t : ctx.input.taus) {
        check_cols(t, "--tau");
        if (t.empty()) throw Error(ErrorKind::ParseError, "--tau: empty column subset");
      }
      if (ctx.input.face) check_cols(*ctx.input.face, "--face");
      if (ctx.input.j) check_cols({*ctx.input.j}, "-j");
      if (command == "export") parse_dialect(ctx.dialect);

      auto failures = A.rows() && A.cols() ? diagnose(A) : std::vector<ErrorKind>{ErrorKind::DimensionMismatch};
      if (!failures.empty()) {
        json f = json::array();
        for (auto k : failures) f.push_back(to_string(k));
        doc["sections"]["validate"] = json{{"ok", false}, {"failures", f}};
        validate(A);  // throws the first failure
      }
      GkzMatrix G = validate(A);
      Runner runner(ctx, G);
      if (command == "report") {
        for (const auto &name : commands())
          if (name != "report") doc["sections"][name] = runner.section(name);
      } else {
        doc["sections"][command] = runner.section(command);
      }
    } catch (const Error &e) {
      if (!doc.contains("input")) doc["input"] = detail::echo(ctx.input);
      code = fail(e);
    }
  } catch (const std::exception &e) {
    err << "gkz: internal error: " << e.what() << "\n";
    return 1;
  }

  std::string text;
  if (as_json) text = doc.dump(2) + "\n";
  else if (command == "export" && code == 0) text = doc["sections"]["export"]["script"].get<std::string>();
  else text = detail::render_text(doc);

  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "gkz: cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  } else {
    out << text;
  }
  return code;
}

} // namespace gkz::cli
