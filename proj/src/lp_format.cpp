// Copyright 2026 The evacshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evacshare/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace evacshare {

namespace {

constexpr std::size_t kMaxLineLength = 250;

std::string_view sense_token(Sense s) {
  switch (s) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "=";
}

// Appends " + 3 x" style terms, wrapping long rows onto continuation lines.
void write_terms(std::ostringstream& os, std::string line, const std::vector<Term>& terms,
                 const MipModel& model, const std::string& tail) {
  bool first = true;
  for (const auto& t : terms) {
    std::string piece;
    const double mag = std::abs(t.coef);
    if (first) {
      piece = t.coef < 0 ? " -" : "";
    } else {
      piece = t.coef < 0 ? " -" : " +";
    }
    if (mag != 1.0) piece += " " + format_number(mag);
    piece += " " + model.variables[t.var].name;
    if (line.size() + piece.size() > kMaxLineLength) {
      os << line << '\n';
      line = "  ";
    }
    line += piece;
    first = false;
  }
  if (line.size() + tail.size() > kMaxLineLength) {
    os << line << '\n';
    line = "  ";
  }
  os << line << tail << '\n';
}

}  // namespace

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string export_lp(const MipModel& model) {
  std::ostringstream os;
  os << "Maximize\n";
  os << "\\ evacshare ridesharing evacuation model: " << model.name << " (" << to_string(model.mode) << ")\n";
  write_terms(os, " obj:", model.objective, model, "");
  os << "Subject To\n";
  for (const auto& row : model.constraints) {
    write_terms(os, " " + row.name + ":", row.terms, model,
                " " + std::string(sense_token(row.sense)) + " " + format_number(row.rhs));
  }
  os << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::kBinary) continue;
    if (std::isinf(v.upper)) {
      os << ' ' << v.name << " >= " << format_number(v.lower) << '\n';
    } else {
      os << ' ' << format_number(v.lower) << " <= " << v.name << " <= " << format_number(v.upper) << '\n';
    }
  }
  auto write_list = [&](const char* header, VarKind kind) {
    std::string line;
    bool any = false;
    for (const auto& v : model.variables) {
      if (v.kind != kind) continue;
      if (!any) os << header << '\n';
      any = true;
      if (line.size() + v.name.size() + 1 > kMaxLineLength) {
        os << line << '\n';
        line.clear();
      }
      line += ' ' + v.name;
    }
    if (!line.empty()) os << line << '\n';
  };
  write_list("Generals", VarKind::kInteger);
  write_list("Binaries", VarKind::kBinary);
  os << "End\n";
  return os.str();
}

std::vector<std::string> LpModel::variable_names() const {
  std::vector<std::string> names;
  std::set<std::string> seen;
  auto note = [&](const std::string& n) {
    if (seen.insert(n).second) names.push_back(n);
  };
  for (const auto& t : objective) note(t.var);
  for (const auto& r : rows)
    for (const auto& t : r.terms) note(t.var);
  for (const auto& [n, _] : bounds) note(n);
  for (const auto& n : generals) note(n);
  for (const auto& n : binaries) note(n);
  return names;
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBounds, kGenerals, kBinaries, kEnd };

enum class TokKind { kIdent, kNumber, kSign, kOp, kColon };

struct Token {
  TokKind kind;
  std::string text;
  double value = 0.0;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<Section> section_keyword(const std::string& line) {
  const std::string l = lower(line);
  if (l == "maximize" || l == "maximum" || l == "max" || l == "minimize" || l == "minimum" || l == "min") {
    return Section::kObjective;
  }
  if (l == "subject to" || l == "such that" || l == "st" || l == "s.t." || l == "st.") return Section::kConstraints;
  if (l == "bounds" || l == "bound") return Section::kBounds;
  if (l == "generals" || l == "general" || l == "gen" || l == "integers") return Section::kGenerals;
  if (l == "binaries" || l == "binary" || l == "bin") return Section::kBinaries;
  if (l == "end") return Section::kEnd;
  return std::nullopt;
}

bool is_number_start(std::string_view s, std::size_t i) {
  const char c = s[i];
  if (std::isdigit(static_cast<unsigned char>(c))) return true;
  return c == '.' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]));
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '+' || c == '-') {
      out.push_back({TokKind::kSign, std::string(1, c)});
      ++i;
    } else if (c == ':') {
      out.push_back({TokKind::kColon, ":"});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::string op(1, c);
      if (i + 1 < s.size() && (s[i + 1] == '=' || s[i + 1] == '<' || s[i + 1] == '>')) op += s[++i];
      ++i;
      if (op == "=<" || op == "<") op = "<=";
      if (op == "=>" || op == ">") op = ">=";
      if (op == "==") op = "=";
      out.push_back({TokKind::kOp, op});
    } else if (is_number_start(s, i)) {
      double v = 0.0;
      auto res = std::from_chars(s.data() + i, s.data() + s.size(), v);
      if (res.ec != std::errc()) throw LpParseError("bad number near '" + std::string(s.substr(i, 16)) + "'");
      const std::size_t len = static_cast<std::size_t>(res.ptr - (s.data() + i));
      out.push_back({TokKind::kNumber, std::string(s.substr(i, len)), v});
      i += len;
    } else {
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ':' && s[j] != '<' &&
             s[j] != '>' && s[j] != '=' && s[j] != '+' && s[j] != '-') {
        ++j;
      }
      std::string ident(s.substr(i, j - i));
      const std::string l = lower(ident);
      if (l == "inf" || l == "infinity") {
        out.push_back({TokKind::kNumber, ident, std::numeric_limits<double>::infinity()});
      } else {
        out.push_back({TokKind::kIdent, std::move(ident)});
      }
      i = j;
    }
  }
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  bool done() const { return pos_ >= toks_.size(); }
  const Token& peek(std::size_t ahead = 0) const {
    if (pos_ + ahead >= toks_.size()) throw LpParseError("unexpected end of section");
    return toks_[pos_ + ahead];
  }
  bool has(std::size_t ahead) const { return pos_ + ahead < toks_.size(); }
  Token next() {
    const Token& t = peek();
    ++pos_;
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::optional<std::string> read_label(TokenStream& ts) {
  if (ts.has(1) && ts.peek().kind == TokKind::kIdent && ts.peek(1).kind == TokKind::kColon) {
    std::string name = ts.next().text;
    ts.next();
    return name;
  }
  return std::nullopt;
}

// Reads "[sign] [number] ident" terms until an operator or the end.
std::vector<LpTerm> read_terms(TokenStream& ts, bool stop_at_label) {
  std::vector<LpTerm> terms;
  while (!ts.done()) {
    if (ts.peek().kind == TokKind::kOp) break;
    if (stop_at_label && ts.has(1) && ts.peek().kind == TokKind::kIdent && ts.peek(1).kind == TokKind::kColon) {
      break;
    }
    double coef = 1.0;
    bool saw_any = false;
    while (!ts.done() && ts.peek().kind == TokKind::kSign) {
      if (ts.next().text == "-") coef = -coef;
      saw_any = true;
    }
    if (!ts.done() && ts.peek().kind == TokKind::kNumber) {
      coef *= ts.next().value;
      saw_any = true;
    }
    if (ts.done() || ts.peek().kind != TokKind::kIdent) {
      if (saw_any && coef == 0.0 && (ts.done() || ts.peek().kind == TokKind::kOp)) break;
      throw LpParseError("expected a variable name");
    }
    terms.push_back({ts.next().text, coef});
  }
  return terms;
}

double read_signed_number(TokenStream& ts) {
  double sign = 1.0;
  while (!ts.done() && ts.peek().kind == TokKind::kSign) {
    if (ts.next().text == "-") sign = -sign;
  }
  const Token t = ts.next();
  if (t.kind != TokKind::kNumber) throw LpParseError("expected a number, got '" + t.text + "'");
  return sign * t.value;
}

Sense to_sense(const std::string& op) {
  if (op == "<=") return Sense::kLessEqual;
  if (op == ">=") return Sense::kGreaterEqual;
  return Sense::kEqual;
}

void parse_objective(const std::string& body, LpModel& out) {
  TokenStream ts(tokenize(body));
  if (auto label = read_label(ts)) out.objective_name = *label;
  out.objective = read_terms(ts, false);
  if (!ts.done()) throw LpParseError("unexpected token in objective: '" + ts.peek().text + "'");
}

void parse_constraints(const std::string& body, LpModel& out) {
  TokenStream ts(tokenize(body));
  int unnamed = 0;
  while (!ts.done()) {
    LpRow row;
    auto label = read_label(ts);
    row.name = label ? *label : "R" + std::to_string(++unnamed);
    row.terms = read_terms(ts, false);
    const Token op = ts.next();
    if (op.kind != TokKind::kOp) throw LpParseError("row " + row.name + ": expected a comparison");
    row.sense = to_sense(op.text);
    row.rhs = read_signed_number(ts);
    out.rows.push_back(std::move(row));
  }
}

void parse_bounds(const std::vector<std::string>& lines, LpModel& out) {
  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& line : lines) {
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    // "x free"
    if (toks.size() == 2 && toks[0].kind == TokKind::kIdent && lower(toks[1].text) == "free") {
      out.bounds[toks[0].text] = {-inf, inf};
      continue;
    }
    TokenStream ts(std::move(toks));
    std::optional<double> lo, hi;
    std::string name;
    if (ts.peek().kind == TokKind::kIdent) {
      name = ts.next().text;
      const Token op = ts.next();
      const double v = read_signed_number(ts);
      if (op.text == ">=") lo = v;
      else if (op.text == "<=") hi = v;
      else lo = hi = v;
    } else {
      const double v = read_signed_number(ts);
      const Token op1 = ts.next();
      name = ts.next().text;
      if (op1.text == "<=") lo = v;
      else if (op1.text == ">=") hi = v;
      else lo = hi = v;
      if (!ts.done()) {
        const Token op2 = ts.next();
        const double w = read_signed_number(ts);
        if (op2.text == "<=") hi = w;
        else lo = w;
      }
    }
    if (!ts.done()) throw LpParseError("trailing tokens in bound for " + name);
    auto& b = out.bounds.try_emplace(name, 0.0, inf).first->second;
    if (lo) b.first = *lo;
    if (hi) b.second = *hi;
  }
}

void parse_names(const std::string& body, std::vector<std::string>& out) {
  for (const auto& t : tokenize(body)) {
    if (t.kind != TokKind::kIdent) throw LpParseError("expected a variable name, got '" + t.text + "'");
    out.push_back(t.text);
  }
}

}  // namespace

LpModel parse_lp(std::string_view text) {
  LpModel out;
  Section section = Section::kNone;
  std::string body;
  std::vector<std::string> bound_lines;
  bool ended = false;

  auto flush = [&]() {
    switch (section) {
      case Section::kObjective: parse_objective(body, out); break;
      case Section::kConstraints: parse_constraints(body, out); break;
      case Section::kBounds: parse_bounds(bound_lines, out); break;
      case Section::kGenerals: parse_names(body, out.generals); break;
      case Section::kBinaries: parse_names(body, out.binaries); break;
      case Section::kNone:
        if (!trim(body).empty()) throw LpParseError("content before the objective section");
        break;
      case Section::kEnd: break;
    }
    body.clear();
    bound_lines.clear();
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    if (auto cut = raw.find('\\'); cut != std::string_view::npos) raw = raw.substr(0, cut);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (auto kw = section_keyword(line)) {
      flush();
      if (*kw != Section::kObjective && section == Section::kNone) {
        throw LpParseError("missing objective section");
      }
      section = *kw;
      if (section == Section::kObjective) out.maximize = lower(line).starts_with("max");
      if (section == Section::kEnd) {
        ended = true;
        break;
      }
      continue;
    }
    // Bounds are one per line.
    if (section == Section::kBounds) {
      bound_lines.push_back(line);
    } else {
      body += line;
      body += '\n';
    }
    if (end == text.size()) break;
  }
  if (!ended) throw LpParseError("missing End");
  return out;
}

}  // namespace evacshare
