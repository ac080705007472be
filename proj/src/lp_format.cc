// Copyright 2026 The mespp Authors
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

#include "mespp/lp_format.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "mespp/errors.h"

namespace mespp {
namespace {

constexpr int kTermsPerLine = 8;

void append_terms(std::string& out, const std::vector<Term>& terms,
                  const std::vector<std::string>& names) {
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) out += "\n  ";
    const double c = terms[i].coef;
    const double mag = std::abs(c);
    if (i == 0) {
      if (c < 0) out += "- ";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1.0) {
      out += format_number(mag);
      out += ' ';
    }
    out += names[terms[i].var];
  }
}

std::string_view relation_text(Relation r) {
  switch (r) {
    case Relation::kEqual:
      return "=";
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
  }
  return "=";
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool is_number(const std::string& token, double* value) {
  if (token.empty()) return false;
  char c = token[0];
  if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' ||
        ((c == '-' || c == '+') && token.size() > 1))) {
    return lower(token) == "inf" || lower(token) == "infinity"
               ? (*value = std::numeric_limits<double>::infinity(), true)
               : false;
  }
  std::string rest = lower(token.substr(c == '-' || c == '+' ? 1 : 0));
  if (rest == "inf" || rest == "infinity") {
    *value = c == '-' ? -std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::infinity();
    return true;
  }
  try {
    size_t used = 0;
    *value = std::stod(token, &used);
    return used == token.size();
  } catch (const std::exception&) {
    return false;
  }
}

struct RawRow {
  std::string name;
  std::vector<std::pair<double, std::string>> terms;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
};

// Whitespace-separated tokens with backslash comments removed.
std::vector<std::string> tokens_of(std::string_view text,
                                   std::vector<int>* lines) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto bs = raw.find('\\');
    if (bs != std::string::npos) raw.resize(bs);
    std::istringstream fields(raw);
    std::string tok;
    while (fields >> tok) {
      out.push_back(tok);
      lines->push_back(line_no);
    }
  }
  return out;
}

// Parses "[sign] [coef] name ..." until a relation token or end.
size_t parse_terms(const std::vector<std::string>& toks, size_t i,
                   const std::vector<int>& lines,
                   std::vector<std::pair<double, std::string>>* terms,
                   bool stop_at_section) {
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  while (i < toks.size()) {
    const std::string& tok = toks[i];
    if (tok == "<=" || tok == ">=" || tok == "=" || tok == "=<" ||
        tok == "=>" || tok == "<" || tok == ">") {
      break;
    }
    if (stop_at_section && tok.back() == ':') break;
    if (tok == "+") {
      ++i;
      continue;
    }
    if (tok == "-") {
      sign = -sign;
      ++i;
      continue;
    }
    double value = 0.0;
    if (is_number(tok, &value)) {
      if (have_coef) throw ParseError(lines[i], "two coefficients in a row");
      coef = value;
      have_coef = true;
      ++i;
      continue;
    }
    if (stop_at_section) {
      auto l = lower(tok);
      if (l == "subject" || l == "st" || l == "s.t." || l == "bounds" ||
          l == "binary" || l == "binaries" || l == "general" || l == "end") {
        break;
      }
    }
    terms->emplace_back(sign * coef, tok);
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
    ++i;
  }
  return i;
}

Relation parse_relation(const std::string& tok, int line) {
  if (tok == "=") return Relation::kEqual;
  if (tok == "<=" || tok == "=<" || tok == "<") return Relation::kLessEqual;
  if (tok == ">=" || tok == "=>" || tok == ">") return Relation::kGreaterEqual;
  throw ParseError(line, fmt::format("expected relation, got '{}'", tok));
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  return fmt::format("{}", value);
}

std::string write_lp(const MilpModel& model) {
  const auto& names = model.variable_names();
  std::string out;
  out += fmt::format("\\ mespp {} model\n", model_kind_name(model.kind()));
  if (!model.digest().empty()) {
    out += fmt::format("\\ instance digest {}\n", model.digest());
  }
  out += "Maximize\n obj: ";
  if (model.objective().empty()) {
    out += "0 " + (names.empty() ? std::string("dummy") : names.front());
  } else {
    append_terms(out, model.objective(), names);
  }
  out += "\nSubject To\n";
  for (const auto& c : model.constraints()) {
    if (c.terms.empty()) {
      throw Error(fmt::format("constraint '{}' has no terms", c.name));
    }
    out += fmt::format(" {}: ", c.name);
    append_terms(out, c.terms, names);
    out += fmt::format(" {} {}\n", relation_text(c.relation),
                       format_number(c.rhs));
  }
  out += "Bounds\n";
  bool any_binary = false;
  for (size_t i = 0; i < names.size(); ++i) {
    const auto& v = model.variables()[i];
    if (v.kind == VarKind::kBinary) {
      any_binary = true;
      continue;
    }
    out += fmt::format(" {} <= {} <= {}\n", format_number(v.lower), names[i],
                       format_number(v.upper));
  }
  if (any_binary) {
    out += "Binary\n";
    for (size_t i = 0; i < names.size(); ++i) {
      if (model.variables()[i].kind == VarKind::kBinary) {
        out += fmt::format(" {}\n", names[i]);
      }
    }
  }
  out += "End\n";
  return out;
}

namespace {

// Restores the kind and digest recorded in write_lp's header comments.
void read_header(std::string_view text, MilpModel& model) {
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] != '\\') break;
    std::istringstream fields(line.substr(1));
    std::string a, b, c;
    fields >> a >> b >> c;
    if (a == "mespp" && c == "model") {
      for (auto k : {ModelKind::kPartial, ModelKind::kSameVertex,
                     ModelKind::kMultiVertex, ModelKind::kFalseNegative}) {
        if (model_kind_name(k) == b) model.set_kind(k);
      }
    } else if (a == "instance" && b == "digest") {
      model.set_digest(c);
    }
  }
}

}  // namespace

MilpModel read_lp(std::string_view text) {
  std::vector<int> lines;
  auto toks = tokens_of(text, &lines);
  enum class Section { kNone, kObjective, kConstraints, kBounds, kBinary,
                       kGeneral, kEnd };
  Section section = Section::kNone;
  std::vector<std::pair<double, std::string>> objective;
  std::vector<RawRow> rows;
  struct RawBound {
    std::string name;
    double lower;
    double upper;
  };
  std::vector<RawBound> bounds;
  std::vector<std::string> binaries;
  bool maximize = true;

  size_t i = 0;
  while (i < toks.size() && section != Section::kEnd) {
    auto l = lower(toks[i]);
    if (l == "maximize" || l == "maximise" || l == "max" || l == "minimize" ||
        l == "minimise" || l == "min") {
      maximize = l.rfind("max", 0) == 0;
      section = Section::kObjective;
      ++i;
      continue;
    }
    if (l == "subject" && i + 1 < toks.size() && lower(toks[i + 1]) == "to") {
      section = Section::kConstraints;
      i += 2;
      continue;
    }
    if (l == "st" || l == "s.t.") {
      section = Section::kConstraints;
      ++i;
      continue;
    }
    if (l == "bounds") {
      section = Section::kBounds;
      ++i;
      continue;
    }
    if (l == "binary" || l == "binaries" || l == "bin") {
      section = Section::kBinary;
      ++i;
      continue;
    }
    if (l == "general" || l == "generals" || l == "gen") {
      section = Section::kGeneral;
      ++i;
      continue;
    }
    if (l == "end") {
      section = Section::kEnd;
      break;
    }
    switch (section) {
      case Section::kObjective: {
        if (toks[i].back() == ':') ++i;
        i = parse_terms(toks, i, lines, &objective, /*stop_at_section=*/true);
        break;
      }
      case Section::kConstraints: {
        RawRow row;
        if (toks[i].back() == ':') {
          row.name = toks[i].substr(0, toks[i].size() - 1);
          ++i;
        } else {
          row.name = fmt::format("R{}", rows.size() + 1);
        }
        i = parse_terms(toks, i, lines, &row.terms, /*stop_at_section=*/false);
        if (i + 1 >= toks.size()) {
          throw ParseError(lines.empty() ? 0 : lines.back(),
                           fmt::format("row '{}' is truncated", row.name));
        }
        row.relation = parse_relation(toks[i], lines[i]);
        if (!is_number(toks[i + 1], &row.rhs)) {
          throw ParseError(lines[i + 1],
                           fmt::format("bad right-hand side '{}'", toks[i + 1]));
        }
        i += 2;
        rows.push_back(std::move(row));
        break;
      }
      case Section::kBounds: {
        // Only the "lo <= name <= hi" form is emitted by write_lp.
        double lo = 0.0;
        double hi = 0.0;
        if (i + 4 < toks.size() && is_number(toks[i], &lo) &&
            toks[i + 1] == "<=" && toks[i + 3] == "<=" &&
            is_number(toks[i + 4], &hi)) {
          bounds.push_back({toks[i + 2], lo, hi});
          i += 5;
        } else {
          throw ParseError(lines[i], "unsupported bound syntax");
        }
        break;
      }
      case Section::kBinary:
        binaries.push_back(toks[i++]);
        break;
      case Section::kGeneral:
        throw ParseError(lines[i], "general integer variables unsupported");
      default:
        throw ParseError(lines[i], fmt::format("unexpected token '{}'", toks[i]));
    }
  }
  if (!maximize) throw ParseError(0, "only maximization models are supported");

  MilpModel model;
  std::vector<std::string> order;
  std::unordered_map<std::string, bool> seen;
  auto note = [&](const std::string& name) {
    if (seen.emplace(name, true).second) order.push_back(name);
  };
  for (const auto& [c, name] : objective) note(name);
  for (const auto& row : rows) {
    for (const auto& [c, name] : row.terms) note(name);
  }
  for (const auto& b : bounds) note(b.name);
  for (const auto& b : binaries) note(b);

  std::unordered_map<std::string, const RawBound*> bound_of;
  for (const auto& b : bounds) bound_of[b.name] = &b;
  std::unordered_map<std::string, bool> binary_set;
  for (const auto& b : binaries) binary_set[b] = true;
  for (const auto& name : order) {
    auto ref = parse_var_name(name);
    if (!ref) throw ParseError(0, fmt::format("unknown variable '{}'", name));
    if (binary_set.count(name)) {
      ref->kind = VarKind::kBinary;
      ref->lower = 0.0;
      ref->upper = 1.0;
    } else {
      ref->kind = VarKind::kContinuous;
      auto it = bound_of.find(name);
      ref->lower = it == bound_of.end() ? 0.0 : it->second->lower;
      ref->upper = it == bound_of.end()
                       ? std::numeric_limits<double>::infinity()
                       : it->second->upper;
    }
    model.add_variable(*ref);
  }
  std::vector<Term> obj;
  for (const auto& [c, name] : objective) obj.push_back({model.find(name), c});
  model.set_objective(std::move(obj));
  for (auto& row : rows) {
    Constraint c{row.name, {}, row.relation, row.rhs};
    for (const auto& [coef, name] : row.terms) {
      c.terms.push_back({model.find(name), coef});
    }
    model.add_constraint(std::move(c));
  }
  read_header(text, model);
  return model;
}

}  // namespace mespp
