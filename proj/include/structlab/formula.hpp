// Copyright 2026 The structlab Authors
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

// First-order formulas over a purely relational signature.
//
// Grammar (whitespace-insensitive):
//   formula := ("forall" | "exists") var "." formula | iff
//   iff     := imp ("<->" imp)*            left associative
//   imp     := or ("->" imp)?              right associative
//   or      := and ("|" and)*
//   and     := neg ("&" neg)*
//   neg     := "~" neg | "(" formula ")" | atom | "true" | "false"
//            | ("forall" | "exists") var "." formula
//   atom    := Name "(" var ("," var)* ")" | var "=" var
//
// The quantifier alternative under `neg` is an extension: its body extends
// as far right as possible, so it never changes the parse of a formula
// written in the strict grammar.

#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "structlab/error.hpp"

namespace structlab {

class Formula {
 public:
  enum class Kind {
    kAtom,
    kEquality,
    kTrue,
    kFalse,
    kNot,
    kAnd,
    kOr,
    kImplies,
    kIff,
    kExists,
    kForall,
  };

  static Formula atom(std::string symbol, std::vector<std::string> vars) {
    return Formula(Kind::kAtom, std::move(symbol), std::move(vars), {});
  }
  static Formula equality(std::string a, std::string b) {
    return Formula(Kind::kEquality, {}, {std::move(a), std::move(b)}, {});
  }
  static Formula truth() { return Formula(Kind::kTrue, {}, {}, {}); }
  static Formula falsity() { return Formula(Kind::kFalse, {}, {}, {}); }
  static Formula negation(Formula f) { return Formula(Kind::kNot, {}, {}, {std::move(f)}); }
  static Formula conj(Formula a, Formula b) { return binary(Kind::kAnd, std::move(a), std::move(b)); }
  static Formula disj(Formula a, Formula b) { return binary(Kind::kOr, std::move(a), std::move(b)); }
  static Formula implies(Formula a, Formula b) {
    return binary(Kind::kImplies, std::move(a), std::move(b));
  }
  static Formula iff(Formula a, Formula b) { return binary(Kind::kIff, std::move(a), std::move(b)); }
  static Formula exists(std::string var, Formula body) {
    return Formula(Kind::kExists, {}, {std::move(var)}, {std::move(body)});
  }
  static Formula forall(std::string var, Formula body) {
    return Formula(Kind::kForall, {}, {std::move(var)}, {std::move(body)});
  }

  Kind kind() const { return kind_; }
  // Relation name of an atom.
  const std::string& symbol() const { return symbol_; }
  // Atom arguments, the two sides of an equality, or the bound variable.
  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<Formula>& children() const { return children_; }
  const Formula& child(std::size_t i) const { return children_.at(i); }
  const std::string& bound_variable() const { return vars_.at(0); }

  bool is_quantifier() const { return kind_ == Kind::kExists || kind_ == Kind::kForall; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, std::string symbol, std::vector<std::string> vars,
          std::vector<Formula> children)
      : kind_(kind),
        symbol_(std::move(symbol)),
        vars_(std::move(vars)),
        children_(std::move(children)) {}

  static Formula binary(Kind kind, Formula a, Formula b) {
    std::vector<Formula> kids;
    kids.reserve(2);
    kids.push_back(std::move(a));
    kids.push_back(std::move(b));
    return Formula(kind, {}, {}, std::move(kids));
  }

  Kind kind_;
  std::string symbol_;
  std::vector<std::string> vars_;
  std::vector<Formula> children_;
};

namespace detail {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = formula();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected input");
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Identifier at the cursor without consuming it.
  std::string_view peek_ident() {
    skip_space();
    std::size_t end = pos_;
    if (end < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      while (end < text_.size() && ident_char(text_[end])) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  bool try_keyword(std::string_view kw) {
    if (peek_ident() == kw) {
      pos_ += kw.size();
      return true;
    }
    return false;
  }

  bool try_token(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!try_token(tok)) fail("expected '" + std::string(tok) + "'");
  }

  std::string identifier() {
    std::string_view id = peek_ident();
    if (id.empty()) fail("expected identifier");
    pos_ += id.size();
    return std::string(id);
  }

  static bool is_keyword(std::string_view id) {
    return id == "forall" || id == "exists" || id == "true" || id == "false";
  }

  std::string variable() {
    std::size_t at = pos_;
    std::string id = identifier();
    if (is_keyword(id) || !std::islower(static_cast<unsigned char>(id.front()))) {
      pos_ = at;
      skip_space();
      fail("expected variable, got '" + id + "'");
    }
    return id;
  }

  [[noreturn]] void fail(const std::string& message) {
    skip_space();
    throw SyntaxError(message, 1, int(pos_) + 1);
  }

  bool at_quantifier() {
    std::string_view id = peek_ident();
    return id == "forall" || id == "exists";
  }

  Formula quantified() {
    bool universal = try_keyword("forall");
    if (!universal && !try_keyword("exists")) fail("expected quantifier");
    std::string var = variable();
    expect(".");
    if (at_end()) fail("missing quantifier body");
    Formula body = formula();
    return universal ? Formula::forall(std::move(var), std::move(body))
                     : Formula::exists(std::move(var), std::move(body));
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return iff_level();
  }

  Formula iff_level() {
    Formula f = imp_level();
    while (try_token("<->")) f = Formula::iff(std::move(f), imp_level());
    return f;
  }

  Formula imp_level() {
    Formula f = or_level();
    if (try_token("->")) return Formula::implies(std::move(f), imp_level());
    return f;
  }

  Formula or_level() {
    Formula f = and_level();
    while (try_token("|")) f = Formula::disj(std::move(f), and_level());
    return f;
  }

  Formula and_level() {
    Formula f = neg_level();
    while (try_token("&")) f = Formula::conj(std::move(f), neg_level());
    return f;
  }

  Formula neg_level() {
    if (at_end()) fail("unexpected end of formula");
    if (try_token("~")) return Formula::negation(neg_level());
    if (try_token("(")) {
      Formula f = formula();
      expect(")");
      return f;
    }
    if (at_quantifier()) return quantified();
    if (try_keyword("true")) return Formula::truth();
    if (try_keyword("false")) return Formula::falsity();
    std::size_t at = pos_;
    std::string id = identifier();
    if (try_token("(")) {
      std::vector<std::string> args;
      do {
        args.push_back(variable());
      } while (try_token(","));
      expect(")");
      return Formula::atom(std::move(id), std::move(args));
    }
    if (try_token("=")) {
      pos_ = at;
      std::string lhs = variable();
      expect("=");
      std::string rhs = variable();
      return Formula::equality(std::move(lhs), std::move(rhs));
    }
    pos_ = at;
    fail("expected atom");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kExists:
    case Formula::Kind::kForall: return 0;
    case Formula::Kind::kIff: return 1;
    case Formula::Kind::kImplies: return 2;
    case Formula::Kind::kOr: return 3;
    case Formula::Kind::kAnd: return 4;
    case Formula::Kind::kNot: return 5;
    default: return 6;
  }
}

inline void print(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.kind());
  const bool parens = p < min_prec;
  if (parens) out += "(";
  switch (f.kind()) {
    case Formula::Kind::kAtom: {
      out += f.symbol() + "(";
      for (std::size_t i = 0; i < f.variables().size(); ++i) {
        if (i) out += ",";
        out += f.variables()[i];
      }
      out += ")";
      break;
    }
    case Formula::Kind::kEquality:
      out += f.variables()[0] + " = " + f.variables()[1];
      break;
    case Formula::Kind::kTrue: out += "true"; break;
    case Formula::Kind::kFalse: out += "false"; break;
    case Formula::Kind::kNot:
      out += "~";
      print(f.child(0), 5, out);
      break;
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr:
    case Formula::Kind::kIff: {
      const char* op = f.kind() == Formula::Kind::kAnd ? " & "
                       : f.kind() == Formula::Kind::kOr ? " | "
                                                         : " <-> ";
      print(f.child(0), p, out);
      out += op;
      print(f.child(1), p + 1, out);
      break;
    }
    case Formula::Kind::kImplies:
      print(f.child(0), p + 1, out);
      out += " -> ";
      print(f.child(1), p, out);
      break;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall:
      out += f.kind() == Formula::Kind::kExists ? "exists " : "forall ";
      out += f.bound_variable() + " . ";
      print(f.child(0), 0, out);
      break;
  }
  if (parens) out += ")";
}

inline void collect_free(const Formula& f, std::vector<std::string>& bound,
                         std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    for (const auto& b : bound) {
      if (b == v) return;
    }
    for (const auto& o : out) {
      if (o == v) return;
    }
    out.push_back(v);
  };
  switch (f.kind()) {
    case Formula::Kind::kAtom:
    case Formula::Kind::kEquality:
      for (const auto& v : f.variables()) note(v);
      break;
    case Formula::Kind::kExists:
    case Formula::Kind::kForall:
      bound.push_back(f.bound_variable());
      collect_free(f.child(0), bound, out);
      bound.pop_back();
      break;
    default:
      for (const auto& c : f.children()) collect_free(c, bound, out);
  }
}

}  // namespace detail

inline Formula parse_formula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

// Renders with the fewest parentheses that reparse to the same tree.
inline std::string to_string(const Formula& f) {
  std::string out;
  detail::print(f, 0, out);
  return out;
}

// Free variables in order of first occurrence.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::vector<std::string> out;
  detail::collect_free(f, bound, out);
  return out;
}

inline int quantifier_rank(const Formula& f) {
  int best = 0;
  for (const auto& c : f.children()) best = std::max(best, quantifier_rank(c));
  return f.is_quantifier() ? best + 1 : best;
}

}  // namespace structlab
