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

// Structure file format.
//
//   # comment to end of line
//   universe <n>
//   rel <Name> <arity> : (<i>,<j>,...) (...) ...
//   fun <Name> <arity> : (<args>) -> <v> , (<args>) -> <v> , ...
//   const <Name> : <i>
//
// `universe` must be the first non-comment line. The structured mirror is a
// JSON object with keys `universe`, `relations`, `functions`, `constants`.

#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "structlab/error.hpp"
#include "structlab/structure.hpp"

namespace structlab {

namespace detail {

class LineCursor {
 public:
  LineCursor(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  bool try_consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) fail("expected '" + std::string(token) + "'");
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  long long integer() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_ || (pos_ == start + 1 && text_[start] == '-')) {
      pos_ = start;
      fail("expected integer");
    }
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 12) fail("integer too large");
    return std::stoll(digits);
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Tuple tuple() {
    expect("(");
    Tuple t;
    if (!peek(')')) {
      do {
        t.push_back(Element(integer()));
      } while (try_consume(","));
    }
    expect(")");
    return t;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw SyntaxError(message, line_, int(pos_) + 1);
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

inline std::string format_tuple(const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

}  // namespace detail

inline FiniteStructure parse_structure(std::string_view text) {
  FiniteStructure s;
  bool have_universe = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    detail::LineCursor cur(line, line_no);
    if (cur.at_end()) {
      if (end == text.size()) break;
      continue;
    }
    std::string keyword = cur.word();
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    auto wrap = [&](auto&& body) {
      try {
        body();
      } catch (const SyntaxError&) {
        throw;
      } catch (const Error& e) {
        throw Error(e.kind(), where() + e.what());
      }
    };
    if (!have_universe) {
      if (keyword != "universe") cur.fail("first declaration must be 'universe'");
      long long n = cur.integer();
      if (n < 0) cur.fail("universe size must be non-negative");
      s.universe_size = int(n);
      have_universe = true;
    } else if (keyword == "universe") {
      cur.fail("repeated 'universe' declaration");
    } else if (keyword == "rel") {
      std::string name = cur.word();
      if (!is_identifier(name)) cur.fail("bad relation name '" + name + "'");
      long long arity = cur.integer();
      if (arity < 1) cur.fail("relation arity must be at least 1");
      cur.expect(":");
      Relation rel{int(arity), {}};
      std::vector<Tuple> tuples;
      while (!cur.at_end()) tuples.push_back(cur.tuple());
      wrap([&] {
        if (s.has_symbol(name)) {
          throw Error(ErrorKind::kDuplicateSymbol, "duplicate symbol '" + name + "'");
        }
        for (auto& t : tuples) {
          check_tuple(t, rel.arity, s.universe_size, name);
          rel.tuples.insert(std::move(t));
        }
      });
      s.relations.emplace(name, std::move(rel));
    } else if (keyword == "fun") {
      std::string name = cur.word();
      if (!is_identifier(name)) cur.fail("bad function name '" + name + "'");
      long long arity = cur.integer();
      if (arity < 1) cur.fail("function arity must be at least 1");
      cur.expect(":");
      Function fn{int(arity), {}};
      std::vector<std::pair<Tuple, Element>> entries;
      if (!cur.at_end()) {
        do {
          Tuple args = cur.tuple();
          cur.expect("->");
          Element value = Element(cur.integer());
          entries.emplace_back(std::move(args), value);
        } while (cur.try_consume(","));
      }
      if (!cur.at_end()) cur.fail("unexpected trailing input");
      wrap([&] {
        if (s.has_symbol(name)) {
          throw Error(ErrorKind::kDuplicateSymbol, "duplicate symbol '" + name + "'");
        }
        for (auto& [args, value] : entries) {
          check_tuple(args, fn.arity, s.universe_size, name);
          check_tuple(Tuple{value}, 1, s.universe_size, name);
          if (!fn.table.emplace(args, value).second) {
            throw Error(ErrorKind::kNotFunctional,
                        "function '" + name + "' maps " + detail::format_tuple(args) +
                            " twice");
          }
        }
        auto total = tuple_count(s.universe_size, fn.arity);
        if (!total || fn.table.size() != *total) {
          throw Error(ErrorKind::kNonTotalFunction,
                      "function '" + name + "' is not total on the universe");
        }
      });
      s.functions.emplace(name, std::move(fn));
    } else if (keyword == "const") {
      std::string name = cur.word();
      if (!is_identifier(name)) cur.fail("bad constant name '" + name + "'");
      cur.expect(":");
      Element value = Element(cur.integer());
      if (!cur.at_end()) cur.fail("unexpected trailing input");
      wrap([&] {
        if (s.has_symbol(name)) {
          throw Error(ErrorKind::kDuplicateSymbol, "duplicate symbol '" + name + "'");
        }
        check_tuple(Tuple{value}, 1, s.universe_size, name);
      });
      s.constants.emplace(name, value);
    } else {
      throw SyntaxError("unknown declaration '" + keyword + "'", line_no, 1);
    }
    if (end == text.size()) break;
  }
  if (!have_universe) throw SyntaxError("missing 'universe' declaration", line_no, 1);
  return s;
}

// Canonical text: relations, then functions, then constants, each sorted by
// name; tuples in lexicographic order. Optional header lines are emitted as
// comments.
inline std::string serialize_structure(const FiniteStructure& s,
                                       const std::vector<std::string>& header = {}) {
  std::ostringstream out;
  for (const auto& line : header) out << "# " << line << "\n";
  out << "universe " << s.universe_size << "\n";
  for (const auto& [name, rel] : s.relations) {
    out << "rel " << name << " " << rel.arity << " :";
    for (const auto& t : rel.tuples) out << " " << detail::format_tuple(t);
    out << "\n";
  }
  for (const auto& [name, fn] : s.functions) {
    out << "fun " << name << " " << fn.arity << " :";
    bool first = true;
    for (const auto& [args, value] : fn.table) {
      out << (first ? " " : " , ") << detail::format_tuple(args) << " -> " << value;
      first = false;
    }
    out << "\n";
  }
  for (const auto& [name, value] : s.constants) {
    out << "const " << name << " : " << value << "\n";
  }
  return out.str();
}

inline nlohmann::json structure_to_json(const FiniteStructure& s) {
  nlohmann::json j;
  j["universe"] = s.universe_size;
  j["relations"] = nlohmann::json::object();
  for (const auto& [name, rel] : s.relations) {
    nlohmann::json tuples = nlohmann::json::array();
    for (const auto& t : rel.tuples) tuples.push_back(t);
    j["relations"][name] = {{"arity", rel.arity}, {"tuples", tuples}};
  }
  j["functions"] = nlohmann::json::object();
  for (const auto& [name, fn] : s.functions) {
    nlohmann::json table = nlohmann::json::array();
    for (const auto& [args, value] : fn.table) {
      table.push_back({{"args", args}, {"value", value}});
    }
    j["functions"][name] = {{"arity", fn.arity}, {"table", table}};
  }
  j["constants"] = nlohmann::json::object();
  for (const auto& [name, value] : s.constants) j["constants"][name] = value;
  return j;
}

inline FiniteStructure structure_from_json(const nlohmann::json& j) {
  FiniteStructure s;
  try {
    s.universe_size = j.at("universe").get<int>();
    if (j.contains("relations")) {
      for (const auto& [name, body] : j.at("relations").items()) {
        Relation rel{body.at("arity").get<int>(), {}};
        for (const auto& t : body.at("tuples")) rel.tuples.insert(t.get<Tuple>());
        s.relations.emplace(name, std::move(rel));
      }
    }
    if (j.contains("functions")) {
      for (const auto& [name, body] : j.at("functions").items()) {
        Function fn{body.at("arity").get<int>(), {}};
        for (const auto& entry : body.at("table")) {
          if (!fn.table.emplace(entry.at("args").get<Tuple>(),
                                entry.at("value").get<Element>()).second) {
            throw Error(ErrorKind::kNotFunctional,
                        "function '" + name + "' maps an argument tuple twice");
          }
        }
        s.functions.emplace(name, std::move(fn));
      }
    }
    if (j.contains("constants")) {
      for (const auto& [name, value] : j.at("constants").items()) {
        s.constants.emplace(name, value.get<Element>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SyntaxError(std::string("malformed structure object: ") + e.what(), 1, 1);
  }
  validate(s);
  return s;
}

// Accepts either the text format or the structured mirror.
inline FiniteStructure parse_structure_any(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw SyntaxError(e.what(), 1, int(e.byte));
    }
    return structure_from_json(j);
  }
  return parse_structure(text);
}

}  // namespace structlab
