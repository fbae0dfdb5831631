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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace structlab {

enum class ErrorKind {
  kSyntax,
  kDuplicateSymbol,
  kOutOfRange,
  kArityMismatch,
  kNonTotalFunction,
  kNameCollision,
  kMissingTarget,
  kNotFunctional,
  kUniverseMismatch,
  kExtentClash,
  kUnknownSymbol,
  kUnboundVariable,
  kVariableOverlap,
  kPrecondition,
  kBudgetExceeded,
  kCapExceeded,
  kInvalidArgument,
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSyntax: return "syntax";
    case ErrorKind::kDuplicateSymbol: return "duplicate_symbol";
    case ErrorKind::kOutOfRange: return "out_of_range";
    case ErrorKind::kArityMismatch: return "arity_mismatch";
    case ErrorKind::kNonTotalFunction: return "non_total_function";
    case ErrorKind::kNameCollision: return "name_collision";
    case ErrorKind::kMissingTarget: return "missing_target";
    case ErrorKind::kNotFunctional: return "not_functional";
    case ErrorKind::kUniverseMismatch: return "universe_mismatch";
    case ErrorKind::kExtentClash: return "extent_clash";
    case ErrorKind::kUnknownSymbol: return "unknown_symbol";
    case ErrorKind::kUnboundVariable: return "unbound_variable";
    case ErrorKind::kVariableOverlap: return "variable_overlap";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kBudgetExceeded: return "budget_exceeded";
    case ErrorKind::kCapExceeded: return "cap_exceeded";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
  }
  return "unknown";
}

// Domain error raised by every library operation. The CLI maps these to
// exit code 1 with a one-line JSON diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column)
      : Error(ErrorKind::kSyntax, std::to_string(line) + ":" +
                                      std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace structlab
