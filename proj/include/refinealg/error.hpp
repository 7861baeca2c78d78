// Copyright 2026 The refinealg Authors
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

#ifndef REFINEALG_ERROR_HPP
#define REFINEALG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace refinealg {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (JSON, term syntax, CSV). Line and column are
/// 1-based; zero means unknown.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, std::size_t line = 0,
             std::size_t column = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : msg),
        message_(msg), line_(line), column_(column) {}

  /// The message without the position suffix.
  const std::string &message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// A declaration problem: duplicate or undeclared identifier, bad arity.
class SignatureError : public Error {
public:
  SignatureError(const std::string &msg, std::string identifier)
      : Error(msg + ": \"" + identifier + "\""),
        identifier_(std::move(identifier)) {}

  const std::string &identifier() const { return identifier_; }

private:
  std::string identifier_;
};

/// Ill-typed diagram. `slice` is the index of the first failing slice, or
/// npos when the problem is at the boundary.
class TypeError : public Error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  TypeError(const std::string &msg, std::size_t slice = npos)
      : Error(slice == npos ? msg
                            : "slice " + std::to_string(slice) + ": " + msg),
        message_(msg), slice_(slice) {}

  const std::string &message() const { return message_; }
  std::size_t slice() const { return slice_; }

private:
  std::string message_;
  std::size_t slice_;
};

/// Precondition violations on the term/truth-table algebra (arity mismatch,
/// disjointness required, index out of range).
class AlgebraError : public Error {
public:
  using Error::Error;
};

/// The number of atomic filter formulae to enumerate exceeds the configured
/// cap.
class CapExceeded : public Error {
public:
  CapExceeded(std::size_t count, std::size_t cap)
      : Error("too many atomic filter formulae to enumerate: " +
              std::to_string(count) + " > cap " + std::to_string(cap)),
        count_(count), cap_(cap) {}

  std::size_t count() const { return count_; }
  std::size_t cap() const { return cap_; }

private:
  std::size_t count_;
  std::size_t cap_;
};

/// Runtime evaluation problem: missing interpretation or a cell outside its
/// domain. Row and column are 0-based when known.
class EvalError : public Error {
public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  EvalError(const std::string &msg, std::size_t row = npos,
            std::size_t column = npos)
      : Error(row == npos ? msg
                          : msg + " (row " + std::to_string(row) +
                                (column == npos
                                     ? std::string()
                                     : ", column " + std::to_string(column)) +
                                ")"),
        message_(msg), row_(row), column_(column) {}

  const std::string &message() const { return message_; }
  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

private:
  std::string message_;
  std::size_t row_;
  std::size_t column_;
};

} // namespace refinealg

#endif // REFINEALG_ERROR_HPP
