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

// Recursive-descent reader for the canonical text forms of terms, atoms,
// conjunctions and truth-table cases.

#ifndef REFINEALG_SRC_TEXT_PARSER_HPP
#define REFINEALG_SRC_TEXT_PARSER_HPP

#include "refinealg/error.hpp"
#include "refinealg/term.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace refinealg::detail {

class TextCursor {
public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c))
      return false;
    ++pos_;
    return true;
  }

  bool accept(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) != s)
      return false;
    pos_ += s.size();
    return true;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t number() {
    skip_ws();
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
      value = value * 10 + static_cast<std::size_t>(text_[pos_++] - '0');
    if (start == pos_)
      fail("expected number");
    return value;
  }

  Term term() {
    std::string name = identifier();
    if (!peek('(')) {
      if (name.size() < 2 || name[0] != 'x')
        fail("expected variable x<n> or application");
      std::size_t idx = 0;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9')
          fail("malformed variable \"" + name + "\"");
        idx = idx * 10 + static_cast<std::size_t>(name[i] - '0');
      }
      if (idx == 0)
        fail("variables are numbered from 1");
      return Term::var(idx);
    }
    expect('(');
    std::vector<Term> args;
    if (!accept(')')) {
      args.push_back(term());
      while (accept(','))
        args.push_back(term());
      expect(')');
    }
    expect('[');
    std::size_t proj = number();
    if (proj == 0)
      fail("projections are numbered from 1");
    expect(']');
    return Term::app(std::move(name), std::move(args), proj);
  }

  std::vector<Term> term_list(char open, char close) {
    expect(open);
    std::vector<Term> out;
    if (accept(close))
      return out;
    out.push_back(term());
    while (accept(','))
      out.push_back(term());
    expect(close);
    return out;
  }

  AFF aff() {
    std::string name = identifier();
    return AFF(std::move(name), term_list('(', ')'));
  }

  std::pair<AFF, bool> literal() {
    bool pol = !accept('!');
    return {aff(), pol};
  }

  CFF cff() {
    skip_ws();
    // `T` alone is top; `T(` would start an atom on a filter named T.
    if (text_.substr(pos_, 1) == "T") {
      char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : ' ';
      if (!std::isalnum(static_cast<unsigned char>(next)) && next != '_') {
        std::size_t save = pos_;
        ++pos_;
        if (!peek('('))
          return CFF();
        pos_ = save;
      }
    }
    CFF out;
    do {
      auto [a, pol] = literal();
      auto next = try_conjoin(out, CFF::atom(a, pol));
      if (!next)
        fail("atom " + a.str() + " occurs with both polarities");
      out = std::move(*next);
    } while (accept('&'));
    return out;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg + " near \"" + std::string(text_.substr(pos_, 20)) +
                         "\"",
                     1, pos_ + 1);
  }

  void finish() {
    if (!at_end())
      fail("trailing characters");
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace refinealg::detail

#endif // REFINEALG_SRC_TEXT_PARSER_HPP
