#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wpl/errors.hpp"
#include "wpl/geometry.hpp"
#include "wpl/objects.hpp"
#include "wpl/slope.hpp"

namespace wpl {

// Recursive-descent reader for the object grammar:
//
//   sum    := term ('+' term)* | '0'
//   term   := [int '*'] atom
//   atom   := O(lexpr) | T(slope;tube;socle;len) | prufer(slope;tube;socle)
//           | adic(slope;tube;top) | generic(slope)
//   lexpr  := ['+'|'-'] lterm (('+'|'-') lterm)*
//   lterm  := [int] ('c' | 'x'int | 'w') | int
//   tube   := 'e'int | 'o:'label
class Parser {
 public:
  Parser(const Geometry& g, std::string_view text) : g_(g), s_(text) {}

  FormalObject object() {
    FormalObject out;
    skip();
    if (peek() == '0' && is_zero_object()) {
      ++i_;
      expect_end();
      return out;
    }
    for (;;) {
      skip();
      std::int64_t mult = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        mult = integer();
        skip();
        expect('*');
      }
      out.add(atom(), mult);
      skip();
      if (peek() != '+') break;
      ++i_;
    }
    expect_end();
    return out;
  }

  IndecDescriptor single() {
    skip();
    auto a = atom();
    expect_end();
    return a;
  }

  LElement lelement() {
    auto x = lexpr();
    expect_end();
    return x;
  }

 private:
  bool is_zero_object() const {
    std::size_t j = i_ + 1;
    while (j < s_.size() && std::isspace(static_cast<unsigned char>(s_[j]))) ++j;
    return j == s_.size();
  }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, i_); }
  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  void expect_end() {
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
  }
  bool keyword(std::string_view kw) {
    if (s_.substr(i_, kw.size()) != kw) return false;
    const std::size_t j = i_ + kw.size();
    if (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) return false;
    i_ = j;
    return true;
  }

  std::int64_t integer() {
    const std::size_t start = i_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++i_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (INT64_MAX - 9) / 10) {
        i_ = start;
        fail("integer out of range");
      }
      v = v * 10 + (s_[i_++] - '0');
    }
    return neg ? -v : v;
  }

  std::string field() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && s_[i_] != ';' && s_[i_] != ')') ++i_;
    std::string f(s_.substr(start, i_ - start));
    while (!f.empty() && std::isspace(static_cast<unsigned char>(f.back()))) f.pop_back();
    return f;
  }

  Slope slope() {
    const std::size_t start = i_;
    const std::string f = field();
    if (f.empty()) {
      i_ = start;
      fail("expected a slope");
    }
    return Slope::parse(f);
  }

  PointId tube() {
    skip();
    const std::size_t start = i_;
    const std::string f = field();
    PointId pt;
    if (f.size() > 2 && f.rfind("o:", 0) == 0) {
      pt = Ordinary{f.substr(2)};
    } else if (f.size() > 1 && f[0] == 'e' &&
               f.find_first_not_of("0123456789", 1) == std::string::npos && f.size() < 6) {
      pt = Exceptional{std::stoi(f.substr(1))};
    } else {
      i_ = start;
      fail("expected a tube name e<i> or o:<label>");
    }
    if (!g_.has_point(pt)) throw UnknownTube("unknown tube '" + f + "'");
    return pt;
  }

  IndecDescriptor atom() {
    skip();
    const std::size_t start = i_;
    IndecDescriptor out;
    if (keyword("O")) {
      expect('(');
      out = LineBundle{lexpr()};
      expect(')');
    } else if (keyword("T")) {
      expect('(');
      Tube t;
      t.slope = slope();
      expect(';');
      t.point = tube();
      expect(';');
      skip();
      t.socle = integer();
      expect(';');
      skip();
      const std::size_t at = i_;
      t.len = integer();
      if (t.len < 1) {
        i_ = at;
        fail("length must be positive");
      }
      expect(')');
      out = t;
    } else if (keyword("prufer") || keyword("pruefer")) {
      expect('(');
      Pruefer p;
      p.slope = slope();
      expect(';');
      p.point = tube();
      expect(';');
      skip();
      p.socle = integer();
      expect(')');
      out = p;
    } else if (keyword("adic")) {
      expect('(');
      Adic a;
      a.slope = slope();
      expect(';');
      a.point = tube();
      expect(';');
      skip();
      a.top = integer();
      expect(')');
      out = a;
    } else if (keyword("generic")) {
      expect('(');
      out = Generic{slope()};
      expect(')');
    } else {
      i_ = start;
      fail("expected an object (O, T, prufer, adic or generic)");
    }
    return canonical(g_, out);
  }

  LElement lexpr() {
    LElement acc = g_.zero();
    skip();
    bool first = true;
    for (;;) {
      skip();
      std::int64_t sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        break;
      }
      first = false;
      std::int64_t coef = 1;
      bool has_coef = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = integer();
        has_coef = true;
      }
      coef *= sign;
      LElement term = g_.zero();
      if (peek() == 'c') {
        ++i_;
        term.l = coef;
      } else if (peek() == 'w') {
        ++i_;
        const LElement w = g_.omega();
        term.l = coef * w.l;
        for (std::size_t k = 0; k < w.lambda.size(); ++k) term.lambda[k] = coef * w.lambda[k];
      } else if (peek() == 'x') {
        ++i_;
        const std::size_t at = i_;
        const auto arm = integer();
        if (arm < 1 || arm > g_.t()) {
          i_ = at;
          fail("arm index out of range");
        }
        term.lambda[static_cast<std::size_t>(arm - 1)] = coef;
      } else if (has_coef) {
        if (coef != 0) fail("a bare integer is only allowed as 0");
      } else {
        fail("expected c, x<i>, w or an integer");
      }
      acc.l += term.l;
      for (std::size_t k = 0; k < acc.lambda.size(); ++k) acc.lambda[k] += term.lambda[k];
    }
    return g_.normalize(acc);
  }

  const Geometry& g_;
  std::string_view s_;
  std::size_t i_ = 0;
};

inline FormalObject parse_object(const Geometry& g, std::string_view text) { return Parser(g, text).object(); }
inline IndecDescriptor parse_indecomposable(const Geometry& g, std::string_view text) {
  return Parser(g, text).single();
}

// Reads `weights=(2,2,2,2); ordinary=a,b`; clauses may also be separated by
// newlines, and '#' starts a comment.
inline Geometry parse_geometry_header(std::string_view text) {
  std::vector<int> weights = {2, 2, 2, 2};
  std::vector<std::string> labels;
  std::size_t i = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  };
  while (i <= text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != ';' && text[j] != '\n') ++j;
    std::string clause(text.substr(i, j - i));
    if (const auto h = clause.find('#'); h != std::string::npos) clause.resize(h);
    clause = trim(clause);
    const std::size_t clause_pos = i;
    i = j + 1;
    if (clause.empty()) continue;
    const auto eq = clause.find('=');
    if (eq == std::string::npos) throw SyntaxError("expected key=value in geometry header", clause_pos);
    const std::string key = trim(clause.substr(0, eq));
    std::string value = trim(clause.substr(eq + 1));
    if (key == "weights") {
      if (value.size() < 2 || value.front() != '(' || value.back() != ')') {
        throw SyntaxError("weights must be written (p1,...,pt)", clause_pos);
      }
      value = value.substr(1, value.size() - 2);
      weights.clear();
      std::size_t k = 0;
      while (k <= value.size()) {
        std::size_t m = value.find(',', k);
        if (m == std::string::npos) m = value.size();
        const std::string w = trim(value.substr(k, m - k));
        if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos || w.size() > 3) {
          throw SyntaxError("malformed weight '" + w + "'", clause_pos);
        }
        weights.push_back(std::stoi(w));
        k = m + 1;
      }
    } else if (key == "ordinary") {
      labels.clear();
      std::size_t k = 0;
      while (!value.empty() && k <= value.size()) {
        std::size_t m = value.find(',', k);
        if (m == std::string::npos) m = value.size();
        labels.push_back(trim(value.substr(k, m - k)));
        k = m + 1;
      }
    } else {
      throw SyntaxError("unknown geometry key '" + key + "'", clause_pos);
    }
  }
  return Geometry::make(std::move(weights), std::move(labels));
}

inline std::string format_geometry_header(const Geometry& g) {
  std::string s = "weights=(";
  for (int i = 1; i <= g.t(); ++i) s += (i > 1 ? "," : "") + std::to_string(g.weight(i));
  s += ")";
  if (!g.ordinary_labels().empty()) {
    s += "; ordinary=";
    for (std::size_t i = 0; i < g.ordinary_labels().size(); ++i) s += (i ? "," : "") + g.ordinary_labels()[i];
  }
  return s;
}

}  // namespace wpl
