#pragma once

// Small builders for readable test inputs: P("x*y + z*w") in variables x, y, z, w.

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadsg/multipoly.hpp"
#include "quadsg/quadratic_form.hpp"

namespace th {

using namespace quadsg;

inline std::vector<std::string> vars4() { return {"x", "y", "z", "w"}; }

class PolyParser {
 public:
  PolyParser(std::string text, std::vector<std::string> names) : s_(std::move(text)), names_(std::move(names)) {}

  MultiPoly parse() {
    MultiPoly p = sum();
    skip();
    if (pos_ != s_.size()) throw std::runtime_error("poly parse: trailing input at " + std::to_string(pos_));
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  MultiPoly sum() {
    MultiPoly acc(names_.size());
    bool neg = eat('-');
    if (!neg) eat('+');
    for (;;) {
      MultiPoly t = product();
      acc = neg ? acc - t : acc + t;
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else return acc;
    }
  }
  MultiPoly product() {
    MultiPoly acc = power();
    for (;;) {
      skip();
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        MultiPoly d = power();
        if (!d.is_constant() || d.is_zero()) throw std::runtime_error("poly parse: divide by non-constant");
        acc = d.terms().begin()->second.inverse() * acc;
      } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '(')) {
        acc = acc * power();  // juxtaposition
      } else {
        return acc;
      }
    }
  }
  MultiPoly power() {
    MultiPoly b = atom();
    if (eat('^')) {
      skip();
      unsigned e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) e = e * 10 + (s_[pos_++] - '0');
      b = b.pow(e);
    }
    return b;
  }
  MultiPoly atom() {
    skip();
    const std::size_t n = names_.size();
    if (eat('(')) {
      MultiPoly p = sum();
      if (!eat(')')) throw std::runtime_error("poly parse: missing )");
      return p;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      long v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = v * 10 + (s_[pos_++] - '0');
      return MultiPoly::constant(n, Scalar(v));
    }
    if (pos_ < s_.size() && s_[pos_] == 'i' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      bool is_var = false;
      for (const auto& nm : names_) is_var |= nm == "i";
      if (!is_var) {
        ++pos_;
        return MultiPoly::constant(n, Scalar::imaginary_unit());
      }
    }
    // longest variable name match
    std::size_t best = n, len = 0;
    for (std::size_t v = 0; v < n; ++v)
      if (s_.compare(pos_, names_[v].size(), names_[v]) == 0 && names_[v].size() > len) {
        best = v;
        len = names_[v].size();
      }
    if (best == n) throw std::runtime_error("poly parse: unexpected input at " + std::to_string(pos_));
    pos_ += len;
    return MultiPoly::variable(n, best);
  }

  std::string s_;
  std::vector<std::string> names_;
  std::size_t pos_ = 0;
};

inline MultiPoly P(const std::string& text, std::vector<std::string> names = vars4()) {
  return PolyParser(text, std::move(names)).parse();
}
inline QuadraticForm Q(const std::string& text, std::vector<std::string> names = vars4()) {
  return QuadraticForm::from_poly(P(text, std::move(names)));
}
inline LinearForm L(const std::string& text, std::vector<std::string> names = vars4()) {
  MultiPoly p = P(text, names);
  LinearForm l = LinearForm::zero(names.size());
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 1) throw std::runtime_error("L: not a linear form");
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    l.coeffs[v] = c;
  }
  return l;
}

}  // namespace th
