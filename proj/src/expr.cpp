#include "measlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "measlab/error.hpp"
#include "measlab/numeric.hpp"

namespace measlab {

namespace {

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, double>& vars) : s_(text), vars_(vars) {}

  double run() {
    const double v = sum();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + s_ + "': " + what, 1, static_cast<int>(pos_) + 1);
  }

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

  double sum() {
    double v = product();
    while (true) {
      if (eat('+'))
        v += product();
      else if (eat('-'))
        v -= product();
      else
        return v;
    }
  }

  double product() {
    double v = unary();
    while (true) {
      if (eat('*'))
        v *= unary();
      else if (eat('/'))
        v /= unary();
      else
        return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  double power() {
    const double base = primary();
    if (eat('^')) return std::pow(base, unary());
    return base;
  }

  double primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      const double v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      skip();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        ++pos_;
        const double arg = sum();
        if (!eat(')')) fail("missing ')' after argument of " + name);
        if (name == "sqrt") return std::sqrt(arg);
        if (name == "log") return std::log(arg);
        if (name == "exp") return std::exp(arg);
        if (name == "abs") return std::abs(arg);
        pos_ = start;
        fail("unknown function '" + name + "'");
      }
      if (auto it = vars_.find(name); it != vars_.end()) return it->second;
      if (name == "pi") return std::numbers::pi;
      if (name == "inf") return kInf;
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::map<std::string, double>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_expression(const std::string& text, const std::map<std::string, double>& vars) {
  return Parser(text, vars).run();
}

}  // namespace measlab
