#pragma once

// Class expressions such as "tau[5,-1]*tau[2,1] + 2*q*tau[1,0]".
//
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := INT | 'q' ('^' INT)? | 'tau' '[' INT ',' INT ']' | '(' expr ')'
//
// Whitespace is ignored. INT is unsigned except inside tau brackets, where a
// leading '-' is accepted so that tau[2n-1,-1] can be written.

#include <cctype>
#include <charconv>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osg/ring.hpp"

namespace osg {

struct ExprNode {
  enum class Kind { kInt, kQ, kTau, kSum, kProduct };
  Kind kind = Kind::kInt;
  mpz_class value;                  // kInt
  int q_power = 1;                  // kQ
  PartitionIndex tau{};             // kTau
  std::vector<ExprNode> children;   // kSum, kProduct
  std::vector<bool> negated;        // kSum: sign of each child

  friend bool operator==(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::kInt: return a.value == b.value;
      case Kind::kQ: return a.q_power == b.q_power;
      case Kind::kTau: return a.tau == b.tau;
      default: return a.children == b.children && a.negated == b.negated;
    }
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& found)
      : std::runtime_error(describe(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string describe(std::size_t offset, const std::set<std::string>& expected, const std::string& found) {
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": found " + found + ", expected one of";
    for (const auto& e : expected) msg += " " + e;
    return msg;
  }

  std::size_t offset_;
  std::set<std::string> expected_;
};

namespace detail {

inline ExprNode make_node(ExprNode::Kind kind) {
  ExprNode e;
  e.kind = kind;
  return e;
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  ExprNode parse() {
    ExprNode e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"'*'", "'+'", "'-'", "end of input"});
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  std::string found() const {
    if (pos_ >= src_.size()) return "end of input";
    if (std::isdigit(static_cast<unsigned char>(src_[pos_]))) return "integer";
    return std::string("'") + src_[pos_] + "'";
  }

  [[noreturn]] void fail(std::set<std::string> expected) const { throw ParseError(pos_, std::move(expected), found()); }

  bool at_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string_view digits() {
    if (!at_digit()) fail({"integer"});
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return src_.substr(start, pos_ - start);
  }

  int small_int(bool allow_sign) {
    skip_ws();
    const std::size_t start = pos_;
    const bool neg = allow_sign && accept('-');
    const auto d = digits();
    int v = 0;
    auto [p, ec] = std::from_chars(d.data(), d.data() + d.size(), v);
    if (ec != std::errc() || p != d.data() + d.size()) throw ParseError(start, {"integer in int range"}, "integer");
    return neg ? -v : v;
  }

  bool keyword(std::string_view word) {
    skip_ws();
    if (src_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  ExprNode expr() {
    ExprNode sum = make_node(ExprNode::Kind::kSum);
    sum.children.push_back(term());
    sum.negated.push_back(false);
    for (;;) {
      if (accept('+')) {
        sum.negated.push_back(false);
      } else if (accept('-')) {
        sum.negated.push_back(true);
      } else {
        break;
      }
      sum.children.push_back(term());
    }
    if (sum.children.size() == 1) return std::move(sum.children.front());
    return sum;
  }

  ExprNode term() {
    ExprNode prod = make_node(ExprNode::Kind::kProduct);
    prod.children.push_back(factor());
    while (accept('*')) prod.children.push_back(factor());
    if (prod.children.size() == 1) return std::move(prod.children.front());
    return prod;
  }

  ExprNode factor() {
    skip_ws();
    if (at_digit()) {
      ExprNode n = make_node(ExprNode::Kind::kInt);
      n.value = mpz_class(std::string(digits()));
      return n;
    }
    if (keyword("tau")) {
      ExprNode n = make_node(ExprNode::Kind::kTau);
      expect('[');
      n.tau.first = small_int(true);
      expect(',');
      n.tau.second = small_int(true);
      expect(']');
      return n;
    }
    if (keyword("q")) {
      ExprNode n = make_node(ExprNode::Kind::kQ);
      if (accept('^')) n.q_power = small_int(false);
      return n;
    }
    if (accept('(')) {
      ExprNode e = expr();
      if (!accept(')')) fail({"'*'", "'+'", "'-'", "')'"});
      return e;
    }
    fail({"integer", "'q'", "'tau'", "'('"});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprNode parse_expression(std::string_view src) { return detail::ExprParser(src).parse(); }

inline std::string print_expression(const ExprNode& e) {
  using K = ExprNode::Kind;
  auto child = [](const ExprNode& c, bool in_sum) {
    const bool wrap = c.kind == K::kSum || (c.kind == K::kProduct && !in_sum);
    return wrap ? "(" + print_expression(c) + ")" : print_expression(c);
  };
  switch (e.kind) {
    case K::kInt: return e.value.get_str();
    case K::kQ: return e.q_power == 1 ? "q" : "q^" + std::to_string(e.q_power);
    case K::kTau: return "tau[" + std::to_string(e.tau.first) + "," + std::to_string(e.tau.second) + "]";
    case K::kSum: {
      std::string s = child(e.children[0], true);
      for (std::size_t i = 1; i < e.children.size(); ++i) s += (e.negated[i] ? " - " : " + ") + child(e.children[i], true);
      return s;
    }
    case K::kProduct: {
      std::string s = child(e.children[0], false);
      for (std::size_t i = 1; i < e.children.size(); ++i) s += "*" + child(e.children[i], false);
      return s;
    }
  }
  return {};
}

/// Evaluates in the quantum ring of the table's rank; tau indices are checked here.
inline ClassVector evaluate_expression(const MultiplicationTable& t, const ExprNode& e) {
  using K = ExprNode::Kind;
  const int n = t.rank();
  switch (e.kind) {
    case K::kInt: return ClassVector::basis(n, kUnitIndex, QPolynomial(Rational(e.value)));
    case K::kQ:
      if (e.q_power < 0) throw std::invalid_argument("negative power of q");
      return ClassVector::basis(n, kUnitIndex, QPolynomial::monomial(e.q_power, 1));
    case K::kTau:
      if (!is_valid(n, e.tau)) throw std::invalid_argument(to_string(e.tau) + " is not a basis index at n=" + std::to_string(n));
      return ClassVector::basis(n, e.tau);
    case K::kSum: {
      ClassVector acc(n);
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        const ClassVector c = evaluate_expression(t, e.children[i]);
        acc = e.negated[i] ? acc - c : acc + c;
      }
      return acc;
    }
    case K::kProduct: {
      ClassVector acc = evaluate_expression(t, e.children[0]);
      for (std::size_t i = 1; i < e.children.size(); ++i) acc = multiply(t, acc, evaluate_expression(t, e.children[i]));
      return acc;
    }
  }
  return ClassVector(n);
}

}  // namespace osg
