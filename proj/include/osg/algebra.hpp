#pragma once

// Exact coefficient arithmetic: polynomials in q, class vectors over the
// Schubert basis, and affine expressions in deformation unknowns.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osg/index.hpp"
#include "osg/rational.hpp"

namespace osg {

class RankMismatch : public std::invalid_argument {
 public:
  RankMismatch(int a, int b)
      : std::invalid_argument("rank mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

// ---------------------------------------------------------------------------
// QPolynomial

/// Polynomial in the quantum parameter q with rational coefficients.
/// Zero coefficients are never stored.
class QPolynomial {
 public:
  using Terms = std::map<int, Rational>;

  QPolynomial() = default;
  QPolynomial(const Rational& c) { add_term(0, c); }  // NOLINT: scalars embed implicitly
  QPolynomial(int c) : QPolynomial(Rational(c)) {}    // NOLINT

  static QPolynomial monomial(int exponent, const Rational& c) {
    QPolynomial p;
    p.add_term(exponent, c);
    return p;
  }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int max_exponent() const noexcept { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  Rational coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(int exponent, const Rational& c) {
    if (exponent < 0) throw std::invalid_argument("negative q exponent");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  QPolynomial& operator+=(const QPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  QPolynomial& operator-=(const QPolynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  QPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  /// Multiply by q^k.
  QPolynomial shifted(int k) const {
    QPolynomial out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e + k, c);
    return out;
  }

  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(QPolynomial a, const QPolynomial& b) { return a -= b; }
  friend QPolynomial operator-(QPolynomial a) { return a *= Rational(-1); }
  friend QPolynomial operator*(QPolynomial a, const Rational& s) { return a *= s; }
  friend QPolynomial operator*(const Rational& s, QPolynomial a) { return a *= s; }
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
    QPolynomial out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
  }
  friend bool operator==(const QPolynomial&, const QPolynomial&) = default;

 private:
  Terms terms_;
};

inline const QPolynomial kQ = QPolynomial::monomial(1, 1);

std::string to_string(const QPolynomial& p);

// ---------------------------------------------------------------------------
// ClassVector

/// A finitely supported combination sum_nu P_nu(q) tau_nu for a fixed rank.
/// Every key is a valid index for the rank; zero polynomials are not stored.
class ClassVector {
 public:
  using Terms = std::map<PartitionIndex, QPolynomial>;

  explicit ClassVector(int n) : n_(n) {}

  static ClassVector basis(int n, PartitionIndex lam, const QPolynomial& c = QPolynomial(1)) {
    ClassVector v(n);
    v.add(lam, c);
    return v;
  }

  int rank() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * tau_lam; throws when lam is not in the index set.
  void add(PartitionIndex lam, const QPolynomial& c) {
    if (!is_valid(n_, lam)) throw std::invalid_argument("index " + osg::to_string(lam) + " not valid for n=" + std::to_string(n_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(lam, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Coefficient of q^d tau_nu.
  Rational coefficient(PartitionIndex nu, int d) const {
    auto it = terms_.find(nu);
    return it == terms_.end() ? Rational(0) : it->second.coefficient(d);
  }

  const QPolynomial* find(PartitionIndex nu) const {
    auto it = terms_.find(nu);
    return it == terms_.end() ? nullptr : &it->second;
  }

  /// True when every term q^d tau_nu has deg nu + 2n d == total.
  bool is_homogeneous(int total) const {
    for (const auto& [nu, p] : terms_)
      for (const auto& [d, c] : p.terms())
        if (nu.degree() + 2 * n_ * d != total) return false;
    return true;
  }

  int max_q_exponent() const {
    int m = -1;
    for (const auto& [nu, p] : terms_) m = std::max(m, p.max_exponent());
    return m;
  }

  ClassVector& operator+=(const ClassVector& o) {
    check_rank(o);
    for (const auto& [nu, p] : o.terms_) add(nu, p);
    return *this;
  }
  ClassVector& operator-=(const ClassVector& o) {
    check_rank(o);
    for (const auto& [nu, p] : o.terms_) add(nu, -p);
    return *this;
  }
  ClassVector& operator*=(const QPolynomial& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second = it->second * s;
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend ClassVector operator+(ClassVector a, const ClassVector& b) { return a += b; }
  friend ClassVector operator-(ClassVector a, const ClassVector& b) { return a -= b; }
  friend ClassVector operator*(ClassVector a, const QPolynomial& s) { return a *= s; }
  friend ClassVector operator*(const QPolynomial& s, ClassVector a) { return a *= s; }
  friend bool operator==(const ClassVector&, const ClassVector&) = default;

  void check_rank(const ClassVector& o) const {
    if (o.n_ != n_) throw RankMismatch(n_, o.n_);
  }

 private:
  int n_;
  Terms terms_;
};

std::string to_string(const ClassVector& v);

// ---------------------------------------------------------------------------
// Unknowns and affine expressions

/// Interned deformation unknown. The id is an index into an UnknownRegistry.
struct UnknownId {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(const UnknownId&, const UnknownId&) = default;
};

/// Key of a deformation coefficient: a_{lambda,mu}, or a_mu alone when the
/// coefficient is shared across lambda.
struct UnknownKey {
  std::optional<PartitionIndex> lambda;
  PartitionIndex mu;
  friend bool operator==(const UnknownKey&, const UnknownKey&) = default;
  friend auto operator<=>(const UnknownKey& a, const UnknownKey& b) {
    if (a.lambda.has_value() != b.lambda.has_value()) return a.lambda.has_value() <=> b.lambda.has_value();
    if (a.lambda && *a.lambda != *b.lambda) return *a.lambda <=> *b.lambda;
    return a.mu <=> b.mu;
  }
};

inline std::string to_string(const UnknownKey& k) {
  auto pair = [](PartitionIndex p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; };
  if (k.lambda) return "a[" + pair(*k.lambda) + "," + pair(k.mu) + "]";
  return "a[" + pair(k.mu) + "]";
}

class UnknownRegistry {
 public:
  UnknownId intern(const UnknownKey& key) {
    if (auto it = ids_.find(key); it != ids_.end()) return it->second;
    UnknownId id{static_cast<std::uint32_t>(keys_.size())};
    keys_.push_back(key);
    ids_.emplace(key, id);
    return id;
  }
  std::optional<UnknownId> find(const UnknownKey& key) const {
    auto it = ids_.find(key);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
  }
  const UnknownKey& key(UnknownId id) const { return keys_.at(id.value); }
  const std::vector<UnknownKey>& keys() const noexcept { return keys_; }
  std::size_t size() const noexcept { return keys_.size(); }

  friend bool operator==(const UnknownRegistry& a, const UnknownRegistry& b) { return a.keys_ == b.keys_; }

 private:
  std::vector<UnknownKey> keys_;
  std::map<UnknownKey, UnknownId> ids_;
};

/// constant + sum_k coeff_k * a_k with exact coefficients and no zero entries.
class AffineExpression {
 public:
  using Linear = std::map<UnknownId, Rational>;

  AffineExpression() = default;
  AffineExpression(const Rational& c) : constant_(c) {}  // NOLINT
  AffineExpression(int c) : constant_(c) {}              // NOLINT

  static AffineExpression unknown(UnknownId id, const Rational& c = 1) {
    AffineExpression e;
    e.add_linear(id, c);
    return e;
  }

  const Rational& constant() const noexcept { return constant_; }
  const Linear& linear() const noexcept { return linear_; }
  bool is_constant() const noexcept { return linear_.empty(); }
  bool is_zero() const noexcept { return linear_.empty() && constant_ == 0; }

  Rational coefficient(UnknownId id) const {
    auto it = linear_.find(id);
    return it == linear_.end() ? Rational(0) : it->second;
  }

  void add_linear(UnknownId id, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = linear_.try_emplace(id, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) linear_.erase(it);
    }
  }
  void add_constant(const Rational& c) { constant_ += c; }

  AffineExpression& operator+=(const AffineExpression& o) {
    constant_ += o.constant_;
    for (const auto& [id, c] : o.linear_) add_linear(id, c);
    return *this;
  }
  AffineExpression& operator-=(const AffineExpression& o) {
    constant_ -= o.constant_;
    for (const auto& [id, c] : o.linear_) add_linear(id, -c);
    return *this;
  }
  AffineExpression& operator*=(const Rational& s) {
    if (s == 0) {
      linear_.clear();
      constant_ = 0;
      return *this;
    }
    constant_ *= s;
    for (auto& [id, c] : linear_) c *= s;
    return *this;
  }

  /// Evaluates at a full assignment indexed by unknown id.
  Rational evaluate(const std::vector<Rational>& values) const {
    Rational r = constant_;
    for (const auto& [id, c] : linear_) r += c * values.at(id.value);
    return r;
  }

  /// Replaces the listed unknowns by constants.
  AffineExpression substitute(const std::map<UnknownId, Rational>& values) const {
    AffineExpression out(constant_);
    for (const auto& [id, c] : linear_) {
      if (auto it = values.find(id); it != values.end())
        out.constant_ += c * it->second;
      else
        out.add_linear(id, c);
    }
    return out;
  }

  friend AffineExpression operator+(AffineExpression a, const AffineExpression& b) { return a += b; }
  friend AffineExpression operator-(AffineExpression a, const AffineExpression& b) { return a -= b; }
  friend AffineExpression operator-(AffineExpression a) { return a *= Rational(-1); }
  friend AffineExpression operator*(AffineExpression a, const Rational& s) { return a *= s; }
  friend AffineExpression operator*(const Rational& s, AffineExpression a) { return a *= s; }
  friend bool operator==(const AffineExpression&, const AffineExpression&) = default;

 private:
  Rational constant_ = 0;
  Linear linear_;
};

/// Raised whenever a product of two non-constant affine expressions is requested.
class QuadraticTermError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Product that must stay affine: at least one side has to be constant.
inline AffineExpression affine_product(const AffineExpression& a, const AffineExpression& b) {
  if (a.is_constant()) return b * a.constant();
  if (b.is_constant()) return a * b.constant();
  throw QuadraticTermError("product of two non-constant affine expressions");
}

std::string to_string(const AffineExpression& e, const UnknownRegistry* names = nullptr);

/// Key (class, q exponent) of a single coefficient in a class vector.
struct TermKey {
  PartitionIndex nu;
  int d = 0;
  friend constexpr auto operator<=>(const TermKey&, const TermKey&) = default;
};

/// A class vector whose coefficients are affine in the unknowns, keyed by
/// (class, q exponent). Used for symbolic products in the deformed basis.
class AffineClassVector {
 public:
  using Terms = std::map<TermKey, AffineExpression>;

  explicit AffineClassVector(int n) : n_(n) {}

  static AffineClassVector from(const ClassVector& v) {
    AffineClassVector out(v.rank());
    for (const auto& [nu, p] : v.terms())
      for (const auto& [d, c] : p.terms()) out.add({nu, d}, c);
    return out;
  }

  int rank() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }

  void add(TermKey key, const AffineExpression& e) {
    if (!is_valid(n_, key.nu)) throw std::invalid_argument("index " + osg::to_string(key.nu) + " not valid");
    if (e.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, e);
    if (!inserted) {
      it->second += e;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Adds coeff * q^shift * v for a concrete class vector v.
  void add_scaled(const ClassVector& v, const AffineExpression& coeff, int shift = 0) {
    if (v.rank() != n_) throw RankMismatch(n_, v.rank());
    for (const auto& [nu, p] : v.terms())
      for (const auto& [d, c] : p.terms()) add({nu, d + shift}, coeff * c);
  }

  AffineExpression coefficient(TermKey key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? AffineExpression{} : it->second;
  }

  AffineClassVector& operator+=(const AffineClassVector& o) {
    for (const auto& [k, e] : o.terms_) add(k, e);
    return *this;
  }

  AffineClassVector substitute(const std::map<UnknownId, Rational>& values) const {
    AffineClassVector out(n_);
    for (const auto& [k, e] : terms_) out.add(k, e.substitute(values));
    return out;
  }

  friend bool operator==(const AffineClassVector&, const AffineClassVector&) = default;

 private:
  int n_;
  Terms terms_;
};

std::string to_string(const AffineClassVector& v, const UnknownRegistry* names = nullptr);

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string signed_term(bool first, const Rational& c, const std::string& body) {
  std::string out;
  Rational mag = c;
  if (c < 0) {
    out = first ? "-" : " - ";
    mag = -c;
  } else if (!first) {
    out = " + ";
  }
  if (body.empty()) return out + to_string(mag);
  if (mag != 1) out += to_string(mag) + "*";
  return out + body;
}

inline std::string q_power(int d) {
  if (d == 0) return "";
  if (d == 1) return "q";
  return "q^" + std::to_string(d);
}

inline std::string join_star(const std::string& a, const std::string& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return a + "*" + b;
}

}  // namespace detail

inline std::string to_string(const QPolynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    out += detail::signed_term(first, it->second, detail::q_power(it->first));
    first = false;
  }
  return out;
}

/// Renders as a sum of c*q^d*tau[a,b] terms in basis order, which the
/// expression parser reads back.
inline std::string to_string(const ClassVector& v) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [nu, p] : v.terms()) {
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
      out += detail::signed_term(first, it->second, detail::join_star(detail::q_power(it->first), to_string(nu)));
      first = false;
    }
  }
  return out;
}

inline std::string to_string(const AffineExpression& e, const UnknownRegistry* names) {
  std::string out;
  bool first = true;
  if (e.constant() != 0 || e.is_constant()) {
    out = to_string(e.constant());
    first = false;
  }
  for (const auto& [id, c] : e.linear()) {
    std::string name = names ? to_string(names->key(id)) : "x" + std::to_string(id.value);
    out += detail::signed_term(first, c, name);
    first = false;
  }
  return out;
}

inline std::string to_string(const AffineClassVector& v, const UnknownRegistry* names) {
  if (v.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, e] : v.terms()) {
    std::string cls = detail::join_star(detail::q_power(k.d), to_string(k.nu));
    if (!first) out += " + ";
    out += "(" + to_string(e, names) + ")*" + cls;
    first = false;
  }
  return out;
}

}  // namespace osg

namespace osg {
// gtest/diagnostic printing hooks.
inline void PrintTo(const QPolynomial& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const ClassVector& v, std::ostream* os) { *os << to_string(v); }
inline void PrintTo(const AffineExpression& e, std::ostream* os) { *os << to_string(e); }
inline void PrintTo(const AffineClassVector& v, std::ostream* os) { *os << to_string(v); }
}  // namespace osg
