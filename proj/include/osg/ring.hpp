#pragma once

// Multiplication table of QH*(IG(2, 2n+1)) in the Schubert basis.
//
// Every basis class is written as a Q[q]-combination of monomials
// tau_1^i * tau[1,1]^j, found by exact elimination in each homogeneous
// graded slice. The products with tau_mu then follow by applying the same
// combination of Pieri operators to tau_mu.

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "osg/algebra.hpp"
#include "osg/index.hpp"
#include "osg/linalg.hpp"
#include "osg/pieri.hpp"

namespace osg {

/// Exponents of tau_1^i * tau[1,1]^j.
struct OperatorMonomial {
  int tau1_power = 0;
  int tau11_power = 0;
  friend constexpr auto operator<=>(const OperatorMonomial&, const OperatorMonomial&) = default;
};

/// sum over monomials of P(q) * tau_1^i * tau[1,1]^j.
using GeneratorExpression = std::map<OperatorMonomial, QPolynomial>;

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a built or loaded table breaks one of its structural invariants.
class TableInvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies P(tau_1, tau[1,1]) to v through the Pieri operators.
inline ClassVector apply_generator_expression(const GeneratorExpression& expr, const ClassVector& v) {
  ClassVector out(v.rank());
  // Group by tau[1,1] power so each power of the tau_1 operator is applied once.
  std::map<int, std::map<int, QPolynomial>> by_j;
  for (const auto& [m, p] : expr) by_j[m.tau11_power][m.tau1_power] = p;
  ClassVector w = v;
  int j_done = 0;
  for (const auto& [j, by_i] : by_j) {
    for (; j_done < j; ++j_done) w = apply_pieri(PieriClass::kTau11, w);
    ClassVector u = w;
    int i_done = 0;
    for (const auto& [i, p] : by_i) {
      for (; i_done < i; ++i_done) u = apply_pieri(PieriClass::kTau1, u);
      out += u * p;
    }
  }
  return out;
}

class MultiplicationTable {
 public:
  int rank() const noexcept { return n_; }
  const std::vector<PartitionIndex>& basis() const noexcept { return positions_.basis(); }
  const BasisPositions& positions() const noexcept { return positions_; }
  const std::map<PartitionIndex, GeneratorExpression>& generator_expressions() const noexcept { return generators_; }

  /// tau_lam * tau_mu.
  const ClassVector& product(PartitionIndex lam, PartitionIndex mu) const {
    const int i = position_or_throw(lam);
    const int j = position_or_throw(mu);
    return products_[slot(std::min(i, j), std::max(i, j))];
  }

  /// Recomputes tau_lam * tau_mu from lam's generator expression, without the
  /// stored symmetric slot. Used to audit commutativity.
  ClassVector product_via_generators(PartitionIndex lam, PartitionIndex mu) const {
    position_or_throw(mu);
    return apply_generator_expression(generators_.at(lam), ClassVector::basis(n_, mu));
  }

  /// Number of stored products, N(N+1)/2.
  std::size_t stored_products() const noexcept { return products_.size(); }

  /// Stored products for lam <= mu in basis order, row-major.
  const std::vector<ClassVector>& upper_products() const noexcept { return products_; }

  static MultiplicationTable build(int n);

  /// Assembles a table from stored parts (e.g. a cache file). Only checks shapes.
  static MultiplicationTable from_parts(int n, std::vector<ClassVector> upper,
                                        std::map<PartitionIndex, GeneratorExpression> generators) {
    MultiplicationTable t(n);
    const std::size_t size = t.positions_.size();
    if (upper.size() != size * (size + 1) / 2) throw TableInvariantError("wrong number of stored products");
    for (const auto& v : upper)
      if (v.rank() != n) throw TableInvariantError("product of wrong rank");
    if (generators.size() != size) throw TableInvariantError("missing generator expressions");
    for (const auto& lam : t.basis())
      if (!generators.count(lam)) throw TableInvariantError("missing generator expression for " + to_string(lam));
    t.products_ = std::move(upper);
    t.generators_ = std::move(generators);
    return t;
  }

  friend bool operator==(const MultiplicationTable& a, const MultiplicationTable& b) {
    return a.n_ == b.n_ && a.products_ == b.products_ && a.generators_ == b.generators_;
  }

 private:
  explicit MultiplicationTable(int n) : n_(n), positions_(n) {}

  int position_or_throw(PartitionIndex lam) const {
    const int p = positions_.position(lam);
    if (p < 0) throw std::invalid_argument("index " + to_string(lam) + " not valid for n=" + std::to_string(n_));
    return p;
  }
  std::size_t slot(int i, int j) const noexcept {
    const auto N = positions_.size();
    const auto ui = static_cast<std::size_t>(i);
    return ui * N - ui * (ui - 1) / 2 + static_cast<std::size_t>(j - i);
  }

  int n_;
  BasisPositions positions_;
  std::vector<ClassVector> products_;
  std::map<PartitionIndex, GeneratorExpression> generators_;
};

namespace detail {

/// Memoized values tau_1^i * tau[1,1]^j * v of the Pieri operators on a seed class.
class OperatorOrbit {
 public:
  explicit OperatorOrbit(ClassVector seed) { cache_.emplace(OperatorMonomial{0, 0}, std::move(seed)); }

  const ClassVector& at(OperatorMonomial m) {
    if (auto it = cache_.find(m); it != cache_.end()) return it->second;
    ClassVector v = m.tau1_power > 0 ? apply_pieri(PieriClass::kTau1, at({m.tau1_power - 1, m.tau11_power}))
                                     : apply_pieri(PieriClass::kTau11, at({0, m.tau11_power - 1}));
    return cache_.emplace(m, std::move(v)).first->second;
  }

 private:
  std::map<OperatorMonomial, ClassVector> cache_;
};

/// Generator expressions for every basis class of rank n.
inline std::map<PartitionIndex, GeneratorExpression> solve_generator_expressions(int n) {
  const auto basis = enumerate_basis(n);
  const int qdeg = 2 * n;
  const int top = 4 * n - 3;

  OperatorOrbit orbit(ClassVector::basis(n, kUnitIndex));

  std::map<PartitionIndex, GeneratorExpression> out;
  for (int total = 0; total <= top; ++total) {
    const auto targets = enumerate_degree(n, total);
    if (targets.empty()) continue;

    // Coordinates q^k tau_nu of the slice, k ascending then basis order.
    std::vector<TermKey> coords;
    for (int k = 0; k * qdeg <= total; ++k)
      for (const auto& nu : enumerate_degree(n, total - k * qdeg)) coords.push_back({nu, k});

    // Columns q^k tau_1^i tau[1,1]^j, k ascending then j descending.
    struct Column {
      OperatorMonomial m;
      int k;
    };
    std::vector<Column> columns;
    for (int k = 0; k * qdeg <= total; ++k) {
      const int rest = total - k * qdeg;
      for (int j = rest / 2; j >= 0; --j) columns.push_back({{rest - 2 * j, j}, k});
    }

    linalg::Matrix a(coords.size(), linalg::Vector(columns.size(), Rational(0)));
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const ClassVector& v = orbit.at(columns[c].m);
      for (std::size_t r = 0; r < coords.size(); ++r) {
        const auto& [nu, k] = coords[r];
        if (k >= columns[c].k) a[r][c] = v.coefficient(nu, k - columns[c].k);
      }
    }
    std::vector<linalg::Vector> rhs;
    for (const auto& lam : targets) {
      linalg::Vector b(coords.size(), Rational(0));
      for (std::size_t r = 0; r < coords.size(); ++r)
        if (coords[r].d == 0 && coords[r].nu == lam) b[r] = 1;
      rhs.push_back(std::move(b));
    }
    const auto solutions = linalg::solve(a, rhs);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!solutions[t]) {
        throw GenerationFailure(to_string(targets[t]) + " is not in the span of tau_1, tau[1,1] monomials for n=" +
                                std::to_string(n));
      }
      GeneratorExpression expr;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        const Rational& r = (*solutions[t])[c];
        if (r == 0) continue;
        expr[columns[c].m] += QPolynomial::monomial(columns[c].k, r);
      }
      for (auto it = expr.begin(); it != expr.end();) it = it->second.is_zero() ? expr.erase(it) : std::next(it);
      out.emplace(targets[t], std::move(expr));
    }
  }
  return out;
}

}  // namespace detail

/// Checks homogeneity, the q-exponent bound and integrality of every stored
/// product. Throws TableInvariantError on the first violation.
inline void check_structural_invariants(const MultiplicationTable& t) {
  const auto& basis = t.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const auto& v = t.product(basis[i], basis[j]);
      const std::string where = to_string(basis[i]) + "*" + to_string(basis[j]);
      if (!v.is_homogeneous(basis[i].degree() + basis[j].degree()))
        throw TableInvariantError("inhomogeneous product " + where);
      if (v.max_q_exponent() > 3) throw TableInvariantError("q exponent above 3 in " + where);
      for (const auto& [nu, p] : v.terms())
        for (const auto& [d, c] : p.terms())
          if (!is_integer(c)) throw TableInvariantError("non-integral structure constant in " + where);
    }
  }
}

inline MultiplicationTable MultiplicationTable::build(int n) {
  require_ring_rank(n);
  MultiplicationTable t(n);
  t.generators_ = detail::solve_generator_expressions(n);
  const auto& basis = t.basis();
  t.products_.assign(basis.size() * (basis.size() + 1) / 2, ClassVector(n));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    detail::OperatorOrbit orbit(ClassVector::basis(n, basis[j]));
    for (std::size_t i = 0; i <= j; ++i) {
      ClassVector v(n);
      for (const auto& [m, p] : t.generators_.at(basis[i])) v += orbit.at(m) * p;
      t.products_[t.slot(static_cast<int>(i), static_cast<int>(j))] = std::move(v);
    }
  }
  check_structural_invariants(t);
  return t;
}

inline MultiplicationTable build_table(int n) { return MultiplicationTable::build(n); }

/// Bilinear extension of the table.
inline ClassVector multiply(const MultiplicationTable& t, const ClassVector& x, const ClassVector& y) {
  if (x.rank() != t.rank()) throw RankMismatch(t.rank(), x.rank());
  if (y.rank() != t.rank()) throw RankMismatch(t.rank(), y.rank());
  ClassVector out(t.rank());
  for (const auto& [lam, p] : x.terms())
    for (const auto& [mu, r] : y.terms()) out += t.product(lam, mu) * (p * r);
  return out;
}

inline ClassVector multiply(const MultiplicationTable& t, PartitionIndex lam, PartitionIndex mu) {
  return t.product(lam, mu);
}

/// tau[1,1]^power computed by repeated multiplication.
inline ClassVector tau11_power(const MultiplicationTable& t, int power) {
  ClassVector v = ClassVector::basis(t.rank(), kUnitIndex);
  const ClassVector tau11 = ClassVector::basis(t.rank(), kTau11);
  for (int i = 0; i < power; ++i) v = multiply(t, tau11, v);
  return v;
}

/// Coefficient of q^d tau_nu in tau_lam * tau_mu.
inline Rational gw_constant(const MultiplicationTable& t, PartitionIndex lam, PartitionIndex mu, PartitionIndex nu,
                            int d) {
  if (!is_valid(t.rank(), nu)) throw std::invalid_argument("index " + to_string(nu) + " not valid");
  if (d < 0) throw std::invalid_argument("q degree must be >= 0");
  return t.product(lam, mu).coefficient(nu, d);
}

/// Coefficient of the top class in the classical part of tau_lam * tau_mu.
inline Rational poincare_pairing(const MultiplicationTable& t, PartitionIndex lam, PartitionIndex mu) {
  return t.product(lam, mu).coefficient(Rank(t.rank()).top_class(), 0);
}

/// Pairing matrix between degree d and degree 4n-3-d.
inline linalg::Matrix pairing_matrix(const MultiplicationTable& t, int d) {
  const int n = t.rank();
  const auto rows = enumerate_degree(n, d);
  const auto cols = enumerate_degree(n, 4 * n - 3 - d);
  linalg::Matrix m(rows.size(), linalg::Vector(cols.size(), Rational(0)));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m[r][c] = poincare_pairing(t, rows[r], cols[c]);
  return m;
}

/// True when every pairing matrix is square and invertible over Q.
inline bool pairing_nondegenerate(const MultiplicationTable& t, int* failing_degree = nullptr) {
  const int top = 4 * t.rank() - 3;
  for (int d = 0; d <= top; ++d) {
    const auto m = pairing_matrix(t, d);
    const bool square = m.size() == enumerate_degree(t.rank(), top - d).size();
    if (!square || linalg::rank(m) != m.size()) {
      if (failing_degree) *failing_degree = d;
      return false;
    }
  }
  return true;
}

struct NegativeWitness {
  PartitionIndex lambda;
  PartitionIndex mu;
  PartitionIndex nu;
  int d = 0;
  Rational value;
};

/// First negative structure constant in basis order, scanning pairs lam <= mu.
/// When factors is non-empty only products with one of them are scanned.
inline std::optional<NegativeWitness> find_negative_constant(const MultiplicationTable& t,
                                                             std::span<const PartitionIndex> factors = {}) {
  const auto& basis = t.basis();
  auto scan = [&](PartitionIndex lam, PartitionIndex mu) -> std::optional<NegativeWitness> {
    for (const auto& [nu, p] : t.product(lam, mu).terms())
      for (const auto& [d, c] : p.terms())
        if (c < 0) return NegativeWitness{lam, mu, nu, d, c};
    return std::nullopt;
  };
  if (factors.empty()) {
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j)
        if (auto w = scan(basis[i], basis[j])) return w;
    return std::nullopt;
  }
  for (const auto& f : factors)
    for (const auto& mu : basis)
      if (auto w = scan(f, mu)) return w;
  return std::nullopt;
}

inline bool has_negative_constant(const MultiplicationTable& t, NegativeWitness* witness = nullptr) {
  auto w = find_negative_constant(t);
  if (w && witness) *witness = *w;
  return w.has_value();
}

}  // namespace osg
