#pragma once

// Condition (**) as an affine inequality system in the deformation unknowns,
// and an exact Fourier-Motzkin certifier that every unknown is forced to 0.
//
// Certificates are Farkas-style: a nonnegative combination of the original
// constraints that literally equals -a_k + c (upper bound c) or a_k + c
// (lower bound -c). verify_certificate re-derives them without the search.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osg/algebra.hpp"
#include "osg/deformation.hpp"
#include "osg/ring.hpp"

namespace osg {

// ---------------------------------------------------------------------------
// Symbolic deformation

/// Interns the unknowns of a deformation in basis order of (lam, mu).
inline UnknownRegistry make_unknowns(int n, DeformationMode mode) {
  UnknownRegistry reg;
  for (const auto& lam : enumerate_basis(n)) {
    for (const auto& mu : correction_indices(n, lam)) {
      if (mode == DeformationMode::kPerPair)
        reg.intern({lam, mu});
      else if (!reg.find({std::nullopt, mu}))
        reg.intern({std::nullopt, mu});
    }
  }
  if (mode == DeformationMode::kPerMu) {
    // Re-intern in basis order of mu for a stable, readable layout.
    std::vector<UnknownKey> keys = reg.keys();
    std::sort(keys.begin(), keys.end());
    UnknownRegistry sorted;
    for (const auto& k : keys) sorted.intern(k);
    return sorted;
  }
  return reg;
}

/// Symbolic view of a deformation: a_{lam,mu} as affine expressions.
class SymbolicDeformation {
 public:
  SymbolicDeformation(int n, DeformationMode mode) : n_(n), mode_(mode), unknowns_(make_unknowns(n, mode)) {}

  int rank() const noexcept { return n_; }
  DeformationMode mode() const noexcept { return mode_; }
  const UnknownRegistry& unknowns() const noexcept { return unknowns_; }

  UnknownId unknown(PartitionIndex lam, PartitionIndex mu) const {
    const UnknownKey key = mode_ == DeformationMode::kPerPair ? UnknownKey{lam, mu} : UnknownKey{std::nullopt, mu};
    auto id = unknowns_.find(key);
    if (!id || lam.degree() != mu.degree() + 2 * n_) throw std::invalid_argument("no unknown for " + to_string(key));
    return *id;
  }

  /// sigma_lam written in the tau basis.
  AffineClassVector sigma_in_tau(PartitionIndex lam) const {
    AffineClassVector v(n_);
    v.add({lam, 0}, 1);
    for (const auto& mu : correction_indices(n_, lam)) v.add({mu, 1}, AffineExpression::unknown(unknown(lam, mu), -1));
    return v;
  }

  /// Rewrites a tau-basis vector in the sigma basis. A class of degree >= 2n
  /// with a non-constant coefficient would create a quadratic term; that
  /// throws QuadraticTermError.
  AffineClassVector tau_to_sigma(const AffineClassVector& v) const {
    AffineClassVector out(n_);
    for (const auto& [key, e] : v.terms()) {
      out.add(key, e);
      for (const auto& kappa : correction_indices(n_, key.nu))
        out.add({kappa, key.d + 1}, affine_product(e, AffineExpression::unknown(unknown(key.nu, kappa))));
    }
    return out;
  }

 private:
  int n_;
  DeformationMode mode_;
  UnknownRegistry unknowns_;
};

/// x * v for a concrete class x and a symbolic tau-basis vector v.
inline AffineClassVector multiply_symbolic(const MultiplicationTable& t, const ClassVector& x,
                                           const AffineClassVector& v) {
  AffineClassVector out(t.rank());
  for (const auto& [key, e] : v.terms()) out.add_scaled(multiply(t, x, ClassVector::basis(t.rank(), key.nu)), e, key.d);
  return out;
}

/// sigma[1,1] * sigma_mu in the sigma basis, coefficients affine in the unknowns.
inline AffineClassVector symbolic_tau11_product(const MultiplicationTable& t, const SymbolicDeformation& def,
                                                PartitionIndex mu) {
  // sigma[1,1] = tau[1,1] because 2 < 2n.
  const AffineClassVector in_tau =
      multiply_symbolic(t, ClassVector::basis(t.rank(), kTau11), def.sigma_in_tau(mu));
  return def.tau_to_sigma(in_tau);
}

// ---------------------------------------------------------------------------
// Constraint system

struct Provenance {
  PartitionIndex mu;  // the product sigma[1,1] * sigma_mu
  PartitionIndex nu;  // coefficient of q^d sigma_nu
  int d = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Constraint {
  AffineExpression expr;  // expr >= 0
  Provenance provenance;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ConstraintSystem {
  int n = 0;
  DeformationMode mode = DeformationMode::kPerPair;
  UnknownRegistry unknowns;
  std::vector<Constraint> constraints;
};

/// One ">= 0" constraint per non-constant coefficient of sigma[1,1] * sigma_mu,
/// for every basis mu.
inline ConstraintSystem build_constraints(const MultiplicationTable& t, DeformationMode mode) {
  require_ring_rank(t.rank());
  SymbolicDeformation def(t.rank(), mode);
  ConstraintSystem sys{t.rank(), mode, def.unknowns(), {}};
  for (const auto& mu : t.basis()) {
    const AffineClassVector prod = symbolic_tau11_product(t, def, mu);
    for (const auto& [key, e] : prod.terms()) {
      if (e.is_constant()) {
        if (e.constant() < 0)
          throw std::logic_error("negative constant coefficient in undeformed product with " + to_string(mu));
        continue;
      }
      sys.constraints.push_back({e, {mu, key.nu, key.d}});
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Certificates

enum class Conclusion { kUniqueZero, kNotUnique };

inline std::string_view to_string(Conclusion c) { return c == Conclusion::kUniqueZero ? "UniqueZero" : "NotUnique"; }

enum class BoundDirection { kUpper, kLower };

inline std::string_view to_string(BoundDirection d) { return d == BoundDirection::kUpper ? "upper" : "lower"; }

/// sum_i weight_i * constraint_i equals -a_k + bound (upper) or a_k - bound (lower).
struct BoundProof {
  UnknownId unknown;
  BoundDirection direction = BoundDirection::kUpper;
  Rational bound;
  std::vector<std::pair<std::size_t, Rational>> weights;
};

struct Interval {
  std::optional<Rational> lower;  // nullopt: unbounded
  std::optional<Rational> upper;
  bool is_zero() const { return lower && upper && *lower == 0 && *upper == 0; }
};

struct EliminationTrace {
  std::size_t unknowns_eliminated = 0;
  std::size_t peak_constraints = 0;
  std::size_t generated_constraints = 0;
};

struct Certificate {
  int n = 0;
  DeformationMode mode = DeformationMode::kPerPair;
  Conclusion conclusion = Conclusion::kNotUnique;
  std::vector<Interval> intervals;       // per unknown id
  std::vector<BoundProof> bounds;        // finite bounds with their proofs
  std::vector<Rational> witness;         // NotUnique only: a feasible nonzero point
  std::vector<EliminationTrace> trace;   // per unknown id
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CertifyOptions {
  std::size_t max_constraints = 200000;
};

namespace detail {

struct FmRow {
  AffineExpression expr;
  std::map<std::size_t, Rational> weights;
};

inline FmRow scaled(const FmRow& r, const Rational& s) {
  FmRow out{r.expr * s, {}};
  for (const auto& [i, w] : r.weights) out.weights.emplace(i, w * s);
  return out;
}

inline void accumulate(FmRow& into, const FmRow& r, const Rational& s) {
  into.expr += r.expr * s;
  for (const auto& [i, w] : r.weights) {
    auto [it, inserted] = into.weights.try_emplace(i, w * s);
    if (!inserted) {
      it->second += w * s;
      if (it->second == 0) into.weights.erase(it);
    }
  }
}

/// Scales so the leading linear coefficient has magnitude 1, then keeps one row
/// per linear part (the one with the smallest constant, which dominates).
/// Rows without unknowns are dropped when trivially true.
class RowSet {
 public:
  explicit RowSet(std::size_t cap) : cap_(cap) {}

  void insert(FmRow r) {
    if (r.expr.is_constant()) {
      if (r.expr.constant() < 0) infeasible_ = true;
      return;
    }
    const Rational lead = abs(r.expr.linear().begin()->second);
    if (lead != 1) r = scaled(r, 1 / lead);
    auto it = rows_.find(r.expr.linear());
    if (it == rows_.end()) {
      const auto key = r.expr.linear();
      rows_.emplace(key, std::move(r));
      if (rows_.size() > cap_)
        throw ResourceLimitExceeded("Fourier-Motzkin intermediate constraint count exceeded " + std::to_string(cap_));
    } else if (r.expr.constant() < it->second.expr.constant()) {
      it->second = std::move(r);
    }
  }

  bool infeasible() const noexcept { return infeasible_; }
  std::size_t size() const noexcept { return rows_.size(); }
  std::vector<FmRow> rows() const {
    std::vector<FmRow> out;
    out.reserve(rows_.size());
    for (const auto& [k, r] : rows_) out.push_back(r);
    return out;
  }

 private:
  std::size_t cap_;
  bool infeasible_ = false;
  std::map<AffineExpression::Linear, FmRow> rows_;
};

struct Stage {
  UnknownId eliminated;
  std::vector<FmRow> rows;
};

struct Projection {
  std::vector<FmRow> final_rows;  // rows in the target unknown only
  std::vector<Stage> stages;
  EliminationTrace trace;
};

/// Eliminates every unknown except target.
inline Projection project_onto(const std::vector<FmRow>& initial, UnknownId target, std::size_t cap) {
  Projection proj;
  std::vector<FmRow> rows;
  {
    RowSet set(cap);
    for (const auto& r : initial) set.insert(r);
    rows = set.rows();
  }
  proj.trace.peak_constraints = rows.size();
  for (;;) {
    // Greedy order: fewest new rows, ties by id.
    std::map<UnknownId, std::pair<std::size_t, std::size_t>> counts;
    for (const auto& r : rows)
      for (const auto& [id, c] : r.expr.linear())
        if (id != target) (c > 0 ? counts[id].first : counts[id].second)++;
    if (counts.empty()) break;
    auto best = counts.begin();
    long best_cost = 0;
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      const long p = static_cast<long>(it->second.first), m = static_cast<long>(it->second.second);
      const long cost = p * m - p - m;
      if (it == counts.begin() || cost < best_cost) {
        best = it;
        best_cost = cost;
      }
    }
    const UnknownId x = best->first;
    proj.stages.push_back({x, rows});

    std::vector<const FmRow*> pos, neg;
    RowSet next(cap);
    for (const auto& r : rows) {
      const Rational c = r.expr.coefficient(x);
      if (c > 0)
        pos.push_back(&r);
      else if (c < 0)
        neg.push_back(&r);
      else
        next.insert(r);
    }
    for (const auto* p : pos) {
      for (const auto* m : neg) {
        const Rational cp = p->expr.coefficient(x);
        const Rational cm = m->expr.coefficient(x);
        FmRow combo = scaled(*p, -cm);
        accumulate(combo, *m, cp);
        ++proj.trace.generated_constraints;
        next.insert(std::move(combo));
      }
    }
    ++proj.trace.unknowns_eliminated;
    rows = next.rows();
    proj.trace.peak_constraints = std::max(proj.trace.peak_constraints, rows.size());
  }
  proj.final_rows = std::move(rows);
  return proj;
}

/// Picks a value for x consistent with rows, given values for every other unknown.
inline Rational feasible_value(const std::vector<FmRow>& rows, UnknownId x, const std::map<UnknownId, Rational>& fixed) {
  std::optional<Rational> lo, hi;
  for (const auto& r : rows) {
    const Rational c = r.expr.coefficient(x);
    if (c == 0) continue;
    AffineExpression rest = r.expr;
    rest.add_linear(x, -c);
    const AffineExpression sub = rest.substitute(fixed);
    if (!sub.is_constant()) throw std::logic_error("back-substitution met an unassigned unknown");
    const Rational b = -sub.constant() / c;
    if (c > 0) {
      if (!lo || b > *lo) lo = b;
    } else if (!hi || b < *hi) {
      hi = b;
    }
  }
  if (lo) return *lo;
  if (hi) return *hi;
  return 0;
}

}  // namespace detail

/// Computes the exact feasible interval of every unknown and, when every
/// interval is [0,0], Farkas proofs of a_k <= 0 and a_k >= 0.
inline Certificate certify_uniqueness(const ConstraintSystem& sys, const CertifyOptions& opts = {}) {
  Certificate cert;
  cert.n = sys.n;
  cert.mode = sys.mode;
  const std::size_t k_count = sys.unknowns.size();

  std::vector<detail::FmRow> initial;
  initial.reserve(sys.constraints.size());
  for (std::size_t i = 0; i < sys.constraints.size(); ++i)
    initial.push_back({sys.constraints[i].expr, {{i, Rational(1)}}});

  std::optional<std::pair<UnknownId, Rational>> nonzero_point;
  std::vector<detail::Projection> projections;
  for (std::size_t k = 0; k < k_count; ++k) {
    const UnknownId target{static_cast<std::uint32_t>(k)};
    detail::Projection proj = detail::project_onto(initial, target, opts.max_constraints);

    Interval iv;
    std::optional<BoundProof> upper_proof, lower_proof;
    for (const auto& r : proj.final_rows) {
      const Rational e = r.expr.coefficient(target);
      if (e == 0) continue;
      const Rational s = 1 / abs(e);
      // s * row = sign(e) a_k + s*c.
      const Rational bound = -r.expr.constant() / e;
      BoundProof proof{target, e < 0 ? BoundDirection::kUpper : BoundDirection::kLower, bound, {}};
      for (const auto& [i, w] : r.weights) proof.weights.emplace_back(i, w * s);
      if (e < 0 && (!iv.upper || bound < *iv.upper)) {
        iv.upper = bound;
        upper_proof = std::move(proof);
      } else if (e > 0 && (!iv.lower || bound > *iv.lower)) {
        iv.lower = bound;
        lower_proof = std::move(proof);
      }
    }
    if (upper_proof) cert.bounds.push_back(*upper_proof);
    if (lower_proof) cert.bounds.push_back(*lower_proof);
    if (!iv.is_zero() && !nonzero_point) {
      Rational v = iv.upper && *iv.upper != 0 ? *iv.upper : iv.lower && *iv.lower != 0 ? *iv.lower : Rational(0);
      if (v == 0) v = iv.upper ? Rational(-1) : Rational(1);
      nonzero_point = {target, v};
    }
    cert.intervals.push_back(iv);
    cert.trace.push_back(proj.trace);
    projections.push_back(std::move(proj));
  }

  cert.conclusion = Conclusion::kUniqueZero;
  for (const auto& iv : cert.intervals)
    if (!iv.is_zero()) cert.conclusion = Conclusion::kNotUnique;

  if (nonzero_point) {
    const auto& [target, value] = *nonzero_point;
    const auto& stages = projections[target.value].stages;
    std::map<UnknownId, Rational> fixed{{target, value}};
    for (auto it = stages.rbegin(); it != stages.rend(); ++it)
      fixed[it->eliminated] = detail::feasible_value(it->rows, it->eliminated, fixed);
    cert.witness.assign(k_count, Rational(0));
    for (const auto& [id, v] : fixed) cert.witness[id.value] = v;
  }
  return cert;
}

/// Independent check of every claim in the certificate against the system.
inline bool verify_certificate(const ConstraintSystem& sys, const Certificate& cert) {
  if (cert.n != sys.n || cert.mode != sys.mode) return false;
  const std::size_t k_count = sys.unknowns.size();
  if (cert.intervals.size() != k_count) return false;

  std::vector<bool> has_upper(k_count, false), has_lower(k_count, false);
  for (const auto& proof : cert.bounds) {
    if (proof.unknown.value >= k_count) return false;
    AffineExpression sum;
    for (const auto& [i, w] : proof.weights) {
      if (i >= sys.constraints.size() || w < 0) return false;
      sum += sys.constraints[i].expr * w;
    }
    const bool upper = proof.direction == BoundDirection::kUpper;
    AffineExpression claimed = AffineExpression::unknown(proof.unknown, upper ? -1 : 1);
    claimed.add_constant(upper ? proof.bound : Rational(-proof.bound));
    if (sum != claimed) return false;
    const Interval& iv = cert.intervals[proof.unknown.value];
    const auto& side = upper ? iv.upper : iv.lower;
    if (!side || *side != proof.bound) return false;
    (upper ? has_upper : has_lower)[proof.unknown.value] = true;
  }
  // Every finite interval end must be backed by a proof.
  for (std::size_t k = 0; k < k_count; ++k) {
    if (cert.intervals[k].upper && !has_upper[k]) return false;
    if (cert.intervals[k].lower && !has_lower[k]) return false;
  }

  if (cert.conclusion == Conclusion::kUniqueZero) {
    for (const auto& iv : cert.intervals)
      if (!iv.is_zero()) return false;
    return cert.witness.empty();
  }
  // NotUnique: the witness must be feasible and nonzero.
  if (cert.witness.size() != k_count) return false;
  if (std::all_of(cert.witness.begin(), cert.witness.end(), [](const Rational& r) { return r == 0; })) return false;
  for (const auto& c : sys.constraints)
    if (c.expr.evaluate(cert.witness) < 0) return false;
  return true;
}

/// Per-pair deformation spec from an assignment of the system's unknowns.
inline DeformationSpec spec_from_assignment(const ConstraintSystem& sys, const std::vector<Rational>& values) {
  DeformationSpec spec(sys.n, sys.mode);
  for (std::size_t k = 0; k < sys.unknowns.size(); ++k) {
    const auto& key = sys.unknowns.keys()[k];
    if (sys.mode == DeformationMode::kPerPair)
      spec.set(*key.lambda, key.mu, values.at(k));
    else
      spec.set_shared(key.mu, values.at(k));
  }
  return spec;
}

}  // namespace osg
