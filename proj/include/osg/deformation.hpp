#pragma once

// Candidate quantum deformations sigma of the Schubert basis:
//   tau_lam = sigma_lam + sum_{|mu| + 2n = |lam|} a_{lam,mu} q sigma_mu.
// Degree reasons leave only the single-q term, and sigma_mu = tau_mu for
// every mu that can appear on the right.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "osg/algebra.hpp"
#include "osg/ring.hpp"

namespace osg {

enum class DeformationMode {
  kPerPair,  // a_{lam,mu}
  kPerMu,    // a_mu shared by every lam of the matching degree
};

inline std::string_view to_string(DeformationMode m) { return m == DeformationMode::kPerPair ? "per-pair" : "per-mu"; }

inline DeformationMode parse_deformation_mode(std::string_view s) {
  if (s == "per-pair") return DeformationMode::kPerPair;
  if (s == "per-mu") return DeformationMode::kPerMu;
  throw std::invalid_argument("unknown deformation mode '" + std::string(s) + "'");
}

class MalformedDeformation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Classes mu with |mu| + 2n = |lam|, i.e. the possible correction terms of sigma_lam.
inline std::vector<PartitionIndex> correction_indices(int n, PartitionIndex lam) {
  return enumerate_degree(n, lam.degree() - 2 * n);
}

class DeformationSpec {
 public:
  DeformationSpec(int n, DeformationMode mode) : n_(n), mode_(mode) { require_ring_rank(n); }

  int rank() const noexcept { return n_; }
  DeformationMode mode() const noexcept { return mode_; }

  /// Sets the coefficient of q^q_power sigma_mu in tau_lam. Per-pair mode only.
  void set(PartitionIndex lam, PartitionIndex mu, const Rational& a, int q_power = 1) {
    if (mode_ != DeformationMode::kPerPair) throw MalformedDeformation("per-mu spec takes set_shared(mu, a)");
    check_indices(lam, mu, q_power);
    assign(pair_coefficients_, std::make_pair(lam, mu), a);
  }

  /// Sets the shared coefficient a_mu. Per-mu mode only.
  void set_shared(PartitionIndex mu, const Rational& a, int q_power = 1) {
    if (mode_ != DeformationMode::kPerMu) throw MalformedDeformation("per-pair spec takes set(lam, mu, a)");
    if (!is_valid(n_, mu)) throw MalformedDeformation("index " + to_string(mu) + " not valid");
    if (q_power != 1) throw MalformedDeformation("only single-q corrections exist (q^" + std::to_string(q_power) + " given)");
    if (enumerate_degree(n_, mu.degree() + 2 * n_).empty())
      throw MalformedDeformation("no class of degree |mu| + 2n for mu = " + to_string(mu));
    assign(shared_coefficients_, mu, a);
  }

  /// a_{lam,mu}, zero when unset.
  Rational coefficient(PartitionIndex lam, PartitionIndex mu) const {
    if (mode_ == DeformationMode::kPerMu) {
      if (lam.degree() != mu.degree() + 2 * n_) return 0;
      auto it = shared_coefficients_.find(mu);
      return it == shared_coefficients_.end() ? Rational(0) : it->second;
    }
    auto it = pair_coefficients_.find({lam, mu});
    return it == pair_coefficients_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const noexcept { return pair_coefficients_.empty() && shared_coefficients_.empty(); }

  const std::map<std::pair<PartitionIndex, PartitionIndex>, Rational>& pair_coefficients() const noexcept {
    return pair_coefficients_;
  }
  const std::map<PartitionIndex, Rational>& shared_coefficients() const noexcept { return shared_coefficients_; }

  /// The equivalent per-pair spec.
  DeformationSpec as_per_pair() const {
    if (mode_ == DeformationMode::kPerPair) return *this;
    DeformationSpec out(n_, DeformationMode::kPerPair);
    for (const auto& lam : enumerate_basis(n_))
      for (const auto& mu : correction_indices(n_, lam)) out.set(lam, mu, coefficient(lam, mu));
    return out;
  }

  friend bool operator==(const DeformationSpec&, const DeformationSpec&) = default;

 private:
  void check_indices(PartitionIndex lam, PartitionIndex mu, int q_power) const {
    if (!is_valid(n_, lam)) throw MalformedDeformation("index " + to_string(lam) + " not valid");
    if (!is_valid(n_, mu)) throw MalformedDeformation("index " + to_string(mu) + " not valid");
    if (q_power != 1) throw MalformedDeformation("only single-q corrections exist (q^" + std::to_string(q_power) + " given)");
    if (mu.degree() + 2 * n_ != lam.degree())
      throw MalformedDeformation("degree mismatch: |" + to_string(mu) + "| + 2n != |" + to_string(lam) + "|");
  }

  template <class Map, class Key>
  static void assign(Map& m, const Key& k, const Rational& a) {
    if (a == 0)
      m.erase(k);
    else
      m[k] = a;
  }

  int n_;
  DeformationMode mode_;
  std::map<std::pair<PartitionIndex, PartitionIndex>, Rational> pair_coefficients_;
  std::map<PartitionIndex, Rational> shared_coefficients_;
};

/// sigma_lam in the tau basis, one entry per basis element in basis order.
inline std::map<PartitionIndex, ClassVector> sigma_from_tau(const DeformationSpec& spec) {
  const int n = spec.rank();
  std::map<PartitionIndex, ClassVector> out;
  for (const auto& lam : enumerate_basis(n)) {
    ClassVector v = ClassVector::basis(n, lam);
    for (const auto& mu : correction_indices(n, lam)) v.add(mu, QPolynomial::monomial(1, -spec.coefficient(lam, mu)));
    out.emplace(lam, std::move(v));
  }
  return out;
}

/// Rewrites a tau-basis vector in the sigma basis.
inline ClassVector tau_to_sigma(const DeformationSpec& spec, const ClassVector& v) {
  if (v.rank() != spec.rank()) throw RankMismatch(spec.rank(), v.rank());
  ClassVector out(v.rank());
  for (const auto& [nu, p] : v.terms()) {
    out.add(nu, p);
    for (const auto& kappa : correction_indices(v.rank(), nu)) out.add(kappa, p.shifted(1) * spec.coefficient(nu, kappa));
  }
  return out;
}

/// Rewrites a sigma-basis vector in the tau basis.
inline ClassVector sigma_to_tau(const DeformationSpec& spec, const ClassVector& v) {
  if (v.rank() != spec.rank()) throw RankMismatch(spec.rank(), v.rank());
  ClassVector out(v.rank());
  for (const auto& [nu, p] : v.terms()) {
    out.add(nu, p);
    for (const auto& kappa : correction_indices(v.rank(), nu))
      out.add(kappa, p.shifted(1) * Rational(-spec.coefficient(nu, kappa)));
  }
  return out;
}

/// sigma_mu1 * sigma_mu2 expanded in the sigma basis.
inline ClassVector deformed_product(const MultiplicationTable& t, const DeformationSpec& spec, PartitionIndex mu1,
                                    PartitionIndex mu2) {
  if (t.rank() != spec.rank()) throw RankMismatch(t.rank(), spec.rank());
  const ClassVector s1 = sigma_to_tau(spec, ClassVector::basis(spec.rank(), mu1));
  const ClassVector s2 = sigma_to_tau(spec, ClassVector::basis(spec.rank(), mu2));
  return tau_to_sigma(spec, multiply(t, s1, s2));
}

struct StarViolation {
  PartitionIndex mu;
  PartitionIndex nu;
  int d = 0;
  Rational value;
};

struct StarReport {
  bool passes = true;
  std::vector<StarViolation> violations;
};

/// Checks that every coefficient of sigma[1,1] * sigma_mu in the sigma basis is
/// a polynomial in q with nonnegative coefficients, for every basis mu.
inline StarReport check_condition_star(const MultiplicationTable& t, const DeformationSpec& spec) {
  StarReport report;
  for (const auto& mu : t.basis()) {
    const ClassVector prod = deformed_product(t, spec, kTau11, mu);
    for (const auto& [nu, p] : prod.terms())
      for (const auto& [d, c] : p.terms())
        if (c < 0) report.violations.push_back({mu, nu, d, c});
  }
  report.passes = report.violations.empty();
  return report;
}

}  // namespace osg
