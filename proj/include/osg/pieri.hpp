#pragma once

// Quantum Pieri rules for multiplication by tau_1 = tau[1,0] and tau[1,1].
//
// Convention: a formula term tau_mu with mu outside the index set contributes
// zero. The rules produce such terms at the boundary, e.g. tau[2,2] at n = 3.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "osg/algebra.hpp"
#include "osg/index.hpp"

namespace osg {

enum class Tau1Case : std::size_t {
  kGeneric = 0,     // tau[a+1,b] + tau[a,b+1]
  kEdge = 1,        // a+b = 2n-3: tau[a,b+1] + 2 tau[a+1,b] + tau[a+2,b-1]
  kQuantum = 2,     // a = 2n-1, 0 <= b <= 2n-3: tau[2n-1,b+1] + q tau_b
  kMinusOne = 3,    // (2n-1,-1): tau_{2n-1}
  kTop = 4,         // (2n-1,2n-2): q (tau[2n-1,-1] + tau_{2n-2})
};
inline constexpr std::size_t kTau1CaseCount = 5;

enum class Tau11Case : std::size_t {
  kGeneric = 0,     // tau[a+1,b+1]
  kEdge = 1,        // a+b in {2n-4, 2n-3}: tau[a+2,b] + tau[a+1,b+1]
  kQuantum = 2,     // a = 2n-1, b != 2n-3: q tau_{b+1}
  kNearTop = 3,     // (2n-1,2n-3): q (tau[2n-1,-1] + tau_{2n-2})
};
inline constexpr std::size_t kTau11CaseCount = 4;

inline std::string_view to_string(Tau1Case c) {
  static constexpr std::array<std::string_view, kTau1CaseCount> names{"generic", "edge", "quantum", "minus-one", "top"};
  return names[static_cast<std::size_t>(c)];
}

inline std::string_view to_string(Tau11Case c) {
  static constexpr std::array<std::string_view, kTau11CaseCount> names{"generic", "edge", "quantum", "near-top"};
  return names[static_cast<std::size_t>(c)];
}

namespace detail {

inline void check_pieri_args(int n, PartitionIndex lam) {
  require_ring_rank(n);
  if (!is_valid(n, lam)) throw std::invalid_argument("index " + to_string(lam) + " not valid for n=" + std::to_string(n));
}

/// Adds c q^d tau_mu, silently skipping indices outside the index set.
inline void add_if_valid(ClassVector& out, PartitionIndex mu, int d, int c) {
  if (is_valid(out.rank(), mu)) out.add(mu, QPolynomial::monomial(d, c));
}

}  // namespace detail

inline Tau1Case classify_tau1(int n, PartitionIndex lam) {
  detail::check_pieri_args(n, lam);
  const auto [a, b] = lam;
  if (a == 2 * n - 1) {
    if (b == -1) return Tau1Case::kMinusOne;
    if (b == 2 * n - 2) return Tau1Case::kTop;
    return Tau1Case::kQuantum;
  }
  if (a + b == 2 * n - 3) return Tau1Case::kEdge;
  return Tau1Case::kGeneric;
}

inline Tau11Case classify_tau11(int n, PartitionIndex lam) {
  detail::check_pieri_args(n, lam);
  const auto [a, b] = lam;
  if (a == 2 * n - 1) return b == 2 * n - 3 ? Tau11Case::kNearTop : Tau11Case::kQuantum;
  if (a + b == 2 * n - 4 || a + b == 2 * n - 3) return Tau11Case::kEdge;
  return Tau11Case::kGeneric;
}

/// tau_1 * tau_lam.
inline ClassVector pieri_tau1(int n, PartitionIndex lam) {
  ClassVector out(n);
  const auto [a, b] = lam;
  switch (classify_tau1(n, lam)) {
    case Tau1Case::kGeneric:
      detail::add_if_valid(out, {a + 1, b}, 0, 1);
      detail::add_if_valid(out, {a, b + 1}, 0, 1);
      break;
    case Tau1Case::kEdge:
      detail::add_if_valid(out, {a, b + 1}, 0, 1);
      detail::add_if_valid(out, {a + 1, b}, 0, 2);
      detail::add_if_valid(out, {a + 2, b - 1}, 0, 1);
      break;
    case Tau1Case::kQuantum:
      detail::add_if_valid(out, {2 * n - 1, b + 1}, 0, 1);
      detail::add_if_valid(out, {b, 0}, 1, 1);
      break;
    case Tau1Case::kMinusOne:
      detail::add_if_valid(out, {2 * n - 1, 0}, 0, 1);
      break;
    case Tau1Case::kTop:
      detail::add_if_valid(out, {2 * n - 1, -1}, 1, 1);
      detail::add_if_valid(out, {2 * n - 2, 0}, 1, 1);
      break;
  }
  return out;
}

/// tau[1,1] * tau_lam.
inline ClassVector pieri_tau11(int n, PartitionIndex lam) {
  ClassVector out(n);
  const auto [a, b] = lam;
  switch (classify_tau11(n, lam)) {
    case Tau11Case::kGeneric:
      detail::add_if_valid(out, {a + 1, b + 1}, 0, 1);
      break;
    case Tau11Case::kEdge:
      detail::add_if_valid(out, {a + 2, b}, 0, 1);
      detail::add_if_valid(out, {a + 1, b + 1}, 0, 1);
      break;
    case Tau11Case::kQuantum:
      detail::add_if_valid(out, {b + 1, 0}, 1, 1);
      break;
    case Tau11Case::kNearTop:
      detail::add_if_valid(out, {2 * n - 1, -1}, 1, 1);
      detail::add_if_valid(out, {2 * n - 2, 0}, 1, 1);
      break;
  }
  return out;
}

enum class PieriClass { kTau1, kTau11 };

inline ClassVector pieri(PieriClass which, int n, PartitionIndex lam) {
  return which == PieriClass::kTau1 ? pieri_tau1(n, lam) : pieri_tau11(n, lam);
}

/// Extends a Pieri operator Q[q]-linearly to an arbitrary class vector.
inline ClassVector apply_pieri(PieriClass which, const ClassVector& v) {
  ClassVector out(v.rank());
  for (const auto& [lam, p] : v.terms()) out += pieri(which, v.rank(), lam) * p;
  return out;
}

}  // namespace osg
