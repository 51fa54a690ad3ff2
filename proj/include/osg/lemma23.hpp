#pragma once

// Exhaustive checks of the tau[1,1]-power identities used by the uniqueness
// argument. Expected sides drop out-of-range indices like the Pieri rules do.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osg/ring.hpp"

namespace osg {

enum class Lemma23Part { k1, k2a, k2b, k3, k4, k5 };

inline constexpr std::array<Lemma23Part, 6> kAllLemma23Parts{Lemma23Part::k1,  Lemma23Part::k2a, Lemma23Part::k2b,
                                                             Lemma23Part::k3,  Lemma23Part::k4,  Lemma23Part::k5};

inline std::string_view to_string(Lemma23Part p) {
  switch (p) {
    case Lemma23Part::k1: return "1";
    case Lemma23Part::k2a: return "2a";
    case Lemma23Part::k2b: return "2b";
    case Lemma23Part::k3: return "3";
    case Lemma23Part::k4: return "4";
    case Lemma23Part::k5: return "5";
  }
  return "?";
}

inline Lemma23Part parse_lemma23_part(std::string_view s) {
  for (auto p : kAllLemma23Parts)
    if (to_string(p) == s) return p;
  throw std::invalid_argument("unknown identity part '" + std::string(s) + "'");
}

struct Lemma23Violation {
  std::string instance;
  ClassVector expected;
  ClassVector actual;
};

struct Lemma23Report {
  Lemma23Part part;
  bool holds = true;
  std::size_t instances_checked = 0;
  std::vector<Lemma23Violation> counterexamples;
};

namespace detail {

inline ClassVector truncated(int n, std::initializer_list<std::pair<PartitionIndex, QPolynomial>> terms) {
  ClassVector v(n);
  for (const auto& [mu, c] : terms)
    if (is_valid(n, mu)) v.add(mu, c);
  return v;
}

}  // namespace detail

inline Lemma23Report verify_lemma23(const MultiplicationTable& t, Lemma23Part part) {
  const int n = t.rank();
  Lemma23Report report{part, true, 0, {}};

  std::vector<ClassVector> powers;  // tau[1,1]^k, k = 0..n-1
  for (int k = 0; k <= n - 1; ++k) powers.push_back(tau11_power(t, k));

  auto check = [&](std::string instance, const ClassVector& expected, const ClassVector& actual) {
    ++report.instances_checked;
    if (expected != actual) {
      report.holds = false;
      report.counterexamples.push_back({std::move(instance), expected, actual});
    }
  };
  auto power_times = [&](int k, PartitionIndex lam) { return multiply(t, powers.at(k), ClassVector::basis(n, lam)); };

  switch (part) {
    case Lemma23Part::k1:
      for (int s = 1; s <= n - 2; ++s)
        check("t=" + std::to_string(s), ClassVector::basis(n, {s, s}), powers[s]);
      break;
    case Lemma23Part::k2a:
    case Lemma23Part::k2b:
      for (const auto& lam : t.basis()) {
        if (lam.degree() < 2 * n) continue;
        const int s = 2 * n - lam.first;
        const bool edge = lam.second + s == 2 * n - 2;
        if (edge != (part == Lemma23Part::k2b)) continue;
        const ClassVector expected =
            edge ? detail::truncated(n, {{{2 * n - 1, -1}, kQ}, {{2 * n - 2, 0}, kQ}})
                 : detail::truncated(n, {{{lam.second + s, 0}, kQ}});
        check(to_string(lam) + ", t=" + std::to_string(s), expected, power_times(s, lam));
      }
      break;
    case Lemma23Part::k3:
      check("t=n-1", ClassVector::basis(n, {n, n - 2}), powers[n - 1]);
      break;
    case Lemma23Part::k4:
      for (int s = 1; s <= n - 2; ++s)
        for (const auto& mu : t.basis()) {
          if (2 * s + mu.degree() > 2 * n - 3) continue;
          check(to_string(mu) + ", t=" + std::to_string(s),
                detail::truncated(n, {{{mu.first + s, mu.second + s}, 1}}), power_times(s, mu));
        }
      break;
    case Lemma23Part::k5:
      for (int s = 1; s <= n - 2; ++s)
        for (const auto& mu : t.basis()) {
          const int total = 2 * s + mu.degree();
          if (total != 2 * n - 2 && total != 2 * n - 1) continue;
          check(to_string(mu) + ", t=" + std::to_string(s),
                detail::truncated(n, {{{mu.first + s + 1, mu.second + s - 1}, 1}, {{mu.first + s, mu.second + s}, 1}}),
                power_times(s, mu));
        }
      break;
  }
  return report;
}

}  // namespace osg
