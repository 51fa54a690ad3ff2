#pragma once

// Index set of the Schubert basis of QH*(IG(2, 2n+1)).

#include <algorithm>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace osg {

/// A pair (first, second) labelling a Schubert class tau[first,second].
///
/// The ordering is the basis order used everywhere in the library:
/// degree-major, then larger first part first. Two indices with equal degree
/// and first part are equal, so the order is total.
struct PartitionIndex {
  int first = 0;
  int second = 0;

  constexpr int degree() const noexcept { return first + second; }

  friend constexpr bool operator==(const PartitionIndex&, const PartitionIndex&) = default;
  friend constexpr std::strong_ordering operator<=>(const PartitionIndex& a, const PartitionIndex& b) {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    return b.first <=> a.first;
  }
};

inline std::string to_string(const PartitionIndex& p) {
  return "tau[" + std::to_string(p.first) + "," + std::to_string(p.second) + "]";
}

inline std::ostream& operator<<(std::ostream& os, const PartitionIndex& p) { return os << to_string(p); }

constexpr PartitionIndex kUnitIndex{0, 0};
constexpr PartitionIndex kTau1{1, 0};
constexpr PartitionIndex kTau11{1, 1};

/// Rank n of IG(2, 2n+1). The index module accepts n >= 2; the ring needs n >= 3.
class Rank {
 public:
  static constexpr int kMinIndexRank = 2;
  static constexpr int kMinRingRank = 3;

  explicit Rank(int n) : n_(n) {
    if (n < kMinIndexRank) throw std::invalid_argument("rank n must be >= 2, got " + std::to_string(n));
  }

  constexpr int value() const noexcept { return n_; }
  /// Complex dimension 4n-3, the degree of the top class.
  constexpr int dimension() const noexcept { return 4 * n_ - 3; }
  /// deg q = 2n.
  constexpr int q_degree() const noexcept { return 2 * n_; }
  constexpr PartitionIndex top_class() const noexcept { return {2 * n_ - 1, 2 * n_ - 2}; }

  friend constexpr bool operator==(const Rank&, const Rank&) = default;

 private:
  int n_;
};

inline void require_ring_rank(int n) {
  if (n < Rank::kMinRingRank) {
    throw std::invalid_argument("ring operations require n >= 3, got " + std::to_string(n));
  }
}

/// Membership in the index set for rank n. Total on all integer pairs.
constexpr bool is_valid(int n, PartitionIndex lam) noexcept {
  const int a = lam.first;
  const int b = lam.second;
  if (!(2 * n - 1 >= a && a >= b && b >= -1)) return false;
  if (a > n - 2 && !(a > b)) return false;
  if (b == -1 && a != 2 * n - 1) return false;
  return true;
}

constexpr int degree(PartitionIndex lam) noexcept { return lam.degree(); }

/// All valid indices for rank n in basis order.
inline std::vector<PartitionIndex> enumerate_basis(int n) {
  if (n < Rank::kMinIndexRank) throw std::invalid_argument("enumerate_basis requires n >= 2");
  std::vector<PartitionIndex> out;
  // For a fixed degree d the valid first parts form a contiguous run, so walk
  // degrees upward and first parts downward to emit in basis order directly.
  for (int d = 0; d <= 4 * n - 3; ++d) {
    for (int a = 2 * n - 1; a >= -1; --a) {
      PartitionIndex p{a, d - a};
      if (is_valid(n, p)) out.push_back(p);
    }
  }
  return out;
}

inline std::vector<PartitionIndex> enumerate_degree(int n, int d) {
  if (n < Rank::kMinIndexRank) throw std::invalid_argument("enumerate_degree requires n >= 2");
  std::vector<PartitionIndex> out;
  if (d < 0 || d > 4 * n - 3) return out;
  for (int a = 2 * n - 1; a >= -1; --a) {
    PartitionIndex p{a, d - a};
    if (is_valid(n, p)) out.push_back(p);
  }
  return out;
}

/// Dense position of each basis element, for table layouts.
class BasisPositions {
 public:
  explicit BasisPositions(int n) : n_(n), basis_(enumerate_basis(n)), slots_(width() * width(), -1) {
    for (std::size_t i = 0; i < basis_.size(); ++i) slots_[slot(basis_[i])] = static_cast<int>(i);
  }

  const std::vector<PartitionIndex>& basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return basis_.size(); }

  /// -1 when lam is not in the index set.
  int position(PartitionIndex lam) const noexcept {
    if (!is_valid(n_, lam)) return -1;
    return slots_[slot(lam)];
  }

 private:
  std::size_t width() const noexcept { return static_cast<std::size_t>(2 * n_ + 1); }
  std::size_t slot(PartitionIndex p) const noexcept {
    return static_cast<std::size_t>(p.first + 1) * width() + static_cast<std::size_t>(p.second + 1);
  }

  int n_;
  std::vector<PartitionIndex> basis_;
  std::vector<int> slots_;
};

}  // namespace osg
