#pragma once

// Replays the hand proof of uniqueness step by step. Each step computes a
// product with the engine, compares it with the closed form the argument
// predicts, and records the sign facts that Condition (**) then gives.
// Iterated tau[1,1] products are taken at the tau level and converted to
// the deformed basis once, which keeps every expression affine.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "osg/certifier.hpp"

namespace osg {

enum class ReplayStepKind {
  kPowerUpper,        // |lam| = 2n, lam_1 >= n+2: tau[1,1]^t * sigma_lam
  kMiddleUpper,       // lam = (n+1, n-1): tau[1,1]^(n-1) * sigma_lam
  kMiddleLower,       // sigma[1,1] * sigma[n+j, n-2-j] = sigma_{lam^j} + a_j q
  kInductiveLower,    // |lam| > 2n: sigma[1,1] * sigma[lam - (1,1)] after the induction hypothesis
  kReorganizedUpper,  // |lam| > 2n: the reorganized product tau[1,1]^t * sigma_lam
};

inline std::string_view to_string(ReplayStepKind k) {
  switch (k) {
    case ReplayStepKind::kPowerUpper: return "power-product-upper";
    case ReplayStepKind::kMiddleUpper: return "middle-class-upper";
    case ReplayStepKind::kMiddleLower: return "pieri-lower";
    case ReplayStepKind::kInductiveLower: return "inductive-pieri-lower";
    case ReplayStepKind::kReorganizedUpper: return "reorganized-product-upper";
  }
  return "?";
}

struct ReplayStep {
  ReplayStepKind kind;
  PartitionIndex lambda;
  int t = 0;
  AffineClassVector engine;
  AffineClassVector predicted;
  std::vector<AffineExpression> deductions;  // each asserted >= 0
};

struct ReplayReport {
  int n = 0;
  UnknownRegistry unknowns;
  std::vector<ReplayStep> steps;
  std::set<UnknownId> forced_zero;
  Conclusion conclusion = Conclusion::kNotUnique;
};

class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class Replayer {
 public:
  explicit Replayer(const MultiplicationTable& t) : t_(t), n_(t.rank()), def_(t.rank(), DeformationMode::kPerPair) {
    for (int k = 0; k <= n_ - 1; ++k) powers_.push_back(tau11_power(t_, k));
  }

  ReplayReport run() {
    report_.n = n_;
    report_.unknowns = def_.unknowns();
    const int q = 2 * n_;

    for (const auto& lam : enumerate_degree(n_, q)) {
      if (lam.first >= n_ + 2) power_upper(lam);
      if (lam == PartitionIndex{n_ + 1, n_ - 1}) middle_upper(lam);
    }
    for (int j = 0; j <= n_ - 2; ++j) middle_lower(j);
    conclude();

    for (int total = q + 1; total <= 4 * n_ - 3; ++total) {
      for (const auto& lam : enumerate_degree(n_, total)) {
        inductive_lower(lam);
        reorganized_upper(lam);
      }
      conclude();
    }

    report_.conclusion = report_.forced_zero.size() == report_.unknowns.size() ? Conclusion::kUniqueZero
                                                                                : Conclusion::kNotUnique;
    return std::move(report_);
  }

 private:
  AffineExpression a(PartitionIndex lam, PartitionIndex mu) const {
    if (!is_valid(n_, mu) || mu.degree() + 2 * n_ != lam.degree()) return {};
    return AffineExpression::unknown(def_.unknown(lam, mu));
  }

  /// Adds c q sigma_nu to v, dropping indices outside the index set.
  void put(AffineClassVector& v, PartitionIndex nu, const AffineExpression& c) const {
    if (is_valid(n_, nu)) v.add({nu, 1}, c);
  }

  AffineClassVector power_times_sigma(int t, PartitionIndex lam) const {
    return def_.tau_to_sigma(multiply_symbolic(t_, powers_.at(t), def_.sigma_in_tau(lam)));
  }

  void record(ReplayStepKind kind, PartitionIndex lam, int t, AffineClassVector engine, AffineClassVector predicted) {
    if (engine != predicted) {
      throw MismatchError(std::string(to_string(kind)) + " for " + to_string(lam) + ": engine gives " +
                          to_string(engine, &def_.unknowns()) + ", predicted " + to_string(predicted, &def_.unknowns()));
    }
    ReplayStep step{kind, lam, t, std::move(engine), std::move(predicted), {}};
    for (const auto& [key, e] : step.engine.terms())
      if (!e.is_constant()) step.deductions.push_back(e);
    report_.steps.push_back(std::move(step));
  }

  void power_upper(PartitionIndex lam) {
    const int t = 2 * n_ - lam.first;
    AffineClassVector predicted(n_);
    put(predicted, {lam.second + t, 0}, 1);
    put(predicted, {t, t}, -a(lam, kUnitIndex));
    record(ReplayStepKind::kPowerUpper, lam, t, power_times_sigma(t, lam), std::move(predicted));
  }

  void middle_upper(PartitionIndex lam) {
    AffineClassVector predicted(n_);
    put(predicted, {2 * n_ - 1, -1}, 1);
    put(predicted, {2 * n_ - 2, 0}, 1);
    put(predicted, {n_, n_ - 2}, -a(lam, kUnitIndex));
    record(ReplayStepKind::kMiddleUpper, lam, n_ - 1, power_times_sigma(n_ - 1, lam), std::move(predicted));
  }

  void middle_lower(int j) {
    const PartitionIndex lam{n_ + 1 + j, n_ - 1 - j};
    AffineClassVector predicted(n_);
    predicted.add({lam, 0}, 1);
    put(predicted, kUnitIndex, a(lam, kUnitIndex));
    record(ReplayStepKind::kMiddleLower, lam, 1, symbolic_tau11_product(t_, def_, {n_ + j, n_ - 2 - j}),
           std::move(predicted));
  }

  void inductive_lower(PartitionIndex lam) {
    std::map<UnknownId, Rational> known;
    for (auto id : report_.forced_zero) known.emplace(id, 0);
    AffineClassVector predicted(n_);
    predicted.add({lam, 0}, 1);
    for (const auto& mu : correction_indices(n_, lam)) put(predicted, mu, a(lam, mu));
    record(ReplayStepKind::kInductiveLower, lam, 1,
           symbolic_tau11_product(t_, def_, {lam.first - 1, lam.second - 1}).substitute(known), std::move(predicted));
  }

  // The reorganized closed form of tau[1,1]^t * sigma_lam for |lam| > 2n:
  //   q A(lam) - sum_{2t+|mu| <= 2n-3} a_mu q sigma[mu_1+t, mu_2+t]
  //   - a_0 q sigma[2n-t, t-1] - sum_i (a_i + a_{i+1}) q sigma[2n-1-t-i, t+i] - a_{n-1-t} q sigma[n, n-1]
  //   - b_0 q sigma[2n-1-t, t-1] - sum_i (b_i + b_{i+1}) q sigma[2n-2-t-i, t+i]
  // with a_i = a_{(2n-1-2t-i, i)}, b_i = a_{(2n-2-2t-i, i)} and i running over 0..n-2-t.
  void reorganized_upper(PartitionIndex lam) {
    const int n = n_;
    const int t = 2 * n - lam.first;
    AffineClassVector predicted(n);
    if (lam.second + t == 2 * n - 2) {
      put(predicted, {2 * n - 1, -1}, 1);
      put(predicted, {2 * n - 2, 0}, 1);
    } else {
      put(predicted, {lam.second + t, 0}, 1);
    }
    for (const auto& mu : correction_indices(n, lam))
      if (2 * t + mu.degree() <= 2 * n - 3) put(predicted, {mu.first + t, mu.second + t}, -a(lam, mu));

    auto ai = [&](int i) { return a(lam, {2 * n - 1 - 2 * t - i, i}); };
    auto bi = [&](int i) { return a(lam, {2 * n - 2 - 2 * t - i, i}); };
    put(predicted, {2 * n - t, t - 1}, -ai(0));
    for (int i = 0; i <= n - 2 - t; ++i) put(predicted, {2 * n - 1 - t - i, t + i}, -(ai(i) + ai(i + 1)));
    put(predicted, {n, n - 1}, -ai(n - 1 - t));
    put(predicted, {2 * n - 1 - t, t - 1}, -bi(0));
    for (int i = 0; i <= n - 2 - t; ++i) put(predicted, {2 * n - 2 - t - i, t + i}, -(bi(i) + bi(i + 1)));

    record(ReplayStepKind::kReorganizedUpper, lam, t, power_times_sigma(t, lam), std::move(predicted));
  }

  /// a >= 0 facts plus upper facts of the form -(sum c_k a_k) >= 0 with c_k > 0
  /// force every a_k in such a sum to zero.
  void conclude() {
    std::set<UnknownId> nonnegative;
    for (const auto& step : report_.steps)
      for (const auto& e : step.deductions)
        if (e.constant() == 0 && e.linear().size() == 1 && e.linear().begin()->second > 0)
          nonnegative.insert(e.linear().begin()->first);
    for (const auto& step : report_.steps) {
      for (const auto& e : step.deductions) {
        if (e.constant() != 0) continue;
        bool usable = true;
        for (const auto& [id, c] : e.linear())
          if (!(c < 0 && nonnegative.count(id))) usable = false;
        if (!usable) continue;
        for (const auto& [id, c] : e.linear()) report_.forced_zero.insert(id);
      }
    }
  }

  const MultiplicationTable& t_;
  int n_;
  SymbolicDeformation def_;
  std::vector<ClassVector> powers_;
  ReplayReport report_;
};

}  // namespace detail

/// Throws MismatchError naming the first step whose engine product differs
/// from the predicted closed form.
inline ReplayReport replay_proof(const MultiplicationTable& t) {
  require_ring_rank(t.rank());
  return detail::Replayer(t).run();
}

}  // namespace osg
