#include <gtest/gtest.h>

#include <array>
#include <random>

#include "osg/lemma23.hpp"
#include "osg/ring.hpp"

using osg::ClassVector;
using osg::kQ;
using osg::MultiplicationTable;
using osg::OperatorMonomial;
using osg::PartitionIndex;

namespace {

const MultiplicationTable& table(int n) {
  static std::map<int, MultiplicationTable> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, osg::build_table(n)).first;
  return it->second;
}

ClassVector tau(int n, int a, int b, const osg::QPolynomial& c = 1) { return ClassVector::basis(n, {a, b}, c); }

}  // namespace

TEST(Table, ShapeAndHomogeneity) {
  const auto& t = table(3);
  EXPECT_EQ(t.stored_products(), 18u * 19u / 2u);
  for (auto lam : t.basis())
    for (auto mu : t.basis()) EXPECT_TRUE(t.product(lam, mu).is_homogeneous(lam.degree() + mu.degree()));
  EXPECT_NO_THROW(osg::check_structural_invariants(t));
}

TEST(Table, RejectsSmallRank) { EXPECT_THROW(osg::build_table(2), std::invalid_argument); }

TEST(Table, GeneratorExpressions) {
  const auto& g3 = table(3).generator_expressions();
  const auto& e31 = g3.at({3, 1});
  ASSERT_TRUE(e31.count(OperatorMonomial{0, 2}));
  EXPECT_EQ(e31.at(OperatorMonomial{0, 2}), osg::QPolynomial(1));
  for (int n = 3; n <= 6; ++n) {
    const auto& g = table(n).generator_expressions();
    for (int s = 0; s <= n - 2; ++s) {
      osg::GeneratorExpression expected{{OperatorMonomial{0, s}, osg::QPolynomial(1)}};
      EXPECT_EQ(g.at({s, s}), expected) << "n=" << n << " t=" << s;
    }
  }
}

TEST(Multiply, Examples) {
  const auto& t = table(3);
  for (auto lam : t.basis()) EXPECT_EQ(osg::multiply(t, tau(3, 0, 0), ClassVector::basis(3, lam)), ClassVector::basis(3, lam));
  EXPECT_EQ(osg::multiply(t, tau(3, 1, 1), tau(3, 5, 2)), tau(3, 3, 0, kQ));
  // tau[3,1] = tau[1,1]^2, so tau[3,1]^2 = tau[1,1]^4: four Pieri steps.
  ClassVector oracle = tau(3, 0, 0);
  for (int i = 0; i < 4; ++i) oracle = osg::apply_pieri(osg::PieriClass::kTau11, oracle);
  EXPECT_EQ(oracle, tau(3, 5, 3));
  EXPECT_EQ(osg::multiply(t, tau(3, 3, 1), tau(3, 3, 1)), oracle);
  EXPECT_THROW(osg::multiply(t, tau(4, 0, 0), tau(3, 0, 0)), osg::RankMismatch);
}

TEST(Multiply, Bilinear) {
  const auto& t = table(3);
  ClassVector x = tau(3, 1, 0, kQ + 2) + tau(3, 2, 0, -1);
  ClassVector y = tau(3, 4, 0) + tau(3, 1, 1, 3);
  ClassVector expected(3);
  for (const auto& [a, p] : x.terms())
    for (const auto& [b, r] : y.terms()) expected += t.product(a, b) * (p * r);
  EXPECT_EQ(osg::multiply(t, x, y), expected);
}

TEST(GwConstant, Examples) {
  const auto& t = table(3);
  EXPECT_EQ(osg::gw_constant(t, {1, 1}, {5, 2}, {3, 0}, 1), 1);
  EXPECT_EQ(osg::gw_constant(t, {1, 0}, {1, 0}, {2, 0}, 0), 1);
  EXPECT_EQ(osg::gw_constant(t, {1, 1}, {5, 2}, {3, 0}, 0), 0);
  EXPECT_THROW(osg::gw_constant(t, {2, 2}, {1, 0}, {3, 0}, 0), std::invalid_argument);
  EXPECT_THROW(osg::gw_constant(t, {1, 0}, {1, 0}, {3, 0}, -1), std::invalid_argument);
}

TEST(Pairing, Examples) {
  const auto& t = table(3);
  EXPECT_EQ(osg::poincare_pairing(t, {0, 0}, {5, 4}), 1);
  EXPECT_EQ(osg::poincare_pairing(t, {1, 0}, {5, 4}), 0);
  // tau_1 * tau[5,3] = tau[5,4] + q tau_3 (third Pieri case), classical top coefficient 1.
  EXPECT_EQ(osg::poincare_pairing(t, {1, 0}, {5, 3}), 1);
  for (int n = 3; n <= 5; ++n) EXPECT_TRUE(osg::pairing_nondegenerate(table(n))) << n;
}

TEST(Ring, PieriConsistency) {
  for (int n = 3; n <= 6; ++n) {
    const auto& t = table(n);
    for (auto lam : t.basis()) {
      EXPECT_EQ(t.product(osg::kTau1, lam), osg::pieri_tau1(n, lam)) << n << " " << lam;
      EXPECT_EQ(t.product(osg::kTau11, lam), osg::pieri_tau11(n, lam)) << n << " " << lam;
    }
  }
}

TEST(Ring, CommutativityFromGenerators) {
  for (int n = 3; n <= 4; ++n) {
    const auto& t = table(n);
    for (auto lam : t.basis())
      for (auto mu : t.basis()) EXPECT_EQ(t.product_via_generators(lam, mu), t.product_via_generators(mu, lam));
  }
}

TEST(Ring, AssociativityExhaustiveRankThree) {
  const auto& t = table(3);
  for (auto a : t.basis())
    for (auto b : t.basis())
      for (auto c : t.basis()) {
        const auto left = osg::multiply(t, t.product(a, b), ClassVector::basis(3, c));
        const auto right = osg::multiply(t, ClassVector::basis(3, a), t.product(b, c));
        ASSERT_EQ(left, right) << a << b << c;
      }
}

TEST(Ring, QExponentBound) {
  for (int n = 3; n <= 6; ++n)
    for (const auto& v : table(n).upper_products()) EXPECT_LE(v.max_q_exponent(), 3);
}

TEST(Negativity, WitnessesExist) {
  for (int n = 3; n <= 5; ++n) {
    osg::NegativeWitness w;
    ASSERT_TRUE(osg::has_negative_constant(table(n), &w)) << n;
    EXPECT_LT(w.value, 0);
    EXPECT_EQ(osg::gw_constant(table(n), w.lambda, w.mu, w.nu, w.d), w.value);
  }
  // tau[5,-1]^2 at n=3 has a -q tau_2 term.
  EXPECT_EQ(osg::gw_constant(table(3), {5, -1}, {5, -1}, {2, 0}, 1), -1);
}

TEST(Negativity, PieriFactorsAreNonnegative) {
  const std::array<PartitionIndex, 2> factors{osg::kTau1, osg::kTau11};
  for (int n = 3; n <= 5; ++n) EXPECT_FALSE(osg::find_negative_constant(table(n), factors).has_value());
}

TEST(Lemma23, AllPartsHold) {
  for (int n = 3; n <= 5; ++n)
    for (auto part : osg::kAllLemma23Parts) {
      auto r = osg::verify_lemma23(table(n), part);
      EXPECT_TRUE(r.holds) << "n=" << n << " part " << osg::to_string(part)
                           << (r.counterexamples.empty() ? "" : " " + r.counterexamples.front().instance);
      EXPECT_GT(r.instances_checked, 0u);
    }
}

TEST(Lemma23, Examples) {
  const auto& t = table(3);
  EXPECT_TRUE(osg::verify_lemma23(t, osg::Lemma23Part::k3).holds);
  EXPECT_EQ(osg::multiply(t, tau(3, 1, 1), tau(3, 5, 3)), tau(3, 5, -1, kQ) + tau(3, 4, 0, kQ));
  EXPECT_TRUE(osg::verify_lemma23(t, osg::Lemma23Part::k2b).holds);
  EXPECT_TRUE(osg::verify_lemma23(table(4), osg::Lemma23Part::k5).holds);
  EXPECT_EQ(osg::parse_lemma23_part("2a"), osg::Lemma23Part::k2a);
  EXPECT_THROW(osg::parse_lemma23_part("7"), std::invalid_argument);
}
