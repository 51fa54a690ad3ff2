#include <gtest/gtest.h>

#include <random>

#include "osg/expression.hpp"
#include "table_cache.hpp"

using osg::ExprNode;
using osg::ParseError;
using osg::PartitionIndex;
using testing_support::table;

TEST(Parse, TwoTerms) {
  const ExprNode e = osg::parse_expression("tau[5,-1]*tau[2,1] + 2*q*tau[1,0]");
  ASSERT_EQ(e.kind, ExprNode::Kind::kSum);
  ASSERT_EQ(e.children.size(), 2u);
  EXPECT_EQ(e.children[0].kind, ExprNode::Kind::kProduct);
  EXPECT_EQ(e.children[0].children[0].tau, (PartitionIndex{5, -1}));
  EXPECT_EQ(e.children[1].children.size(), 3u);
}

TEST(Parse, ExponentOnTauRejected) {
  try {
    osg::parse_expression("tau[1,1]^2");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.offset(), 8u);
    EXPECT_TRUE(err.expected().count("'*'"));
    EXPECT_TRUE(err.expected().count("end of input"));
  }
}

TEST(Parse, ErrorOffsets) {
  auto offset_of = [](const std::string& s) -> long {
    try {
      osg::parse_expression(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  EXPECT_EQ(offset_of(""), 0);
  EXPECT_EQ(offset_of("-tau[1,0]"), 0);
  EXPECT_EQ(offset_of("tau[1 0]"), 6);
  EXPECT_EQ(offset_of("(tau[1,0]"), 9);
  EXPECT_EQ(offset_of("q^-1"), 2);
  EXPECT_EQ(offset_of("tau[1,0] +"), 10);
  EXPECT_EQ(offset_of("taux"), 0);
  EXPECT_EQ(offset_of("tau[99999999999,0]"), 4);
  EXPECT_EQ(offset_of("2 3"), 2);
}

TEST(Parse, WhitespaceInsignificant) {
  EXPECT_EQ(osg::parse_expression(" tau [ 1 , 0 ] * q ^ 2 "), osg::parse_expression("tau[1,0]*q^2"));
}

TEST(Parse, IndicesNotValidatedAtParseTime) {
  const ExprNode e = osg::parse_expression("tau[40,40]");
  EXPECT_THROW(osg::evaluate_expression(table(3), e), std::invalid_argument);
}

namespace {

ExprNode random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 2);
  ExprNode e;
  switch (pick(rng)) {
    case 0:
      e.kind = ExprNode::Kind::kInt;
      e.value = std::uniform_int_distribution<int>(0, 30)(rng);
      break;
    case 1:
      e.kind = ExprNode::Kind::kQ;
      e.q_power = std::uniform_int_distribution<int>(0, 3)(rng);
      break;
    case 2:
      e.kind = ExprNode::Kind::kTau;
      e.tau = {std::uniform_int_distribution<int>(-1, 9)(rng), std::uniform_int_distribution<int>(-1, 9)(rng)};
      break;
    default: {
      e.kind = pick(rng) % 2 ? ExprNode::Kind::kSum : ExprNode::Kind::kProduct;
      const int k = std::uniform_int_distribution<int>(2, 4)(rng);
      for (int i = 0; i < k; ++i) {
        ExprNode c = random_expr(rng, depth - 1);
        // A bare sum directly inside a sum would print without parentheses
        // only if the parser flattened it; it does not, so keep any shape.
        e.children.push_back(std::move(c));
        if (e.kind == ExprNode::Kind::kSum) e.negated.push_back(i > 0 && rng() % 2);
      }
      if (e.kind == ExprNode::Kind::kSum) e.negated[0] = false;
    }
  }
  return e;
}

}  // namespace

TEST(Print, RoundTripsGeneratedTrees) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const ExprNode e = random_expr(rng, 3);
    const std::string s = osg::print_expression(e);
    ASSERT_EQ(osg::parse_expression(s), e) << s;
  }
}

TEST(Evaluate, UnitLaw) {
  const auto v = osg::evaluate_expression(table(3), osg::parse_expression("tau[0,0]*tau[4,3]"));
  EXPECT_EQ(osg::to_string(v), "tau[4,3]");
}

TEST(Evaluate, MatchesTable) {
  const auto& t = table(3);
  const auto v = osg::evaluate_expression(t, osg::parse_expression("tau[1,1]*tau[5,2] - q*tau[3,0] + 2*(tau[1,0] - tau[1,0])"));
  EXPECT_EQ(v, t.product({1, 1}, {5, 2}) - osg::ClassVector::basis(3, {3, 0}, osg::kQ));
}

TEST(Evaluate, ZeroAndScalars) {
  const auto& t = table(3);
  EXPECT_TRUE(osg::evaluate_expression(t, osg::parse_expression("0*tau[1,0]")).is_zero());
  EXPECT_TRUE(osg::evaluate_expression(t, osg::parse_expression("tau[1,0] - tau[1,0]")).is_zero());
  EXPECT_EQ(osg::evaluate_expression(t, osg::parse_expression("q^2*3")),
            osg::ClassVector::basis(3, {0, 0}, osg::QPolynomial::monomial(2, 3)));
}
