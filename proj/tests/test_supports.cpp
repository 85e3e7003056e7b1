#include <gtest/gtest.h>

#include <algorithm>

#include "beamspec/supports.hpp"

using namespace beamspec;

namespace {

bool contains(std::span<const BoundaryConstraint> cs, BoundaryConstraint c) {
  return std::ranges::find(cs, c) != cs.end();
}

constexpr BoundaryConstraint L(int order) { return {EndPoint::Left, order}; }
constexpr BoundaryConstraint R(int order) { return {EndPoint::Right, order}; }

}  // namespace

TEST(Supports, CatalogHasNineDistinctCases) {
  const auto cases = all_cases();
  ASSERT_EQ(cases.size(), 9u);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(&support_case(cases[i].name), &cases[i]);
  }
}

TEST(Supports, ConstraintTable) {
  const auto ab = constraints_of(support_case(CaseName::AB));
  for (auto c : {L(0), R(0), R(1), L(2)}) EXPECT_TRUE(contains(ab, c));
  const auto cc = constraints_of(support_case(CaseName::CC));
  for (auto c : {L(2), R(2), L(3), R(3)}) EXPECT_TRUE(contains(cc, c));
  const auto add3 = constraints_of(support_case(CaseName::Add3));
  for (auto c : {R(0), L(1), R(2), L(3)}) EXPECT_TRUE(contains(add3, c));
}

TEST(Supports, EssentialConstraints) {
  EXPECT_EQ(essential_constraints(support_case(CaseName::BB)).size(), 4u);
  EXPECT_TRUE(essential_constraints(support_case(CaseName::CC)).empty());
  const auto ab = essential_constraints(support_case(CaseName::AB));
  ASSERT_EQ(ab.size(), 3u);
  for (auto c : {L(0), R(0), R(1)}) EXPECT_TRUE(contains(ab, c));
}

// The k-th factor applied (counted from the right, starting at 0) carries
// a '+' at an end exactly when the order-k constraint sits at that end.
TEST(Supports, FactorizationMatchesConstraints) {
  for (const auto& c : all_cases()) {
    const auto cs = constraints_of(c);
    for (int k = 0; k < 4; ++k) {
      const FirstOrderOp op = c.factorization[std::size_t(3 - k)];
      EXPECT_EQ(has_left(op), contains(cs, L(k))) << to_string(c.name) << " order " << k;
      EXPECT_EQ(has_right(op), contains(cs, R(k))) << to_string(c.name) << " order " << k;
    }
  }
}

TEST(Supports, KernelDimensions) {
  for (const auto& c : all_cases()) {
    const int expected = c.name == CaseName::CC                                ? 2
                         : (c.name == CaseName::AC || c.name == CaseName::Add1) ? 1
                                                                                : 0;
    EXPECT_EQ(kernel_dimension(c), expected) << to_string(c.name);
  }
}

TEST(Supports, ParseIsCaseInsensitive) {
  EXPECT_EQ(parse_case("aa").name, CaseName::AA);
  EXPECT_EQ(parse_case("Add1").name, CaseName::Add1);
  EXPECT_EQ(parse_case("ADD3").name, CaseName::Add3);
  EXPECT_FALSE(parse_case("Bc").reflected);
  const auto ba = parse_case("BA");
  EXPECT_EQ(ba.name, CaseName::AB);
  EXPECT_TRUE(ba.reflected);
  EXPECT_THROW(parse_case("ad"), std::invalid_argument);
  EXPECT_THROW(parse_case(""), std::invalid_argument);
  EXPECT_THROW(parse_case("add4"), std::invalid_argument);
}

TEST(Supports, NamesRoundTrip) {
  for (const char* name : {"AA", "AB", "AC", "BB", "BC", "CC", "Add1", "Add2", "Add3", "BA", "CA",
                           "CB"}) {
    EXPECT_EQ(to_string(parse_case(name)), name);
  }
}

TEST(Supports, MirrorReflectsConstraints) {
  EXPECT_EQ(mirror("cb"), (ResolvedCase{CaseName::BC, true}));
  EXPECT_THROW(mirror("ab"), std::invalid_argument);
  const auto ba = physical_constraints(mirror("ba"));
  ASSERT_EQ(ba.size(), 4u);
  for (auto c : {R(0), L(0), L(1), R(2)}) EXPECT_TRUE(contains(ba, c));
  EXPECT_EQ(reflect(L(3)), R(3));
}
