#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"
#include "workbench/order_semiring.hpp"

using namespace workbench;

namespace {
  void check_order_against_oracle(FiniteSemigroup const& S) {
    auto order = natural_order(S);
    auto inf   = inf_table(order);
    for (Element a = 0; a < S.size(); ++a) {
      for (Element b = 0; b < S.size(); ++b) {
        CHECK(order.le(a, b) == oracle::natural_le(S, a, b));
        auto expected = oracle::infimum(S, a, b);
        REQUIRE(expected.has_value());
        CHECK(inf[a * S.size() + b] == *expected);
      }
    }
  }
}  // namespace

TEST_CASE("natural order and infimum agree with the definition", "[order]") {
  check_order_against_oracle(brandt_monoid_b21().semigroup);
  check_order_against_oracle(brandt_b2().semigroup);
  check_order_against_oracle(rook_monoid(2).semigroup);
  check_order_against_oracle(rook_monoid(3).semigroup);
  check_order_against_oracle(sigma7().reduct.semigroup);
}

TEST_CASE("natural order needs inverses", "[order]") {
  FiniteSemigroup band(2, {0, 0, 1, 1});
  CHECK_THROWS_AS(natural_order(band), MissingInverses);
}

TEST_CASE("aperiodicity index", "[order]") {
  CHECK(aperiodicity_index(brandt_monoid_b21().semigroup) == std::size_t(2));
  CHECK(aperiodicity_index(rook_monoid(1).semigroup) == std::size_t(1));
  CHECK_FALSE(aperiodicity_index(rook_monoid(2).semigroup).has_value());
  CHECK_FALSE(aperiodicity_index(abelian_group(AbelianGroupSpec{{3}})).has_value());
}

TEST_CASE("+_nat formula on the Brandt monoid", "[order][nat]") {
  auto S = brandt_monoid_b21().semigroup;
  auto inf = inf_table(natural_order(S));
  auto formula = nat_sum_formula_table(S, 2);
  CHECK(formula == inf);
  for (Element x = 0; x < S.size(); ++x) {
    CHECK(nat_sum_formula(S, 2, x, x) == x);
  }
  CHECK_THROWS_AS(nat_sum_formula_table(S, 1), IndexInvalid);
  CHECK_THROWS_AS(nat_sum_formula(S, 0, 0, 0), IndexInvalid);
}

TEST_CASE("+_nat formula on sigma7", "[order][nat]") {
  auto const& S = sigma7().reduct.semigroup;
  auto        p = aperiodicity_index(S);
  REQUIRE(p.has_value());
  CHECK(nat_sum_formula_table(S, *p) == inf_table(natural_order(S)));
}

TEST_CASE("semiring axiom validation", "[semiring]") {
  auto A = make_nat_semiring(rook_monoid(1).semigroup);
  CHECK(validate_ai_semiring(A).all_passed());
  CHECK(A.multiplicative_reduct().table() == rook_monoid(1).semigroup.table());

  // + = min, . = addition mod 2
  AiSemiring broken(2, {0, 0, 0, 1}, {0, 1, 1, 0});
  auto       report = validate_ai_semiring(broken);
  CHECK_FALSE(report.all_passed());
  CHECK(report["add-commutative"].passed);
  CHECK(report["add-idempotent"].passed);
  CHECK_FALSE(report["left-distributive"].passed);
  CHECK(report["left-distributive"].witness == std::vector<Element>{1, 0, 1});
  CHECK_THROWS_AS(report["no-such-axiom"], BadParameters);

  AiSemiring not_idem(2, {1, 1, 1, 1}, {0, 0, 0, 0});
  CHECK_FALSE(validate_ai_semiring(not_idem)["add-idempotent"].passed);
}
