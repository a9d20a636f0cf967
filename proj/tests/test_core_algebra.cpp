#include <array>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"

using namespace workbench;

namespace {
  // Left-zero semigroup on {0,1} with an adjoined identity 2.
  FiniteSemigroup left_zero_with_one() {
    return FiniteSemigroup(3, {0, 0, 0, 1, 1, 1, 0, 1, 2});
  }

  FiniteSemigroup cyclic(std::size_t n) {
    std::vector<Element> t;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        t.push_back(static_cast<Element>((a + b) % n));
      }
    }
    return FiniteSemigroup(n, t);
  }
}  // namespace

TEST_CASE("table validation", "[core]") {
  CHECK_THROWS_AS(FiniteSemigroup(0, {}), BadParameters);
  CHECK_THROWS_AS(FiniteSemigroup(2, {0, 1, 1}), BadParameters);
  CHECK_THROWS_AS(FiniteSemigroup(2, {0, 1, 1, 2}), BadParameters);
  auto S = left_zero_with_one();
  CHECK(S.size() == 3);
  CHECK(S.product(0, 1) == 0);
  CHECK(S.identity() == Element(2));
  CHECK_FALSE(S.zero().has_value());
  CHECK_THROWS_AS(S.with_inverses({0, 1}), BadParameters);
  CHECK_THROWS_AS(S.with_inverses({0, 1, 7}), BadParameters);
}

TEST_CASE("zero and identity detection", "[core]") {
  auto B = brandt_b2().semigroup;
  REQUIRE(B.zero().has_value());
  CHECK_FALSE(B.identity().has_value());
  auto Z3 = cyclic(3);
  CHECK(Z3.identity() == Element(0));
  CHECK_FALSE(Z3.zero().has_value());
}

TEST_CASE("associativity check finds the least bad triple", "[core]") {
  CHECK(verify_associativity(left_zero_with_one()));
  CHECK(verify_associativity(cyclic(5)));
  // a*b = b - a mod 3 is not associative.
  std::vector<Element> t;
  for (Element a = 0; a < 3; ++a) {
    for (Element b = 0; b < 3; ++b) {
      t.push_back((b + 3 - a) % 3);
    }
  }
  FiniteSemigroup bad(3, t);
  CHECK_FALSE(verify_associativity(bad));
  auto triple = find_nonassociative_triple(bad);
  REQUIRE(triple.has_value());
  // Lexicographic scan in the oracle.
  std::array<Element, 3> expected{};
  bool                   found = false;
  for (Element a = 0; a < 3 && !found; ++a) {
    for (Element b = 0; b < 3 && !found; ++b) {
      for (Element c = 0; c < 3 && !found; ++c) {
        if (bad.product(bad.product(a, b), c) != bad.product(a, bad.product(b, c))) {
          expected = {a, b, c};
          found    = true;
        }
      }
    }
  }
  CHECK(*triple == expected);
}

TEST_CASE("closure agrees with the fixpoint oracle on partial maps", "[core][closure]") {
  std::vector<PartialInjection> gens{PartialInjection(4, {{0, 1}, {1, 2}}),
                                     PartialInjection(4, {{2, 3}, {3, 0}})};
  auto cs = generate_closure(std::span<PartialInjection const>(gens),
                             partial_compose,
                             [](PartialInjection const& a) { return a.key(); });
  std::vector<oracle::Map> ogens{{1, 2, -1, -1}, {-1, -1, 3, 0}};
  auto                     expected = oracle::closure(ogens);
  REQUIRE(cs.size() == expected.size());
  for (Element a = 0; a < cs.size(); ++a) {
    for (Element b = 0; b < cs.size(); ++b) {
      CHECK(cs.elements[cs.semigroup.product(a, b)]
            == partial_compose(cs.elements[a], cs.elements[b]));
    }
  }
  CHECK(cs.elements[0] == gens[0]);
  CHECK(cs.elements[1] == gens[1]);
}

TEST_CASE("closure limit", "[core][closure]") {
  std::vector<Element> gens{1};
  auto                 product = [](Element a, Element b) { return (a + b) % 100; };
  CHECK_THROWS_AS(generate_closure(std::span<Element const>(gens), product,
                                   [](Element a) { return a; }, 50),
                  LimitExceeded);
  auto cs = generate_closure(std::span<Element const>(gens), product,
                             [](Element a) { return a; });
  CHECK(cs.size() == 100);
}

TEST_CASE("from_carrier rejects open or repeated carriers", "[core]") {
  auto add3 = [](int a, int b) { return (a + b) % 3; };
  auto key  = [](int a) { return a; };
  CHECK(from_carrier(std::vector<int>{0, 1, 2}, add3, key).semigroup.size() == 3);
  CHECK_THROWS_AS(from_carrier(std::vector<int>{0, 1}, add3, key), BadParameters);
  CHECK_THROWS_AS(from_carrier(std::vector<int>{0, 0, 1, 2}, add3, key), BadParameters);
}

TEST_CASE("inverses are computed and validated", "[core][inverse]") {
  auto Z4  = cyclic(4);
  auto inv = compute_inverses(Z4);
  CHECK(inv == std::vector<Element>{0, 3, 2, 1});
  CHECK(with_computed_inverses(Z4).inverse(1) == 3);
  // The left-zero band has no unique inverses: 0 and 1 are mutually inverse
  // and each is self-inverse.
  CHECK_THROWS_AS(compute_inverses(left_zero_with_one()), NotInverse);
  CHECK_THROWS_AS(left_zero_with_one().inverse(0), MissingInverses);
}

TEST_CASE("idempotents and powers", "[core]") {
  auto B21 = brandt_monoid_b21().semigroup;
  CHECK(idempotents(B21).size() == 4);
  for (Element x = 0; x < B21.size(); ++x) {
    CHECK(power(B21, x, 2) == power(B21, x, 3));
  }
  CHECK(is_idempotent(B21, *B21.zero()));
}

TEST_CASE("subsemigroup closure", "[core]") {
  auto R2 = rook_monoid(2);
  // The two rank-one non-idempotents generate B_2.
  std::vector<Element> seed;
  for (Element a = 0; a < R2.size(); ++a) {
    auto const& m = R2.elements[a];
    if (m.rank() == 1 && m * m != m) {
      seed.push_back(a);
    }
  }
  REQUIRE(seed.size() == 2);
  auto sub = subsemigroup(R2.semigroup, std::span<Element const>(seed), false);
  CHECK(sub.semigroup.size() == 5);
  CHECK(sub.semigroup.has_inverses());
  CHECK(oracle::associative(sub.semigroup));
  for (Element a = 0; a < sub.semigroup.size(); ++a) {
    for (Element b = 0; b < sub.semigroup.size(); ++b) {
      CHECK(sub.embedding[sub.semigroup.product(a, b)]
            == R2.semigroup.product(sub.embedding[a], sub.embedding[b]));
    }
  }
}
