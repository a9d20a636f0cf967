#include <random>
#include <set>
#include <string>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "workbench/checker.hpp"
#include "workbench/families.hpp"
#include "workbench/image_set.hpp"
#include "workbench/parallel.hpp"
#include "workbench/term_parser.hpp"
#include "workbench/transfer.hpp"

using namespace workbench;

namespace {
  IdentityReport check(FiniteSemigroup const& S,
                       std::string const&     lhs,
                       std::string const&     rhs,
                       CheckOptions           opts = {}) {
    return check_identity(S, parse_term(lhs), parse_term(rhs), opts);
  }

  CheckOptions sampled(std::uint64_t seed, std::uint64_t trials) {
    CheckOptions o;
    o.mode   = Mode::sampled;
    o.seed   = seed;
    o.trials = trials;
    return o;
  }

  Word parse_word(std::string const& text) {
    return std::get<Word>(parse_term(text));
  }

  std::set<Element> as_set(std::vector<Element> const& v) {
    return {v.begin(), v.end()};
  }
}  // namespace

TEST_CASE("x^2 = x^3 on the Brandt monoid", "[checker]") {
  auto r = check(brandt_monoid_b21().semigroup, "x x", "x x x");
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.substitutions_checked == 6);
  CHECK_FALSE(r.counterexample);
  CHECK(machine_line(r) == "VERDICT holds CHECKED 6 CEX none");
}

TEST_CASE("least counterexample matches the brute-force oracle", "[checker]") {
  auto const S = brandt_semigroup(AbelianGroupSpec{{3}}, 2).semigroup;
  Word const v = build_v(2, 1, 1);
  Word const v2 = concat(v, v);
  auto const expected = oracle::check(S, v, v2);
  REQUIRE_FALSE(expected.holds);
  CHECK(expected.violations == 216);
  for (std::size_t workers : {1, 2, 3, 8}) {
    CheckOptions opts;
    opts.workers = workers;
    auto r = check_identity(S, v, v2, opts);
    REQUIRE(r.verdict == Verdict::fails);
    CHECK(r.counterexample->as_map() == *expected.first_counterexample);
    CHECK(r.counterexample->lhs == evaluate(v, S, r.counterexample->as_map()));
    CHECK(r.counterexample->rhs == evaluate(v2, S, r.counterexample->as_map()));
    CHECK(r.counterexample->lhs != r.counterexample->rhs);
  }
}

TEST_CASE("v_{2,1}^(1) on B_{Z2,2} holds, per the oracle", "[checker]") {
  auto const S  = brandt_semigroup(AbelianGroupSpec{{2}}, 2).semigroup;
  Word const v  = build_v(2, 1, 1);
  auto const bf = oracle::check(S, v, concat(v, v));
  CHECK(bf.holds);
  auto r = check_identity(S, v, concat(v, v), {});
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.substitutions_checked == 9 * 9 * 9 * 9);
  CHECK(check_idempotent_image(S, build_v_composed(2, 1, 1)).verdict == Verdict::holds);
}

TEST_CASE("budget and flavor errors", "[checker]") {
  auto const& R3 = rook_monoid(3).semigroup;
  CheckOptions small;
  small.budget = 1000;
  CHECK_THROWS_AS(check(R3, "x y", "y x", small), BudgetExceeded);
  try {
    (void) check(R3, "x y", "y x", small);
  } catch (BudgetExceeded const& e) {
    CHECK(e.count == 34 * 34);
  }
  CHECK_THROWS_AS(check(R3, "x + y", "y", {}), FlavorMismatch);
  CheckOptions no_seed;
  no_seed.mode = Mode::sampled;
  CHECK_THROWS_AS(check(R3, "x y", "y x", no_seed), BadParameters);
}

TEST_CASE("unary identities need inverses", "[checker]") {
  FiniteSemigroup band(2, {0, 0, 1, 1});
  CHECK_THROWS_AS(check(band, "x x^-1 x", "x"), MissingInverses);
  CHECK(check(rook_monoid(2).semigroup, "x x^-1 x", "x").verdict == Verdict::holds);
  // A word paired with a unary term is read as a unary identity.
  CHECK(check(rook_monoid(2).semigroup, "x", "x x^-1 x").verdict == Verdict::holds);
}

TEST_CASE("sampled mode is reproducible", "[checker][sampled]") {
  auto const& R3 = rook_monoid(3).semigroup;
  auto a = check(R3, "x y", "y x", sampled(7, 5000));
  auto b = check(R3, "x y", "y x", sampled(7, 5000));
  REQUIRE(a.verdict == Verdict::fails);
  CHECK(machine_line(a) == machine_line(b));
  auto h = check(R3, "x x^-1 x", "x", sampled(1, 20000));
  CHECK(h.verdict == Verdict::holds_sampled);
  CHECK(h.substitutions_checked == 20000);
  set_worker_count(3);
  auto c = check(R3, "x y", "y x", sampled(7, 5000));
  set_worker_count(0);
  CHECK(machine_line(a) == machine_line(c));
}

TEST_CASE("witness mode", "[checker][witness]") {
  auto const& S = brandt_monoid_b21().semigroup;
  CheckOptions opts;
  opts.mode    = Mode::witness;
  opts.witness = {{VariableId::named("x"), 1}, {VariableId::named("y"), 2}};
  auto r = check(S, "x y", "y x", opts);
  CHECK(r.verdict == Verdict::fails);
  CHECK(r.substitutions_checked == 1);
  opts.witness = {{VariableId::named("x"), 5}, {VariableId::named("y"), 2}};
  CHECK(check(S, "x y", "y x", opts).verdict == Verdict::holds_sampled);
  opts.witness = {{VariableId::named("x"), 5}};
  CHECK_THROWS_AS(check(S, "x y", "y x", opts), UnboundVariable);
}

TEST_CASE("semiring identities on sigma7", "[checker][semiring]") {
  auto s   = sigma7();
  Term lhs = parse_term("(x*y+y*x)^2");
  Term rhs = parse_term("x^2+y^2");
  auto nat = check_identity(s.natural, lhs, rhs, {});
  CHECK(nat.verdict == Verdict::holds);
  CHECK(nat.substitutions_checked == 49);
  auto boolean = check_identity(s.boolean, lhs, rhs, {});
  REQUIRE(boolean.verdict == Verdict::fails);
  auto tau = boolean.counterexample->as_map();
  CHECK(evaluate(std::get<SemiringTerm>(lhs), s.boolean, tau)
        != evaluate(std::get<SemiringTerm>(rhs), s.boolean, tau));
}

TEST_CASE("xy = x + y on the two-element semilattice", "[checker][semiring]") {
  auto A = make_nat_semiring(rook_monoid(1).semigroup);
  auto r = check_identity(A, parse_term("x*y"), parse_term("x+y"), {});
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.substitutions_checked == 4);
}

TEST_CASE("image set of a two-slot word over B_2", "[checker][image]") {
  // outer s1 s2 s1, inner bodies over disjoint pairs of variables
  auto const& B2 = brandt_b2().semigroup;
  ComposedWord cw;
  cw.outer = parse_word("s1 s2 s1");
  cw.slots.push_back({VariableId::named("s1"), std::make_shared<ComposedWord const>(
                                                   ComposedWord::leaf(parse_word("a b a")))});
  cw.slots.push_back({VariableId::named("s2"), std::make_shared<ComposedWord const>(
                                                   ComposedWord::leaf(parse_word("c d")))});
  auto image = image_set(B2, cw);
  // 5^4 = 625 substitutions of the flat word
  CHECK(as_set(image.values()) == oracle::image(B2, flatten(cw)));
  for (Element e : image.values()) {
    CHECK(evaluate(flatten(cw), B2, image.witness(e)) == e);
  }
}

TEST_CASE("image set of a single slot is the inner image", "[checker][image]") {
  auto const& R2 = rook_monoid(2).semigroup;
  ComposedWord cw;
  cw.outer = parse_word("s");
  Word inner = build_v(1, 2, 1);
  cw.slots.push_back(
      {VariableId::named("s"), std::make_shared<ComposedWord const>(ComposedWord::leaf(inner))});
  CHECK(as_set(image_set(R2, cw).values()) == oracle::image(R2, inner));
}

TEST_CASE("image sets agree with brute force on random composed words", "[checker][image]") {
  std::mt19937_64 rng(20240601);
  std::vector<FiniteSemigroup> algebras{brandt_b2().semigroup,
                                        brandt_monoid_b21().semigroup,
                                        rook_monoid(2).semigroup,
                                        brandt_semigroup(AbelianGroupSpec{{2}}, 2).semigroup};
  for (int trial = 0; trial < 24; ++trial) {
    auto const&  S  = algebras[static_cast<std::size_t>(trial) % algebras.size()];
    ComposedWord cw = oracle::random_composed(rng);
    Word         flat = flatten(cw);
    INFO("word " << to_string(flat));
    CHECK(as_set(image_set(S, cw).values()) == oracle::image(S, flat));
  }
}

TEST_CASE("idempotent image check", "[checker][image]") {
  CHECK(check_idempotent_image(rook_monoid(2).semigroup, build_v_composed(2, 2, 2)).verdict
        == Verdict::holds);
  auto S = brandt_semigroup(AbelianGroupSpec{{3}}, 2).semigroup;
  auto r = check_idempotent_image(S, build_v_composed(2, 1, 1));
  REQUIRE(r.verdict == Verdict::fails);
  Word v = build_v(2, 1, 1);
  auto tau = r.counterexample->as_map();
  CHECK(evaluate(v, S, tau) == r.counterexample->lhs);
  CHECK(evaluate(concat(v, v), S, tau) == r.counterexample->rhs);
  CHECK(r.counterexample->lhs != r.counterexample->rhs);
}

TEST_CASE("transfer spot check from the Brandt monoid", "[checker][transfer]") {
  auto const big   = kadourek_semigroup(3, 1).semigroup;
  auto const small = brandt_monoid_b21().semigroup;
  TransferOptions opts;
  opts.gens_count = 2;
  opts.identities = 8;
  opts.trials     = 6;
  opts.seed       = 11;
  opts.fixed      = {{parse_term("x x"), parse_term("x x x")}, {parse_term("x"), parse_term("x")}};
  auto report = transfer_spotcheck(big, small, opts);
  CHECK(report.violations.empty());
  CHECK(report.subsemigroups_tested == 6);
  CHECK(report.identities.size() >= 2);
}
