#pragma once

// Registry of verifiable claims. Each claim is a list of checks given as
// data (algebra spec, terms or word family, expected outcome); run_claim
// interprets them.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "workbench/checker.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"
#include "workbench/family_spec.hpp"
#include "workbench/image_set.hpp"
#include "workbench/term_parser.hpp"
#include "workbench/terms.hpp"
#include "workbench/verification.hpp"

namespace workbench {

  enum class CheckKind {
    identity,          // lhs = rhs, terms as text
    square,            // family word = its square, flat search
    idempotent_image,  // composed family word = its square, by image sets
    image_within,      // labels of the image of the word lie in `rhs` spec
    nat_formula,       // (x y^-1)^p x = inf(x, y)
    hadamard,          // inf(x, y) = entrywise product on rook:<t>
    kadourek_witness,  // zeta / phi counterexample on kadourek:<n>:<h>
  };

  struct ClaimCheck {
    CheckKind   kind;
    std::string algebra;
    //! Term text for identities; `u:n:k:m`, `v:n:m:h` for word families.
    std::string lhs;
    std::string rhs;
    bool        expect_holds = true;
  };

  struct Claim {
    std::string             id;
    std::string             locus;
    std::vector<ClaimCheck> checks;
  };

  inline std::vector<Claim> claim_registry() {
    std::vector<Claim> claims;

    Claim lemma21{"lemma2.1", "u_{n,k,m} = its square on Brandt semigroups", {}};
    for (std::string const g : {"1", "2", "3", "2x2"}) {
      std::string const m = g == "1" ? "1" : (g == "3" ? "3" : "2");
      for (int i = 1; i <= 3; ++i) {
        for (int s = 1; s <= 4; ++s) {
          for (int n = 0; n <= s; ++n) {
            lemma21.checks.push_back({CheckKind::square,
                                      "brandt:" + g + ":" + std::to_string(i),
                                      "u:" + std::to_string(n) + ":" + std::to_string(s - n)
                                          + ":" + m,
                                      "",
                                      true});
          }
        }
      }
    }
    claims.push_back(std::move(lemma21));

    Claim lemma22{"lemma2.2", "v^(1) = its square on E(S) with S_1 adjoined", {}};
    for (std::string const g : {"1", "2"}) {
      for (int i = 1; i <= 3; ++i) {
        lemma22.checks.push_back({CheckKind::square,
                                  "eunion:adjoin1:brandt:" + g + ":" + std::to_string(i),
                                  "v:2:" + g + ":1",
                                  "",
                                  true});
      }
    }
    claims.push_back(std::move(lemma22));

    claims.push_back({"prop2.3",
                      "v^(h) = its square on (h,m)-semigroups with zero bottom",
                      {{CheckKind::idempotent_image, "brandt:2:2", "v:2:2:1", "", true},
                       {CheckKind::idempotent_image, "brandt:3:2", "v:2:3:1", "", true},
                       {CheckKind::idempotent_image, "adjoin1:brandt:2:2", "v:2:2:2", "", true},
                       {CheckKind::idempotent_image, "brandt:2:2", "v:2:1:1", "", true},
                       {CheckKind::idempotent_image, "brandt:3:2", "v:2:1:1", "", false}}});

    claims.push_back({"prop2.5",
                      "v^(h+1) = its square on an (h,m)-semigroup with group bottom",
                      {{CheckKind::idempotent_image, "product:group:2,brandt:2:2", "v:2:2:2", "",
                        true}}});

    claims.push_back({"prop2.6-1",
                      "v_{n,2}^(2) = its square on R_2",
                      {{CheckKind::idempotent_image, "rook:2", "v:2:2:2", "", true},
                       {CheckKind::idempotent_image, "rook:2", "v:3:2:2", "", true}}});

    claims.push_back({"prop2.6-2",
                      "v_{2,6}^(4) = its square on R_3",
                      {{CheckKind::idempotent_image, "rook:3", "v:2:6:4", "", true}}});

    claims.push_back({"restricted-image",
                      "values of v_{2,6}^(1) on R_3 avoid the transpositions",
                      {{CheckKind::image_within, "rook:3", "v:2:6:1", "rook3-restricted", true}}});

    claims.push_back({"cor3.2",
                      "x^2 = x^3 on S_2^(1) and S_2^(2)",
                      {{CheckKind::identity, "kadourek:2:1", "x^2", "x^3", true},
                       {CheckKind::identity, "kadourek:2:2", "x^2", "x^3", true}}});

    claims.push_back({"prop3.3",
                      "S_2^(h) violates v_{2,1}^(h) = its square",
                      {{CheckKind::kadourek_witness, "kadourek:2:1", "v:2:1:1", "", false},
                       {CheckKind::kadourek_witness, "kadourek:2:2", "v:2:1:2", "", false}}});

    claims.push_back({"lemma4.1",
                      "(x y^-1)^p x is the natural infimum",
                      {{CheckKind::nat_formula, "b21", "", "", true},
                       {CheckKind::nat_formula, "sigma7", "", "", true},
                       {CheckKind::hadamard, "rook:2", "", "", true},
                       {CheckKind::hadamard, "rook:3", "", "", true}}});

    claims.push_back({"remark1.3",
                      "xy = x + y on the natural semiring of Y_2",
                      {{CheckKind::identity, "rook:1", "x*y", "x+y", true}}});

    claims.push_back({"remark4.3",
                      "(xy+yx)^2 = x^2+y^2 separates the two additions on sigma7",
                      {{CheckKind::identity, "sigma7:nat", "(x*y+y*x)^2", "x^2+y^2", true},
                       {CheckKind::identity, "sigma7:bool", "(x*y+y*x)^2", "x^2+y^2", false}}});
    return claims;
  }

  //! Shell-style match supporting `*` and `?`.
  inline bool glob_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
      if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
        ++p;
        ++t;
      } else if (p < pattern.size() && pattern[p] == '*') {
        star = p++;
        mark = t;
      } else if (star != std::string_view::npos) {
        p = star + 1;
        t = ++mark;
      } else {
        return false;
      }
    }
    while (p < pattern.size() && pattern[p] == '*') {
      ++p;
    }
    return p == pattern.size();
  }

  struct ClaimResult {
    std::string   id;
    std::string   locus;
    bool          passed        = true;
    std::size_t   checks        = 0;
    std::uint64_t substitutions = 0;
    double        seconds       = 0;
    std::string   detail;  // first failing check
    //! One machine line per check, in order.
    std::vector<std::string> lines;
  };

  namespace detail {
    struct FamilyWord {
      char             family;
      std::vector<int> params;
    };

    inline FamilyWord parse_family_word(std::string const& s) {
      auto parts = split(s, ':');
      if (parts.size() < 2 || parts[0].size() != 1) {
        throw BadSpec("bad word family '" + s + "'");
      }
      FamilyWord f{parts[0][0], {}};
      for (std::size_t i = 1; i < parts.size(); ++i) {
        try {
          f.params.push_back(std::stoi(parts[i]));
        } catch (std::logic_error const&) {
          throw BadSpec("bad word family '" + s + "'");
        }
      }
      bool const ok = (f.family == 'u' || f.family == 'v') && f.params.size() == 3;
      if (!ok) {
        throw BadSpec("bad word family '" + s + "'");
      }
      return f;
    }

    inline ComposedWord composed_family_word(std::string const& s) {
      FamilyWord f = parse_family_word(s);
      if (f.family == 'u') {
        return ComposedWord::leaf(build_u(f.params[0], f.params[1], f.params[2]));
      }
      return build_v_composed(f.params[0], f.params[1], f.params[2]);
    }

    inline Word flat_family_word(std::string const& s) {
      FamilyWord f = parse_family_word(s);
      if (f.family == 'u') {
        return build_u(f.params[0], f.params[1], f.params[2]);
      }
      return build_v(f.params[0], f.params[1], f.params[2]);
    }

    //! Outcome of one check: whether it matched the expectation, the
    //! substitutions examined and a machine-readable line.
    struct CheckOutcome {
      bool          as_expected = false;
      std::uint64_t work        = 0;
      std::string   line;
    };

    inline CheckOutcome run_check(ClaimCheck const& c, std::size_t workers) {
      CheckOptions opts;
      opts.workers = workers;
      auto from_report = [&](IdentityReport const& r) {
        return CheckOutcome{r.holds() == c.expect_holds, r.substitutions_checked,
                            machine_line(r)};
      };
      switch (c.kind) {
        case CheckKind::identity: {
          Algebra const A   = build_family(c.algebra);
          Term const    lhs = parse_term(c.lhs);
          Term const    rhs = parse_term(c.rhs);
          bool const    semiring =
              flavor(lhs) == Flavor::semiring || flavor(rhs) == Flavor::semiring;
          return from_report(semiring ? check_identity(A.semiring(), lhs, rhs, opts)
                                      : check_identity(A.semigroup(), lhs, rhs, opts));
        }
        case CheckKind::square:
          return from_report(
              check_square(build_family(c.algebra).semigroup(), flat_family_word(c.lhs), opts));
        case CheckKind::idempotent_image:
          return from_report(check_idempotent_image(build_family(c.algebra).semigroup(),
                                                    composed_family_word(c.lhs),
                                                    kDefaultBudget,
                                                    workers));
        case CheckKind::image_within: {
          FiniteSemigroup const S = build_family(c.algebra).semigroup();
          FiniteSemigroup const T = build_family(c.rhs).semigroup();
          ImageSet const image(S, composed_family_word(c.lhs), kDefaultBudget, workers);
          std::size_t outside = 0;
          for (Element e : image.values()) {
            auto const& labels = T.labels();
            if (std::find(labels.begin(), labels.end(), S.label(e)) == labels.end()) {
              ++outside;
            }
          }
          return {(outside == 0) == c.expect_holds, image.evaluations(),
                  "IMAGE " + std::to_string(image.values().size()) + " OUTSIDE "
                      + std::to_string(outside)};
        }
        case CheckKind::nat_formula: {
          PairComparison const cmp = compare_nat_formula(build_family(c.algebra).semigroup());
          return {cmp.ok() == c.expect_holds, cmp.pairs,
                  "PAIRS " + std::to_string(cmp.pairs) + " MISMATCHES "
                      + std::to_string(cmp.mismatches.size())};
        }
        case CheckKind::hadamard: {
          auto const t = split(c.algebra, ':');
          if (t.size() != 2 || t[0] != "rook") {
            throw BadSpec("hadamard check needs rook:<t>");
          }
          PairComparison const cmp =
              compare_hadamard(rook_monoid(static_cast<int>(parse_count(t[1], c.algebra))));
          return {cmp.ok() == c.expect_holds, cmp.pairs,
                  "PAIRS " + std::to_string(cmp.pairs) + " MISMATCHES "
                      + std::to_string(cmp.mismatches.size())};
        }
        case CheckKind::kadourek_witness:
          break;
      }
      auto const t = split(c.algebra, ':');
      if (t.size() != 3 || t[0] != "kadourek") {
        throw BadSpec("witness check needs kadourek:<n>:<h>");
      }
      int const  n = static_cast<int>(parse_count(t[1], c.algebra));
      int const  h = static_cast<int>(parse_count(t[2], c.algebra));
      FamilyWord f = parse_family_word(c.lhs);
      auto const closure = kadourek_semigroup(n, h);
      KadourekWitness const kw = kadourek_witness(closure, n, h, f.params[1]);
      auto const            corner = static_cast<int>(kw.zeta_w.n_points() - 1);
      bool const zeta_ok = kw.zeta_w.pairs() == std::vector<std::pair<int, int>>{{corner, 0}}
                           && kw.zeta_w2.rank() == 0;
      CheckOutcome out = from_report(kw.report);
      out.as_expected  = out.as_expected && zeta_ok;
      out.line += zeta_ok ? " ZETA ok" : " ZETA wrong";
      return out;
    }
  }  // namespace detail

  inline ClaimResult run_claim(Claim const& claim, std::size_t workers = 0) {
    ClaimResult r;
    r.id    = claim.id;
    r.locus = claim.locus;
    auto const  start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < claim.checks.size(); ++i) {
      ClaimCheck const& c = claim.checks[i];
      detail::CheckOutcome out;
      try {
        out = detail::run_check(c, workers);
      } catch (Error const& e) {
        out = {false, 0, std::string("ERROR ") + e.what()};
      }
      ++r.checks;
      r.substitutions += out.work;
      r.lines.push_back(out.line);
      if (!out.as_expected && r.passed) {
        r.passed = false;
        r.detail = "check " + std::to_string(i + 1) + " on " + c.algebra + ": " + out.line;
      }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

}  // namespace workbench
