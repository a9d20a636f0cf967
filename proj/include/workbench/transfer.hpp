#pragma once

// Sampled transfer of identities: random unary identities that hold in a
// small inverse semigroup are re-checked on random finitely generated
// inverse subsemigroups of a big one.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "workbench/checker.hpp"
#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/term_parser.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  struct TransferOptions {
    std::size_t   gens_count      = 2;
    std::size_t   variables       = 2;
    std::size_t   identities      = 20;
    std::size_t   trials          = 10;
    std::size_t   max_term_length = 6;
    std::uint64_t seed            = 0;
    //! Exhaustive checks above this many substitutions fall back to
    //! sampling this many trials.
    std::uint64_t budget = 1'000'000;
    //! Identities tested in addition to the random ones.
    std::vector<std::pair<Term, Term>> fixed;
  };

  struct TransferViolation {
    std::string          identity;
    std::vector<Element> generators;
    IdentityReport       report;
  };

  struct TransferReport {
    std::vector<std::pair<Term, Term>> identities;
    std::size_t                        subsemigroups_tested = 0;
    std::vector<TransferViolation>     violations;
  };

  inline TransferReport transfer_spotcheck(FiniteSemigroup const& big,
                                           FiniteSemigroup const& small,
                                           TransferOptions const& opts) {
    if (!big.has_inverses() || !small.has_inverses()) {
      throw MissingInverses();
    }
    if (opts.gens_count == 0 || opts.variables == 0 || opts.max_term_length == 0) {
      throw BadParameters("transfer needs positive generator, variable and length counts");
    }
    std::mt19937_64 rng(opts.seed);
    auto            pick = [&](std::size_t bound) {
      return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
    };
    auto random_term = [&]() {
      UnaryTerm   t;
      std::size_t len = 1 + pick(opts.max_term_length);
      for (std::size_t i = 0; i < len; ++i) {
        int index = static_cast<int>(1 + pick(opts.variables));
        t.letters.push_back({xvar({index}), pick(2) == 0 ? 1 : -1});
      }
      return t;
    };

    auto check_on = [&](FiniteSemigroup const& S, Term const& l, Term const& r) {
      CheckOptions exhaustive;
      exhaustive.budget  = opts.budget;
      exhaustive.workers = 1;
      try {
        return check_identity(S, l, r, exhaustive);
      } catch (BudgetExceeded const&) {
        CheckOptions sampled = exhaustive;
        sampled.mode         = Mode::sampled;
        sampled.trials       = opts.budget;
        sampled.seed         = opts.seed;
        return check_identity(S, l, r, sampled);
      }
    };

    TransferReport report;
    for (auto const& [l, r] : opts.fixed) {
      if (check_on(small, l, r).holds()) {
        report.identities.emplace_back(l, r);
      }
    }
    std::size_t attempts = 0;
    while (report.identities.size() < opts.fixed.size() + opts.identities
           && attempts++ < 1000 * opts.identities) {
      UnaryTerm l = random_term();
      UnaryTerm r = random_term();
      if (l == r) {
        continue;
      }
      if (check_on(small, l, r).holds()) {
        report.identities.emplace_back(l, r);
      }
    }

    for (std::size_t trial = 0; trial < opts.trials; ++trial) {
      std::vector<Element> gens;
      for (std::size_t g = 0; g < opts.gens_count; ++g) {
        gens.push_back(static_cast<Element>(pick(big.size())));
      }
      FiniteSemigroup sub = subsemigroup(big, gens, true).semigroup;
      ++report.subsemigroups_tested;
      for (auto const& [l, r] : report.identities) {
        IdentityReport result = check_on(sub, l, r);
        if (!result.holds()) {
          report.violations.push_back(
              {to_string(l) + " = " + to_string(r), gens, std::move(result)});
        }
      }
    }
    return report;
  }

}  // namespace workbench
