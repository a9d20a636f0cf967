#pragma once

// Composite checks built from the other modules: the ζ-substitution on
// S_n^{(h)} and the counterexample derived from φ, the semantic φ/ψ
// identities, the two descriptions of +_nat, and word-square checks.

#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "workbench/checker.hpp"
#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"
#include "workbench/order_semiring.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  //! Exhaustive check of w = w^2, falling back to `trials` seeded samples
  //! when the search space exceeds `opts.budget`.
  inline IdentityReport check_square(FiniteSemigroup const& S,
                                     Term const&            w,
                                     CheckOptions           opts,
                                     std::uint64_t          fallback_seed = 0) {
    Term square = std::visit(
        [](auto const& t) -> Term {
          if constexpr (std::is_same_v<std::decay_t<decltype(t)>, SemiringTerm>) {
            return t * t;
          } else {
            return concat(t, t);
          }
        },
        w);
    try {
      return check_identity(S, w, square, opts);
    } catch (BudgetExceeded const&) {
      opts.mode = Mode::sampled;
      opts.seed = fallback_seed;
      return check_identity(S, w, square, opts);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // S_n^{(h)}
  ////////////////////////////////////////////////////////////////////////

  struct KadourekWitness {
    Substitution     zeta;       // x_v -> chi_v^-1, on X_n^{(h)}
    PartialInjection zeta_w;     // value of w_n^{(h)} under zeta
    PartialInjection zeta_w2;    // value of (w_n^{(h)})^2 under zeta
    Substitution     tau;        // zeta after phi, on X_{2n}^{(h)}
    IdentityReport   report;     // v_{n,1}^{(h)} = its square at tau
  };

  //! Evaluates w_n^{(h)} and its square at x_v -> chi_v^-1, then checks
  //! v_{n,m}^{(h)} = its square at the substitution x -> zeta(phi(x)).
  inline KadourekWitness kadourek_witness(ConcreteSemigroup<PartialInjection> const& closure,
                                          int                                        n,
                                          int                                        h,
                                          int                                        m = 1) {
    FiniteSemigroup const& S = closure.semigroup;
    std::unordered_map<std::string, Element> index;
    for (Element i = 0; i < closure.elements.size(); ++i) {
      index.emplace(closure.elements[i].key(), i);
    }
    auto locate = [&](PartialInjection const& a) {
      auto it = index.find(a.key());
      if (it == index.end()) {
        throw BadParameters("map is not an element of the closure");
      }
      return it->second;
    };

    KadourekWitness out;
    for (auto const& g : kadourek_generators(n, h)) {
      out.zeta[g.label] = locate(partial_invert(g.map));
    }
    UnaryTerm const w = build_w(n, h);
    out.zeta_w        = closure.elements[evaluate(w, S, out.zeta)];
    out.zeta_w2       = closure.elements[evaluate(concat(w, w), S, out.zeta)];

    auto const phi = phi_psi(n, h).first;
    for (auto const& [var, image] : phi) {
      Element z     = out.zeta.at(image.var);
      out.tau[var]  = image.sign > 0 ? z : S.inverse(z);
    }
    Word const   v = build_v(n, m, h);
    CheckOptions opts;
    opts.mode    = Mode::witness;
    opts.witness = out.tau;
    out.report   = check_identity(S, v, concat(v, v), opts);
    return out;
  }

  struct PhiPsiReport {
    IdentityReport phi;  // substitute(v, phi) = w
    IdentityReport psi;  // substitute(v, psi) = w^-1
  };

  //! Both identities over S, exhaustively within `opts.budget`, else by
  //! `opts.trials` seeded samples.
  inline PhiPsiReport check_phi_psi(FiniteSemigroup const& S,
                                    int                    n,
                                    int                    m,
                                    int                    h,
                                    CheckOptions           opts,
                                    std::uint64_t          fallback_seed = 0) {
    auto const [phi, psi] = phi_psi(n, h);
    Word const      v     = build_v(n, m, h);
    UnaryTerm const w     = build_w(n, h);
    auto            run   = [&](Term const& l, Term const& r) {
      try {
        return check_identity(S, l, r, opts);
      } catch (BudgetExceeded const&) {
        CheckOptions sampled = opts;
        sampled.mode         = Mode::sampled;
        sampled.seed         = fallback_seed;
        return check_identity(S, l, r, sampled);
      }
    };
    return {run(substitute(v, phi), w), run(substitute(v, psi), w.inverse())};
  }

  ////////////////////////////////////////////////////////////////////////
  // +_nat
  ////////////////////////////////////////////////////////////////////////

  struct PairComparison {
    std::uint64_t                          pairs = 0;
    std::vector<std::pair<Element, Element>> mismatches;

    [[nodiscard]] bool ok() const noexcept {
      return mismatches.empty();
    }
  };

  //! (x y^-1)^p x against the infimum table for all pairs, with p the
  //! aperiodicity index of S.
  inline PairComparison compare_nat_formula(FiniteSemigroup const& S) {
    auto p = aperiodicity_index(S);
    if (!p) {
      throw IndexInvalid("semigroup is not aperiodic");
    }
    auto const     formula = nat_sum_formula_table(S, *p);
    auto const     inf     = inf_table(natural_order(S));
    PairComparison out;
    out.pairs = formula.size();
    for (std::size_t i = 0; i < formula.size(); ++i) {
      if (formula[i] != inf[i]) {
        out.mismatches.emplace_back(static_cast<Element>(i / S.size()),
                                    static_cast<Element>(i % S.size()));
      }
    }
    return out;
  }

  //! Infimum under the natural order against the entrywise product on R_t.
  inline PairComparison compare_hadamard(ConcreteSemigroup<RookMatrix> const& R) {
    auto const     inf = inf_table(natural_order(R.semigroup));
    std::size_t const n = R.size();
    PairComparison out;
    out.pairs = n * n;
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        if (R.elements[inf[a * n + b]] != R.elements[a].hadamard(R.elements[b])) {
          out.mismatches.emplace_back(a, b);
        }
      }
    }
    return out;
  }

}  // namespace workbench
