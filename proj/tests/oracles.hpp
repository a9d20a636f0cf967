#pragma once

// Brute-force reference implementations used to confirm library results.
// They share no code with the library beyond the FiniteSemigroup container.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/terms.hpp"

namespace oracle {

  using workbench::Element;
  using workbench::FiniteSemigroup;
  using workbench::VariableId;
  using workbench::Word;

  //! Partial map on {0..n-1}; -1 marks undefined points.
  using Map = std::vector<int>;

  //! (a b)(q) = a(b(q)).
  inline Map compose(Map const& a, Map const& b) {
    Map out(b.size(), -1);
    for (std::size_t q = 0; q < b.size(); ++q) {
      if (b[q] >= 0) {
        out[q] = a[static_cast<std::size_t>(b[q])];
      }
    }
    return out;
  }

  inline Map invert(Map const& a) {
    Map out(a.size(), -1);
    for (std::size_t q = 0; q < a.size(); ++q) {
      if (a[q] >= 0) {
        out[static_cast<std::size_t>(a[q])] = static_cast<int>(q);
      }
    }
    return out;
  }

  //! Fixpoint closure: multiply every pair until nothing new appears.
  inline std::set<Map> closure(std::vector<Map> const& gens) {
    std::set<Map> all(gens.begin(), gens.end());
    bool          grew = true;
    while (grew) {
      grew = false;
      std::vector<Map> snapshot(all.begin(), all.end());
      for (auto const& a : snapshot) {
        for (auto const& b : snapshot) {
          grew = all.insert(compose(a, b)).second || grew;
        }
      }
    }
    return all;
  }

  inline std::vector<VariableId> sorted_variables(Word const& w) {
    std::set<VariableId> s(w.letters.begin(), w.letters.end());
    return {s.begin(), s.end()};
  }

  inline Element evaluate(FiniteSemigroup const&               S,
                          Word const&                          w,
                          std::map<VariableId, Element> const& tau) {
    Element acc = tau.at(w.letters[0]);
    for (std::size_t i = 1; i < w.letters.size(); ++i) {
      acc = S.product(acc, tau.at(w.letters[i]));
    }
    return acc;
  }

  //! Calls f(tau) for every substitution, last variable varying fastest.
  template <typename F>
  void for_each_substitution(std::size_t size, std::vector<VariableId> const& vars, F&& f) {
    std::vector<Element>          digits(vars.size(), 0);
    std::map<VariableId, Element> tau;
    while (true) {
      for (std::size_t i = 0; i < vars.size(); ++i) {
        tau[vars[i]] = digits[i];
      }
      if (!f(tau)) {
        return;
      }
      std::size_t i = vars.size();
      while (i > 0 && ++digits[i - 1] == size) {
        digits[--i] = 0;
      }
      if (i == 0) {
        return;
      }
    }
  }

  inline std::set<Element> image(FiniteSemigroup const& S, Word const& w) {
    auto const               vars = sorted_variables(w);
    std::vector<std::size_t> slot;
    for (auto const& v : w.letters) {
      slot.push_back(static_cast<std::size_t>(
          std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
    }
    std::set<Element>    out;
    std::vector<Element> digits(vars.size(), 0);
    while (true) {
      Element acc = digits[slot[0]];
      for (std::size_t i = 1; i < slot.size(); ++i) {
        acc = S.product(acc, digits[slot[i]]);
      }
      out.insert(acc);
      std::size_t i = vars.size();
      while (i > 0 && ++digits[i - 1] == S.size()) {
        digits[--i] = 0;
      }
      if (i == 0) {
        return out;
      }
    }
  }

  struct Verdict {
    bool                                         holds = true;
    std::optional<std::map<VariableId, Element>> first_counterexample;
    std::uint64_t                                violations = 0;
  };

  //! Exhaustive check of lhs = rhs, counting every violation.
  inline Verdict check(FiniteSemigroup const& S, Word const& lhs, Word const& rhs) {
    std::set<VariableId> all(lhs.letters.begin(), lhs.letters.end());
    all.insert(rhs.letters.begin(), rhs.letters.end());
    Verdict v;
    for_each_substitution(S.size(), {all.begin(), all.end()}, [&](auto const& tau) {
      if (evaluate(S, lhs, tau) != evaluate(S, rhs, tau)) {
        v.holds = false;
        ++v.violations;
        if (!v.first_counterexample) {
          v.first_counterexample = tau;
        }
      }
      return true;
    });
    return v;
  }

  //! a <= b iff a = e b for some idempotent e.
  inline bool natural_le(FiniteSemigroup const& S, Element a, Element b) {
    for (Element e = 0; e < S.size(); ++e) {
      if (S.product(e, e) == e && S.product(e, b) == a) {
        return true;
      }
    }
    return false;
  }

  //! Greatest lower bound by scanning all lower bounds.
  inline std::optional<Element> infimum(FiniteSemigroup const& S, Element a, Element b) {
    std::vector<Element> lower;
    for (Element c = 0; c < S.size(); ++c) {
      if (natural_le(S, c, a) && natural_le(S, c, b)) {
        lower.push_back(c);
      }
    }
    for (Element c : lower) {
      if (std::all_of(lower.begin(), lower.end(), [&](Element d) {
            return natural_le(S, d, c);
          })) {
        return c;
      }
    }
    return std::nullopt;
  }

  inline bool associative(FiniteSemigroup const& S) {
    for (Element a = 0; a < S.size(); ++a) {
      for (Element b = 0; b < S.size(); ++b) {
        for (Element c = 0; c < S.size(); ++c) {
          if (S.product(S.product(a, b), c) != S.product(a, S.product(b, c))) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      r = r * (n - k + i) / i;
    }
    return r;
  }

  //! |R_t| = sum_k C(t,k)^2 k!.
  inline std::uint64_t rook_count(std::uint64_t t) {
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k <= t; ++k) {
      std::uint64_t f = 1;
      for (std::uint64_t i = 2; i <= k; ++i) {
        f *= i;
      }
      total += binomial(t, k) * binomial(t, k) * f;
    }
    return total;
  }

  //! Random composed word with at most 7 flat variables: an outer word over
  //! one or two slots and possibly one free letter; a slot body is a leaf
  //! over one or two fresh variables or, at the top level, a composed word
  //! with a single leaf slot.
  inline workbench::ComposedWord random_composed(std::mt19937_64& rng) {
    using workbench::ComposedWord;
    auto pick = [&](std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    int  fresh = 0;
    auto name  = [&](char const* stem) {
      return VariableId::named(stem + std::to_string(fresh++));
    };
    auto word_over = [&](std::vector<VariableId> const& pool, std::size_t extra) {
      Word w;
      w.letters = pool;
      for (std::size_t i = 0; i < extra; ++i) {
        w.letters.push_back(pool[pick(0, pool.size() - 1)]);
      }
      std::shuffle(w.letters.begin(), w.letters.end(), rng);
      return w;
    };
    auto leaf = [&]() {
      std::vector<VariableId> pool;
      for (std::size_t i = 0, k = pick(1, 2); i < k; ++i) {
        pool.push_back(name("v"));
      }
      return ComposedWord::leaf(word_over(pool, pick(0, 3)));
    };
    auto node = [&](auto&& body, std::size_t slots, bool free) {
      ComposedWord            cw;
      std::vector<VariableId> pool;
      for (std::size_t s = 0; s < slots; ++s) {
        VariableId slot = name("s");
        cw.slots.push_back({slot, std::make_shared<ComposedWord const>(body())});
        pool.push_back(slot);
      }
      if (free) {
        pool.push_back(name("f"));
      }
      cw.outer = word_over(pool, pick(0, 3));
      std::sort(cw.slots.begin(), cw.slots.end(), [](auto const& a, auto const& b) {
        return a.name < b.name;
      });
      return cw;
    };
    auto nested = [&]() {
      return node(leaf, 1, pick(0, 1) == 1);
    };
    if (pick(0, 2) == 0) {
      return node(nested, pick(1, 2), false);
    }
    return node(leaf, pick(1, 2), pick(0, 1) == 1);
  }

}  // namespace oracle
