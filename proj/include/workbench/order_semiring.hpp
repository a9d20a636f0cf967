#pragma once

// Natural partial order of a finite inverse semigroup, infima under it, and
// additively idempotent semirings (ai-semirings) built from them.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"

namespace workbench {

  //! The relation x <= y iff x = x x^-1 y, stored as one bitset per y (the
  //! down-set of y).
  class NaturalOrder {
   public:
    NaturalOrder() = default;

    explicit NaturalOrder(std::size_t n)
        : _size(n), _words((n + 63) / 64), _down(n * _words, 0) {}

    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }

    [[nodiscard]] bool le(Element x, Element y) const noexcept {
      return (_down[y * _words + x / 64] >> (x % 64)) & 1U;
    }

    void set(Element x, Element y) noexcept {
      _down[y * _words + x / 64] |= std::uint64_t(1) << (x % 64);
    }

    [[nodiscard]] std::uint64_t const* down_set(Element y) const noexcept {
      return _down.data() + y * _words;
    }

    [[nodiscard]] std::size_t words() const noexcept {
      return _words;
    }

   private:
    std::size_t                _size  = 0;
    std::size_t                _words = 0;
    std::vector<std::uint64_t> _down;
  };

  inline NaturalOrder natural_order(FiniteSemigroup const& S) {
    if (!S.has_inverses()) {
      throw MissingInverses();
    }
    auto const   n = static_cast<Element>(S.size());
    NaturalOrder order(n);
    for (Element x = 0; x < n; ++x) {
      Element xx = S.product(x, S.inverse(x));
      for (Element y = 0; y < n; ++y) {
        if (S.product(xx, y) == x) {
          order.set(x, y);
        }
      }
    }
    return order;
  }

  //! Row-major table of pairwise infima. Throws NotASemilattice for the first
  //! pair (in lexicographic order) without an infimum.
  //!
  //! The infimum of x and y is the element z of L = down(x) & down(y) whose
  //! own down-set has |L| elements; any z in L has down(z) inside L.
  inline std::vector<Element> inf_table(NaturalOrder const& order) {
    auto const        n = static_cast<Element>(order.size());
    std::size_t const W = order.words();
    std::vector<std::size_t> down_count(n, 0);
    for (Element z = 0; z < n; ++z) {
      for (std::size_t w = 0; w < W; ++w) {
        down_count[z] += std::popcount(order.down_set(z)[w]);
      }
    }
    std::vector<Element>       inf(std::size_t(n) * n, kUndefined);
    std::vector<std::uint64_t> common(W);
    for (Element x = 0; x < n; ++x) {
      for (Element y = x; y < n; ++y) {
        std::size_t count = 0;
        for (std::size_t w = 0; w < W; ++w) {
          common[w] = order.down_set(x)[w] & order.down_set(y)[w];
          count += std::popcount(common[w]);
        }
        Element found = kUndefined;
        for (std::size_t w = 0; w < W && found == kUndefined; ++w) {
          for (std::uint64_t bits = common[w]; bits != 0; bits &= bits - 1) {
            auto z = static_cast<Element>(w * 64 + std::countr_zero(bits));
            if (down_count[z] == count) {
              found = z;
              break;
            }
          }
        }
        if (found == kUndefined) {
          throw NotASemilattice(x, y);
        }
        inf[std::size_t(x) * n + y] = found;
        inf[std::size_t(y) * n + x] = found;
      }
    }
    return inf;
  }

  //! Least p with x^p = x^(p+1) for every x, or nullopt when some element
  //! generates a nontrivial cyclic group.
  inline std::optional<std::size_t> aperiodicity_index(FiniteSemigroup const& S) {
    std::size_t p = 1;
    std::unordered_map<Element, std::size_t> seen;
    for (Element x = 0; x < S.size(); ++x) {
      seen.clear();
      Element     current = x;
      std::size_t k       = 1;
      while (seen.emplace(current, k).second) {
        current = S.product(current, x);
        ++k;
      }
      std::size_t index  = seen[current];
      std::size_t period = k - index;
      if (period != 1) {
        return std::nullopt;
      }
      p = std::max(p, index);
    }
    return p;
  }

  namespace detail {
    inline void require_power_law(FiniteSemigroup const& S, std::size_t p) {
      if (p == 0) {
        throw IndexInvalid("exponent p must be at least 1");
      }
      for (Element x = 0; x < S.size(); ++x) {
        Element xp = power(S, x, p);
        if (xp != S.product(xp, x)) {
          throw IndexInvalid("x^" + std::to_string(p) + " = x^"
                             + std::to_string(p + 1) + " fails at element "
                             + std::to_string(x));
        }
      }
    }

    inline Element nat_sum_unchecked(FiniteSemigroup const& S,
                                     std::size_t            p,
                                     Element                x,
                                     Element                y) {
      Element base = S.product(x, S.inverse(y));
      return S.product(power(S, base, p), x);
    }
  }  // namespace detail

  //! (x y^-1)^p x. Requires inverses and the law x^p = x^(p+1) on all of S,
  //! which is checked on every call; use nat_sum_formula_table for all pairs.
  inline Element nat_sum_formula(FiniteSemigroup const& S,
                                 std::size_t            p,
                                 Element                x,
                                 Element                y) {
    if (!S.has_inverses()) {
      throw MissingInverses();
    }
    detail::require_power_law(S, p);
    return detail::nat_sum_unchecked(S, p, x, y);
  }

  inline std::vector<Element> nat_sum_formula_table(FiniteSemigroup const& S,
                                                    std::size_t p) {
    if (!S.has_inverses()) {
      throw MissingInverses();
    }
    detail::require_power_law(S, p);
    auto const           n = static_cast<Element>(S.size());
    std::vector<Element> table(std::size_t(n) * n);
    for (Element x = 0; x < n; ++x) {
      for (Element y = 0; y < n; ++y) {
        table[std::size_t(x) * n + y] = detail::nat_sum_unchecked(S, p, x, y);
      }
    }
    return table;
  }

  //! Finite algebra (S, +, .) with both operations given as dense tables.
  //! Whether the ai-semiring axioms hold is reported by validate_ai_semiring.
  class AiSemiring {
   public:
    AiSemiring() = default;

    AiSemiring(std::size_t              n,
               std::vector<Element>     add,
               std::vector<Element>     mul,
               std::vector<std::string> labels = {})
        : _size(n),
          _add(std::move(add)),
          _mul(std::move(mul)),
          _labels(std::move(labels)) {
      if (n == 0 || _add.size() != n * n || _mul.size() != n * n
          || (!_labels.empty() && _labels.size() != n)) {
        throw BadParameters("semiring tables have inconsistent sizes");
      }
      for (std::size_t i = 0; i < n * n; ++i) {
        if (_add[i] >= n || _mul[i] >= n) {
          throw BadParameters("semiring table entry out of range");
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }
    [[nodiscard]] Element sum(Element a, Element b) const noexcept {
      return _add[a * _size + b];
    }
    [[nodiscard]] Element product(Element a, Element b) const noexcept {
      return _mul[a * _size + b];
    }
    [[nodiscard]] std::vector<Element> const& add_table() const noexcept {
      return _add;
    }
    [[nodiscard]] std::vector<Element> const& mul_table() const noexcept {
      return _mul;
    }
    [[nodiscard]] std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }
    [[nodiscard]] std::string label(Element a) const {
      return _labels.empty() ? std::to_string(a) : _labels[a];
    }

    [[nodiscard]] FiniteSemigroup multiplicative_reduct() const {
      return FiniteSemigroup(_size, _mul).with_labels(_labels);
    }

    friend bool operator==(AiSemiring const& x, AiSemiring const& y) noexcept {
      return x._size == y._size && x._add == y._add && x._mul == y._mul;
    }

   private:
    std::size_t              _size = 0;
    std::vector<Element>     _add;
    std::vector<Element>     _mul;
    std::vector<std::string> _labels;
  };

  struct AxiomCheck {
    std::string          name;
    bool                 passed = true;
    std::vector<Element> witness;  // first failing tuple, lexicographic
  };

  struct SemiringAxiomReport {
    std::vector<AxiomCheck> checks;

    [[nodiscard]] bool all_passed() const {
      return std::all_of(checks.begin(), checks.end(), [](auto const& c) {
        return c.passed;
      });
    }

    [[nodiscard]] AxiomCheck const& operator[](std::string const& name) const {
      for (auto const& c : checks) {
        if (c.name == name) {
          return c;
        }
      }
      throw BadParameters("no axiom named " + name);
    }
  };

  inline SemiringAxiomReport validate_ai_semiring(AiSemiring const& A) {
    auto const n = static_cast<Element>(A.size());
    AxiomCheck comm{"add-commutative", true, {}};
    AxiomCheck idem{"add-idempotent", true, {}};
    AxiomCheck add_assoc{"add-associative", true, {}};
    AxiomCheck mul_assoc{"mul-associative", true, {}};
    AxiomCheck left{"left-distributive", true, {}};
    AxiomCheck right{"right-distributive", true, {}};

    auto fail = [](AxiomCheck& check, std::vector<Element> witness) {
      if (check.passed) {
        check.passed  = false;
        check.witness = std::move(witness);
      }
    };

    for (Element x = 0; x < n; ++x) {
      if (A.sum(x, x) != x) {
        fail(idem, {x});
      }
      for (Element y = 0; y < n; ++y) {
        if (A.sum(x, y) != A.sum(y, x)) {
          fail(comm, {x, y});
        }
        for (Element z = 0; z < n; ++z) {
          if (A.sum(A.sum(x, y), z) != A.sum(x, A.sum(y, z))) {
            fail(add_assoc, {x, y, z});
          }
          if (A.product(A.product(x, y), z) != A.product(x, A.product(y, z))) {
            fail(mul_assoc, {x, y, z});
          }
          if (A.product(x, A.sum(y, z))
              != A.sum(A.product(x, y), A.product(x, z))) {
            fail(left, {x, y, z});
          }
          if (A.product(A.sum(y, z), x)
              != A.sum(A.product(y, x), A.product(z, x))) {
            fail(right, {x, y, z});
          }
        }
      }
    }
    return {{comm, idem, add_assoc, mul_assoc, left, right}};
  }

  //! (S, +_nat, .) where +_nat is the infimum under the natural order.
  //! Throws MissingInverses or NotASemilattice.
  inline AiSemiring make_nat_semiring(FiniteSemigroup const& S) {
    NaturalOrder order = natural_order(S);
    AiSemiring   A(S.size(), inf_table(order), S.table(), S.labels());
    auto         report = validate_ai_semiring(A);
    if (!report.all_passed()) {
      for (auto const& c : report.checks) {
        if (!c.passed) {
          throw Error("natural semiring violates " + c.name
                      + "; the inversion table is probably wrong");
        }
      }
    }
    return A;
  }

}  // namespace workbench
