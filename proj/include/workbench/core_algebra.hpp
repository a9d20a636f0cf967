#pragma once

// Finite semigroups as dense Cayley tables, and the basic machinery built on
// them: closure generation from concrete generators, associativity and
// inverse-semigroup checks, idempotents and subsemigroups.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "workbench/errors.hpp"

namespace workbench {

  using Element = std::uint32_t;

  inline constexpr Element     kUndefined           = UINT32_MAX;
  inline constexpr std::size_t kDefaultClosureLimit = 1'000'000;

  //! A finite semigroup on the carrier {0, ..., size - 1}.
  //!
  //! The multiplication table is stored row-major: `product(a, b)` is entry
  //! `a * size + b`. Zero and identity are detected on construction. Objects
  //! are immutable once built; the `with_*` members return modified copies.
  class FiniteSemigroup {
   public:
    FiniteSemigroup() = default;

    FiniteSemigroup(std::size_t n, std::vector<Element> table)
        : _size(n), _mul(std::move(table)) {
      if (n == 0) {
        throw BadParameters("a semigroup needs at least one element");
      }
      if (_mul.size() != n * n) {
        throw BadParameters("multiplication table has "
                            + std::to_string(_mul.size())
                            + " entries, expected "
                            + std::to_string(n * n));
      }
      for (Element x : _mul) {
        if (x >= n) {
          throw BadParameters("table entry " + std::to_string(x)
                              + " out of range");
        }
      }
      detect_zero_and_identity();
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _size;
    }

    [[nodiscard]] Element product(Element a, Element b) const noexcept {
      return _mul[a * _size + b];
    }

    [[nodiscard]] std::span<Element const> row(Element a) const noexcept {
      return {_mul.data() + a * _size, _size};
    }

    [[nodiscard]] std::vector<Element> const& table() const noexcept {
      return _mul;
    }

    [[nodiscard]] bool has_inverses() const noexcept {
      return !_inv.empty();
    }

    [[nodiscard]] Element inverse(Element a) const {
      if (_inv.empty()) {
        throw MissingInverses();
      }
      return _inv[a];
    }

    [[nodiscard]] std::vector<Element> const& inverses() const noexcept {
      return _inv;
    }

    [[nodiscard]] std::optional<Element> zero() const noexcept {
      return _zero;
    }

    [[nodiscard]] std::optional<Element> identity() const noexcept {
      return _identity;
    }

    [[nodiscard]] bool has_labels() const noexcept {
      return !_labels.empty();
    }

    [[nodiscard]] std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }

    //! Label of `a`, or its index when the semigroup is unlabeled.
    [[nodiscard]] std::string label(Element a) const {
      return _labels.empty() ? std::to_string(a) : _labels[a];
    }

    //! Copy with the given inversion table attached (not verified here; see
    //! compute_inverses).
    [[nodiscard]] FiniteSemigroup with_inverses(std::vector<Element> inv) const {
      if (!inv.empty() && inv.size() != _size) {
        throw BadParameters("inversion table has wrong length");
      }
      for (Element x : inv) {
        if (x >= _size) {
          throw BadParameters("inversion entry " + std::to_string(x)
                              + " out of range");
        }
      }
      FiniteSemigroup copy = *this;
      copy._inv            = std::move(inv);
      return copy;
    }

    [[nodiscard]] FiniteSemigroup
    with_labels(std::vector<std::string> labels) const {
      if (!labels.empty() && labels.size() != _size) {
        throw BadParameters("label list has wrong length");
      }
      FiniteSemigroup copy = *this;
      copy._labels         = std::move(labels);
      return copy;
    }

    //! Tables (and inversion tables) equal; labels are ignored.
    friend bool operator==(FiniteSemigroup const& x,
                           FiniteSemigroup const& y) noexcept {
      return x._size == y._size && x._mul == y._mul && x._inv == y._inv;
    }

   private:
    void detect_zero_and_identity() {
      for (Element e = 0; e < _size; ++e) {
        bool is_zero = true;
        bool is_one  = true;
        for (Element a = 0; a < _size && (is_zero || is_one); ++a) {
          Element ea = product(e, a);
          Element ae = product(a, e);
          is_zero    = is_zero && ea == e && ae == e;
          is_one     = is_one && ea == a && ae == a;
        }
        if (is_zero) {
          _zero = e;
        }
        if (is_one) {
          _identity = e;
        }
      }
    }

    std::size_t              _size = 0;
    std::vector<Element>     _mul;
    std::vector<Element>     _inv;
    std::vector<std::string> _labels;
    std::optional<Element>   _zero;
    std::optional<Element>   _identity;
  };

  ////////////////////////////////////////////////////////////////////////
  // Closure generation
  ////////////////////////////////////////////////////////////////////////

  //! Generators together with a pure product and an injective canonical key.
  template <typename T>
  struct GeneratorSet {
    std::vector<T>                          elements;
    std::function<T(T const&, T const&)>    product;
    std::function<std::string(T const&)>    key;
  };

  //! A finite semigroup whose elements are realised by concrete values.
  template <typename T>
  struct ConcreteSemigroup {
    FiniteSemigroup semigroup;
    std::vector<T>  elements;  // elements[i] realises index i

    [[nodiscard]] std::size_t size() const noexcept {
      return elements.size();
    }
  };

  //! Closure of `gens` under `product`, with elements numbered in
  //! breadth-first discovery order (distinct generators first, in the given
  //! order). Throws LimitExceeded if more than `limit` elements appear.
  //!
  //! Only right multiplication by generators is evaluated on concrete values;
  //! the rest of the table is filled from the right Cayley graph using the
  //! factorisation recorded for every element.
  template <typename T, typename Product, typename KeyFn>
  ConcreteSemigroup<T> generate_closure(std::span<T const> gens,
                                        Product&&          product,
                                        KeyFn&&            key,
                                        std::size_t limit = kDefaultClosureLimit) {
    using Key = std::decay_t<std::invoke_result_t<KeyFn&, T const&>>;
    if (gens.empty()) {
      throw BadParameters("closure needs at least one generator");
    }
    std::vector<T>                   elements;
    std::unordered_map<Key, Element> index;
    std::vector<Element>             parent;     // elements[i] = parent * gen
    std::vector<Element>             last_gen;   // position in gen_index
    std::vector<Element>             gen_index;  // distinct generator indices

    auto add = [&](T value, Element p, Element g) -> Element {
      auto [it, inserted] = index.emplace(key(value), Element(elements.size()));
      if (inserted) {
        if (elements.size() >= limit) {
          throw LimitExceeded(limit);
        }
        elements.push_back(std::move(value));
        parent.push_back(p);
        last_gen.push_back(g);
      }
      return it->second;
    };

    for (T const& g : gens) {
      std::size_t before = elements.size();
      Element     i      = add(g, kUndefined, kUndefined);
      if (elements.size() != before) {
        gen_index.push_back(i);
      }
    }
    std::size_t const    ngens = gen_index.size();
    std::vector<Element> right;  // right[a * ngens + j] = a * gen_j
    for (std::size_t a = 0; a < elements.size(); ++a) {
      for (std::size_t j = 0; j < ngens; ++j) {
        T value = product(elements[a], elements[gen_index[j]]);
        right.push_back(add(std::move(value), Element(a), Element(j)));
      }
    }

    std::size_t const    n = elements.size();
    std::vector<Element> mul(n * n);
    // Generators come first, so every non-generator has its parent earlier
    // in the order and column b can be filled after column parent[b].
    for (std::size_t b = 0; b < n; ++b) {
      if (parent[b] == kUndefined) {
        auto j = static_cast<std::size_t>(
            std::find(gen_index.begin(), gen_index.end(), Element(b))
            - gen_index.begin());
        for (std::size_t a = 0; a < n; ++a) {
          mul[a * n + b] = right[a * ngens + j];
        }
      } else {
        for (std::size_t a = 0; a < n; ++a) {
          mul[a * n + b] = right[mul[a * n + parent[b]] * ngens + last_gen[b]];
        }
      }
    }
    return {FiniteSemigroup(n, std::move(mul)), std::move(elements)};
  }

  template <typename T>
  ConcreteSemigroup<T> generate_closure(GeneratorSet<T> const& gens,
                                        std::size_t limit = kDefaultClosureLimit) {
    return generate_closure(std::span<T const>(gens.elements),
                            gens.product,
                            gens.key,
                            limit);
  }

  //! Semigroup on an explicitly listed carrier, indexed in the given order.
  //! Throws BadParameters if the carrier is not closed under `product` or
  //! contains duplicates.
  template <typename T, typename Product, typename KeyFn>
  ConcreteSemigroup<T> from_carrier(std::vector<T> carrier,
                                    Product&&      product,
                                    KeyFn&&        key) {
    using Key = std::decay_t<std::invoke_result_t<KeyFn&, T const&>>;
    std::unordered_map<Key, Element> index;
    for (std::size_t i = 0; i < carrier.size(); ++i) {
      if (!index.emplace(key(carrier[i]), Element(i)).second) {
        throw BadParameters("duplicate element in carrier");
      }
    }
    std::size_t const    n = carrier.size();
    std::vector<Element> mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        auto it = index.find(key(product(carrier[a], carrier[b])));
        if (it == index.end()) {
          throw BadParameters("carrier is not closed under the product");
        }
        mul[a * n + b] = it->second;
      }
    }
    return {FiniteSemigroup(n, std::move(mul)), std::move(carrier)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Checks
  ////////////////////////////////////////////////////////////////////////

  //! The first triple (a, b, c) in lexicographic order with
  //! (ab)c != a(bc), if any.
  inline std::optional<std::array<Element, 3>>
  find_nonassociative_triple(FiniteSemigroup const& S) {
    auto const n = static_cast<Element>(S.size());
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        Element ab = S.product(a, b);
        for (Element c = 0; c < n; ++c) {
          if (S.product(ab, c) != S.product(a, S.product(b, c))) {
            return std::array<Element, 3>{a, b, c};
          }
        }
      }
    }
    return std::nullopt;
  }

  inline bool verify_associativity(FiniteSemigroup const& S) {
    return !find_nonassociative_triple(S).has_value();
  }

  //! For every a, the unique b with aba = a and bab = b. Throws NotInverse for
  //! the first element with zero or several such b.
  inline std::vector<Element> compute_inverses(FiniteSemigroup const& S) {
    auto const           n = static_cast<Element>(S.size());
    std::vector<Element> inv(n, kUndefined);
    for (Element a = 0; a < n; ++a) {
      std::vector<Element> found;
      for (Element b = 0; b < n; ++b) {
        Element ab = S.product(a, b);
        if (S.product(ab, a) == a && S.product(S.product(b, a), b) == b) {
          found.push_back(b);
        }
      }
      if (found.size() != 1) {
        throw NotInverse(a, std::move(found));
      }
      inv[a] = found.front();
    }
    return inv;
  }

  //! Copy of S with its inversion table computed and attached.
  inline FiniteSemigroup with_computed_inverses(FiniteSemigroup const& S) {
    return S.with_inverses(compute_inverses(S));
  }

  inline std::vector<Element> idempotents(FiniteSemigroup const& S) {
    std::vector<Element> result;
    for (Element e = 0; e < S.size(); ++e) {
      if (S.product(e, e) == e) {
        result.push_back(e);
      }
    }
    return result;
  }

  inline bool is_idempotent(FiniteSemigroup const& S, Element e) {
    return S.product(e, e) == e;
  }

  //! x^k for k >= 1.
  inline Element power(FiniteSemigroup const& S, Element x, std::size_t k) {
    Element result = x;
    for (std::size_t i = 1; i < k; ++i) {
      result = S.product(result, x);
    }
    return result;
  }

  struct Subsemigroup {
    FiniteSemigroup      semigroup;
    std::vector<Element> embedding;  // sub index -> index in the parent
  };

  //! Least subsemigroup containing `seed` (and closed under inversion when
  //! requested), numbered by closure discovery order from the seed sequence.
  //! Inverses and labels are inherited from S when present.
  inline Subsemigroup subsemigroup(FiniteSemigroup const& S,
                                   std::span<Element const> seed,
                                   bool closed_under_inv) {
    if (seed.empty()) {
      throw BadParameters("subsemigroup needs a nonempty seed");
    }
    std::vector<Element> gens(seed.begin(), seed.end());
    if (closed_under_inv) {
      if (!S.has_inverses()) {
        throw MissingInverses();
      }
      for (Element a : seed) {
        gens.push_back(S.inverse(a));
      }
    }
    auto closure = generate_closure(
        std::span<Element const>(gens),
        [&S](Element a, Element b) { return S.product(a, b); },
        [](Element a) { return a; });

    std::vector<Element> const& emb = closure.elements;
    FiniteSemigroup             sub = std::move(closure.semigroup);
    if (S.has_inverses()) {
      std::vector<Element> position(S.size(), kUndefined);
      for (Element i = 0; i < emb.size(); ++i) {
        position[emb[i]] = i;
      }
      std::vector<Element> inv(emb.size());
      bool                 closed = true;
      for (Element i = 0; i < emb.size(); ++i) {
        inv[i] = position[S.inverse(emb[i])];
        closed = closed && inv[i] != kUndefined;
      }
      if (closed) {
        sub = sub.with_inverses(std::move(inv));
      }
    }
    if (S.has_labels()) {
      std::vector<std::string> labels;
      for (Element a : emb) {
        labels.push_back(S.labels()[a]);
      }
      sub = sub.with_labels(std::move(labels));
    }
    return {std::move(sub), emb};
  }

}  // namespace workbench
