#pragma once

// J-classes, principal series, Rees quotients, maximal subgroups and the
// recognition of (h,m)-semigroups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"

namespace workbench {

  //! Partition into J-classes. Classes are sorted internally and ordered by
  //! their least element.
  struct JClasses {
    std::vector<std::vector<Element>> classes;
    std::vector<std::size_t>          class_of;
    // below[c][d]: the ideal generated by class d lies inside that of c
    std::vector<std::vector<bool>> below;

    [[nodiscard]] std::size_t size() const noexcept {
      return classes.size();
    }
  };

  //! a J b iff S^1 a S^1 = S^1 b S^1, found as the strongly connected
  //! components of the graph with edges a -> as and a -> sa.
  inline JClasses j_classes(FiniteSemigroup const& S) {
    std::size_t const n = S.size();
    // iterative Tarjan; neighbour k < n is a * k, k >= n is (k - n) * a
    constexpr std::size_t    kUnvisited = SIZE_MAX;
    std::vector<std::size_t> index(n, kUnvisited);
    std::vector<std::size_t> low(n, 0);
    std::vector<bool>        on_stack(n, false);
    std::vector<Element>     stack;
    std::vector<std::size_t> component(n, kUnvisited);
    std::size_t              counter    = 0;
    std::size_t              components = 0;

    struct Frame {
      Element     v;
      std::size_t next;
    };
    std::vector<Frame> call;
    auto neighbour = [&](Element v, std::size_t k) {
      return k < n ? S.product(v, static_cast<Element>(k))
                   : S.product(static_cast<Element>(k - n), v);
    };
    for (Element root = 0; root < n; ++root) {
      if (index[root] != kUnvisited) {
        continue;
      }
      call.push_back({root, 0});
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        Frame& f = call.back();
        if (f.next < 2 * n) {
          Element w = neighbour(f.v, f.next++);
          if (index[w] == kUnvisited) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[f.v] = std::min(low[f.v], index[w]);
          }
          continue;
        }
        Element v = f.v;
        call.pop_back();
        if (!call.empty()) {
          low[call.back().v] = std::min(low[call.back().v], low[v]);
        }
        if (low[v] == index[v]) {
          Element w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w]  = false;
            component[w] = components;
          } while (w != v);
          ++components;
        }
      }
    }

    // Renumber by least element.
    std::vector<std::size_t> rename(components, kUnvisited);
    JClasses                 result;
    result.class_of.resize(n);
    for (Element a = 0; a < n; ++a) {
      if (rename[component[a]] == kUnvisited) {
        rename[component[a]] = result.classes.size();
        result.classes.emplace_back();
      }
      result.class_of[a] = rename[component[a]];
      result.classes[result.class_of[a]].push_back(a);
    }

    // Tarjan numbers components sinks first, so component order is a
    // topological order of the reversed reachability relation.
    std::size_t const                 k = result.classes.size();
    std::vector<std::vector<bool>>    below(k, std::vector<bool>(k, false));
    std::vector<std::vector<Element>> by_component(components);
    for (Element a = 0; a < n; ++a) {
      by_component[component[a]].push_back(a);
    }
    for (std::size_t c = 0; c < components; ++c) {
      std::size_t const cls = rename[c];
      below[cls][cls]       = true;
      for (Element a : by_component[c]) {
        for (std::size_t s = 0; s < 2 * n; ++s) {
          std::size_t d = result.class_of[neighbour(a, s)];
          if (d != cls && !below[cls][d]) {
            for (std::size_t e = 0; e < k; ++e) {
              if (below[d][e]) {
                below[cls][e] = true;
              }
            }
          }
        }
      }
    }
    result.below = std::move(below);
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Factor classification
  ////////////////////////////////////////////////////////////////////////

  struct FactorTag {
    enum class Kind { group, brandt, other };
    Kind          kind        = Kind::other;
    bool          abelian     = false;
    std::uint64_t exponent    = 0;
    std::size_t   group_order = 0;
    std::size_t   index_size  = 0;

    [[nodiscard]] std::string to_string() const {
      std::string const ab = abelian ? "abelian" : "non-abelian";
      switch (kind) {
        case Kind::group:
          return "group(" + ab + ",order=" + std::to_string(group_order)
                 + ",exponent=" + std::to_string(exponent) + ")";
        case Kind::brandt:
          return "brandt(" + ab + ",order=" + std::to_string(group_order)
                 + ",exponent=" + std::to_string(exponent)
                 + ",index=" + std::to_string(index_size) + ")";
        case Kind::other:
          break;
      }
      return "other";
    }

    friend auto operator<=>(FactorTag const&, FactorTag const&) = default;
  };

  namespace detail {
    inline bool is_group(FiniteSemigroup const& F) {
      auto e = F.identity();
      if (!e) {
        return false;
      }
      for (Element a = 0; a < F.size(); ++a) {
        auto row = F.row(a);
        if (std::find(row.begin(), row.end(), *e) == row.end()) {
          return false;
        }
      }
      return true;
    }

    inline bool is_commutative(FiniteSemigroup const& F) {
      for (Element a = 0; a < F.size(); ++a) {
        for (Element b = a + 1; b < F.size(); ++b) {
          if (F.product(a, b) != F.product(b, a)) {
            return false;
          }
        }
      }
      return true;
    }

    //! lcm of element orders of a group.
    inline std::uint64_t group_exponent(FiniteSemigroup const& G) {
      Element const e      = *G.identity();
      std::uint64_t result = 1;
      for (Element g = 0; g < G.size(); ++g) {
        std::uint64_t order = 1;
        for (Element x = g; x != e; x = G.product(x, g)) {
          ++order;
        }
        result = std::lcm(result, order);
      }
      return result;
    }

    inline FactorTag group_tag(FiniteSemigroup const& G) {
      FactorTag t;
      t.kind        = FactorTag::Kind::group;
      t.abelian     = is_commutative(G);
      t.exponent    = group_exponent(G);
      t.group_order = G.size();
      return t;
    }

    //! Table restricted to a subset closed under the product, indexed by
    //! position in `subset`.
    inline FiniteSemigroup restrict(FiniteSemigroup const&      S,
                                    std::vector<Element> const& subset) {
      std::vector<Element> position(S.size(), kUndefined);
      for (Element i = 0; i < subset.size(); ++i) {
        position[subset[i]] = i;
      }
      std::size_t const    m = subset.size();
      std::vector<Element> mul(m * m);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          Element p = position[S.product(subset[a], subset[b])];
          if (p == kUndefined) {
            throw BadParameters("subset is not closed under the product");
          }
          mul[a * m + b] = p;
        }
      }
      std::vector<std::string> labels;
      for (Element a : subset) {
        labels.push_back(S.label(a));
      }
      return FiniteSemigroup(m, std::move(mul)).with_labels(std::move(labels));
    }
  }  // namespace detail

  //! Group of units of eSe, with its embedding into S.
  inline Subsemigroup maximal_subgroup(FiniteSemigroup const& S, Element e) {
    if (!is_idempotent(S, e)) {
      throw NotIdempotent(e);
    }
    std::vector<Element> local;
    for (Element a = 0; a < S.size(); ++a) {
      if (S.product(S.product(e, a), e) == a) {
        local.push_back(a);
      }
    }
    std::vector<Element> units;
    for (Element a : local) {
      bool left  = false;
      bool right = false;
      for (Element b : local) {
        left  = left || S.product(b, a) == e;
        right = right || S.product(a, b) == e;
      }
      if (left && right) {
        units.push_back(a);
      }
    }
    return {detail::restrict(S, units), units};
  }

  inline bool is_combinatorial(FiniteSemigroup const& S) {
    for (Element e : idempotents(S)) {
      if (maximal_subgroup(S, e).semigroup.size() != 1) {
        return false;
      }
    }
    return true;
  }

  //! Group if F is a group; Brandt over a group if F is an inverse
  //! 0-simple semigroup, proven by rebuilding F as B_{G,I} coordinate by
  //! coordinate; Other otherwise.
  //!
  //! Throws UnrecognizedFactor if F is inverse and 0-simple but the
  //! reconstruction does not reproduce its table.
  inline FactorTag classify_factor(FiniteSemigroup const& F) {
    if (detail::is_group(F)) {
      return detail::group_tag(F);
    }
    auto zero = F.zero();
    if (!zero) {
      return {};
    }
    std::vector<Element> inv;
    try {
      inv = F.has_inverses() ? F.inverses() : compute_inverses(F);
    } catch (NotInverse const&) {
      return {};
    }
    std::vector<Element> idem;
    for (Element e : idempotents(F)) {
      if (e != *zero) {
        idem.push_back(e);
      }
    }
    if (idem.empty()) {
      return {};
    }
    // 0-simple: every nonzero element generates F as a two-sided ideal.
    JClasses const jc = j_classes(F);
    if (jc.size() != 2) {
      return {};
    }

    std::size_t const    i_size = idem.size();
    Element const        e0     = idem.front();
    std::vector<Element> h_class;
    for (Element a = 0; a < F.size(); ++a) {
      if (a != *zero && F.product(a, inv[a]) == e0 && F.product(inv[a], a) == e0) {
        h_class.push_back(a);
      }
    }
    std::size_t const order = h_class.size();
    if (F.size() != i_size * i_size * order + 1) {
      throw UnrecognizedFactor("inverse 0-simple factor of size " + std::to_string(F.size())
                               + " does not have the size of a Brandt semigroup");
    }
    auto idem_index = [&](Element e) -> std::size_t {
      auto it = std::find(idem.begin(), idem.end(), e);
      if (it == idem.end()) {
        throw UnrecognizedFactor("element is not a nonzero idempotent");
      }
      return static_cast<std::size_t>(it - idem.begin());
    };
    // connector[i]: p with p p^-1 = e_i and p^-1 p = e0
    std::vector<Element> connector(i_size, kUndefined);
    for (Element a = 0; a < F.size(); ++a) {
      if (a == *zero || F.product(inv[a], a) != e0) {
        continue;
      }
      std::size_t i = idem_index(F.product(a, inv[a]));
      if (connector[i] == kUndefined) {
        connector[i] = a;
      }
    }
    if (std::find(connector.begin(), connector.end(), kUndefined) != connector.end()) {
      throw UnrecognizedFactor("some idempotent is not D-related to the first one");
    }

    FiniteSemigroup const G = detail::restrict(F, h_class);
    auto const            B = brandt_over_group(G, i_size);
    std::vector<Element>  to_brandt(F.size(), kUndefined);
    std::vector<bool>     hit(F.size(), false);
    for (Element a = 0; a < F.size(); ++a) {
      Element image = 0;
      if (a != *zero) {
        std::size_t l = idem_index(F.product(a, inv[a]));
        std::size_t r = idem_index(F.product(inv[a], a));
        Element     g = F.product(F.product(inv[connector[l]], a), connector[r]);
        auto        it = std::find(h_class.begin(), h_class.end(), g);
        if (it == h_class.end()) {
          throw UnrecognizedFactor("group coordinate left the maximal subgroup");
        }
        auto gi = static_cast<std::size_t>(it - h_class.begin());
        image   = static_cast<Element>(1 + (l * order + gi) * i_size + r);
      }
      if (hit[image]) {
        throw UnrecognizedFactor("coordinates are not injective");
      }
      hit[image]   = true;
      to_brandt[a] = image;
    }
    for (Element a = 0; a < F.size(); ++a) {
      for (Element b = 0; b < F.size(); ++b) {
        if (to_brandt[F.product(a, b)]
            != B.semigroup.product(to_brandt[a], to_brandt[b])) {
          throw UnrecognizedFactor("reconstructed Brandt table differs at ("
                                   + std::to_string(a) + "," + std::to_string(b) + ")");
        }
      }
    }
    FactorTag t  = detail::group_tag(G);
    t.kind       = FactorTag::Kind::brandt;
    t.index_size = i_size;
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Principal series
  ////////////////////////////////////////////////////////////////////////

  struct SeriesStep {
    std::vector<Element> ideal;    // S_j, sorted
    std::vector<Element> j_class;  // S_j \ S_{j-1}, sorted
    //! S_0 itself for j = 0, else the Rees quotient S_j / S_{j-1}: the
    //! class elements in order followed by the zero.
    FiniteSemigroup factor;
    FactorTag       tag;
  };

  struct PrincipalSeries {
    std::vector<SeriesStep> steps;

    //! Number of steps above S_0.
    [[nodiscard]] std::size_t h() const noexcept {
      return steps.size() - 1;
    }
  };

  //! Ranks candidate J-classes when several are minimal; lower first.
  using TieBreak = std::function<std::size_t(std::vector<Element> const&)>;

  inline FiniteSemigroup rees_factor(FiniteSemigroup const&      S,
                                     std::vector<Element> const& j_class) {
    std::size_t const    m    = j_class.size() + 1;
    auto const           zero = static_cast<Element>(j_class.size());
    std::vector<Element> position(S.size(), zero);
    for (Element i = 0; i < j_class.size(); ++i) {
      position[j_class[i]] = i;
    }
    std::vector<Element> mul(m * m, zero);
    for (Element a = 0; a < zero; ++a) {
      for (Element b = 0; b < zero; ++b) {
        mul[std::size_t(a) * m + b] = position[S.product(j_class[a], j_class[b])];
      }
    }
    std::vector<std::string> labels;
    for (Element a : j_class) {
      labels.push_back(S.label(a));
    }
    labels.push_back("0");
    FiniteSemigroup F = FiniteSemigroup(m, std::move(mul)).with_labels(std::move(labels));
    if (S.has_inverses()) {
      std::vector<Element> inv(m, zero);
      bool                 closed = true;
      for (Element a = 0; a < zero; ++a) {
        inv[a] = position[S.inverse(j_class[a])];
        closed = closed && inv[a] != zero;
      }
      if (closed) {
        F = F.with_inverses(std::move(inv));
      }
    }
    return F;
  }

  //! Maximal chain of ideals S_0 (the kernel) = ... = S, adding one minimal
  //! remaining J-class at a time; ties go to the class with the least
  //! element unless `tie_break` says otherwise.
  inline PrincipalSeries principal_series(FiniteSemigroup const& S,
                                          TieBreak const&        tie_break = {}) {
    JClasses const    jc = j_classes(S);
    std::size_t const k  = jc.size();
    std::vector<bool> taken(k, false);
    PrincipalSeries   series;
    std::vector<Element> ideal;
    for (std::size_t step = 0; step < k; ++step) {
      std::optional<std::size_t> choice;
      for (std::size_t c = 0; c < k; ++c) {
        if (taken[c]) {
          continue;
        }
        bool minimal = true;
        for (std::size_t d = 0; d < k && minimal; ++d) {
          minimal = d == c || taken[d] || !jc.below[c][d];
        }
        if (!minimal) {
          continue;
        }
        if (!choice
            || (tie_break && tie_break(jc.classes[c]) < tie_break(jc.classes[*choice]))) {
          choice = c;
        }
      }
      taken[*choice] = true;
      auto const& cls = jc.classes[*choice];
      ideal.insert(ideal.end(), cls.begin(), cls.end());
      std::sort(ideal.begin(), ideal.end());
      SeriesStep s;
      s.ideal   = ideal;
      s.j_class = cls;
      if (step == 0) {
        s.factor = detail::restrict(S, cls);
        if (S.has_inverses()) {
          std::vector<Element> inv;
          for (Element a : cls) {
            inv.push_back(static_cast<Element>(
                std::find(cls.begin(), cls.end(), S.inverse(a)) - cls.begin()));
          }
          s.factor = s.factor.with_inverses(std::move(inv));
        }
      } else {
        s.factor = rees_factor(S, cls);
      }
      s.tag = classify_factor(s.factor);
      series.steps.push_back(std::move(s));
    }
    return series;
  }

  struct HmClassification {
    bool                   is_hm = false;
    std::size_t            h     = 0;
    std::uint64_t          m     = 1;
    std::vector<FactorTag> tags;

    [[nodiscard]] std::string to_string() const {
      if (!is_hm) {
        return "not-hm";
      }
      return std::to_string(h) + "," + std::to_string(m);
    }
  };

  //! S is an (h,m)-semigroup when S_0 is an abelian group and every factor
  //! is Brandt over an abelian group; m is the lcm of the group exponents.
  inline HmClassification classify_hm(PrincipalSeries const& series) {
    HmClassification result;
    result.h     = series.h();
    result.is_hm = true;
    for (std::size_t j = 0; j < series.steps.size(); ++j) {
      FactorTag const& t = series.steps[j].tag;
      result.tags.push_back(t);
      auto const wanted = j == 0 ? FactorTag::Kind::group : FactorTag::Kind::brandt;
      if (t.kind != wanted || !t.abelian) {
        result.is_hm = false;
      }
      if (t.kind != FactorTag::Kind::other) {
        result.m = std::lcm(result.m, t.exponent);
      }
    }
    return result;
  }

  inline HmClassification classify_hm(FiniteSemigroup const& S) {
    return classify_hm(principal_series(S));
  }

  //! One `S_j size=<k> factor=<tag>` line per step and a final
  //! `(h,m)=<h>,<m>|not-hm` line.
  inline std::string format_analysis(FiniteSemigroup const& S) {
    PrincipalSeries const series = principal_series(S);
    std::string           out;
    for (std::size_t j = 0; j < series.steps.size(); ++j) {
      auto const& s = series.steps[j];
      out += "S_" + std::to_string(j) + " size=" + std::to_string(s.ideal.size())
             + " factor=" + s.tag.to_string() + "\n";
    }
    return out + "(h,m)=" + classify_hm(series).to_string() + "\n";
  }

}  // namespace workbench
