#pragma once

// Terms over indexed variables: plain words, unary terms (letters with formal
// inverses) and semiring terms; the recursive word families u, v and w; the
// substitutions between them; and evaluation in finite algebras.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/order_semiring.hpp"

namespace workbench {

  //! Longest flat word or term the builders will materialise.
  inline constexpr std::size_t kMaxTermLength = std::size_t(1) << 22;

  ////////////////////////////////////////////////////////////////////////
  // Variables, words and unary terms
  ////////////////////////////////////////////////////////////////////////

  //! Variable x_{i1 i2 ... ih}, written `x[i1,i2,...,ih]`. A variable with an
  //! empty index tuple is a plain named variable such as `y`.
  struct VariableId {
    std::string      stem = "x";
    std::vector<int> indices;

    static VariableId indexed(std::vector<int> idx) {
      return {"x", std::move(idx)};
    }

    static VariableId named(std::string name) {
      return {std::move(name), {}};
    }

    //! Copy with `j` appended to the index tuple.
    [[nodiscard]] VariableId appended(int j) const {
      VariableId result = *this;
      result.indices.push_back(j);
      return result;
    }

    [[nodiscard]] std::string to_string() const {
      if (indices.empty()) {
        return stem;
      }
      std::string out = stem + "[";
      for (std::size_t i = 0; i < indices.size(); ++i) {
        out += (i == 0 ? "" : ",") + std::to_string(indices[i]);
      }
      return out + "]";
    }

    friend auto operator<=>(VariableId const&, VariableId const&) = default;
    friend bool operator==(VariableId const&, VariableId const&)  = default;
  };

  inline VariableId xvar(std::initializer_list<int> idx) {
    return VariableId::indexed(std::vector<int>(idx));
  }

  struct Word {
    std::vector<VariableId> letters;

    [[nodiscard]] std::size_t length() const noexcept {
      return letters.size();
    }
    friend bool operator==(Word const&, Word const&) = default;
  };

  struct Letter {
    VariableId var;
    int        sign = 1;  // +1 or -1

    [[nodiscard]] Letter inverse() const {
      return {var, -sign};
    }
    friend bool operator==(Letter const&, Letter const&) = default;
  };

  //! Term of signature (., ^-1) kept in normal form: a sequence of letters
  //! and formal inverses, with (uv)^-1 = v^-1 u^-1 and (x^-1)^-1 = x applied.
  struct UnaryTerm {
    std::vector<Letter> letters;

    [[nodiscard]] std::size_t length() const noexcept {
      return letters.size();
    }

    [[nodiscard]] UnaryTerm inverse() const {
      UnaryTerm result;
      result.letters.reserve(letters.size());
      for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        result.letters.push_back(it->inverse());
      }
      return result;
    }

    friend bool operator==(UnaryTerm const&, UnaryTerm const&) = default;
  };

  inline UnaryTerm to_unary(Word const& w) {
    UnaryTerm t;
    t.letters.reserve(w.letters.size());
    for (auto const& v : w.letters) {
      t.letters.push_back({v, 1});
    }
    return t;
  }

  namespace detail {
    inline void check_length(std::size_t len) {
      if (len > kMaxTermLength) {
        throw SizeExceeded("term of length " + std::to_string(len)
                           + " exceeds the bound of "
                           + std::to_string(kMaxTermLength));
      }
    }

    template <typename T>
    T concat_impl(T const& a, T const& b) {
      check_length(a.letters.size() + b.letters.size());
      T result = a;
      result.letters.insert(
          result.letters.end(), b.letters.begin(), b.letters.end());
      return result;
    }

    template <typename T>
    T power_impl(T const& a, std::size_t k) {
      if (k == 0) {
        throw BadParameters("power exponent must be at least 1");
      }
      check_length(a.letters.size() * k);
      T result;
      result.letters.reserve(a.letters.size() * k);
      for (std::size_t i = 0; i < k; ++i) {
        result.letters.insert(
            result.letters.end(), a.letters.begin(), a.letters.end());
      }
      return result;
    }
  }  // namespace detail

  inline Word concat(Word const& a, Word const& b) {
    return detail::concat_impl(a, b);
  }
  inline UnaryTerm concat(UnaryTerm const& a, UnaryTerm const& b) {
    return detail::concat_impl(a, b);
  }
  inline Word power(Word const& a, std::size_t k) {
    return detail::power_impl(a, k);
  }
  inline UnaryTerm power(UnaryTerm const& a, std::size_t k) {
    return detail::power_impl(a, k);
  }

  inline std::vector<VariableId> variables(Word const& w) {
    std::set<VariableId> seen(w.letters.begin(), w.letters.end());
    return {seen.begin(), seen.end()};
  }

  inline std::vector<VariableId> variables(UnaryTerm const& t) {
    std::set<VariableId> seen;
    for (auto const& l : t.letters) {
      seen.insert(l.var);
    }
    return {seen.begin(), seen.end()};
  }

  //! Renaming that appends `j` to every index tuple.
  inline Word append_index(Word const& w, int j) {
    Word result;
    result.letters.reserve(w.letters.size());
    for (auto const& v : w.letters) {
      result.letters.push_back(v.appended(j));
    }
    return result;
  }

  inline UnaryTerm append_index(UnaryTerm const& t, int j) {
    UnaryTerm result;
    result.letters.reserve(t.letters.size());
    for (auto const& l : t.letters) {
      result.letters.push_back({l.var.appended(j), l.sign});
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Semiring terms
  ////////////////////////////////////////////////////////////////////////

  //! Binary tree with variable leaves and +/* nodes; immutable, shares
  //! subtrees.
  class SemiringTerm {
   public:
    enum class Kind { variable, plus, times };

    SemiringTerm() : SemiringTerm(variable(VariableId{})) {}

    static SemiringTerm variable(VariableId v) {
      return SemiringTerm(std::make_shared<Node const>(
          Node{Kind::variable, std::move(v), nullptr, nullptr}));
    }

    static SemiringTerm plus(SemiringTerm const& a, SemiringTerm const& b) {
      return SemiringTerm(std::make_shared<Node const>(
          Node{Kind::plus, {}, a._node, b._node}));
    }

    static SemiringTerm times(SemiringTerm const& a, SemiringTerm const& b) {
      return SemiringTerm(std::make_shared<Node const>(
          Node{Kind::times, {}, a._node, b._node}));
    }

    [[nodiscard]] Kind kind() const noexcept {
      return _node->kind;
    }
    [[nodiscard]] VariableId const& var() const noexcept {
      return _node->var;
    }
    [[nodiscard]] SemiringTerm left() const {
      return SemiringTerm(_node->left);
    }
    [[nodiscard]] SemiringTerm right() const {
      return SemiringTerm(_node->right);
    }

    friend bool operator==(SemiringTerm const& a, SemiringTerm const& b) {
      if (a._node == b._node) {
        return true;
      }
      if (a.kind() != b.kind()) {
        return false;
      }
      if (a.kind() == Kind::variable) {
        return a.var() == b.var();
      }
      return a.left() == b.left() && a.right() == b.right();
    }

   private:
    struct Node {
      Kind                        kind;
      VariableId                  var;
      std::shared_ptr<Node const> left;
      std::shared_ptr<Node const> right;
    };

    explicit SemiringTerm(std::shared_ptr<Node const> node)
        : _node(std::move(node)) {}

    std::shared_ptr<Node const> _node;
  };

  inline SemiringTerm operator+(SemiringTerm const& a, SemiringTerm const& b) {
    return SemiringTerm::plus(a, b);
  }

  inline SemiringTerm operator*(SemiringTerm const& a, SemiringTerm const& b) {
    return SemiringTerm::times(a, b);
  }

  namespace detail {
    inline void collect(SemiringTerm const& t, std::set<VariableId>& out) {
      if (t.kind() == SemiringTerm::Kind::variable) {
        out.insert(t.var());
      } else {
        collect(t.left(), out);
        collect(t.right(), out);
      }
    }
  }  // namespace detail

  inline std::vector<VariableId> variables(SemiringTerm const& t) {
    std::set<VariableId> seen;
    detail::collect(t, seen);
    return {seen.begin(), seen.end()};
  }

  ////////////////////////////////////////////////////////////////////////
  // Composed words
  ////////////////////////////////////////////////////////////////////////

  //! A word whose letters may stand for whole subwords: each slot variable of
  //! `outer` is replaced by its body, a further ComposedWord. Outer letters
  //! without a slot are free variables. Bodies must use pairwise disjoint
  //! variable sets, disjoint from the free outer variables too.
  struct ComposedWord {
    struct Slot {
      VariableId                          name;
      std::shared_ptr<ComposedWord const> body;
    };

    Word              outer;
    std::vector<Slot> slots;  // sorted by name

    static ComposedWord leaf(Word w) {
      return {std::move(w), {}};
    }

    [[nodiscard]] bool is_leaf() const noexcept {
      return slots.empty();
    }

    [[nodiscard]] ComposedWord const* slot(VariableId const& v) const {
      auto it = std::lower_bound(
          slots.begin(), slots.end(), v, [](Slot const& s, VariableId const& k) {
            return s.name < k;
          });
      return (it != slots.end() && it->name == v) ? it->body.get() : nullptr;
    }
  };

  namespace detail {
    inline void flatten_into(ComposedWord const& cw, Word& out) {
      for (auto const& v : cw.outer.letters) {
        if (auto const* body = cw.slot(v)) {
          flatten_into(*body, out);
        } else {
          out.letters.push_back(v);
        }
        check_length(out.letters.size());
      }
    }

    inline void free_variables(ComposedWord const&   cw,
                               std::set<VariableId>& out) {
      for (auto const& v : cw.outer.letters) {
        if (cw.slot(v) == nullptr) {
          out.insert(v);
        }
      }
      for (auto const& s : cw.slots) {
        free_variables(*s.body, out);
      }
    }
  }  // namespace detail

  inline Word flatten(ComposedWord const& cw) {
    Word out;
    detail::flatten_into(cw, out);
    return out;
  }

  //! All variables of the flattened word.
  inline std::vector<VariableId> variables(ComposedWord const& cw) {
    std::set<VariableId> seen;
    detail::free_variables(cw, seen);
    return {seen.begin(), seen.end()};
  }

  //! Throws DisjointnessViolated unless the slot bodies and the free outer
  //! letters use pairwise disjoint variables, at every level.
  inline void check_disjointness(ComposedWord const& cw) {
    std::set<VariableId> taken;
    for (auto const& v : cw.outer.letters) {
      if (cw.slot(v) == nullptr) {
        taken.insert(v);
      }
    }
    for (auto const& s : cw.slots) {
      if (s.body == nullptr) {
        throw DisjointnessViolated("slot " + s.name.to_string()
                                   + " has no body");
      }
      check_disjointness(*s.body);
      for (auto const& v : variables(*s.body)) {
        if (!taken.insert(v).second) {
          throw DisjointnessViolated("variable " + v.to_string()
                                     + " occurs in two components");
        }
      }
    }
  }

  //! Appends `j` to every free variable, at every level.
  inline ComposedWord append_index(ComposedWord const& cw, int j) {
    ComposedWord result;
    for (auto const& v : cw.outer.letters) {
      result.outer.letters.push_back(cw.slot(v) ? v : v.appended(j));
    }
    for (auto const& s : cw.slots) {
      result.slots.push_back(
          {s.name, std::make_shared<ComposedWord const>(append_index(*s.body, j))});
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word families
  ////////////////////////////////////////////////////////////////////////

  //! u_{n,k,m} = x1 ... x_{n+k} (x_n ... x_1 x_{n+1} ... x_{n+k})^{2m-1}.
  inline Word build_u(int n, int k, int m) {
    if (n < 0 || k < 0 || n + k == 0 || m < 1) {
      throw BadParameters("u needs n, k >= 0 with n + k > 0 and m >= 1");
    }
    Word prefix;
    Word block;
    for (int i = 1; i <= n + k; ++i) {
      prefix.letters.push_back(xvar({i}));
    }
    for (int i = n; i >= 1; --i) {
      block.letters.push_back(xvar({i}));
    }
    for (int i = n + 1; i <= n + k; ++i) {
      block.letters.push_back(xvar({i}));
    }
    return concat(prefix, power(block, std::size_t(2 * m - 1)));
  }

  //! v_{n,m}^{(h)} as a composed word: level one is u_{n,n,m}; level h
  //! substitutes, for each x_j of u_{n,n,m}, the level h-1 word with j
  //! appended to its indices. Never materialises the flat word.
  inline ComposedWord build_v_composed(int n, int m, int h) {
    if (n < 1 || m < 1 || h < 1) {
      throw BadParameters("v needs n, m, h >= 1");
    }
    Word base = build_u(n, n, m);
    if (h == 1) {
      return ComposedWord::leaf(std::move(base));
    }
    ComposedWord lower = build_v_composed(n, m, h - 1);
    ComposedWord result;
    result.outer = base;
    for (int j = 1; j <= 2 * n; ++j) {
      result.slots.push_back(
          {xvar({j}), std::make_shared<ComposedWord const>(append_index(lower, j))});
    }
    return result;
  }

  //! Flat v_{n,m}^{(h)}; throws SizeExceeded beyond kMaxTermLength letters.
  inline Word build_v(int n, int m, int h) {
    if (n < 1 || m < 1 || h < 1) {
      throw BadParameters("v needs n, m, h >= 1");
    }
    std::size_t length = 1;
    for (int i = 0; i < h; ++i) {
      length *= std::size_t(4) * n * m;
      detail::check_length(length);
    }
    return flatten(build_v_composed(n, m, h));
  }

  //! w_n^{(1)} = x1 ... xn x1^-1 ... xn^-1; w_n^{(h)} concatenates the n
  //! index-appended copies of w_n^{(h-1)} followed by their inverses.
  inline UnaryTerm build_w(int n, int h) {
    if (n < 1 || h < 1) {
      throw BadParameters("w needs n, h >= 1");
    }
    std::size_t length = 1;
    for (int i = 0; i < h; ++i) {
      length *= std::size_t(2) * n;
      detail::check_length(length);
    }
    UnaryTerm result;
    if (h == 1) {
      for (int i = 1; i <= n; ++i) {
        result.letters.push_back({xvar({i}), 1});
      }
      for (int i = 1; i <= n; ++i) {
        result.letters.push_back({xvar({i}), -1});
      }
      return result;
    }
    UnaryTerm lower = build_w(n, h - 1);
    for (int j = 1; j <= n; ++j) {
      result = concat(result, append_index(lower, j));
    }
    for (int j = 1; j <= n; ++j) {
      result = concat(result, append_index(lower, j).inverse());
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Substitution
  ////////////////////////////////////////////////////////////////////////

  template <typename T>
  using Assignment = std::map<VariableId, T>;

  //! Substitution into a word of signature (.) taking values in words.
  inline Word substitute(Word const& w, Assignment<Word> const& assignment) {
    Word result;
    for (auto const& v : w.letters) {
      auto it = assignment.find(v);
      if (it == assignment.end()) {
        throw UnboundVariable(v.to_string());
      }
      auto const& image = it->second.letters;
      detail::check_length(result.letters.size() + image.size());
      result.letters.insert(result.letters.end(), image.begin(), image.end());
    }
    return result;
  }

  //! Homomorphic substitution into a unary term: an inverted letter receives
  //! the inverse of the assigned term.
  inline UnaryTerm substitute(UnaryTerm const&             t,
                              Assignment<UnaryTerm> const& assignment) {
    UnaryTerm result;
    for (auto const& l : t.letters) {
      auto it = assignment.find(l.var);
      if (it == assignment.end()) {
        throw UnboundVariable(l.var.to_string());
      }
      auto const& image = it->second.letters;
      detail::check_length(result.letters.size() + image.size());
      if (l.sign > 0) {
        result.letters.insert(result.letters.end(), image.begin(), image.end());
      } else {
        for (auto r = image.rbegin(); r != image.rend(); ++r) {
          result.letters.push_back(r->inverse());
        }
      }
    }
    return result;
  }

  inline SemiringTerm substitute(SemiringTerm const&             t,
                                 Assignment<SemiringTerm> const& assignment) {
    switch (t.kind()) {
      case SemiringTerm::Kind::variable: {
        auto it = assignment.find(t.var());
        if (it == assignment.end()) {
          throw UnboundVariable(t.var().to_string());
        }
        return it->second;
      }
      case SemiringTerm::Kind::plus:
        return substitute(t.left(), assignment)
               + substitute(t.right(), assignment);
      case SemiringTerm::Kind::times:
        break;
    }
    return substitute(t.left(), assignment) * substitute(t.right(), assignment);
  }

  //! Maps each variable to a single letter or formal inverse.
  using SignedAssignment = Assignment<Letter>;

  inline UnaryTerm substitute(UnaryTerm const&        t,
                              SignedAssignment const& assignment) {
    UnaryTerm result;
    result.letters.reserve(t.letters.size());
    for (auto const& l : t.letters) {
      auto it = assignment.find(l.var);
      if (it == assignment.end()) {
        throw UnboundVariable(l.var.to_string());
      }
      result.letters.push_back({it->second.var, it->second.sign * l.sign});
    }
    return result;
  }

  inline UnaryTerm substitute(Word const& w, SignedAssignment const& assignment) {
    return substitute(to_unary(w), assignment);
  }

  //! The pair of letter-to-letter substitutions from X_{2n}^{(h)} onto the
  //! signed alphabet over X_n^{(h)} that carry v_{n,m}^{(h)} to a term equal
  //! to w_n^{(h)} (first) and to its inverse (second) in every inverse
  //! semigroup.
  inline std::pair<SignedAssignment, SignedAssignment> phi_psi(int n, int h) {
    if (n < 1 || h < 1) {
      throw BadParameters("phi/psi need n, h >= 1");
    }
    SignedAssignment phi;
    SignedAssignment psi;
    if (h == 1) {
      for (int i = 1; i <= n; ++i) {
        phi[xvar({i})]     = {xvar({i}), 1};
        phi[xvar({n + i})] = {xvar({i}), -1};
        psi[xvar({i})]     = {xvar({n + 1 - i}), 1};
        psi[xvar({n + i})] = {xvar({n + 1 - i}), -1};
      }
      return {phi, psi};
    }
    auto [lower_phi, lower_psi] = phi_psi(n, h - 1);
    for (auto const& [var, image] : lower_phi) {
      Letter const& by_psi = lower_psi.at(var);
      for (int last = 1; last <= 2 * n; ++last) {
        VariableId v = var.appended(last);
        if (last <= n) {
          phi[v] = {image.var.appended(last), image.sign};
          psi[v] = {image.var.appended(n + 1 - last), image.sign};
        } else {
          phi[v] = {by_psi.var.appended(last - n), by_psi.sign};
          psi[v] = {by_psi.var.appended(2 * n + 1 - last), by_psi.sign};
        }
      }
    }
    return {phi, psi};
  }

  //! Replaces every a + b by (a b^-1)^p a, bottom-up; products become
  //! concatenation.
  inline UnaryTerm rewrite_plus(SemiringTerm const& t, std::size_t p) {
    if (p == 0) {
      throw BadParameters("rewrite_plus needs p >= 1");
    }
    switch (t.kind()) {
      case SemiringTerm::Kind::variable:
        return UnaryTerm{{{t.var(), 1}}};
      case SemiringTerm::Kind::times:
        return concat(rewrite_plus(t.left(), p), rewrite_plus(t.right(), p));
      case SemiringTerm::Kind::plus:
        break;
    }
    UnaryTerm a = rewrite_plus(t.left(), p);
    UnaryTerm b = rewrite_plus(t.right(), p);
    return concat(power(concat(a, b.inverse()), p), a);
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation
  ////////////////////////////////////////////////////////////////////////

  using Substitution = std::map<VariableId, Element>;

  namespace detail {
    inline Element lookup(Substitution const& tau, VariableId const& v) {
      auto it = tau.find(v);
      if (it == tau.end()) {
        throw UnboundVariable(v.to_string());
      }
      return it->second;
    }
  }  // namespace detail

  //! Left-to-right product of the letter values.
  inline Element evaluate(Word const&            w,
                          FiniteSemigroup const& S,
                          Substitution const&    tau) {
    if (w.letters.empty()) {
      throw BadParameters("cannot evaluate the empty word");
    }
    Element acc = detail::lookup(tau, w.letters.front());
    for (std::size_t i = 1; i < w.letters.size(); ++i) {
      acc = S.product(acc, detail::lookup(tau, w.letters[i]));
    }
    return acc;
  }

  inline Element evaluate(UnaryTerm const&       t,
                          FiniteSemigroup const& S,
                          Substitution const&    tau) {
    if (t.letters.empty()) {
      throw BadParameters("cannot evaluate the empty term");
    }
    if (!S.has_inverses()) {
      throw MissingInverses();
    }
    auto value = [&](Letter const& l) {
      Element a = detail::lookup(tau, l.var);
      return l.sign > 0 ? a : S.inverse(a);
    };
    Element acc = value(t.letters.front());
    for (std::size_t i = 1; i < t.letters.size(); ++i) {
      acc = S.product(acc, value(t.letters[i]));
    }
    return acc;
  }

  inline Element evaluate(SemiringTerm const& t,
                          AiSemiring const&   A,
                          Substitution const& tau) {
    switch (t.kind()) {
      case SemiringTerm::Kind::variable:
        return detail::lookup(tau, t.var());
      case SemiringTerm::Kind::plus:
        return A.sum(evaluate(t.left(), A, tau), evaluate(t.right(), A, tau));
      case SemiringTerm::Kind::times:
        break;
    }
    return A.product(evaluate(t.left(), A, tau), evaluate(t.right(), A, tau));
  }

}  // namespace workbench
