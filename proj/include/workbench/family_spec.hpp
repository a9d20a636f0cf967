#pragma once

// Builds algebras from short textual specs:
//
//   brandt:<orders>:<i>   B_{G,I}, orders like 2 or 2x2 (G = Z_2 x Z_2)
//   group:<orders>        abelian group
//   rook:<t>              rook monoid R_t
//   rook3-restricted      R_3 without the transpositions
//   b2 | b21              Brandt semigroup / monoid of 2x2 matrices
//   sigma7[:bool|nat]     seven Boolean matrices, with + or +_nat
//   kadourek:<n>:<h>      closure of the chi generators and inverses
//   product:<a>,<b>       direct product (split at the first comma)
//   adjoin1:<a>           adjoined identity
//   eunion:<a>            idempotents together with the second ideal S_1
//                         of the principal series
//   file:<path>           Cayley table or ai-semiring text file

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/families.hpp"
#include "workbench/order_semiring.hpp"
#include "workbench/structure.hpp"
#include "workbench/text_format.hpp"

namespace workbench {

  //! A semigroup, optionally with a fixed semiring addition. Without one,
  //! semiring() is the natural semiring, built on first use.
  class Algebra {
   public:
    explicit Algebra(FiniteSemigroup S) : _semigroup(std::move(S)) {}

    Algebra(FiniteSemigroup S, AiSemiring A)
        : _semigroup(std::move(S)), _semiring(std::move(A)), _fixed(true) {}

    [[nodiscard]] FiniteSemigroup const& semigroup() const noexcept {
      return _semigroup;
    }

    [[nodiscard]] bool has_fixed_addition() const noexcept {
      return _fixed;
    }

    [[nodiscard]] AiSemiring const& semiring() const {
      if (!_semiring) {
        _semiring = make_nat_semiring(_semigroup);
      }
      return *_semiring;
    }

   private:
    FiniteSemigroup                   _semigroup;
    mutable std::optional<AiSemiring> _semiring;
    bool                              _fixed = false;
  };

  namespace detail {
    inline long parse_count(std::string const& s, std::string const& spec) {
      std::size_t used = 0;
      long        v    = 0;
      try {
        v = std::stol(s, &used);
      } catch (std::logic_error const&) {
        throw BadSpec("bad number '" + s + "' in spec '" + spec + "'");
      }
      if (used != s.size() || v < 1) {
        throw BadSpec("bad number '" + s + "' in spec '" + spec + "'");
      }
      return v;
    }

    inline std::vector<std::string> split(std::string const& s, char sep) {
      std::vector<std::string> parts;
      std::stringstream        in(s);
      for (std::string part; std::getline(in, part, sep);) {
        parts.push_back(part);
      }
      if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
      }
      return parts;
    }

    inline AbelianGroupSpec parse_orders(std::string const& s, std::string const& spec) {
      AbelianGroupSpec g;
      for (auto const& part : split(s, 'x')) {
        g.cyclic_orders.push_back(static_cast<int>(parse_count(part, spec)));
      }
      if (g.cyclic_orders.empty()) {
        throw BadSpec("missing group orders in spec '" + spec + "'");
      }
      return g;
    }

    inline std::string read_file(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw BadSpec("cannot read '" + path + "'");
      }
      std::ostringstream out;
      out << in.rdbuf();
      return out.str();
    }

    //! Attaches inverses when the table has unique ones.
    inline FiniteSemigroup try_inverses(FiniteSemigroup S) {
      if (S.has_inverses()) {
        return S;
      }
      try {
        return with_computed_inverses(S);
      } catch (NotInverse const&) {
        return S;
      }
    }
  }  // namespace detail

  inline Algebra build_family(std::string const& spec,
                              std::size_t        limit = kDefaultClosureLimit) {
    auto const colon = spec.find(':');
    std::string const head = spec.substr(0, colon);
    std::string const rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto const        args = detail::split(rest, ':');

    auto want_args = [&](std::size_t k) {
      if (args.size() != k || (k == 0 && colon != std::string::npos)) {
        throw BadSpec("spec '" + spec + "' needs " + std::to_string(k) + " argument(s)");
      }
    };

    if (head == "brandt") {
      want_args(2);
      auto G = detail::parse_orders(args[0], spec);
      return Algebra(brandt_semigroup(G, detail::parse_count(args[1], spec)).semigroup);
    }
    if (head == "group") {
      want_args(1);
      return Algebra(abelian_group(detail::parse_orders(args[0], spec)));
    }
    if (head == "rook") {
      want_args(1);
      return Algebra(rook_monoid(static_cast<int>(detail::parse_count(args[0], spec))).semigroup);
    }
    if (head == "rook3-restricted") {
      want_args(0);
      return Algebra(rook_monoid_restricted_3().semigroup);
    }
    if (head == "b2") {
      want_args(0);
      return Algebra(brandt_b2().semigroup);
    }
    if (head == "b21") {
      want_args(0);
      return Algebra(brandt_monoid_b21().semigroup);
    }
    if (head == "sigma7") {
      if (colon != std::string::npos && args.size() != 1) {
        throw BadSpec("spec '" + spec + "' takes at most one argument");
      }
      Sigma7            s       = sigma7();
      std::string const variant = args.empty() ? "nat" : args[0];
      if (variant == "bool") {
        return Algebra(s.reduct.semigroup, s.boolean);
      }
      if (variant == "nat") {
        return Algebra(s.reduct.semigroup, s.natural);
      }
      throw BadSpec("sigma7 addition must be bool or nat");
    }
    if (head == "kadourek") {
      want_args(2);
      return Algebra(kadourek_semigroup(static_cast<int>(detail::parse_count(args[0], spec)),
                                        static_cast<int>(detail::parse_count(args[1], spec)),
                                        limit)
                         .semigroup);
    }
    if (head == "product") {
      auto comma = rest.find(',');
      if (comma == std::string::npos) {
        throw BadSpec("product spec needs two comma-separated factors");
      }
      Algebra a = build_family(rest.substr(0, comma), limit);
      Algebra b = build_family(rest.substr(comma + 1), limit);
      return Algebra(direct_product(a.semigroup(), b.semigroup()));
    }
    if (head == "adjoin1") {
      return Algebra(adjoin_identity(build_family(rest, limit).semigroup()));
    }
    if (head == "eunion") {
      FiniteSemigroup const S      = build_family(rest, limit).semigroup();
      PrincipalSeries const series = principal_series(S);
      if (series.steps.size() < 2) {
        throw BadSpec("eunion needs a principal series with at least two terms");
      }
      std::vector<Element> subset = series.steps[1].ideal;
      for (Element e : idempotents(S)) {
        subset.push_back(e);
      }
      std::sort(subset.begin(), subset.end());
      subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
      FiniteSemigroup sub = detail::restrict(S, subset);
      if (S.has_inverses()) {
        sub = detail::try_inverses(sub);
      }
      return Algebra(std::move(sub));
    }
    if (head == "file") {
      std::string const text = detail::read_file(rest);
      if (is_semiring_text(text)) {
        AiSemiring      A      = parse_semiring(text);
        FiniteSemigroup reduct = detail::try_inverses(A.multiplicative_reduct());
        return Algebra(std::move(reduct), std::move(A));
      }
      return Algebra(detail::try_inverses(parse_cayley(text)));
    }
    throw BadSpec("unknown family '" + head + "'");
  }

}  // namespace workbench
