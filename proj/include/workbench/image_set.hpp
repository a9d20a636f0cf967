#pragma once

// Image sets of composed words: the set of values a word takes over all
// substitutions, computed level by level. Because slot bodies use disjoint
// variables, a slot ranges independently over the image set of its body, so
// each level only enumerates tuples of values for its own outer letters.
// Bodies that agree up to renaming of variables are computed once.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "workbench/checker.hpp"
#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/parallel.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  namespace detail {
    struct ImageEntry {
      std::vector<Element> values;  // sorted
      // witness[e] = least tuple (first-appearance order of the outer
      // letters) producing e; empty when e is not in the image
      std::vector<std::vector<Element>> witness;
    };

    struct ImageCache {
      std::unordered_map<std::string, ImageEntry>          entries;
      std::unordered_map<ComposedWord const*, std::string> keys;
      std::uint64_t                                        evaluations = 0;
    };

    //! Distinct outer letters in order of first appearance.
    inline std::vector<VariableId> local_variables(ComposedWord const& cw) {
      std::vector<VariableId> result;
      for (auto const& v : cw.outer.letters) {
        if (std::find(result.begin(), result.end(), v) == result.end()) {
          result.push_back(v);
        }
      }
      return result;
    }

    //! Structure of `cw` with variables replaced by first-appearance
    //! positions; equal keys mean equal image sets and witnesses.
    inline std::string const& canonical_key(ComposedWord const& cw, ImageCache& cache) {
      if (auto it = cache.keys.find(&cw); it != cache.keys.end()) {
        return it->second;
      }
      auto const  locals = local_variables(cw);
      std::string key    = "(";
      for (auto const& v : cw.outer.letters) {
        auto pos = std::find(locals.begin(), locals.end(), v) - locals.begin();
        key += (cw.slot(v) ? "s" : "v") + std::to_string(pos) + " ";
      }
      key += ")";
      for (auto const& v : locals) {
        if (auto const* body = cw.slot(v)) {
          key += canonical_key(*body, cache);
        }
      }
      return cache.keys.emplace(&cw, std::move(key)).first->second;
    }

    inline ImageEntry const& image_entry(FiniteSemigroup const& S,
                                         ComposedWord const&    cw,
                                         ImageCache&            cache,
                                         std::uint64_t          budget,
                                         std::size_t            workers) {
      std::string const& key = canonical_key(cw, cache);
      if (auto it = cache.entries.find(key); it != cache.entries.end()) {
        return it->second;
      }
      std::size_t const n      = S.size();
      auto const        locals = local_variables(cw);
      std::size_t const k      = locals.size();

      std::vector<std::vector<Element>> ranges(k);
      std::uint64_t                     total = 1;
      for (std::size_t i = 0; i < k; ++i) {
        if (auto const* body = cw.slot(locals[i])) {
          ranges[i] = image_entry(S, *body, cache, budget, workers).values;
        } else {
          ranges[i].resize(n);
          for (Element e = 0; e < n; ++e) {
            ranges[i][e] = e;
          }
        }
        if (total > std::numeric_limits<std::uint64_t>::max() / ranges[i].size()) {
          total = std::numeric_limits<std::uint64_t>::max();
        } else {
          total *= ranges[i].size();
        }
      }
      if (total > budget) {
        throw BudgetExceeded(total, budget);
      }
      std::vector<std::size_t> program;
      for (auto const& v : cw.outer.letters) {
        program.push_back(static_cast<std::size_t>(
            std::find(locals.begin(), locals.end(), v) - locals.begin()));
      }

      auto decode = [&](std::uint64_t index, std::vector<std::size_t>& digits) {
        for (std::size_t i = k; i-- > 0;) {
          digits[i] = static_cast<std::size_t>(index % ranges[i].size());
          index /= ranges[i].size();
        }
      };

      if (workers == 0) {
        workers = worker_count();
      }
      constexpr std::uint64_t                 kNone = std::numeric_limits<std::uint64_t>::max();
      std::vector<std::vector<std::uint64_t>> best(workers, std::vector<std::uint64_t>(n, kNone));
      parallel_for_chunks(total, workers, [&](std::uint64_t begin, std::uint64_t end, std::size_t w) {
        std::vector<std::size_t> digits(k);
        std::vector<Element>     values(k);
        decode(begin, digits);
        for (std::size_t i = 0; i < k; ++i) {
          values[i] = ranges[i][digits[i]];
        }
        auto& mine = best[w];
        for (std::uint64_t idx = begin; idx < end; ++idx) {
          Element acc = values[program[0]];
          for (std::size_t p = 1; p < program.size(); ++p) {
            acc = S.product(acc, values[program[p]]);
          }
          mine[acc] = std::min(mine[acc], idx);
          for (std::size_t i = k; i-- > 0;) {
            if (++digits[i] < ranges[i].size()) {
              values[i] = ranges[i][digits[i]];
              break;
            }
            digits[i] = 0;
            values[i] = ranges[i][0];
          }
        }
      });
      cache.evaluations += total;

      ImageEntry               entry;
      std::vector<std::size_t> digits(k);
      entry.witness.resize(n);
      for (Element e = 0; e < n; ++e) {
        std::uint64_t least = kNone;
        for (auto const& mine : best) {
          least = std::min(least, mine[e]);
        }
        if (least == kNone) {
          continue;
        }
        entry.values.push_back(e);
        decode(least, digits);
        for (std::size_t i = 0; i < k; ++i) {
          entry.witness[e].push_back(ranges[i][digits[i]]);
        }
      }
      return cache.entries.emplace(key, std::move(entry)).first->second;
    }

    inline void reconstruct(ComposedWord const& cw,
                            Element             value,
                            ImageCache&         cache,
                            Substitution&       out) {
      ImageEntry const& entry  = cache.entries.at(canonical_key(cw, cache));
      auto const        locals = local_variables(cw);
      auto const&       tuple  = entry.witness.at(value);
      for (std::size_t i = 0; i < locals.size(); ++i) {
        if (auto const* body = cw.slot(locals[i])) {
          reconstruct(*body, tuple[i], cache, out);
        } else {
          out[locals[i]] = tuple[i];
        }
      }
    }
  }  // namespace detail

  //! Image of a composed word in S, with a witness substitution for every
  //! value.
  class ImageSet {
   public:
    ImageSet(FiniteSemigroup const& S,
             ComposedWord           cw,
             std::uint64_t          budget  = kDefaultBudget,
             std::size_t            workers = 0)
        : _cw(std::make_shared<ComposedWord const>(std::move(cw))),
          _cache(std::make_shared<detail::ImageCache>()) {
      check_disjointness(*_cw);
      if (_cw->outer.letters.empty()) {
        throw BadParameters("cannot take the image of the empty word");
      }
      _values = detail::image_entry(S, *_cw, *_cache, budget, workers).values;
    }

    [[nodiscard]] std::vector<Element> const& values() const noexcept {
      return _values;
    }

    [[nodiscard]] bool contains(Element e) const {
      return std::binary_search(_values.begin(), _values.end(), e);
    }

    //! Number of outer-word evaluations performed over all levels.
    [[nodiscard]] std::uint64_t evaluations() const noexcept {
      return _cache->evaluations;
    }

    //! A substitution of the flattened word's variables with value `e`.
    [[nodiscard]] Substitution witness(Element e) const {
      if (!contains(e)) {
        throw BadParameters("element " + std::to_string(e) + " is not in the image");
      }
      Substitution out;
      detail::reconstruct(*_cw, e, *_cache, out);
      return out;
    }

   private:
    std::shared_ptr<ComposedWord const> _cw;
    std::shared_ptr<detail::ImageCache> _cache;
    std::vector<Element>                _values;
  };

  inline ImageSet image_set(FiniteSemigroup const& S,
                            ComposedWord const&    cw,
                            std::uint64_t          budget  = kDefaultBudget,
                            std::size_t            workers = 0) {
    return ImageSet(S, cw, budget, workers);
  }

  //! Report for cw = cw^2: holds iff every image value is idempotent. A
  //! failure carries a witness for the least non-idempotent value;
  //! substitutions_checked counts the evaluations performed.
  inline IdentityReport check_idempotent_image(FiniteSemigroup const& S,
                                               ComposedWord const&    cw,
                                               std::uint64_t          budget  = kDefaultBudget,
                                               std::size_t            workers = 0) {
    ImageSet const image(S, cw, budget, workers);
    IdentityReport report;
    report.substitutions_checked = image.evaluations();
    for (Element e : image.values()) {
      if (S.product(e, e) != e) {
        Substitution   tau = image.witness(e);
        Counterexample cex;
        cex.substitution.assign(tau.begin(), tau.end());
        cex.lhs               = e;
        cex.rhs               = S.product(e, e);
        report.verdict        = Verdict::fails;
        report.counterexample = std::move(cex);
        return report;
      }
    }
    report.verdict = Verdict::holds;
    return report;
  }

}  // namespace workbench
