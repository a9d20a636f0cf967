#pragma once

// Identity checking in finite algebras: exhaustive search over all
// substitutions, seeded sampling, and verification of a given substitution.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/order_semiring.hpp"
#include "workbench/parallel.hpp"
#include "workbench/term_parser.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  inline constexpr std::uint64_t kDefaultBudget = 100'000'000;
  inline constexpr std::uint64_t kDefaultTrials = 1'000'000;

  enum class Verdict { holds, holds_sampled, fails };

  inline std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::holds:
        return "holds";
      case Verdict::holds_sampled:
        return "holds-sampled";
      case Verdict::fails:
        break;
    }
    return "fails";
  }

  struct Counterexample {
    std::vector<std::pair<VariableId, Element>> substitution;  // sorted
    Element                                     lhs = 0;
    Element                                     rhs = 0;

    [[nodiscard]] Substitution as_map() const {
      return {substitution.begin(), substitution.end()};
    }
  };

  struct IdentityReport {
    Verdict                       verdict = Verdict::holds;
    std::optional<Counterexample> counterexample;
    std::uint64_t                 substitutions_checked = 0;

    [[nodiscard]] bool holds() const noexcept {
      return verdict != Verdict::fails;
    }
  };

  //! `VERDICT <v> CHECKED <n> CEX <var=elem,...>|none`.
  inline std::string machine_line(IdentityReport const& r) {
    std::string out = "VERDICT " + to_string(r.verdict) + " CHECKED "
                      + std::to_string(r.substitutions_checked) + " CEX ";
    if (!r.counterexample) {
      return out + "none";
    }
    bool first = true;
    for (auto const& [v, e] : r.counterexample->substitution) {
      out += (first ? "" : ",") + v.to_string() + "=" + std::to_string(e);
      first = false;
    }
    return out;
  }

  enum class Mode { exhaustive, sampled, witness };

  struct CheckOptions {
    Mode          mode   = Mode::exhaustive;
    std::uint64_t budget = kDefaultBudget;
    std::uint64_t trials = kDefaultTrials;
    //! Required in sampled mode.
    std::optional<std::uint64_t> seed;
    //! Required in witness mode.
    Substitution witness;
    //! 0 selects worker_count().
    std::size_t workers = 0;
  };

  namespace detail {
    //! A term compiled against a variable numbering: a straight-line
    //! product of (slot, inverted) letters, or a postfix program for
    //! semiring trees.
    class CompiledTerm {
     public:
      CompiledTerm(Word const& w, std::map<VariableId, std::size_t> const& slots) {
        for (auto const& v : w.letters) {
          _letters.push_back({slots.at(v), false});
        }
      }

      CompiledTerm(UnaryTerm const& t, std::map<VariableId, std::size_t> const& slots) {
        for (auto const& l : t.letters) {
          _letters.push_back({slots.at(l.var), l.sign < 0});
        }
      }

      CompiledTerm(SemiringTerm const& t, std::map<VariableId, std::size_t> const& slots)
          : _tree(true) {
        emit(t, slots);
      }

      template <typename Algebra>
      [[nodiscard]] Element eval(Algebra const& A, Element const* values) const {
        if (!_tree) {
          Element acc = value(A, _letters[0], values);
          for (std::size_t i = 1; i < _letters.size(); ++i) {
            acc = A.product(acc, value(A, _letters[i], values));
          }
          return acc;
        }
        thread_local std::vector<Element> stack;
        stack.clear();
        for (Op const& op : _program) {
          if (op.code == Code::push) {
            stack.push_back(values[op.slot]);
            continue;
          }
          Element b = stack.back();
          stack.pop_back();
          Element a = stack.back();
          if constexpr (requires { A.sum(a, b); }) {
            stack.back() = op.code == Code::add ? A.sum(a, b) : A.product(a, b);
          } else {
            stack.back() = A.product(a, b);
          }
        }
        return stack.back();
      }

     private:
      struct SignedSlot {
        std::size_t slot;
        bool        inverted;
      };
      enum class Code { push, add, mul };
      struct Op {
        Code        code;
        std::size_t slot;
      };

      template <typename Algebra>
      static Element value(Algebra const& A, SignedSlot s, Element const* values) {
        if constexpr (requires { A.inverse(Element{}); }) {
          return s.inverted ? A.inverse(values[s.slot]) : values[s.slot];
        } else {
          return values[s.slot];
        }
      }

      void emit(SemiringTerm const& t, std::map<VariableId, std::size_t> const& slots) {
        switch (t.kind()) {
          case SemiringTerm::Kind::variable:
            _program.push_back({Code::push, slots.at(t.var())});
            return;
          case SemiringTerm::Kind::plus:
            emit(t.left(), slots);
            emit(t.right(), slots);
            _program.push_back({Code::add, 0});
            return;
          case SemiringTerm::Kind::times:
            emit(t.left(), slots);
            emit(t.right(), slots);
            _program.push_back({Code::mul, 0});
            return;
        }
      }

      bool                    _tree = false;
      std::vector<SignedSlot> _letters;
      std::vector<Op>         _program;
    };

    inline std::uint64_t saturating_power(std::uint64_t base, std::size_t exp) {
      std::uint64_t result = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
          return std::numeric_limits<std::uint64_t>::max();
        }
        result *= base;
      }
      return result;
    }

    //! Mixed-radix digits of `index`, most significant first.
    inline void decode(std::uint64_t index, std::size_t n, std::vector<Element>& digits) {
      for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = static_cast<Element>(index % n);
        index /= n;
      }
    }

    inline void increment(std::size_t n, std::vector<Element>& digits) {
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < n) {
          return;
        }
        digits[i] = 0;
      }
    }

    inline constexpr std::uint64_t kSampleChunk = 1024;

    //! Fills `digits` for trial `trial` of the sampled search. Trials are
    //! grouped into fixed chunks, each with its own generator seeded from
    //! (seed, chunk), so the sequence does not depend on the worker count.
    class TrialSource {
     public:
      TrialSource(std::uint64_t seed, std::size_t n) : _seed(seed), _dist(0, n - 1) {}

      void start_chunk(std::uint64_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(_seed),
                          static_cast<std::uint32_t>(_seed >> 32),
                          static_cast<std::uint32_t>(chunk),
                          static_cast<std::uint32_t>(chunk >> 32)};
        _rng.seed(seq);
      }

      void next(std::vector<Element>& digits) {
        for (auto& d : digits) {
          d = static_cast<Element>(_dist(_rng));
        }
      }

     private:
      std::uint64_t                              _seed;
      std::mt19937_64                            _rng;
      std::uniform_int_distribution<std::size_t> _dist;
    };

    template <typename Algebra>
    IdentityReport run_check(Algebra const&                 A,
                             CompiledTerm const&            lhs,
                             CompiledTerm const&            rhs,
                             std::vector<VariableId> const& vars,
                             CheckOptions const&            opts) {
      std::size_t const n = A.size();
      std::size_t const k = vars.size();

      auto make_report = [&](std::vector<Element> const& digits, std::uint64_t checked) {
        IdentityReport r;
        r.verdict               = Verdict::fails;
        r.substitutions_checked = checked;
        Counterexample cex;
        for (std::size_t i = 0; i < k; ++i) {
          cex.substitution.emplace_back(vars[i], digits[i]);
        }
        cex.lhs           = lhs.eval(A, digits.data());
        cex.rhs           = rhs.eval(A, digits.data());
        r.counterexample  = std::move(cex);
        return r;
      };

      if (opts.mode == Mode::witness) {
        std::vector<Element> digits(k);
        for (std::size_t i = 0; i < k; ++i) {
          auto it = opts.witness.find(vars[i]);
          if (it == opts.witness.end()) {
            throw UnboundVariable(vars[i].to_string());
          }
          if (it->second >= n) {
            throw BadParameters("witness value out of range for "
                                + vars[i].to_string());
          }
          digits[i] = it->second;
        }
        if (lhs.eval(A, digits.data()) != rhs.eval(A, digits.data())) {
          return make_report(digits, 1);
        }
        return {Verdict::holds_sampled, std::nullopt, 1};
      }

      if (opts.mode == Mode::sampled) {
        if (!opts.seed) {
          throw BadParameters("sampled mode requires a seed");
        }
        std::uint64_t const trials = opts.trials;
        std::uint64_t const seed   = *opts.seed;
        auto hit = parallel_find_first(
            trials,
            [&](std::uint64_t begin, std::uint64_t) -> std::optional<std::uint64_t> {
              TrialSource          source(seed, n);
              std::vector<Element> digits(k);
              source.start_chunk(begin / kSampleChunk);
              for (std::uint64_t t = begin; t < std::min(trials, begin + kSampleChunk); ++t) {
                source.next(digits);
                if (lhs.eval(A, digits.data()) != rhs.eval(A, digits.data())) {
                  return t;
                }
              }
              return std::nullopt;
            },
            opts.workers,
            kSampleChunk);
        if (!hit) {
          return {Verdict::holds_sampled, std::nullopt, trials};
        }
        TrialSource          source(seed, n);
        std::vector<Element> digits(k);
        source.start_chunk(*hit / kSampleChunk);
        for (std::uint64_t t = *hit / kSampleChunk * kSampleChunk; t <= *hit; ++t) {
          source.next(digits);
        }
        return make_report(digits, *hit + 1);
      }

      std::uint64_t const total = saturating_power(n, k);
      if (total > opts.budget) {
        throw BudgetExceeded(total, opts.budget);
      }
      auto hit = parallel_find_first(
          total,
          [&](std::uint64_t begin, std::uint64_t end) -> std::optional<std::uint64_t> {
            std::vector<Element> digits(k);
            decode(begin, n, digits);
            for (std::uint64_t i = begin; i < end; ++i) {
              if (lhs.eval(A, digits.data()) != rhs.eval(A, digits.data())) {
                return i;
              }
              increment(n, digits);
            }
            return std::nullopt;
          },
          opts.workers);
      if (!hit) {
        return {Verdict::holds, std::nullopt, total};
      }
      std::vector<Element> digits(k);
      decode(*hit, n, digits);
      return make_report(digits, *hit + 1);
    }

    inline std::vector<VariableId> joint_variables(Term const& lhs, Term const& rhs) {
      std::vector<VariableId> a = variables(lhs);
      std::vector<VariableId> b = variables(rhs);
      std::vector<VariableId> all;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
      return all;
    }

    inline std::map<VariableId, std::size_t> slots_of(std::vector<VariableId> const& vars) {
      std::map<VariableId, std::size_t> slots;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        slots.emplace(vars[i], i);
      }
      return slots;
    }

    inline UnaryTerm as_unary(Term const& t) {
      if (auto const* w = std::get_if<Word>(&t)) {
        return to_unary(*w);
      }
      return std::get<UnaryTerm>(t);
    }
  }  // namespace detail

  //! Checks lhs = rhs in a semigroup. Words and unary terms may be mixed
  //! (words are read as unary terms); semiring terms with '+' are rejected.
  //! Exhaustive mode enumerates substitutions in lexicographic order of the
  //! value tuple, variables sorted, and reports the least counterexample.
  inline IdentityReport check_identity(FiniteSemigroup const& S,
                                       Term const&            lhs,
                                       Term const&            rhs,
                                       CheckOptions const&    opts = {}) {
    if (flavor(lhs) == Flavor::semiring || flavor(rhs) == Flavor::semiring) {
      throw FlavorMismatch("semiring terms need an ai-semiring");
    }
    auto const vars  = detail::joint_variables(lhs, rhs);
    auto const slots = detail::slots_of(vars);
    if (flavor(lhs) == Flavor::word && flavor(rhs) == Flavor::word) {
      detail::CompiledTerm l(std::get<Word>(lhs), slots);
      detail::CompiledTerm r(std::get<Word>(rhs), slots);
      return detail::run_check(S, l, r, vars, opts);
    }
    if (!S.has_inverses()) {
      throw MissingInverses();
    }
    detail::CompiledTerm l(detail::as_unary(lhs), slots);
    detail::CompiledTerm r(detail::as_unary(rhs), slots);
    return detail::run_check(S, l, r, vars, opts);
  }

  //! Checks lhs = rhs in an ai-semiring; words are read as products.
  inline IdentityReport check_identity(AiSemiring const&   A,
                                       Term const&         lhs,
                                       Term const&         rhs,
                                       CheckOptions const& opts = {}) {
    auto as_semiring = [](Term const& t) {
      if (auto const* w = std::get_if<Word>(&t)) {
        return to_semiring(*w);
      }
      if (auto const* s = std::get_if<SemiringTerm>(&t)) {
        return *s;
      }
      throw FlavorMismatch("inverses are not part of the semiring signature");
    };
    auto const           vars  = detail::joint_variables(lhs, rhs);
    auto const           slots = detail::slots_of(vars);
    detail::CompiledTerm l(as_semiring(lhs), slots);
    detail::CompiledTerm r(as_semiring(rhs), slots);
    return detail::run_check(A, l, r, vars, opts);
  }

  //! Human-readable report using element labels where available.
  template <typename Algebra>
  std::string format_report(Algebra const&        A,
                            Term const&           lhs,
                            Term const&           rhs,
                            IdentityReport const& r) {
    std::string out = "identity: " + to_string(lhs) + " = " + to_string(rhs) + "\n";
    out += "verdict: " + to_string(r.verdict) + "\n";
    out += "checked: " + std::to_string(r.substitutions_checked) + "\n";
    if (r.counterexample) {
      out += "counterexample:\n";
      for (auto const& [v, e] : r.counterexample->substitution) {
        out += "  " + v.to_string() + " = " + std::to_string(e) + " " + A.label(e) + "\n";
      }
      out += "  lhs value " + std::to_string(r.counterexample->lhs) + " "
             + A.label(r.counterexample->lhs) + "\n";
      out += "  rhs value " + std::to_string(r.counterexample->rhs) + " "
             + A.label(r.counterexample->rhs) + "\n";
    }
    return out + machine_line(r) + "\n";
  }

}  // namespace workbench
