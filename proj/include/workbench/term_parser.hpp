#pragma once

// Text syntax for terms.
//
//   sum     := product ('+' product)*
//   product := factor (['*'] factor)*
//   factor  := primary ('^' ('-1' | int))*
//   primary := ident ['[' int (',' int)* ']'] | '(' sum ')'
//
// A term containing '+' is a semiring term, otherwise a term containing an
// inverse is a unary term, otherwise it is a word.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "workbench/errors.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  using Term = std::variant<Word, UnaryTerm, SemiringTerm>;

  enum class Flavor { word, unary, semiring };

  inline Flavor flavor(Term const& t) {
    return static_cast<Flavor>(t.index());
  }

  inline std::string to_string(Flavor f) {
    switch (f) {
      case Flavor::word:
        return "word";
      case Flavor::unary:
        return "unary";
      case Flavor::semiring:
        break;
    }
    return "semiring";
  }

  //! Left-nested product of the letters.
  inline SemiringTerm to_semiring(Word const& w) {
    if (w.letters.empty()) {
      throw BadParameters("cannot convert the empty word");
    }
    SemiringTerm result = SemiringTerm::variable(w.letters.front());
    for (std::size_t i = 1; i < w.letters.size(); ++i) {
      result = result * SemiringTerm::variable(w.letters[i]);
    }
    return result;
  }

  namespace detail {
    struct Ast {
      enum class Kind { var, inv, pow, mul, plus };
      Kind                       kind;
      VariableId                 var;
      std::size_t                exponent = 1;
      std::shared_ptr<Ast const> a;
      std::shared_ptr<Ast const> b;
    };
    using AstPtr = std::shared_ptr<Ast const>;

    class TermParser {
     public:
      explicit TermParser(std::string_view text) : _s(text) {}

      AstPtr parse() {
        AstPtr result = sum();
        skip();
        if (_pos != _s.size()) {
          fail("unexpected '" + std::string(1, _s[_pos]) + "'");
        }
        return result;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError(what + " at offset " + std::to_string(_pos) + " in '"
                         + std::string(_s) + "'");
      }

      void skip() {
        while (_pos < _s.size() && std::isspace(static_cast<unsigned char>(_s[_pos]))) {
          ++_pos;
        }
      }

      bool accept(char c) {
        skip();
        if (_pos < _s.size() && _s[_pos] == c) {
          ++_pos;
          return true;
        }
        return false;
      }

      bool starts_primary() {
        skip();
        if (_pos >= _s.size()) {
          return false;
        }
        char c = _s[_pos];
        return c == '(' || c == '_' || std::isalpha(static_cast<unsigned char>(c));
      }

      long integer() {
        skip();
        std::size_t start = _pos;
        while (_pos < _s.size() && std::isdigit(static_cast<unsigned char>(_s[_pos]))) {
          ++_pos;
        }
        if (start == _pos) {
          fail("expected an integer");
        }
        if (_pos - start > 9) {
          fail("integer too large");
        }
        return std::stol(std::string(_s.substr(start, _pos - start)));
      }

      static AstPtr node(Ast::Kind k, AstPtr a, AstPtr b = nullptr, std::size_t e = 1) {
        return std::make_shared<Ast const>(Ast{k, {}, e, std::move(a), std::move(b)});
      }

      AstPtr sum() {
        AstPtr left = product();
        while (accept('+')) {
          left = node(Ast::Kind::plus, left, product());
        }
        return left;
      }

      AstPtr product() {
        AstPtr left = factor();
        for (;;) {
          if (accept('*')) {
            left = node(Ast::Kind::mul, left, factor());
          } else if (starts_primary()) {
            left = node(Ast::Kind::mul, left, factor());
          } else {
            return left;
          }
        }
      }

      AstPtr factor() {
        AstPtr base = primary();
        while (accept('^')) {
          if (accept('-')) {
            if (integer() != 1) {
              fail("only the exponent -1 may be negative");
            }
            base = node(Ast::Kind::inv, base);
          } else {
            long k = integer();
            if (k < 1) {
              fail("exponent must be positive");
            }
            base = node(Ast::Kind::pow, base, nullptr, static_cast<std::size_t>(k));
          }
        }
        return base;
      }

      AstPtr primary() {
        if (accept('(')) {
          AstPtr inner = sum();
          if (!accept(')')) {
            fail("expected ')'");
          }
          return inner;
        }
        skip();
        std::size_t start = _pos;
        while (_pos < _s.size()
               && (std::isalnum(static_cast<unsigned char>(_s[_pos])) || _s[_pos] == '_')) {
          ++_pos;
        }
        if (start == _pos || std::isdigit(static_cast<unsigned char>(_s[start]))) {
          fail("expected a variable");
        }
        VariableId v = VariableId::named(std::string(_s.substr(start, _pos - start)));
        if (_pos < _s.size() && _s[_pos] == '[') {
          ++_pos;
          do {
            long i = integer();
            if (i < 1) {
              fail("indices must be positive");
            }
            v.indices.push_back(static_cast<int>(i));
          } while (accept(','));
          if (!accept(']')) {
            fail("expected ']'");
          }
        }
        auto leaf = std::make_shared<Ast>();
        leaf->kind = Ast::Kind::var;
        leaf->var  = std::move(v);
        return leaf;
      }

      std::string_view _s;
      std::size_t      _pos = 0;
    };

    inline void scan_kinds(Ast const& a, bool& plus, bool& inv) {
      plus = plus || a.kind == Ast::Kind::plus;
      inv  = inv || a.kind == Ast::Kind::inv;
      if (a.a) {
        scan_kinds(*a.a, plus, inv);
      }
      if (a.b) {
        scan_kinds(*a.b, plus, inv);
      }
    }

    inline UnaryTerm to_unary_term(Ast const& a) {
      switch (a.kind) {
        case Ast::Kind::var:
          return UnaryTerm{{{a.var, 1}}};
        case Ast::Kind::inv:
          return to_unary_term(*a.a).inverse();
        case Ast::Kind::pow:
          return power(to_unary_term(*a.a), a.exponent);
        case Ast::Kind::mul:
          return concat(to_unary_term(*a.a), to_unary_term(*a.b));
        case Ast::Kind::plus:
          break;
      }
      throw FlavorMismatch("'+' inside a term of signature (., ^-1)");
    }

    inline SemiringTerm to_semiring_term(Ast const& a) {
      switch (a.kind) {
        case Ast::Kind::var:
          return SemiringTerm::variable(a.var);
        case Ast::Kind::inv:
          throw FlavorMismatch("inverse inside a semiring term");
        case Ast::Kind::pow: {
          SemiringTerm base   = to_semiring_term(*a.a);
          SemiringTerm result = base;
          for (std::size_t i = 1; i < a.exponent; ++i) {
            result = result * base;
          }
          return result;
        }
        case Ast::Kind::mul:
          return to_semiring_term(*a.a) * to_semiring_term(*a.b);
        case Ast::Kind::plus:
          break;
      }
      return to_semiring_term(*a.a) + to_semiring_term(*a.b);
    }
  }  // namespace detail

  inline Term parse_term(std::string_view text) {
    detail::AstPtr ast  = detail::TermParser(text).parse();
    bool           plus = false;
    bool           inv  = false;
    detail::scan_kinds(*ast, plus, inv);
    if (plus) {
      return detail::to_semiring_term(*ast);
    }
    UnaryTerm t = detail::to_unary_term(*ast);
    if (inv) {
      return t;
    }
    Word w;
    w.letters.reserve(t.letters.size());
    for (auto const& l : t.letters) {
      w.letters.push_back(l.var);
    }
    return w;
  }

  inline std::string to_string(Word const& w) {
    std::string out;
    for (std::size_t i = 0; i < w.letters.size(); ++i) {
      out += (i == 0 ? "" : " ") + w.letters[i].to_string();
    }
    return out;
  }

  inline std::string to_string(UnaryTerm const& t) {
    std::string out;
    for (std::size_t i = 0; i < t.letters.size(); ++i) {
      out += (i == 0 ? "" : " ") + t.letters[i].var.to_string();
      if (t.letters[i].sign < 0) {
        out += "^-1";
      }
    }
    return out;
  }

  //! Infix form; parenthesises exactly where left-associative parsing
  //! would otherwise produce a different tree.
  inline std::string to_string(SemiringTerm const& t) {
    using Kind = SemiringTerm::Kind;
    switch (t.kind()) {
      case Kind::variable:
        return t.var().to_string();
      case Kind::plus: {
        std::string right = to_string(t.right());
        if (t.right().kind() == Kind::plus) {
          right = "(" + right + ")";
        }
        return to_string(t.left()) + " + " + right;
      }
      case Kind::times:
        break;
    }
    auto wrap = [](SemiringTerm const& s, bool also_times) {
      std::string inner = to_string(s);
      if (s.kind() == Kind::plus || (also_times && s.kind() == Kind::times)) {
        return "(" + inner + ")";
      }
      return inner;
    };
    return wrap(t.left(), false) + "*" + wrap(t.right(), true);
  }

  inline std::string to_string(Term const& t) {
    return std::visit([](auto const& x) { return to_string(x); }, t);
  }

  inline std::vector<VariableId> variables(Term const& t) {
    return std::visit([](auto const& x) { return variables(x); }, t);
  }

}  // namespace workbench
