#pragma once

// Plain-text Cayley tables.
//
//   n
//   n lines of n whitespace-separated 0-based products (row a = a * b)
//   # label <i> <string>      (optional, any number)
//   inv: <n indices>          (optional)
//
// An ai-semiring is its addition table followed by a line `---` and its
// multiplication table, both in this format.

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/order_semiring.hpp"

namespace workbench {

  struct CayleyTable {
    std::size_t              size = 0;
    std::vector<Element>     mul;
    std::vector<Element>     inv;     // empty when absent
    std::vector<std::string> labels;  // empty when absent
  };

  namespace detail {
    inline std::string trim(std::string const& s) {
      auto const first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        return "";
      }
      auto const last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    }

    inline std::vector<Element> read_indices(std::string const& line,
                                             std::size_t        expected,
                                             std::size_t        bound,
                                             std::string const& what) {
      std::istringstream   in(line);
      std::vector<Element> out;
      long long            v = 0;
      while (in >> v) {
        if (v < 0 || static_cast<std::size_t>(v) >= bound) {
          throw ParseError(what + ": index " + std::to_string(v) + " out of range");
        }
        out.push_back(static_cast<Element>(v));
      }
      if (!in.eof() || out.size() != expected) {
        throw ParseError(what + ": expected " + std::to_string(expected) + " indices");
      }
      return out;
    }

    inline CayleyTable parse_cayley_lines(std::vector<std::string> const& lines) {
      std::size_t pos  = 0;
      auto        next = [&]() -> std::string const* {
        while (pos < lines.size() && trim(lines[pos]).empty()) {
          ++pos;
        }
        return pos < lines.size() ? &lines[pos++] : nullptr;
      };
      std::string const* first = next();
      if (first == nullptr) {
        throw ParseError("empty Cayley table");
      }
      CayleyTable t;
      try {
        std::size_t used = 0;
        long long   n    = std::stoll(trim(*first), &used);
        if (n < 1 || used != trim(*first).size()) {
          throw ParseError("bad size line '" + *first + "'");
        }
        t.size = static_cast<std::size_t>(n);
      } catch (std::logic_error const&) {
        throw ParseError("bad size line '" + *first + "'");
      }
      for (std::size_t a = 0; a < t.size; ++a) {
        std::string const* row = next();
        if (row == nullptr) {
          throw ParseError("table ends after " + std::to_string(a) + " rows");
        }
        auto r = read_indices(*row, t.size, t.size, "row " + std::to_string(a));
        t.mul.insert(t.mul.end(), r.begin(), r.end());
      }
      while (std::string const* raw = next()) {
        std::string const line = trim(*raw);
        if (line.rfind("# label ", 0) == 0) {
          std::istringstream in(line.substr(8));
          std::size_t        i = 0;
          if (!(in >> i) || i >= t.size) {
            throw ParseError("bad label line '" + line + "'");
          }
          std::string text;
          std::getline(in >> std::ws, text);
          if (t.labels.empty()) {
            t.labels.resize(t.size);
            for (std::size_t j = 0; j < t.size; ++j) {
              t.labels[j] = std::to_string(j);
            }
          }
          t.labels[i] = text;
        } else if (line.rfind("inv:", 0) == 0) {
          t.inv = read_indices(line.substr(4), t.size, t.size, "inv line");
        } else {
          throw ParseError("unexpected line '" + line + "'");
        }
      }
      return t;
    }

    inline std::vector<std::string> split_lines(std::string const& text) {
      std::vector<std::string> lines;
      std::istringstream       in(text);
      for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
      }
      return lines;
    }

    inline std::string format_rows(std::size_t n, std::vector<Element> const& table) {
      std::string out = std::to_string(n) + "\n";
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          out += (b == 0 ? "" : " ") + std::to_string(table[a * n + b]);
        }
        out += "\n";
      }
      return out;
    }

    inline std::string format_trailer(std::vector<std::string> const& labels,
                                      std::vector<Element> const&     inv) {
      std::string out;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        out += "# label " + std::to_string(i) + " " + labels[i] + "\n";
      }
      if (!inv.empty()) {
        out += "inv:";
        for (Element e : inv) {
          out += " " + std::to_string(e);
        }
        out += "\n";
      }
      return out;
    }

    inline FiniteSemigroup to_semigroup(CayleyTable t) {
      FiniteSemigroup S(t.size, std::move(t.mul));
      if (!t.labels.empty()) {
        S = S.with_labels(std::move(t.labels));
      }
      if (!t.inv.empty()) {
        S = S.with_inverses(std::move(t.inv));
      }
      return S;
    }
  }  // namespace detail

  inline std::string format_cayley(FiniteSemigroup const& S) {
    return detail::format_rows(S.size(), S.table())
           + detail::format_trailer(S.labels(),
                                    S.has_inverses() ? S.inverses() : std::vector<Element>{});
  }

  inline FiniteSemigroup parse_cayley(std::string const& text) {
    return detail::to_semigroup(detail::parse_cayley_lines(detail::split_lines(text)));
  }

  inline bool is_semiring_text(std::string const& text) {
    for (auto const& line : detail::split_lines(text)) {
      if (detail::trim(line) == "---") {
        return true;
      }
    }
    return false;
  }

  //! Labels are written after the multiplication block.
  inline std::string format_semiring(AiSemiring const& A) {
    return detail::format_rows(A.size(), A.add_table()) + "---\n"
           + detail::format_rows(A.size(), A.mul_table())
           + detail::format_trailer(A.labels(), {});
  }

  inline AiSemiring parse_semiring(std::string const& text) {
    auto const               lines = detail::split_lines(text);
    std::vector<std::string> add_lines;
    std::vector<std::string> mul_lines;
    bool                     second = false;
    for (auto const& line : lines) {
      if (!second && detail::trim(line) == "---") {
        second = true;
      } else {
        (second ? mul_lines : add_lines).push_back(line);
      }
    }
    if (!second) {
      throw ParseError("semiring text needs a '---' separator");
    }
    auto add = detail::parse_cayley_lines(add_lines);
    auto mul = detail::parse_cayley_lines(mul_lines);
    if (add.size != mul.size) {
      throw ParseError("addition and multiplication tables differ in size");
    }
    auto labels = mul.labels.empty() ? add.labels : mul.labels;
    return AiSemiring(add.size, std::move(add.mul), std::move(mul.mul), std::move(labels));
  }

}  // namespace workbench
