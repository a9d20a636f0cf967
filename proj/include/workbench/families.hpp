#pragma once

// Concrete semigroups: abelian groups, Brandt semigroups, rook monoids and
// their restricted variant, the Boolean matrix semiring on seven 2x2
// matrices, partial injections and the generators chi of S_n^{(h)}, plus
// direct products and adjoined identities.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "workbench/core_algebra.hpp"
#include "workbench/errors.hpp"
#include "workbench/order_semiring.hpp"
#include "workbench/terms.hpp"

namespace workbench {

  //! Position of `value` in a concrete semigroup, or nullopt.
  template <typename T>
  std::optional<Element> find_element(ConcreteSemigroup<T> const& cs,
                                      T const&                    value) {
    auto it = std::find(cs.elements.begin(), cs.elements.end(), value);
    if (it == cs.elements.end()) {
      return std::nullopt;
    }
    return static_cast<Element>(it - cs.elements.begin());
  }

  ////////////////////////////////////////////////////////////////////////
  // Abelian groups and Brandt semigroups
  ////////////////////////////////////////////////////////////////////////

  //! Direct product of cyclic groups Z_{c1} x ... x Z_{ck}.
  struct AbelianGroupSpec {
    std::vector<int> cyclic_orders;

    [[nodiscard]] std::size_t order() const {
      std::size_t result = 1;
      for (int c : cyclic_orders) {
        result *= static_cast<std::size_t>(c);
      }
      return result;
    }

    [[nodiscard]] std::uint64_t exponent() const {
      std::uint64_t result = 1;
      for (int c : cyclic_orders) {
        result = std::lcm(result, static_cast<std::uint64_t>(c));
      }
      return result;
    }
  };

  //! Elements are residue tuples in lexicographic order, so index 0 is the
  //! identity.
  inline FiniteSemigroup abelian_group(AbelianGroupSpec const& spec) {
    if (spec.cyclic_orders.empty()) {
      throw BadParameters("abelian group needs at least one cyclic factor");
    }
    for (int c : spec.cyclic_orders) {
      if (c < 1) {
        throw BadParameters("cyclic orders must be positive");
      }
    }
    std::size_t const             n = spec.order();
    std::size_t const             k = spec.cyclic_orders.size();
    std::vector<std::vector<int>> tuples(n, std::vector<int>(k));
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t rest = i;
      for (std::size_t c = k; c-- > 0;) {
        tuples[i][c] = static_cast<int>(rest % spec.cyclic_orders[c]);
        rest /= spec.cyclic_orders[c];
      }
    }
    auto index_of = [&](std::vector<int> const& t) {
      std::size_t i = 0;
      for (std::size_t c = 0; c < k; ++c) {
        i = i * spec.cyclic_orders[c] + t[c];
      }
      return static_cast<Element>(i);
    };
    std::vector<Element>     mul(n * n);
    std::vector<Element>     inv(n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<int> neg(k);
      for (std::size_t c = 0; c < k; ++c) {
        neg[c] = (spec.cyclic_orders[c] - tuples[a][c]) % spec.cyclic_orders[c];
      }
      inv[a] = index_of(neg);
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<int> sum(k);
        for (std::size_t c = 0; c < k; ++c) {
          sum[c] = (tuples[a][c] + tuples[b][c]) % spec.cyclic_orders[c];
        }
        mul[a * n + b] = index_of(sum);
      }
      std::string label = "(";
      for (std::size_t c = 0; c < k; ++c) {
        label += (c == 0 ? "" : ",") + std::to_string(tuples[a][c]);
      }
      labels[a] = label + ")";
    }
    return FiniteSemigroup(n, std::move(mul))
        .with_inverses(std::move(inv))
        .with_labels(std::move(labels));
  }

  //! Zero, or a triple (l, g, r) with l, r in {0, ..., |I| - 1} and g an
  //! element index of the group.
  struct BrandtElement {
    bool    is_zero = true;
    Element l       = 0;
    Element g       = 0;
    Element r       = 0;

    static BrandtElement zero() {
      return {};
    }
    static BrandtElement triple(Element l, Element g, Element r) {
      return {false, l, g, r};
    }
    friend bool operator==(BrandtElement const&, BrandtElement const&) = default;
  };

  //! B_{G,I} over an arbitrary finite group given by its table. The carrier
  //! is ordered zero first, then triples (l, g, r) lexicographically.
  inline ConcreteSemigroup<BrandtElement>
  brandt_over_group(FiniteSemigroup const& G, std::size_t i_size) {
    if (i_size < 1) {
      throw BadParameters("Brandt semigroup needs a nonempty index set");
    }
    if (!G.identity()) {
      throw BadParameters("Brandt construction needs a group");
    }
    Element const        e     = *G.identity();
    std::size_t const    order = G.size();
    std::vector<Element> ginv(order, kUndefined);
    for (Element g = 0; g < order; ++g) {
      for (Element h = 0; h < order; ++h) {
        if (G.product(g, h) == e && G.product(h, g) == e) {
          ginv[g] = h;
        }
      }
      if (ginv[g] == kUndefined) {
        throw BadParameters("Brandt construction needs a group");
      }
    }

    std::vector<BrandtElement> elements{BrandtElement::zero()};
    for (Element l = 0; l < i_size; ++l) {
      for (Element g = 0; g < order; ++g) {
        for (Element r = 0; r < i_size; ++r) {
          elements.push_back(BrandtElement::triple(l, g, r));
        }
      }
    }
    auto index_of = [&](BrandtElement const& x) -> Element {
      if (x.is_zero) {
        return 0;
      }
      return static_cast<Element>(1 + (x.l * order + x.g) * i_size + x.r);
    };
    std::size_t const    n = elements.size();
    std::vector<Element> mul(n * n, 0);
    std::vector<Element> inv(n, 0);
    std::vector<std::string> labels(n, "0");
    for (std::size_t a = 1; a < n; ++a) {
      BrandtElement const& x = elements[a];
      inv[a] = index_of(BrandtElement::triple(x.r, ginv[x.g], x.l));
      labels[a] = "(" + std::to_string(x.l + 1) + "," + G.label(x.g) + ","
                  + std::to_string(x.r + 1) + ")";
      for (std::size_t b = 1; b < n; ++b) {
        BrandtElement const& y = elements[b];
        if (x.r == y.l) {
          mul[a * n + b] = index_of(
              BrandtElement::triple(x.l, G.product(x.g, y.g), y.r));
        }
      }
    }
    FiniteSemigroup S = FiniteSemigroup(n, std::move(mul))
                            .with_inverses(std::move(inv))
                            .with_labels(std::move(labels));
    return {std::move(S), std::move(elements)};
  }

  inline ConcreteSemigroup<BrandtElement>
  brandt_semigroup(AbelianGroupSpec const& G, std::size_t i_size) {
    return brandt_over_group(abelian_group(G), i_size);
  }

  ////////////////////////////////////////////////////////////////////////
  // Boolean and rook matrices
  ////////////////////////////////////////////////////////////////////////

  //! Square zero-one matrix of dimension at most 5, packed row-major.
  class BoolMatrix {
   public:
    static constexpr int kMaxDim = 5;

    BoolMatrix() = default;

    explicit BoolMatrix(int dim, std::uint32_t bits = 0) : _dim(dim), _bits(bits) {
      if (dim < 1 || dim > kMaxDim) {
        throw DimensionTooLarge("matrix dimension " + std::to_string(dim)
                                + " outside 1.." + std::to_string(kMaxDim));
      }
    }

    //! Rows of 0/1 characters separated by '/', e.g. "01/00".
    static BoolMatrix parse(std::string const& text) {
      std::vector<std::string> rows;
      std::stringstream        in(text);
      for (std::string row; std::getline(in, row, '/');) {
        rows.push_back(row);
      }
      auto const dim = static_cast<int>(rows.size());
      BoolMatrix m(dim);
      for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(rows[i].size()) != dim) {
          throw ParseError("matrix '" + text + "' is not square");
        }
        for (int j = 0; j < dim; ++j) {
          if (rows[i][j] == '1') {
            m.set(i, j);
          } else if (rows[i][j] != '0') {
            throw ParseError("matrix '" + text + "' has a non 0/1 entry");
          }
        }
      }
      return m;
    }

    [[nodiscard]] int dim() const noexcept {
      return _dim;
    }
    [[nodiscard]] std::uint32_t bits() const noexcept {
      return _bits;
    }
    [[nodiscard]] bool at(int i, int j) const noexcept {
      return (_bits >> (i * _dim + j)) & 1U;
    }
    void set(int i, int j) noexcept {
      _bits |= std::uint32_t(1) << (i * _dim + j);
    }

    [[nodiscard]] BoolMatrix operator*(BoolMatrix const& other) const {
      BoolMatrix result(_dim);
      for (int i = 0; i < _dim; ++i) {
        for (int j = 0; j < _dim; ++j) {
          for (int k = 0; k < _dim; ++k) {
            if (at(i, k) && other.at(k, j)) {
              result.set(i, j);
              break;
            }
          }
        }
      }
      return result;
    }

    [[nodiscard]] BoolMatrix transpose() const {
      BoolMatrix result(_dim);
      for (int i = 0; i < _dim; ++i) {
        for (int j = 0; j < _dim; ++j) {
          if (at(i, j)) {
            result.set(j, i);
          }
        }
      }
      return result;
    }

    //! Entrywise Boolean or.
    [[nodiscard]] BoolMatrix operator|(BoolMatrix const& other) const {
      return BoolMatrix(_dim, _bits | other._bits);
    }

    //! Entrywise (Hadamard) product.
    [[nodiscard]] BoolMatrix operator&(BoolMatrix const& other) const {
      return BoolMatrix(_dim, _bits & other._bits);
    }

    //! Entrywise <=.
    [[nodiscard]] bool below(BoolMatrix const& other) const noexcept {
      return (_bits & ~other._bits) == 0;
    }

    [[nodiscard]] bool is_rook() const noexcept {
      for (int i = 0; i < _dim; ++i) {
        int row = 0;
        int col = 0;
        for (int j = 0; j < _dim; ++j) {
          row += at(i, j);
          col += at(j, i);
        }
        if (row > 1 || col > 1) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] std::string to_string() const {
      std::string out;
      for (int i = 0; i < _dim; ++i) {
        if (i > 0) {
          out += '/';
        }
        for (int j = 0; j < _dim; ++j) {
          out += at(i, j) ? '1' : '0';
        }
      }
      return out;
    }

    [[nodiscard]] std::uint64_t key() const noexcept {
      return (std::uint64_t(_dim) << 32) | _bits;
    }

    friend bool operator==(BoolMatrix const&, BoolMatrix const&) = default;

   private:
    int           _dim  = 1;
    std::uint32_t _bits = 0;
  };

  //! Zero-one matrix with at most one 1 in each row and column.
  class RookMatrix {
   public:
    RookMatrix() = default;

    explicit RookMatrix(BoolMatrix m) : _m(m) {
      if (!m.is_rook()) {
        throw BadParameters(m.to_string() + " is not a rook matrix");
      }
    }

    static RookMatrix parse(std::string const& text) {
      return RookMatrix(BoolMatrix::parse(text));
    }

    [[nodiscard]] BoolMatrix const& matrix() const noexcept {
      return _m;
    }
    [[nodiscard]] int dim() const noexcept {
      return _m.dim();
    }
    [[nodiscard]] int rank() const noexcept {
      return std::popcount(_m.bits());
    }
    [[nodiscard]] RookMatrix operator*(RookMatrix const& other) const {
      return RookMatrix(_m * other._m, Trusted{});
    }
    [[nodiscard]] RookMatrix transpose() const {
      return RookMatrix(_m.transpose(), Trusted{});
    }
    [[nodiscard]] RookMatrix hadamard(RookMatrix const& other) const {
      return RookMatrix(_m & other._m, Trusted{});
    }
    [[nodiscard]] std::string to_string() const {
      return _m.to_string();
    }
    [[nodiscard]] std::uint64_t key() const noexcept {
      return _m.key();
    }

    //! Sign of the permutation for full-rank matrices, 0 otherwise.
    [[nodiscard]] int determinant() const noexcept {
      int const t = dim();
      if (rank() != t) {
        return 0;
      }
      std::vector<int> image(t);
      for (int i = 0; i < t; ++i) {
        for (int j = 0; j < t; ++j) {
          if (_m.at(i, j)) {
            image[i] = j;
          }
        }
      }
      int sign = 1;
      for (int i = 0; i < t; ++i) {
        for (int j = i + 1; j < t; ++j) {
          if (image[i] > image[j]) {
            sign = -sign;
          }
        }
      }
      return sign;
    }

    friend bool operator==(RookMatrix const&, RookMatrix const&) = default;

   private:
    struct Trusted {};
    RookMatrix(BoolMatrix m, Trusted) : _m(m) {}

    BoolMatrix _m;
  };

  namespace detail {
    //! Inversion table of a concrete semigroup from a concrete involution.
    template <typename T, typename Inv, typename KeyFn>
    std::vector<Element> inverses_from(ConcreteSemigroup<T> const& cs,
                                       Inv&&                       invert,
                                       KeyFn&&                     key) {
      std::map<decltype(key(cs.elements[0])), Element> index;
      for (Element i = 0; i < cs.elements.size(); ++i) {
        index.emplace(key(cs.elements[i]), i);
      }
      std::vector<Element> inv;
      inv.reserve(cs.elements.size());
      for (auto const& value : cs.elements) {
        inv.push_back(index.at(key(invert(value))));
      }
      return inv;
    }

    template <typename T>
    void attach_labels(ConcreteSemigroup<T>& cs) {
      std::vector<std::string> labels;
      labels.reserve(cs.elements.size());
      for (auto const& value : cs.elements) {
        labels.push_back(value.to_string());
      }
      cs.semigroup = cs.semigroup.with_labels(std::move(labels));
    }

    inline ConcreteSemigroup<RookMatrix> rook_from_carrier(
        std::vector<RookMatrix> carrier) {
      auto cs = from_carrier(
          std::move(carrier),
          [](RookMatrix const& a, RookMatrix const& b) { return a * b; },
          [](RookMatrix const& a) { return a.key(); });
      cs.semigroup = cs.semigroup.with_inverses(inverses_from(
          cs,
          [](RookMatrix const& a) { return a.transpose(); },
          [](RookMatrix const& a) { return a.key(); }));
      attach_labels(cs);
      return cs;
    }
  }  // namespace detail

  //! All t x t rook matrices under matrix product, with transpose as
  //! inversion, for 1 <= t <= 5. Ordered by rank, then by the sorted list of
  //! row-major positions of the ones.
  inline ConcreteSemigroup<RookMatrix> rook_monoid(int t) {
    if (t < 1 || t > BoolMatrix::kMaxDim) {
      throw DimensionTooLarge("rook monoid dimension " + std::to_string(t)
                              + " outside 1..5");
    }
    std::vector<RookMatrix> carrier;
    // image[i] in {-1, 0, ..., t - 1}; enumerate all partial injections.
    std::vector<int> image(t, -1);
    auto             emit = [&]() {
      BoolMatrix m(t);
      for (int i = 0; i < t; ++i) {
        if (image[i] >= 0) {
          m.set(i, image[i]);
        }
      }
      if (m.is_rook()) {
        carrier.emplace_back(m);
      }
    };
    std::function<void(int)> rec = [&](int row) {
      if (row == t) {
        emit();
        return;
      }
      for (int j = -1; j < t; ++j) {
        image[row] = j;
        rec(row + 1);
      }
    };
    rec(0);
    auto positions = [](RookMatrix const& a) {
      std::vector<int> pos;
      for (std::uint32_t b = a.matrix().bits(); b != 0; b &= b - 1) {
        pos.push_back(std::countr_zero(b));
      }
      return pos;
    };
    std::sort(carrier.begin(), carrier.end(), [&](auto const& a, auto const& b) {
      if (a.rank() != b.rank()) {
        return a.rank() < b.rank();
      }
      return positions(a) < positions(b);
    });
    return detail::rook_from_carrier(std::move(carrier));
  }

  //! R_3 without the three transposition matrices (determinant -1).
  inline ConcreteSemigroup<RookMatrix> rook_monoid_restricted_3() {
    auto                    full = rook_monoid(3);
    std::vector<RookMatrix> carrier;
    for (auto const& a : full.elements) {
      if (a.determinant() != -1) {
        carrier.push_back(a);
      }
    }
    return detail::rook_from_carrier(std::move(carrier));
  }

  //! The six 2x2 matrices 0, E11, E12, E21, E22, I in this order.
  inline ConcreteSemigroup<RookMatrix> brandt_monoid_b21() {
    return detail::rook_from_carrier({RookMatrix::parse("00/00"),
                                      RookMatrix::parse("10/00"),
                                      RookMatrix::parse("01/00"),
                                      RookMatrix::parse("00/10"),
                                      RookMatrix::parse("00/01"),
                                      RookMatrix::parse("10/01")});
  }

  //! The five-element Brandt semigroup: B_2^1 without the identity.
  inline ConcreteSemigroup<RookMatrix> brandt_b2() {
    return detail::rook_from_carrier({RookMatrix::parse("00/00"),
                                      RookMatrix::parse("10/00"),
                                      RookMatrix::parse("01/00"),
                                      RookMatrix::parse("00/10"),
                                      RookMatrix::parse("00/01")});
  }

  ////////////////////////////////////////////////////////////////////////
  // The seven-element Boolean matrix semiring
  ////////////////////////////////////////////////////////////////////////

  struct Sigma7 {
    //! Boolean matrix product on the seven matrices, with inverses.
    ConcreteSemigroup<BoolMatrix> reduct;
    //! Entrywise-or addition.
    AiSemiring boolean;
    //! Infimum under the natural order of the reduct.
    AiSemiring natural;
  };

  inline Sigma7 sigma7() {
    std::vector<BoolMatrix> carrier;
    for (char const* m : {"11/11", "10/01", "10/11", "11/01", "01/11", "11/10", "00/00"}) {
      carrier.push_back(BoolMatrix::parse(m));
    }
    auto key = [](BoolMatrix const& a) { return a.key(); };
    auto cs  = from_carrier(
        carrier, [](BoolMatrix const& a, BoolMatrix const& b) { return a * b; }, key);
    detail::attach_labels(cs);
    cs.semigroup = with_computed_inverses(cs.semigroup);

    std::size_t const    n = carrier.size();
    std::vector<Element> add(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        add[a * n + b] = *find_element(cs, carrier[a] | carrier[b]);
      }
    }
    AiSemiring boolean(n, std::move(add), cs.semigroup.table(), cs.semigroup.labels());
    AiSemiring natural = make_nat_semiring(cs.semigroup);
    return {std::move(cs), std::move(boolean), std::move(natural)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Partial injections
  ////////////////////////////////////////////////////////////////////////

  //! Partial one-to-one map of {0, ..., n_points - 1} into itself.
  class PartialInjection {
   public:
    PartialInjection() = default;

    explicit PartialInjection(std::size_t n_points) : _image(n_points, -1) {}

    PartialInjection(std::size_t n_points,
                     std::vector<std::pair<int, int>> const& pairs)
        : _image(n_points, -1) {
      std::vector<bool> hit(n_points, false);
      for (auto [q, r] : pairs) {
        if (q < 0 || r < 0 || std::size_t(q) >= n_points
            || std::size_t(r) >= n_points) {
          throw BadParameters("pair " + std::to_string(q) + " -> "
                              + std::to_string(r) + " outside the ground set");
        }
        if (_image[q] != -1 || hit[r]) {
          throw BadParameters("pairs do not define a partial injection");
        }
        _image[q] = r;
        hit[r]    = true;
      }
    }

    [[nodiscard]] std::size_t n_points() const noexcept {
      return _image.size();
    }

    //! Image of q, or -1 when undefined.
    [[nodiscard]] int operator()(int q) const noexcept {
      return _image[q];
    }

    [[nodiscard]] std::vector<std::pair<int, int>> pairs() const {
      std::vector<std::pair<int, int>> result;
      for (std::size_t q = 0; q < _image.size(); ++q) {
        if (_image[q] >= 0) {
          result.emplace_back(static_cast<int>(q), _image[q]);
        }
      }
      return result;
    }

    [[nodiscard]] std::size_t rank() const noexcept {
      return static_cast<std::size_t>(
          std::count_if(_image.begin(), _image.end(), [](int r) { return r >= 0; }));
    }

    [[nodiscard]] std::string key() const {
      std::string k(_image.size(), '\0');
      for (std::size_t q = 0; q < _image.size(); ++q) {
        k[q] = static_cast<char>(_image[q] + 1);
      }
      if (_image.size() > 254) {
        // one byte per point no longer suffices
        k.clear();
        for (int r : _image) {
          k += std::to_string(r) + ",";
        }
      }
      return k;
    }

    //! `points N+1` followed by one `q -> q'` line per pair, sorted by q.
    [[nodiscard]] std::string to_string() const {
      std::string out = "points " + std::to_string(_image.size()) + "\n";
      for (auto [q, r] : pairs()) {
        out += std::to_string(q) + " -> " + std::to_string(r) + "\n";
      }
      return out;
    }

    //! Inline form `{0->1, 3->2}` used for labels.
    [[nodiscard]] std::string compact() const {
      std::string out = "{";
      bool        first = true;
      for (auto [q, r] : pairs()) {
        out += (first ? "" : ", ") + std::to_string(q) + "->" + std::to_string(r);
        first = false;
      }
      return out + "}";
    }

    static PartialInjection parse(std::string const& text) {
      std::istringstream in(text);
      std::string        word;
      std::size_t        n = 0;
      if (!(in >> word >> n) || word != "points") {
        throw ParseError("partial injection must start with 'points <n>'");
      }
      std::vector<std::pair<int, int>> pairs;
      int                              q = 0;
      int                              r = 0;
      std::string                      arrow;
      while (in >> q >> arrow >> r) {
        if (arrow != "->") {
          throw ParseError("expected '->' in partial injection");
        }
        pairs.emplace_back(q, r);
      }
      if (!in.eof()) {
        throw ParseError("malformed partial injection line");
      }
      return PartialInjection(n, pairs);
    }

    friend bool operator==(PartialInjection const&, PartialInjection const&) = default;

   private:
    friend PartialInjection partial_compose(PartialInjection const&,
                                            PartialInjection const&);
    friend PartialInjection partial_invert(PartialInjection const&);

    std::vector<int> _image;
  };

  //! (a . b)(q) = a(b(q)): the right factor acts first.
  inline PartialInjection partial_compose(PartialInjection const& a,
                                          PartialInjection const& b) {
    if (a.n_points() != b.n_points()) {
      throw GroundSetMismatch(a.n_points(), b.n_points());
    }
    PartialInjection result(a.n_points());
    for (std::size_t q = 0; q < b._image.size(); ++q) {
      int mid = b._image[q];
      if (mid >= 0) {
        result._image[q] = a._image[mid];
      }
    }
    return result;
  }

  inline PartialInjection partial_invert(PartialInjection const& a) {
    PartialInjection result(a.n_points());
    for (std::size_t q = 0; q < a._image.size(); ++q) {
      if (a._image[q] >= 0) {
        result._image[a._image[q]] = static_cast<int>(q);
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Generators of S_n^{(h)}
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::size_t kMaxKadourekPoints = 10'000;

  struct KadourekGenerator {
    VariableId       label;  // x_{i1...ih}
    PartialInjection map;    // chi_{i1...ih}
  };

  //! chi_v for every v in X_n^{(h)}, in lexicographic order of index tuples,
  //! acting on {0, ..., 2^h n^h}: chi_v(q - 1) = q where position q of
  //! w_n^{(h)} carries v, and chi_v(q) = q - 1 where it carries v^-1.
  inline std::vector<KadourekGenerator> kadourek_generators(int n, int h) {
    if (n < 2 || h < 1) {
      throw BadParameters("S_n^(h) needs n >= 2 and h >= 1");
    }
    std::size_t length = 1;
    for (int i = 0; i < h; ++i) {
      length *= std::size_t(2) * n;
      if (length + 1 > kMaxKadourekPoints) {
        throw SizeExceeded("S_n^(h) would act on more than "
                           + std::to_string(kMaxKadourekPoints) + " points");
      }
    }
    UnaryTerm const w = build_w(n, h);
    std::size_t const points = w.length() + 1;

    std::map<VariableId, std::vector<std::pair<int, int>>> pairs;
    for (std::size_t pos = 1; pos <= w.length(); ++pos) {
      Letter const& l = w.letters[pos - 1];
      auto          q = static_cast<int>(pos);
      if (l.sign > 0) {
        pairs[l.var].emplace_back(q - 1, q);
      } else {
        pairs[l.var].emplace_back(q, q - 1);
      }
    }
    std::vector<KadourekGenerator> result;
    for (auto const& [label, ps] : pairs) {
      result.push_back({label, PartialInjection(points, ps)});
    }
    return result;
  }

  //! Inverse semigroup generated by the chi and their inverses; generators
  //! come first (chi in label order, then their inverses). Labels are the
  //! compact forms of the maps.
  inline ConcreteSemigroup<PartialInjection>
  kadourek_semigroup(int n, int h, std::size_t limit = kDefaultClosureLimit) {
    std::vector<PartialInjection> gens;
    for (auto const& g : kadourek_generators(n, h)) {
      gens.push_back(g.map);
    }
    std::size_t const k = gens.size();
    for (std::size_t i = 0; i < k; ++i) {
      gens.push_back(partial_invert(gens[i]));
    }
    auto cs = generate_closure(std::span<PartialInjection const>(gens),
                               partial_compose,
                               [](PartialInjection const& a) { return a.key(); },
                               limit);
    std::unordered_map<std::string, Element> index;
    for (Element i = 0; i < cs.elements.size(); ++i) {
      index.emplace(cs.elements[i].key(), i);
    }
    std::vector<Element>     inv;
    std::vector<std::string> labels;
    for (auto const& a : cs.elements) {
      inv.push_back(index.at(partial_invert(a).key()));
      labels.push_back(a.compact());
    }
    cs.semigroup = cs.semigroup.with_inverses(std::move(inv)).with_labels(std::move(labels));
    return cs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Products and adjoined identity
  ////////////////////////////////////////////////////////////////////////

  //! Componentwise product; (a, b) has index a * |T| + b.
  inline FiniteSemigroup direct_product(FiniteSemigroup const& S,
                                        FiniteSemigroup const& T) {
    std::size_t const    m = T.size();
    std::size_t const    n = S.size() * m;
    std::vector<Element> mul(n * n);
    for (Element a = 0; a < n; ++a) {
      for (Element b = 0; b < n; ++b) {
        mul[std::size_t(a) * n + b] = static_cast<Element>(
            S.product(a / m, b / m) * m + T.product(a % m, b % m));
      }
    }
    std::vector<std::string> labels;
    for (Element a = 0; a < n; ++a) {
      labels.push_back("(" + S.label(a / m) + "," + T.label(a % m) + ")");
    }
    FiniteSemigroup P = FiniteSemigroup(n, std::move(mul)).with_labels(std::move(labels));
    if (S.has_inverses() && T.has_inverses()) {
      std::vector<Element> inv(n);
      for (Element a = 0; a < n; ++a) {
        inv[a] = static_cast<Element>(S.inverse(a / m) * m + T.inverse(a % m));
      }
      P = P.with_inverses(std::move(inv));
    }
    return P;
  }

  //! S^1: S with a fresh identity appended as the last element.
  inline FiniteSemigroup adjoin_identity(FiniteSemigroup const& S) {
    std::size_t const    n   = S.size();
    std::size_t const    m   = n + 1;
    auto const           one = static_cast<Element>(n);
    std::vector<Element> mul(m * m);
    for (Element a = 0; a < m; ++a) {
      for (Element b = 0; b < m; ++b) {
        Element p;
        if (a == one) {
          p = b;
        } else if (b == one) {
          p = a;
        } else {
          p = S.product(a, b);
        }
        mul[std::size_t(a) * m + b] = p;
      }
    }
    std::vector<std::string> labels;
    for (Element a = 0; a < n; ++a) {
      labels.push_back(S.label(a));
    }
    labels.push_back("1");
    FiniteSemigroup result = FiniteSemigroup(m, std::move(mul)).with_labels(std::move(labels));
    if (S.has_inverses()) {
      std::vector<Element> inv(S.inverses());
      inv.push_back(one);
      result = result.with_inverses(std::move(inv));
    }
    return result;
  }

}  // namespace workbench
