#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace workbench {

  //! Base class of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  class LimitExceeded : public Error {
   public:
    explicit LimitExceeded(std::size_t limit)
        : Error("closure exceeded the limit of " + std::to_string(limit)
                + " elements"),
          limit(limit) {}
    std::size_t limit;
  };

  //! Some element has no inverse, or more than one.
  class NotInverse : public Error {
   public:
    NotInverse(std::uint32_t element, std::vector<std::uint32_t> witnesses)
        : Error("element " + std::to_string(element) + " has "
                + std::to_string(witnesses.size()) + " inverses"),
          element(element),
          witnesses(std::move(witnesses)) {}
    std::uint32_t              element;
    std::vector<std::uint32_t> witnesses;
  };

  class MissingInverses : public Error {
   public:
    MissingInverses() : Error("operation requires an inversion table") {}
  };

  class NotASemilattice : public Error {
   public:
    NotASemilattice(std::uint32_t x, std::uint32_t y)
        : Error("elements " + std::to_string(x) + " and " + std::to_string(y)
                + " have no infimum under the natural order"),
          x(x),
          y(y) {}
    std::uint32_t x;
    std::uint32_t y;
  };

  class BudgetExceeded : public Error {
   public:
    //! `count` is the size of the search space, saturated at UINT64_MAX.
    BudgetExceeded(std::uint64_t count, std::uint64_t budget)
        : Error("search space of " + std::to_string(count)
                + " substitutions exceeds the budget of "
                + std::to_string(budget)),
          count(count),
          budget(budget) {}
    std::uint64_t count;
    std::uint64_t budget;
  };

  class FlavorMismatch : public Error {
   public:
    using Error::Error;
  };

  class UnboundVariable : public Error {
   public:
    explicit UnboundVariable(std::string const& name)
        : Error("no value assigned to variable " + name), name(name) {}
    std::string name;
  };

  class BadParameters : public Error {
   public:
    using Error::Error;
  };

  class SizeExceeded : public Error {
   public:
    using Error::Error;
  };

  class DimensionTooLarge : public Error {
   public:
    using Error::Error;
  };

  class GroundSetMismatch : public Error {
   public:
    GroundSetMismatch(std::size_t lhs, std::size_t rhs)
        : Error("partial maps act on " + std::to_string(lhs) + " and "
                + std::to_string(rhs) + " points") {}
  };

  class IndexInvalid : public Error {
   public:
    using Error::Error;
  };

  class NotIdempotent : public Error {
   public:
    explicit NotIdempotent(std::uint32_t e)
        : Error("element " + std::to_string(e) + " is not idempotent") {}
  };

  class DisjointnessViolated : public Error {
   public:
    using Error::Error;
  };

  class UnrecognizedFactor : public Error {
   public:
    using Error::Error;
  };

  class ParseError : public Error {
   public:
    using Error::Error;
  };

  class BadSpec : public Error {
   public:
    using Error::Error;
  };

}  // namespace workbench
