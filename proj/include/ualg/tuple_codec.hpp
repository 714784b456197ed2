#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace ualg {

  using Elem = std::uint32_t;

  //! Returns base^exp, throwing BudgetExceeded if it exceeds `cap`.
  inline std::size_t checked_pow(std::size_t base, std::size_t exp,
                                 std::size_t cap = kDefaultUniverseCap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (base != 0 && r > cap / base) {
        throw BudgetExceeded("universe of size " + std::to_string(base) + "^"
                             + std::to_string(exp) + " exceeds cap "
                             + std::to_string(cap));
      }
      r *= base;
    }
    if (r > cap) {
      throw BudgetExceeded("universe exceeds cap " + std::to_string(cap));
    }
    return r;
  }

  //! Mixed-radix encoding of tuples in {0..base-1}^width, last coordinate
  //! varying fastest. Used for elements of direct powers and for indexing
  //! operation tables.
  class TupleCodec {
   public:
    TupleCodec(std::size_t base, std::size_t width)
        : _base(base), _width(width), _count(checked_pow(base, width, SIZE_MAX)) {
      if (base == 0) {
        throw InputError("TupleCodec: base must be positive");
      }
    }

    [[nodiscard]] std::size_t base() const noexcept { return _base; }
    [[nodiscard]] std::size_t width() const noexcept { return _width; }
    [[nodiscard]] std::size_t count() const noexcept { return _count; }

    [[nodiscard]] std::size_t encode(std::span<Elem const> tuple) const {
      if (tuple.size() != _width) {
        throw InputError("TupleCodec: tuple width mismatch");
      }
      std::size_t i = 0;
      for (Elem x : tuple) {
        if (x >= _base) {
          throw InputError("TupleCodec: coordinate out of range");
        }
        i = i * _base + x;
      }
      return i;
    }

    void decode(std::size_t index, std::span<Elem> out) const {
      if (out.size() != _width || index >= _count) {
        throw InputError("TupleCodec: index out of range");
      }
      for (std::size_t j = _width; j-- > 0;) {
        out[j] = static_cast<Elem>(index % _base);
        index /= _base;
      }
    }

    [[nodiscard]] std::vector<Elem> decode(std::size_t index) const {
      std::vector<Elem> out(_width);
      decode(index, out);
      return out;
    }

    //! Coordinate j of the tuple with the given index.
    [[nodiscard]] Elem coordinate(std::size_t index, std::size_t j) const {
      for (std::size_t k = _width - 1; k > j; --k) {
        index /= _base;
      }
      return static_cast<Elem>(index % _base);
    }

   private:
    std::size_t _base;
    std::size_t _width;
    std::size_t _count;
  };

}  // namespace ualg
