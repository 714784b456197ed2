#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "tuple_codec.hpp"

namespace ualg {

  //! A basic operation given by its full table. Row-major over A^arity with
  //! the last argument varying fastest.
  struct Operation {
    std::string       symbol;
    std::size_t       arity = 0;
    std::vector<Elem> table;

    bool operator==(Operation const&) const = default;
  };

  //! A finite algebra on {0, ..., size-1} given by operation tables.
  //!
  //! Instances are validated on construction and immutable afterwards.
  class FiniteAlgebra {
   public:
    FiniteAlgebra(std::string              name,
                  std::size_t              size,
                  std::vector<Operation>   operations,
                  std::vector<std::string> element_names = {})
        : _name(std::move(name)),
          _size(size),
          _ops(std::move(operations)),
          _element_names(std::move(element_names)) {
      validate();
    }

    [[nodiscard]] std::string const& name() const noexcept { return _name; }
    [[nodiscard]] std::size_t size() const noexcept { return _size; }
    [[nodiscard]] std::vector<Operation> const& operations() const noexcept {
      return _ops;
    }
    [[nodiscard]] std::size_t num_operations() const noexcept { return _ops.size(); }
    [[nodiscard]] Operation const& operation(std::size_t i) const { return _ops.at(i); }
    [[nodiscard]] std::size_t arity(std::size_t i) const { return _ops[i].arity; }
    [[nodiscard]] std::string const& symbol(std::size_t i) const { return _ops[i].symbol; }
    [[nodiscard]] std::vector<std::string> const& element_names() const noexcept {
      return _element_names;
    }

    [[nodiscard]] std::optional<std::size_t> find_operation(std::string_view symbol) const {
      for (std::size_t i = 0; i < _ops.size(); ++i) {
        if (_ops[i].symbol == symbol) {
          return i;
        }
      }
      return std::nullopt;
    }

    [[nodiscard]] std::size_t operation_index(std::string_view symbol) const {
      auto i = find_operation(symbol);
      if (!i) {
        throw InputError("unknown operation symbol '" + std::string(symbol)
                         + "' in algebra " + _name);
      }
      return *i;
    }

    [[nodiscard]] Elem apply(std::size_t op, std::span<Elem const> args) const {
      auto const& o = _ops[op];
      std::size_t idx = 0;
      for (Elem a : args) {
        idx = idx * _size + a;
      }
      return o.table[idx];
    }

    [[nodiscard]] std::size_t max_arity() const noexcept {
      std::size_t m = 0;
      for (auto const& o : _ops) {
        m = std::max(m, o.arity);
      }
      return m;
    }

    [[nodiscard]] std::string element_label(Elem e) const {
      if (e < _element_names.size()) {
        return _element_names[e];
      }
      return std::to_string(e);
    }

    void set_name(std::string name) { _name = std::move(name); }

   private:
    void validate() const {
      if (_size == 0) {
        throw InputError("algebra " + _name + ": size must be positive");
      }
      if (!_element_names.empty() && _element_names.size() != _size) {
        throw InputError("algebra " + _name + ": element_names length "
                         + std::to_string(_element_names.size())
                         + " differs from size " + std::to_string(_size));
      }
      std::unordered_set<std::string> seen;
      for (auto const& o : _ops) {
        if (!seen.insert(o.symbol).second) {
          throw InputError("algebra " + _name + ": duplicate operation symbol '"
                           + o.symbol + "'");
        }
        std::size_t expected = checked_pow(_size, o.arity, SIZE_MAX);
        if (o.table.size() != expected) {
          throw InputError("algebra " + _name + ": operation '" + o.symbol
                           + "' has table length " + std::to_string(o.table.size())
                           + ", expected " + std::to_string(expected));
        }
        for (std::size_t i = 0; i < o.table.size(); ++i) {
          if (o.table[i] >= _size) {
            throw InputError("algebra " + _name + ": operation '" + o.symbol
                             + "' entry " + std::to_string(i) + " = "
                             + std::to_string(o.table[i]) + " is out of range");
          }
        }
      }
    }

    std::string              _name;
    std::size_t              _size;
    std::vector<Operation>   _ops;
    std::vector<std::string> _element_names;
  };

  //! Anything that can be evaluated like an algebra: a universe size and
  //! operations applied to argument spans.
  template <typename A>
  concept AlgebraLike = requires(A const& a, std::size_t i, std::span<Elem const> args) {
    { a.size() } -> std::convertible_to<std::size_t>;
    { a.num_operations() } -> std::convertible_to<std::size_t>;
    { a.arity(i) } -> std::convertible_to<std::size_t>;
    { a.symbol(i) } -> std::convertible_to<std::string>;
    { a.apply(i, args) } -> std::convertible_to<Elem>;
  };

  //! Builds an operation table from a callable on argument tuples.
  template <typename Fn>
  Operation make_operation(std::string symbol, std::size_t size, std::size_t arity, Fn&& fn) {
    TupleCodec        codec(size, arity);
    std::vector<Elem> table(codec.count());
    std::vector<Elem> args(arity);
    for (std::size_t i = 0; i < codec.count(); ++i) {
      codec.decode(i, args);
      table[i] = static_cast<Elem>(fn(std::span<Elem const>(args)));
    }
    return Operation{std::move(symbol), arity, std::move(table)};
  }

}  // namespace ualg
