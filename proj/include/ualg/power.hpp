#pragma once

#include <cstddef>
#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "partition.hpp"
#include "tuple_codec.hpp"

namespace ualg {

  //! Kernel of one argument slot of an operation: a ~ b iff replacing a by b
  //! in that slot never changes the value. `cls[a]` is a dense class id.
  struct SlotKernel {
    std::vector<Elem> cls;
    std::size_t       num_classes = 0;
  };

  //! kernels[op][slot]
  using ArgumentKernels = std::vector<std::vector<SlotKernel>>;

  inline ArgumentKernels argument_kernels(FiniteAlgebra const& alg) {
    std::size_t const n = alg.size();
    ArgumentKernels   out(alg.num_operations());
    for (std::size_t op = 0; op < alg.num_operations(); ++op) {
      auto const&       table = alg.operation(op).table;
      std::size_t const k     = alg.arity(op);
      out[op].resize(k);
      for (std::size_t slot = 0; slot < k; ++slot) {
        // stride of the slot in the row-major table
        std::size_t stride = 1;
        for (std::size_t j = slot + 1; j < k; ++j) {
          stride *= n;
        }
        std::size_t const                  outer = table.size() / (stride * n);
        std::map<std::vector<Elem>, Elem>  ids;
        SlotKernel&                        sk = out[op][slot];
        sk.cls.resize(n);
        std::vector<Elem> slice;
        for (Elem a = 0; a < n; ++a) {
          slice.clear();
          for (std::size_t hi = 0; hi < outer; ++hi) {
            std::size_t base = hi * stride * n + a * stride;
            for (std::size_t lo = 0; lo < stride; ++lo) {
              slice.push_back(table[base + lo]);
            }
          }
          auto [it, fresh] = ids.emplace(slice, static_cast<Elem>(ids.size()));
          sk.cls[a]        = it->second;
        }
        sk.num_classes = ids.size();
      }
    }
    return out;
  }

  //! The direct power base^n evaluated coordinatewise without materializing
  //! operation tables. Elements are encoded by TupleCodec(base.size(), n).
  class PowerView {
   public:
    PowerView(FiniteAlgebra const& base, std::size_t n, std::size_t cap = kDefaultUniverseCap)
        : _base(&base), _n(n), _codec(base.size(), n) {
      if (n == 0) {
        throw InputError("direct power exponent must be positive");
      }
      _size = checked_pow(base.size(), n, cap);
      _digits.resize(_size * n);
      std::vector<Elem> t(n);
      for (std::size_t x = 0; x < _size; ++x) {
        _codec.decode(x, t);
        std::copy(t.begin(), t.end(), _digits.begin() + static_cast<std::ptrdiff_t>(x * n));
      }
    }

    [[nodiscard]] std::size_t size() const noexcept { return _size; }
    [[nodiscard]] std::size_t exponent() const noexcept { return _n; }
    [[nodiscard]] FiniteAlgebra const& base() const noexcept { return *_base; }
    [[nodiscard]] TupleCodec const& codec() const noexcept { return _codec; }
    [[nodiscard]] std::size_t num_operations() const { return _base->num_operations(); }
    [[nodiscard]] std::size_t arity(std::size_t i) const { return _base->arity(i); }
    [[nodiscard]] std::string const& symbol(std::size_t i) const { return _base->symbol(i); }

    [[nodiscard]] Elem coordinate(Elem x, std::size_t j) const { return _digits[x * _n + j]; }

    [[nodiscard]] Elem apply(std::size_t op, std::span<Elem const> args) const {
      std::size_t const k     = args.size();
      auto const&       table = _base->operation(op).table;
      std::size_t const bn    = _base->size();
      std::size_t       out   = 0;
      for (std::size_t j = 0; j < _n; ++j) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) {
          idx = idx * bn + _digits[args[i] * _n + j];
        }
        out = out * bn + table[idx];
      }
      return static_cast<Elem>(out);
    }

    [[nodiscard]] Elem encode(std::span<Elem const> tuple) const {
      return static_cast<Elem>(_codec.encode(tuple));
    }

   private:
    FiniteAlgebra const* _base;
    std::size_t          _n;
    TupleCodec           _codec;
    std::size_t          _size = 0;
    std::vector<Elem>    _digits;
  };

  inline ArgumentKernels argument_kernels(PowerView const& pw) {
    ArgumentKernels base = argument_kernels(pw.base());
    ArgumentKernels out(base.size());
    for (std::size_t op = 0; op < base.size(); ++op) {
      out[op].resize(base[op].size());
      for (std::size_t slot = 0; slot < base[op].size(); ++slot) {
        auto const& bk = base[op][slot];
        SlotKernel& sk = out[op][slot];
        sk.cls.resize(pw.size());
        std::size_t total = 1;
        for (std::size_t j = 0; j < pw.exponent(); ++j) {
          total *= bk.num_classes;
        }
        sk.num_classes = total;
        for (Elem x = 0; x < pw.size(); ++x) {
          std::size_t c = 0;
          for (std::size_t j = 0; j < pw.exponent(); ++j) {
            c = c * bk.num_classes + bk.cls[pw.coordinate(x, j)];
          }
          sk.cls[x] = static_cast<Elem>(c);
        }
      }
    }
    return out;
  }

  //! Materializes every operation of an AlgebraLike as a table.
  template <AlgebraLike A>
  FiniteAlgebra materialize(A const& a, std::string name, std::size_t cap = kDefaultUniverseCap) {
    std::vector<Operation> ops;
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      std::size_t const k = a.arity(op);
      checked_pow(a.size(), k, cap);
      ops.push_back(make_operation(a.symbol(op), a.size(), k,
                                   [&](std::span<Elem const> args) { return a.apply(op, args); }));
    }
    return FiniteAlgebra(std::move(name), a.size(), std::move(ops));
  }

  //! alg^n with materialized tables. Both the universe and every table must
  //! fit within `cap`; use PowerView for lazy evaluation.
  inline FiniteAlgebra direct_power(FiniteAlgebra const& alg, std::size_t n,
                                    std::size_t cap = kDefaultUniverseCap) {
    PowerView pw(alg, n, cap);
    if (n == 1) {
      return FiniteAlgebra(alg.name(), alg.size(), alg.operations(), alg.element_names());
    }
    return materialize(pw, alg.name() + "^" + std::to_string(n), cap);
  }

  //! Checks that `theta` is compatible with every operation of `a` and
  //! returns a description of the first violation, if any.
  template <AlgebraLike A>
  std::optional<std::string> compatibility_violation(A const& a, Partition const& theta) {
    if (theta.universe_size() != a.size()) {
      return "partition size differs from algebra size";
    }
    // It suffices to check translations: change one argument within its block.
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      std::size_t const k = a.arity(op);
      if (k == 0) {
        continue;
      }
      TupleCodec        codec(a.size(), k);
      std::vector<Elem> args(k);
      for (std::size_t idx = 0; idx < codec.count(); ++idx) {
        codec.decode(idx, args);
        Elem const v = a.apply(op, args);
        for (std::size_t slot = 0; slot < k; ++slot) {
          Elem const orig = args[slot];
          Elem const rep  = theta.class_of(orig);
          if (rep == orig) {
            continue;
          }
          args[slot]   = rep;
          Elem const w = a.apply(op, args);
          args[slot]   = orig;
          if (!theta.related(v, w)) {
            std::string where = a.symbol(op) + "(";
            for (std::size_t i = 0; i < k; ++i) {
              where += (i ? "," : "") + std::to_string(args[i]);
            }
            return where + ") with argument " + std::to_string(slot) + " replaced by "
                   + std::to_string(rep);
          }
        }
      }
    }
    return std::nullopt;
  }

  struct QuotientResult {
    FiniteAlgebra     algebra;
    std::vector<Elem> projection;  //!< element -> block index
  };

  //! a/theta with blocks indexed in order of least member.
  template <AlgebraLike A>
  QuotientResult quotient(A const& a, Partition const& theta, std::string name = "",
                          bool verify = true) {
    if (verify) {
      if (auto bad = compatibility_violation(a, theta)) {
        throw InputError("quotient: partition is not a congruence: " + *bad);
      }
    }
    std::vector<Elem> proj  = theta.block_indices();
    auto              reps  = theta.blocks();
    std::size_t const m     = reps.size();
    std::vector<Operation> ops;
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      std::size_t const k = a.arity(op);
      std::vector<Elem> lifted(k);
      ops.push_back(make_operation(a.symbol(op), m, k, [&](std::span<Elem const> args) {
        for (std::size_t i = 0; i < k; ++i) {
          lifted[i] = reps[args[i]].front();
        }
        return proj[a.apply(op, lifted)];
      }));
    }
    if (name.empty()) {
      name = "quotient";
    }
    return QuotientResult{FiniteAlgebra(std::move(name), m, std::move(ops)), std::move(proj)};
  }

  //! Symbol used for the nullary operation naming element e.
  inline std::string constant_symbol(Elem e) { return "c" + std::to_string(e); }

  //! Adds one nullary operation per element. Expanding an already expanded
  //! algebra adds tables equal to the existing constants, under fresh names.
  inline FiniteAlgebra constant_expansion(FiniteAlgebra const& alg) {
    std::vector<Operation> ops = alg.operations();
    for (Elem e = 0; e < alg.size(); ++e) {
      std::string sym = constant_symbol(e);
      while (std::any_of(ops.begin(), ops.end(),
                         [&](Operation const& o) { return o.symbol == sym; })) {
        sym += "'";
      }
      ops.push_back(Operation{sym, 0, {e}});
    }
    return FiniteAlgebra(alg.name() + "+const", alg.size(), std::move(ops), alg.element_names());
  }

}  // namespace ualg
