#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "algebra.hpp"
#include "power.hpp"

namespace ualg {

  //! Computes subuniverses of a fixed algebra.
  //!
  //! Operations are applied semi-naively: a round only evaluates argument
  //! tuples involving something new. Arguments are further collapsed to one
  //! representative per argument-kernel class, so an operation whose value
  //! ignores most of an argument is evaluated on few tuples.
  template <AlgebraLike A>
  class SubuniverseGenerator {
   public:
    explicit SubuniverseGenerator(A const& alg) : _alg(&alg), _kernels(argument_kernels(alg)) {}
    SubuniverseGenerator(A const& alg, ArgumentKernels kernels)
        : _alg(&alg), _kernels(std::move(kernels)) {}

    //! Least subuniverse containing `generators`, sorted ascending. Returns
    //! nullopt only if `budget` expires; `stop_at` ends the closure early
    //! once that many elements are present, and `stop_on` ends it as soon as
    //! it accepts a member (the partial set is returned in both cases).
    std::optional<std::vector<Elem>> generate(std::span<Elem const>            generators,
                                              ClosureBudget const*             budget  = nullptr,
                                              std::size_t                      stop_at = 0,
                                              std::function<bool(Elem)> const& stop_on = {}) const {
      A const&          a = *_alg;
      std::size_t const n = a.size();
      std::vector<char> in(n, 0);
      std::vector<Elem> members;
      bool              stopped = false;
      auto              add     = [&](Elem x) {
        if (!in[x]) {
          in[x] = 1;
          members.push_back(x);
          if (stop_on && stop_on(x)) {
            stopped = true;
          }
        }
      };
      for (Elem g : generators) {
        if (g >= n) {
          throw InputError("generator out of range");
        }
        add(g);
      }
      for (std::size_t op = 0; op < a.num_operations(); ++op) {
        if (a.arity(op) == 0) {
          add(a.apply(op, {}));
        }
      }

      std::size_t const nops = a.num_operations();
      // Per op and slot: representatives of kernel classes seen so far, and
      // a marker of which classes are present.
      std::vector<std::vector<std::vector<Elem>>> reps(nops);
      std::vector<std::vector<std::vector<char>>> seen(nops);
      for (std::size_t op = 0; op < nops; ++op) {
        reps[op].resize(a.arity(op));
        seen[op].resize(a.arity(op));
        for (std::size_t s = 0; s < a.arity(op); ++s) {
          seen[op][s].assign(_kernels[op][s].num_classes, 0);
        }
      }

      std::size_t       processed = 0;
      std::vector<Elem> args;
      std::size_t       rounds = 0;
      while (processed < members.size() && !stopped) {
        if (stop_at != 0 && members.size() >= stop_at) {
          break;
        }
        if (budget != nullptr
            && (budget->expired() || ++rounds > budget->max_rounds
                || members.size() > budget->max_elements)) {
          return std::nullopt;
        }
        std::size_t const frontier_end = members.size();
        for (std::size_t op = 0; op < nops; ++op) {
          std::size_t const k = a.arity(op);
          if (k == 0) {
            continue;
          }
          // old[s] = number of representatives known before this round
          std::vector<std::size_t> old(k);
          for (std::size_t s = 0; s < k; ++s) {
            old[s] = reps[op][s].size();
            auto const& cls = _kernels[op][s].cls;
            for (std::size_t i = processed; i < frontier_end; ++i) {
              Elem const x = members[i];
              if (!seen[op][s][cls[x]]) {
                seen[op][s][cls[x]] = 1;
                reps[op][s].push_back(x);
              }
            }
          }
          args.assign(k, 0);
          // Tuples whose first new slot is `pivot`.
          for (std::size_t pivot = 0; pivot < k; ++pivot) {
            if (reps[op][pivot].size() == old[pivot]) {
              continue;
            }
            std::vector<std::size_t> lo(k), hi(k), cur(k);
            bool                     empty = false;
            for (std::size_t s = 0; s < k; ++s) {
              lo[s] = (s == pivot) ? old[s] : 0;
              hi[s] = (s < pivot) ? old[s] : reps[op][s].size();
              if (lo[s] >= hi[s]) {
                empty = true;
              }
              cur[s] = lo[s];
            }
            if (empty) {
              continue;
            }
            while (!stopped) {
              for (std::size_t s = 0; s < k; ++s) {
                args[s] = reps[op][s][cur[s]];
              }
              add(a.apply(op, args));
              if (stopped) {
                break;
              }
              std::size_t s = k;
              while (s > 0) {
                --s;
                if (++cur[s] < hi[s]) {
                  break;
                }
                cur[s] = lo[s];
                if (s == 0) {
                  s = k + 1;
                  break;
                }
              }
              if (s == k + 1) {
                break;
              }
            }
          }
        }
        processed = frontier_end;
      }
      std::sort(members.begin(), members.end());
      return members;
    }

    [[nodiscard]] A const& algebra() const noexcept { return *_alg; }

   private:
    A const*        _alg;
    ArgumentKernels _kernels;
  };

  //! Least subuniverse of `alg` containing `generators`, sorted ascending.
  //! With no generators the result consists of the values of constant terms.
  inline std::vector<Elem> generate_subuniverse(FiniteAlgebra const&  alg,
                                                std::span<Elem const> generators) {
    return *SubuniverseGenerator<FiniteAlgebra>(alg).generate(generators);
  }

  inline std::vector<Elem> generate_subuniverse(FiniteAlgebra const&        alg,
                                                std::initializer_list<Elem> generators) {
    std::vector<Elem> g(generators);
    return generate_subuniverse(alg, std::span<Elem const>(g));
  }

}  // namespace ualg
