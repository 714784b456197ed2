#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "power.hpp"
#include "term.hpp"
#include "vector_pool.hpp"

namespace ualg {

  //! A finitary operation on the universe together with a term (constants
  //! allowed) whose evaluation reproduces the table.
  struct WitnessedOperation {
    std::size_t       arity = 0;
    std::vector<Elem> table;  //!< over A^arity, TupleCodec order
    Term              witness;

    [[nodiscard]] Elem operator()(std::span<Elem const> args, std::size_t size) const {
      std::size_t idx = 0;
      for (Elem a : args) {
        idx = idx * size + a;
      }
      return table[idx];
    }
  };

  //! Finite set of argument tuples in A^m, optionally with a required value
  //! at each.
  struct PartialDomain {
    std::size_t                      arity = 0;
    std::vector<std::vector<Elem>>   points;
    std::optional<std::vector<Elem>> targets;

    void validate(std::size_t universe) const {
      std::vector<std::vector<Elem>> sorted = points;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("partial domain has repeated points");
      }
      for (auto const& p : points) {
        if (p.size() != arity) {
          throw InputError("partial domain point has wrong arity");
        }
        for (Elem x : p) {
          if (x >= universe) {
            throw InputError("partial domain point out of range");
          }
        }
      }
      if (targets) {
        if (targets->size() != points.size()) {
          throw InputError("partial domain targets length mismatch");
        }
        for (Elem t : *targets) {
          if (t >= universe) {
            throw InputError("partial domain target out of range");
          }
        }
      }
    }
  };

  //! Outcome of a budgeted closure.
  struct ClosureStatus {
    bool                       complete = false;  //!< the closure reached its fixpoint
    std::optional<std::size_t> hit;               //!< member that satisfied the stop predicate
  };

  //! The subalgebra of A^P generated by projection vectors (and constant
  //! vectors) for a list of P points of A^m: the restrictions of the m-ary
  //! polynomial (or term) operations to those points.
  //!
  //! Every member records the first derivation found, so a witness term can
  //! be rebuilt for it. Members are ordered by discovery, which is
  //! deterministic.
  class PolynomialClosure {
   public:
    enum class Kind : std::uint8_t { projection, constant, apply };

    struct Derivation {
      Kind                     kind  = Kind::projection;
      std::uint32_t            index = 0;  //!< variable, constant value or op
      std::vector<std::size_t> args;
    };

    using Predicate = std::function<bool(std::span<std::uint8_t const>)>;

    PolynomialClosure(FiniteAlgebra const& alg, std::size_t arity,
                      std::vector<std::vector<Elem>> const& points, bool allow_constants)
        : _alg(&alg), _arity(arity), _npoints(points.size()), _pool(points.size()) {
      if (alg.size() > 256) {
        throw InputError("polynomial closure supports universes of at most 256 elements");
      }
      _kernels = argument_kernels(alg);
      _points.reserve(points.size() * arity);
      for (auto const& p : points) {
        if (p.size() != arity) {
          throw InputError("closure domain point has wrong arity");
        }
        for (Elem x : p) {
          if (x >= alg.size()) {
            throw InputError("closure domain point out of range");
          }
          _points.push_back(static_cast<std::uint8_t>(x));
        }
      }
      std::vector<std::uint8_t> v(_npoints);
      for (std::size_t i = 0; i < arity; ++i) {
        for (std::size_t p = 0; p < _npoints; ++p) {
          v[p] = _points[p * arity + i];
        }
        add(v.data(), Derivation{Kind::projection, static_cast<std::uint32_t>(i), {}});
      }
      if (allow_constants) {
        for (Elem c = 0; c < alg.size(); ++c) {
          std::fill(v.begin(), v.end(), static_cast<std::uint8_t>(c));
          add(v.data(), Derivation{Kind::constant, c, {}});
        }
      }
      for (std::size_t op = 0; op < alg.num_operations(); ++op) {
        if (alg.arity(op) == 0) {
          std::fill(v.begin(), v.end(), static_cast<std::uint8_t>(alg.operation(op).table[0]));
          add(v.data(), Derivation{Kind::apply, static_cast<std::uint32_t>(op), {}});
        }
      }
      std::size_t const nops = alg.num_operations();
      _slots.resize(nops);
      for (std::size_t op = 0; op < nops; ++op) {
        for (std::size_t s = 0; s < alg.arity(op); ++s) {
          _slots[op].emplace_back(_npoints, _kernels[op][s], alg.size());
        }
      }
    }

    //! Closes under the basic operations until the fixpoint, the budget, or
    //! a new member satisfying `stop` (checked on every member, including the
    //! initial ones).
    ClosureStatus run(ClosureBudget const& budget, Predicate const& stop = {}) {
      budget.validate();
      if (_interrupted) {
        throw InvariantViolation("PolynomialClosure: cannot resume an interrupted closure");
      }
      _interrupted = true;
      ClosureStatus st;
      if (stop) {
        for (std::size_t id = _checked; id < _pool.size(); ++id) {
          if (stop(_pool.get(id))) {
            st.hit   = id;
            _checked = id + 1;
            return st;
          }
        }
        _checked = _pool.size();
      }
      FiniteAlgebra const&      a = *_alg;
      std::size_t const         N = a.size();
      std::vector<std::uint8_t> out(_npoints);
      std::vector<std::size_t>  repid;
      std::size_t               rounds = 0;
      while (_processed < _pool.size()) {
        if (++rounds > budget.max_rounds || budget.expired()) {
          return st;
        }
        std::size_t const frontier_end = _pool.size();
        for (std::size_t op = 0; op < a.num_operations(); ++op) {
          std::size_t const k = a.arity(op);
          if (k == 0) {
            continue;
          }
          auto const&              table = a.operation(op).table;
          std::vector<std::size_t> old(k);
          for (std::size_t s = 0; s < k; ++s) {
            old[s] = _slots[op][s].reps.size();
            for (std::size_t id = _processed; id < frontier_end; ++id) {
              _slots[op][s].offer(_pool.data(id), id);
            }
          }
          repid.assign(k, 0);
          for (std::size_t pivot = 0; pivot < k; ++pivot) {
            if (_slots[op][pivot].reps.size() == old[pivot]) {
              continue;
            }
            std::vector<std::size_t> lo(k), hi(k), cur(k);
            bool                     empty = false;
            for (std::size_t s = 0; s < k; ++s) {
              lo[s]  = (s == pivot) ? old[s] : 0;
              hi[s]  = (s < pivot) ? old[s] : _slots[op][s].reps.size();
              empty |= lo[s] >= hi[s];
              cur[s] = lo[s];
            }
            if (empty) {
              continue;
            }
            std::size_t ticks = 0;
            while (true) {
              for (std::size_t s = 0; s < k; ++s) {
                repid[s] = _slots[op][s].reps[cur[s]];
              }
              evaluate(table, N, repid, out.data());
              auto [id, fresh] = _pool.insert(out.data());
              if (fresh) {
                _derivations.push_back(Derivation{Kind::apply, static_cast<std::uint32_t>(op),
                                                  repid});
                if (stop && stop(_pool.get(id))) {
                  st.hit   = id;
                  _checked = _pool.size();
                  return st;
                }
                if (_pool.size() > budget.max_elements) {
                  return st;
                }
              }
              if ((++ticks & 0xFFFF) == 0 && budget.expired()) {
                return st;
              }
              std::size_t s    = k;
              bool        done = true;
              while (s-- > 0) {
                if (++cur[s] < hi[s]) {
                  done = false;
                  break;
                }
                cur[s] = lo[s];
              }
              if (done) {
                break;
              }
            }
          }
        }
        _processed = frontier_end;
        _checked   = _pool.size();
      }
      st.complete  = true;
      _complete    = true;
      _interrupted = false;
      return st;
    }

    [[nodiscard]] bool complete() const noexcept { return _complete; }
    [[nodiscard]] std::size_t size() const noexcept { return _pool.size(); }
    [[nodiscard]] std::size_t arity() const noexcept { return _arity; }
    [[nodiscard]] std::size_t num_points() const noexcept { return _npoints; }
    [[nodiscard]] std::span<std::uint8_t const> vec(std::size_t id) const { return _pool.get(id); }
    [[nodiscard]] FiniteAlgebra const& algebra() const noexcept { return *_alg; }

    [[nodiscard]] std::size_t find(std::span<std::uint8_t const> v) const {
      return _pool.find(v.data());
    }

    [[nodiscard]] Derivation const& derivation(std::size_t id) const { return _derivations[id]; }

    //! Term whose restriction to the points is member `id`.
    [[nodiscard]] Term witness(std::size_t id) const {
      if (_terms.size() < _pool.size()) {
        _terms.resize(_pool.size());
      }
      // Iterative post-order to keep deep derivations off the call stack.
      std::vector<std::pair<std::size_t, bool>> stack{{id, false}};
      while (!stack.empty()) {
        auto [cur, expanded] = stack.back();
        stack.pop_back();
        if (_terms[cur]) {
          continue;
        }
        Derivation const& d = _derivations[cur];
        if (d.kind == Kind::projection) {
          _terms[cur] = Term::var(d.index);
        } else if (d.kind == Kind::constant) {
          _terms[cur] = Term::constant(d.index);
        } else if (!expanded) {
          stack.emplace_back(cur, true);
          for (std::size_t c : d.args) {
            if (!_terms[c]) {
              stack.emplace_back(c, false);
            }
          }
        } else {
          std::vector<Term> args;
          for (std::size_t c : d.args) {
            args.push_back(*_terms[c]);
          }
          _terms[cur] = Term::apply(_alg->symbol(d.index), std::move(args));
        }
      }
      return *_terms[id];
    }

   private:
    struct SlotReps {
      SlotKernel const*        kernel;
      bool                     injective;
      bool                     constant;
      detail::VectorPool       projected;
      std::vector<std::size_t> reps;
      std::vector<std::uint8_t> buf;

      SlotReps(std::size_t npoints, SlotKernel const& k, std::size_t universe)
          : kernel(&k),
            injective(k.num_classes == universe),
            constant(k.num_classes <= 1),
            projected(npoints),
            buf(npoints) {}

      void offer(std::uint8_t const* v, std::size_t id) {
        if (injective) {
          reps.push_back(id);
          return;
        }
        if (constant) {
          if (reps.empty()) {
            reps.push_back(id);
          }
          return;
        }
        for (std::size_t p = 0; p < buf.size(); ++p) {
          buf[p] = static_cast<std::uint8_t>(kernel->cls[v[p]]);
        }
        if (projected.insert(buf.data()).second) {
          reps.push_back(id);
        }
      }
    };

    void add(std::uint8_t const* v, Derivation d) {
      if (_pool.insert(v).second) {
        _derivations.push_back(std::move(d));
      }
    }

    void evaluate(std::vector<Elem> const& table, std::size_t N,
                  std::vector<std::size_t> const& ids, std::uint8_t* out) const {
      std::size_t const k = ids.size();
      std::size_t const P = _npoints;
      if (k == 1) {
        std::uint8_t const* a = _pool.data(ids[0]);
        for (std::size_t p = 0; p < P; ++p) {
          out[p] = static_cast<std::uint8_t>(table[a[p]]);
        }
      } else if (k == 2) {
        std::uint8_t const* a = _pool.data(ids[0]);
        std::uint8_t const* b = _pool.data(ids[1]);
        for (std::size_t p = 0; p < P; ++p) {
          out[p] = static_cast<std::uint8_t>(table[a[p] * N + b[p]]);
        }
      } else {
        std::uint8_t const* src[16];
        std::vector<std::uint8_t const*> big;
        std::uint8_t const** s = src;
        if (k > 16) {
          big.resize(k);
          s = big.data();
        }
        for (std::size_t i = 0; i < k; ++i) {
          s[i] = _pool.data(ids[i]);
        }
        for (std::size_t p = 0; p < P; ++p) {
          std::size_t idx = 0;
          for (std::size_t i = 0; i < k; ++i) {
            idx = idx * N + s[i][p];
          }
          out[p] = static_cast<std::uint8_t>(table[idx]);
        }
      }
    }

    FiniteAlgebra const*                 _alg;
    std::size_t                          _arity;
    std::size_t                          _npoints;
    std::vector<std::uint8_t>            _points;
    detail::VectorPool                   _pool;
    std::vector<Derivation>              _derivations;
    ArgumentKernels                      _kernels;
    std::vector<std::vector<SlotReps>>   _slots;
    std::size_t                          _processed = 0;
    std::size_t                          _checked   = 0;
    bool                                 _complete  = false;
    bool                                 _interrupted = false;
    mutable std::vector<std::optional<Term>> _terms;
  };

  //! All points of A^m in TupleCodec order.
  inline std::vector<std::vector<Elem>> all_points(std::size_t size, std::size_t m,
                                                   std::size_t cap = kDefaultUniverseCap) {
    std::size_t const              count = checked_pow(size, m, cap);
    TupleCodec                     codec(size, m);
    std::vector<std::vector<Elem>> pts(count);
    for (std::size_t i = 0; i < count; ++i) {
      pts[i] = codec.decode(i);
    }
    return pts;
  }

  //! Result of a clone enumeration; `complete` is false if the budget ran
  //! out, in which case `operations` is a strict subset of the clone.
  struct CloneResult {
    std::vector<WitnessedOperation> operations;
    bool                            complete = false;
  };

  namespace detail {
    inline CloneResult clone_from_closure(PolynomialClosure const& cl, bool complete) {
      CloneResult r;
      r.complete = complete;
      std::vector<std::size_t> order(cl.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto a = cl.vec(x);
        auto b = cl.vec(y);
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
      });
      r.operations.reserve(order.size());
      for (std::size_t id : order) {
        auto              v = cl.vec(id);
        std::vector<Elem> table(v.begin(), v.end());
        r.operations.push_back(WitnessedOperation{cl.arity(), std::move(table), cl.witness(id)});
      }
      return r;
    }
  }  // namespace detail

  //! All unary polynomial operations of `alg`, sorted by table.
  inline CloneResult unary_polynomial_clone(FiniteAlgebra const& alg, ClosureBudget const& budget) {
    PolynomialClosure cl(alg, 1, all_points(alg.size(), 1), true);
    auto              st = cl.run(budget);
    return detail::clone_from_closure(cl, st.complete);
  }

  //! All m-ary polynomial operations of `alg` (m >= 1), sorted by table.
  inline CloneResult bounded_polynomial_clone(FiniteAlgebra const& alg, std::size_t m,
                                              ClosureBudget const& budget) {
    if (m == 0) {
      throw InputError("bounded_polynomial_clone: arity must be at least 1");
    }
    PolynomialClosure cl(alg, m, all_points(alg.size(), m), true);
    auto              st = cl.run(budget);
    return detail::clone_from_closure(cl, st.complete);
  }

  //! Composition power f^k that is idempotent, with k a multiple of every
  //! cycle length and at least the longest tail.
  inline WitnessedOperation idempotent_power(WitnessedOperation const& f) {
    if (f.arity != 1) {
      throw InputError("idempotent_power: operation must be unary");
    }
    std::size_t const n = f.table.size();
    // k must be >= every tail length and divisible by every cycle length.
    std::size_t tail = 0;
    std::size_t lcm  = 1;
    for (Elem x = 0; x < n; ++x) {
      std::vector<std::size_t> pos(n, static_cast<std::size_t>(-1));
      Elem                     y = x;
      std::size_t              t = 0;
      while (pos[y] == static_cast<std::size_t>(-1)) {
        pos[y] = t++;
        y      = f.table[y];
      }
      tail            = std::max(tail, pos[y]);
      std::size_t cyc = t - pos[y];
      lcm             = std::lcm(lcm, cyc);
    }
    std::size_t k = lcm;
    while (k < std::max<std::size_t>(tail, 1)) {
      k += lcm;
    }
    std::vector<Elem> table(n);
    for (Elem x = 0; x < n; ++x) {
      Elem y = x;
      for (std::size_t i = 0; i < k; ++i) {
        y = f.table[y];
      }
      table[x] = y;
    }
    // Witness: k-fold substitution of the witness into itself.
    Term w = Term::var(0);
    for (std::size_t i = 0; i < k; ++i) {
      w = substitute(f.witness, w);
    }
    return WitnessedOperation{1, std::move(table), std::move(w)};
  }

  //! Outcome of an interpolation search.
  struct InterpolationResult {
    Verdict                           verdict = Verdict::unknown;  //!< yes: found, no: refuted
    std::optional<WitnessedOperation> operation;
    std::size_t                       closure_size = 0;
  };

  //! Searches for a polynomial (or, without constants, a term operation)
  //! taking the prescribed value at every domain point.
  //!
  //! "no" is only reported when the closure of the restricted projections
  //! reached its fixpoint without meeting the target vector.
  inline InterpolationResult interpolation_closure(FiniteAlgebra const& alg,
                                                   PartialDomain const& domain,
                                                   bool                 allow_constants,
                                                   ClosureBudget const& budget) {
    domain.validate(alg.size());
    if (!domain.targets) {
      throw InputError("interpolation_closure: domain needs targets");
    }
    std::vector<std::uint8_t> target(domain.targets->begin(), domain.targets->end());
    PolynomialClosure         cl(alg, domain.arity, domain.points, allow_constants);
    auto st = cl.run(budget, [&](std::span<std::uint8_t const> v) {
      return std::equal(v.begin(), v.end(), target.begin());
    });
    InterpolationResult r;
    r.closure_size = cl.size();
    if (st.hit) {
      r.verdict    = Verdict::yes;
      Term w       = cl.witness(*st.hit);
      auto table   = term_table(alg, w, domain.arity);
      r.operation  = WitnessedOperation{domain.arity, std::move(table), std::move(w)};
    } else if (st.complete) {
      r.verdict = Verdict::no;
    }
    return r;
  }

  //! Checks that a unary operation is idempotent and returns its sorted range.
  inline std::vector<Elem> neighborhood_of(WitnessedOperation const& e) {
    if (e.arity != 1) {
      throw InputError("neighborhood: operation must be unary");
    }
    std::vector<Elem> range;
    for (Elem x = 0; x < e.table.size(); ++x) {
      if (e.table[e.table[x]] != e.table[x]) {
        throw InputError("neighborhood: operation is not idempotent");
      }
      if (e.table[x] == x) {
        range.push_back(x);
      }
    }
    return range;
  }

  //! An operation of the induced algebra on a neighborhood U. `table` is
  //! indexed by U^arity (TupleCodec over |U|, coordinates are positions in
  //! `domain`) and holds elements of A.
  struct InducedOperation {
    std::size_t       arity = 0;
    std::vector<Elem> domain;
    std::vector<Elem> table;
    Term              witness;  //!< e(p(x0,...)) as a term of A
  };

  struct InducedResult {
    std::vector<InducedOperation> operations;
    bool                          complete = false;
  };

  //! The m-ary polynomial operations of the induced algebra A|_{e(A)}:
  //! e∘p restricted to e(A)^m for p an m-ary polynomial of A.
  inline InducedResult induced_polynomials(FiniteAlgebra const&      alg,
                                           WitnessedOperation const& e,
                                           std::size_t               m,
                                           ClosureBudget const&      budget) {
    if (m == 0) {
      throw InputError("induced_polynomials: arity must be at least 1");
    }
    std::vector<Elem> const U = neighborhood_of(e);
    auto                    local = all_points(U.size(), m);
    for (auto& p : local) {
      for (auto& x : p) {
        x = U[x];
      }
    }
    PolynomialClosure cl(alg, m, local, true);
    auto              st = cl.run(budget);
    detail::VectorPool        seen(local.size());
    std::vector<std::uint8_t> buf(local.size());
    InducedResult             r;
    r.complete = st.complete;
    std::vector<std::size_t> members;
    for (std::size_t id = 0; id < cl.size(); ++id) {
      auto v = cl.vec(id);
      for (std::size_t p = 0; p < buf.size(); ++p) {
        buf[p] = static_cast<std::uint8_t>(e.table[v[p]]);
      }
      if (seen.insert(buf.data()).second) {
        members.push_back(id);
      }
    }
    std::vector<std::size_t> order(seen.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      auto a = seen.get(x);
      auto b = seen.get(y);
      return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    for (std::size_t i : order) {
      auto v = seen.get(i);
      r.operations.push_back(InducedOperation{
          m, U, std::vector<Elem>(v.begin(), v.end()),
          substitute(e.witness, cl.witness(members[i]))});
    }
    return r;
  }

}  // namespace ualg
