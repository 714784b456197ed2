#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "clone.hpp"
#include "congruence.hpp"
#include "error.hpp"
#include "partition.hpp"

namespace ualg {

  //! An ⟨α,β⟩-minimal set with the unary polynomial witnessing it.
  struct MinimalSet {
    std::vector<Elem>                 elements;
    WitnessedOperation                witness;     //!< f with f(A) = U
    std::optional<WitnessedOperation> idempotent;  //!< e with e(A) = U, e∘e = e
  };

  struct MinimalSetsResult {
    std::vector<MinimalSet> sets;      //!< sorted by element list
    bool                    complete = false;
    std::vector<std::string> warnings;
  };

  struct TraceReport {
    std::vector<std::vector<Elem>> traces;
    std::vector<Elem>              body;
    std::vector<Elem>              tail;
  };

  enum class TypeLabel { One, Two, NonabelianFamily, Unknown };

  inline char const* to_string(TypeLabel t) {
    switch (t) {
      case TypeLabel::One: return "1";
      case TypeLabel::Two: return "2";
      case TypeLabel::NonabelianFamily: return "nonabelian";
      default: return "unknown";
    }
  }

  //! Throws unless α < β are congruences with nothing strictly between.
  template <AlgebraLike A>
  void require_covering(A const& alg, Congruence const& alpha, Congruence const& beta) {
    std::size_t const n = alg.size();
    if (alpha.universe_size() != n || beta.universe_size() != n) {
      throw InputError("congruence on a different universe");
    }
    if (!alpha.leq(beta) || alpha == beta) {
      throw InputError("expected a covering pair alpha < beta");
    }
    for (auto const* c : {&alpha, &beta}) {
      if (auto bad = compatibility_violation(alg, *c)) {
        throw InputError("not a congruence: " + *bad);
      }
    }
    CongruenceGenerator gen(alg);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (beta.related(a, b) && !alpha.related(a, b)) {
          if (gen.generate({{a, b}}, &alpha) != beta) {
            throw InputError("alpha is not covered by beta");
          }
        }
      }
    }
  }

  namespace detail {
    inline std::vector<Elem> range_of(std::vector<Elem> const& table) {
      std::vector<Elem> r(table);
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    }

    inline bool separates(std::vector<Elem> const& f, Congruence const& alpha,
                          Congruence const& beta) {
      for (Elem a = 0; a < f.size(); ++a) {
        Elem const b = beta.class_of(a);
        if (!alpha.related(f[a], f[b])) {
          return true;
        }
      }
      return false;
    }

    inline bool is_idempotent_map(std::vector<Elem> const& f) {
      for (Elem x = 0; x < f.size(); ++x) {
        if (f[f[x]] != f[x]) {
          return false;
        }
      }
      return true;
    }
  }  // namespace detail

  //! All ⟨α,β⟩-minimal sets from a precomputed unary polynomial clone.
  inline MinimalSetsResult minimal_sets_from_clone(CloneResult const& pol1, Congruence const& alpha,
                                                   Congruence const& beta) {
    MinimalSetsResult out;
    out.complete = pol1.complete;
    std::map<std::vector<Elem>, std::size_t> first;  // range -> clone index
    for (std::size_t i = 0; i < pol1.operations.size(); ++i) {
      auto const& f = pol1.operations[i].table;
      if (detail::separates(f, alpha, beta)) {
        first.emplace(detail::range_of(f), i);
      }
    }
    for (auto const& [range, idx] : first) {
      bool minimal = true;
      for (auto const& [other, j] : first) {
        if (other.size() < range.size()
            && std::includes(range.begin(), range.end(), other.begin(), other.end())) {
          minimal = false;
          break;
        }
      }
      if (!minimal) {
        continue;
      }
      MinimalSet ms{range, pol1.operations[idx], std::nullopt};
      for (auto const& g : pol1.operations) {
        if (detail::is_idempotent_map(g.table) && detail::range_of(g.table) == range) {
          ms.idempotent = g;
          break;
        }
      }
      if (!ms.idempotent) {
        out.warnings.push_back("no idempotent polynomial with range of size "
                               + std::to_string(range.size()) + " in the computed clone");
      }
      out.sets.push_back(std::move(ms));
    }
    return out;
  }

  //! The ⟨α,β⟩-minimal sets of a covering pair α ≺ β.
  inline MinimalSetsResult minimal_sets(FiniteAlgebra const& alg, Congruence const& alpha,
                                        Congruence const& beta, ClosureBudget const& budget) {
    require_covering(alg, alpha, beta);
    return minimal_sets_from_clone(unary_polynomial_clone(alg, budget), alpha, beta);
  }

  //! Traces of U: the β|_U-classes meeting at least two α-classes.
  inline TraceReport traces_and_body(FiniteAlgebra const& alg, Congruence const& alpha,
                                     Congruence const& beta, std::vector<Elem> const& U) {
    if (!alpha.leq(beta) || alpha == beta) {
      throw InputError("traces_and_body: expected alpha < beta");
    }
    std::map<Elem, std::vector<Elem>> blocks;
    for (Elem u : U) {
      if (u >= alg.size()) {
        throw InputError("traces_and_body: element out of range");
      }
      blocks[beta.class_of(u)].push_back(u);
    }
    TraceReport r;
    for (auto& [key, block] : blocks) {
      std::sort(block.begin(), block.end());
      std::set<Elem> alpha_classes;
      for (Elem u : block) {
        alpha_classes.insert(alpha.class_of(u));
      }
      if (alpha_classes.size() >= 2) {
        r.traces.push_back(block);
        r.body.insert(r.body.end(), block.begin(), block.end());
      } else {
        r.tail.insert(r.tail.end(), block.begin(), block.end());
      }
    }
    std::sort(r.traces.begin(), r.traces.end());
    std::sort(r.body.begin(), r.body.end());
    std::sort(r.tail.begin(), r.tail.end());
    return r;
  }

  //! Outcome of typing a prime quotient.
  struct TypeResult {
    TypeLabel                         label = TypeLabel::Unknown;
    std::vector<Elem>                 minimal_set;
    std::vector<Elem>                 trace;
    std::optional<WitnessedOperation> maltsev;        //!< Maltsev modulo α on the trace
    std::optional<Term>               nonunary;       //!< an induced operation that is not essentially unary
    bool                              arity_limited = false;  //!< "One" confirmed only up to the arity cap
    std::string                       note;
  };

  namespace detail {
    // Restriction of a closure member to the trace N, after applying e.
    // Returns false if e∘p does not map N^m into N.
    inline bool trace_values(std::span<std::uint8_t const> v, std::vector<Elem> const& e,
                             std::vector<char> const& in_n, std::vector<Elem>& out) {
      out.resize(v.size());
      for (std::size_t p = 0; p < v.size(); ++p) {
        Elem const w = e[v[p]];
        if (!in_n[w]) {
          return false;
        }
        out[p] = w;
      }
      return true;
    }

    // Is the operation (values over N^m in TupleCodec order) essentially
    // unary modulo α?
    inline bool essentially_unary_mod(std::vector<Elem> const& vals, std::vector<Elem> const& N,
                                      std::size_t m, Congruence const& alpha) {
      TupleCodec        codec(N.size(), m);
      std::vector<Elem> t(m);
      for (std::size_t i = 0; i < m; ++i) {
        std::map<Elem, Elem> induced;
        bool                 ok = true;
        for (std::size_t idx = 0; idx < vals.size() && ok; ++idx) {
          codec.decode(idx, t);
          Elem const key = alpha.class_of(N[t[i]]);
          Elem const val = alpha.class_of(vals[idx]);
          auto [it, fresh] = induced.emplace(key, val);
          ok               = fresh || it->second == val;
        }
        if (ok) {
          return true;
        }
      }
      return false;
    }
  }  // namespace detail

  //! Type label of the prime quotient ⟨α,β⟩, computed on the first trace of
  //! the first minimal set (canonical order).
  //!
  //! Two: the trace algebra modulo α has a Maltsev polynomial and its binary
  //! polynomials satisfy the term condition (ruling out type 3). One: no
  //! Maltsev polynomial and every induced operation up to `arity_cap` is
  //! essentially unary. Anything else is in the nonabelian family.
  //!
  //! This variant trusts that α ≺ β and takes a precomputed unary clone.
  inline TypeResult type_of_cover(FiniteAlgebra const& alg, CloneResult const& pol1,
                                  Congruence const& alpha, Congruence const& beta,
                                  ClosureBudget const& budget, std::size_t arity_cap = 3) {
    TypeResult res;
    auto       ms = minimal_sets_from_clone(pol1, alpha, beta);
    if (!ms.complete || ms.sets.empty() || !ms.sets.front().idempotent) {
      res.note = "unary polynomial clone incomplete";
      return res;
    }
    MinimalSet const& U = ms.sets.front();
    res.minimal_set     = U.elements;
    auto tr             = traces_and_body(alg, alpha, beta, U.elements);
    if (tr.traces.empty()) {
      throw InvariantViolation("minimal set without a trace");
    }
    std::vector<Elem> const& N = tr.traces.front();
    res.trace                  = N;
    std::vector<Elem> const& e = U.idempotent->table;
    std::vector<char>        in_n(alg.size(), 0);
    for (Elem x : N) {
      in_n[x] = 1;
    }
    auto points_of = [&](std::size_t m) {
      auto pts = all_points(N.size(), m);
      for (auto& p : pts) {
        for (auto& x : p) {
          x = N[x];
        }
      }
      return pts;
    };
    auto witness_of = [&](PolynomialClosure const& cl, std::size_t id) {
      return substitute(U.idempotent->witness, cl.witness(id));
    };

    // Maltsev modulo α on N. The ternary closure is kept for the type 1 check.
    auto              pts3 = points_of(3);
    PolynomialClosure cl3(alg, 3, pts3, true);
    {
      auto const&       pts = pts3;
      auto&             cl  = cl3;
      std::vector<Elem> vals;
      auto              st = cl.run(budget, [&](std::span<std::uint8_t const> v) {
        if (!detail::trace_values(v, e, in_n, vals)) {
          return false;
        }
        for (std::size_t p = 0; p < pts.size(); ++p) {
          auto const& q = pts[p];
          if (q[1] == q[2] && !alpha.related(vals[p], q[0])) {
            return false;
          }
          if (q[0] == q[1] && !alpha.related(vals[p], q[2])) {
            return false;
          }
        }
        return true;
      });
      if (st.hit) {
        Term w      = witness_of(cl, *st.hit);
        auto table  = term_table(alg, w, 3);
        res.maltsev = WitnessedOperation{3, std::move(table), w};
      } else if (!st.complete) {
        res.note = "Maltsev search on the trace ran out of budget";
        return res;
      }
    }

    if (res.maltsev) {
      // Term condition for binary trace operations modulo α.
      auto              pts = points_of(2);
      PolynomialClosure cl(alg, 2, pts, true);
      auto              st = cl.run(budget);
      if (!st.complete) {
        res.note = "binary trace clone incomplete";
        return res;
      }
      std::size_t const t = N.size();
      std::vector<Elem> vals;
      for (std::size_t id = 0; id < cl.size(); ++id) {
        if (!detail::trace_values(cl.vec(id), e, in_n, vals)) {
          continue;
        }
        for (std::size_t a = 0; a < t; ++a) {
          for (std::size_t b = 0; b < t; ++b) {
            for (std::size_t c = 0; c < t; ++c) {
              for (std::size_t d = 0; d < t; ++d) {
                if (alpha.related(vals[a * t + c], vals[a * t + d])
                    && !alpha.related(vals[b * t + c], vals[b * t + d])) {
                  res.label    = TypeLabel::NonabelianFamily;
                  res.nonunary = witness_of(cl, id);
                  res.note     = "Maltsev polynomial present but term condition fails";
                  return res;
                }
              }
            }
          }
        }
      }
      res.label = TypeLabel::Two;
      return res;
    }

    // Every ternary induced operation essentially unary covers arity 2 too.
    std::vector<Elem> vals;
    auto nonunary = [&](PolynomialClosure const& cl, std::size_t m, std::size_t id) {
      return detail::trace_values(cl.vec(id), e, in_n, vals)
             && !detail::essentially_unary_mod(vals, N, m, alpha);
    };
    for (std::size_t id = 0; arity_cap >= 2 && id < cl3.size(); ++id) {
      if (nonunary(cl3, 3, id)) {
        res.label    = TypeLabel::NonabelianFamily;
        res.nonunary = witness_of(cl3, id);
        return res;
      }
    }
    for (std::size_t m = 4; m <= arity_cap; ++m) {
      auto              pts = points_of(m);
      PolynomialClosure cl(alg, m, pts, true);
      auto              st = cl.run(budget, [&](std::span<std::uint8_t const> v) {
        return detail::trace_values(v, e, in_n, vals)
               && !detail::essentially_unary_mod(vals, N, m, alpha);
      });
      if (st.hit) {
        res.label    = TypeLabel::NonabelianFamily;
        res.nonunary = witness_of(cl, *st.hit);
        return res;
      }
      if (!st.complete) {
        res.note = "trace clone of arity " + std::to_string(m) + " incomplete";
        return res;
      }
    }
    res.label         = TypeLabel::One;
    res.arity_limited = true;
    return res;
  }

  inline TypeResult type_of(FiniteAlgebra const& alg, Congruence const& alpha,
                            Congruence const& beta, ClosureBudget const& budget,
                            std::size_t arity_cap = 3) {
    require_covering(alg, alpha, beta);
    return type_of_cover(alg, unary_polynomial_clone(alg, budget), alpha, beta, budget, arity_cap);
  }

  //! Groups minimal sets into polynomial isomorphism classes: U ~ V iff
  //! f(U) = V and g(V) = U for unary polynomials with g∘f the identity on U.
  //! Returns index lists, sorted.
  inline std::vector<std::vector<std::size_t>> polynomial_isomorphism_classes(
      CloneResult const& pol1, std::vector<std::vector<Elem>> const& sets) {
    std::size_t const k = sets.size();
    UnionFind         uf(k);
    auto              image = [](std::vector<Elem> const& f, std::vector<Elem> const& U) {
      std::vector<Elem> r;
      for (Elem u : U) {
        r.push_back(f[u]);
      }
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
      return r;
    };
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        auto const& U = sets[i];
        auto const& V = sets[j];
        if (U.size() != V.size() || uf.find(static_cast<Elem>(i)) == uf.find(static_cast<Elem>(j))) {
          continue;
        }
        // Restrictions g|_V of polynomials with g(V) = U.
        std::set<std::vector<Elem>> back;
        for (auto const& g : pol1.operations) {
          if (image(g.table, V) == U) {
            std::vector<Elem> r;
            for (Elem v : V) {
              r.push_back(g.table[v]);
            }
            back.insert(std::move(r));
          }
        }
        for (auto const& f : pol1.operations) {
          if (image(f.table, U) != V) {
            continue;
          }
          // g must invert f on U: g(f(u)) = u.
          std::vector<Elem> need(V.size());
          for (Elem u : U) {
            auto pos  = std::lower_bound(V.begin(), V.end(), f.table[u]) - V.begin();
            need[pos] = u;
          }
          if (back.count(need)) {
            uf.unite(static_cast<Elem>(i), static_cast<Elem>(j));
            break;
          }
        }
      }
    }
    std::map<Elem, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < k; ++i) {
      groups[uf.find(static_cast<Elem>(i))].push_back(i);
    }
    std::vector<std::vector<std::size_t>> out;
    for (auto& [r, g] : groups) {
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  inline std::vector<std::vector<std::size_t>> polynomial_isomorphism_classes(
      FiniteAlgebra const& alg, std::vector<MinimalSet> const& sets, ClosureBudget const& budget) {
    auto pol1 = unary_polynomial_clone(alg, budget);
    if (!pol1.complete) {
      throw BudgetExceeded("polynomial_isomorphism_classes: unary clone incomplete");
    }
    std::vector<std::vector<Elem>> s;
    for (auto const& m : sets) {
      s.push_back(m.elements);
    }
    return polynomial_isomorphism_classes(pol1, s);
  }

}  // namespace ualg
