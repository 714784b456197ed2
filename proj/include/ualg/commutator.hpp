#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "congruence.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "power.hpp"
#include "subuniverse.hpp"

namespace ualg {

  //! The congruence Δ_{α,β} of the algebra β ≤ A² generated by the pairs
  //! ((a,a),(b,b)) with a α b.
  //!
  //! Two members of β are Δ-related iff they are linked by a chain of rows of
  //! (α,β)-matrices [t(a,c) t(a,d); t(b,c) t(b,d)], so the term condition
  //! C(α,β;δ) holds iff every Δ-class lies inside δ or is disjoint from it.
  struct DeltaRelation {
    std::size_t                        base_size = 0;
    std::vector<std::pair<Elem, Elem>> pairs;     //!< members of β, lexicographic
    std::vector<std::size_t>           index_of;  //!< x*n+y -> position in pairs, or npos
    Congruence                         delta;     //!< on positions in `pairs`

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    [[nodiscard]] std::size_t index(Elem x, Elem y) const { return index_of[x * base_size + y]; }
  };

  namespace detail {
    // Translations of the algebra β ≤ A²: pairs (t_c, t_d) of translations
    // of A whose fixed arguments satisfy c_i β d_i.
    template <AlgebraLike A>
    std::vector<Map> pair_translations(A const& a, ArgumentKernels const& kernels,
                                       DeltaRelation const& rel) {
      std::size_t const P = rel.pairs.size();
      std::set<Map>     out;
      for (std::size_t op = 0; op < a.num_operations(); ++op) {
        std::size_t const k = a.arity(op);
        if (k == 0) {
          continue;
        }
        // One β-pair per pair of kernel classes, for each slot.
        std::vector<std::vector<Elem>> reps(k);
        for (std::size_t s = 0; s < k; ++s) {
          auto const&       cls = kernels[op][s].cls;
          std::size_t const nc  = kernels[op][s].num_classes;
          std::vector<char> seen(nc * nc, 0);
          for (std::size_t i = 0; i < P; ++i) {
            auto [x, y]     = rel.pairs[i];
            std::size_t key = cls[x] * nc + cls[y];
            if (!seen[key]) {
              seen[key] = 1;
              reps[s].push_back(static_cast<Elem>(i));
            }
          }
        }
        for (std::size_t s = 0; s < k; ++s) {
          if (kernels[op][s].num_classes <= 1) {
            continue;
          }
          auto fixed = reps;
          fixed[s]   = {0};
          std::vector<Elem> left(k), right(k);
          for_each_tuple(fixed, [&](std::vector<Elem> const& ids) {
            for (std::size_t j = 0; j < k; ++j) {
              left[j]  = rel.pairs[ids[j]].first;
              right[j] = rel.pairs[ids[j]].second;
            }
            Map m(P);
            for (std::size_t i = 0; i < P; ++i) {
              left[s]  = rel.pairs[i].first;
              right[s] = rel.pairs[i].second;
              m[i]     = static_cast<Elem>(rel.index(a.apply(op, left), a.apply(op, right)));
            }
            if (!is_identity_map(m) && !is_constant_map(m)) {
              out.insert(std::move(m));
            }
          });
        }
      }
      return {out.begin(), out.end()};
    }
  }  // namespace detail

  template <AlgebraLike A>
  DeltaRelation delta_relation(A const& alg, Congruence const& alpha, Congruence const& beta) {
    std::size_t const n = alg.size();
    if (alpha.universe_size() != n || beta.universe_size() != n) {
      throw InputError("delta_relation: congruence on a different universe");
    }
    DeltaRelation rel;
    rel.base_size = n;
    rel.index_of.assign(checked_pow(n, 2), DeltaRelation::npos);
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (beta.related(x, y)) {
          rel.index_of[x * n + y] = rel.pairs.size();
          rel.pairs.emplace_back(x, y);
        }
      }
    }
    CongruenceGenerator gen(rel.pairs.size(),
                            detail::pair_translations(alg, argument_kernels(alg), rel));
    std::vector<std::pair<Elem, Elem>> gens;
    for (Elem a = 0; a < n; ++a) {
      Elem const b = alpha.class_of(a);
      if (a != b) {
        gens.emplace_back(static_cast<Elem>(rel.index(a, a)), static_cast<Elem>(rel.index(b, b)));
      }
    }
    rel.delta = gen.generate(gens);
    return rel;
  }

  namespace detail {
    inline bool centralizes_via(DeltaRelation const& rel, Congruence const& delta) {
      // Per Δ-class: 0 unknown, 1 contains a δ-pair, 2 contains a non-δ pair.
      std::vector<char> seen(rel.pairs.size(), 0);
      for (std::size_t i = 0; i < rel.pairs.size(); ++i) {
        auto [x, y]  = rel.pairs[i];
        char  kind   = delta.related(x, y) ? 1 : 2;
        char& marker = seen[rel.delta.class_of(static_cast<Elem>(i))];
        if (marker == 0) {
          marker = kind;
        } else if (marker != kind) {
          return false;
        }
      }
      return true;
    }

    inline Congruence commutator_via(CongruenceGenerator const& gen, DeltaRelation const& rel) {
      std::size_t const n = rel.base_size;
      Congruence        d = Partition::identity(n);
      while (true) {
        std::vector<char> hit(rel.pairs.size(), 0);
        for (std::size_t i = 0; i < rel.pairs.size(); ++i) {
          if (d.related(rel.pairs[i].first, rel.pairs[i].second)) {
            hit[rel.delta.class_of(static_cast<Elem>(i))] = 1;
          }
        }
        std::vector<std::pair<Elem, Elem>> extra;
        for (std::size_t i = 0; i < rel.pairs.size(); ++i) {
          auto [x, y] = rel.pairs[i];
          if (hit[rel.delta.class_of(static_cast<Elem>(i))] && !d.related(x, y)) {
            extra.emplace_back(x, y);
          }
        }
        if (extra.empty()) {
          return d;
        }
        d = gen.generate(extra, &d);
      }
    }
  }  // namespace detail

  //! Term condition C(α,β;δ): for all (α,β)-matrices, t(a,c) δ t(a,d)
  //! implies t(b,c) δ t(b,d).
  template <AlgebraLike A>
  bool centralizes(A const& alg, Congruence const& alpha, Congruence const& beta,
                   Congruence const& delta) {
    if (delta.universe_size() != alg.size()) {
      throw InputError("centralizes: congruence on a different universe");
    }
    return detail::centralizes_via(delta_relation(alg, alpha, beta), delta);
  }

  //! [α,β]: the least δ with C(α,β;δ), reached as the fixpoint of
  //! δ ↦ Cg(δ ∪ {second rows of matrices whose first row lies in δ}).
  template <AlgebraLike A>
  Congruence commutator(A const& alg, Congruence const& alpha, Congruence const& beta) {
    CongruenceGenerator gen(alg);
    return detail::commutator_via(gen, delta_relation(alg, alpha, beta));
  }

  template <AlgebraLike A>
  bool is_abelian(A const& alg) {
    std::size_t const n   = alg.size();
    auto              rel = delta_relation(alg, Partition::full(n), Partition::full(n));
    return detail::centralizes_via(rel, Partition::identity(n));
  }

  //! Δ_{1,1}: the congruence of A² generated by identifying all diagonal
  //! pairs, indexed by TupleCodec(|A|, 2).
  template <AlgebraLike A>
  Congruence diagonal_collapse(A const& alg, std::size_t cap = kDefaultUniverseCap) {
    std::size_t const n = alg.size();
    checked_pow(n, 2, cap);
    auto rel = delta_relation(alg, Partition::full(n), Partition::full(n));
    return rel.delta;  // β = 1 lists pairs in codec order
  }

  //! Strong term condition: t(a,u) = t(b,v) implies t(c,u) = t(c,v).
  //!
  //! Decided by generating the subalgebra of A⁴ from (a,b,c,c) and (u,v,u,v)
  //! and looking for a row (x1,x2,x3,x4) with x1 = x2 and x3 ≠ x4. Abelianness
  //! is checked first since it is necessary and much cheaper.
  template <AlgebraLike A>
  Verdict is_strongly_abelian(A const& alg, ClosureBudget const& budget,
                              std::size_t cap = kDefaultUniverseCap) {
    std::size_t const n = alg.size();
    if (n == 1) {
      return Verdict::yes;
    }
    if (!is_abelian(alg)) {
      return Verdict::no;
    }
    FiniteAlgebra const* base = nullptr;
    FiniteAlgebra        owned("", 1, {});
    if constexpr (std::is_same_v<A, FiniteAlgebra>) {
      base = &alg;
    } else {
      owned = materialize(alg, "base", cap);
      base  = &owned;
    }
    std::optional<PowerView> p4;
    try {
      p4.emplace(*base, 4, cap);
    } catch (BudgetExceeded const&) {
      return Verdict::unknown;
    }
    std::vector<Elem> gens;
    std::vector<Elem> t(4);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        for (Elem c = 0; c < n; ++c) {
          t = {a, b, c, c};
          gens.push_back(p4->encode(t));
        }
        t = {a, b, a, b};
        gens.push_back(p4->encode(t));
      }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    bool violated = false;
    auto stop     = [&](Elem x) {
      if (p4->coordinate(x, 0) == p4->coordinate(x, 1)
          && p4->coordinate(x, 2) != p4->coordinate(x, 3)) {
        violated = true;
      }
      return violated;
    };
    auto r = SubuniverseGenerator<PowerView>(*p4).generate(gens, &budget, 0, stop);
    if (violated) {
      return Verdict::no;
    }
    return r ? Verdict::yes : Verdict::unknown;
  }

  //! The abelianness hierarchy of an algebra with its witnessing series.
  struct AbelianProfile {
    bool                    abelian        = false;
    Verdict                 strongly_abelian = Verdict::unknown;
    bool                    left_nilpotent = false;
    bool                    solvable       = false;
    std::vector<Congruence> derived_series;  //!< 1, [1,1], [[1,1],[1,1]], ...
    std::vector<Congruence> left_series;     //!< [1,1], [1,[1,1]], ...
  };

  template <AlgebraLike A>
  AbelianProfile abelianness_profile(A const& alg, ClosureBudget const& budget = {}) {
    std::size_t const   n = alg.size();
    CongruenceGenerator gen(alg);
    Congruence const    one  = Partition::full(n);
    Congruence const    zero = Partition::identity(n);
    AbelianProfile      p;

    p.derived_series.push_back(one);
    while (true) {
      auto const& last = p.derived_series.back();
      Congruence  next = detail::commutator_via(gen, delta_relation(alg, last, last));
      if (next == last) {
        break;
      }
      p.derived_series.push_back(std::move(next));
    }
    p.solvable = p.derived_series.back() == zero;
    p.abelian  = p.derived_series.size() > 1 ? p.derived_series[1] == zero : n == 1;

    p.left_series.push_back(p.derived_series.size() > 1 ? p.derived_series[1] : one);
    while (true) {
      auto const& last = p.left_series.back();
      Congruence  next = detail::commutator_via(gen, delta_relation(alg, one, last));
      if (next == last) {
        break;
      }
      p.left_series.push_back(std::move(next));
    }
    p.left_nilpotent   = p.left_series.back() == zero;
    p.strongly_abelian = p.abelian ? is_strongly_abelian(alg, budget) : Verdict::no;
    return p;
  }

  //! Outcome of the search for a nontrivial strongly abelian quotient of A^n.
  struct StronglyAbelianQuotient {
    Verdict                   verdict = Verdict::unknown;
    std::size_t               power   = 1;
    std::optional<Congruence> theta;  //!< on A^n, TupleCodec order
    std::size_t               quotient_size = 0;
    std::size_t               maximal_congruences_checked = 0;
  };

  //! Looks for a nontrivial strongly abelian homomorphic image of A^n.
  //!
  //! Only maximal congruences are tried. This loses nothing: if A^n/θ is
  //! strongly abelian then all its types are 1, so for a maximal ψ ≥ θ the
  //! simple algebra A^n/ψ has type 1, hence is strongly solvable and, being
  //! simple, strongly abelian.
  inline StronglyAbelianQuotient strongly_abelian_quotient_exists(FiniteAlgebra const& alg,
                                                                  std::size_t          n,
                                                                  ClosureBudget const& budget,
                                                                  std::size_t cap = kDefaultUniverseCap) {
    if (n == 0) {
      throw InputError("strongly_abelian_quotient_exists: power must be at least 1");
    }
    StronglyAbelianQuotient out;
    out.power = n;
    if (alg.size() == 1) {
      out.verdict = Verdict::no;
      return out;
    }
    std::optional<PowerView> pw;
    try {
      pw.emplace(alg, n, cap);
    } catch (BudgetExceeded const&) {
      return out;
    }
    auto coatoms = maximal_congruences(*pw, budget);
    if (!coatoms) {
      return out;
    }
    bool unknown = false;
    for (auto const& theta : *coatoms) {
      if (budget.expired()) {
        return out;
      }
      ++out.maximal_congruences_checked;
      auto q = quotient(*pw, theta, alg.name() + "^" + std::to_string(n) + "/theta", false);
      Verdict v = is_strongly_abelian(q.algebra, budget, cap);
      if (v == Verdict::yes) {
        out.verdict       = Verdict::yes;
        out.theta         = theta;
        out.quotient_size = q.algebra.size();
        return out;
      }
      unknown |= v == Verdict::unknown;
    }
    out.verdict = unknown ? Verdict::unknown : Verdict::no;
    return out;
  }

}  // namespace ualg
