#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "partition.hpp"
#include "power.hpp"

namespace ualg {

  //! A unary map on a universe, stored as its table.
  using Map = std::vector<Elem>;

  namespace detail {
    // Calls fn(args) for every tuple whose slot s ranges over `slot_reps[s]`.
    template <typename Fn>
    void for_each_tuple(std::vector<std::vector<Elem>> const& slot_reps, Fn&& fn) {
      std::size_t const k = slot_reps.size();
      for (auto const& r : slot_reps) {
        if (r.empty()) {
          return;
        }
      }
      std::vector<std::size_t> cur(k, 0);
      std::vector<Elem>        args(k);
      while (true) {
        for (std::size_t s = 0; s < k; ++s) {
          args[s] = slot_reps[s][cur[s]];
        }
        fn(args);
        std::size_t s = k;
        while (s > 0) {
          --s;
          if (++cur[s] < slot_reps[s].size()) {
            break;
          }
          cur[s] = 0;
          if (s == 0) {
            return;
          }
        }
        if (k == 0) {
          return;
        }
      }
    }

    inline bool is_identity_map(Map const& m) {
      for (Elem x = 0; x < m.size(); ++x) {
        if (m[x] != x) {
          return false;
        }
      }
      return true;
    }

    inline bool is_constant_map(Map const& m) {
      return std::adjacent_find(m.begin(), m.end(), std::not_equal_to<>()) == m.end();
    }
  }  // namespace detail

  //! The distinct basic translations x ↦ f(c1,..,x,..,ck), excluding the
  //! identity and constant maps (neither contributes to congruence
  //! generation). Only one representative per argument-kernel class is used
  //! for the fixed slots.
  template <AlgebraLike A>
  std::vector<Map> basic_translations(A const& a, ArgumentKernels const& kernels) {
    std::size_t const n = a.size();
    std::set<Map>     out;
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      std::size_t const k = a.arity(op);
      if (k == 0) {
        continue;
      }
      std::vector<std::vector<Elem>> reps(k);
      for (std::size_t s = 0; s < k; ++s) {
        std::vector<char> seen(kernels[op][s].num_classes, 0);
        for (Elem x = 0; x < n; ++x) {
          if (!seen[kernels[op][s].cls[x]]) {
            seen[kernels[op][s].cls[x]] = 1;
            reps[s].push_back(x);
          }
        }
      }
      for (std::size_t s = 0; s < k; ++s) {
        if (kernels[op][s].num_classes <= 1) {
          continue;
        }
        auto fixed = reps;
        fixed[s]   = {0};
        detail::for_each_tuple(fixed, [&](std::vector<Elem> args) {
          Map m(n);
          for (Elem x = 0; x < n; ++x) {
            args[s] = x;
            m[x]    = a.apply(op, args);
          }
          if (!detail::is_identity_map(m) && !detail::is_constant_map(m)) {
            out.insert(std::move(m));
          }
        });
      }
    }
    return {out.begin(), out.end()};
  }

  template <AlgebraLike A>
  std::vector<Map> basic_translations(A const& a) {
    return basic_translations(a, argument_kernels(a));
  }

  //! Generates congruences from pairs by closing under a fixed set of
  //! translations (the unary polynomials are generated by them, so this is
  //! the Mal'cev chain construction).
  class CongruenceGenerator {
   public:
    CongruenceGenerator(std::size_t size, std::vector<Map> translations)
        : _size(size), _translations(std::move(translations)) {}

    template <AlgebraLike A>
    explicit CongruenceGenerator(A const& a) : CongruenceGenerator(a.size(), basic_translations(a)) {}

    [[nodiscard]] std::size_t size() const noexcept { return _size; }
    [[nodiscard]] std::vector<Map> const& translations() const noexcept { return _translations; }

    //! Least congruence containing `base` and the given pairs.
    [[nodiscard]] Congruence generate(std::vector<std::pair<Elem, Elem>> const& pairs,
                                      Congruence const* base = nullptr) const {
      UnionFind uf(_size);
      if (base != nullptr) {
        for (Elem x = 0; x < _size; ++x) {
          uf.unite(x, base->class_of(x));
        }
      }
      std::vector<std::pair<Elem, Elem>> work;
      for (auto [a, b] : pairs) {
        if (a >= _size || b >= _size) {
          throw InputError("congruence generator: element out of range");
        }
        if (uf.unite(a, b)) {
          work.emplace_back(a, b);
        }
      }
      while (!work.empty()) {
        auto [a, b] = work.back();
        work.pop_back();
        for (auto const& t : _translations) {
          if (uf.unite(t[a], t[b])) {
            work.emplace_back(t[a], t[b]);
          }
        }
      }
      return Partition::from_union_find(uf);
    }

    [[nodiscard]] Congruence principal(Elem a, Elem b) const { return generate({{a, b}}); }

   private:
    std::size_t      _size;
    std::vector<Map> _translations;
  };

  //! Least congruence of `alg` identifying a and b.
  template <AlgebraLike A>
  Congruence principal_congruence(A const& alg, Elem a, Elem b) {
    if (a >= alg.size() || b >= alg.size()) {
      throw InputError("principal_congruence: element out of range");
    }
    return CongruenceGenerator(alg).principal(a, b);
  }

  //! Least congruence of `alg` containing the given pairs.
  template <AlgebraLike A>
  Congruence generate_congruence(A const& alg, std::vector<std::pair<Elem, Elem>> const& pairs) {
    return CongruenceGenerator(alg).generate(pairs);
  }

  //! All congruences of an algebra, in canonical order: by number of classes
  //! descending, then by class labels. So 0 comes first and 1 last.
  struct CongruenceLattice {
    std::vector<Congruence>                          congruences;
    std::vector<std::pair<std::size_t, std::size_t>> covers;  //!< (lower, upper)
    bool                                             complete = false;

    [[nodiscard]] std::size_t size() const noexcept { return congruences.size(); }
    [[nodiscard]] Congruence const& operator[](std::size_t i) const { return congruences[i]; }

    [[nodiscard]] std::optional<std::size_t> index_of(Congruence const& c) const {
      auto it = std::lower_bound(congruences.begin(), congruences.end(), c, canonical_less);
      if (it != congruences.end() && *it == c) {
        return static_cast<std::size_t>(it - congruences.begin());
      }
      return std::nullopt;
    }

    [[nodiscard]] bool leq(std::size_t i, std::size_t j) const {
      return congruences[i].leq(congruences[j]);
    }

    //! The order as a matrix, leq_matrix()[i][j] iff congruence i ≤ j.
    [[nodiscard]] std::vector<std::vector<bool>> leq_matrix() const {
      std::vector<std::vector<bool>> m(size(), std::vector<bool>(size(), false));
      for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
          m[i][j] = leq(i, j);
        }
      }
      return m;
    }

    [[nodiscard]] std::size_t join(std::size_t i, std::size_t j) const {
      return checked_index(congruences[i].join(congruences[j]));
    }
    [[nodiscard]] std::size_t meet(std::size_t i, std::size_t j) const {
      return checked_index(congruences[i].meet(congruences[j]));
    }

    [[nodiscard]] bool covers_pair(std::size_t lower, std::size_t upper) const {
      return std::binary_search(covers.begin(), covers.end(), std::make_pair(lower, upper));
    }

    //! Lower covers of 1, i.e. the maximal proper congruences.
    [[nodiscard]] std::vector<std::size_t> coatoms() const {
      std::vector<std::size_t> r;
      if (congruences.empty()) {
        return r;
      }
      std::size_t const top = congruences.size() - 1;
      for (auto [lo, hi] : covers) {
        if (hi == top) {
          r.push_back(lo);
        }
      }
      return r;
    }

    static bool canonical_less(Congruence const& x, Congruence const& y) {
      std::size_t const cx = x.num_classes();
      std::size_t const cy = y.num_classes();
      if (cx != cy) {
        return cx > cy;
      }
      return x.labels() < y.labels();
    }

   private:
    [[nodiscard]] std::size_t checked_index(Congruence const& c) const {
      auto i = index_of(c);
      if (!i) {
        throw InvariantViolation("congruence lattice is not closed under join/meet");
      }
      return *i;
    }
  };

  //! Con(alg): 0 together with all joins of principal congruences.
  //!
  //! Joins are taken in the partition lattice, which is correct because the
  //! join of two congruences as equivalence relations is again compatible.
  //! Upper covers of θ are the minimal members of {θ ∨ Cg(a,b)}, so the
  //! covering relation falls out of the closure. `budget.max_elements` caps
  //! the number of congruences; on overflow `complete` is false.
  template <AlgebraLike A>
  CongruenceLattice congruence_lattice(A const& alg, ClosureBudget const& budget) {
    budget.validate();
    std::size_t const   n = alg.size();
    CongruenceGenerator gen(alg);

    std::set<Congruence> principal_set;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (budget.expired()) {
          return {{}, {}, false};
        }
        principal_set.insert(gen.principal(a, b));
      }
    }
    std::vector<Congruence> principals(principal_set.begin(), principal_set.end());

    std::map<std::vector<Elem>, std::size_t> index;
    std::vector<Congruence>                  found;
    std::vector<std::vector<std::size_t>>    ups;  // candidate upper neighbours
    bool                                     complete = true;
    auto                                     intern   = [&](Congruence c) {
      auto [it, fresh] = index.emplace(c.labels(), found.size());
      if (fresh) {
        found.push_back(std::move(c));
        ups.emplace_back();
      }
      return it->second;
    };
    intern(Partition::identity(n));
    for (std::size_t i = 0; i < found.size(); ++i) {
      if (found.size() > budget.max_elements || budget.expired()) {
        complete = false;
        break;
      }
      for (auto const& p : principals) {
        if (p.leq(found[i])) {
          continue;
        }
        std::size_t j = intern(found[i].join(p));
        ups[i].push_back(j);
      }
    }

    CongruenceLattice lat;
    lat.complete = complete;
    std::vector<std::size_t> order(found.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return CongruenceLattice::canonical_less(found[x], found[y]);
    });
    std::vector<std::size_t> rank(found.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      rank[order[r]] = r;
      lat.congruences.push_back(found[order[r]]);
    }
    if (complete) {
      for (std::size_t i = 0; i < found.size(); ++i) {
        auto& u = ups[i];
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        for (std::size_t j : u) {
          bool minimal = true;
          for (std::size_t k : u) {
            if (k != j && found[k].leq(found[j])) {
              minimal = false;
              break;
            }
          }
          if (minimal) {
            lat.covers.emplace_back(rank[i], rank[j]);
          }
        }
      }
      std::sort(lat.covers.begin(), lat.covers.end());
    }
    return lat;
  }

  template <AlgebraLike A>
  CongruenceLattice congruence_lattice(A const& alg) {
    return congruence_lattice(alg, ClosureBudget{});
  }

  //! The maximal proper congruences, sorted canonically, or nullopt if the
  //! budget ran out. Empty for a 1-element algebra.
  //!
  //! Avoids materializing Con(A) as a list, which is huge for powers of
  //! abelian algebras. Principal congruences are decided in a fixed order by
  //! include/exclude branching; a leaf is kept when every excluded principal
  //! joins it to 1.
  template <AlgebraLike A>
  std::optional<std::vector<Congruence>> maximal_congruences(A const& alg, ClosureBudget const& budget) {
    budget.validate();
    std::size_t const n = alg.size();
    if (n == 1) {
      return std::vector<Congruence>{};
    }
    CongruenceGenerator                                gen(alg);
    std::map<std::vector<Elem>, std::pair<Elem, Elem>> uniq;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a + 1; b < n; ++b) {
        if (budget.expired()) {
          return std::nullopt;
        }
        uniq.emplace(gen.principal(a, b).labels(), std::make_pair(a, b));
      }
    }
    std::vector<Congruence>            ps;
    std::vector<std::pair<Elem, Elem>> gens;
    for (auto const& [labels, pair] : uniq) {
      ps.push_back(Partition::from_labels(labels));
      gens.push_back(pair);
    }
    // Larger principal congruences first: reaches coatoms in fewer steps.
    std::vector<std::size_t> order(ps.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return ps[x].num_classes() < ps[y].num_classes();
    });
    std::size_t const N = ps.size();

    std::set<std::vector<Elem>> found;
    std::vector<std::size_t>    excluded;
    std::size_t                 steps = 0;
    bool                        aborted = false;

    auto dfs = [&](auto&& self, Congruence const& theta, std::size_t pos) -> void {
      if (aborted) {
        return;
      }
      if ((++steps & 0x3FF) == 0 && (budget.expired() || steps > budget.max_elements)) {
        aborted = true;
        return;
      }
      for (std::size_t q = pos; q < N; ++q) {
        std::size_t const j = order[q];
        if (theta.related(gens[j].first, gens[j].second)) {
          continue;
        }
        Congruence joined = theta.join(ps[j]);
        if (joined.is_full()) {
          continue;
        }
        bool blocked = false;
        for (std::size_t e : excluded) {
          if (joined.related(gens[e].first, gens[e].second)) {
            blocked = true;
            break;
          }
        }
        if (!blocked) {
          self(self, joined, q + 1);
        }
        excluded.push_back(j);
        self(self, theta, q + 1);
        excluded.pop_back();
        return;
      }
      for (std::size_t e : excluded) {
        if (!theta.join(ps[e]).is_full()) {
          return;
        }
      }
      found.insert(theta.labels());
    };
    dfs(dfs, Partition::identity(n), 0);
    if (aborted) {
      return std::nullopt;
    }
    std::vector<Congruence> out;
    for (auto const& l : found) {
      out.push_back(Partition::from_labels(l));
    }
    std::sort(out.begin(), out.end(), CongruenceLattice::canonical_less);
    return out;
  }

}  // namespace ualg
