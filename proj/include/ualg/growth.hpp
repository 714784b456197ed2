#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "clone.hpp"
#include "congruence.hpp"
#include "error.hpp"
#include "power.hpp"
#include "subuniverse.hpp"

namespace ualg {

  //! d_A(n), exact or as an interval. `witness` generates A^n and has size
  //! `upper`; elements are TupleCodec codes of A^n.
  struct GrowthEntry {
    std::size_t              n     = 0;
    std::size_t              lower = 0;
    std::size_t              upper = 0;
    std::vector<Elem>        witness;
    std::vector<std::string> notes;
    bool                     budget_hit = false;

    [[nodiscard]] bool exact() const { return lower == upper; }
  };

  struct GrowthOptions {
    CongruenceLattice const* lattice        = nullptr;  //!< enables quotient lower bounds
    std::size_t              max_candidates = 2'000'000;
    std::size_t              clone_points_cap = 1u << 16;
    bool                     symmetry       = true;
  };

  //! Least L with base^L >= n, i.e. ⌈log_base(n)⌉; 0 for base 1.
  inline std::size_t ceil_log(std::size_t base, std::size_t n) {
    if (base <= 1) {
      return 0;
    }
    std::size_t L = 0;
    std::size_t p = 1;
    while (p < n) {
      p *= base;
      ++L;
    }
    return L;
  }

  namespace detail {
    // For each op and value v: the sets {i : c[i] = v} over argument tuples c
    // with f(c) = v, as bitmasks.
    inline std::vector<std::vector<std::vector<std::uint32_t>>> slot_masks(FiniteAlgebra const& alg) {
      std::size_t const n = alg.size();
      std::vector<std::vector<std::vector<std::uint32_t>>> out(alg.num_operations());
      for (std::size_t op = 0; op < alg.num_operations(); ++op) {
        std::size_t const k = alg.arity(op);
        if (k == 0 || k > 31) {
          continue;
        }
        std::vector<std::set<std::uint32_t>> sets(n);
        TupleCodec                           codec(n, k);
        std::vector<Elem>                    t(k);
        auto const&                          table = alg.operation(op).table;
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
          codec.decode(idx, t);
          Elem const    v = table[idx];
          std::uint32_t m = 0;
          for (std::size_t i = 0; i < k; ++i) {
            if (t[i] == v) {
              m |= 1u << i;
            }
          }
          sets[v].insert(m);
        }
        out[op].resize(n);
        for (Elem v = 0; v < n; ++v) {
          out[op][v].assign(sets[v].begin(), sets[v].end());
        }
      }
      return out;
    }
  }  // namespace detail

  //! Elements of A^n lying in every generating set: x is forced iff no basic
  //! operation sends a tuple of elements other than x to x. Per coordinate
  //! the argument slots equal to x_j form a set T_j; some choice must leave
  //! the intersection of the T_j empty.
  inline std::vector<Elem> forced_generators(FiniteAlgebra const& alg, std::size_t n,
                                             std::size_t cap = kDefaultUniverseCap) {
    PowerView         pw(alg, n, cap);
    auto const        masks = detail::slot_masks(alg);
    std::vector<Elem> forced;
    std::vector<Elem> consts;
    for (std::size_t op = 0; op < alg.num_operations(); ++op) {
      if (alg.arity(op) == 0) {
        consts.push_back(alg.operation(op).table[0]);
      }
    }
    for (Elem x = 0; x < pw.size(); ++x) {
      bool reachable = false;
      for (Elem c : consts) {
        bool diag = true;
        for (std::size_t j = 0; j < n; ++j) {
          diag = diag && pw.coordinate(x, j) == c;
        }
        reachable = reachable || diag;
      }
      for (std::size_t op = 0; op < alg.num_operations() && !reachable; ++op) {
        std::size_t const k = alg.arity(op);
        if (k == 0 || k > 31) {
          continue;
        }
        std::set<std::uint32_t> cur{(1u << k) - 1};
        for (std::size_t j = 0; j < n && !cur.empty(); ++j) {
          std::set<std::uint32_t> next;
          for (auto m : cur) {
            for (auto t : masks[op][pw.coordinate(x, j)]) {
              next.insert(m & t);
            }
          }
          cur = std::move(next);
        }
        reachable = cur.count(0) > 0;
      }
      if (!reachable) {
        forced.push_back(x);
      }
    }
    return forced;
  }

  //! Least k such that A has at least `target` k-ary term operations (a
  //! k-element generating set of A^n gives a surjection from them onto A^n).
  //! Returns nullopt when the points or the budget run out first.
  inline std::optional<std::size_t> term_count_bound(FiniteAlgebra const& alg, std::size_t target,
                                                     std::size_t start, std::size_t points_cap,
                                                     ClosureBudget const& budget) {
    for (std::size_t k = std::max<std::size_t>(start, 1);; ++k) {
      std::size_t pts = 1;
      for (std::size_t i = 0; i < k; ++i) {
        pts *= alg.size();
        if (pts > points_cap) {
          return std::nullopt;
        }
      }
      PolynomialClosure cl(alg, k, all_points(alg.size(), k), false);
      std::size_t       seen = 0;
      auto st = cl.run(budget, [&](std::span<std::uint8_t const>) { return ++seen >= target; });
      if (st.hit) {
        return k;
      }
      if (!st.complete) {
        return std::nullopt;
      }
      if (alg.size() == 1) {
        return std::nullopt;
      }
    }
  }

  //! d_A(n) by iterative deepening over candidate generating sets.
  //!
  //! Lower bounds: ⌈log_|A| n⌉, the forced generators, the term count, and
  //! d_{A/θ}(n) for congruences of a supplied lattice. Upper bound: a greedy
  //! generating set. Candidates contain the forced generators, avoid the
  //! subuniverse they generate, and are canonical under permutations of the
  //! coordinates (n ≤ 4).
  inline GrowthEntry minimum_generating_size(FiniteAlgebra const& alg, std::size_t n,
                                             ClosureBudget const& budget,
                                             GrowthOptions const& opt = {}) {
    GrowthEntry e;
    e.n = n;
    PowerView                       pw(alg, n);
    SubuniverseGenerator<PowerView> gen(pw);
    std::size_t const               total = pw.size();

    auto generates = [&](std::vector<Elem> const& s) -> std::optional<bool> {
      auto r = gen.generate(s, &budget, total);
      if (!r) {
        return std::nullopt;
      }
      return r->size() == total;
    };

    std::size_t lower = ceil_log(alg.size(), n);
    auto        F     = forced_generators(alg, n);
    if (F.size() > lower) {
      lower = F.size();
      e.notes.push_back("forced generators: " + std::to_string(F.size()));
    }
    if (alg.size() > 1) {
      if (auto k = term_count_bound(alg, total, lower, opt.clone_points_cap, budget); k && *k > lower) {
        lower = *k;
        e.notes.push_back("term count bound: " + std::to_string(*k));
      }
    }
    if (opt.lattice) {
      for (std::size_t i = 0; i < opt.lattice->size(); ++i) {
        auto const& theta = (*opt.lattice)[i];
        if (theta.is_identity()) {
          continue;
        }
        auto q  = quotient(alg, theta, alg.name() + "/theta", false);
        auto dq = minimum_generating_size(q.algebra, n, budget,
                                          GrowthOptions{nullptr, opt.max_candidates,
                                                        opt.clone_points_cap, opt.symmetry});
        if (dq.lower > lower) {
          lower = dq.lower;
          e.notes.push_back("quotient bound: " + std::to_string(dq.lower));
        }
      }
    }

    // Greedy upper bound: add the sampled element that grows the closure
    // most, then drop generators that turn out redundant.
    std::vector<Elem> greedy = F;
    {
      bool ok = true;
      auto cl = gen.generate(greedy, &budget);
      ok      = cl.has_value();
      while (ok && cl->size() < total) {
        std::vector<char> in(total, 0);
        for (Elem x : *cl) {
          in[x] = 1;
        }
        std::vector<Elem> outside;
        for (Elem x = 0; x < total; ++x) {
          if (!in[x]) {
            outside.push_back(x);
          }
        }
        std::size_t const samples = std::min<std::size_t>(outside.size(), 24);
        Elem              best    = outside.front();
        std::size_t       best_sz = 0;
        for (std::size_t i = 0; i < samples && ok; ++i) {
          Elem const c   = outside[i * outside.size() / samples];
          auto       trial = greedy;
          trial.push_back(c);
          auto r = gen.generate(trial, &budget);
          ok     = r.has_value();
          if (ok && r->size() > best_sz) {
            best_sz = r->size();
            best    = c;
          }
        }
        if (!ok) {
          break;
        }
        greedy.push_back(best);
        cl = gen.generate(greedy, &budget);
        ok = cl.has_value();
      }
      for (std::size_t i = greedy.size(); ok && i-- > F.size();) {
        auto rest = greedy;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        auto g = generates(rest);
        ok     = g.has_value();
        if (ok && *g) {
          greedy = std::move(rest);
        }
      }
      if (!ok) {
        e.lower      = std::min(lower, total);
        e.upper      = total;
        e.budget_hit = true;
        e.witness.resize(total);
        std::iota(e.witness.begin(), e.witness.end(), Elem{0});
        return e;
      }
    }
    std::sort(greedy.begin(), greedy.end());
    e.witness = greedy;
    e.upper   = greedy.size();
    e.lower   = std::min(lower, e.upper);
    if (e.exact()) {
      return e;
    }

    // Candidate pool: everything outside Sg(F).
    auto              base = gen.generate(F, &budget);
    std::vector<char> in_base(total, 0);
    for (Elem x : *base) {
      in_base[x] = 1;
    }
    std::vector<Elem> pool;
    for (Elem x = 0; x < total; ++x) {
      if (!in_base[x]) {
        pool.push_back(x);
      }
    }
    // coordinate permutation images
    std::vector<std::vector<Elem>> perms;
    if (opt.symmetry && n >= 2 && n <= 4) {
      std::vector<std::size_t> pi(n);
      std::iota(pi.begin(), pi.end(), std::size_t{0});
      std::vector<Elem> t(n), u(n);
      while (std::next_permutation(pi.begin(), pi.end())) {
        std::vector<Elem> img(total);
        for (Elem x = 0; x < total; ++x) {
          pw.codec().decode(x, t);
          for (std::size_t j = 0; j < n; ++j) {
            u[pi[j]] = t[j];
          }
          img[x] = pw.encode(u);
        }
        perms.push_back(std::move(img));
      }
    }
    auto canonical = [&](std::vector<Elem> const& c) {
      std::vector<Elem> im(c.size());
      for (auto const& p : perms) {
        for (std::size_t i = 0; i < c.size(); ++i) {
          im[i] = p[c[i]];
        }
        std::sort(im.begin(), im.end());
        if (im < c) {
          return false;
        }
      }
      return true;
    };

    std::size_t tested = 0;
    for (std::size_t s = e.lower; s < e.upper; ++s) {
      if (s < F.size()) {
        continue;
      }
      std::size_t const r = s - F.size();
      if (r > pool.size()) {
        break;
      }
      std::vector<std::size_t> idx(r);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      bool found = false;
      while (true) {
        std::vector<Elem> c(r);
        for (std::size_t i = 0; i < r; ++i) {
          c[i] = pool[idx[i]];
        }
        if (canonical(c)) {
          if (++tested > opt.max_candidates || budget.expired()) {
            e.lower      = s;
            e.budget_hit = true;
            e.notes.push_back("search stopped at size " + std::to_string(s));
            return e;
          }
          std::vector<Elem> cand = F;
          cand.insert(cand.end(), c.begin(), c.end());
          auto g = generates(cand);
          if (!g) {
            e.lower      = s;
            e.budget_hit = true;
            return e;
          }
          if (*g) {
            std::sort(cand.begin(), cand.end());
            e.witness = std::move(cand);
            e.lower = e.upper = s;
            found             = true;
            break;
          }
        }
        // next combination
        std::size_t i = r;
        while (i > 0 && idx[i - 1] == pool.size() - r + i - 1) {
          --i;
        }
        if (i == 0) {
          break;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < r; ++j) {
          idx[j] = idx[j - 1] + 1;
        }
      }
      if (found) {
        return e;
      }
      e.lower = s + 1;
    }
    return e;
  }

  //! d_A(n) for n = 1..n_max; entries after a budget hit are skipped.
  inline std::vector<GrowthEntry> growth_table(FiniteAlgebra const& alg, std::size_t n_max,
                                               ClosureBudget const& budget,
                                               GrowthOptions const& opt = {},
                                               std::size_t cap = 1u << 16) {
    std::vector<GrowthEntry> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
      std::size_t sz = 1;
      bool        fits = true;
      for (std::size_t i = 0; i < n && fits; ++i) {
        sz *= alg.size();
        fits = sz <= cap;
      }
      if (!fits || budget.expired()) {
        break;
      }
      out.push_back(minimum_generating_size(alg, n, budget, opt));
    }
    return out;
  }

  struct NearConstantResult {
    bool        generates  = false;
    std::size_t set_size   = 0;
    std::size_t closure_size = 0;
    bool        complete   = true;
  };

  //! Whether A^n is generated by its tuples that are constant except in at
  //! most one coordinate.
  inline NearConstantResult near_constant_generation_check(FiniteAlgebra const& alg, std::size_t n,
                                                           ClosureBudget const* budget = nullptr) {
    if (n == 0) {
      throw InputError("near_constant_generation_check: n must be positive");
    }
    PowerView         pw(alg, n);
    std::vector<Elem> G;
    std::vector<Elem> t(n);
    for (Elem x = 0; x < pw.size(); ++x) {
      pw.codec().decode(x, t);
      std::map<Elem, std::size_t> counts;
      for (Elem v : t) {
        ++counts[v];
      }
      bool near = counts.size() == 1;
      for (auto [v, c] : counts) {
        near = near || (counts.size() == 2 && c == n - 1);
      }
      if (n <= 2 || near) {
        G.push_back(x);
      }
    }
    std::size_t const a = alg.size();
    if (n >= 3 && G.size() != a + n * a * (a - 1)) {
      throw InvariantViolation("near-constant set has unexpected size");
    }
    NearConstantResult res;
    res.set_size = G.size();
    auto cl      = SubuniverseGenerator<PowerView>(pw).generate(G, budget);
    if (!cl) {
      res.complete = false;
      return res;
    }
    res.closure_size = cl->size();
    res.generates    = cl->size() == pw.size();
    return res;
  }

  //! Least size of S ⊆ U^n generating (A|_U)^n, where U = e(A). The
  //! polynomials of A|_U are e∘p, so S generates iff e applied coordinatewise
  //! to the subpower of the constant expansion generated by S covers U^n.
  inline GrowthEntry induced_generating_size(FiniteAlgebra const& alg, WitnessedOperation const& e,
                                             std::size_t n, ClosureBudget const& budget,
                                             std::size_t max_candidates = 2'000'000) {
    auto const        U  = neighborhood_of(e);
    auto const        B  = constant_expansion(alg);
    PowerView         pw(B, n);
    SubuniverseGenerator<PowerView> gen(pw);
    TupleCodec        ucodec(U.size(), n);
    std::size_t const usize = checked_pow(U.size(), n, kDefaultUniverseCap);
    std::vector<Elem> pool(usize);
    std::vector<Elem> t(n);
    for (std::size_t i = 0; i < usize; ++i) {
      ucodec.decode(i, t);
      for (auto& x : t) {
        x = U[x];
      }
      pool[i] = pw.encode(t);
    }
    std::vector<char> in_u(pw.size(), 0);
    for (Elem x : pool) {
      in_u[x] = 1;
    }
    auto covers = [&](std::vector<Elem> const& s) -> std::optional<bool> {
      auto cl = gen.generate(s, &budget);
      if (!cl) {
        return std::nullopt;
      }
      std::vector<char> hit(pw.size(), 0);
      std::size_t       count = 0;
      for (Elem y : *cl) {
        for (std::size_t j = 0; j < n; ++j) {
          t[j] = e.table[pw.coordinate(y, j)];
        }
        Elem z = pw.encode(t);
        if (!hit[z]) {
          hit[z] = 1;
          ++count;
        }
      }
      return count == usize;
    };
    GrowthEntry res;
    res.n          = n;
    res.upper      = usize;
    res.witness    = pool;
    std::size_t tested = 0;
    for (std::size_t s = 0; s < usize; ++s) {
      std::vector<std::size_t> idx(s);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      while (true) {
        std::vector<Elem> c(s);
        for (std::size_t i = 0; i < s; ++i) {
          c[i] = pool[idx[i]];
        }
        auto g = covers(c);
        if (!g || ++tested > max_candidates) {
          res.lower      = s;
          res.budget_hit = true;
          return res;
        }
        if (*g) {
          res.lower = res.upper = s;
          res.witness           = c;
          return res;
        }
        std::size_t i = s;
        while (i > 0 && idx[i - 1] == usize - s + i - 1) {
          --i;
        }
        if (i == 0) {
          break;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < s; ++j) {
          idx[j] = idx[j - 1] + 1;
        }
      }
      res.lower = s + 1;
    }
    return res;
  }

  //! Least-squares comparison of a linear and an exponential model of d(n).
  //! Purely descriptive: finitely many values say nothing about asymptotics.
  //!
  //! linear_like: the line fits the integer data to within rounding (RMS
  //! residual at most kLinearRms) or fits better than the exponential.
  //! subexponential: linear_like, or log2(d+1) grows by less than kExpRate
  //! per step. Needs at least kMinPoints exact values.
  struct GrowthFit {
    static constexpr double      kLinearRms = 0.5;
    static constexpr double      kExpRate   = 0.75;
    static constexpr std::size_t kMinPoints = 3;

    std::size_t points         = 0;
    double      linear_slope   = 0;
    double      linear_rms     = 0;
    double      exp_rate       = 0;  //!< b in log2(d+1) ≈ a + b n
    double      exp_rms        = 0;  //!< residual of 2^(a+bn) − 1 against d
    bool        enough         = false;
    bool        linear_like    = false;
    bool        subexponential = false;
  };

  inline GrowthFit fit_growth(std::vector<GrowthEntry> const& table) {
    std::vector<double> xs, ys;
    for (auto const& g : table) {
      if (g.exact()) {
        xs.push_back(double(g.n));
        ys.push_back(double(g.lower));
      }
    }
    GrowthFit f;
    f.points = xs.size();
    if (xs.size() < 2) {
      return f;
    }
    auto lsq = [&](std::vector<double> const& y) {
      double const m  = double(xs.size());
      double       sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += y[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * y[i];
      }
      double const b = (m * sxy - sx * sy) / (m * sxx - sx * sx);
      return std::pair{(sy - b * sx) / m, b};
    };
    auto [a1, b1]  = lsq(ys);
    f.linear_slope = b1;
    std::vector<double> ly;
    for (double y : ys) {
      ly.push_back(std::log2(y + 1));
    }
    auto [a2, b2] = lsq(ly);
    f.exp_rate    = b2;
    double sl = 0, se = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double const dl = ys[i] - (a1 + b1 * xs[i]);
      double const de = ys[i] - (std::exp2(a2 + b2 * xs[i]) - 1);
      sl += dl * dl;
      se += de * de;
    }
    f.linear_rms     = std::sqrt(sl / double(xs.size()));
    f.exp_rms        = std::sqrt(se / double(xs.size()));
    f.enough         = f.points >= GrowthFit::kMinPoints;
    f.linear_like    = f.linear_rms <= GrowthFit::kLinearRms || f.linear_rms <= f.exp_rms;
    f.subexponential = f.linear_like || f.exp_rate < GrowthFit::kExpRate;
    return f;
  }

  //! One checked instance of a d-function identity or inequality.
  struct AuditLine {
    std::string identity;
    std::string detail;
    Verdict     holds = Verdict::unknown;  //!< unknown: skipped or inconclusive
  };

  namespace detail {
    inline std::string show(GrowthEntry const& g) {
      return g.exact() ? std::to_string(g.lower)
                       : "[" + std::to_string(g.lower) + "," + std::to_string(g.upper) + "]";
    }
    // a ≤ b on intervals
    inline Verdict le(GrowthEntry const& a, GrowthEntry const& b) {
      if (a.upper <= b.lower) {
        return Verdict::yes;
      }
      if (a.lower > b.upper) {
        return Verdict::no;
      }
      return Verdict::unknown;
    }
  }  // namespace detail

  struct GrowthAudit {
    std::vector<AuditLine> lines;
    [[nodiscard]] bool any_violation() const {
      return std::any_of(lines.begin(), lines.end(), [](auto const& l) { return l.holds == Verdict::no; });
    }
  };

  //! Power identity d_{A^k}(n) = d_A(kn), quotient monotonicity over Con(A)
  //! and the constant-expansion sandwich, each where the sizes fit.
  //! Each computation gets its own time slice of `item_seconds` so one
  //! hard instance does not starve the rest.
  inline GrowthAudit growth_identities_audit(FiniteAlgebra const& alg, std::size_t k_max,
                                             std::size_t n_max, ClosureBudget const& outer,
                                             std::size_t cap = 4096, double item_seconds = 20) {
    GrowthAudit audit;
    auto        fits = [&](std::size_t m) {
      std::size_t s = 1;
      for (std::size_t i = 0; i < m; ++i) {
        s *= alg.size();
        if (s > cap) {
          return false;
        }
      }
      return true;
    };
    std::map<std::size_t, GrowthEntry> d;
    auto dA = [&](std::size_t m) -> GrowthEntry const& {
      auto it = d.find(m);
      if (it == d.end()) {
        it = d.emplace(m, minimum_generating_size(alg, m, outer.slice(item_seconds))).first;
      }
      return it->second;
    };

    for (std::size_t k = 2; k <= k_max; ++k) {
      for (std::size_t n = 1; n <= n_max; ++n) {
        AuditLine l{"d_{A^" + std::to_string(k) + "}(" + std::to_string(n) + ") = d_A("
                        + std::to_string(k * n) + ")",
                    "", Verdict::unknown};
        bool small = fits(k * n);
        // materializing A^k needs every table of A^k within the cap
        for (std::size_t op = 0; small && op < alg.num_operations(); ++op) {
          small = fits(k * alg.arity(op)) || alg.arity(op) == 0;
        }
        if (!small || outer.expired()) {
          l.detail = "skipped: size";
          audit.lines.push_back(l);
          continue;
        }
        auto Ak  = direct_power(alg, k);
        auto lhs = minimum_generating_size(Ak, n, outer.slice(item_seconds));
        auto const& rhs = dA(k * n);
        l.detail        = detail::show(lhs) + " vs " + detail::show(rhs);
        if (lhs.exact() && rhs.exact()) {
          l.holds = lhs.lower == rhs.lower ? Verdict::yes : Verdict::no;
        } else if (lhs.upper < rhs.lower || rhs.upper < lhs.lower) {
          l.holds = Verdict::no;
        }
        audit.lines.push_back(l);
      }
    }

    auto lat = congruence_lattice(alg, outer.slice(item_seconds));
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (!fits(n) || !lat.complete) {
        audit.lines.push_back({"quotient monotonicity, n=" + std::to_string(n), "skipped", Verdict::unknown});
        continue;
      }
      auto const& da = dA(n);
      for (std::size_t i = 0; i < lat.size(); ++i) {
        if (lat[i].is_identity()) {
          continue;
        }
        auto q  = quotient(alg, lat[i], alg.name() + "/" + lat[i].to_string(), false);
        auto dq = minimum_generating_size(q.algebra, n, outer.slice(item_seconds));
        audit.lines.push_back({"d_{A/" + lat[i].to_string() + "}(" + std::to_string(n) + ") <= d_A("
                                   + std::to_string(n) + ")",
                               detail::show(dq) + " vs " + detail::show(da), detail::le(dq, da)});
      }
    }

    auto B = constant_expansion(alg);
    for (std::size_t n = 1; n <= n_max; ++n) {
      if (!fits(n)) {
        continue;
      }
      auto const& da  = dA(n);
      auto const& da1 = dA(1);
      auto        db  = minimum_generating_size(B, n, outer.slice(item_seconds));
      Verdict     upper = detail::le(db, da);
      // d_A(n) − d_A(1) ≤ d_B(n)
      Verdict lower = Verdict::unknown;
      if (da.upper <= db.lower + da1.lower) {
        lower = Verdict::yes;
      } else if (da.lower > db.upper + da1.upper) {
        lower = Verdict::no;
      }
      Verdict both = (upper == Verdict::no || lower == Verdict::no)     ? Verdict::no
                     : (upper == Verdict::yes && lower == Verdict::yes) ? Verdict::yes
                                                                        : Verdict::unknown;
      audit.lines.push_back({"d_A(" + std::to_string(n) + ") - d_A(1) <= d_B(" + std::to_string(n)
                                 + ") <= d_A(" + std::to_string(n) + "), B the constant expansion",
                             "d_A(n)=" + detail::show(da) + " d_A(1)=" + detail::show(da1)
                                 + " d_B(n)=" + detail::show(db),
                             both});
    }
    return audit;
  }

}  // namespace ualg
