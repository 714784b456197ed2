#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "commutator.hpp"
#include "growth.hpp"
#include "structure.hpp"

namespace ualg {

  struct ProfileCaps {
    std::size_t   arity_cap      = 3;
    std::size_t   power_cap      = 1;  //!< powers tried for (vi)
    std::size_t   growth_n_max   = 4;
    std::size_t   growth_cap     = 4096;  //!< largest |A^n| in the d-table
    std::size_t   cube_rows      = 3;
    std::size_t   cube_cols      = 4;
    std::size_t   cube_constants = 2;
    double        seconds_per_check = 60;
    ClosureBudget budget;  //!< element/round limits; the deadline bounds the whole profile
  };

  struct ConditionVerdict {
    std::string id;
    std::string statement;
    Verdict     verdict   = Verdict::unknown;
    bool        empirical = false;  //!< a fit over finitely many values, never a proof
    std::string scope;              //!< limits the verdict is relative to, if any
    std::string evidence;
  };

  struct ConditionProfile {
    std::string                          algebra;
    std::array<ConditionVerdict, 6>      conditions;
    InterpolationResult                  maltsev;
    BatteryResult                        cube;
    std::size_t                          battery_size = 0;
    Type2SpreadResult                    spread;
    std::vector<GrowthEntry>             d_table;
    GrowthFit                            fit;
    std::vector<StronglyAbelianQuotient> sa_quotients;

    [[nodiscard]] ConditionVerdict const& operator[](std::size_t i) const { return conditions[i]; }
  };

  inline std::string describe_growth(std::vector<GrowthEntry> const& table) {
    std::string s;
    for (auto const& g : table) {
      s += (s.empty() ? "" : ", ") + ("d(" + std::to_string(g.n) + ")=") + detail::show(g);
    }
    return s;
  }

  //! The six conditions for one algebra:
  //! (i) Maltsev polynomial, (ii) pointed cube polynomial, (iii) spread of
  //! type 2 minimal sets, (iv) d(n) in O(n), (v) d(n) in 2^o(n), (vi) no
  //! power A^n has a nontrivial strongly abelian image.
  inline ConditionProfile condition_profile(FiniteAlgebra const& alg, ProfileCaps const& caps = {}) {
    ConditionProfile p;
    p.algebra    = alg.name();
    auto budget  = [&] { return caps.budget.slice(caps.seconds_per_check); };
    auto& c      = p.conditions;
    c[0] = {"i", "A has a Maltsev polynomial", Verdict::unknown, false, "", ""};
    c[1] = {"ii", "A has a pointed cube polynomial", Verdict::unknown, false, "", ""};
    c[2] = {"iii", "A is a spread of its type 2 minimal sets", Verdict::unknown, false, "", ""};
    c[3] = {"iv", "d_A(n) is in O(n)", Verdict::unknown, true, "", ""};
    c[4] = {"v", "d_A(n) is in 2^o(n)", Verdict::unknown, true, "", ""};
    c[5] = {"vi", "no power A^n has a nontrivial strongly abelian image", Verdict::unknown, false, "", ""};

    p.maltsev    = has_maltsev_polynomial(alg, budget());
    c[0].verdict = p.maltsev.verdict;
    c[0].evidence =
        p.maltsev.operation
            ? "F(x,y,z) = " + p.maltsev.operation->witness.to_string()
            : "interpolation closure on the cross domain: " + std::to_string(p.maltsev.closure_size)
                  + " members" + (p.maltsev.verdict == Verdict::no ? ", exhausted" : ", incomplete");

    auto battery   = cube_battery(caps.cube_rows, caps.cube_cols, caps.cube_constants);
    p.battery_size = battery.size();
    p.cube         = cube_battery_search(alg, battery, budget());
    c[1].verdict   = p.cube.verdict;
    c[1].scope     = "templates with at most " + std::to_string(caps.cube_rows) + " rows, "
                 + std::to_string(caps.cube_cols) + " columns, "
                 + std::to_string(caps.cube_constants) + " constant symbols";
    if (p.cube.template_found) {
      std::string consts;
      for (std::size_t i = 0; i < p.cube.search.constants.size(); ++i) {
        consts += (i ? ", " : "") + ("c" + std::to_string(i) + "=")
                  + alg.element_label(p.cube.search.constants[i]);
      }
      c[1].evidence = "template " + p.cube.template_found->to_string() + " with " + consts
                      + ": F = " + p.cube.search.operation->witness.to_string();
    } else {
      c[1].evidence = std::to_string(p.cube.templates_tried) + " of " + std::to_string(battery.size())
                      + " templates tried, " + std::to_string(p.cube.templates_refuted)
                      + " refuted exactly"
                      + (p.cube.battery_exhausted ? "; larger templates are not covered" : "");
    }

    p.spread     = is_spread_of_type2_minimal_sets(alg, budget());
    c[2].verdict = p.spread.verdict;
    if (p.spread.witness) {
      c[2].evidence = "spread witness of depth " + std::to_string(p.spread.witness->depth()) + " over "
                      + std::to_string(p.spread.family.size()) + " type 2 minimal sets";
    } else {
      c[2].evidence = std::to_string(p.spread.type2_covers) + " type 2 prime quotients among "
                      + std::to_string(p.spread.covers_examined) + " of "
                      + std::to_string(p.spread.covers_total) + " examined; family of "
                      + std::to_string(p.spread.family.size()) + " sets";
    }

    p.d_table = growth_table(alg, caps.growth_n_max, budget(), {}, caps.growth_cap);
    p.fit     = fit_growth(p.d_table);
    std::string fit_text = describe_growth(p.d_table) + "; linear rms "
                           + std::to_string(p.fit.linear_rms) + ", exponential rms "
                           + std::to_string(p.fit.exp_rms) + ", log2 rate "
                           + std::to_string(p.fit.exp_rate);
    c[3].evidence = c[4].evidence = fit_text;
    c[3].scope = c[4].scope = "least-squares fit over n <= " + std::to_string(p.d_table.size());
    if (p.fit.enough) {
      c[3].verdict = p.fit.linear_like ? Verdict::yes : Verdict::no;
      c[4].verdict = p.fit.subexponential ? Verdict::yes : Verdict::no;
    }

    bool        unknown = false;
    std::string ev;
    for (std::size_t n = 1; n <= caps.power_cap; ++n) {
      auto r = strongly_abelian_quotient_exists(alg, n, budget());
      ev += (ev.empty() ? "" : "; ") + ("n=" + std::to_string(n) + ": ") + to_string(r.verdict)
            + " (" + std::to_string(r.maximal_congruences_checked) + " maximal congruences checked)";
      p.sa_quotients.push_back(r);
      if (r.verdict == Verdict::yes) {
        c[5].verdict  = Verdict::no;
        c[5].evidence = "A^" + std::to_string(n) + "/theta is strongly abelian of size "
                        + std::to_string(r.quotient_size) + ", theta = " + r.theta->to_string();
        break;
      }
      unknown |= r.verdict == Verdict::unknown;
    }
    if (c[5].verdict != Verdict::no) {
      c[5].verdict  = unknown ? Verdict::unknown : Verdict::yes;
      c[5].scope    = "powers n <= " + std::to_string(caps.power_cap);
      c[5].evidence = ev;
    }
    return p;
  }

  //! Implications that hold for every finite algebra, checked on computed
  //! verdicts; unknown counts as vacuous. Returns the violated ones.
  inline std::vector<std::string> implication_violations(ConditionProfile const& p) {
    std::vector<std::string> bad;
    auto check = [&](std::size_t a, std::size_t b) {
      if (p[a].verdict == Verdict::yes && p[b].verdict == Verdict::no) {
        bad.push_back("(" + p[a].id + ") => (" + p[b].id + ")");
      }
    };
    check(0, 1);
    check(0, 3);
    check(2, 3);
    check(3, 4);
    return bad;
  }

  //! d_B(n) ≤ Σ d_{U}(n) over the distinct leaves U of a spread witness, B
  //! the constant expansion (the bound needs constants to be terms, and the
  //! polynomials of A and B coincide). Singleton leaves contribute 0.
  inline std::vector<AuditLine> spread_growth_audit(FiniteAlgebra const& alg,
                                                    std::vector<std::vector<Elem>> const& family,
                                                    SpreadWitness const& w, std::size_t n_max,
                                                    ClosureBudget const& budget) {
    std::vector<AuditLine> out;
    auto                   pol1 = unary_polynomial_clone(alg, budget);
    std::set<std::size_t>  leaves;
    for (auto const& nd : w.nodes) {
      if (nd.kind == SpreadNode::Kind::family) {
        leaves.insert(nd.index);
      }
    }
    std::vector<WitnessedOperation const*> idem;
    for (auto i : leaves) {
      WitnessedOperation const* e = nullptr;
      for (auto const& f : pol1.operations) {
        if (detail::is_idempotent_map(f.table) && detail::range_of(f.table) == family[i]) {
          e = &f;
          break;
        }
      }
      if (!e) {
        out.push_back({"spread growth bound", "leaf is not a neighborhood", Verdict::unknown});
        return out;
      }
      idem.push_back(e);
    }
    auto B = constant_expansion(alg);
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto        db = minimum_generating_size(B, n, budget);
      std::size_t lo = 0, hi = 0;
      std::string parts;
      for (auto const* e : idem) {
        auto du = induced_generating_size(alg, *e, n, budget);
        lo += du.lower;
        hi += du.upper;
        parts += (parts.empty() ? "" : "+") + detail::show(du);
      }
      Verdict v = db.upper <= lo ? Verdict::yes : db.lower > hi ? Verdict::no : Verdict::unknown;
      out.push_back({"d_B(" + std::to_string(n) + ") <= sum of d_U(" + std::to_string(n) + ")",
                     detail::show(db) + " vs " + parts, v});
    }
    return out;
  }

}  // namespace ualg
