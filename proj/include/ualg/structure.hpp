#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "clone.hpp"
#include "congruence.hpp"
#include "error.hpp"
#include "tct.hpp"
#include "vector_pool.hpp"

namespace ualg {

  // ---------------------------------------------------------------- Maltsev

  //! The cross domain {(a,b,b)} ∪ {(b,b,a)} of A^3 with target a.
  inline PartialDomain maltsev_domain(std::size_t n) {
    std::map<std::vector<Elem>, Elem> pts;
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = 0; b < n; ++b) {
        pts.emplace(std::vector<Elem>{a, b, b}, a);
        pts.emplace(std::vector<Elem>{b, b, a}, a);
      }
    }
    PartialDomain d{3, {}, std::vector<Elem>{}};
    for (auto const& [p, t] : pts) {
      d.points.push_back(p);
      d.targets->push_back(t);
    }
    return d;
  }

  //! Decides whether `alg` has a Maltsev polynomial. "no" is exact.
  inline InterpolationResult has_maltsev_polynomial(FiniteAlgebra const& alg,
                                                    ClosureBudget const& budget) {
    return interpolation_closure(alg, maltsev_domain(alg.size()), true, budget);
  }

  //! Same with constants disallowed: a Maltsev term.
  inline InterpolationResult has_maltsev_term(FiniteAlgebra const& alg,
                                              ClosureBudget const& budget) {
    return interpolation_closure(alg, maltsev_domain(alg.size()), false, budget);
  }

  // ----------------------------------------------------------- cube terms

  struct CubeEntry {
    enum class Kind : std::uint8_t { x, variable, constant };
    Kind        kind  = Kind::x;
    std::size_t index = 0;

    friend bool operator==(CubeEntry const&, CubeEntry const&) = default;
  };

  struct CubeBounds {
    std::size_t max_rows      = 4;
    std::size_t max_cols      = 6;
    std::size_t max_constants = 3;
  };

  //! A k×m matrix over x, extra variables and constant symbols c0..c{p-1}.
  //! Text form: rows separated by '/', entries by blanks or commas, e.g.
  //! "x y y / y y x" or "x c0 / c0 x".
  struct CubeTemplate {
    std::size_t              rows = 0;
    std::size_t              cols = 0;
    std::vector<CubeEntry>   entries;  //!< row-major
    std::vector<std::string> variable_names;

    [[nodiscard]] CubeEntry const& at(std::size_t r, std::size_t c) const {
      return entries[r * cols + c];
    }

    [[nodiscard]] std::size_t num_constants() const {
      std::size_t p = 0;
      for (auto const& e : entries) {
        if (e.kind == CubeEntry::Kind::constant) {
          p = std::max(p, e.index + 1);
        }
      }
      return p;
    }

    void validate(CubeBounds const& b = {}) const {
      if (rows == 0 || cols == 0 || entries.size() != rows * cols) {
        throw InputError("cube template: empty or ragged matrix");
      }
      if (rows > b.max_rows || cols > b.max_cols) {
        throw InputError("cube template: dimensions exceed configured bounds");
      }
      std::size_t const p = num_constants();
      if (p > b.max_constants) {
        throw InputError("cube template: too many constant symbols");
      }
      std::vector<char> used(p, 0);
      for (auto const& e : entries) {
        if (e.kind == CubeEntry::Kind::constant) {
          used[e.index] = 1;
        }
        if (e.kind == CubeEntry::Kind::variable && e.index >= variable_names.size()) {
          throw InputError("cube template: unknown variable");
        }
      }
      if (std::find(used.begin(), used.end(), 0) != used.end()) {
        throw InputError("cube template: constant symbols must be c0..c{p-1} without gaps");
      }
      for (std::size_t c = 0; c < cols; ++c) {
        bool non_x = false;
        for (std::size_t r = 0; r < rows; ++r) {
          non_x = non_x || at(r, c).kind != CubeEntry::Kind::x;
        }
        if (!non_x) {
          throw InputError("cube template: column " + std::to_string(c)
                           + " contains only x");
        }
      }
    }

    [[nodiscard]] std::string to_string() const {
      std::string s;
      for (std::size_t r = 0; r < rows; ++r) {
        if (r) {
          s += " / ";
        }
        for (std::size_t c = 0; c < cols; ++c) {
          if (c) {
            s += ' ';
          }
          auto const& e = at(r, c);
          switch (e.kind) {
            case CubeEntry::Kind::x: s += 'x'; break;
            case CubeEntry::Kind::variable: s += variable_names[e.index]; break;
            case CubeEntry::Kind::constant: s += "c" + std::to_string(e.index); break;
          }
        }
      }
      return s;
    }
  };

  inline CubeTemplate parse_cube_template(std::string const& text, CubeBounds const& bounds = {}) {
    CubeTemplate                            t;
    std::vector<std::vector<std::string>>   rows{{}};
    std::string                             tok;
    auto                                    flush = [&] {
      if (!tok.empty()) {
        rows.back().push_back(tok);
        tok.clear();
      }
    };
    for (char ch : text) {
      if (ch == '/') {
        flush();
        rows.emplace_back();
      } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
        flush();
      } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
        tok += ch;
      } else {
        throw InputError(std::string("cube template: unexpected character '") + ch + "'");
      }
    }
    flush();
    t.rows = rows.size();
    t.cols = rows.front().size();
    for (auto const& r : rows) {
      if (r.size() != t.cols) {
        throw InputError("cube template: rows have different lengths");
      }
      for (auto const& w : r) {
        CubeEntry e;
        if (w == "x") {
          e.kind = CubeEntry::Kind::x;
        } else if (w.size() > 1 && w[0] == 'c'
                   && std::all_of(w.begin() + 1, w.end(),
                                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          e.kind  = CubeEntry::Kind::constant;
          e.index = std::stoul(w.substr(1));
        } else {
          e.kind  = CubeEntry::Kind::variable;
          auto it = std::find(t.variable_names.begin(), t.variable_names.end(), w);
          e.index = static_cast<std::size_t>(it - t.variable_names.begin());
          if (it == t.variable_names.end()) {
            t.variable_names.push_back(w);
          }
        }
        t.entries.push_back(e);
      }
    }
    t.validate(bounds);
    return t;
  }

  //! The interpolation domain of a template under a constant assignment:
  //! for each row, every assignment of x and the extra variables, with x as
  //! the target. Returns nullopt if one point would need two values.
  inline std::optional<PartialDomain> cube_domain(CubeTemplate const& t, std::size_t n,
                                                  std::span<Elem const> constants) {
    std::map<std::vector<Elem>, Elem> pts;
    std::size_t const                 nv = t.variable_names.size();
    for (std::size_t r = 0; r < t.rows; ++r) {
      // variables occurring in the row: slot 0 is x, then the extras
      std::vector<std::size_t> occurs;
      for (std::size_t c = 0; c < t.cols; ++c) {
        if (t.at(r, c).kind == CubeEntry::Kind::variable) {
          occurs.push_back(t.at(r, c).index);
        }
      }
      std::sort(occurs.begin(), occurs.end());
      occurs.erase(std::unique(occurs.begin(), occurs.end()), occurs.end());
      TupleCodec        codec(n, occurs.size() + 1);
      std::vector<Elem> vals(occurs.size() + 1);
      std::vector<Elem> env(nv, 0);
      std::size_t const total = checked_pow(n, occurs.size() + 1, kDefaultUniverseCap);
      for (std::size_t idx = 0; idx < total; ++idx) {
        codec.decode(idx, vals);
        for (std::size_t j = 0; j < occurs.size(); ++j) {
          env[occurs[j]] = vals[j + 1];
        }
        std::vector<Elem> point(t.cols);
        for (std::size_t c = 0; c < t.cols; ++c) {
          auto const& e = t.at(r, c);
          point[c] = e.kind == CubeEntry::Kind::x          ? vals[0]
                     : e.kind == CubeEntry::Kind::variable ? env[e.index]
                                                           : constants[e.index];
        }
        auto [it, fresh] = pts.emplace(std::move(point), vals[0]);
        if (!fresh && it->second != vals[0]) {
          return std::nullopt;
        }
      }
    }
    PartialDomain d{t.cols, {}, std::vector<Elem>{}};
    for (auto const& [p, v] : pts) {
      d.points.push_back(p);
      d.targets->push_back(v);
    }
    return d;
  }

  struct CubeSearchResult {
    Verdict                           verdict = Verdict::unknown;
    std::vector<Elem>                 constants;  //!< assignment of c0..c{p-1}
    std::optional<WitnessedOperation> operation;
    std::size_t                       assignments_tried = 0;
    std::size_t                       inconsistent      = 0;
  };

  //! Searches for a polynomial F with F(M) ≈ (x,…,x) for the template M,
  //! over every assignment of values to the constant symbols (values may
  //! coincide). "no" means every assignment was refuted exactly.
  inline CubeSearchResult pointed_cube_search(FiniteAlgebra const& alg, CubeTemplate const& t,
                                              ClosureBudget const& budget,
                                              std::size_t max_assignments = 1u << 16) {
    t.validate(CubeBounds{64, 64, 64});
    CubeSearchResult  res;
    std::size_t const n     = alg.size();
    std::size_t const p     = t.num_constants();
    std::size_t const total = checked_pow(n, p, kDefaultUniverseCap);
    if (total > max_assignments) {
      return res;
    }
    TupleCodec        codec(n, p);
    std::vector<Elem> consts(p);
    bool              exact = true;
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (budget.expired()) {
        return res;
      }
      codec.decode(idx, consts);
      ++res.assignments_tried;
      auto dom = cube_domain(t, n, consts);
      if (!dom) {
        ++res.inconsistent;
        continue;
      }
      auto r = interpolation_closure(alg, *dom, true, budget);
      if (r.verdict == Verdict::yes) {
        res.verdict   = Verdict::yes;
        res.constants = consts;
        res.operation = std::move(r.operation);
        return res;
      }
      exact = exact && r.verdict == Verdict::no;
    }
    res.verdict = exact ? Verdict::no : Verdict::unknown;
    return res;
  }

  //! Templates over x and constant symbols with at most `max_rows` rows,
  //! `max_constants` symbols and `max_cols` columns.
  //!
  //! Only templates with pairwise distinct columns and as many columns as
  //! allowed are listed: a witness for a template with fewer or repeated
  //! columns gives one for any template containing its columns (ignore the
  //! extra variables, identify the repeated ones). Rows without x cannot be
  //! satisfied on a nontrivial algebra and are skipped. One representative
  //! per orbit under row and symbol permutations is kept.
  inline std::vector<CubeTemplate> cube_battery(std::size_t max_rows = 3, std::size_t max_cols = 4,
                                                std::size_t max_constants = 2) {
    std::vector<CubeTemplate> out;
    for (std::size_t k = 2; k <= max_rows; ++k) {
      for (std::size_t p = 1; p <= max_constants; ++p) {
        std::size_t const base = p + 1;  // symbol 0 is x, s>0 is c{s-1}
        // all columns except the all-x column
        std::vector<std::vector<std::uint8_t>> columns;
        std::size_t const ncols = checked_pow(base, k, 1u << 20);
        for (std::size_t code = 1; code < ncols; ++code) {
          std::vector<std::uint8_t> col(k);
          std::size_t               c = code;
          for (std::size_t r = k; r-- > 0;) {
            col[r] = static_cast<std::uint8_t>(c % base);
            c /= base;
          }
          columns.push_back(col);
        }
        std::size_t const m = std::min(max_cols, columns.size());
        std::vector<std::size_t> rowperm(k);
        std::vector<std::size_t> symperm(p);
        std::set<std::vector<std::vector<std::uint8_t>>> seen;
        std::vector<bool> choose(columns.size(), false);
        std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(m), true);
        do {
          std::vector<std::vector<std::uint8_t>> pick;
          for (std::size_t i = 0; i < columns.size(); ++i) {
            if (choose[i]) {
              pick.push_back(columns[i]);
            }
          }
          bool ok = true;
          for (std::size_t r = 0; r < k && ok; ++r) {
            bool has_x = false;
            for (auto const& col : pick) {
              has_x = has_x || col[r] == 0;
            }
            ok = has_x;
          }
          std::vector<char> used(base, 0);
          for (auto const& col : pick) {
            for (auto s : col) {
              used[s] = 1;
            }
          }
          for (std::size_t s = 1; s < base && ok; ++s) {
            ok = used[s];
          }
          if (!ok) {
            continue;
          }
          // canonical form: least sorted column list over row/symbol permutations
          std::vector<std::vector<std::uint8_t>> best;
          std::iota(rowperm.begin(), rowperm.end(), std::size_t{0});
          do {
            std::iota(symperm.begin(), symperm.end(), std::size_t{0});
            do {
              std::vector<std::vector<std::uint8_t>> img;
              for (auto const& col : pick) {
                std::vector<std::uint8_t> c(k);
                for (std::size_t r = 0; r < k; ++r) {
                  auto s = col[rowperm[r]];
                  c[r]   = s == 0 ? 0 : static_cast<std::uint8_t>(symperm[s - 1] + 1);
                }
                img.push_back(std::move(c));
              }
              std::sort(img.begin(), img.end());
              if (best.empty() || img < best) {
                best = std::move(img);
              }
            } while (std::next_permutation(symperm.begin(), symperm.end()));
          } while (std::next_permutation(rowperm.begin(), rowperm.end()));
          if (!seen.insert(best).second) {
            continue;
          }
          CubeTemplate t;
          t.rows = k;
          t.cols = m;
          t.entries.resize(k * m);
          for (std::size_t c = 0; c < m; ++c) {
            for (std::size_t r = 0; r < k; ++r) {
              auto s = best[c][r];
              t.entries[r * m + c] =
                  s == 0 ? CubeEntry{} : CubeEntry{CubeEntry::Kind::constant, std::size_t(s - 1)};
            }
          }
          out.push_back(std::move(t));
        } while (std::prev_permutation(choose.begin(), choose.end()));
      }
    }
    return out;
  }

  struct BatteryResult {
    Verdict                         verdict = Verdict::unknown;
    std::optional<CubeTemplate>     template_found;
    CubeSearchResult                search;
    std::size_t                     templates_tried = 0;
    std::size_t                     templates_refuted = 0;
    bool                            battery_exhausted = false;  //!< every template refuted exactly
  };

  //! Runs templates in order until one has a witness. Without a witness the
  //! verdict stays unknown: a finite battery cannot rule out larger templates.
  inline BatteryResult cube_battery_search(FiniteAlgebra const& alg,
                                           std::vector<CubeTemplate> const& battery,
                                           ClosureBudget const& budget) {
    BatteryResult res;
    for (auto const& t : battery) {
      if (budget.expired()) {
        return res;
      }
      ++res.templates_tried;
      auto r = pointed_cube_search(alg, t, budget);
      if (r.verdict == Verdict::yes) {
        res.verdict        = Verdict::yes;
        res.template_found = t;
        res.search         = std::move(r);
        return res;
      }
      if (r.verdict == Verdict::no) {
        ++res.templates_refuted;
      }
    }
    res.battery_exhausted = res.templates_refuted == battery.size();
    return res;
  }

  // ------------------------------------------------- translation digraphs

  struct TranslationDigraph {
    std::vector<Elem>                 vertices;  //!< sorted
    std::vector<std::pair<Elem, Elem>> edges;    //!< sorted, duplicates removed
    std::size_t                       arity = 0;
    std::size_t                       generated = 0;  //!< |V|·arity·|V| before collapsing
    Term                              source;

    [[nodiscard]] bool strongly_connected() const {
      std::size_t const n = vertices.size();
      if (n <= 1) {
        return true;
      }
      auto pos = [&](Elem v) {
        return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v)
                                        - vertices.begin());
      };
      std::vector<std::vector<std::size_t>> fwd(n), bwd(n);
      for (auto [a, b] : edges) {
        fwd[pos(a)].push_back(pos(b));
        bwd[pos(b)].push_back(pos(a));
      }
      auto reaches_all = [&](std::vector<std::vector<std::size_t>> const& g) {
        std::vector<char>        seen(n, 0);
        std::vector<std::size_t> stack{0};
        seen[0]           = 1;
        std::size_t count = 1;
        while (!stack.empty()) {
          auto v = stack.back();
          stack.pop_back();
          for (auto w : g[v]) {
            if (!seen[w]) {
              seen[w] = 1;
              ++count;
              stack.push_back(w);
            }
          }
        }
        return count == n;
      };
      return reaches_all(fwd) && reaches_all(bwd);
    }
  };

  //! Tr(p) for an operation given on U^m (values indexed in TupleCodec order
  //! over positions in U). Throws unless p is idempotent on U.
  inline TranslationDigraph translation_digraph(std::vector<Elem> const& U, std::size_t m,
                                                std::vector<Elem> const& values, Term source) {
    std::size_t const k = U.size();
    if (!std::is_sorted(U.begin(), U.end()) || values.size() != checked_pow(k, m, kDefaultUniverseCap)) {
      throw InputError("translation_digraph: malformed operation");
    }
    TupleCodec               codec(k, m);
    std::vector<Elem>        t(m);
    TranslationDigraph       g;
    std::set<std::pair<Elem, Elem>> edges;
    g.vertices = U;
    g.arity    = m;
    g.source   = std::move(source);
    for (std::size_t c = 0; c < k; ++c) {
      std::fill(t.begin(), t.end(), static_cast<Elem>(c));
      if (values[codec.encode(t)] != U[c]) {
        throw InputError("translation_digraph: operation is not idempotent");
      }
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t d = 0; d < k; ++d) {
          std::fill(t.begin(), t.end(), static_cast<Elem>(c));
          t[i] = static_cast<Elem>(d);
          edges.emplace(U[c], values[codec.encode(t)]);
          ++g.generated;
        }
      }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
  }

  inline TranslationDigraph translation_digraph(FiniteAlgebra const& alg, WitnessedOperation const& p) {
    std::vector<Elem> U(alg.size());
    std::iota(U.begin(), U.end(), Elem{0});
    return translation_digraph(U, p.arity, p.table, p.witness);
  }

  inline TranslationDigraph translation_digraph(InducedOperation const& p) {
    return translation_digraph(p.domain, p.arity, p.table, p.witness);
  }

  enum class SolvabilityVerdict { consistent_solvable, refuted_nonsolvable, unknown };

  inline char const* to_string(SolvabilityVerdict v) {
    switch (v) {
      case SolvabilityVerdict::consistent_solvable: return "consistent_solvable";
      case SolvabilityVerdict::refuted_nonsolvable: return "refuted_nonsolvable";
      default: return "unknown";
    }
  }

  struct SolvabilityCertificate {
    std::vector<Elem>  neighborhood;
    Term               idempotent;  //!< e with e(A) = U
    TranslationDigraph digraph;     //!< Tr(p) for p = e∘q restricted to U
  };

  struct SolvabilityCheck {
    SolvabilityVerdict                    verdict = SolvabilityVerdict::unknown;
    std::optional<SolvabilityCertificate> certificate;
    std::size_t                           arity_cap = 0;
    std::size_t                           neighborhoods = 0;
    std::size_t                           digraphs_checked = 0;
  };

  //! The translation-digraph test for solvability: over every neighborhood
  //! U = e(A) and every idempotent polynomial of A|_U of arity 2..arity_cap.
  //! Unary idempotent polynomials of A|_U are the identity, whose digraph is
  //! complete. A digraph that is not strongly connected refutes solvability;
  //! otherwise the verdict only covers the arities tried.
  inline SolvabilityCheck solvability_digraph_check(FiniteAlgebra const& alg, std::size_t arity_cap,
                                                    ClosureBudget const& budget) {
    SolvabilityCheck res;
    res.arity_cap = arity_cap;
    auto pol1     = unary_polynomial_clone(alg, budget);
    if (!pol1.complete) {
      return res;
    }
    std::map<std::vector<Elem>, WitnessedOperation const*> hoods;
    for (auto const& f : pol1.operations) {
      if (detail::is_idempotent_map(f.table)) {
        hoods.emplace(detail::range_of(f.table), &f);
      }
    }
    res.neighborhoods = hoods.size();
    bool exact        = true;
    for (auto const& [U, e] : hoods) {
      std::size_t const k = U.size();
      if (k < 2) {
        continue;
      }
      for (std::size_t m = 2; m <= arity_cap; ++m) {
        // near-diagonal points: enough to evaluate both idempotence and Tr
        std::vector<std::vector<Elem>> pts;
        std::map<std::vector<Elem>, std::size_t> where;
        auto add_point = [&](std::vector<Elem> p) {
          if (where.emplace(p, pts.size()).second) {
            pts.push_back(std::move(p));
          }
        };
        for (std::size_t c = 0; c < k; ++c) {
          add_point(std::vector<Elem>(m, U[c]));
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t d = 0; d < k; ++d) {
              std::vector<Elem> p(m, U[c]);
              p[i] = U[d];
              add_point(std::move(p));
            }
          }
        }
        PolynomialClosure  cl(alg, m, pts, true);
        detail::VectorPool seen(pts.size());
        std::vector<std::uint8_t> buf(pts.size());
        std::optional<std::pair<Elem, Elem>> none;
        auto st = cl.run(budget, [&](std::span<std::uint8_t const> v) {
          for (std::size_t q = 0; q < v.size(); ++q) {
            buf[q] = static_cast<std::uint8_t>(e->table[v[q]]);
          }
          for (std::size_t c = 0; c < k; ++c) {
            if (buf[where.at(std::vector<Elem>(m, U[c]))] != U[c]) {
              return false;  // not idempotent on U
            }
          }
          if (!seen.insert(buf.data()).second) {
            return false;
          }
          ++res.digraphs_checked;
          // strong connectivity over U
          std::vector<std::vector<std::size_t>> fwd(k), bwd(k);
          for (std::size_t c = 0; c < k; ++c) {
            for (std::size_t i = 0; i < m; ++i) {
              for (std::size_t d = 0; d < k; ++d) {
                std::vector<Elem> p(m, U[c]);
                p[i]     = U[d];
                Elem w   = buf[where.at(p)];
                auto pos = static_cast<std::size_t>(std::lower_bound(U.begin(), U.end(), w) - U.begin());
                fwd[c].push_back(pos);
                bwd[pos].push_back(c);
              }
            }
          }
          auto reaches_all = [&](std::vector<std::vector<std::size_t>> const& g) {
            std::vector<char>        mark(k, 0);
            std::vector<std::size_t> stack{0};
            mark[0]     = 1;
            std::size_t cnt = 1;
            while (!stack.empty()) {
              auto x = stack.back();
              stack.pop_back();
              for (auto y : g[x]) {
                if (!mark[y]) {
                  mark[y] = 1;
                  ++cnt;
                  stack.push_back(y);
                }
              }
            }
            return cnt == k;
          };
          return !(reaches_all(fwd) && reaches_all(bwd));
        });
        if (st.hit) {
          Term w = substitute(e->witness, cl.witness(*st.hit));
          // full table of the induced operation on U^m
          auto              local = all_points(k, m);
          std::vector<Elem> vals;
          for (auto& p : local) {
            for (auto& x : p) {
              x = U[x];
            }
            vals.push_back(eval_term(alg, w, p));
          }
          res.verdict     = SolvabilityVerdict::refuted_nonsolvable;
          res.certificate = SolvabilityCertificate{U, e->witness, translation_digraph(U, m, vals, w)};
          return res;
        }
        exact = exact && st.complete;
        if (budget.expired()) {
          return res;
        }
      }
    }
    res.verdict = exact ? SolvabilityVerdict::consistent_solvable : SolvabilityVerdict::unknown;
    return res;
  }

  // ----------------------------------------------------------------- spread

  struct SpreadNode {
    enum class Kind : std::uint8_t { family, singleton, apply };
    Kind                     kind  = Kind::family;
    std::size_t              index = 0;  //!< family index, element, or operation index
    std::vector<std::size_t> args;       //!< node ids
    std::vector<Elem>        elements;   //!< sorted
  };

  //! Derivation of the full universe from family members and singletons by
  //! setwise application of basic operations. Nodes are topologically
  //! ordered; the last node is the universe.
  struct SpreadWitness {
    std::vector<SpreadNode> nodes;

    [[nodiscard]] std::size_t root() const { return nodes.size() - 1; }
    [[nodiscard]] std::size_t depth() const {
      std::vector<std::size_t> d(nodes.size(), 0);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (auto a : nodes[i].args) {
          d[i] = std::max(d[i], d[a] + 1);
        }
      }
      return nodes.empty() ? 0 : d.back();
    }

    //! The polynomial expression, e.g. g(U0,U1,#0,#0); Ui names family
    //! member i and #e the singleton {e}.
    [[nodiscard]] std::string expression(FiniteAlgebra const& alg) const {
      auto go = [&](auto&& self, std::size_t i) -> std::string {
        auto const& nd = nodes[i];
        switch (nd.kind) {
          case SpreadNode::Kind::family: return "U" + std::to_string(nd.index);
          case SpreadNode::Kind::singleton: return "#" + alg.element_label(static_cast<Elem>(nd.index));
          default: break;
        }
        std::string s = alg.symbol(nd.index) + "(";
        for (std::size_t k = 0; k < nd.args.size(); ++k) {
          s += (k ? "," : "") + self(self, nd.args[k]);
        }
        return s + ")";
      };
      return nodes.empty() ? std::string() : go(go, root());
    }
  };

  namespace detail {
    using Mask = std::uint64_t;

    inline Mask mask_of(std::vector<Elem> const& s) {
      Mask m = 0;
      for (Elem x : s) {
        m |= Mask{1} << x;
      }
      return m;
    }

    inline std::vector<Elem> elems_of(Mask m) {
      std::vector<Elem> out;
      while (m) {
        out.push_back(static_cast<Elem>(std::countr_zero(m)));
        m &= m - 1;
      }
      return out;
    }

    // {f(a1,…,ak) : ai ∈ Si}, one argument per kernel class per slot.
    inline Mask apply_setwise(FiniteAlgebra const& alg, ArgumentKernels const& kernels,
                              std::size_t op, std::span<Mask const> args) {
      std::size_t const              k = args.size();
      std::vector<std::vector<Elem>> reps(k);
      for (std::size_t s = 0; s < k; ++s) {
        std::vector<char> cls(kernels[op][s].num_classes, 0);
        for (Elem x : elems_of(args[s])) {
          auto c = kernels[op][s].cls[x];
          if (!cls[c]) {
            cls[c] = 1;
            reps[s].push_back(x);
          }
        }
      }
      Mask                     out = 0;
      std::vector<std::size_t> idx(k, 0);
      std::vector<Elem>        t(k);
      while (true) {
        for (std::size_t s = 0; s < k; ++s) {
          t[s] = reps[s][idx[s]];
        }
        out |= Mask{1} << alg.apply(op, t);
        std::size_t s = k;
        while (s > 0) {
          --s;
          if (++idx[s] < reps[s].size()) {
            break;
          }
          idx[s] = 0;
          if (s == 0) {
            return out;
          }
        }
        if (k == 0) {
          return out;
        }
      }
    }
  }  // namespace detail

  //! Recomputes every node of a witness; true iff all match and the last node
  //! is the full universe.
  inline bool replay(FiniteAlgebra const& alg, std::vector<std::vector<Elem>> const& family,
                     SpreadWitness const& w) {
    if (w.nodes.empty() || alg.size() > 64) {
      return false;
    }
    auto const kernels = argument_kernels(alg);
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      auto const&       nd = w.nodes[i];
      std::vector<Elem> got;
      switch (nd.kind) {
        case SpreadNode::Kind::family:
          if (nd.index >= family.size()) {
            return false;
          }
          got = family[nd.index];
          std::sort(got.begin(), got.end());
          got.erase(std::unique(got.begin(), got.end()), got.end());
          break;
        case SpreadNode::Kind::singleton:
          if (nd.index >= alg.size()) {
            return false;
          }
          got = {static_cast<Elem>(nd.index)};
          break;
        case SpreadNode::Kind::apply: {
          if (nd.index >= alg.num_operations() || nd.args.size() != alg.arity(nd.index)) {
            return false;
          }
          std::vector<detail::Mask> args;
          for (auto a : nd.args) {
            if (a >= i) {
              return false;
            }
            args.push_back(detail::mask_of(w.nodes[a].elements));
          }
          got = detail::elems_of(detail::apply_setwise(alg, kernels, nd.index, args));
          break;
        }
      }
      if (got != nd.elements) {
        return false;
      }
    }
    return w.nodes.back().elements.size() == alg.size();
  }

  struct SpreadResult {
    Verdict                      verdict = Verdict::unknown;
    std::optional<SpreadWitness> witness;
    std::size_t                  rounds         = 0;
    std::size_t                  antichain_size = 0;
  };

  //! Whether A = p(U1,…,Uk) for a polynomial p and members Ui of `family`.
  //!
  //! Works in the complex algebra on subsets, seeded with the family and all
  //! singletons (the constants). Setwise application is monotone, so a set
  //! contained in another can be dropped: anything derived from it is
  //! contained in what the larger set derives. Only the ⊆-maximal sets are
  //! kept. Universes up to 64 elements.
  inline SpreadResult spread_check(FiniteAlgebra const& alg,
                                   std::vector<std::vector<Elem>> const& family,
                                   ClosureBudget const& budget) {
    using detail::Mask;
    std::size_t const n = alg.size();
    if (n > 64) {
      throw InputError("spread_check supports universes of at most 64 elements");
    }
    for (auto const& s : family) {
      if (s.empty()) {
        throw InputError("spread_check: empty family member");
      }
      for (Elem x : s) {
        if (x >= n) {
          throw InputError("spread_check: family element out of range");
        }
      }
    }
    Mask const full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

    struct Raw {
      SpreadNode::Kind         kind;
      std::size_t              index;
      std::vector<std::size_t> args;
      Mask                     mask;
    };
    std::vector<Raw>         nodes;
    std::vector<std::size_t> alive;  // node ids of the current antichain
    std::vector<char>        fresh;  // per node: added in the last round
    SpreadResult             res;
    std::optional<std::size_t> done;

    auto insert = [&](Raw r) -> bool {
      for (auto id : alive) {
        if ((r.mask & ~nodes[id].mask) == 0) {
          return false;
        }
      }
      std::erase_if(alive, [&](std::size_t id) { return (nodes[id].mask & ~r.mask) == 0; });
      nodes.push_back(std::move(r));
      fresh.push_back(1);
      alive.push_back(nodes.size() - 1);
      if (nodes.back().mask == full) {
        done = nodes.size() - 1;
      }
      return true;
    };

    for (std::size_t i = 0; i < family.size() && !done; ++i) {
      insert(Raw{SpreadNode::Kind::family, i, {}, detail::mask_of(family[i])});
    }
    for (Elem x = 0; x < n && !done; ++x) {
      insert(Raw{SpreadNode::Kind::singleton, x, {}, Mask{1} << x});
    }

    auto const kernels = argument_kernels(alg);
    bool       exact   = false;
    while (!done) {
      if (budget.expired() || nodes.size() > budget.max_elements) {
        break;
      }
      ++res.rounds;
      std::vector<std::size_t> cur = alive;
      std::vector<char>        was_fresh(nodes.size(), 0);
      for (auto id : cur) {
        was_fresh[id] = fresh[id];
      }
      std::fill(fresh.begin(), fresh.end(), 0);
      bool grew = false;
      for (std::size_t op = 0; op < alg.num_operations() && !done; ++op) {
        std::size_t const k = alg.arity(op);
        if (k == 0) {
          continue;
        }
        std::vector<std::size_t> idx(k, 0);
        std::vector<Mask>        args(k);
        std::size_t              steps = 0;
        while (!done) {
          bool any_fresh = false;
          for (std::size_t s = 0; s < k; ++s) {
            any_fresh = any_fresh || was_fresh[cur[idx[s]]];
          }
          if (any_fresh) {
            for (std::size_t s = 0; s < k; ++s) {
              args[s] = nodes[cur[idx[s]]].mask;
            }
            Mask m = detail::apply_setwise(alg, kernels, op, args);
            std::vector<std::size_t> argids(k);
            for (std::size_t s = 0; s < k; ++s) {
              argids[s] = cur[idx[s]];
            }
            grew = insert(Raw{SpreadNode::Kind::apply, op, std::move(argids), m}) || grew;
            if ((++steps & 1023) == 0 && budget.expired()) {
              break;
            }
          }
          std::size_t s = k;
          bool        wrapped = true;
          while (s > 0) {
            --s;
            if (++idx[s] < cur.size()) {
              wrapped = false;
              break;
            }
            idx[s] = 0;
          }
          if (wrapped) {
            break;
          }
        }
      }
      if (!grew && !done && !budget.expired()) {
        exact = true;
        break;
      }
    }
    res.antichain_size = alive.size();
    if (done) {
      // keep only the nodes the root depends on, renumbered in order
      std::vector<char>        need(nodes.size(), 0);
      std::vector<std::size_t> stack{*done};
      need[*done] = 1;
      while (!stack.empty()) {
        auto id = stack.back();
        stack.pop_back();
        for (auto a : nodes[id].args) {
          if (!need[a]) {
            need[a] = 1;
            stack.push_back(a);
          }
        }
      }
      std::vector<std::size_t> renum(nodes.size());
      SpreadWitness            w;
      for (std::size_t id = 0; id <= *done; ++id) {
        if (!need[id]) {
          continue;
        }
        renum[id] = w.nodes.size();
        SpreadNode nd{nodes[id].kind, nodes[id].index, {}, detail::elems_of(nodes[id].mask)};
        for (auto a : nodes[id].args) {
          nd.args.push_back(renum[a]);
        }
        w.nodes.push_back(std::move(nd));
      }
      res.verdict = Verdict::yes;
      res.witness = std::move(w);
    } else if (exact) {
      res.verdict = Verdict::no;
    }
    return res;
  }

  struct Type2SpreadResult {
    Verdict                        verdict = Verdict::unknown;
    std::optional<SpreadWitness>   witness;
    std::vector<std::vector<Elem>> family;  //!< type-2 minimal sets gathered so far
    std::size_t                    covers_examined = 0;
    std::size_t                    covers_total    = 0;
    std::size_t                    type2_covers    = 0;
  };

  //! Whether A is a spread of its type-2 minimal sets. The spread check
  //! reruns whenever the family grows and stops at the first success (a
  //! larger family only makes it easier). Covers are visited from the top of
  //! the lattice down, where large minimal sets tend to sit.
  inline Type2SpreadResult is_spread_of_type2_minimal_sets(FiniteAlgebra const& alg,
                                                           ClosureBudget const& budget) {
    Type2SpreadResult res;
    auto              lat = congruence_lattice(alg, budget);
    if (!lat.complete) {
      return res;
    }
    auto pol1 = unary_polynomial_clone(alg, budget);
    if (!pol1.complete) {
      return res;
    }
    res.covers_total   = lat.covers.size();
    bool                         types_known = true;
    Verdict                      last_spread = Verdict::no;
    std::set<std::vector<Elem>>  have;
    for (auto it = lat.covers.rbegin(); it != lat.covers.rend(); ++it) {
      auto [i, j] = *it;
      if (budget.expired()) {
        return res;
      }
      ++res.covers_examined;
      auto t = type_of_cover(alg, pol1, lat[i], lat[j], budget);
      if (t.label == TypeLabel::Unknown) {
        types_known = false;
        continue;
      }
      if (t.label != TypeLabel::Two) {
        continue;
      }
      ++res.type2_covers;
      auto ms   = minimal_sets_from_clone(pol1, lat[i], lat[j]);
      bool grew = false;
      for (auto const& m : ms.sets) {
        if (have.insert(m.elements).second) {
          res.family.push_back(m.elements);
          grew = true;
        }
      }
      if (grew) {
        auto sp     = spread_check(alg, res.family, budget);
        last_spread = sp.verdict;
        if (sp.verdict == Verdict::yes) {
          res.verdict = Verdict::yes;
          res.witness = std::move(sp.witness);
          return res;
        }
      }
    }
    if (types_known && last_spread == Verdict::no) {
      res.verdict = Verdict::no;
    }
    return res;
  }

}  // namespace ualg
