#pragma once

// Brute-force reference computations. They use nothing from the library but
// FiniteAlgebra::apply and the tables themselves, and are only meant for
// universes of a few dozen elements.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ualg/algebra.hpp"

namespace oracle {

  using ualg::Elem;
  using ualg::FiniteAlgebra;
  using Tuple = std::vector<Elem>;

  // Calls f on every tuple in {0..n-1}^k, last coordinate fastest.
  inline void each_tuple(std::size_t n, std::size_t k, std::function<void(Tuple const&)> const& f) {
    Tuple t(k, 0);
    while (true) {
      f(t);
      std::size_t i = k;
      while (i > 0 && ++t[i - 1] == n) {
        t[--i] = 0;
      }
      if (i == 0) {
        return;
      }
    }
  }

  // Partitions rendered like "{0,1}{2,3}", classes ordered by least element.
  inline std::string render(std::vector<int> const& label) {
    std::map<int, std::vector<std::size_t>> cls;
    std::vector<int>                        order;
    for (std::size_t i = 0; i < label.size(); ++i) {
      if (!cls.count(label[i])) {
        order.push_back(label[i]);
      }
      cls[label[i]].push_back(i);
    }
    std::string s;
    for (int c : order) {
      s += "{";
      for (std::size_t k = 0; k < cls[c].size(); ++k) {
        s += (k ? "," : "") + std::to_string(cls[c][k]);
      }
      s += "}";
    }
    return s;
  }

  // Whether the labeling is compatible with every operation, changing one
  // argument at a time.
  inline bool compatible(FiniteAlgebra const& a, std::vector<int> const& label) {
    std::size_t const n = a.size();
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      bool ok = true;
      each_tuple(n, a.arity(op), [&](Tuple const& t) {
        if (!ok) {
          return;
        }
        Elem  v = a.apply(op, t);
        Tuple u = t;
        for (std::size_t i = 0; i < t.size() && ok; ++i) {
          for (Elem b = 0; b < n && ok; ++b) {
            if (label[b] == label[t[i]]) {
              u[i] = b;
              ok   = label[a.apply(op, u)] == label[v];
            }
          }
          u[i] = t[i];
        }
      });
      if (!ok) {
        return false;
      }
    }
    return true;
  }

  // All congruences by running through restricted growth strings.
  inline std::set<std::string> all_congruences(FiniteAlgebra const& a) {
    std::size_t const     n = a.size();
    std::set<std::string> out;
    std::vector<int>      rgs(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int mx) {
      if (i == n) {
        if (compatible(a, rgs)) {
          out.insert(render(rgs));
        }
        return;
      }
      for (int c = 0; c <= mx + 1; ++c) {
        rgs[i] = c;
        rec(i + 1, std::max(mx, c));
      }
    };
    rgs[0] = 0;
    rec(1, 0);
    return out;
  }

  // Elements of A^k are tuples; operations act coordinatewise.
  inline std::set<Tuple> power_closure(FiniteAlgebra const& a, std::set<Tuple> gens, std::size_t k) {
    for (std::size_t op = 0; op < a.num_operations(); ++op) {
      if (a.arity(op) == 0) {
        gens.insert(Tuple(k, a.apply(op, {})));
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Tuple> cur(gens.begin(), gens.end());
      for (std::size_t op = 0; op < a.num_operations(); ++op) {
        std::size_t const m = a.arity(op);
        if (m == 0 || cur.empty()) {
          continue;
        }
        each_tuple(cur.size(), m, [&](Tuple const& pick) {
          Tuple out(k), args(m);
          for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < m; ++i) {
              args[i] = cur[pick[i]][j];
            }
            out[j] = a.apply(op, args);
          }
          grew |= gens.insert(out).second;
        });
      }
    }
    return gens;
  }

  inline std::set<Elem> subuniverse(FiniteAlgebra const& a, std::vector<Elem> const& gens) {
    std::set<Tuple> g;
    for (Elem x : gens) {
      g.insert({x});
    }
    std::set<Elem> out;
    for (auto const& t : power_closure(a, g, 1)) {
      out.insert(t[0]);
    }
    return out;
  }

  // Least size of a generating set of A^k, trying every subset by size.
  inline std::size_t min_generating_size(FiniteAlgebra const& a, std::size_t k) {
    std::vector<Tuple> all;
    each_tuple(a.size(), k, [&](Tuple const& t) { all.push_back(t); });
    std::size_t const N = all.size();
    for (std::size_t s = 0; s <= N; ++s) {
      std::vector<bool> choose(N, false);
      std::fill(choose.begin(), choose.begin() + s, true);
      do {
        std::set<Tuple> g;
        for (std::size_t i = 0; i < N; ++i) {
          if (choose[i]) {
            g.insert(all[i]);
          }
        }
        if (power_closure(a, g, k).size() == N) {
          return s;
        }
      } while (std::prev_permutation(choose.begin(), choose.end()));
    }
    return N;
  }

  // Tables of all k-ary polynomial operations: projections and constants
  // closed under the basic operations.
  inline std::set<Tuple> polynomial_tables(FiniteAlgebra const& a, std::size_t k) {
    std::vector<Tuple> pts;
    each_tuple(a.size(), k, [&](Tuple const& t) { pts.push_back(t); });
    std::set<Tuple> gens;
    for (std::size_t i = 0; i < k; ++i) {
      Tuple col;
      for (auto const& p : pts) {
        col.push_back(p[i]);
      }
      gens.insert(col);
    }
    for (Elem c = 0; c < a.size(); ++c) {
      gens.insert(Tuple(pts.size(), c));
    }
    return power_closure(a, gens, pts.size());
  }

  inline bool has_maltsev_polynomial(FiniteAlgebra const& a) {
    std::size_t const n = a.size();
    for (auto const& t : polynomial_tables(a, 3)) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) {
        for (Elem y = 0; y < n && ok; ++y) {
          ok = t[(x * n + y) * n + y] == x && t[(y * n + y) * n + x] == x;
        }
      }
      if (ok) {
        return true;
      }
    }
    return false;
  }

  // Union-find closure of the pairs ((a,a),(b,b)) on A^2 under translations.
  // Returns the class label of each pair index a*n+b.
  inline std::vector<std::size_t> diagonal_congruence(FiniteAlgebra const& a) {
    std::size_t const        n = a.size(), N = n * n;
    std::vector<std::size_t> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    auto unite = [&](std::size_t x, std::size_t y) {
      x = find(x);
      y = find(y);
      if (x == y) {
        return false;
      }
      parent[std::max(x, y)] = std::min(x, y);
      return true;
    };
    for (Elem x = 0; x < n; ++x) {
      unite(0, x * n + x);
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t op = 0; op < a.num_operations(); ++op) {
        std::size_t const m = a.arity(op);
        if (m == 0) {
          continue;
        }
        each_tuple(N, m, [&](Tuple const& c) {
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t p = 0; p < N; ++p) {
              std::size_t q = find(p);
              if (q == p) {
                continue;
              }
              auto image = [&](std::size_t z) {
                Tuple l(m), r(m);
                for (std::size_t j = 0; j < m; ++j) {
                  std::size_t v = j == i ? z : c[j];
                  l[j]          = static_cast<Elem>(v / n);
                  r[j]          = static_cast<Elem>(v % n);
                }
                return a.apply(op, l) * n + a.apply(op, r);
              };
              grew |= unite(image(p), image(q));
            }
          }
        });
      }
    }
    std::vector<std::size_t> out(N);
    for (std::size_t p = 0; p < N; ++p) {
      out[p] = find(p);
    }
    return out;
  }

  // Abelian iff the diagonal is a whole class of the congruence above.
  inline bool is_abelian(FiniteAlgebra const& a) {
    auto const        lab = diagonal_congruence(a);
    std::size_t const n   = a.size();
    for (std::size_t p = 0; p < n * n; ++p) {
      if (lab[p] == lab[0] && p / n != p % n) {
        return false;
      }
    }
    return true;
  }

  inline std::size_t count_classes(std::vector<std::size_t> const& lab) {
    return std::set<std::size_t>(lab.begin(), lab.end()).size();
  }

  // Transitive closure by Floyd-Warshall.
  inline bool strongly_connected(std::vector<Elem> const& vs, std::vector<std::pair<Elem, Elem>> const& es) {
    std::size_t const              n = vs.size();
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    auto                           at = [&](Elem v) {
      return static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
    };
    for (std::size_t i = 0; i < n; ++i) {
      r[i][i] = true;
    }
    for (auto [x, y] : es) {
      r[at(x)][at(y)] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!r[i][j]) {
          return false;
        }
      }
    }
    return true;
  }

}  // namespace oracle
