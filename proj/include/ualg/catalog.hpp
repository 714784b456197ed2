#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace ualg::catalog {

  // Vector examples over GF(2): a vector (a,b,c) is the element 4a+2b+c,
  // (a,b) is 2a+b, and a pair (u,w) in B×C is 4u+w.

  namespace detail {
    using Vec3 = std::array<int, 3>;
    using Vec2 = std::array<int, 2>;

    inline Vec3 bits3(Elem x) { return {int(x >> 2) & 1, int(x >> 1) & 1, int(x) & 1}; }
    inline Elem from3(Vec3 v) { return Elem((v[0] & 1) << 2 | (v[1] & 1) << 1 | (v[2] & 1)); }
    inline Vec2 bits2(Elem x) { return {int(x >> 1) & 1, int(x) & 1}; }
    inline Elem from2(Vec2 v) { return Elem((v[0] & 1) << 1 | (v[1] & 1)); }

    inline Vec3 mul3(std::array<Vec3, 3> const& m, Vec3 v) {
      Vec3 r{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          r[i] ^= m[i][j] & v[j];
        }
      }
      return r;
    }
    inline Vec2 mul2(std::array<Vec2, 2> const& m, Vec2 v) {
      Vec2 r{};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          r[i] ^= m[i][j] & v[j];
        }
      }
      return r;
    }

    inline std::vector<std::string> names3() {
      std::vector<std::string> n;
      for (Elem x = 0; x < 8; ++x) {
        auto b = bits3(x);
        n.push_back(std::to_string(b[0]) + std::to_string(b[1]) + std::to_string(b[2]));
      }
      return n;
    }
    inline std::vector<std::string> names2() { return {"00", "01", "10", "11"}; }

    inline FiniteAlgebra cyclic_group(std::size_t n) {
      return FiniteAlgebra("z" + std::to_string(n) + "_group", n,
                           {make_operation("+", n, 2, [n](auto a) { return (a[0] + a[1]) % n; })});
    }
  }  // namespace detail

  inline std::array<detail::Vec3, 3> const F1{{{1, 0, 0}, {0, 1, 0}, {1, 0, 0}}};
  inline std::array<detail::Vec3, 3> const F2{{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}};
  inline std::array<detail::Vec3, 3> const G{{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}};
  inline std::array<detail::Vec2, 2> const P{{{1, 0}, {0, 0}}};
  inline std::array<detail::Vec2, 2> const N{{{0, 0}, {1, 0}}};

  //! GF(2)^3 with u*v = F1 u + F2 v and g(v) = G v + (1,0,0).
  inline FiniteAlgebra example_A() {
    using namespace detail;
    auto star = make_operation("*", 8, 2, [](auto a) {
      Vec3 u = mul3(F1, bits3(a[0]));
      Vec3 v = mul3(F2, bits3(a[1]));
      return from3({u[0] ^ v[0], u[1] ^ v[1], u[2] ^ v[2]});
    });
    auto g = make_operation("g", 8, 1, [](auto a) {
      Vec3 v = mul3(G, bits3(a[0]));
      v[0] ^= 1;
      return from3(v);
    });
    return FiniteAlgebra("example_A", 8, {star, g}, names3());
  }

  //! example_A with the transposition h of (1,0,0) and (1,0,1).
  inline FiniteAlgebra example_A_bar() {
    auto base = example_A();
    auto ops  = base.operations();
    ops.push_back(make_operation("h", 8, 1, [](auto a) -> Elem {
      if (a[0] == 4) {
        return 5;
      }
      if (a[0] == 5) {
        return 4;
      }
      return a[0];
    }));
    return FiniteAlgebra("example_A_bar", 8, std::move(ops), base.element_names());
  }

  namespace detail {
    inline Elem vadd(Elem x, Elem y) { return x ^ y; }
    //! f(x, y) = P x + N y on GF(2)^2.
    inline Elem f_PN(Elem x, Elem y) {
      Vec2 a = mul2(P, bits2(x));
      Vec2 b = mul2(N, bits2(y));
      return from2({a[0] ^ b[0], a[1] ^ b[1]});
    }

    // Signature +, (+), g, 0 shared by B, C and B×C.
    inline std::vector<Operation> bc_ops(bool is_b) {
      return {
          make_operation("+", 4, 2, [is_b](auto a) { return is_b ? vadd(a[0], a[1]) : 0u; }),
          make_operation("(+)", 4, 2, [is_b](auto a) { return is_b ? 0u : vadd(a[0], a[1]); }),
          make_operation("g", 4, 4,
                         [is_b](auto a) { return is_b ? f_PN(a[0], a[1]) : f_PN(a[2], a[3]); }),
          Operation{"0", 0, {0}},
      };
    }
  }  // namespace detail

  //! V = GF(2)^2 with + addition, (+) constant zero, g(x,y,u,v) = Px + Ny.
  inline FiniteAlgebra example_B() {
    return FiniteAlgebra("example_B", 4, detail::bc_ops(true), detail::names2());
  }

  //! V with + constant zero, (+) addition, g(x,y,u,v) = Pu + Nv.
  inline FiniteAlgebra example_C() {
    return FiniteAlgebra("example_C", 4, detail::bc_ops(false), detail::names2());
  }

  //! The direct product B×C; the pair (u,w) is the element 4u+w.
  inline FiniteAlgebra example_BxC() {
    auto                   b = example_B();
    auto                   c = example_C();
    std::vector<Operation> ops;
    for (std::size_t op = 0; op < b.num_operations(); ++op) {
      std::size_t const k = b.arity(op);
      ops.push_back(make_operation(b.symbol(op), 16, k, [&](auto a) {
        std::vector<Elem> l(k), r(k);
        for (std::size_t i = 0; i < k; ++i) {
          l[i] = a[i] / 4;
          r[i] = a[i] % 4;
        }
        return b.apply(op, l) * 4 + c.apply(op, r);
      }));
    }
    std::vector<std::string> names;
    for (Elem x = 0; x < 16; ++x) {
      names.push_back("(" + detail::names2()[x / 4] + "," + detail::names2()[x % 4] + ")");
    }
    return FiniteAlgebra("example_BxC", 16, std::move(ops), std::move(names));
  }

  inline FiniteAlgebra z2_group() { return detail::cyclic_group(2); }
  inline FiniteAlgebra z3_group() { return detail::cyclic_group(3); }
  inline FiniteAlgebra z4_group() { return detail::cyclic_group(4); }

  inline FiniteAlgebra two_element_lattice() {
    return FiniteAlgebra("two_element_lattice", 2,
                         {Operation{"meet", 2, {0, 0, 0, 1}}, Operation{"join", 2, {0, 1, 1, 1}}});
  }

  inline FiniteAlgebra two_element_boolean() {
    return FiniteAlgebra("two_element_boolean", 2,
                         {Operation{"meet", 2, {0, 0, 0, 1}}, Operation{"join", 2, {0, 1, 1, 1}},
                          Operation{"not", 1, {1, 0}}, Operation{"0", 0, {0}},
                          Operation{"1", 0, {1}}});
  }

  inline FiniteAlgebra two_element_bare_set() {
    return FiniteAlgebra("two_element_bare_set", 2, {});
  }

  inline std::map<std::string, std::function<FiniteAlgebra()>> const& builders() {
    static std::map<std::string, std::function<FiniteAlgebra()>> const table{
        {"example_A", example_A},
        {"example_A_bar", example_A_bar},
        {"example_B", example_B},
        {"example_C", example_C},
        {"example_BxC", example_BxC},
        {"z2_group", z2_group},
        {"z3_group", z3_group},
        {"z4_group", z4_group},
        {"two_element_lattice", two_element_lattice},
        {"two_element_boolean", two_element_boolean},
        {"two_element_bare_set", two_element_bare_set},
    };
    return table;
  }

  inline std::vector<std::string> names() {
    std::vector<std::string> out;
    for (auto const& [k, v] : builders()) {
      out.push_back(k);
    }
    return out;
  }

  //! The built-in algebra with the given name.
  inline FiniteAlgebra builtin(std::string const& name) {
    auto const& b  = builders();
    auto        it = b.find(name);
    if (it == b.end()) {
      std::string known;
      for (auto const& n : names()) {
        known += (known.empty() ? "" : ", ") + n;
      }
      throw InputError("unknown builtin algebra '" + name + "'; available: " + known);
    }
    return it->second();
  }

}  // namespace ualg::catalog
