#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ualg/catalog.hpp"
#include "ualg/clone.hpp"
#include "ualg/commutator.hpp"
#include "ualg/structure.hpp"
#include "ualg/subuniverse.hpp"
#include "ualg/tct.hpp"

using namespace ualg;

namespace {
  Partition P(std::vector<std::vector<Elem>> b) { return Partition::from_blocks(8, b); }
  Partition const c_beta  = P({{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  Partition const c_delta = P({{0, 2}, {1, 3}, {4, 6}, {5, 7}});
  Partition const c_gamma = P({{0, 1, 2, 3}, {4, 5, 6, 7}});
  Partition const c_zero  = Partition::identity(8);
  Partition const c_one   = Partition::full(8);

  // Minimal sets straight from the definition, over brute-force unary polynomials.
  std::set<std::vector<Elem>> oracle_minimal_sets(FiniteAlgebra const& a, Partition const& lo, Partition const& hi) {
    std::set<std::vector<Elem>> ranges;
    for (auto const& f : oracle::polynomial_tables(a, 1)) {
      bool sep = false;
      for (Elem x = 0; x < a.size() && !sep; ++x) {
        for (Elem y = 0; y < a.size() && !sep; ++y) {
          sep = hi.related(x, y) && !lo.related(f[x], f[y]);
        }
      }
      if (sep) {
        std::set<Elem> r(f.begin(), f.end());
        ranges.insert(std::vector<Elem>(r.begin(), r.end()));
      }
    }
    std::set<std::vector<Elem>> out;
    for (auto const& r : ranges) {
      bool minimal = true;
      for (auto const& s : ranges) {
        minimal &= !(s.size() < r.size() && std::includes(r.begin(), r.end(), s.begin(), s.end()));
      }
      if (minimal) {
        out.insert(r);
      }
    }
    return out;
  }

  std::set<std::vector<Elem>> as_set(MinimalSetsResult const& r) {
    std::set<std::vector<Elem>> out;
    for (auto const& s : r.sets) {
      out.insert(s.elements);
    }
    return out;
  }
}  // namespace

TEST_CASE("subuniverses agree with naive closure", "[clone]") {
  for (auto const& name : {"example_A", "example_A_bar", "example_B", "example_BxC", "z4_group", "two_element_boolean"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    for (Elem x = 0; x < a.size(); ++x) {
      for (Elem y = x; y < a.size(); y += 3) {
        auto s = generate_subuniverse(a, {x, y});
        auto o = oracle::subuniverse(a, {x, y});
        CHECK(std::vector<Elem>(o.begin(), o.end()) == s);
      }
    }
  }
}

TEST_CASE("{(v,0),(0,0),(0,v)} is a 3-element subuniverse of example_BxC", "[clone]") {
  auto s = generate_subuniverse(catalog::example_BxC(), {4, 0, 1});
  CHECK(s == std::vector<Elem>{0, 1, 4});
}

TEST_CASE("Maltsev polynomial search agrees with brute-force ternary polynomials", "[clone]") {
  ClosureBudget b;
  for (auto const& name : {"z2_group", "z3_group", "z4_group", "two_element_lattice", "two_element_boolean",
                           "two_element_bare_set"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto r = has_maltsev_polynomial(a, b);
    REQUIRE(r.verdict != Verdict::unknown);
    CHECK((r.verdict == Verdict::yes) == oracle::has_maltsev_polynomial(a));
    if (r.operation) {
      auto t = term_table(a, r.operation->witness, 3);
      CHECK(t == r.operation->table);
      for (Elem x = 0; x < a.size(); ++x) {
        for (Elem y = 0; y < a.size(); ++y) {
          CHECK(eval_term(a, r.operation->witness, std::vector<Elem>{x, y, y}) == x);
          CHECK(eval_term(a, r.operation->witness, std::vector<Elem>{y, y, x}) == x);
        }
      }
    }
  }
}

TEST_CASE("example_BxC has no Maltsev polynomial, its factors have Maltsev terms", "[clone]") {
  auto r = has_maltsev_polynomial(catalog::example_BxC(), ClosureBudget{});
  CHECK(r.verdict == Verdict::no);
  for (auto const& name : {"example_B", "example_C"}) {
    auto a = catalog::builtin(name);
    auto t = has_maltsev_term(a, ClosureBudget{});
    REQUIRE(t.verdict == Verdict::yes);
    for (Elem x = 0; x < 4; ++x) {
      for (Elem y = 0; y < 4; ++y) {
        CHECK(eval_term(a, t.operation->witness, std::vector<Elem>{x, y, y}) == x);
        CHECK(eval_term(a, t.operation->witness, std::vector<Elem>{y, y, x}) == x);
      }
    }
  }
  CHECK(has_maltsev_polynomial(catalog::example_A(), ClosureBudget{}).verdict == Verdict::no);
}

TEST_CASE("unary polynomial clone matches the brute-force one", "[clone]") {
  for (auto const& name : {"example_A", "z4_group", "two_element_lattice", "example_B"}) {
    INFO(name);
    auto a    = catalog::builtin(name);
    auto pol1 = unary_polynomial_clone(a, ClosureBudget{});
    REQUIRE(pol1.complete);
    std::set<std::vector<Elem>> got;
    for (auto const& f : pol1.operations) {
      got.insert(f.table);
      CHECK(term_table(a, f.witness, 1) == f.table);
    }
    CHECK(got == oracle::polynomial_tables(a, 1));
  }
}

TEST_CASE("example_A prime quotient types: <0,beta> is 1, <beta,gamma> and <gamma,1> are 2", "[tct]") {
  auto a = catalog::example_A();
  ClosureBudget b;
  CHECK(type_of(a, c_zero, c_beta, b).label == TypeLabel::One);
  CHECK(type_of(a, c_beta, c_gamma, b).label == TypeLabel::Two);
  CHECK(type_of(a, c_gamma, c_one, b).label == TypeLabel::Two);
  auto ab = catalog::example_A_bar();
  CHECK(type_of(ab, c_beta, c_gamma, b).label == TypeLabel::Two);
  CHECK(type_of(ab, c_gamma, c_one, b).label == TypeLabel::Two);
}

TEST_CASE("type_of rejects pairs that are not covers", "[tct]") {
  auto a = catalog::example_A();
  CHECK_THROWS_AS(type_of(a, c_zero, c_gamma, ClosureBudget{}), InputError);
  CHECK_THROWS_AS(type_of(a, c_gamma, c_beta, ClosureBudget{}), InputError);
  CHECK_THROWS_AS(type_of(a, c_zero, P({{0, 7}}), ClosureBudget{}), InputError);
}

TEST_CASE("minimal sets: 4 for example_A and 16 for example_A_bar over <gamma,1>", "[tct]") {
  ClosureBudget b;
  auto          a  = catalog::example_A();
  auto          ms = minimal_sets(a, c_gamma, c_one, b);
  REQUIRE(ms.sets.size() == 4);
  CHECK(as_set(ms).count({0, 2, 4, 6}));
  CHECK(as_set(ms) == oracle_minimal_sets(a, c_gamma, c_one));
  CHECK(as_set(minimal_sets(a, c_beta, c_gamma, b)) == as_set(ms));
  CHECK(as_set(ms) == oracle_minimal_sets(a, c_beta, c_gamma));

  auto ab  = catalog::example_A_bar();
  auto ms2 = minimal_sets(ab, c_gamma, c_one, b);
  CHECK(ms2.sets.size() == 16);
  CHECK(as_set(ms2).count({0, 2, 4, 6}));
  CHECK(as_set(ms2) == oracle_minimal_sets(ab, c_gamma, c_one));
  CHECK(as_set(minimal_sets(ab, c_beta, c_gamma, b)) == as_set(ms2));
}

TEST_CASE("minimal sets have idempotents and polynomially isomorphic siblings", "[tct]") {
  ClosureBudget b;
  auto          a  = catalog::example_A();
  auto          ms = minimal_sets(a, c_gamma, c_one, b);
  for (auto const& s : ms.sets) {
    REQUIRE(s.idempotent);
    auto const& e = s.idempotent->table;
    for (Elem x = 0; x < 8; ++x) {
      CHECK(e[e[x]] == e[x]);
      CHECK(std::binary_search(s.elements.begin(), s.elements.end(), e[x]));
    }
  }
  CHECK(polynomial_isomorphism_classes(a, ms.sets, b).size() == 1);
}

TEST_CASE("traces partition the body and body plus tail is the minimal set", "[tct]") {
  ClosureBudget b;
  for (auto const& name : {"example_A", "example_A_bar", "z4_group", "two_element_lattice"}) {
    INFO(name);
    auto a   = catalog::builtin(name);
    auto lat = congruence_lattice(a, b);
    for (auto [i, j] : lat.covers) {
      for (auto const& s : minimal_sets(a, lat[i], lat[j], b).sets) {
        auto              tr = traces_and_body(a, lat[i], lat[j], s.elements);
        std::vector<Elem> all = tr.body;
        all.insert(all.end(), tr.tail.begin(), tr.tail.end());
        std::sort(all.begin(), all.end());
        CHECK(all == s.elements);
        std::size_t in_traces = 0;
        for (auto const& t : tr.traces) {
          in_traces += t.size();
          for (Elem x : t) {
            CHECK(lat[j].related(x, t.front()));
          }
          std::set<Elem> alpha_classes;
          for (Elem x : t) {
            alpha_classes.insert(lat[i].class_of(x));
          }
          CHECK(alpha_classes.size() >= 2);
        }
        CHECK(in_traces == tr.body.size());
        CHECK_FALSE(tr.traces.empty());
      }
    }
  }
}

TEST_CASE("type labels respect abelianness and Maltsev polynomials", "[tct]") {
  ClosureBudget b;
  for (auto const& name : {"example_A", "example_A_bar", "example_B", "example_C", "z2_group", "z3_group", "z4_group",
                           "two_element_lattice", "two_element_boolean", "two_element_bare_set"}) {
    INFO(name);
    auto a       = catalog::builtin(name);
    auto lat     = congruence_lattice(a, b);
    bool abelian = is_abelian(a);
    bool maltsev = has_maltsev_polynomial(a, b).verdict == Verdict::yes;
    for (auto [i, j] : lat.covers) {
      auto t = type_of(a, lat[i], lat[j], b);
      CHECK(t.label != TypeLabel::Unknown);
      if (abelian) {
        CHECK((t.label == TypeLabel::One || t.label == TypeLabel::Two));
      }
      if (maltsev) {
        CHECK(t.label != TypeLabel::One);
      }
    }
  }
  CHECK(type_of(catalog::two_element_lattice(), Partition::identity(2), Partition::full(2), b).label ==
        TypeLabel::NonabelianFamily);
  CHECK(type_of(catalog::two_element_boolean(), Partition::identity(2), Partition::full(2), b).label ==
        TypeLabel::NonabelianFamily);
  CHECK(type_of(catalog::two_element_bare_set(), Partition::identity(2), Partition::full(2), b).label ==
        TypeLabel::One);
  CHECK(type_of(catalog::z3_group(), Partition::identity(3), Partition::full(3), b).label == TypeLabel::Two);
}
