#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ualg/catalog.hpp"
#include "ualg/clone.hpp"
#include "ualg/commutator.hpp"
#include "ualg/congruence.hpp"
#include "ualg/structure.hpp"
#include "ualg/tct.hpp"

using namespace ualg;

namespace {
  // F applied to each row of the template, with x ranging over A.
  bool satisfies(FiniteAlgebra const& a, CubeTemplate const& t, std::vector<Elem> const& consts,
                 WitnessedOperation const& F) {
    for (std::size_t r = 0; r < t.rows; ++r) {
      for (Elem x = 0; x < a.size(); ++x) {
        std::vector<Elem> args;
        for (std::size_t c = 0; c < t.cols; ++c) {
          auto const& e = t.at(r, c);
          if (e.kind == CubeEntry::Kind::x) {
            args.push_back(x);
          } else if (e.kind == CubeEntry::Kind::constant) {
            args.push_back(consts.at(e.index));
          } else {
            return false;
          }
        }
        if (eval_term(a, F.witness, args) != x) {
          return false;
        }
      }
    }
    return true;
  }

  // Closure of family plus singletons under setwise application, all subsets kept.
  bool oracle_spread(FiniteAlgebra const& a, std::vector<std::vector<Elem>> const& family) {
    std::set<std::set<Elem>> sets;
    for (auto const& f : family) {
      sets.insert(std::set<Elem>(f.begin(), f.end()));
    }
    for (Elem x = 0; x < a.size(); ++x) {
      sets.insert({x});
    }
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::set<Elem>> cur(sets.begin(), sets.end());
      for (std::size_t op = 0; op < a.num_operations(); ++op) {
        std::size_t const m = a.arity(op);
        if (m == 0) {
          continue;
        }
        oracle::each_tuple(cur.size(), m, [&](oracle::Tuple const& pick) {
          std::set<Elem> img;
          std::vector<std::vector<Elem>> doms;
          for (auto i : pick) {
            doms.emplace_back(cur[i].begin(), cur[i].end());
          }
          std::vector<std::size_t> idx(m, 0);
          while (true) {
            std::vector<Elem> args(m);
            for (std::size_t j = 0; j < m; ++j) {
              args[j] = doms[j][idx[j]];
            }
            img.insert(a.apply(op, args));
            std::size_t j = m;
            while (j > 0 && ++idx[j - 1] == doms[j - 1].size()) {
              idx[--j] = 0;
            }
            if (j == 0) {
              break;
            }
          }
          grew |= sets.insert(img).second;
        });
      }
    }
    return sets.count([&] {
      std::set<Elem> all;
      for (Elem x = 0; x < a.size(); ++x) {
        all.insert(x);
      }
      return all;
    }()) > 0;
  }
}  // namespace

TEST_CASE("cube templates parse, render and validate", "[cube]") {
  auto t = parse_cube_template("x c0 c0 / c0 x c0");
  CHECK(t.rows == 2);
  CHECK(t.cols == 3);
  CHECK(t.num_constants() == 1);
  CHECK(t.to_string() == "x c0 c0 / c0 x c0");
  CHECK(parse_cube_template("x y y / y y x").variable_names.size() == 1);
  CHECK_THROWS_AS(parse_cube_template("x c0 / x c0"), InputError);   // column of x only
  CHECK_THROWS_AS(parse_cube_template("x c1 / c1 x"), InputError);   // gap in constants
  CHECK_THROWS_AS(parse_cube_template("x c0 / c0"), InputError);     // ragged
  CHECK_THROWS_AS(parse_cube_template("x c0 c0 c0 c0 c0 c0 / c0 x c0 c0 c0 c0 c0"), InputError);
}

TEST_CASE("the default battery has 671 canonical templates", "[cube]") {
  auto bat = cube_battery(3, 4, 2);
  CHECK(bat.size() == 671);
  std::set<std::string> seen;
  for (auto const& t : bat) {
    CHECK_NOTHROW(t.validate());
    CHECK(seen.insert(t.to_string()).second);
    for (std::size_t r = 0; r < t.rows; ++r) {
      bool has_x = false;
      for (std::size_t c = 0; c < t.cols; ++c) {
        has_x |= t.at(r, c).kind == CubeEntry::Kind::x;
      }
      CHECK(has_x);
    }
  }
}

TEST_CASE("pointed cube witnesses satisfy their identities", "[cube]") {
  auto bat = cube_battery(3, 4, 2);
  for (auto const& name : {"z2_group", "z4_group", "two_element_lattice", "two_element_boolean", "example_B"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto r = cube_battery_search(a, bat, ClosureBudget::with_seconds(30));
    REQUIRE(r.verdict == Verdict::yes);
    REQUIRE(r.template_found);
    CHECK(satisfies(a, *r.template_found, r.search.constants, *r.search.operation));
  }
}

TEST_CASE("the bare set refutes every template in the battery", "[cube]") {
  auto bat = cube_battery(3, 4, 2);
  auto r   = cube_battery_search(catalog::two_element_bare_set(), bat, ClosureBudget::with_seconds(60));
  CHECK(r.verdict == Verdict::unknown);  // larger templates are not covered
  CHECK(r.battery_exhausted);
  CHECK(r.templates_refuted == bat.size());
  auto one = pointed_cube_search(catalog::two_element_bare_set(), parse_cube_template("x c0 / c0 x"),
                                 ClosureBudget{});
  CHECK(one.verdict == Verdict::no);
}

TEST_CASE("translation digraph of meet on the lattice is not strongly connected", "[trdigraph]") {
  auto a    = catalog::two_element_lattice();
  auto meet = Term::apply("meet", {Term::var(0), Term::var(1)});
  auto g    = translation_digraph(a, WitnessedOperation{2, term_table(a, meet, 2), meet});
  CHECK(g.edges == std::vector<std::pair<Elem, Elem>>{{0, 0}, {1, 0}, {1, 1}});
  CHECK_FALSE(g.strongly_connected());
  auto x = Term::var(0);
  CHECK_THROWS_AS(translation_digraph(a, WitnessedOperation{1, {1, 0}, x}), InputError);
}

TEST_CASE("strong connectivity agrees with Floyd-Warshall", "[trdigraph]") {
  auto a = catalog::z4_group();
  // idempotent over Z4 means the coefficients sum to 1 mod 4: 2x+3y, 3x+2y, x+2y+2z
  auto sum = [](std::vector<Term> xs) {
    Term t = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
      t = Term::apply("+", {xs[i], t});
    }
    return t;
  };
  auto x = Term::var(0), y = Term::var(1), z = Term::var(2);
  std::vector<Term> ts{sum({x, x, y, y, y}), sum({x, x, x, y, y}), sum({x, y, y, z, z})};
  for (auto const& t : ts) {
    auto m = t.num_vars();
    auto g = translation_digraph(a, WitnessedOperation{m, term_table(a, t, m), t});
    CHECK(g.strongly_connected() == oracle::strongly_connected(g.vertices, g.edges));
  }
  auto l  = catalog::two_element_lattice();
  auto jn = Term::apply("join", {Term::var(0), Term::var(1)});
  auto g  = translation_digraph(l, WitnessedOperation{2, term_table(l, jn, 2), jn});
  CHECK(g.strongly_connected() == oracle::strongly_connected(g.vertices, g.edges));
}

TEST_CASE("x+y+z on Z2 and the unary identity give complete digraphs", "[trdigraph]") {
  auto a = catalog::z2_group();
  auto x = Term::var(0), y = Term::var(1), z = Term::var(2);
  auto p = Term::apply("+", {x, Term::apply("+", {y, z})});
  auto g = translation_digraph(a, WitnessedOperation{3, term_table(a, p, 3), p});
  CHECK(g.generated == 2 * 3 * 2);
  CHECK(g.edges.size() == 4);
  CHECK(g.strongly_connected());
  // Edges (p(c), p(d)) = (c, d): every pair, not only loops.
  auto id = translation_digraph(a, WitnessedOperation{1, {0, 1}, x});
  CHECK(id.edges.size() == 4);
  CHECK(id.strongly_connected());
}

TEST_CASE("digraph edges recomputed from scratch", "[trdigraph]") {
  for (auto const& name : {"z3_group", "two_element_lattice", "example_B"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto cl = bounded_polynomial_clone(a, 2, ClosureBudget::with_seconds(30));
    REQUIRE(cl.complete);
    for (auto const& f : cl.operations) {
      bool idem = true;
      for (Elem c = 0; c < a.size(); ++c) {
        idem &= f.table[c * a.size() + c] == c;
      }
      if (!idem) {
        continue;
      }
      auto g = translation_digraph(a, f);
      CHECK(g.generated == a.size() * 2 * a.size());
      std::set<std::pair<Elem, Elem>> want;
      for (Elem c = 0; c < a.size(); ++c) {
        for (Elem d = 0; d < a.size(); ++d) {
          want.insert({c, f.table[d * a.size() + c]});
          want.insert({c, f.table[c * a.size() + d]});
        }
      }
      CHECK(std::vector<std::pair<Elem, Elem>>(want.begin(), want.end()) == g.edges);
    }
  }
}

TEST_CASE("simple abelian algebras have strongly connected digraphs up to arity 3", "[trdigraph]") {
  std::size_t audited = 0;
  for (auto const& name : catalog::names()) {
    auto a = catalog::builtin(name);
    if (a.size() > 4 || congruence_lattice(a).size() != 2 || !is_abelian(a)) {
      continue;
    }
    INFO(name);
    ++audited;
    for (std::size_t m = 1; m <= 3; ++m) {
      auto cl = bounded_polynomial_clone(a, m, ClosureBudget::with_seconds(30));
      REQUIRE(cl.complete);
      TupleCodec        codec(a.size(), m);
      std::vector<Elem> t(m);
      for (auto const& f : cl.operations) {
        bool idem = true;
        for (Elem c = 0; c < a.size(); ++c) {
          std::fill(t.begin(), t.end(), c);
          idem &= f.table[codec.encode(t)] == c;
        }
        if (idem) {
          auto g = translation_digraph(a, f);
          CHECK(oracle::strongly_connected(g.vertices, g.edges));
        }
      }
    }
  }
  CHECK(audited >= 2);  // Z2, Z3 at least
}

TEST_CASE("translation digraph check agrees with commutator solvability", "[trdigraph]") {
  for (auto const& name : {"example_A", "example_A_bar", "example_B", "example_C", "z2_group", "z3_group", "z4_group",
                           "two_element_lattice", "two_element_boolean", "two_element_bare_set"}) {
    INFO(name);
    auto a   = catalog::builtin(name);
    auto chk = solvability_digraph_check(a, 3, ClosureBudget::with_seconds(60));
    REQUIRE(chk.verdict != SolvabilityVerdict::unknown);
    bool solvable = abelianness_profile(a).solvable;
    CHECK((chk.verdict == SolvabilityVerdict::consistent_solvable) == solvable);
    if (chk.certificate) {
      auto const& c = *chk.certificate;
      CHECK_FALSE(c.digraph.strongly_connected());
      CHECK_FALSE(oracle::strongly_connected(c.digraph.vertices, c.digraph.edges));
      CHECK(c.digraph.vertices == c.neighborhood);
    }
  }
}

TEST_CASE("spread checks agree with the unpruned complex-algebra closure", "[spread]") {
  std::vector<std::pair<char const*, std::vector<std::vector<Elem>>>> cases{
      {"example_A", {{0, 2, 4, 6}}},
      {"example_A", {{0, 1}}},
      {"example_A", {{0, 2}, {4, 6}}},
      {"example_A", {{0, 1}, {2, 3}}},
      {"example_A_bar", {{0, 2, 4, 6}}},
      {"example_A_bar", {{0, 4}}},
      {"z4_group", {{0, 2}}},
      {"z4_group", {{0, 1}}},
      {"two_element_bare_set", {{0}}},
      {"two_element_lattice", {{0}}},
  };
  for (auto const& [name, family] : cases) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto r = spread_check(a, family, ClosureBudget{});
    REQUIRE(r.verdict != Verdict::unknown);
    CHECK((r.verdict == Verdict::yes) == oracle_spread(a, family));
    if (r.witness) {
      CHECK(replay(a, family, *r.witness));
    }
  }
}

TEST_CASE("example_BxC is a spread of U = B x 0 and W = 0 x C via g", "[spread]") {
  auto a = catalog::example_BxC();
  std::vector<std::vector<Elem>> family{{0, 4, 8, 12}, {0, 1, 2, 3}};
  auto r = spread_check(a, family, ClosureBudget{});
  REQUIRE(r.verdict == Verdict::yes);
  REQUIRE(r.witness);
  CHECK(replay(a, family, *r.witness));
  CHECK(a.symbol(r.witness->nodes[r.witness->root()].index) == "g");
  CHECK(r.witness->expression(a).rfind("g(", 0) == 0);
}

TEST_CASE("replay rejects a tampered witness", "[spread]") {
  auto a = catalog::example_A();
  std::vector<std::vector<Elem>> family{{0, 2, 4, 6}};
  auto r = spread_check(a, family, ClosureBudget{});
  REQUIRE(r.witness);
  auto w = *r.witness;
  w.nodes.back().elements.pop_back();
  CHECK_FALSE(replay(a, family, w));
  CHECK_FALSE(replay(a, {{0, 2}}, *r.witness));
}

TEST_CASE("type 2 spread verdicts", "[spread]") {
  ClosureBudget b = ClosureBudget::with_seconds(60);
  for (auto const& name : {"example_A", "example_A_bar", "example_B", "example_C", "z2_group", "z4_group", "example_BxC"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto r = is_spread_of_type2_minimal_sets(a, b);
    CHECK(r.verdict == Verdict::yes);
    REQUIRE(r.witness);
    CHECK(replay(a, r.family, *r.witness));
  }
  for (auto const& name : {"two_element_bare_set", "two_element_lattice", "two_element_boolean"}) {
    INFO(name);
    auto r = is_spread_of_type2_minimal_sets(catalog::builtin(name), b);
    CHECK(r.verdict == Verdict::no);
    CHECK(r.family.empty());
  }
}
