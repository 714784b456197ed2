#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "ualg/catalog.hpp"
#include "ualg/commutator.hpp"
#include "ualg/growth.hpp"
#include "ualg/profile.hpp"
#include "ualg/report.hpp"

using namespace ualg;

TEST_CASE("ceil_log", "[growth]") {
  CHECK(ceil_log(2, 1) == 0);
  CHECK(ceil_log(2, 2) == 1);
  CHECK(ceil_log(2, 5) == 3);
  CHECK(ceil_log(3, 9) == 2);
  CHECK(ceil_log(3, 10) == 3);
  CHECK(ceil_log(1, 10) == 0);
}

TEST_CASE("d_A(n) agrees with exhaustive subset search on small powers", "[growth]") {
  std::vector<std::pair<char const*, std::size_t>> cases{
      {"z2_group", 4},          {"z3_group", 2},           {"z4_group", 2},
      {"two_element_lattice", 4}, {"two_element_boolean", 4}, {"two_element_bare_set", 3},
      {"example_B", 2},         {"example_C", 2},          {"example_A", 1},
  };
  for (auto const& [name, n_max] : cases) {
    auto a = catalog::builtin(name);
    for (std::size_t n = 1; n <= n_max; ++n) {
      INFO(name << " n=" << n);
      auto g = minimum_generating_size(a, n, ClosureBudget::with_seconds(60));
      REQUIRE(g.exact());
      CHECK(g.lower == oracle::min_generating_size(a, n));
      // the witness generates
      std::set<oracle::Tuple> gens;
      TupleCodec              codec(a.size(), n);
      for (Elem w : g.witness) {
        oracle::Tuple t(n);
        codec.decode(w, t);
        gens.insert(t);
      }
      CHECK(gens.size() == g.lower);
      CHECK(oracle::power_closure(a, gens, n).size() == codec.count());
    }
  }
}

TEST_CASE("cyclic groups need n generators for the n-th power", "[growth]") {
  // m elements of Z_k^n generate at most k^m elements, so m >= n; the unit
  // vectors generate.
  for (auto const& name : {"z2_group", "z3_group", "z4_group"}) {
    auto t = growth_table(catalog::builtin(name), 4, ClosureBudget::with_seconds(60));
    REQUIRE(t.size() == 4);
    for (auto const& g : t) {
      INFO(name << " n=" << g.n);
      CHECK(g.exact());
      CHECK(g.lower == g.n);
    }
  }
}

TEST_CASE("growth values sit between ceil(log_|A| n) and |A|^n", "[growth]") {
  for (auto const& name : catalog::names()) {
    auto a = catalog::builtin(name);
    auto t = growth_table(a, 3, ClosureBudget::with_seconds(20), {}, 4096);
    for (auto const& g : t) {
      INFO(name << " n=" << g.n);
      CHECK(g.lower <= g.upper);
      std::size_t pow = 1;
      for (std::size_t i = 0; i < g.n; ++i) {
        pow *= a.size();
      }
      if (g.exact()) {
        CHECK(ceil_log(a.size(), g.n) <= g.lower);
        CHECK(g.lower <= pow);
      }
    }
  }
}

TEST_CASE("forced generators lie in every generating set", "[growth]") {
  // In the bare set every element of A^n is forced.
  CHECK(forced_generators(catalog::two_element_bare_set(), 3).size() == 8);
  // In a group nothing is forced.
  CHECK(forced_generators(catalog::z4_group(), 2).empty());
}

TEST_CASE("near-constant tuples generate powers of the affine examples", "[growth]") {
  for (auto const& name : {"z2_group", "z4_group", "example_B", "example_C"}) {
    auto a = catalog::builtin(name);
    for (std::size_t n : {2, 3}) {
      INFO(name << " n=" << n);
      auto r = near_constant_generation_check(a, n);
      CHECK(r.generates);
      if (n == 3) {
        CHECK(r.set_size == a.size() + n * a.size() * (a.size() - 1));
      }
    }
  }
  auto lat = near_constant_generation_check(catalog::two_element_lattice(), 4);
  CHECK(lat.set_size == 2 + 4 * 2);
}

TEST_CASE("growth identities hold where they are decided", "[growth]") {
  for (auto const& name : {"z2_group", "two_element_lattice"}) {
    INFO(name);
    auto audit = growth_identities_audit(catalog::builtin(name), 2, 2, ClosureBudget::with_seconds(60));
    CHECK_FALSE(audit.any_violation());
    bool power_line = false;
    for (auto const& l : audit.lines) {
      if (l.identity == "d_{A^2}(1) = d_A(2)") {
        power_line = true;
        CHECK(l.holds == Verdict::yes);
      }
    }
    CHECK(power_line);
  }
}

TEST_CASE("fit classification with pinned thresholds", "[growth]") {
  auto table = [](std::vector<std::size_t> d) {
    std::vector<GrowthEntry> t;
    for (std::size_t i = 0; i < d.size(); ++i) {
      t.push_back({i + 1, d[i], d[i], {}, {}, false});
    }
    return t;
  };
  auto lin = fit_growth(table({1, 2, 3, 4}));
  CHECK(lin.enough);
  CHECK(lin.linear_like);
  CHECK(lin.subexponential);
  auto exp = fit_growth(table({2, 4, 8, 16}));
  CHECK_FALSE(exp.linear_like);
  CHECK_FALSE(exp.subexponential);
  CHECK(fit_growth(table({1, 1, 2, 3})).linear_like);
  CHECK_FALSE(fit_growth(table({1, 2})).enough);
}

TEST_CASE("condition profiles respect the valid implications", "[profile]") {
  ProfileCaps caps;
  caps.seconds_per_check = 20;
  for (auto const& name : {"z2_group", "z4_group", "two_element_lattice", "two_element_boolean", "two_element_bare_set"}) {
    INFO(name);
    auto p = condition_profile(catalog::builtin(name), caps);
    CHECK(implication_violations(p).empty());
    for (auto const& c : p.conditions) {
      CHECK_FALSE(c.evidence.empty());
    }
  }
  auto z = condition_profile(catalog::z2_group(), caps);
  for (auto const& c : z.conditions) {
    CHECK(c.verdict == Verdict::yes);
  }
  auto bare = condition_profile(catalog::two_element_bare_set(), caps);
  CHECK(bare[0].verdict == Verdict::no);
  CHECK(bare[2].verdict == Verdict::no);
  CHECK(bare[3].verdict == Verdict::no);
  CHECK(bare[5].verdict == Verdict::no);
}

TEST_CASE("on solvable algebras (i) gives (iii) and (ii) gives near-constant generation", "[profile]") {
  ProfileCaps caps;
  caps.seconds_per_check = 20;
  caps.growth_n_max      = 3;
  for (auto const& name : {"z2_group", "z3_group", "z4_group", "example_B", "example_C", "two_element_bare_set"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    REQUIRE(abelianness_profile(a).solvable);
    auto p = condition_profile(a, caps);
    if (p[0].verdict == Verdict::yes) {
      CHECK(p[2].verdict == Verdict::yes);
    }
    if (p[1].verdict == Verdict::yes) {
      for (std::size_t n : {2, 3}) {
        CHECK(near_constant_generation_check(a, n).generates);
      }
    }
  }
}

TEST_CASE("profile report gives each condition its own evidence id", "[profile]") {
  ProfileCaps caps;
  caps.seconds_per_check = 20;
  auto a = catalog::two_element_lattice();
  auto p = condition_profile(a, caps);
  auto r = profile_report(a, p, caps);
  auto j = r.document();
  REQUIRE(j["verdicts"].size() == 6);
  std::set<std::string> ids;
  for (auto const& v : j["verdicts"]) {
    REQUIRE(v["evidence"].size() == 1);
    ids.insert(v["evidence"][0].get<std::string>());
  }
  CHECK(ids.size() == 6);
  for (auto const& w : j["witnesses"]) {
    CHECK(ids.count(w["id"].get<std::string>()));
  }
  CHECK(profile_report(a, p, caps).structured() == r.structured());
}

TEST_CASE("spread growth bound holds on the type 2 spread witnesses", "[profile]") {
  for (auto const& name : {"z2_group", "z4_group", "example_A", "example_B"}) {
    INFO(name);
    auto a = catalog::builtin(name);
    auto s = is_spread_of_type2_minimal_sets(a, ClosureBudget::with_seconds(30));
    REQUIRE(s.witness);
    auto lines = spread_growth_audit(a, s.family, *s.witness, 3, ClosureBudget::with_seconds(60));
    REQUIRE_FALSE(lines.empty());
    for (auto const& l : lines) {
      INFO(l.identity << " " << l.detail);
      CHECK(l.holds != Verdict::no);
    }
  }
}
