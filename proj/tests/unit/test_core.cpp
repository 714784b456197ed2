#include <catch_amalgamated.hpp>

#include <array>

#include "ualg/catalog.hpp"
#include "ualg/document.hpp"
#include "ualg/partition.hpp"
#include "ualg/report.hpp"
#include "ualg/term.hpp"

using namespace ualg;

namespace {
  using V3 = std::array<int, 3>;

  V3 bits(Elem x) { return {int(x >> 2) & 1, int(x >> 1) & 1, int(x & 1)}; }
  Elem code(V3 v) { return Elem((v[0] & 1) * 4 + (v[1] & 1) * 2 + (v[2] & 1)); }
  V3 mul(int const (&m)[3][3], V3 v) {
    V3 r{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        r[i] ^= m[i][j] & v[j];
      }
    }
    return r;
  }
}  // namespace

TEST_CASE("every builtin validates and matches its frozen checksum", "[catalog]") {
  std::map<std::string, std::string> const frozen{
      {"example_A", "92a8964cdf3ba96f"},        {"example_A_bar", "341d1a90284e710b"},
      {"example_B", "23c1f4d5ab7747fe"},        {"example_BxC", "9deca80f647d51be"},
      {"example_C", "66932a3545bf0643"},        {"two_element_bare_set", "d6a401e1c017c92f"},
      {"two_element_boolean", "b8b8d052dd58a823"}, {"two_element_lattice", "1236b09687070e17"},
      {"z2_group", "ba68af644003a39a"},         {"z3_group", "5a8ebe3320828de5"},
      {"z4_group", "d601b4e3392ad3f2"},
  };
  REQUIRE(catalog::names().size() == frozen.size());
  for (auto const& [name, sum] : frozen) {
    INFO(name);
    auto a = catalog::builtin(name);
    CHECK(a.name() == name);
    CHECK(table_checksum(a) == sum);
  }
}

TEST_CASE("unknown builtin names list the available ones", "[catalog]") {
  try {
    (void)catalog::builtin("nope");
    FAIL("no exception");
  } catch (InputError const& e) {
    CHECK(std::string(e.what()).find("example_BxC") != std::string::npos);
  }
}

TEST_CASE("example_A tables recomputed from the matrices", "[catalog]") {
  int const F1[3][3] = {{1, 0, 0}, {0, 1, 0}, {1, 0, 0}};
  int const F2[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}};
  auto      a        = catalog::example_A();
  auto      star     = a.operation_index("*");
  auto      g        = a.operation_index("g");
  for (Elem u = 0; u < 8; ++u) {
    for (Elem v = 0; v < 8; ++v) {
      auto x = mul(F1, bits(u)), y = mul(F2, bits(v));
      CHECK(a.apply(star, std::vector<Elem>{u, v}) == code({x[0] ^ y[0], x[1] ^ y[1], x[2] ^ y[2]}));
    }
    // g: (a,b,c) -> (a+1, a+b, c)
    auto b = bits(u);
    CHECK(a.apply(g, std::vector<Elem>{u}) == code({b[0] ^ 1, b[0] ^ b[1], b[2]}));
  }
  CHECK(a.apply(g, std::vector<Elem>{0}) == 4);
}

TEST_CASE("example_A_bar adds only the transposition of 4 and 5", "[catalog]") {
  auto a  = catalog::example_A();
  auto ab = catalog::example_A_bar();
  REQUIRE(ab.num_operations() == a.num_operations() + 1);
  for (std::size_t i = 0; i < a.num_operations(); ++i) {
    CHECK(ab.operation(i) == a.operation(i));
  }
  CHECK(ab.operation(2).symbol == "h");
  CHECK(ab.operation(2).table == std::vector<Elem>{0, 1, 2, 3, 5, 4, 6, 7});
}

TEST_CASE("example_BxC g sends ((v,0),(v,0),(0,v),(0,v)) to (0,0)", "[catalog]") {
  auto a = catalog::example_BxC();
  // v = (0,1) is element 1 of V; (v,0) = 4, (0,v) = 1.
  CHECK(a.apply(a.operation_index("g"), std::vector<Elem>{4, 4, 1, 1}) == 0);
  // B is the first factor: g^B(x,y,u,v) = Px + Ny, with P(1,0) = (1,0).
  CHECK(a.apply(a.operation_index("g"), std::vector<Elem>{8, 0, 0, 0}) == 8);
  // C reads the last two arguments: N(1,0) = (0,1).
  CHECK(a.apply(a.operation_index("g"), std::vector<Elem>{0, 0, 0, 2}) == 1);
}

TEST_CASE("small builtin tables", "[catalog]") {
  CHECK(catalog::two_element_lattice().operation(0).table == std::vector<Elem>{0, 0, 0, 1});
  CHECK(catalog::z2_group().operation(0).table == std::vector<Elem>{0, 1, 1, 0});
  CHECK(catalog::z4_group().apply(0, std::vector<Elem>{3, 2}) == 1);
  CHECK(catalog::two_element_bare_set().num_operations() == 0);
}

TEST_CASE("algebra validation rejects bad tables", "[core]") {
  CHECK_THROWS_AS(FiniteAlgebra("x", 2, {Operation{"f", 2, {0, 1, 1}}}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("x", 2, {Operation{"f", 1, {0, 2}}}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("x", 2, {Operation{"f", 1, {0, 1}}, Operation{"f", 1, {1, 0}}}),
                  InputError);
  CHECK_THROWS_AS(FiniteAlgebra("x", 0, {}), InputError);
  CHECK_THROWS_AS(FiniteAlgebra("x", 2, {}, {"a"}), InputError);
}

TEST_CASE("terms evaluate and parse back from their rendering", "[core]") {
  auto a = catalog::example_BxC();
  auto t = Term::apply("g", {Term::var(0), Term::constant(5), Term::apply("(+)", {Term::var(1), Term::var(0)}),
                             Term::var(2)});
  auto s = t.to_string(&a);
  auto u = parse_term(s, a);
  CHECK(u.to_string(&a) == s);
  CHECK(term_table(a, u, 3) == term_table(a, t, 3));
  CHECK(parse_term("g(x0,#5,(+)(x1,x0),x2)", a).to_string() == t.to_string());
  CHECK_THROWS_AS(parse_term("g(x0,x1)", a), InputError);
  CHECK_THROWS_AS(parse_term("+(x0,x1) junk", a), InputError);
  CHECK_THROWS_AS(parse_term("#99", a), InputError);
}

TEST_CASE("partition basics", "[core]") {
  auto p = Partition::from_blocks(6, {{0, 3}, {1, 4, 5}});
  CHECK(p.num_classes() == 3);
  CHECK(p.related(1, 5));
  CHECK_FALSE(p.related(0, 1));
  CHECK(p.to_string() == "{0,3}{1,4,5}{2}");
  CHECK(p.class_of(5) == 1);
}

TEST_CASE("canonical z2 document parses to one binary table", "[document]") {
  std::string const doc = R"({"name":"z2_group","operations":[{"arity":2,"symbol":"+","table":[0,1,1,0]}],"schema_version":1,"size":2})";
  auto              a   = parse_algebra(doc);
  REQUIRE(a.num_operations() == 1);
  CHECK(a.operation(0).table == std::vector<Elem>{0, 1, 1, 0});
  CHECK(write_algebra(a) == doc);
  CHECK(write_algebra(a) == write_algebra(catalog::z2_group()));
}

TEST_CASE("write(parse(doc)) is the canonical form of doc", "[document]") {
  std::string const messy = "{ \"size\" : 2,\n \"schema_version\": 1, \"operations\": [ {\"table\": [1,0], "
                            "\"symbol\": \"not\", \"arity\": 1} ],\n \"name\": \"neg\",\n"
                            " \"element_names\": [\"f\", \"t\"] }";
  CHECK(write_algebra(parse_algebra(messy)) == canonical_document(messy));
  for (auto const& name : catalog::names()) {
    INFO(name);
    auto bytes = write_algebra(catalog::builtin(name));
    CHECK(write_algebra(parse_algebra(bytes)) == bytes);
    CHECK(canonical_document(bytes) == bytes);
  }
}

TEST_CASE("document errors carry their location", "[document]") {
  auto message = [](std::string const& doc) {
    try {
      (void)parse_algebra(doc);
    } catch (InputError const& e) {
      return std::string(e.what());
    }
    return std::string("accepted");
  };
  auto out_of_range =
      message(R"({"name":"b","operations":[{"arity":1,"symbol":"f","table":[0,1]},{"arity":2,"symbol":"+","table":[0,1,2,0]}],"schema_version":1,"size":2})");
  CHECK(out_of_range.find("operations[1]") != std::string::npos);
  CHECK(out_of_range.find("table[2]") != std::string::npos);
  auto short_table =
      message(R"({"name":"b","operations":[{"arity":2,"symbol":"+","table":[0,1,1]}],"schema_version":1,"size":2})");
  CHECK(short_table.find("3 entries, expected 4") != std::string::npos);
  auto syntax = message(R"({"name":"b", "size":2,)");
  CHECK(syntax.find("malformed document at byte") != std::string::npos);
  CHECK(message(R"({"name":"b","operations":[],"schema_version":2,"size":2})").find("schema_version") !=
        std::string::npos);
  CHECK(message(R"({"name":"b","operations":[],"schema_version":1,"size":2,"extra":1})").find("extra") !=
        std::string::npos);
  CHECK(message(R"({"name":"b","operations":[{"arity":1,"symbol":"f","table":[0,-1]}],"schema_version":1,"size":2})")
            .find("table[1]") != std::string::npos);
  CHECK(message(R"({"name":"b","operations":[{"arity":1,"symbol":"f","table":[0,0.5]}],"schema_version":1,"size":2})")
            .find("table[1]") != std::string::npos);
}

TEST_CASE("reports are deterministic and the empty report is valid", "[report]") {
  Report empty;
  auto   j = nlohmann::json::parse(empty.structured());
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["verdicts"].empty());
  CHECK(j["algebra"].is_null());
  CHECK_FALSE(empty.any_unknown());
  for (char const* key : {"algebra", "command", "parameters", "verdicts", "witnesses", "budgets", "flags"}) {
    CHECK(j.contains(key));
  }

  auto make = [] {
    auto   a = catalog::z2_group();
    Report r("demo", &a);
    r.parameter("k", 3);
    r.verdict("x", "something", Verdict::yes, {r.witness("w", "because")});
    r.verdict("y", "other", Verdict::unknown);
    return r;
  };
  CHECK(make().structured() == make().structured());
  CHECK(make().human() == make().human());
  CHECK(make().any_unknown());
}
