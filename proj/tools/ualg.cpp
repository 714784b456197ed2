// ualg: command-line front end.
//
// Exit codes: 0 success, 2 input error, 3 some verdict is unknown,
// 4 internal invariant violation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "ualg/ualg.hpp"

using namespace ualg;
using json = nlohmann::json;

namespace {

  struct Budget {
    std::size_t elements = 4'000'000;
    std::size_t rounds   = 10'000;
    double      seconds  = 60;

    [[nodiscard]] ClosureBudget make() const {
      auto b         = ClosureBudget::with_seconds(seconds);
      b.max_elements = elements;
      b.max_rounds   = rounds;
      return b;
    }
  };

  // UALG_BUDGET_PROFILE picks the defaults; flags override them.
  Budget default_budget() {
    static std::map<std::string, Budget> const profiles{
        {"quick", {1'000'000, 10'000, 10}},
        {"standard", {4'000'000, 10'000, 60}},
        {"thorough", {16'000'000, 100'000, 600}},
    };
    char const* env = std::getenv("UALG_BUDGET_PROFILE");
    if (env == nullptr || *env == '\0') {
      return profiles.at("standard");
    }
    auto it = profiles.find(env);
    if (it == profiles.end()) {
      throw InputError(std::string("UALG_BUDGET_PROFILE: unknown profile '") + env
                       + "'; expected quick, standard or thorough");
    }
    return it->second;
  }

  struct Options {
    Budget      budget;
    std::size_t arity_cap = 3;
    std::size_t power_cap = 1;
    std::string format    = "human";
    std::string out;
    std::string input;
  };

  FiniteAlgebra resolve_input(std::string const& input) {
    auto const& b = catalog::builders();
    if (b.count(input)) {
      return catalog::builtin(input);
    }
    if (std::filesystem::exists(input)) {
      return read_algebra_file(input);
    }
    throw InputError("'" + input + "' is neither a builtin algebra nor a readable file");
  }

  std::string elems(std::vector<Elem> const& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
      s += (i ? "," : "") + std::to_string(v[i]);
    }
    return s + "}";
  }

  std::vector<std::vector<Elem>> parse_family(std::string const& text, std::size_t n) {
    std::vector<std::vector<Elem>> out;
    std::stringstream              sets(text);
    std::string                    part;
    while (std::getline(sets, part, ';')) {
      std::vector<Elem> s;
      std::stringstream es(part);
      std::string       tok;
      while (std::getline(es, tok, ',')) {
        auto v = std::stoul(tok);
        if (v >= n) {
          throw InputError("family: element " + tok + " is out of range");
        }
        s.push_back(static_cast<Elem>(v));
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      if (s.empty()) {
        throw InputError("family: empty member");
      }
      out.push_back(std::move(s));
    }
    if (out.empty()) {
      throw InputError("family: no members");
    }
    return out;
  }

  Report start(std::string const& cmd, FiniteAlgebra const* alg, Options const& o) {
    Report r(cmd, alg);
    r.budgets(o.budget.elements, o.budget.rounds, o.budget.seconds);
    return r;
  }

  json partitions(std::vector<Congruence> const& cs) {
    auto a = json::array();
    for (auto const& c : cs) {
      a.push_back(c.to_string());
    }
    return a;
  }

  Report cmd_congruences(FiniteAlgebra const& alg, Options const& o) {
    auto r   = start("congruences", &alg, o);
    auto lat = congruence_lattice(alg, o.budget.make());
    r.verdict("complete", "the congruence lattice was enumerated completely",
              lat.complete ? Verdict::yes : Verdict::unknown);
    r.data("size", lat.size());
    r.data("congruences", partitions(lat.congruences));
    r.data("covers", lat.covers);
    return r;
  }

  Report cmd_commutators(FiniteAlgebra const& alg, Options const& o) {
    auto r = start("commutators", &alg, o);
    auto p = abelianness_profile(alg, o.budget.make());
    auto yn = [](bool b) { return b ? Verdict::yes : Verdict::no; };
    r.verdict("abelian", "[1,1] = 0", yn(p.abelian));
    r.verdict("strongly_abelian", "the strong term condition holds", p.strongly_abelian);
    r.verdict("solvable", "the derived series reaches 0", yn(p.solvable));
    r.verdict("left_nilpotent", "the left series reaches 0", yn(p.left_nilpotent));
    r.data("derived_series", partitions(p.derived_series));
    r.data("left_series", partitions(p.left_series));
    if (alg.size() * alg.size() <= 4096) {
      auto delta = diagonal_collapse(alg);
      r.data("diagonal_quotient_size", delta.num_classes());
    }
    return r;
  }

  Report cmd_tct(FiniteAlgebra const& alg, Options const& o, std::string const& cover, bool sets) {
    auto r      = start("tct", &alg, o);
    auto budget = o.budget.make();
    r.parameter("arity_cap", o.arity_cap);
    auto lat = congruence_lattice(alg, budget);
    if (!lat.complete) {
      r.verdict("types", "every prime quotient examined has a type", Verdict::unknown);
      return r;
    }
    auto covers = lat.covers;
    if (!cover.empty()) {
      auto comma = cover.find(',');
      if (comma == std::string::npos) {
        throw InputError("--cover expects LOWER,UPPER");
      }
      std::pair<std::size_t, std::size_t> want{std::stoul(cover.substr(0, comma)),
                                               std::stoul(cover.substr(comma + 1))};
      if (std::find(covers.begin(), covers.end(), want) == covers.end()) {
        throw InputError("--cover " + cover + " is not a covering pair of the lattice");
      }
      covers = {want};
      r.parameter("cover", cover);
    }
    auto pol1 = unary_polynomial_clone(alg, budget);
    auto rows = json::array();
    std::map<std::string, std::size_t> counts;
    bool                               unknown = !pol1.complete;
    for (auto [i, j] : covers) {
      auto const& a = lat[i];
      auto const& b = lat[j];
      auto        t = type_of_cover(alg, pol1, a, b, budget, o.arity_cap);
      ++counts[to_string(t.label)];
      unknown |= t.label == TypeLabel::Unknown;
      json row{{"lower", i}, {"upper", j}, {"type", to_string(t.label)}};
      if (t.arity_limited) {
        row["arity_limited"] = true;
      }
      if (!t.note.empty()) {
        row["note"] = t.note;
      }
      if (!t.minimal_set.empty()) {
        row["minimal_set"] = elems(t.minimal_set);
        row["trace"]       = elems(t.trace);
      }
      if (t.maltsev) {
        row["maltsev_mod_alpha"] = t.maltsev->witness.to_string(&alg);
      }
      if (t.nonunary) {
        row["nonunary_polynomial"] = t.nonunary->to_string(&alg);
      }
      if (sets) {
        auto ms = minimal_sets_from_clone(pol1, a, b);
        auto list = json::array();
        std::vector<std::vector<Elem>> plain;
        for (auto const& s : ms.sets) {
          list.push_back(elems(s.elements));
          plain.push_back(s.elements);
        }
        row["minimal_sets"] = list;
        if (!ms.sets.empty()) {
          auto tr     = traces_and_body(alg, a, b, ms.sets.front().elements);
          auto traces = json::array();
          for (auto const& x : tr.traces) {
            traces.push_back(elems(x));
          }
          row["first_set_traces"] = traces;
          row["first_set_body"]   = elems(tr.body);
          row["first_set_tail"]   = elems(tr.tail);
          row["isomorphism_classes"] = polynomial_isomorphism_classes(pol1, plain).size();
        }
      }
      rows.push_back(std::move(row));
    }
    r.verdict("types", "every prime quotient examined has a type",
              unknown ? Verdict::unknown : Verdict::yes);
    r.data("congruences", partitions(lat.congruences));
    r.data("prime_quotients", rows);
    r.data("type_counts", counts);
    return r;
  }

  Report cmd_maltsev(FiniteAlgebra const& alg, Options const& o, bool term) {
    auto r   = start("maltsev", &alg, o);
    auto res = term ? has_maltsev_term(alg, o.budget.make()) : has_maltsev_polynomial(alg, o.budget.make());
    r.parameter("kind", term ? "term" : "polynomial");
    std::vector<std::string> ev;
    if (res.operation) {
      ev.push_back(r.witness("maltsev", "F(x,y,z) = " + res.operation->witness.to_string(&alg)));
    }
    r.verdict("maltsev", std::string("A has a Maltsev ") + (term ? "term" : "polynomial"), res.verdict, ev);
    r.data("closure_size", res.closure_size);
    return r;
  }

  void cube_witness(Report& r, FiniteAlgebra const& alg, CubeTemplate const& t, CubeSearchResult const& s,
                    std::vector<std::string>& ev) {
    std::string consts;
    for (std::size_t i = 0; i < s.constants.size(); ++i) {
      consts += (i ? ", " : "") + ("c" + std::to_string(i) + "=") + alg.element_label(s.constants[i]);
    }
    ev.push_back(r.witness("pointed_cube", "template " + t.to_string() + (consts.empty() ? "" : " with " + consts)
                                               + ": F = " + s.operation->witness.to_string(&alg)));
  }

  Report cmd_cube(FiniteAlgebra const& alg, Options const& o, std::string const& tmpl, std::size_t rows,
                  std::size_t cols, std::size_t constants) {
    auto                     r = start("cube", &alg, o);
    std::vector<std::string> ev;
    if (!tmpl.empty()) {
      auto t = parse_cube_template(tmpl);
      r.parameter("template", t.to_string());
      auto s = pointed_cube_search(alg, t, o.budget.make());
      if (s.operation) {
        cube_witness(r, alg, t, s, ev);
      }
      r.verdict("cube", "A has a polynomial satisfying the template", s.verdict, ev);
      r.data("assignments_tried", s.assignments_tried);
      return r;
    }
    r.parameter("battery", {{"rows", rows}, {"columns", cols}, {"constants", constants}});
    auto battery = cube_battery(rows, cols, constants);
    auto b       = cube_battery_search(alg, battery, o.budget.make());
    if (b.template_found) {
      cube_witness(r, alg, *b.template_found, b.search, ev);
    }
    r.verdict("cube", "A has a pointed cube polynomial", b.verdict, ev, false,
              "templates up to " + std::to_string(rows) + " rows, " + std::to_string(cols) + " columns, "
                  + std::to_string(constants) + " constant symbols");
    r.data("battery_size", battery.size());
    r.data("templates_tried", b.templates_tried);
    r.data("templates_refuted", b.templates_refuted);
    r.data("battery_exhausted", b.battery_exhausted);
    return r;
  }

  json digraph_json(TranslationDigraph const& g, FiniteAlgebra const& alg) {
    auto edges = json::array();
    for (auto [a, b] : g.edges) {
      edges.push_back({a, b});
    }
    return {{"vertices", g.vertices},
            {"edges", edges},
            {"arity", g.arity},
            {"polynomial", g.source.to_string(&alg)},
            {"strongly_connected", g.strongly_connected()}};
  }

  Report cmd_trdigraph(FiniteAlgebra const& alg, Options const& o, std::string const& poly) {
    auto r = start("trdigraph", &alg, o);
    if (!poly.empty()) {
      auto t     = parse_term(poly, alg);
      auto arity = std::max<std::size_t>(1, t.num_vars());
      r.parameter("polynomial", t.to_string(&alg));
      WitnessedOperation p{arity, term_table(alg, t, arity), t};
      auto               g = translation_digraph(alg, p);
      r.verdict("strongly_connected", "Tr(p) is strongly connected",
                g.strongly_connected() ? Verdict::yes : Verdict::no);
      r.data("digraph", digraph_json(g, alg));
      return r;
    }
    r.parameter("arity_cap", o.arity_cap);
    auto chk = solvability_digraph_check(alg, o.arity_cap, o.budget.make());
    std::vector<std::string> ev;
    if (chk.certificate) {
      auto const& c = *chk.certificate;
      ev.push_back(r.witness("translation_digraph",
                             "neighborhood " + elems(c.neighborhood) + " of e = " + c.idempotent.to_string(&alg)
                                 + "; Tr(" + c.digraph.source.to_string(&alg) + ") is not strongly connected",
                             digraph_json(c.digraph, alg)));
    }
    Verdict v = chk.verdict == SolvabilityVerdict::consistent_solvable  ? Verdict::yes
                : chk.verdict == SolvabilityVerdict::refuted_nonsolvable ? Verdict::no
                                                                          : Verdict::unknown;
    r.verdict("digraphs", "every translation digraph tried is strongly connected", v, ev, false,
              "idempotent polynomials of arity 2.." + std::to_string(o.arity_cap) + " on each neighborhood");
    r.data("result", to_string(chk.verdict));
    r.data("neighborhoods", chk.neighborhoods);
    r.data("digraphs_checked", chk.digraphs_checked);
    r.data("commutator_solvable", abelianness_profile(alg, o.budget.make()).solvable);
    return r;
  }

  json witness_json(SpreadWitness const& w, FiniteAlgebra const& alg) {
    return {{"expression", w.expression(alg)}, {"depth", w.depth()}, {"nodes", w.nodes.size()}};
  }

  Report cmd_spread(FiniteAlgebra const& alg, Options const& o, std::string const& family_text) {
    auto                     r = start("spread", &alg, o);
    std::vector<std::string> ev;
    if (!family_text.empty()) {
      auto family = parse_family(family_text, alg.size());
      auto fam    = json::array();
      for (auto const& s : family) {
        fam.push_back(elems(s));
      }
      r.parameter("family", fam);
      auto res = spread_check(alg, family, o.budget.make());
      if (res.witness) {
        if (!replay(alg, family, *res.witness)) {
          throw InvariantViolation("spread witness does not replay");
        }
        ev.push_back(r.witness("spread", "A = " + res.witness->expression(alg), witness_json(*res.witness, alg)));
      }
      r.verdict("spread", "A is a spread of the family", res.verdict, ev);
      r.data("rounds", res.rounds);
      r.data("antichain_size", res.antichain_size);
      return r;
    }
    r.parameter("family", "type 2 minimal sets");
    auto res = is_spread_of_type2_minimal_sets(alg, o.budget.make());
    if (res.witness) {
      if (!replay(alg, res.family, *res.witness)) {
        throw InvariantViolation("spread witness does not replay");
      }
      ev.push_back(r.witness("spread", "A = " + res.witness->expression(alg), witness_json(*res.witness, alg)));
    }
    auto fam = json::array();
    for (auto const& s : res.family) {
      fam.push_back(elems(s));
    }
    r.verdict("spread", "A is a spread of its type 2 minimal sets", res.verdict, ev);
    r.data("family", fam);
    r.data("covers_examined", res.covers_examined);
    r.data("covers_total", res.covers_total);
    r.data("type2_covers", res.type2_covers);
    return r;
  }

  Report cmd_growth(FiniteAlgebra const& alg, Options const& o, std::size_t n_min, std::size_t n_max,
                    std::size_t cap) {
    auto r = start("growth", &alg, o);
    if (n_min == 0 || n_min > n_max) {
      throw InputError("growth: need 1 <= n-min <= n-max");
    }
    r.parameter("n_min", n_min);
    r.parameter("n_max", n_max);
    r.parameter("cap", cap);
    auto table = growth_table(alg, n_max, o.budget.make(), {}, cap);
    std::vector<GrowthEntry> shown;
    for (auto const& g : table) {
      if (g.n >= n_min) {
        shown.push_back(g);
        auto id = "d(" + std::to_string(g.n) + ")";
        r.verdict(id, "d_A(" + std::to_string(g.n) + ") is determined exactly",
                  g.exact() ? Verdict::yes : Verdict::unknown,
                  {r.witness("generating_set", id + " = " + detail::show(g),
                             g.witness.empty() ? json(nullptr) : json(g.witness))});
      }
    }
    if (table.size() < n_max) {
      r.data("omitted", "powers beyond |A|^n = " + std::to_string(cap) + " were not computed");
    }
    auto fit = fit_growth(table);
    r.data("d_table", growth_json(shown));
    r.data("fit", {{"points", fit.points},
                   {"linear_rms", fit.linear_rms},
                   {"exp_rate", fit.exp_rate},
                   {"linear_like", fit.linear_like},
                   {"subexponential", fit.subexponential}});
    return r;
  }

  Report cmd_profile(FiniteAlgebra const& alg, Options const& o, bool audit) {
    ProfileCaps caps;
    caps.arity_cap         = o.arity_cap;
    caps.power_cap         = o.power_cap;
    caps.seconds_per_check = o.budget.seconds;
    caps.budget.max_elements = o.budget.elements;
    caps.budget.max_rounds   = o.budget.rounds;
    auto p = condition_profile(alg, caps);
    auto r = profile_report(alg, p, caps);
    r.budgets(o.budget.elements, o.budget.rounds, o.budget.seconds);
    if (audit && p.spread.witness && alg.size() <= 64) {
      auto lines = spread_growth_audit(alg, p.spread.family, *p.spread.witness, 3, o.budget.make());
      auto a     = json::array();
      for (auto const& l : lines) {
        a.push_back({{"identity", l.identity}, {"detail", l.detail}, {"holds", to_string(l.holds)}});
        if (l.holds == Verdict::no) {
          throw InvariantViolation("spread growth bound fails: " + l.identity + " " + l.detail);
        }
      }
      r.data("spread_growth_audit", a);
    }
    if (!implication_violations(p).empty()) {
      throw InvariantViolation("profile violates a valid implication");
    }
    return r;
  }

  json algebra_summary(FiniteAlgebra const& alg) {
    auto ops = json::array();
    for (auto const& op : alg.operations()) {
      ops.push_back(op.symbol + "/" + std::to_string(op.arity));
    }
    return {{"name", alg.name()}, {"size", alg.size()}, {"checksum", table_checksum(alg)}, {"operations", ops}};
  }

  void emit(std::string const& text, Options const& o) {
    if (o.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      throw InputError("cannot write '" + o.out + "'");
    }
    f << text;
  }

  int finish(Report const& r, Options const& o) {
    emit(o.format == "structured" ? r.structured() : r.human(), o);
    return r.any_unknown() ? 3 : 0;
  }

}  // namespace

int main(int argc, char** argv) {
  Options o;
  try {
    o.budget = default_budget();
  } catch (InputError const& e) {
    std::cerr << "ualg: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Finite algebra analysis: congruences, tame congruence theory, growth of powers"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget-elements", o.budget.elements, "closure element cap")->check(CLI::PositiveNumber);
  app.add_option("--budget-rounds", o.budget.rounds, "closure round cap")->check(CLI::PositiveNumber);
  app.add_option("--budget-seconds", o.budget.seconds, "time cap per check")->check(CLI::PositiveNumber);
  app.add_option("--arity-cap", o.arity_cap, "largest polynomial arity searched")->check(CLI::Range(2, 6));
  app.add_option("--power-cap", o.power_cap, "largest power A^n searched for strongly abelian images")
      ->check(CLI::Range(1, 4));
  app.add_option("--format", o.format, "human or structured")->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--out", o.out, "write the report to PATH");

  auto input = [&](CLI::App* s) {
    s->add_option("input", o.input, "builtin algebra name or document path")->required();
  };
  auto* congruences = app.add_subcommand("congruences", "congruence lattice and covers");
  input(congruences);
  auto* commutators = app.add_subcommand("commutators", "abelianness, solvability, nilpotence");
  input(commutators);
  auto*       tct = app.add_subcommand("tct", "minimal sets, traces and types of prime quotients");
  std::string cover;
  bool        with_sets = false;
  input(tct);
  tct->add_option("--cover", cover, "only the prime quotient LOWER,UPPER (lattice indices)");
  tct->add_flag("--sets", with_sets, "list minimal sets, traces and isomorphism classes");
  auto* maltsev  = app.add_subcommand("maltsev", "search for a Maltsev polynomial");
  bool  maltsev_term = false;
  input(maltsev);
  maltsev->add_flag("--term", maltsev_term, "search for a term instead");
  auto*       cube = app.add_subcommand("cube", "pointed cube polynomials");
  std::string tmpl;
  std::size_t rows = 3, cols = 4, consts = 2;
  input(cube);
  cube->add_option("--template", tmpl, "explicit template, rows separated by '/', e.g. \"x c0 c0 / c0 x c0\"");
  cube->add_option("--rows", rows, "battery: most rows")->check(CLI::Range(1, 4));
  cube->add_option("--cols", cols, "battery: most columns")->check(CLI::Range(1, 6));
  cube->add_option("--constants", consts, "battery: most constant symbols")->check(CLI::Range(1, 3));
  auto*       trd = app.add_subcommand("trdigraph", "translation digraphs");
  std::string poly;
  input(trd);
  trd->add_option("--polynomial", poly, "an idempotent polynomial such as \"meet(x0,x1)\"");
  auto*       spread = app.add_subcommand("spread", "spread of a family of subsets");
  std::string family;
  input(spread);
  spread->add_option("--family", family, "members separated by ';', elements by ',' (default: type 2 minimal sets)");
  auto*       growth = app.add_subcommand("growth", "d-table of minimum generating set sizes");
  std::size_t n_min = 1, n_max = 4, gcap = 65536;
  input(growth);
  growth->add_option("--n-min", n_min);
  growth->add_option("--n-max", n_max)->check(CLI::Range(1, 16));
  growth->add_option("--cap", gcap, "skip powers with more elements")->check(CLI::PositiveNumber);
  auto* profile = app.add_subcommand("profile", "conditions (i) to (vi)");
  bool  audit   = false;
  input(profile);
  profile->add_flag("--audit", audit, "also check the spread growth bound on the witness");
  auto*       catalog_cmd = app.add_subcommand("catalog", "list, show or export algebras");
  std::string action      = "list";
  catalog_cmd->add_option("action", action, "list, show or export")->check(CLI::IsMember({"list", "show", "export"}));
  catalog_cmd->add_option("input", o.input, "builtin name or document path");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*catalog_cmd) {
      if (action == "list") {
        Report r("catalog", nullptr);
        auto   list = json::array();
        for (auto const& name : catalog::names()) {
          list.push_back(algebra_summary(catalog::builtin(name)));
        }
        r.data("algebras", list);
        return finish(r, o);
      }
      if (o.input.empty()) {
        throw InputError("catalog " + action + " needs an algebra");
      }
      auto alg = resolve_input(o.input);
      if (action == "export") {
        emit(write_algebra(alg) + "\n", o);
        return 0;
      }
      Report r("catalog", &alg);
      r.data("algebra", algebra_summary(alg));
      r.data("document", algebra_to_json(alg));
      return finish(r, o);
    }

    auto alg = resolve_input(o.input);
    if (*congruences) {
      return finish(cmd_congruences(alg, o), o);
    }
    if (*commutators) {
      return finish(cmd_commutators(alg, o), o);
    }
    if (*tct) {
      return finish(cmd_tct(alg, o, cover, with_sets), o);
    }
    if (*maltsev) {
      return finish(cmd_maltsev(alg, o, maltsev_term), o);
    }
    if (*cube) {
      return finish(cmd_cube(alg, o, tmpl, rows, cols, consts), o);
    }
    if (*trd) {
      return finish(cmd_trdigraph(alg, o, poly), o);
    }
    if (*spread) {
      return finish(cmd_spread(alg, o, family), o);
    }
    if (*growth) {
      return finish(cmd_growth(alg, o, n_min, n_max, gcap), o);
    }
    if (*profile) {
      return finish(cmd_profile(alg, o, audit), o);
    }
  } catch (InputError const& e) {
    std::cerr << "ualg: input error: " << e.what() << "\n";
    return 2;
  } catch (std::invalid_argument const& e) {
    std::cerr << "ualg: input error: " << e.what() << "\n";
    return 2;
  } catch (InvariantViolation const& e) {
    std::cerr << "ualg: invariant violation: " << e.what() << "\n";
    return 4;
  } catch (std::exception const& e) {
    std::cerr << "ualg: internal error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
