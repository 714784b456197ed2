#include "ualg/report.hpp"

namespace ualg {

  Report::Report() {
    _doc["schema_version"] = kReportSchemaVersion;
    _doc["algebra"]        = nullptr;
    _doc["command"]        = "";
    _doc["parameters"]     = json::object();
    _doc["budgets"]        = json::object();
    _doc["verdicts"]       = json::array();
    _doc["witnesses"]      = json::array();
    _doc["data"]           = json::object();
    _doc["flags"]          = json::object();
    refresh_flags();
  }

  Report::Report(std::string command, FiniteAlgebra const* alg) : Report() {
    _doc["command"] = std::move(command);
    if (alg) {
      _doc["algebra"] = {{"name", alg->name()}, {"size", alg->size()}, {"checksum", table_checksum(*alg)}};
    }
  }

  std::string Report::witness(std::string const& kind, std::string const& summary, json detail) {
    auto& ws = _doc["witnesses"];
    auto  id = "w" + std::to_string(ws.size() + 1);
    json  w{{"id", id}, {"kind", kind}, {"summary", summary}};
    if (!detail.is_null()) {
      w["detail"] = std::move(detail);
    }
    ws.push_back(std::move(w));
    return id;
  }

  void Report::verdict(std::string const& id, std::string const& statement, Verdict v,
                       std::vector<std::string> evidence, bool empirical, std::string const& scope) {
    json e{{"id", id},
           {"statement", statement},
           {"verdict", to_string(v)},
           {"evidence", evidence},
           {"empirical", empirical}};
    if (!scope.empty()) {
      e["scope"] = scope;
    }
    _doc["verdicts"].push_back(std::move(e));
    refresh_flags();
  }

  std::string Report::human() const {
    std::string out;
    auto const& a = _doc["algebra"];
    if (a.is_null()) {
      out += "algebra: none\n";
    } else {
      out += "algebra: " + a["name"].get<std::string>() + " (" + std::to_string(a["size"].get<std::size_t>())
             + " elements, checksum " + a["checksum"].get<std::string>() + ")\n";
    }
    if (!_doc["command"].get<std::string>().empty()) {
      out += "command: " + _doc["command"].get<std::string>() + "\n";
    }
    section(out, "parameters", _doc["parameters"]);
    if (!_doc["budgets"].empty()) {
      auto const& b = _doc["budgets"];
      out += "budgets: elements " + b["elements"].dump() + ", rounds " + b["rounds"].dump()
             + ", seconds " + (b["seconds"].is_null() ? std::string("none") : b["seconds"].dump())
             + "\n";
    }
    if (!_doc["verdicts"].empty()) {
      out += "verdicts:\n";
      for (auto const& v : _doc["verdicts"]) {
        out += "  (" + v["id"].get<std::string>() + ") " + v["statement"].get<std::string>() + ": "
               + v["verdict"].get<std::string>();
        if (v["empirical"].get<bool>()) {
          out += " (empirical)";
        }
        if (v.contains("scope")) {
          out += " [" + v["scope"].get<std::string>() + "]";
        }
        for (auto const& e : v["evidence"]) {
          out += " " + e.get<std::string>();
        }
        out += "\n";
      }
    }
    if (!_doc["witnesses"].empty()) {
      out += "witnesses:\n";
      for (auto const& w : _doc["witnesses"]) {
        out += "  " + w["id"].get<std::string>() + " " + w["kind"].get<std::string>() + ": "
               + w["summary"].get<std::string>() + "\n";
      }
    }
    section(out, "data", _doc["data"]);
    section(out, "flags", _doc["flags"]);
    return out;
  }

  void Report::refresh_flags() {
    std::size_t              unknown = 0;
    std::vector<std::string> empirical;
    for (auto const& v : _doc["verdicts"]) {
      unknown += v["verdict"] == "unknown";
      if (v["empirical"].get<bool>()) {
        empirical.push_back(v["id"].get<std::string>());
      }
    }
    _doc["flags"]["unknown_verdicts"] = unknown;
    _doc["flags"]["empirical"]        = empirical;
  }

  void Report::render(std::string& out, json const& v, std::string const& indent) {
    if (v.is_object()) {
      for (auto const& [k, x] : v.items()) {
        if (x.is_object() || (x.is_array() && !x.empty() && x.front().is_object())) {
          out += indent + k + ":\n";
          render(out, x, indent + "  ");
        } else {
          out += indent + k + ": " + (x.is_string() ? x.get<std::string>() : x.dump()) + "\n";
        }
      }
    } else if (v.is_array()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_object()) {
          bool flat = true;
          for (auto const& [k, x] : v[i].items()) {
            flat &= !x.is_object() && !(x.is_array() && !x.empty() && x.front().is_object());
          }
          if (flat) {
            std::string line;
            for (auto const& [k, x] : v[i].items()) {
              line += (line.empty() ? "" : ", ") + k + " " + (x.is_string() ? x.get<std::string>() : x.dump());
            }
            out += indent + "- " + line + "\n";
            continue;
          }
          out += indent + "- " + std::to_string(i) + "\n";
          render(out, v[i], indent + "  ");
        } else {
          out += indent + "- " + v[i].dump() + "\n";
        }
      }
    } else {
      out += indent + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  }

  void Report::section(std::string& out, char const* title, json const& v) {
    if (v.empty()) {
      return;
    }
    out += std::string(title) + ":\n";
    render(out, v, "  ");
  }

  nlohmann::json growth_json(std::vector<GrowthEntry> const& table) {
    auto out = nlohmann::json::array();
    for (auto const& g : table) {
      nlohmann::json e{{"n", g.n}, {"lower", g.lower}, {"upper", g.upper}, {"exact", g.exact()}};
      if (g.budget_hit) {
        e["budget_hit"] = true;
      }
      out.push_back(std::move(e));
    }
    return out;
  }

  Report profile_report(FiniteAlgebra const& alg, ConditionProfile const& p, ProfileCaps const& caps) {
    Report r("profile", &alg);
    r.parameter("arity_cap", caps.arity_cap);
    r.parameter("power_cap", caps.power_cap);
    r.parameter("growth_n_max", caps.growth_n_max);
    r.parameter("growth_cap", caps.growth_cap);
    r.parameter("cube_battery", {{"rows", caps.cube_rows},
                                 {"columns", caps.cube_cols},
                                 {"constants", caps.cube_constants}});
    r.parameter("seconds_per_check", caps.seconds_per_check);
    static char const* const kinds[] = {"maltsev", "pointed_cube", "spread", "growth_fit", "growth_fit",
                                        "strongly_abelian_quotient"};
    for (std::size_t i = 0; i < p.conditions.size(); ++i) {
      auto const& c  = p.conditions[i];
      auto        id = r.witness(kinds[i], c.evidence);
      r.verdict(c.id, c.statement, c.verdict, {id}, c.empirical, c.scope);
    }
    r.data("d_table", growth_json(p.d_table));
    r.data("fit", {{"points", p.fit.points},
                   {"linear_slope", p.fit.linear_slope},
                   {"linear_rms", p.fit.linear_rms},
                   {"exp_rate", p.fit.exp_rate},
                   {"exp_rms", p.fit.exp_rms},
                   {"thresholds",
                    {{"linear_rms", GrowthFit::kLinearRms},
                     {"exp_rate", GrowthFit::kExpRate},
                     {"min_points", GrowthFit::kMinPoints}}}});
    r.data("implication_violations", implication_violations(p));
    return r;
  }

}  // namespace ualg
