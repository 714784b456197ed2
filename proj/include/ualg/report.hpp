#pragma once

// Analysis reports. The structured form is JSON with sorted keys and a fixed
// field set {schema_version, algebra, command, parameters, budgets, verdicts,
// witnesses, data, flags}; the human form is rendered from it and never
// computed separately. Nothing time-dependent is recorded.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "document.hpp"
#include "profile.hpp"

namespace ualg {

  inline constexpr int kReportSchemaVersion = 1;

  class Report {
   public:
    using json = nlohmann::json;

    //! A valid empty report.
    Report();
    Report(std::string command, FiniteAlgebra const* alg);

    void parameter(std::string const& key, json value) { _doc["parameters"][key] = std::move(value); }

    void budgets(std::size_t elements, std::size_t rounds, std::optional<double> seconds) {
      _doc["budgets"] = {{"elements", elements},
                         {"rounds", rounds},
                         {"seconds", seconds ? json(*seconds) : json(nullptr)}};
    }

    //! Stores a witness and returns its id (w1, w2, ...).
    std::string witness(std::string const& kind, std::string const& summary, json detail = nullptr);

    void verdict(std::string const& id, std::string const& statement, Verdict v,
                 std::vector<std::string> evidence = {}, bool empirical = false,
                 std::string const& scope = "");

    void data(std::string const& key, json value) { _doc["data"][key] = std::move(value); }

    void flag(std::string const& key, json value) {
      _doc["flags"][key] = std::move(value);
      refresh_flags();
    }

    [[nodiscard]] bool any_unknown() const { return _doc["flags"]["unknown_verdicts"].get<std::size_t>() > 0; }

    [[nodiscard]] json const& document() const { return _doc; }

    [[nodiscard]] std::string structured() const { return _doc.dump(2) + "\n"; }

    [[nodiscard]] std::string human() const;

   private:
    json _doc;

    void        refresh_flags();
    static void render(std::string& out, json const& v, std::string const& indent);
    static void section(std::string& out, char const* title, json const& v);
  };

  nlohmann::json growth_json(std::vector<GrowthEntry> const& table);

  //! The report for condition_profile: one verdict per condition, each with
  //! its own evidence id, plus the d-table and the fit.
  Report profile_report(FiniteAlgebra const& alg, ConditionProfile const& p, ProfileCaps const& caps);

}  // namespace ualg
