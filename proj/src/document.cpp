#include "ualg/document.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ualg {

  namespace {
    using nlohmann::json;

    std::uint64_t as_index(json const& v, std::string const& where) {
      if (!v.is_number_integer()) {
        throw InputError(where + ": expected a non-negative integer, got " + v.dump());
      }
      if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
      }
      auto s = v.get<std::int64_t>();
      if (s < 0) {
        throw InputError(where + ": expected a non-negative integer, got " + v.dump());
      }
      return static_cast<std::uint64_t>(s);
    }

    void only_keys(json const& obj, std::initializer_list<char const*> keys,
                          std::string const& where) {
      for (auto const& [k, v] : obj.items()) {
        bool ok = false;
        for (auto const* key : keys) {
          ok |= k == key;
        }
        if (!ok) {
          throw InputError(where + ": unknown key '" + k + "'");
        }
      }
    }

    json const& need(json const& obj, char const* key, std::string const& where) {
      auto it = obj.find(key);
      if (it == obj.end()) {
        throw InputError(where + ": missing key '" + key + "'");
      }
      return *it;
    }
  }  // namespace

  nlohmann::json algebra_to_json(FiniteAlgebra const& alg) {
    nlohmann::json j;
    j["schema_version"] = kAlgebraSchemaVersion;
    j["name"]           = alg.name();
    j["size"]           = alg.size();
    if (!alg.element_names().empty()) {
      j["element_names"] = alg.element_names();
    }
    auto ops = nlohmann::json::array();
    for (auto const& o : alg.operations()) {
      nlohmann::json t = nlohmann::json::array();
      for (Elem e : o.table) {
        t.push_back(static_cast<unsigned>(e));
      }
      ops.push_back({{"symbol", o.symbol}, {"arity", o.arity}, {"table", std::move(t)}});
    }
    j["operations"] = std::move(ops);
    return j;
  }

  std::string write_algebra(FiniteAlgebra const& alg) { return algebra_to_json(alg).dump(); }

  FiniteAlgebra algebra_from_json(nlohmann::json const& j) {
    if (!j.is_object()) {
      throw InputError("document: expected an object at top level");
    }
    only_keys(j, {"schema_version", "name", "size", "element_names", "operations"}, "document");
    auto version = as_index(need(j, "schema_version", "document"), "schema_version");
    if (version != kAlgebraSchemaVersion) {
      throw InputError("schema_version: unsupported version " + std::to_string(version));
    }
    auto const& jn = need(j, "name", "document");
    if (!jn.is_string()) {
      throw InputError("name: expected a string");
    }
    auto size = as_index(need(j, "size", "document"), "size");
    if (size == 0 || size > kDefaultUniverseCap) {
      throw InputError("size: " + std::to_string(size) + " is outside 1.."
                       + std::to_string(kDefaultUniverseCap));
    }
    std::vector<std::string> names;
    if (auto it = j.find("element_names"); it != j.end()) {
      if (!it->is_array()) {
        throw InputError("element_names: expected an array");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string()) {
          throw InputError("element_names[" + std::to_string(i) + "]: expected a string");
        }
        names.push_back((*it)[i].get<std::string>());
      }
    }
    auto const& jops = need(j, "operations", "document");
    if (!jops.is_array()) {
      throw InputError("operations: expected an array");
    }
    std::vector<Operation> ops;
    for (std::size_t k = 0; k < jops.size(); ++k) {
      auto const& jo    = jops[k];
      std::string where = "operations[" + std::to_string(k) + "]";
      if (!jo.is_object()) {
        throw InputError(where + ": expected an object");
      }
      only_keys(jo, {"symbol", "arity", "table"}, where);
      auto const& js = need(jo, "symbol", where);
      if (!js.is_string()) {
        throw InputError(where + ".symbol: expected a string");
      }
      where += " ('" + js.get<std::string>() + "')";
      auto arity = as_index(need(jo, "arity", where), where + ".arity");
      auto const& jt = need(jo, "table", where);
      if (!jt.is_array()) {
        throw InputError(where + ".table: expected an array");
      }
      std::uint64_t expect = 1;
      for (std::uint64_t i = 0; i < arity; ++i) {
        expect *= size;
        if (expect > (std::uint64_t{1} << 32)) {
          throw InputError(where + ": table for arity " + std::to_string(arity) + " is too large");
        }
      }
      if (jt.size() != expect) {
        throw InputError(where + ".table: has " + std::to_string(jt.size()) + " entries, expected "
                         + std::to_string(expect));
      }
      Operation o{js.get<std::string>(), static_cast<std::size_t>(arity), {}};
      o.table.reserve(jt.size());
      for (std::size_t i = 0; i < jt.size(); ++i) {
        auto cell = "table[" + std::to_string(i) + "]";
        auto v    = as_index(jt[i], where + "." + cell);
        if (v >= size) {
          throw InputError(where + "." + cell + ": entry " + std::to_string(v)
                           + " is out of range for size " + std::to_string(size));
        }
        o.table.push_back(static_cast<Elem>(v));
      }
      ops.push_back(std::move(o));
    }
    return FiniteAlgebra(jn.get<std::string>(), static_cast<std::size_t>(size), std::move(ops),
                         std::move(names));
  }

  FiniteAlgebra parse_algebra(std::string const& bytes) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(bytes);
    } catch (nlohmann::json::parse_error const& e) {
      throw InputError("malformed document at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return algebra_from_json(j);
  }

  std::string canonical_document(std::string const& bytes) {
    try {
      return nlohmann::json::parse(bytes).dump();
    } catch (nlohmann::json::parse_error const& e) {
      throw InputError("malformed document at byte " + std::to_string(e.byte) + ": " + e.what());
    }
  }

  FiniteAlgebra read_algebra_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw InputError("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      return parse_algebra(ss.str());
    } catch (InputError const& e) {
      throw InputError(path + ": " + e.what());
    }
  }

  std::string table_checksum(FiniteAlgebra const& alg) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : write_algebra(alg)) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

}  // namespace ualg
