#pragma once

// Algebra documents: one JSON object with integer tables.
//
//   {"element_names":["0","1"],"name":"z2_group",
//    "operations":[{"arity":2,"symbol":"+","table":[0,1,1,0]}],
//    "schema_version":1,"size":2}
//
// The canonical form is the compact dump with sorted keys. element_names is
// optional and omitted when absent.

#include <string>

#include <json.hpp>

#include "algebra.hpp"

namespace ualg {

  inline constexpr int kAlgebraSchemaVersion = 1;

  nlohmann::json algebra_to_json(FiniteAlgebra const& alg);

  //! Canonical document bytes.
  std::string write_algebra(FiniteAlgebra const& alg);

  FiniteAlgebra algebra_from_json(nlohmann::json const& j);

  //! Parses a document; errors name the offending operation and index, or
  //! the byte offset for syntax errors.
  FiniteAlgebra parse_algebra(std::string const& bytes);

  //! Canonical form of any well-formed document, without validating it.
  std::string canonical_document(std::string const& bytes);

  FiniteAlgebra read_algebra_file(std::string const& path);

  //! FNV-1a over the canonical document, as 16 hex digits.
  std::string table_checksum(FiniteAlgebra const& alg);

}  // namespace ualg
