#pragma once
// JSON descriptions of extensions, the example catalog, and report documents.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "depth2/algebra.hpp"

namespace depth2 {

/// Malformed or inconsistent input document.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An extension as read from a file: either a subgroup of a finite group
/// (kind "group") or a pair of algebras joined by iota (kind "algebra").
struct ExtensionSpec {
  enum class Kind { Group, Algebra };

  std::string name;
  Field field;
  Kind kind = Kind::Algebra;
  // kind == Group
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> subgroup;
  bool normal = false;
  // kind == Algebra
  AlgebraPtr A;
  AlgebraPtr B;
  Matrix iota;

  /// Builds the extension; throws AlgebraError on invalid algebraic data.
  Extension extension() const;
  /// Present for kind == Group.
  std::optional<GroupPair> group_pair() const;
  /// The same data read over another field (rationals reduced mod p).
  ExtensionSpec over(Field f) const;

  friend bool operator==(const ExtensionSpec& a, const ExtensionSpec& b);
};

nlohmann::json field_to_json(Field f);
Field field_from_json(const nlohmann::json& j);
/// "Q", "Fp:p" or "F_p".
Field parse_field(const std::string& text);

nlohmann::json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const nlohmann::json& j, std::optional<Field> field = {});

nlohmann::json extension_to_json(const ExtensionSpec& spec);
/// Throws InputError on schema violations and AlgebraError on invalid data.
ExtensionSpec extension_from_json(const nlohmann::json& j, std::optional<Field> field = {});
ExtensionSpec read_extension(const std::string& path, std::optional<Field> field = {});

// ---- catalog ---------------------------------------------------------------

std::vector<std::string> catalog_names();
/// Throws InputError for a name outside the catalog.
ExtensionSpec gen_example(const std::string& name);

// ---- reports -----------------------------------------------------------------
// Every report is a JSON object with sorted keys, so identical inputs give
// byte-identical dumps.

nlohmann::json analyze_report(const ExtensionSpec& spec);
nlohmann::json d2_report(const Extension& ext);
/// {"built", "dim_T", "dim_R", "all_pass", "axioms": {name: {pass, witness?}}}
nlohmann::json bialgebroid_report(const Extension& ext);
/// {right_d2, left_d2, balanced, galois_bijective, coinvariants_equal_B,
///  comodule_conditions, main_theorem_consistent, corollary_consistent}
nlohmann::json galois_report(const Extension& ext);
/// The Galois report plus both sides of the equivalence and all sub-results.
nlohmann::json audit_report(const Extension& ext);

}  // namespace depth2
