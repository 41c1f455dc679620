#include "depth2/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>

#include "depth2/bialgebroid.hpp"
#include "depth2/galois.hpp"

namespace depth2 {

using nlohmann::json;

namespace {

using Table = std::vector<std::vector<std::size_t>>;

Scalar scalar_from_json(Field f, const json& j) {
  if (j.is_number_integer()) return Scalar(f, j.get<long>());
  if (!j.is_string()) throw InputError("scalar must be an integer or a \"num/den\" string");
  try {
    return Scalar::parse(f, j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("bad scalar: ") + e.what());
  } catch (const std::domain_error& e) {
    throw InputError(std::string("bad scalar: ") + e.what());
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("bad value for ") + what);
  }
}

// Permutations of {0,1,2} in lexicographic order, composed right to left.
Table s3_table() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  Table t(6, std::vector<std::size_t>(6));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = std::find(perms.begin(), perms.end(), c) - perms.begin();
    }
  return t;
}

using Cube = std::vector<std::vector<std::vector<Scalar>>>;

Cube zero_cube(Field f, std::size_t n) {
  return Cube(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(f))));
}

FiniteAlgebra matrix_algebra_2(Field f) {
  Cube c = zero_cube(f, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int l = 0; l < 2; ++l) c[2 * i + j][2 * j + l][2 * i + l] = Scalar::one(f);
  return FiniteAlgebra::make(f, c, {Scalar::one(f), Scalar::zero(f), Scalar::zero(f), Scalar::one(f)});
}

// F[x]/(x^2 - d), basis 1, x.
FiniteAlgebra quadratic(Field f, long d) {
  Cube c = zero_cube(f, 2);
  c[0][0][0] = c[0][1][1] = c[1][0][1] = Scalar::one(f);
  c[1][1][0] = Scalar(f, d);
  return FiniteAlgebra::make(f, c, {Scalar::one(f), Scalar::zero(f)});
}

ExtensionSpec group_spec(std::string name, Field f, Table table, std::vector<std::size_t> sub) {
  ExtensionSpec s;
  s.name = std::move(name);
  s.field = f;
  s.kind = ExtensionSpec::Kind::Group;
  s.table = std::move(table);
  s.subgroup = std::move(sub);
  s.normal = subgroup_extension(f, s.table, s.subgroup).normal;
  return s;
}

ExtensionSpec algebra_spec(std::string name, const Extension& ext) {
  ExtensionSpec s;
  s.name = std::move(name);
  s.field = ext.field();
  s.kind = ExtensionSpec::Kind::Algebra;
  s.A = ext.A;
  s.B = ext.B;
  s.iota = ext.iota;
  return s;
}

}  // namespace

// ---- fields and algebras ---------------------------------------------------------

json field_to_json(Field f) {
  if (f.is_rational()) return "Q";
  return json{{"Fp", f.characteristic()}};
}

Field field_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "Q") return Field::rationals();
  if (j.is_object() && j.contains("Fp") && j.at("Fp").is_number_unsigned()) {
    try {
      return Field::prime(j.at("Fp").get<std::uint32_t>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("field must be \"Q\" or {\"Fp\": p}");
}

Field parse_field(const std::string& text) {
  if (text == "Q") return Field::rationals();
  std::string digits;
  if (text.rfind("Fp:", 0) == 0) digits = text.substr(3);
  else if (text.rfind("F_", 0) == 0) digits = text.substr(2);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 10) {
    throw InputError("field must be Q or Fp:p, got \"" + text + "\"");
  }
  try {
    return Field::prime(static_cast<std::uint32_t>(std::stoull(digits)));
  } catch (const std::exception& e) {
    throw InputError("field " + text + ": " + e.what());
  }
}

json algebra_to_json(const FiniteAlgebra& a) {
  const std::size_t n = a.dim();
  json structure = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      json coeffs = json::array();
      for (std::size_t k = 0; k < n; ++k) coeffs.push_back(a.structure_constant(i, j, k).to_string());
      row.push_back(std::move(coeffs));
    }
    structure.push_back(std::move(row));
  }
  json unit = json::array();
  for (std::size_t k = 0; k < n; ++k) unit.push_back(a.unit()[k].to_string());
  return {{"field", field_to_json(a.field())}, {"dim", n}, {"structure", structure}, {"unit", unit}};
}

FiniteAlgebra algebra_from_json(const json& j, std::optional<Field> field) {
  const Field f = field ? *field : field_from_json(member(j, "field"));
  const auto n = get_as<std::size_t>(member(j, "dim"), "dim");
  const json& st = member(j, "structure");
  const json& un = member(j, "unit");
  if (n == 0) throw InputError("dim must be positive");
  if (!st.is_array() || st.size() != n) throw InputError("structure must have dim rows");
  if (!un.is_array() || un.size() != n) throw InputError("unit must have dim entries");
  Cube c = zero_cube(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!st[i].is_array() || st[i].size() != n) throw InputError("structure row has wrong length");
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      const json& coeffs = st[i][k2];
      if (!coeffs.is_array() || coeffs.size() != n) throw InputError("structure coefficients have wrong length");
      for (std::size_t k = 0; k < n; ++k) c[i][k2][k] = scalar_from_json(f, coeffs[k]);
    }
  }
  std::vector<Scalar> unit;
  for (const auto& u : un) unit.push_back(scalar_from_json(f, u));
  return FiniteAlgebra::make(f, c, unit);
}

// ---- extensions ----------------------------------------------------------------------

Extension ExtensionSpec::extension() const {
  if (kind == Kind::Group) return subgroup_extension(field, table, subgroup).ext;
  return Extension::make(B, A, iota);
}

std::optional<GroupPair> ExtensionSpec::group_pair() const {
  if (kind != Kind::Group) return std::nullopt;
  return subgroup_extension(field, table, subgroup);
}

ExtensionSpec ExtensionSpec::over(Field f) const {
  if (kind == Kind::Group) {
    ExtensionSpec s = *this;
    s.field = f;
    return s;
  }
  return extension_from_json(extension_to_json(*this), f);
}

bool operator==(const ExtensionSpec& a, const ExtensionSpec& b) {
  if (a.name != b.name || a.field != b.field || a.kind != b.kind) return false;
  if (a.kind == ExtensionSpec::Kind::Group) {
    return a.table == b.table && a.subgroup == b.subgroup && a.normal == b.normal;
  }
  return *a.A == *b.A && *a.B == *b.B && a.iota == b.iota;
}

json extension_to_json(const ExtensionSpec& spec) {
  json j{{"name", spec.name}, {"field", field_to_json(spec.field)}};
  if (spec.kind == ExtensionSpec::Kind::Group) {
    j["kind"] = "group";
    j["group"] = {{"table", spec.table}, {"subgroup", spec.subgroup}, {"normal", spec.normal}};
    return j;
  }
  j["kind"] = "algebra";
  j["A"] = algebra_to_json(*spec.A);
  j["B"] = algebra_to_json(*spec.B);
  json iota = json::array();
  for (std::size_t r = 0; r < spec.iota.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < spec.iota.cols(); ++c) row.push_back(spec.iota.at(r, c).to_string());
    iota.push_back(std::move(row));
  }
  j["iota"] = std::move(iota);
  return j;
}

ExtensionSpec extension_from_json(const json& j, std::optional<Field> field) {
  if (!j.is_object()) throw InputError("extension must be a JSON object");
  ExtensionSpec s;
  s.name = j.contains("name") ? get_as<std::string>(j.at("name"), "name") : "";
  s.field = field ? *field : field_from_json(member(j, "field"));
  const auto kind = get_as<std::string>(member(j, "kind"), "kind");
  if (kind == "group") {
    s.kind = ExtensionSpec::Kind::Group;
    const json& g = member(j, "group");
    s.table = get_as<Table>(member(g, "table"), "group.table");
    s.subgroup = get_as<std::vector<std::size_t>>(member(g, "subgroup"), "group.subgroup");
    const GroupPair gp = subgroup_extension(s.field, s.table, s.subgroup);
    s.subgroup = gp.subgroup;
    s.normal = gp.normal;
    if (g.contains("normal") && get_as<bool>(g.at("normal"), "group.normal") != gp.normal) {
      throw InputError(gp.normal ? "subgroup is normal but declared not normal"
                                 : "subgroup is not normal but declared normal");
    }
    return s;
  }
  if (kind != "algebra") throw InputError("kind must be \"group\" or \"algebra\"");
  s.kind = ExtensionSpec::Kind::Algebra;
  s.A = share(algebra_from_json(member(j, "A"), s.field));
  s.B = share(algebra_from_json(member(j, "B"), s.field));
  if (!field) {
    if (field_from_json(member(member(j, "A"), "field")) != s.field ||
        field_from_json(member(member(j, "B"), "field")) != s.field) {
      throw InputError("A, B and the extension must share one field");
    }
  }
  const json& io = member(j, "iota");
  if (!io.is_array() || io.size() != s.A->dim()) throw InputError("iota must have dim A rows");
  s.iota = Matrix(s.field, s.A->dim(), s.B->dim());
  for (std::size_t r = 0; r < s.A->dim(); ++r) {
    if (!io[r].is_array() || io[r].size() != s.B->dim()) throw InputError("iota rows must have dim B entries");
    for (std::size_t c = 0; c < s.B->dim(); ++c) s.iota.set(r, c, scalar_from_json(s.field, io[r][c]));
  }
  Extension::make(s.B, s.A, s.iota);
  return s;
}

ExtensionSpec read_extension(const std::string& path, std::optional<Field> field) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return extension_from_json(j, field);
}

// ---- catalog -----------------------------------------------------------------------------

std::vector<std::string> catalog_names() {
  return {"trivial-M2",       "field-sqrt2",       "s3-a3",       "s3-transposition",
          "c2-over-k",        "m2-over-k",         "s3-a3-f5",    "s3-transposition-f5",
          "field-sqrt2-f5",   "c2-over-k-f3",      "c2-over-k-f2"};
}

ExtensionSpec gen_example(const std::string& name) {
  const Field Q = Field::rationals();
  auto base = name;
  Field f = Q;
  if (const auto dash = name.rfind("-f"); dash != std::string::npos && dash + 2 < name.size() &&
                                          std::isdigit(static_cast<unsigned char>(name[dash + 2]))) {
    base = name.substr(0, dash);
    f = Field::prime(static_cast<std::uint32_t>(std::stoul(name.substr(dash + 2))));
  }
  const auto names = catalog_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw InputError("unknown example \"" + name + "\"");
  }
  if (base == "s3-a3") return group_spec(name, f, s3_table(), {0, 3, 4});
  if (base == "s3-transposition") return group_spec(name, f, s3_table(), {0, 2});
  if (base == "c2-over-k") return group_spec(name, f, {{0, 1}, {1, 0}}, {0});
  if (base == "trivial-M2") return algebra_spec(name, Extension::trivial(share(matrix_algebra_2(f))));
  if (base == "m2-over-k") return algebra_spec(name, Extension::over_ground(share(matrix_algebra_2(f))));
  return algebra_spec(name, Extension::over_ground(share(quadratic(f, 2))));
}

// ---- reports -------------------------------------------------------------------------------

namespace {

json main_theorem_json(const MainTheoremReport& m, const CorollaryReport& c) {
  json conditions = json::array();
  if (m.comodule) {
    const auto& r = *m.comodule;
    const std::pair<const char*, bool> items[] = {
        {"algebra_map", r.algebra_map}, {"counital", r.counital},   {"coassociative", r.coassociative},
        {"unital", r.unital},           {"r_balanced", r.r_balanced}, {"multiplicative", r.multiplicative}};
    for (const auto& [label, pass] : items) conditions.push_back({{"condition", label}, {"pass", pass}});
  }
  return {{"right_d2", m.right_d2},
          {"left_d2", m.left_d2},
          {"balanced", m.balanced},
          {"galois_bijective", m.galois_bijective},
          {"coinvariants_equal_B", m.coinvariants_equal_B},
          {"comodule_conditions", conditions},
          {"main_theorem_consistent", m.consistent},
          {"corollary_consistent", c.consistent}};
}

}  // namespace

json analyze_report(const ExtensionSpec& spec) {
  const Extension ext = spec.extension();
  const auto ctx = BialgebroidContext::make(ext);
  json j{{"name", spec.name},
         {"field", ext.field().name()},
         {"kind", spec.kind == ExtensionSpec::Kind::Group ? "group" : "algebra"},
         {"dim_A", ext.dim_A()},
         {"dim_B", ext.dim_B()},
         {"dim_R", ctx->dim_R()},
         {"dim_square", ctx->square.dim()},
         {"dim_T", ctx->dim_T()},
         {"A_commutative", ext.A->is_commutative()},
         {"right_d2", right_d2_quasibase(ctx->square).has_value()},
         {"left_d2", left_d2_quasibase(ctx->square).has_value()},
         {"h_separable", h_separability_test(ext).has_value()}};
  if (spec.kind == ExtensionSpec::Kind::Group) j["normal"] = spec.normal;
  return j;
}

json d2_report(const Extension& ext) {
  const auto ts = tensor_square(ext);
  json j;
  const std::pair<const char*, std::optional<QuasibaseSet>> sides[] = {
      {"right", right_d2_quasibase(ts)}, {"left", left_d2_quasibase(ts)}};
  for (const auto& [side, qb] : sides) {
    const std::string s = side;
    j[s + "_d2"] = qb.has_value();
    j[s + "_quasibase_size"] = qb ? qb->size() : 0;
    j[s + "_quasibase_verified"] = qb && verify_quasibase(ts, *qb).ok;
  }
  j["dim_square"] = ts.dim();
  return j;
}

json bialgebroid_report(const Extension& ext) {
  const auto bgd = build_canonical(ext);
  if (!bgd) {
    return {{"built", false}, {"reason", "T (x)_R T -> (A (x)_B A (x)_B A)^B is not bijective"}};
  }
  const auto audit = axiom_audit(*bgd);
  json axioms = json::object();
  for (const auto& r : audit.results) {
    json entry{{"pass", r.pass}};
    if (!r.witness.empty()) entry["witness"] = r.witness;
    axioms[r.name] = entry;
  }
  return {{"built", true},
          {"dim_T", bgd->dim_T()},
          {"dim_R", bgd->base->dim()},
          {"all_pass", audit.all_pass()},
          {"axioms", axioms}};
}

json galois_report(const Extension& ext) {
  const auto ctx = BialgebroidContext::make(ext);
  return main_theorem_json(main_theorem_audit(ctx), d2_iff_corollary_audit(*ctx));
}

json audit_report(const Extension& ext) {
  const auto ctx = BialgebroidContext::make(ext);
  const auto m = main_theorem_audit(ctx);
  const auto c = d2_iff_corollary_audit(*ctx);
  json j = main_theorem_json(m, c);
  j["lhs"] = m.lhs;
  j["rhs"] = m.rhs;
  j["bialgebroid_built"] = m.bialgebroid_built;
  j["axioms_pass"] = m.axioms_pass;
  j["rt_projective"] = m.rt_projective;
  j["notes"] = m.notes;
  if (m.comodule && !m.comodule->witness.empty()) j["comodule_witness"] = m.comodule->witness;
  j["corollary"] = {{"ice_bijective", c.ice_bijective},
                    {"rt_projective", c.rt_projective},
                    {"corollary_verdict", c.corollary_verdict},
                    {"quasibase_verdict", c.quasibase_verdict}};
  return j;
}

}  // namespace depth2
