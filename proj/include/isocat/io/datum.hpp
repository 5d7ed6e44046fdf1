#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <tomlplusplus/toml.hpp>

#include "isocat/weil/weil.hpp"

namespace isocat {

/// Where the stabilizer group St comes from.
///   enumerate:  the full stabilizer of the class of the pair in Aut_N(S)
///   symplectic: Sp(N, Alt sigma), requires trivial Gamma action on the form
///   orthogonal: O(N, q) with q(x) = sigma(x, x)
///   semireal:   lifts of Sp(N, Alt sigma) to Aut_N(S)
///   generators: the group generated by explicit integer matrices on S
enum class StSource { enumerate, symplectic, orthogonal, semireal, generators };

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct DatumExpectations {
  std::optional<std::size_t> st_order{};
  std::optional<std::size_t> group_order{};
  std::optional<bool> matrices{};
  std::optional<std::size_t> matrix_dim{};
  std::optional<std::string> certificate{};  // "difference" or "inconclusive"

  friend bool operator==(const DatumExpectations&, const DatumExpectations&) = default;
};

/// A torsor datum in file form: N = prod Z/orders, K = Q(zeta_modulus) with Gamma generated by
/// the given units, and sigma a bicharacter given on generators.
struct DatumSpec {
  std::string name;
  std::string description;
  std::vector<std::int64_t> orders;
  int modulus = 2;
  std::vector<std::int64_t> galois;
  std::vector<std::vector<QZ>> sigma;
  StSource source = StSource::enumerate;
  StRestriction restriction = StRestriction::full;
  std::vector<IntMatrix> generators;
  DatumExpectations expect;

  friend bool operator==(const DatumSpec&, const DatumSpec&) = default;
};

inline std::string to_string(StSource s) {
  switch (s) {
    case StSource::enumerate: return "enumerate";
    case StSource::symplectic: return "symplectic";
    case StSource::orthogonal: return "orthogonal";
    case StSource::semireal: return "semireal";
    case StSource::generators: return "generators";
  }
  return "";
}

inline std::string to_string(StRestriction r) {
  switch (r) {
    case StRestriction::full: return "full";
    case StRestriction::sylow2: return "sylow2";
    case StRestriction::omega: return "omega";
  }
  return "";
}

inline StSource parse_st_source(std::string_view s) {
  for (auto v : {StSource::enumerate, StSource::symplectic, StSource::orthogonal, StSource::semireal, StSource::generators})
    if (to_string(v) == s) return v;
  throw InputError("unknown stabilizer source '" + std::string(s) + "'");
}

inline StRestriction parse_restriction(std::string_view s) {
  for (auto v : {StRestriction::full, StRestriction::sylow2, StRestriction::omega})
    if (to_string(v) == s) return v;
  throw InputError("unknown stabilizer restriction '" + std::string(s) + "'");
}

namespace detail {

inline const toml::table& sub_table(const toml::table& t, std::string_view key, bool required = true) {
  static const toml::table empty;
  if (const auto* s = t.get_as<toml::table>(key)) return *s;
  if (required) throw InputError("missing table [" + std::string(key) + "]");
  return empty;
}

inline std::int64_t int_value(const toml::node& n, std::string_view what) {
  if (auto v = n.value<std::int64_t>()) return *v;
  throw InputError(std::string(what) + ": expected an integer");
}

inline std::vector<std::int64_t> int_array(const toml::node* n, std::string_view what) {
  std::vector<std::int64_t> out;
  if (!n) return out;
  const auto* a = n->as_array();
  if (!a) throw InputError(std::string(what) + ": expected an array");
  for (const auto& e : *a) out.push_back(int_value(e, what));
  return out;
}

inline IntMatrix int_matrix(const toml::node& n, std::string_view what) {
  const auto* a = n.as_array();
  if (!a) throw InputError(std::string(what) + ": expected an array of rows");
  IntMatrix m;
  for (const auto& row : *a) m.push_back(int_array(&row, what));
  return m;
}

inline std::vector<IntMatrix> int_matrices(const toml::node* n, std::string_view what) {
  std::vector<IntMatrix> out;
  if (!n) return out;
  const auto* a = n->as_array();
  if (!a) throw InputError(std::string(what) + ": expected an array of matrices");
  for (const auto& m : *a) out.push_back(int_matrix(m, what));
  return out;
}

inline QZ qz_value(const toml::node& n) {
  if (auto s = n.value<std::string>()) {
    try {
      return QZ::parse(*s);
    } catch (const MathError& e) {
      throw InputError(std::string("sigma entry '") + *s + "': " + e.what());
    }
  }
  if (auto i = n.value<std::int64_t>()) return QZ(*i, 1);
  throw InputError("sigma entries must be strings \"a/b\"");
}

inline std::optional<std::size_t> size_value(const toml::table& t, std::string_view key) {
  if (const auto* n = t.get(key)) {
    const auto v = int_value(*n, key);
    if (v < 0) throw InputError(std::string(key) + " must be non-negative");
    return static_cast<std::size_t>(v);
  }
  return std::nullopt;
}

inline toml::array to_toml_array(const std::vector<std::int64_t>& v) {
  toml::array a;
  for (auto x : v) a.push_back(x);
  return a;
}

inline toml::array to_toml_array(const IntMatrix& m) {
  toml::array a;
  for (const auto& row : m) a.push_back(to_toml_array(row));
  return a;
}

}  // namespace detail

inline DatumSpec parse_datum(const toml::table& t) {
  DatumSpec d;
  d.name = t["name"].value_or(std::string{});
  d.description = t["description"].value_or(std::string{});

  const auto& module = detail::sub_table(t, "module");
  d.orders = detail::int_array(module.get("orders"), "module.orders");
  if (d.orders.empty()) throw InputError("module.orders must be a non-empty array");
  for (auto o : d.orders)
    if (o < 2) throw InputError("module.orders entries must be at least 2");

  const auto& field = detail::sub_table(t, "field");
  const auto* m = field.get("modulus");
  if (!m) throw InputError("missing field.modulus");
  const auto mod = detail::int_value(*m, "field.modulus");
  if (mod < 1 || mod > 100000) throw InputError("field.modulus out of range");
  d.modulus = static_cast<int>(mod);
  d.galois = detail::int_array(field.get("galois"), "field.galois");

  const auto& sigma = detail::sub_table(t, "sigma");
  const auto* rows = sigma.get_as<toml::array>("matrix");
  if (!rows) throw InputError("missing sigma.matrix");
  for (const auto& row : *rows) {
    const auto* r = row.as_array();
    if (!r || r->size() != d.orders.size()) throw InputError("sigma.matrix must be square of size rank(N)");
    std::vector<QZ> out;
    for (const auto& e : *r) out.push_back(detail::qz_value(e));
    d.sigma.push_back(std::move(out));
  }
  if (d.sigma.size() != d.orders.size()) throw InputError("sigma.matrix must be square of size rank(N)");

  const auto& st = detail::sub_table(t, "stabilizer", false);
  d.source = parse_st_source(st["source"].value_or(std::string("enumerate")));
  d.restriction = parse_restriction(st["restrict"].value_or(std::string("full")));
  d.generators = detail::int_matrices(st.get("generators"), "stabilizer.generators");
  if (d.source == StSource::generators && d.generators.empty())
    throw InputError("stabilizer.source = \"generators\" needs stabilizer.generators");

  const auto& ex = detail::sub_table(t, "expect", false);
  d.expect.st_order = detail::size_value(ex, "st_order");
  d.expect.group_order = detail::size_value(ex, "group_order");
  d.expect.matrix_dim = detail::size_value(ex, "matrix_dim");
  if (auto b = ex["matrices"].value<bool>()) d.expect.matrices = *b;
  if (auto c = ex["certificate"].value<std::string>()) {
    if (*c != "difference" && *c != "inconclusive") throw InputError("expect.certificate must be difference or inconclusive");
    d.expect.certificate = *c;
  }
  return d;
}

inline DatumSpec parse_datum(std::string_view text, std::string_view source_name = "datum") {
  try {
    return parse_datum(toml::parse(text, source_name));
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source_name << ": " << e.description() << " at line " << e.source().begin.line;
    throw InputError(os.str());
  }
}

inline DatumSpec load_datum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read datum file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_datum(buf.str(), path.string());
}

inline toml::table to_toml(const DatumSpec& d) {
  toml::table t;
  t.insert("name", d.name);
  t.insert("description", d.description);
  t.insert("module", toml::table{{"orders", detail::to_toml_array(d.orders)}});
  t.insert("field", toml::table{{"modulus", d.modulus}, {"galois", detail::to_toml_array(d.galois)}});
  toml::array rows;
  for (const auto& row : d.sigma) {
    toml::array r;
    for (const auto& x : row) r.push_back(x.str());
    rows.push_back(std::move(r));
  }
  t.insert("sigma", toml::table{{"matrix", std::move(rows)}});
  toml::table st{{"source", to_string(d.source)}, {"restrict", to_string(d.restriction)}};
  if (!d.generators.empty()) {
    toml::array gens;
    for (const auto& g : d.generators) gens.push_back(detail::to_toml_array(g));
    st.insert("generators", std::move(gens));
  }
  t.insert("stabilizer", std::move(st));
  toml::table ex;
  if (d.expect.st_order) ex.insert("st_order", static_cast<std::int64_t>(*d.expect.st_order));
  if (d.expect.group_order) ex.insert("group_order", static_cast<std::int64_t>(*d.expect.group_order));
  if (d.expect.matrices) ex.insert("matrices", *d.expect.matrices);
  if (d.expect.matrix_dim) ex.insert("matrix_dim", static_cast<std::int64_t>(*d.expect.matrix_dim));
  if (d.expect.certificate) ex.insert("certificate", *d.expect.certificate);
  if (!ex.empty()) t.insert("expect", std::move(ex));
  return t;
}

inline std::string to_toml_string(const DatumSpec& d) {
  std::ostringstream os;
  os << to_toml(d) << "\n";
  return os.str();
}

/// Datum fields from an existing pair; sigma must be a bicharacter.
inline DatumSpec datum_from_pair(const RelCochain2& pair, StSource source, StRestriction r = StRestriction::full) {
  if (!is_bicharacter(pair.sigma)) throw MathError("datum_from_pair: sigma is not a bicharacter");
  DatumSpec d;
  const auto& st = pair.setting;
  d.orders = st.n().orders();
  d.modulus = st.field().modulus();
  d.galois = st.field().galois_generators();
  d.sigma = generator_matrix(pair.sigma);
  d.source = source;
  d.restriction = r;
  return d;
}

inline GaloisSetting datum_setting(const DatumSpec& d) {
  return GaloisSetting(FiniteAbelianGroup(d.orders), CyclotomicField(d.modulus, d.galois));
}

inline RelCochain2 datum_pair(const DatumSpec& d) {
  const auto st = datum_setting(d);
  return torsor_pair(st, bicharacter_from_matrix(st.n(), d.sigma));
}

namespace detail {

inline FiniteGroup restrict_on_s(const FiniteGroup& g, StRestriction r) {
  if (r == StRestriction::omega) throw InputError("restriction 'omega' needs an orthogonal stabilizer");
  return r == StRestriction::sylow2 ? sylow2(g) : g;
}

}  // namespace detail

/// St as a group of automorphisms of S, checked to stabilize the class of the pair.
inline FiniteGroup datum_stabilizer(const DatumSpec& d, const RelCochain2& pair, std::size_t budget = kDefaultBudget) {
  const auto& st = pair.setting;
  const auto& n = st.n();
  switch (d.source) {
    case StSource::enumerate:
      return detail::restrict_on_s(stabilizer_class(pair, budget), d.restriction);
    case StSource::symplectic: {
      const SymplecticModule sm{n, alt(pair.sigma)};
      require_symplectic(sm);
      if (d.restriction == StRestriction::omega) throw InputError("restriction 'omega' needs an orthogonal stabilizer");
      return verified_stabilizer_subgroup(pair, n, detail::restrict_st(n, symplectic_group(sm, budget), d.restriction));
    }
    case StSource::orthogonal: {
      const QuadraticModule qm{n, trace_of(pair.sigma)};
      if (auto v = quadratic_violation(qm)) throw MathError("orthogonal stabilizer: " + *v);
      return verified_stabilizer_subgroup(pair, n, detail::restrict_st(n, orthogonal_group(qm, budget), d.restriction));
    }
    case StSource::semireal:
      return detail::restrict_on_s(semireal_stabilizer(pair, budget), d.restriction);
    case StSource::generators: {
      std::vector<AbelianAutomorphism> gens;
      for (const auto& m : d.generators) {
        auto g = matrix_automorphism(st.s(), m);
        if (!is_automorphism(st.s(), g)) throw MathError("stabilizer generator is not an automorphism of S");
        gens.push_back(std::move(g));
      }
      auto g = automorphism_group(st.s(), gens, budget);
      for (FiniteGroup::Index i = 0; i < g.order(); ++i)
        if (!stabilizes(pair, decode_automorphism(st.s(), g.key(i))))
          throw MathError("stabilizer generators do not stabilize the class of the pair");
      return detail::restrict_on_s(g, d.restriction);
    }
  }
  throw InputError("unknown stabilizer source");
}

/// The subgroup of st given by explicit matrices on S; fails unless they are elements of st
/// closed under multiplication.
inline FiniteGroup restrict_to_elements(const FiniteAbelianGroup& s, const FiniteGroup& st, const std::vector<IntMatrix>& mats) {
  std::vector<FiniteGroup::Index> idx;
  for (const auto& m : mats) {
    const auto key = encode(s, matrix_automorphism(s, m));
    if (!st.contains(key)) throw MathError("restriction element is not in St");
    idx.push_back(st.index_of(key));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (auto a : idx)
    for (auto b : idx)
      if (!std::binary_search(idx.begin(), idx.end(), st.mul(a, b)))
        throw MathError("restriction elements are not closed under multiplication, so they do not form a subgroup");
  std::vector<AbelianAutomorphism> elems;
  for (auto i : idx) elems.push_back(decode_automorphism(s, st.key(i)));
  return automorphism_group_from_list(s, elems);
}

inline std::vector<IntMatrix> load_restriction_file(const std::filesystem::path& path) {
  try {
    const auto t = toml::parse_file(path.string());
    auto mats = detail::int_matrices(t.get("elements"), "elements");
    if (mats.empty()) throw InputError(path.string() + ": needs a non-empty 'elements' array of matrices");
    return mats;
  } catch (const toml::parse_error& e) {
    throw InputError(path.string() + ": " + std::string(e.description()));
  }
}

}  // namespace isocat
