#include "sdops/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace sdops::io {

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field \"") + what + "\" has the wrong type");
  }
}

template <class T>
T get(const json& j, const char* key) {
  return get_as<T>(member(j, key), key);
}

std::vector<std::uint64_t> u64_list(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_array()) throw InputError(std::string("field \"") + key + "\" must be an array");
  std::vector<std::uint64_t> out;
  out.reserve(v.size());
  for (auto& e : v) {
    if (!e.is_number_integer() || (!e.is_number_unsigned() && e.get<std::int64_t>() < 0))
      throw InputError(std::string("field \"") + key + "\" must hold nonnegative integers");
    out.push_back(e.get<std::uint64_t>());
  }
  return out;
}

std::vector<Element> element_list(const json& j, const char* key) {
  std::vector<Element> out;
  for (auto v : u64_list(j, key)) {
    if (v > std::numeric_limits<Element>::max()) throw InputError("entry too large");
    out.push_back(static_cast<Element>(v));
  }
  return out;
}

json big_to_json(const BigInt& b) {
  if (b >= std::numeric_limits<std::int64_t>::min() && b <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(b);
  return b.str();
}

void require_schema(const json& j) {
  if (j.is_object() && j.contains("schema") && j["schema"] != schema_version)
    throw InputError("unsupported schema version " + j["schema"].dump());
}

}  // namespace

json to_json(const OpTable& op) {
  json j = {{"size", op.size()},
            {"arity", op.arity()},
            {"table", std::vector<Element>(op.table().begin(), op.table().end())}};
  if (!op.provenance().is_null()) j["provenance"] = op.provenance();
  return j;
}

OpTable op_from_json(const json& j) {
  require_schema(j);
  auto size = get<std::size_t>(j, "size");
  auto arity = get<std::size_t>(j, "arity");
  auto table = element_list(j, "table");
  json prov = j.contains("provenance") ? j["provenance"] : json(nullptr);
  return OpTable(size, arity, std::move(table), std::move(prov));
}

json to_json(const FiniteGroup& g) {
  return {{"size", g.size()}, {"cayley", std::vector<Element>(g.cayley().begin(), g.cayley().end())}};
}

FiniteGroup group_from_json(const json& j) {
  require_schema(j);
  return FiniteGroup(get<std::size_t>(j, "size"), element_list(j, "cayley"));
}

json to_json(const AbGroup& a) { return a.factors(); }

AbGroup abgroup_from_json(const json& j) {
  if (j.is_number_integer()) return AbGroup::cyclic(get_as<std::uint64_t>(j, "coeff"));
  if (!j.is_array()) throw InputError("a coefficient group is a list of cyclic orders");
  return AbGroup(get_as<std::vector<std::uint64_t>>(j, "coeff"));
}

json to_json(const Cochain& c) {
  json values = json::array();
  for (std::uint64_t t = 0; t < c.tuples(); ++t) values.push_back(c.value(t));
  return {{"size", c.size()}, {"nargs", c.nargs()}, {"coeff", to_json(c.coeff())}, {"values", values}};
}

Cochain cochain_from_json(const json& j) {
  require_schema(j);
  auto nargs = get<std::size_t>(j, "nargs");
  AbGroup coeff = abgroup_from_json(member(j, "coeff"));
  const json& vals = member(j, "values");
  if (!vals.is_array()) throw InputError("field \"values\" must be an array");
  std::size_t size = 0;
  if (j.contains("size")) {
    size = get<std::size_t>(j, "size");
  } else {
    while (checked_power(size, nargs) < vals.size()) ++size;
  }
  Cochain c(size, nargs, coeff);
  if (vals.size() != c.tuples())
    throw InputError("cochain has " + std::to_string(vals.size()) + " values, expected " + std::to_string(c.tuples()));
  for (std::uint64_t t = 0; t < c.tuples(); ++t) {
    const json& v = vals[t];
    std::vector<std::int64_t> raw;
    if (v.is_number_integer() && coeff.rank() == 1) {
      raw.push_back(v.get<std::int64_t>());
    } else {
      raw = get_as<std::vector<std::int64_t>>(v, "values");
    }
    if (raw.size() != coeff.rank()) throw InputError("cochain value of the wrong rank");
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (raw[i] < 0 || static_cast<std::uint64_t>(raw[i]) >= coeff.factors()[i])
        throw InputError("cochain value out of range");
    c.set_value(t, coeff.reduce(raw));
  }
  return c;
}

json to_json(const Ses& s) {
  return {{"h", to_json(s.h)},          {"e", to_json(s.e)},
          {"a", to_json(s.a)},          {"inclusion", s.inclusion},
          {"projection", s.projection}, {"section", s.section}};
}

Ses ses_from_json(const json& j) {
  require_schema(j);
  Ses s{abgroup_from_json(member(j, "h")), abgroup_from_json(member(j, "e")), abgroup_from_json(member(j, "a")),
        u64_list(j, "inclusion"), u64_list(j, "projection"), u64_list(j, "section")};
  validate_ses(s);
  return s;
}

json to_json(const IntMatrix& m) {
  json e = json::array();
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (IntMatrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != 0) e.push_back({it.row(), it.col(), it.value()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

IntMatrix int_matrix_from_json(const json& j) {
  auto rows = get<Eigen::Index>(j, "rows"), cols = get<Eigen::Index>(j, "cols");
  if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  std::vector<Eigen::Triplet<std::int64_t>> t;
  for (auto& e : member(j, "entries")) {
    auto v = get_as<std::vector<std::int64_t>>(e, "entries");
    if (v.size() != 3 || v[0] < 0 || v[0] >= rows || v[1] < 0 || v[1] >= cols)
      throw InputError("bad matrix entry");
    t.emplace_back(v[0], v[1], v[2]);
  }
  IntMatrix m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

json to_json(const HomologyResult& h) {
  json tor = json::array();
  for (auto& b : h.torsion) tor.push_back(big_to_json(b));
  json j = {{"betti", h.betti}, {"torsion", tor}, {"integral", h.integral}};
  if (!h.integral) j["finite"] = h.finite;
  return j;
}

json to_json(const CocycleSpace& s) {
  json gens = json::array();
  for (auto& g : s.generators) {
    json slots = json::array();
    for (auto& c : g) slots.push_back(to_json(c));
    gens.push_back(slots);
  }
  json j = {{"coeff", to_json(s.coeff)}, {"orders", s.orders}, {"generators", gens}};
  if (auto n = s.count()) j["count"] = *n;
  return j;
}

json to_json(const CheckResult& r) {
  json j = {{"holds", r.holds}};
  if (r.counterexample) {
    auto& c = *r.counterexample;
    j["counterexample"] = {{"witness", c.witness}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"law", c.law}};
  }
  return j;
}

json to_json(const linear::Field& f) { return f.characteristic(); }

linear::Field field_from_json(const json& j) {
  auto p = get_as<std::uint64_t>(j, "field");
  return p == 0 ? linear::Field::rationals() : linear::Field::prime(p);
}

json scalar_to_json(const linear::Scalar& s) {
  if (boost::multiprecision::denominator(s) == 1) return big_to_json(boost::multiprecision::numerator(s));
  return s.str();
}

linear::Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return linear::Scalar(j.get<std::int64_t>());
  if (!j.is_string()) throw InputError("matrix entries are integers or \"a/b\" strings");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    BigInt n(s.substr(0, slash));
    BigInt d = slash == std::string::npos ? BigInt(1) : BigInt(s.substr(slash + 1));
    if (d == 0) throw InputError("zero denominator");
    return linear::Scalar(n, d);
  } catch (const std::runtime_error&) {
    throw InputError("bad scalar \"" + s + "\"");
  }
}

json to_json(const linear::LinMap& m) {
  json rows = json::array();
  for (auto& r : m.dense()) {
    json row = json::array();
    for (auto& e : r) row.push_back(scalar_to_json(e));
    rows.push_back(row);
  }
  return {{"field", to_json(m.field())}, {"src", m.src()}, {"dst", m.dst()}, {"matrix", rows}};
}

linear::LinMap linmap_from_json(const json& j) {
  require_schema(j);
  linear::Field f = field_from_json(member(j, "field"));
  auto src = get<linear::Shape>(j, "src"), dst = get<linear::Shape>(j, "dst");
  std::vector<std::vector<linear::Scalar>> rows;
  for (auto& r : member(j, "matrix")) {
    if (!r.is_array()) throw InputError("matrix rows must be arrays");
    std::vector<linear::Scalar> row;
    for (auto& e : r) row.push_back(scalar_from_json(e));
    rows.push_back(std::move(row));
  }
  return linear::LinMap::from_dense(f, src, dst, rows);
}

json to_json(const linear::ComonoidObject& c) {
  return {{"field", to_json(c.field)}, {"dim", c.dim}, {"delta", to_json(c.delta)}, {"counit", to_json(c.counit)}};
}

linear::ComonoidObject comonoid_from_json(const json& j) {
  require_schema(j);
  return linear::make_comonoid(field_from_json(member(j, "field")), get<std::size_t>(j, "dim"),
                               linmap_from_json(member(j, "delta")), linmap_from_json(member(j, "counit")));
}

json to_json(const linear::SDObject& s) {
  return {{"comonoid", to_json(s.comonoid)}, {"arity", s.arity}, {"W", to_json(s.W)}};
}

linear::SDObject sd_object_from_json(const json& j, Verify verify) {
  require_schema(j);
  auto obj = linear::make_sd_object(comonoid_from_json(member(j, "comonoid")), linmap_from_json(member(j, "W")),
                                    verify);
  if (j.contains("arity") && get<std::size_t>(j, "arity") != obj.arity)
    throw InputError("arity does not match the operation's shape");
  return obj;
}

json to_json(const linear::HopfAlgebraObject& h) {
  return {{"field", to_json(h.field)},     {"dim", h.dim},
          {"unit", to_json(h.unit)},       {"mult", to_json(h.mult)},
          {"delta", to_json(h.delta)},     {"counit", to_json(h.counit)},
          {"antipode", to_json(h.antipode)}};
}

linear::HopfAlgebraObject hopf_from_json(const json& j) {
  require_schema(j);
  return linear::make_hopf(field_from_json(member(j, "field")), get<std::size_t>(j, "dim"),
                           linmap_from_json(member(j, "unit")), linmap_from_json(member(j, "mult")),
                           linmap_from_json(member(j, "delta")), linmap_from_json(member(j, "counit")),
                           linmap_from_json(member(j, "antipode")));
}

json to_json(const linear::LieAlgebraObject& l) {
  return {{"field", to_json(l.field)}, {"dim", l.dim}, {"bracket", to_json(l.bracket)}};
}

linear::LieAlgebraObject lie_from_json(const json& j) {
  require_schema(j);
  return linear::make_lie(field_from_json(member(j, "field")), get<std::size_t>(j, "dim"),
                          linmap_from_json(member(j, "bracket")));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace sdops::io
