#pragma once

// JSON formats for every artifact the library reads or writes.
//
//   OpTable     {"size": N, "arity": k, "table": [...], "provenance": ...}
//   FiniteGroup {"size": N, "cayley": [...]}
//   Cochain     {"size": N, "nargs": k, "coeff": [d...], "values": [[r...], ...]}
//   Ses         {"h": [...], "e": [...], "a": [...], "inclusion": [...],
//                "projection": [...], "section": [...]}
//   IntMatrix   {"rows": r, "cols": c, "entries": [[i, j, v], ...]}
//   LinMap      {"field": p, "src": [...], "dst": [...], "matrix": [[...], ...]}
//
// A field of 0 is Q; rational entries that are not integers are written as
// strings "a/b".  Readers validate everything and throw InputError.

#include <string>

#include <json.hpp>

#include "sdops/cochain.hpp"
#include "sdops/cocycles.hpp"
#include "sdops/core.hpp"
#include "sdops/homology.hpp"
#include "sdops/linear.hpp"

namespace sdops::io {

using nlohmann::json;

inline constexpr int schema_version = 1;

json to_json(const OpTable& op);
OpTable op_from_json(const json& j);

json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& j);

json to_json(const AbGroup& a);
AbGroup abgroup_from_json(const json& j);

json to_json(const Cochain& c);
/// "size" may be omitted when the table length determines it.
Cochain cochain_from_json(const json& j);

json to_json(const Ses& s);
Ses ses_from_json(const json& j);

json to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const json& j);

json to_json(const HomologyResult& h);
json to_json(const CocycleSpace& s);
json to_json(const CheckResult& r);

json to_json(const linear::Field& f);
linear::Field field_from_json(const json& j);
json scalar_to_json(const linear::Scalar& s);
linear::Scalar scalar_from_json(const json& j);
json to_json(const linear::LinMap& m);
linear::LinMap linmap_from_json(const json& j);
json to_json(const linear::ComonoidObject& c);
linear::ComonoidObject comonoid_from_json(const json& j);
json to_json(const linear::SDObject& s);
linear::SDObject sd_object_from_json(const json& j, Verify verify = Verify::checked);
json to_json(const linear::HopfAlgebraObject& h);
linear::HopfAlgebraObject hopf_from_json(const json& j);
json to_json(const linear::LieAlgebraObject& l);
linear::LieAlgebraObject lie_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace sdops::io
