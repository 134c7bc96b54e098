#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sdops/constructions.hpp"
#include "sdops/io.hpp"

using namespace sdops;
using namespace sdops::io;
namespace lin = sdops::linear;

TEST_CASE("operation tables round trip with provenance") {
  OpTable t = affine_op(8, 3, {3, 2});
  json j = to_json(t);
  CHECK(j["size"] == 8);
  CHECK(j["arity"] == 3);
  CHECK(j["table"].size() == 512);
  OpTable back = op_from_json(j);
  CHECK(back.same_table(t));
  CHECK(back.provenance() == t.provenance());
  CHECK_FALSE(t.provenance().is_null());
  // the text form parses to the same table
  CHECK(op_from_json(json::parse(j.dump())).same_table(t));
}

TEST_CASE("malformed operation tables") {
  json good = to_json(dihedral_quandle(3));
  auto broken = [&](auto edit) {
    json j = good;
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(op_from_json(json::array()), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j.erase("table"); })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["table"][0] = 3; })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["table"][0] = -1; })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["table"][0] = "a"; })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["table"].erase(0); })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["size"] = "3"; })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["arity"] = 1; })), InputError);
  CHECK_THROWS_AS(op_from_json(broken([](json& j) { j["schema"] = 99; })), InputError);
  CHECK_NOTHROW(op_from_json(broken([](json& j) { j["schema"] = schema_version; })));
}

TEST_CASE("groups and coefficient groups") {
  FiniteGroup s3 = symmetric_group(3);
  FiniteGroup back = group_from_json(to_json(s3));
  CHECK(back.size() == 6);
  CHECK(std::equal(back.cayley().begin(), back.cayley().end(), s3.cayley().begin()));
  json bad = to_json(s3);
  bad["cayley"][1] = 0;  // breaks the Latin square
  CHECK_THROWS_AS(group_from_json(bad), InputError);
  AbGroup a({2, 4});
  CHECK(abgroup_from_json(to_json(a)) == a);
  CHECK_THROWS_AS(abgroup_from_json(json{{"x", 1}}), InputError);
  CHECK_THROWS_AS(abgroup_from_json(json::array({0})), InputError);
}

TEST_CASE("cochains of rank two") {
  AbGroup a({2, 3});
  Cochain c = tabulate_cochain(3, 2, a, [](const auto& v) {
    return std::vector<std::int64_t>{v[0] + v[1], 2 * static_cast<std::int64_t>(v[0]) + v[1]};
  });
  json j = to_json(c);
  CHECK(j["values"].size() == 9);
  CHECK(j["values"][5] == json::array({1, 1}));
  CHECK(cochain_from_json(j) == c);
  json no_size = j;
  no_size.erase("size");
  CHECK(cochain_from_json(no_size) == c);
  json bad = j;
  bad["values"][0] = json::array({1});
  CHECK_THROWS_AS(cochain_from_json(bad), InputError);
  bad = j;
  bad["values"][0] = json::array({2, 0});
  CHECK_THROWS_AS(cochain_from_json(bad), InputError);
  bad = j;
  bad["values"].erase(0);
  CHECK_THROWS_AS(cochain_from_json(bad), InputError);
}

TEST_CASE("short exact sequences") {
  Ses s = cyclic_ses(3, 3);
  Ses back = ses_from_json(to_json(s));
  CHECK(back.e == s.e);
  CHECK(back.inclusion == s.inclusion);
  CHECK(back.projection == s.projection);
  CHECK(back.section == s.section);
  json bad = to_json(s);
  bad["section"][0] = 1;
  CHECK_THROWS_AS(ses_from_json(bad), InputError);
}

TEST_CASE("integer matrices") {
  IntMatrix m(3, 2);
  std::vector<Eigen::Triplet<std::int64_t>> t{{0, 0, -4}, {2, 1, 7}};
  m.setFromTriplets(t.begin(), t.end());
  IntMatrix back = int_matrix_from_json(to_json(m));
  CHECK(matrices_equal(back, m));
  CHECK_THROWS_AS(int_matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"entries", {{0, 5, 1}}}}), InputError);
  CHECK_THROWS_AS(int_matrix_from_json(json{{"rows", -1}, {"cols", 2}, {"entries", json::array()}}), InputError);
}

TEST_CASE("linear maps over Q and GF(p)") {
  lin::Field q = lin::Field::rationals();
  lin::LinMap m = lin::LinMap::from_dense(q, {2}, {2, 1},
                                          {{lin::Scalar(1, 2), lin::Scalar(-3)}, {lin::Scalar(0), lin::Scalar(5, 7)}});
  json j = to_json(m);
  CHECK(j["field"] == 0);
  CHECK(j["matrix"][0][0] == "1/2");
  CHECK(j["matrix"][0][1] == -3);
  CHECK(linmap_from_json(j) == m);
  CHECK(scalar_from_json(json("-4/6")) == lin::Scalar(-2, 3));
  CHECK_THROWS_AS(scalar_from_json(json("1/0")), InputError);
  CHECK_THROWS_AS(scalar_from_json(json("x")), InputError);
  CHECK_THROWS_AS(scalar_from_json(json(1.5)), InputError);

  lin::Field f5 = lin::Field::prime(5);
  CHECK(field_from_json(to_json(f5)) == f5);
  CHECK_THROWS_AS(field_from_json(json(6)), InputError);
  json bad = j;
  bad["matrix"][0].erase(0);
  CHECK_THROWS_AS(linmap_from_json(bad), InputError);
  bad = j;
  bad["dst"] = json::array({3});
  CHECK_THROWS_AS(linmap_from_json(bad), InputError);
}

TEST_CASE("structured linear objects") {
  auto h = lin::group_algebra_hopf(cyclic_group(2), lin::Field::prime(3));
  lin::SDObject heap = lin::hopf_heap(h);
  lin::SDObject back = sd_object_from_json(to_json(heap));
  CHECK(back.arity == 3);
  CHECK(back.W == heap.W);
  CHECK(back.comonoid.delta == heap.comonoid.delta);

  json broken = to_json(heap);
  broken["W"] = to_json(heap.W.with_entry(0, 0, lin::Scalar(2)));
  CHECK_THROWS_AS(sd_object_from_json(broken), HypothesisError);
  CHECK_NOTHROW(sd_object_from_json(broken, Verify::unchecked));
  broken["arity"] = 2;
  CHECK_THROWS_AS(sd_object_from_json(broken, Verify::unchecked), InputError);

  lin::HopfAlgebraObject hb = hopf_from_json(to_json(h));
  CHECK(hb.antipode == h.antipode);
  CHECK(hb.mult == h.mult);
  lin::LieAlgebraObject l = lin::nonabelian_lie2(lin::Field::prime(5));
  CHECK(lie_from_json(to_json(l)).bracket == l.bracket);
  lin::ComonoidObject c = comonoid_from_json(to_json(h.comonoid()));
  CHECK(c.counit == h.counit);
}

TEST_CASE("files") {
  auto dir = std::filesystem::temp_directory_path() / "sdops_io_test";
  std::filesystem::create_directories(dir);
  std::string path = (dir / "t.json").string();
  write_json_file(path, to_json(dihedral_quandle(5)));
  CHECK(op_from_json(read_json_file(path)).same_table(dihedral_quandle(5)));
  {
    std::ofstream out(dir / "bad.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file((dir / "bad.json").string()), InputError);
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("result serialization carries the schema version") {
  CheckResult ok;
  json j = to_json(ok);
  CHECK(j["holds"] == true);
  CheckResult bad{false, Counterexample{{0, 1, 2}, 1, 2, 0}};
  json jb = to_json(bad);
  CHECK(jb["holds"] == false);
  CHECK(jb["counterexample"]["witness"] == json::array({0, 1, 2}));
  HomologyResult r;
  r.betti = 1;
  r.torsion = {3};
  json jh = to_json(r);
  CHECK(jh["betti"] == 1);
  CHECK(jh["torsion"] == json::array({3}));
  CHECK(jh.contains("schema") == j.contains("schema"));
}
