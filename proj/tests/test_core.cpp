#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdops/constructions.hpp"
#include "sdops/core.hpp"
#include "support.hpp"

using namespace sdops;
using namespace testing_support;

namespace {

// Re-evaluate both sides of right distributivity at a witness.
std::pair<Element, Element> sd_sides_at(const OpTable& w, const Tuple& t) {
  std::size_t k = w.arity();
  Tuple a(t.begin(), t.begin() + k), b(k), c(k);
  b[0] = w(a);
  for (std::size_t j = 1; j < k; ++j) b[j] = t[k - 1 + j];
  Element lhs = w(b);
  for (std::size_t j = 0; j < k; ++j) {
    c[0] = t[j];
    for (std::size_t m = 1; m < k; ++m) c[m] = t[k - 1 + m];
    a[j] = w(c);
  }
  return {lhs, w(a)};
}

OpTable z8_ternary() { return affine_op(8, 3, {3, 2}); }

}  // namespace

TEST_CASE("tuple encoding round trip, first argument most significant") {
  Tuple t{1, 0, 2};
  CHECK(encode_tuple(t, 3) == 1 * 9 + 0 * 3 + 2);
  CHECK(decode_tuple(11, 3, 3) == t);
  for (std::uint64_t i = 0; i < 125; ++i) CHECK(encode_tuple(decode_tuple(i, 5, 3), 5) == i);
  CHECK_THROWS(checked_power(1ull << 32, 3));
}

TEST_CASE("table construction validates shape and range") {
  OpTable d3 = make_op_table(3, 2, {0, 2, 1, 2, 1, 0, 1, 0, 2});
  CHECK(d3.same_table(dihedral_quandle(3)));
  CHECK_NOTHROW(make_op_table(1, 3, {0}));
  CHECK_THROWS_AS(make_op_table(2, 2, {0, 1, 1}), InputError);
  CHECK_THROWS_AS(make_op_table(2, 2, {0, 1, 1, 2}), InputError);
  CHECK_THROWS_AS(make_op_table(2, 0, {0}), InputError);
}

TEST_CASE("checked evaluation") {
  CHECK(evaluate(z8_ternary(), Tuple{1, 2, 3}) == 3);
  CHECK(evaluate(heap_op(cyclic_group(3)), Tuple{1, 2, 0}) == 2);
  OpTable one = make_op_table(1, 4, {0});
  CHECK(evaluate(one, Tuple{0, 0, 0, 0}) == 0);
  CHECK_THROWS_AS(evaluate(one, Tuple{0, 0}), InputError);
  CHECK_THROWS_AS(evaluate(z8_ternary(), Tuple{1, 8, 0}), InputError);
}

TEST_CASE("Z8 affine ternary rack") {
  OpTable t = z8_ternary();
  CHECK(is_nary_distributive(t).holds);
  CHECK(is_rack(t));
  CHECK(is_quandle(t));
  CHECK(oracle_distributive(t));
}

TEST_CASE("x+y on Z3 is not distributive; first witness is (0,0,1)") {
  OpTable plus = table_of(3, 2, [](const Ints& a) { return a[0] + a[1]; });
  auto r = is_nary_distributive(plus);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.counterexample);
  CHECK(r.counterexample->witness == Tuple{0, 0, 1});
  CHECK(r.counterexample->lhs == 1);
  CHECK(r.counterexample->rhs == 2);
}

TEST_CASE("projections and singletons pass everything") {
  for (std::size_t n : {1, 2, 3})
    for (std::size_t k : {2, 3, 4}) {
      if (checked_power(n, 2 * k - 1) > 100000) continue;
      OpTable p = projection_op(n, k);
      CHECK(is_quandle(p));
    }
}

TEST_CASE("rack and quandle examples") {
  CHECK(is_quandle(dihedral_quandle(3)));
  OpTable const2y = table_of(4, 2, [](const Ints& a) { return 2 * a[1]; });
  CHECK_FALSE(is_rack(const2y));
  OpTable shift = table_of(2, 2, [](const Ints& a) { return a[0] + 1; });
  CHECK(is_rack(shift));
  CHECK_FALSE(is_quandle(shift));
}

TEST_CASE("mutual distributivity examples") {
  auto [p0, p1] = product_mutual_pair(dihedral_quandle(3), dihedral_quandle(3));
  CHECK(are_mutually_distributive(p0, p1).holds);
  OpTable d5 = dihedral_quandle(5);
  CHECK(are_mutually_distributive(power_op(d5, 1), power_op(d5, 2)).holds);
  CHECK(are_mutually_distributive(affine_op(5, 2, {2}), affine_op(5, 3, {2, 1})).holds);
  CHECK_THROWS_AS(are_mutually_distributive(dihedral_quandle(3), dihedral_quandle(5)), InputError);
}

TEST_CASE("a failing exchange law reports a witness that re-evaluates") {
  OpTable a = dihedral_quandle(3);
  OpTable b = table_of(3, 2, [](const Ints& t) { return t[0] + 1; });
  auto r = are_mutually_distributive(a, b);
  REQUIRE_FALSE(r.holds);
  const auto& w = r.counterexample->witness;
  REQUIRE(w.size() == 3);
  Element lhs, rhs;
  if (r.counterexample->law == 0) {
    lhs = b({a({w[0], w[1]}), w[2]});
    rhs = a({b({w[0], w[2]}), b({w[1], w[2]})});
  } else {
    lhs = a({b({w[0], w[1]}), w[2]});
    rhs = b({a({w[0], w[2]}), a({w[1], w[2]})});
  }
  CHECK(lhs == r.counterexample->lhs);
  CHECK(rhs == r.counterexample->rhs);
  CHECK(lhs != rhs);
}

TEST_CASE("compatibility of ternary operations") {
  CHECK(are_compatible_ternary(z8_ternary(), affine_op(8, 3, {-1, 2})).holds);
  // u = u' = 2 here, so every affine condition vanishes mod 4
  CHECK(affine_compatibility_conditions(4, 1, 2, 3, 0));
  CHECK(are_compatible_ternary(affine_op(4, 3, {1, 2}), affine_op(4, 3, {3, 0})).holds);
  // u = 3, t' - t = 2: u(t' - t) = 2 mod 4
  CHECK_FALSE(affine_compatibility_conditions(4, 1, 1, 3, 0));
  CHECK_FALSE(are_compatible_ternary(affine_op(4, 3, {1, 1}), affine_op(4, 3, {3, 0})).holds);
  CHECK_THROWS_AS(are_compatible_ternary(dihedral_quandle(3), heap_op(cyclic_group(3))), InputError);
}

TEST_CASE("property: distributivity agrees with an independent oracle on random tables") {
  std::mt19937_64 rng(7);
  int agree_true = 0;
  for (int i = 0; i < 300; ++i) {
    std::size_t n = 1 + i % 3;
    OpTable w = random_table(rng, n, 2);
    bool lib = is_nary_distributive(w).holds;
    CHECK(lib == oracle_distributive(w));
    agree_true += lib;
  }
  for (int i = 0; i < 100; ++i) {
    OpTable w = random_table(rng, 2, 3);
    CHECK(is_nary_distributive(w).holds == oracle_distributive(w));
  }
  CHECK(agree_true > 0);
}

TEST_CASE("property: counterexamples re-evaluate to the reported sides") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    OpTable w = random_table(rng, 3, 1 + 1 + i % 2);
    auto r = is_nary_distributive(w);
    if (r.holds) continue;
    auto [lhs, rhs] = sd_sides_at(w, r.counterexample->witness);
    CHECK(lhs == r.counterexample->lhs);
    CHECK(rhs == r.counterexample->rhs);
    CHECK(lhs != rhs);
  }
}

TEST_CASE("property: W against itself reduces to self-distributivity") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 150; ++i) {
    OpTable w = random_table(rng, 2 + i % 2, 2);
    CHECK(are_mutually_distributive(w, w).holds == is_nary_distributive(w).holds);
  }
  for (int i = 0; i < 80; ++i) {
    OpTable t = random_table(rng, 2, 3);
    bool sd = is_nary_distributive(t).holds;
    CHECK(are_compatible_ternary(t, t).holds == sd);
    CHECK(are_mutually_distributive(t, t).holds == sd);
  }
  // structured tables, where the answer is often yes
  for (auto& e : enumerate_affine(4, 3)) CHECK(are_compatible_ternary(e, e).holds == is_nary_distributive(e).holds);
}

TEST_CASE("property: verdicts are invariant under relabeling") {
  std::mt19937_64 rng(5);
  std::vector<OpTable> ops{dihedral_quandle(5), z8_ternary(), heap_op(symmetric_group(3)),
                           core_quandle(symmetric_group(3))};
  for (int i = 0; i < 40; ++i) ops.push_back(random_table(rng, 3, 2));
  for (const auto& w : ops) {
    auto pi = random_perm(rng, w.size());
    OpTable r = relabel(w, pi);
    CHECK(is_nary_distributive(r).holds == is_nary_distributive(w).holds);
    CHECK(is_rack(r) == is_rack(w));
    auto f = find_isomorphism(w, r);
    REQUIRE(f);
    CHECK(relabel(w, *f).same_table(r));
  }
}

TEST_CASE("rack translations are permutations and invert") {
  std::vector<OpTable> racks{dihedral_quandle(5), z8_ternary(), heap_op(symmetric_group(3)), affine_op(9, 3, {-5, 3})};
  for (const auto& w : racks) {
    REQUIRE(is_rack(w));
    CHECK(oracle_translations_bijective(w));
    std::size_t n = w.size();
    std::uint64_t tails = checked_power(n, w.arity() - 1);
    for (std::uint64_t t = 0; t < tails; ++t) {
      Tuple tail = decode_tuple(t, n, w.arity() - 1);
      auto fwd = translation(w, tail);
      auto inv = inverse_translation(w, tail);
      CHECK(is_permutation(fwd));
      for (Element x = 0; x < n; ++x) CHECK(inv[fwd[x]] == x);
    }
  }
  OpTable notrack = table_of(3, 2, [](const Ints& a) { return a[1]; });
  CHECK_THROWS_AS(inverse_translation(notrack, Tuple{1}), HypothesisError);
}

TEST_CASE("worker count does not change the reported counterexample") {
  std::mt19937_64 rng(13);
  // 40^3 = 64000 tuples spans several chunks
  OpTable w = dihedral_quandle(40);
  std::vector<Element> t(w.table().begin(), w.table().end());
  t[39 * 40 + 39] = 1;  // single corruption deep in the scan
  OpTable bad(40, 2, t);
  std::size_t saved = default_jobs();
  set_default_jobs(1);
  auto r1 = is_nary_distributive(bad);
  set_default_jobs(4);
  auto r4 = is_nary_distributive(bad);
  set_default_jobs(saved);
  REQUIRE_FALSE(r1.holds);
  REQUIRE_FALSE(r4.holds);
  CHECK(r1.counterexample->witness == r4.counterexample->witness);
  CHECK(oracle_distributive(bad) == false);
  (void)rng;
}

TEST_CASE("sampling agrees with exhaustive checks") {
  CHECK(sample_nary_distributive(z8_ternary(), 5000, 1).holds);
  OpTable plus = table_of(7, 3, [](const Ints& a) { return a[0] + a[1] + a[2]; });
  CHECK_FALSE(sample_nary_distributive(plus, 5000, 1).holds);
}

TEST_CASE("finite groups are validated") {
  CHECK_NOTHROW(FiniteGroup(2, {0, 1, 1, 0}));
  CHECK_THROWS_AS(FiniteGroup(2, {0, 0, 1, 0}), InputError);
  CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1}), InputError);
  // {a,b} with a*a = a, a*b = b, b*a = b, b*b = b : b has no inverse
  CHECK_THROWS_AS(FiniteGroup(2, {0, 1, 1, 1}), InputError);
  FiniteGroup s3 = symmetric_group(3);
  CHECK(s3.size() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(direct_product(cyclic_group(2), cyclic_group(3)).is_abelian());
  for (Element a = 0; a < 6; ++a) CHECK(s3.mul(a, s3.inv(a)) == s3.identity());
}

TEST_CASE("core against heap, direction by direction") {
  CHECK(heap_vs_core_directional(symmetric_group(3)) == std::pair{true, false});
  CHECK(heap_vs_core_directional(cyclic_group(1)) == std::pair{true, true});
  CHECK(heap_vs_core_directional(cyclic_group(2)) == std::pair{true, true});
}
