#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "sdops/cocycles.hpp"
#include "sdops/constructions.hpp"
#include "sdops/homology.hpp"
#include "support.hpp"

using namespace sdops;
using namespace testing_support;

namespace {

using Column = std::map<std::uint64_t, std::int64_t>;

// Term-by-term expansion of the boundary of one generator, written from the
// defining formula without the library's block machinery.
Column expand(const LabeledComplex& c, std::size_t n, const std::vector<std::size_t>& labels, const Tuple& flat) {
  const auto& ops = c.ops();
  std::vector<Tuple> v;
  std::size_t pos = 1;
  for (std::size_t e : labels) {
    std::size_t len = ops[e].arity() - 1;
    v.emplace_back(flat.begin() + pos, flat.begin() + pos + len);
    pos += len;
  }
  Column col;
  auto add = [&](const std::vector<std::size_t>& l, const Tuple& t, std::int64_t s) {
    std::uint64_t idx = c.index_of(n - 1, l, t);
    col[idx] += s;
    if (col[idx] == 0) col.erase(idx);
  };
  for (std::size_t i = 1; i < n; ++i) {
    std::int64_t sign = i % 2 ? -1 : 1;
    const OpTable& op = ops[labels[i - 1]];
    auto act = [&](Element a) {
      Tuple args{a};
      args.insert(args.end(), v[i - 1].begin(), v[i - 1].end());
      return op(args);
    };
    std::vector<std::size_t> l;
    Tuple acted{act(flat[0])}, deleted{flat[0]};
    for (std::size_t j = 1; j < n; ++j) {
      if (j == i) continue;
      l.push_back(labels[j - 1]);
      for (Element a : v[j - 1]) {
        acted.push_back(j < i ? act(a) : a);
        deleted.push_back(a);
      }
    }
    add(l, acted, sign);
    add(l, deleted, -sign);
  }
  return col;
}

Column column_of(const IntMatrix& m, Eigen::Index j) {
  Column col;
  for (IntMatrix::InnerIterator it(m, j); it; ++it)
    if (it.value() != 0) col[static_cast<std::uint64_t>(it.row())] = it.value();
  return col;
}

void check_against_expansion(const LabeledComplex& c, std::size_t n) {
  IntMatrix d = c.boundary(n);
  CHECK(static_cast<std::uint64_t>(d.cols()) == c.generators(n));
  for (const auto& b : c.blocks(n)) {
    for (std::uint64_t k = 0; k < b.count; ++k) {
      Tuple t = decode_tuple(k, c.size(), b.length);
      std::uint64_t idx = c.index_of(n, b.labels, t);
      REQUIRE(idx == b.offset + k);
      CHECK(column_of(d, static_cast<Eigen::Index>(idx)) == expand(c, n, b.labels, t));
    }
  }
}

bool product_vanishes(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix p = (a * b).pruned();
  for (int k = 0; k < p.outerSize(); ++k)
    for (IntMatrix::InnerIterator it(p, k); it; ++it)
      if (it.value() != 0) return false;
  return true;
}

// Rank over GF(p) by dense elimination.
std::size_t rank_mod(const IntMatrix& m, std::int64_t p) {
  std::vector<std::vector<std::int64_t>> a(m.rows(), std::vector<std::int64_t>(m.cols(), 0));
  for (int k = 0; k < m.outerSize(); ++k)
    for (IntMatrix::InnerIterator it(m, k); it; ++it) a[it.row()][it.col()] = ((it.value() % p) + p) % p;
  std::size_t r = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t col = 0; col < cols; ++col) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    std::int64_t inv = 1;
    for (std::int64_t e = p - 2, b = a[r][col]; e > 0; e >>= 1, b = b * b % p)
      if (e & 1) inv = inv * b % p;
    for (auto& x : a[r]) x = x * inv % p;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (i != r && a[i][col] != 0) {
        std::int64_t f = a[i][col];
        for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
      }
    if (++r == a.size()) break;
  }
  return r;
}

std::size_t orbit_count(const OpTable& op) {
  std::size_t n = op.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) parent[find(x)] = find(op({x, y}));
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) k += find(i) == i;
  return k;
}

std::vector<OpTable> small_ternary_racks() {
  std::vector<OpTable> out = enumerate_operations(2, 3, Structure::rack);
  for (auto& t : enumerate_affine(3, 3)) out.push_back(t);
  out.push_back(heap_op(cyclic_group(3)));
  out.push_back(f_functor(dihedral_quandle(3), dihedral_quandle(3)));
  out.push_back(f_functor(dihedral_quandle(3), projection_op(3, 2)));
  out.push_back(projection_op(3, 3));
  return out;
}

std::vector<std::pair<OpTable, OpTable>> small_pairs() {
  auto pairs = mutual_pairs(enumerate_operations(2, 2, Structure::rack));
  OpTable d3 = dihedral_quandle(3), tr = projection_op(3, 2);
  pairs.push_back({d3, d3});
  pairs.push_back({tr, d3});
  pairs.push_back({d3, tr});
  pairs.push_back({tr, tr});
  auto q3 = enumerate_operations(3, 2, Structure::quandle);
  auto more = mutual_pairs(q3);
  for (std::size_t i = 0; i < more.size() && i < 6; ++i) pairs.push_back(more[i * (more.size() / 6 + 1) % more.size()]);
  return pairs;
}

}  // namespace

TEST_CASE("generator order: label vectors lexicographically, then tuples") {
  LabeledComplex c({projection_op(2, 2), heap_op(cyclic_group(2))});
  auto bs = c.blocks(3);
  REQUIRE(bs.size() == 4);
  std::uint64_t off = 0;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    CHECK(bs[i].offset == off);
    off += bs[i].count;
    if (i) CHECK(bs[i - 1].labels < bs[i].labels);
  }
  CHECK(bs[1].labels == std::vector<std::size_t>{0, 1});
  CHECK(bs[1].length == 1 + 1 + 2);
  CHECK(c.generators(3) == off);
}

TEST_CASE("boundaries match term-by-term expansion") {
  check_against_expansion(LabeledComplex({dihedral_quandle(3)}), 2);
  check_against_expansion(LabeledComplex({dihedral_quandle(3)}), 3);
  check_against_expansion(LabeledComplex({projection_op(3, 2), dihedral_quandle(3)}), 2);
  check_against_expansion(LabeledComplex({projection_op(3, 2), dihedral_quandle(3)}), 3);
  OpTable t = f_functor(dihedral_quandle(3), dihedral_quandle(3));
  check_against_expansion(LabeledComplex({t}), 2);
  check_against_expansion(LabeledComplex({t}), 3);
  check_against_expansion(LabeledComplex({dihedral_quandle(3), t}), 3);
}

TEST_CASE("boundary shapes and low-degree values") {
  IntMatrix d2 = labeled_boundary({dihedral_quandle(3)}, 2);
  CHECK(d2.rows() == 3);
  CHECK(d2.cols() == 9);
  // d(x, y) = (x) - (x * y)
  for (Element x = 0; x < 3; ++x)
    for (Element y = 0; y < 3; ++y) {
      Column expect;
      Element xy = dihedral_quandle(3)({x, y});
      if (xy != x) expect = {{x, 1}, {xy, -1}};
      CHECK(column_of(d2, x * 3 + y) == expect);
    }
  IntMatrix pair2 = labeled_boundary({projection_op(3, 2), dihedral_quandle(3)}, 2);
  CHECK(pair2.cols() == 18);
  OpTable t = f_functor(dihedral_quandle(3), dihedral_quandle(3));
  IntMatrix tb = ternary_boundary(t, 2);
  CHECK(tb.rows() == 3);
  CHECK(tb.cols() == 27);
  CHECK(matrices_equal(tb, labeled_boundary({t}, 2)));
  CHECK(matrices_equal(ternary_boundary(t, 3), labeled_boundary({t}, 3)));
  CHECK(ternary_boundary(t, 1).nonZeros() == 0);
  CHECK(ternary_boundary(projection_op(1, 3), 3).nonZeros() == 0);
  CHECK(ternary_boundary(projection_op(2, 3), 3).nonZeros() == 0);
  CHECK_THROWS_AS(ternary_boundary(dihedral_quandle(3), 2), InputError);
  CHECK_THROWS_AS(LabeledComplex({dihedral_quandle(3), table_of(3, 2, [](const Ints& a) { return a[0] + 1; })}),
                  HypothesisError);
}

TEST_CASE("boundaries square to zero") {
  for (const auto& t : small_ternary_racks()) {
    LabeledComplex c({t});
    for (std::size_t n = 1; n <= 3; ++n) {
      CHECK(boundary_squares_to_zero(c, n));
      CHECK(product_vanishes(c.boundary(n), c.boundary(n + 1)));
    }
  }
  for (const auto& [a, b] : small_pairs()) {
    LabeledComplex c({a, b});
    for (std::size_t n = 1; n <= 3; ++n) CHECK(product_vanishes(c.boundary(n), c.boundary(n + 1)));
  }
  LabeledComplex mixed({affine_op(3, 2, {2}), affine_op(3, 3, {2, 1})});
  for (std::size_t n = 1; n <= 3; ++n) CHECK(product_vanishes(mixed.boundary(n), mixed.boundary(n + 1)));
}

TEST_CASE("trivial complexes") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto h = homology(LabeledComplex({projection_op(1, 3)}), n);
    CHECK(h.betti == 1);
    CHECK(h.torsion.empty());
  }
  for (std::size_t n = 1; n <= 3; ++n) {
    auto h = homology(LabeledComplex({projection_op(2, 3)}), n);
    CHECK(h.betti == (std::uint64_t{1} << (2 * n - 1)));
    CHECK(h.torsion.empty());
  }
}

TEST_CASE("betti numbers of racks are powers of the orbit count") {
  std::vector<OpTable> racks{dihedral_quandle(3), dihedral_quandle(4), dihedral_quandle(5), projection_op(3, 2),
                             conj_quandle(symmetric_group(3))};
  for (const auto& r : racks) {
    LabeledComplex c({r});
    std::size_t k = orbit_count(r);
    std::uint64_t pw = 1;
    for (std::size_t n = 1; n <= (r.size() > 4 ? 2u : 3u); ++n) {
      pw *= k;
      CHECK(homology(c, n).betti == pw);
    }
  }
}

TEST_CASE("integral homology of the three-element dihedral quandle") {
  LabeledComplex c({dihedral_quandle(3)});
  CHECK(homology(c, 2).torsion.empty());
  auto h3 = homology(c, 3);
  CHECK(h3.betti == 1);
  CHECK(h3.torsion == std::vector<BigInt>{3});
}

TEST_CASE("finite coefficients agree with ranks mod p") {
  std::vector<OpSystem> systems{{dihedral_quandle(3)},
                                {f_functor(dihedral_quandle(3), dihedral_quandle(3))},
                                {projection_op(3, 2), dihedral_quandle(3)},
                                {dihedral_quandle(4)}};
  for (const auto& s : systems) {
    LabeledComplex c(s);
    for (std::int64_t p : {2, 3}) {
      for (std::size_t n = 1; n <= 2; ++n) {
        auto h = homology(c, n, static_cast<std::uint64_t>(p));
        std::size_t dim = c.generators(n) - rank_mod(c.boundary(n), p) - rank_mod(c.boundary(n + 1), p);
        CHECK(h.finite.size() == dim);
        for (auto o : h.finite) CHECK(o == static_cast<std::uint64_t>(p));
      }
    }
  }
}

TEST_CASE("universal coefficients against explicit cocycles") {
  std::vector<OpSystem> systems{{dihedral_quandle(3)},
                                {heap_op(cyclic_group(3))},
                                {projection_op(3, 2), dihedral_quandle(3)},
                                {dihedral_quandle(4)}};
  for (const auto& s : systems) {
    LabeledComplex c(s);
    for (std::uint64_t d : {2, 3, 4}) {
      auto predicted = cohomology(c, 2, d);
      auto solved = cohomology_solve(c, 2, AbGroup::cyclic(d));
      CHECK(to_invariant_factors(predicted.finite) == solved.quotient);
    }
  }
}

TEST_CASE("cohomology solver output") {
  // trivial ternary operation on Z3: every 3-cochain is a cocycle, every coboundary vanishes
  LabeledComplex triv({projection_op(3, 3)});
  auto s = cohomology_solve(triv, 2, AbGroup::cyclic(3));
  CHECK(s.quotient == std::vector<std::uint64_t>(27, 3));
  for (const auto& b : s.coboundaries) CHECK(b[0].is_zero());
  Cochain psi = tabulate_cochain(3, 3, AbGroup::cyclic(3), [](const auto& v) {
    return std::vector<std::int64_t>{std::int64_t(v[1]) + v[2] - 2 * std::int64_t(v[0])};
  });
  CHECK(is_cocycle(triv, 2, {psi}));
  CHECK_FALSE(find_primitive(triv, 2, {psi}));

  OpTable d3 = dihedral_quandle(3);
  LabeledComplex single({d3});
  auto r = cohomology_solve(single, 2, AbGroup::cyclic(3));
  CHECK(r.quotient == std::vector<std::uint64_t>{3});
  for (const auto& z : r.cocycles) {
    CHECK(is_binary_2cocycle(z[0], d3).holds);
    CHECK(is_cocycle(single, 2, z));
  }
  for (const auto& b : r.coboundaries) CHECK(find_primitive(single, 2, b));

  auto zero = cohomology_solve(single, 2, AbGroup::cyclic(1));
  CHECK(zero.quotient.empty());
}

TEST_CASE("labeled 2-cocycles are mutually distributive cocycle pairs") {
  OpTable d3 = dihedral_quandle(3), tr = projection_op(3, 2);
  for (auto [a, b] : std::vector<std::pair<OpTable, OpTable>>{{d3, d3}, {tr, d3}}) {
    LabeledComplex c({a, b});
    AbGroup z3 = AbGroup::cyclic(3);
    auto s = cohomology_solve(c, 2, z3);
    for (const auto& z : s.cocycles) {
      REQUIRE(z.size() == 2);
      CHECK(is_binary_2cocycle(z[0], a).holds);
      CHECK(is_binary_2cocycle(z[1], b).holds);
      CHECK(are_mutually_distributive_cocycles(z[0], z[1], a, b).holds);
    }
    std::uint64_t labeled = 1, pairs = 1;
    for (auto o : s.cocycle_orders) labeled *= o;
    auto space = solve_mutual_cocycle_pairs(a, b, z3);
    CHECK(space.count());
    pairs = *space.count();
    CHECK(labeled == pairs);
  }
}

TEST_CASE("chain map columns") {
  OpTable d3 = dihedral_quandle(3);
  IntMatrix f1 = chain_map_F(d3, d3, 1);
  CHECK(f1.rows() == 3);
  CHECK(f1.cols() == 3);
  for (int i = 0; i < 3; ++i) CHECK(column_of(f1, i) == Column{{static_cast<std::uint64_t>(i), 1}});
  LabeledComplex lab({d3, d3});
  IntMatrix f2 = chain_map_F(d3, d3, 2);
  for (Element x = 0; x < 3; ++x)
    for (Element y0 = 0; y0 < 3; ++y0)
      for (Element y1 = 0; y1 < 3; ++y1) {
        Column expect;
        expect[lab.index_of(2, std::vector<std::size_t>{0}, Tuple{x, y0})] += 1;
        expect[lab.index_of(2, std::vector<std::size_t>{1}, Tuple{d3({x, y0}), y1})] += 1;
        CHECK(column_of(f2, x * 9 + y0 * 3 + y1) == expect);
      }
  IntMatrix f3 = chain_map_F(d3, d3, 3);
  for (Eigen::Index j = 0; j < f3.cols(); ++j) {
    auto col = column_of(f3, j);
    CHECK(col.size() == 4);
    std::set<std::size_t> blocks;
    for (auto [row, v] : col) {
      CHECK(v == 1);
      blocks.insert(row / 27);
    }
    CHECK(blocks.size() == 4);
  }
  CHECK_THROWS_AS(chain_map_F(d3, d3, 4), InputError);
}

TEST_CASE("chain map identities") {
  for (const auto& [a, b] : small_pairs()) {
    CHECK(verify_chain_map(a, b));
    OpTable t = f_functor(a, b);
    LabeledComplex lab({a, b});
    IntMatrix left = chain_map_F(a, b, 2) * ternary_boundary(t, 3);
    IntMatrix right = lab.boundary(3) * chain_map_F(a, b, 3);
    CHECK(matrices_equal(left, right));
    IntMatrix left1 = chain_map_F(a, b, 1) * ternary_boundary(t, 2);
    IntMatrix right1 = lab.boundary(2) * chain_map_F(a, b, 2);
    CHECK(matrices_equal(left1, right1));
  }
  OpTable tr = projection_op(3, 2);
  CHECK(verify_chain_map(tr, tr));
  CHECK(labeled_boundary({tr, tr}, 3).nonZeros() == 0);
}

TEST_CASE("pullback of labeled cocycles") {
  OpTable d3 = dihedral_quandle(3), tr = projection_op(3, 2);
  AbGroup z3 = AbGroup::cyclic(3);
  Cochain zero2 = zero_cochain(3, 2, z3);
  CHECK(pullback_labeled_2cocycle(zero2, zero2, d3, d3).is_zero());
  for (auto [a, b] : std::vector<std::pair<OpTable, OpTable>>{{d3, d3}, {tr, d3}, {d3, tr}}) {
    LabeledComplex lab({a, b});
    OpTable t = f_functor(a, b);
    auto s = cohomology_solve(lab, 2, z3);
    for (const auto& z : s.cocycles) {
      Cochain pb = pullback_labeled_2cocycle(z[0], z[1], a, b);
      CHECK(pb == ternary_cocycle_from_pair(z[0], z[1], a, b));
      CHECK(is_ternary_2cocycle(pb, t).holds);
    }
    // coboundaries go to coboundaries, and cohomologous pairs to cohomologous cocycles
    for (const auto& bd : s.coboundaries) {
      Cochain pb = pullback_labeled_2cocycle(bd[0], bd[1], a, b);
      CHECK(cocycles_cohomologous(pb, zero_cochain(3, 3, z3), t));
    }
    if (!s.cocycles.empty() && !s.coboundaries.empty()) {
      const auto& z = s.cocycles[0];
      const auto& bd = s.coboundaries.back();
      Cochain p1 = pullback_labeled_2cocycle(z[0], z[1], a, b);
      Cochain p2 = pullback_labeled_2cocycle(z[0] + bd[0], z[1] + bd[1], a, b);
      CHECK(cocycles_cohomologous(p1, p2, t));
    }
  }
  Cochain bad = tabulate_cochain(3, 2, z3, [](const auto& v) { return std::vector<std::int64_t>{v[0] == 0 && v[1] == 1}; });
  CHECK_THROWS_AS(pullback_labeled_2cocycle(bad, zero2, d3, d3), HypothesisError);
}

TEST_CASE("size guard") {
  LabeledComplex big({dihedral_quandle(5)});
  CHECK_THROWS_AS(homology(big, 8), InputError);
  CHECK_THROWS_AS(homology(big, 0), InputError);
}
