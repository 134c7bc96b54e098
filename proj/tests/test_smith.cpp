#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sdops/smith.hpp"

using namespace sdops;

namespace {

BigMatrix big(std::initializer_list<std::initializer_list<long>> rows) {
  BigMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (auto& r : rows) {
    Eigen::Index j = 0;
    for (long v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

BigMatrix mul(const BigMatrix& a, const BigMatrix& b) {
  BigMatrix c(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      BigInt s = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

bool same(const BigMatrix& a, const BigMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

std::vector<BigInt> nontrivial(const std::vector<BigInt>& f) {
  std::vector<BigInt> out;
  for (const auto& v : f)
    if (v != 1) out.push_back(v);
  return out;
}

void check_form(const BigMatrix& m) {
  SmithForm s = smith_normal_form(m);
  CHECK(same(mul(mul(s.u, m), s.v), s.d));
  BigInt du = determinant(s.u), dv = determinant(s.v);
  CHECK(abs(du) == 1);
  CHECK(abs(dv) == 1);
  for (Eigen::Index i = 0; i < s.d.rows(); ++i)
    for (Eigen::Index j = 0; j < s.d.cols(); ++j)
      if (i != j) CHECK(s.d(i, j) == 0);
  for (std::size_t i = 0; i + 1 < s.factors.size(); ++i) {
    CHECK(s.factors[i] > 0);
    CHECK(s.factors[i + 1] % s.factors[i] == 0);
  }
}

}  // namespace

TEST_CASE("small Smith forms") {
  CHECK(smith_normal_form(big({{2, 0}, {0, 4}})).factors == std::vector<BigInt>{2, 4});
  CHECK(smith_normal_form(big({{2, 4}, {6, 10}})).factors == std::vector<BigInt>{2, 2});
  CHECK(smith_normal_form(big({{0, 0}, {0, 0}})).factors.empty());
  CHECK(smith_normal_form(big({{4, 0}, {0, 6}})).factors == std::vector<BigInt>{2, 12});
  CHECK(determinant(big({{2, 4}, {6, 10}})) == -4);
  check_form(big({{2, 4}, {6, 10}}));
  check_form(big({{0, 3, 0}, {5, 0, 0}}));
}

TEST_CASE("property: transforms are unimodular and reproduce D on random matrices") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> v(-6, 6);
  for (int t = 0; t < 40; ++t) {
    Eigen::Index r = 1 + t % 4, c = 1 + (t / 4) % 4;
    BigMatrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = v(rng);
    check_form(m);
  }
}

TEST_CASE("property: sparse and dense invariant factors agree") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> v(-3, 3), coin(0, 3);
  for (int t = 0; t < 40; ++t) {
    int r = 2 + t % 6, c = 2 + (t / 3) % 6;
    IntMatrix m(r, c);
    std::vector<Eigen::Triplet<std::int64_t>> trips;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (coin(rng) == 0) trips.emplace_back(i, j, v(rng));
    m.setFromTriplets(trips.begin(), trips.end());
    auto sparse = invariant_factors(m);
    auto dense = invariant_factors_dense(to_big(m));
    CHECK(nontrivial(sparse) == nontrivial(dense));
    CHECK(sparse.size() == dense.size());
  }
}

TEST_CASE("large intermediates stay exact") {
  // entries near 2^62 overflow 64-bit products during elimination
  IntMatrix m(2, 2);
  std::int64_t big_v = (std::int64_t{1} << 62) - 57;
  std::vector<Eigen::Triplet<std::int64_t>> trips{{0, 0, big_v}, {0, 1, 3}, {1, 0, 6}, {1, 1, big_v}};
  m.setFromTriplets(trips.begin(), trips.end());
  auto f = invariant_factors(m);
  auto d = invariant_factors_dense(to_big(m));
  CHECK(f == d);
  BigInt det = BigInt(big_v) * big_v - 18;
  BigInt prod = 1;
  for (auto& x : f) prod *= x;
  CHECK(prod == abs(det));
}
