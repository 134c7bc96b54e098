#pragma once

// Shared helpers for the test programs: table builders, random inputs and
// brute-force oracles written independently of the library's scanners.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "sdops/core.hpp"

namespace testing_support {

using sdops::Element;
using sdops::OpTable;
using sdops::Tuple;

using Ints = std::vector<std::int64_t>;

// Arguments arrive as signed integers so formulas like 2y - x reduce properly.
inline OpTable table_of(std::size_t size, std::size_t arity, const std::function<std::int64_t(const Ints&)>& f) {
  std::uint64_t total = sdops::checked_power(size, arity);
  std::vector<Element> t(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    Tuple args = sdops::decode_tuple(i, size, arity);
    std::int64_t v = f(Ints(args.begin(), args.end())) % static_cast<std::int64_t>(size);
    if (v < 0) v += static_cast<std::int64_t>(size);
    t[i] = static_cast<Element>(v);
  }
  return OpTable(size, arity, std::move(t));
}

inline OpTable random_table(std::mt19937_64& rng, std::size_t size, std::size_t arity) {
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(size - 1));
  std::vector<Element> t(sdops::checked_power(size, arity));
  for (auto& e : t) e = pick(rng);
  return OpTable(size, arity, std::move(t));
}

inline std::vector<Element> random_perm(std::mt19937_64& rng, std::size_t n) {
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Straight nested evaluation of right distributivity, no shared code with
// the library scanner.
inline bool oracle_distributive(const OpTable& w) {
  std::size_t k = w.arity(), n = w.size();
  std::size_t len = 2 * k - 1;
  std::uint64_t total = sdops::checked_power(n, len);
  Tuple t(len), a(k), b(k), c(k);
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t r = i;
    for (std::size_t j = len; j-- > 0;) {
      t[j] = static_cast<Element>(r % n);
      r /= n;
    }
    // lhs = W(W(x, y), z)
    for (std::size_t j = 0; j < k; ++j) a[j] = t[j];
    b[0] = w(a);
    for (std::size_t j = 1; j < k; ++j) b[j] = t[k - 1 + j];
    Element lhs = w(b);
    // rhs = W(W(x, z), W(y_1, z), ...)
    for (std::size_t j = 0; j < k; ++j) {
      c[0] = t[j];
      for (std::size_t m = 1; m < k; ++m) c[m] = t[k - 1 + m];
      a[j] = w(c);
    }
    if (lhs != w(a)) return false;
  }
  return true;
}

inline bool oracle_translations_bijective(const OpTable& w) {
  std::size_t n = w.size(), k = w.arity();
  std::uint64_t tails = sdops::checked_power(n, k - 1);
  for (std::uint64_t t = 0; t < tails; ++t) {
    std::vector<bool> hit(n, false);
    for (std::size_t x = 0; x < n; ++x) hit[w.at_index(x * tails + t)] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) return false;
  }
  return true;
}

inline Element eval(const OpTable& w, const Tuple& args) { return w(args); }

}  // namespace testing_support
