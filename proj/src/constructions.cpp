#include "sdops/constructions.hpp"

#include <numeric>

namespace sdops {

namespace {

void require(const CheckResult& r, const std::string& what) {
  if (!r.holds) throw HypothesisError(what, r.counterexample);
}

void require_rack(const OpTable& op, const std::string& name) {
  if (!all_translations_bijective(op)) throw HypothesisError(name + " has a non-bijective translation");
  require(is_nary_distributive(op), name + " is not self-distributive");
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// Fill a table of the given shape from f(args).
template <class F>
std::vector<Element> tabulate(std::size_t size, std::size_t arity, F f) {
  std::uint64_t total = checked_power(size, arity);
  std::vector<Element> out(total);
  std::vector<Element> args(arity);
  for (std::uint64_t i = 0; i < total; ++i) {
    decode_tuple(i, size, args);
    out[i] = f(static_cast<const std::vector<Element>&>(args));
  }
  return out;
}

nlohmann::json pair_encoding(std::size_t second) {
  return "(a,b) -> a*" + std::to_string(second) + "+b";
}

}  // namespace

OpTable affine_op(std::size_t modulus, std::size_t arity, const std::vector<std::int64_t>& coeffs) {
  if (modulus == 0) throw InputError("modulus must be positive");
  if (arity < 2) throw InputError("arity must be at least 2");
  if (coeffs.size() != arity - 1)
    throw InputError("affine operation of arity " + std::to_string(arity) + " takes " +
                     std::to_string(arity - 1) + " coefficients");
  std::int64_t n = static_cast<std::int64_t>(modulus);
  std::vector<std::int64_t> c(arity);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < arity; ++i) {
    c[i] = mod(coeffs[i], n);
    sum += c[i];
  }
  c[arity - 1] = mod(1 - sum, n);
  auto table = tabulate(modulus, arity, [&](const std::vector<Element>& a) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < arity; ++i) v = (v + c[i] * a[i]) % n;
    return static_cast<Element>(v);
  });
  bool unit = std::gcd(c[0], n) == 1;
  nlohmann::json prov = {{"construction", "affine"},
                         {"modulus", modulus},
                         {"coefficients", c},
                         {"unit_leading", unit}};
  return OpTable(modulus, arity, std::move(table), std::move(prov));
}

bool affine_compatibility_conditions(std::size_t modulus, std::int64_t t, std::int64_t s, std::int64_t t2,
                                     std::int64_t s2, AffineCriterion form) {
  if (modulus == 0) throw InputError("modulus must be positive");
  std::int64_t n = static_cast<std::int64_t>(modulus);
  auto zero = [&](std::int64_t a, std::int64_t b) { return mod(mod(a, n) * mod(b, n), n) == 0; };
  std::int64_t u = 1 - t - s;
  std::int64_t w = form == AffineCriterion::exact ? s2 : 1 - t2 - s2;
  return zero(u, t2 - t) && zero(u, s2 - s) && zero(w, t - t2) && zero(w, s - s2);
}

OpTable dihedral_quandle(std::size_t n) {
  OpTable t = affine_op(n, 2, {-1});
  t.set_provenance({{"construction", "dihedral"}, {"size", n}});
  return t;
}

OpTable projection_op(std::size_t size, std::size_t arity) {
  auto table = tabulate(size, arity, [](const std::vector<Element>& a) { return a[0]; });
  return OpTable(size, arity, std::move(table), {{"construction", "projection"}});
}

OpTable conj_quandle(const FiniteGroup& g) {
  auto t = tabulate(g.size(), 2, [&](const std::vector<Element>& a) {
    return g.mul(g.mul(g.inv(a[1]), a[0]), a[1]);
  });
  return OpTable(g.size(), 2, std::move(t), {{"construction", "conj"}});
}

OpTable core_quandle(const FiniteGroup& g) {
  auto t = tabulate(g.size(), 2, [&](const std::vector<Element>& a) {
    return g.mul(g.mul(a[1], g.inv(a[0])), a[1]);
  });
  return OpTable(g.size(), 2, std::move(t), {{"construction", "core"}});
}

OpTable heap_op(const FiniteGroup& g) {
  auto t = tabulate(g.size(), 3, [&](const std::vector<Element>& a) {
    return g.mul(g.mul(a[0], g.inv(a[1])), a[2]);
  });
  return OpTable(g.size(), 3, std::move(t), {{"construction", "heap"}});
}

bool is_automorphism(const FiniteGroup& g, std::span<const Element> f) {
  if (f.size() != g.size() || !is_permutation(f)) return false;
  for (Element a = 0; a < g.size(); ++a)
    for (Element b = 0; b < g.size(); ++b)
      if (f[g.mul(a, b)] != g.mul(f[a], f[b])) return false;
  return true;
}

OpTable generalized_alexander(const FiniteGroup& g, std::span<const Element> f) {
  if (!is_automorphism(g, f)) throw InputError("map is not a group automorphism");
  auto t = tabulate(g.size(), 2, [&](const std::vector<Element>& a) {
    return g.mul(f[g.mul(a[0], g.inv(a[1]))], a[1]);
  });
  return OpTable(g.size(), 2, std::move(t),
                 {{"construction", "generalized_alexander"},
                  {"automorphism", std::vector<Element>(f.begin(), f.end())}});
}

std::pair<OpTable, OpTable> generalized_alexander_pair(const FiniteGroup& g,
                                                       std::span<const Element> f0,
                                                       std::span<const Element> f1) {
  auto a = generalized_alexander(g, f0);
  auto b = generalized_alexander(g, f1);
  for (Element x = 0; x < g.size(); ++x)
    if (f0[f1[x]] != f1[f0[x]]) throw InputError("automorphisms do not commute");
  return {std::move(a), std::move(b)};
}

OpTable monoid_product(const OpTable& w, const OpTable& w_prime) {
  if (w.size() != w_prime.size() || w.arity() != w_prime.arity())
    throw InputError("monoid product needs operations of the same shape");
  std::uint64_t tails = checked_power(w.size(), w.arity() - 1);
  std::vector<Element> t(w.table().size());
  for (std::uint64_t i = 0; i < t.size(); ++i)
    t[i] = w.at_index(w_prime.at_index(i) * tails + i % tails);
  return OpTable(w.size(), w.arity(), std::move(t), {{"construction", "monoid_product"}});
}

OpTable power_op(const OpTable& op, std::size_t n) {
  OpTable r = projection_op(op.size(), op.arity());
  for (std::size_t i = 0; i < n; ++i) r = monoid_product(op, r);
  r.set_provenance({{"construction", "power"}, {"exponent", n}});
  return r;
}

std::pair<OpTable, OpTable> product_mutual_pair(const OpTable& rack_x, const OpTable& rack_y,
                                                Verify verify) {
  if (rack_x.arity() != 2 || rack_y.arity() != 2) throw InputError("product pair needs binary operations");
  if (verify == Verify::checked) {
    require_rack(rack_x, "first factor");
    require_rack(rack_y, "second factor");
  }
  std::size_t nx = rack_x.size(), ny = rack_y.size(), n = nx * ny;
  auto t0 = tabulate(n, 2, [&](const std::vector<Element>& a) {
    return pair_index(rack_x({a[0] / (Element)ny, a[1] / (Element)ny}), a[0] % ny, ny);
  });
  auto t1 = tabulate(n, 2, [&](const std::vector<Element>& a) {
    return pair_index(a[0] / ny, rack_y({a[0] % (Element)ny, a[1] % (Element)ny}), ny);
  });
  nlohmann::json prov = {{"construction", "product_pair"}, {"encoding", pair_encoding(ny)}};
  return {OpTable(n, 2, std::move(t0), prov), OpTable(n, 2, std::move(t1), prov)};
}

OpTable doubling_binary(const OpTable& op0, const OpTable& op1, Verify verify) {
  if (op0.arity() != 2 || op1.arity() != 2) throw InputError("binary doubling needs binary operations");
  if (op0.size() != op1.size()) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked) {
    require_rack(op0, "first operation");
    require_rack(op1, "second operation");
    require(are_mutually_distributive(op0, op1), "operations are not mutually distributive");
  }
  std::size_t n = op0.size();
  auto t = tabulate(n * n, 2, [&](const std::vector<Element>& a) {
    Element x0 = a[0] / n, x1 = a[0] % n, y0 = a[1] / n, y1 = a[1] % n;
    return pair_index(op1({op0({x0, y0}), y1}), op1({op0({x1, y0}), y1}), n);
  });
  return OpTable(n * n, 2, std::move(t),
                 {{"construction", "doubling_binary"}, {"encoding", pair_encoding(n)}});
}

OpTable doubling_ternary(const OpTable& t0, const OpTable& t1, Verify verify) {
  if (t0.arity() != 3 || t1.arity() != 3) throw InputError("ternary doubling needs ternary operations");
  if (t0.size() != t1.size()) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked) require(are_compatible_ternary(t0, t1), "operations are not compatible");
  std::size_t n = t0.size();
  auto t = tabulate(n * n, 3, [&](const std::vector<Element>& a) {
    Element x0 = a[0] / n, x1 = a[0] % n, y0 = a[1] / n, y1 = a[1] % n, z0 = a[2] / n, z1 = a[2] % n;
    return pair_index(t0({t0({x0, y0, y1}), z0, z1}), t1({t1({x1, y0, y1}), z0, z1}), n);
  });
  return OpTable(n * n, 3, std::move(t),
                 {{"construction", "doubling_ternary"}, {"encoding", pair_encoding(n)}});
}

OpTable f_functor(const OpTable& op0, const OpTable& op1, Verify verify) {
  if (op0.arity() != 2 || op1.arity() != 2) throw InputError("F needs binary operations");
  if (op0.size() != op1.size()) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked)
    require(are_mutually_distributive(op0, op1), "operations are not mutually distributive");
  auto t = tabulate(op0.size(), 3, [&](const std::vector<Element>& a) {
    return op1({op0({a[0], a[1]}), a[2]});
  });
  return OpTable(op0.size(), 3, std::move(t), {{"construction", "F"}});
}

OpTable g_functor(const OpTable& t0, const OpTable& t1, Verify verify) {
  if (t0.arity() != 3 || t1.arity() != 3) throw InputError("G needs ternary operations");
  if (t0.size() != t1.size()) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked) {
    require(are_compatible_ternary(t0, t1), "operations are not compatible");
    require_rack(t0, "first operation");
    require_rack(t1, "second operation");
  }
  std::size_t n = t0.size();
  auto t = tabulate(n * n, 2, [&](const std::vector<Element>& a) {
    Element x0 = a[0] / n, x1 = a[0] % n, y0 = a[1] / n, y1 = a[1] % n;
    return pair_index(t0({x0, y0, y1}), t1({x1, y0, y1}), n);
  });
  return OpTable(n * n, 2, std::move(t), {{"construction", "G"}, {"encoding", pair_encoding(n)}});
}

bool verify_functor_identity_binary(const OpTable& op0, const OpTable& op1) {
  auto f = f_functor(op0, op1);
  return g_functor(f, f, Verify::unchecked).same_table(doubling_binary(op0, op1));
}

bool verify_functor_identity_ternary(const OpTable& t0, const OpTable& t1) {
  auto g = g_functor(t0, t1);
  return f_functor(g, g, Verify::unchecked).same_table(doubling_ternary(t0, t1));
}

OpTable compose_mn(const OpTable& wm, const OpTable& wn, Verify verify) {
  if (wm.size() != wn.size()) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked)
    require(are_mutually_distributive(wm, wn), "operations are not mutually distributive");
  std::size_t m = wm.arity(), n = wn.arity(), size = wm.size();
  std::uint64_t ztails = checked_power(size, n - 1);
  std::vector<Element> t(checked_power(size, m + n - 1));
  for (std::uint64_t i = 0; i < t.size(); ++i)
    t[i] = wn.at_index(wm.at_index(i / ztails) * ztails + i % ztails);
  return OpTable(size, m + n - 1, std::move(t), {{"construction", "compose"}, {"arities", {m, n}}});
}

bool is_right_action(std::size_t size, const FiniteGroup& g, std::span<const Element> action) {
  std::size_t gs = g.size();
  if (action.size() != size * gs) return false;
  for (Element v : action)
    if (v >= size) return false;
  for (Element x = 0; x < size; ++x) {
    if (action[x * gs + g.identity()] != x) return false;
    for (Element a = 0; a < gs; ++a)
      for (Element b = 0; b < gs; ++b)
        if (action[action[x * gs + a] * gs + b] != action[x * gs + g.mul(a, b)]) return false;
  }
  return true;
}

CheckResult augmentation_equivariance(std::size_t size, const FiniteGroup& g,
                                      std::span<const Element> action, std::span<const Element> p) {
  std::size_t gs = g.size();
  for (Element y0 = 0; y0 < size; ++y0)
    for (Element y1 = 0; y1 < size; ++y1)
      for (Element h = 0; h < gs; ++h) {
        Element lhs = p[action[y0 * gs + h] * size + action[y1 * gs + h]];
        Element rhs = g.mul(g.mul(g.inv(h), p[y0 * size + y1]), h);
        if (lhs != rhs) return {false, Counterexample{{y0, y1, h}, lhs, rhs, 0}};
      }
  return {};
}

OpTable augmented_ternary(std::size_t size, const FiniteGroup& g, std::span<const Element> action,
                          std::span<const Element> p, Verify verify) {
  std::size_t gs = g.size();
  if (action.size() != size * gs) throw InputError("action table must have |X|*|G| entries");
  if (p.size() != size * size) throw InputError("augmentation table must have |X|^2 entries");
  for (Element v : p)
    if (v >= gs) throw InputError("augmentation value out of range");
  if (!is_right_action(size, g, action)) throw InputError("table is not a right group action");
  if (verify == Verify::checked)
    require(augmentation_equivariance(size, g, action, p), "augmentation is not equivariant");
  auto t = tabulate(size, 3, [&](const std::vector<Element>& a) {
    return action[a[0] * gs + p[a[1] * size + a[2]]];
  });
  return OpTable(size, 3, std::move(t), {{"construction", "augmented"}});
}

bool has_diagonal_symmetry(const OpTable& t) {
  if (t.arity() != 3) throw InputError("diagonal symmetry is a ternary property");
  for (Element x = 0; x < t.size(); ++x)
    for (Element y = 0; y < t.size(); ++y)
      if (t({x, x, y}) != t({x, y, y})) return false;
  return true;
}

}  // namespace sdops
