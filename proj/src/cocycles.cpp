#include "sdops/cocycles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "sdops/constructions.hpp"
#include "sdops/modsolve.hpp"
#include "sdops/scan.hpp"

namespace sdops {

namespace {

// A linear condition on a few cochain "slots" is a function of a variable
// tuple that emits signed evaluations: add(slot, argument index, sign).
// The condition holds at a tuple when the signed sum vanishes.  The same
// description drives the exhaustive check and the linear solver.

template <class Cond>
CheckResult scan_condition(std::uint64_t radix, std::size_t length, int law,
                           const std::vector<const Cochain*>& slots, Cond cond) {
  const AbGroup& g = slots.front()->coeff();
  std::size_t r = g.rank();
  std::uint64_t total = checked_power(radix, length);
  auto probe = [&](std::uint64_t begin,
                   std::uint64_t end) -> std::optional<std::pair<std::uint64_t, Counterexample>> {
    std::vector<Element> t(length);
    decode_tuple(begin, radix, t);
    std::vector<std::uint64_t> pos(r), neg(r);
    auto add = [&](std::size_t slot, std::uint64_t idx, int sign) {
      auto& acc = sign > 0 ? pos : neg;
      for (std::size_t j = 0; j < r; ++j) acc[j] += slots[slot]->at(idx, j);
    };
    for (std::uint64_t i = begin; i < end; ++i) {
      std::fill(pos.begin(), pos.end(), 0);
      std::fill(neg.begin(), neg.end(), 0);
      cond(static_cast<const std::vector<Element>&>(t), add);
      bool ok = true;
      for (std::size_t j = 0; j < r; ++j) {
        pos[j] %= g.factors()[j];
        neg[j] %= g.factors()[j];
        if (pos[j] != neg[j]) ok = false;
      }
      if (!ok)
        return std::pair{i, Counterexample{t, static_cast<Element>(g.index(pos)),
                                           static_cast<Element>(g.index(neg)), law}};
      advance_tuple(t, static_cast<Element>(radix));
    }
    return std::nullopt;
  };
  auto hit = first_failure(total, probe);
  if (!hit) return {};
  return {false, std::move(hit->second)};
}

struct Law {
  std::size_t length;
  std::function<void(const std::vector<Element>&, const std::function<void(std::size_t, std::uint64_t, int)>&)> emit;
};

// Solve the system given by `laws` for cochains of the given arities.
CocycleSpace solve_system(std::size_t size, const std::vector<std::size_t>& nargs,
                          const AbGroup& coeff, const std::vector<Law>& laws) {
  std::vector<std::uint64_t> offset(nargs.size() + 1, 0);
  for (std::size_t s = 0; s < nargs.size(); ++s) offset[s + 1] = offset[s] + checked_power(size, nargs[s]);
  std::uint64_t nvars = offset.back();
  if (nvars > 2'000'000) throw InputError("cocycle system has " + std::to_string(nvars) + " unknowns");
  for (const auto& law : laws) {
    std::uint64_t rows = checked_power(size, law.length);
    if (rows > 20'000'000)
      throw InputError("cocycle system has " + std::to_string(rows) + " equations per law");
  }

  CocycleSpace out;
  out.coeff = coeff;
  for (std::size_t j = 0; j < coeff.rank(); ++j) {
    std::uint64_t d = coeff.factors()[j];
    if (d == 1) continue;
    ModSystem sys(nvars, d);
    for (const auto& law : laws) {
      std::uint64_t total = checked_power(size, law.length);
      std::vector<Element> t(law.length, 0);
      SparseRow row;
      auto add = [&](std::size_t slot, std::uint64_t idx, int sign) {
        row.emplace_back(static_cast<std::uint32_t>(offset[slot] + idx), sign);
      };
      for (std::uint64_t i = 0; i < total; ++i) {
        row.clear();
        law.emit(t, add);
        sys.add_row(row);
        advance_tuple(t, static_cast<Element>(size));
      }
    }
    auto z = solve_kernel(sys);
    for (std::size_t g = 0; g < z.size(); ++g) {
      std::vector<Cochain> gen;
      for (std::size_t s = 0; s < nargs.size(); ++s) {
        Cochain c(size, nargs[s], coeff);
        for (std::uint64_t i = offset[s]; i < offset[s + 1]; ++i) c.set(i - offset[s], j, z.generators()[g][i]);
        gen.push_back(std::move(c));
      }
      out.generators.push_back(std::move(gen));
      out.orders.push_back(z.orders()[g]);
    }
  }
  return out;
}

void require_shape(const Cochain& f, const OpTable& op, std::size_t nargs, const char* what) {
  if (f.size() != op.size()) throw InputError(std::string(what) + ": cochain and operation sizes differ");
  if (f.nargs() != nargs)
    throw InputError(std::string(what) + ": cochain takes " + std::to_string(f.nargs()) + " arguments, expected " +
                     std::to_string(nargs));
}

void require_same_coeff(const Cochain& a, const Cochain& b) {
  if (!(a.coeff() == b.coeff())) throw InputError("cochains have different coefficient groups");
}

void require(const CheckResult& r, const std::string& what) {
  if (!r.holds) throw HypothesisError(what, r.counterexample);
}

// The 2-cocycle law of an operation of arity k over (x, y, z), y, z in X^(k-1).
Law two_cocycle_law(const OpTable& op, std::size_t slot = 0) {
  std::size_t k = op.arity();
  std::uint64_t n = op.size();
  return {2 * k - 1, [&op, k, n, slot](const std::vector<Element>& t, const auto& add) {
            std::uint64_t xy = 0, tail_z = 0, stride = 1;
            for (std::size_t i = 0; i < k; ++i) xy = xy * n + t[i];
            for (std::size_t i = 0; i + 1 < k; ++i) {
              tail_z = tail_z * n + t[k + i];
              stride *= n;
            }
            std::uint64_t xz = t[0] * stride + tail_z;
            Element wxy = op.at_index(xy), wxz = op.at_index(xz);
            std::uint64_t acted = wxz;
            for (std::size_t i = 1; i < k; ++i) acted = acted * n + op.at_index(t[i] * stride + tail_z);
            add(slot, xy, 1);
            add(slot, static_cast<std::uint64_t>(wxy) * stride + tail_z, 1);
            add(slot, xz, -1);
            add(slot, acted, -1);
          }};
}

Law mutual_law(const OpTable& op0, const OpTable& op1, int law) {
  std::uint64_t n = op0.size();
  const OpTable& a = law == 0 ? op0 : op1;  // acts first on the left side
  const OpTable& b = law == 0 ? op1 : op0;
  std::size_t sa = law == 0 ? 0 : 1, sb = 1 - sa;
  return {3, [&a, &b, n, sa, sb](const std::vector<Element>& t, const auto& add) {
            Element x = t[0], y = t[1], z = t[2];
            add(sa, x * n + y, 1);
            add(sb, static_cast<std::uint64_t>(a({x, y})) * n + z, 1);
            add(sb, x * n + z, -1);
            add(sa, static_cast<std::uint64_t>(b({x, z})) * n + b({y, z}), -1);
          }};
}

Law compat_law(const OpTable& t0, const OpTable& t1, int law, CocycleVariant variant) {
  std::uint64_t n = t0.size();
  return {6, [&t0, &t1, n, law, variant](const std::vector<Element>& t, const auto& add) {
            Element x0 = t[0], x1 = t[1], y0 = t[2], y1 = t[3], z0 = t[4], z1 = t[5];
            auto idx3 = [n](std::uint64_t a, std::uint64_t b, std::uint64_t c) { return (a * n + b) * n + c; };
            std::uint64_t ty0 = t0({y0, z0, z1}), ty1 = t1({y1, z0, z1});
            if (law == 0) {
              add(0, idx3(x0, y0, y1), 1);
              add(1, idx3(t1({x1, y0, y1}), z0, z1), 1);
              add(1, idx3(x1, z0, z1), -1);
              add(0, idx3(t0({x0, z0, z1}), ty0, ty1), -1);
            } else {
              Element xs = variant == CocycleVariant::proof ? x1 : x0;
              add(1, idx3(x1, y0, y1), 1);
              add(0, idx3(t0({x0, y0, y1}), z0, z1), 1);
              add(0, idx3(x0, z0, z1), -1);
              add(1, idx3(t1({xs, z0, z1}), ty0, ty1), -1);
            }
          }};
}

CheckResult check_laws(const std::vector<Law>& laws, std::uint64_t size, const std::vector<const Cochain*>& slots) {
  for (std::size_t l = 0; l < laws.size(); ++l) {
    auto r = scan_condition(size, laws[l].length, static_cast<int>(l), slots,
                            [&](const std::vector<Element>& t, auto& add) {
                              laws[l].emit(t, [&](std::size_t s, std::uint64_t i, int g) { add(s, i, g); });
                            });
    if (!r.holds) return r;
  }
  return {};
}

// Faster fixed-shape check for the single-cocycle law; the std::function
// indirection of `Law` is avoided here because this runs on large carriers.
CheckResult check_two_cocycle(const Cochain& f, const OpTable& op) {
  std::size_t k = op.arity();
  std::uint64_t n = op.size(), stride = checked_power(n, k - 1);
  return scan_condition(n, 2 * k - 1, 0, {&f}, [&](const std::vector<Element>& t, auto& add) {
    std::uint64_t xy = 0, tail_z = 0;
    for (std::size_t i = 0; i < k; ++i) xy = xy * n + t[i];
    for (std::size_t i = 0; i + 1 < k; ++i) tail_z = tail_z * n + t[k + i];
    std::uint64_t xz = t[0] * stride + tail_z;
    std::uint64_t acted = op.at_index(xz);
    for (std::size_t i = 1; i < k; ++i) acted = acted * n + op.at_index(t[i] * stride + tail_z);
    add(0, xy, 1);
    add(0, op.at_index(xy) * stride + tail_z, 1);
    add(0, xz, -1);
    add(0, acted, -1);
  });
}

nlohmann::json cochain_json(const Cochain& c) {
  return {{"nargs", c.nargs()}, {"coeff", c.coeff().factors()}, {"values", c.values()}};
}

}  // namespace

CheckResult is_2cocycle(const Cochain& f, const OpTable& op) {
  require_shape(f, op, op.arity(), "2-cocycle check");
  return check_two_cocycle(f, op);
}

CheckResult is_binary_2cocycle(const Cochain& phi, const OpTable& op) {
  if (op.arity() != 2) throw InputError("binary cocycle check needs a binary operation");
  return is_2cocycle(phi, op);
}

CheckResult is_ternary_2cocycle(const Cochain& psi, const OpTable& t) {
  if (t.arity() != 3) throw InputError("ternary cocycle check needs a ternary operation");
  return is_2cocycle(psi, t);
}

CheckResult are_mutually_distributive_cocycles(const Cochain& phi0, const Cochain& phi1,
                                               const OpTable& op0, const OpTable& op1) {
  if (op0.arity() != 2 || op1.arity() != 2) throw InputError("mutual cocycles need binary operations");
  require_shape(phi0, op0, 2, "mutual cocycle check");
  require_shape(phi1, op1, 2, "mutual cocycle check");
  require_same_coeff(phi0, phi1);
  return check_laws({mutual_law(op0, op1, 0), mutual_law(op0, op1, 1)}, op0.size(), {&phi0, &phi1});
}

CheckResult are_compatible_ternary_cocycles(const Cochain& psi0, const Cochain& psi1, const OpTable& t0,
                                            const OpTable& t1, CocycleVariant variant) {
  if (t0.arity() != 3 || t1.arity() != 3) throw InputError("compatible cocycles need ternary operations");
  require_shape(psi0, t0, 3, "compatible cocycle check");
  require_shape(psi1, t1, 3, "compatible cocycle check");
  require_same_coeff(psi0, psi1);
  return check_laws({compat_law(t0, t1, 0, variant), compat_law(t0, t1, 1, variant)}, t0.size(),
                    {&psi0, &psi1});
}

std::optional<std::uint64_t> CocycleSpace::count() const {
  std::uint64_t c = 1;
  for (auto o : orders) {
    if (o != 0 && c > (std::uint64_t{1} << 63) / o) return std::nullopt;
    c *= o;
  }
  return c;
}

std::vector<Cochain> CocycleSpace::element(const std::vector<std::uint64_t>& c) const {
  if (generators.empty()) return {};
  if (c.size() != generators.size()) throw InputError("wrong number of coordinates");
  std::vector<Cochain> out;
  for (const auto& g : generators.front()) out.push_back(zero_cochain(g.size(), g.nargs(), coeff));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::uint64_t rep = 0; rep < c[i] % orders[i]; ++rep)
      for (std::size_t s = 0; s < out.size(); ++s) out[s] = out[s] + generators[i][s];
  return out;
}

std::vector<std::vector<Cochain>> CocycleSpace::elements(std::uint64_t limit) const {
  auto n = count();
  if (!n || *n > limit) throw InputError("cocycle space too large to list");
  std::vector<std::vector<Cochain>> out;
  std::vector<std::uint64_t> c(orders.size(), 0);
  for (std::uint64_t i = 0; i < *n; ++i) {
    out.push_back(element(c));
    for (std::size_t k = c.size(); k-- > 0;) {
      if (++c[k] < orders[k]) break;
      c[k] = 0;
    }
  }
  return out;
}

CocycleSpace solve_2cocycles(const OpTable& op, const AbGroup& coeff) {
  return solve_system(op.size(), {op.arity()}, coeff, {two_cocycle_law(op)});
}

CocycleSpace solve_mutual_cocycle_pairs(const OpTable& op0, const OpTable& op1, const AbGroup& coeff) {
  if (op0.arity() != 2 || op1.arity() != 2) throw InputError("mutual cocycles need binary operations");
  if (op0.size() != op1.size()) throw InputError("operations act on carriers of different size");
  return solve_system(op0.size(), {2, 2}, coeff,
                      {two_cocycle_law(op0, 0), two_cocycle_law(op1, 1), mutual_law(op0, op1, 0),
                       mutual_law(op0, op1, 1)});
}

CocycleSpace solve_compatible_cocycle_pairs(const OpTable& t0, const OpTable& t1, const AbGroup& coeff,
                                            CocycleVariant variant) {
  if (t0.arity() != 3 || t1.arity() != 3) throw InputError("compatible cocycles need ternary operations");
  if (t0.size() != t1.size()) throw InputError("operations act on carriers of different size");
  return solve_system(t0.size(), {3, 3}, coeff,
                      {two_cocycle_law(t0, 0), two_cocycle_law(t1, 1), compat_law(t0, t1, 0, variant),
                       compat_law(t0, t1, 1, variant)});
}

OpTable extend(const OpTable& op, const Cochain& f, Verify verify) {
  require_shape(f, op, op.arity(), "extension");
  if (verify == Verify::checked) require(is_2cocycle(f, op), "cochain is not a 2-cocycle of the operation");
  const AbGroup& a = f.coeff();
  std::uint64_t q = a.order(), n = op.size(), k = op.arity();
  std::uint64_t m = n * q;
  if (checked_power(m, k) > (std::uint64_t{1} << 28)) throw InputError("extension table too large");
  // Addition table of A on element indices, and f as indices.
  std::vector<std::uint64_t> plus(q * q);
  for (std::uint64_t i = 0; i < q; ++i)
    for (std::uint64_t j = 0; j < q; ++j) plus[i * q + j] = a.index(a.add(a.element(i), a.element(j)));
  std::vector<std::uint64_t> fv(f.tuples());
  for (std::uint64_t t = 0; t < f.tuples(); ++t) fv[t] = f.value_index(t);

  std::vector<Element> table(checked_power(m, k));
  std::vector<Element> e(k, 0);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    std::uint64_t base = 0;
    for (auto v : e) base = base * n + v / q;
    table[i] = static_cast<Element>(op.at_index(base) * q + plus[(e[0] % q) * q + fv[base]]);
    advance_tuple(e, static_cast<Element>(m));
  }
  nlohmann::json prov = {{"construction", "extension"},
                         {"encoding", "(x, a) -> x * |A| + index(a)"},
                         {"base", {{"size", n}, {"arity", k}, {"table", op.table()}}},
                         {"fiber", a.factors()},
                         {"cocycle", cochain_json(f)}};
  return OpTable(m, k, std::move(table), std::move(prov));
}

std::pair<OpTable, OpTable> extend_mutual_pair(const OpTable& op0, const OpTable& op1, const Cochain& phi0,
                                               const Cochain& phi1, Verify verify) {
  if (verify == Verify::checked) {
    require(are_mutually_distributive(op0, op1), "operations are not mutually distributive");
    require(is_2cocycle(phi0, op0), "first cochain is not a 2-cocycle");
    require(is_2cocycle(phi1, op1), "second cochain is not a 2-cocycle");
    require(are_mutually_distributive_cocycles(phi0, phi1, op0, op1), "cocycles are not mutually distributive");
  }
  return {extend(op0, phi0, Verify::unchecked), extend(op1, phi1, Verify::unchecked)};
}

Cochain extension_cocycle(const OpTable& e, const OpTable& base, const AbGroup& a) {
  std::uint64_t q = a.order(), n = base.size(), k = base.arity();
  if (e.arity() != k || e.size() != n * q) throw InputError("table is not an extension of the base by this fiber");
  Cochain f(n, k, a);
  std::vector<Element> t(k, 0), lifted(k);
  for (std::uint64_t i = 0; i < f.tuples(); ++i) {
    for (std::size_t j = 0; j < k; ++j) lifted[j] = static_cast<Element>(t[j] * q);
    Element v = e(lifted);
    f.set_value(i, a.element(v % q));
    advance_tuple(t, static_cast<Element>(n));
  }
  // Every entry must be (W(x, ...), a + f(x, ...)).
  std::uint64_t m = n * q;
  std::vector<Element> u(k, 0);
  for (std::uint64_t i = 0; i < e.table().size(); ++i) {
    std::uint64_t b = 0;
    for (auto v : u) b = b * n + v / q;
    Element got = e.at_index(i);
    std::uint64_t want_fiber = a.index(a.add(a.element(u[0] % q), f.value(b)));
    if (got / q != base.at_index(b) || got % q != want_fiber)
      throw InputError("table is not of extension form at index " + std::to_string(i));
    advance_tuple(u, static_cast<Element>(m));
  }
  return f;
}

Cochain ternary_cocycle_from_pair(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                                  const OpTable& op1, Verify verify) {
  require_shape(phi0, op0, 2, "ternary cocycle from pair");
  require_shape(phi1, op1, 2, "ternary cocycle from pair");
  require_same_coeff(phi0, phi1);
  if (verify == Verify::checked) {
    require(is_2cocycle(phi0, op0), "first cochain is not a 2-cocycle");
    require(is_2cocycle(phi1, op1), "second cochain is not a 2-cocycle");
    require(are_mutually_distributive_cocycles(phi0, phi1, op0, op1), "cocycles are not mutually distributive");
  }
  std::uint64_t n = op0.size();
  std::size_t r = phi0.coeff().rank();
  Cochain psi(n, 3, phi0.coeff());
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y)
      for (std::uint64_t z = 0; z < n; ++z)
        for (std::size_t j = 0; j < r; ++j)
          psi.set((x * n + y) * n + z, j,
                  phi0.at(x * n + y, j) + phi1.at(op0.at_index(x * n + y) * n + z, j));
  return psi;
}

Cochain binary_cocycle_from_ternary_pair(const Cochain& psi0, const Cochain& psi1, const OpTable& t0,
                                         const OpTable& t1, Verify verify) {
  require_shape(psi0, t0, 3, "binary cocycle from ternary pair");
  require_shape(psi1, t1, 3, "binary cocycle from ternary pair");
  require_same_coeff(psi0, psi1);
  if (verify == Verify::checked) {
    require(is_2cocycle(psi0, t0), "first cochain is not a 2-cocycle");
    require(is_2cocycle(psi1, t1), "second cochain is not a 2-cocycle");
    require(are_compatible_ternary_cocycles(psi0, psi1, t0, t1), "cocycles are not compatible");
  }
  std::uint64_t n = t0.size(), n2 = n * n;
  std::size_t r = psi0.coeff().rank();
  Cochain phi(n2, 2, psi0.coeff());
  for (std::uint64_t x0 = 0; x0 < n; ++x0)
    for (std::uint64_t x1 = 0; x1 < n; ++x1)
      for (std::uint64_t y = 0; y < n2; ++y)
        for (std::size_t j = 0; j < r; ++j)
          phi.set((x0 * n + x1) * n2 + y, j, psi0.at(x0 * n2 + y, j) + psi1.at(x1 * n2 + y, j));
  return phi;
}

Cochain doubled_binary_cocycle(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                               const OpTable& op1, Verify verify) {
  require_shape(phi0, op0, 2, "doubled binary cocycle");
  require_shape(phi1, op1, 2, "doubled binary cocycle");
  require_same_coeff(phi0, phi1);
  if (verify == Verify::checked) {
    require(is_2cocycle(phi0, op0), "first cochain is not a 2-cocycle");
    require(is_2cocycle(phi1, op1), "second cochain is not a 2-cocycle");
    require(are_mutually_distributive_cocycles(phi0, phi1, op0, op1), "cocycles are not mutually distributive");
  }
  std::uint64_t n = op0.size(), n2 = n * n;
  std::size_t r = phi0.coeff().rank();
  Cochain phi(n2, 2, phi0.coeff());
  auto half = [&](std::uint64_t x, std::uint64_t y0, std::uint64_t y1, std::size_t j) {
    return phi0.at(x * n + y0, j) + phi1.at(op0.at_index(x * n + y0) * n + y1, j);
  };
  for (std::uint64_t x0 = 0; x0 < n; ++x0)
    for (std::uint64_t x1 = 0; x1 < n; ++x1)
      for (std::uint64_t y0 = 0; y0 < n; ++y0)
        for (std::uint64_t y1 = 0; y1 < n; ++y1)
          for (std::size_t j = 0; j < r; ++j)
            phi.set((x0 * n + x1) * n2 + y0 * n + y1, j, half(x0, y0, y1, j) + half(x1, y0, y1, j));
  return phi;
}

Cochain doubled_binary_cocycle_via_functors(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                                            const OpTable& op1) {
  OpTable t = f_functor(op0, op1, Verify::unchecked);
  Cochain psi = ternary_cocycle_from_pair(phi0, phi1, op0, op1, Verify::unchecked);
  return binary_cocycle_from_ternary_pair(psi, psi, t, t, Verify::unchecked);
}

Cochain doubled_ternary_cocycle(const Cochain& psi0, const Cochain& psi1, const OpTable& t0, const OpTable& t1,
                                Verify verify) {
  require_shape(psi0, t0, 3, "doubled ternary cocycle");
  require_shape(psi1, t1, 3, "doubled ternary cocycle");
  require_same_coeff(psi0, psi1);
  if (verify == Verify::checked) {
    require(is_2cocycle(psi0, t0), "first cochain is not a 2-cocycle");
    require(is_2cocycle(psi1, t1), "second cochain is not a 2-cocycle");
    require(are_compatible_ternary_cocycles(psi0, psi1, t0, t1), "cocycles are not compatible");
  }
  std::uint64_t n = t0.size(), n2 = n * n;
  std::size_t r = psi0.coeff().rank();
  Cochain psi(n2, 3, psi0.coeff());
  std::vector<Element> u(6, 0);  // x0 x1 y0 y1 z0 z1
  for (std::uint64_t i = 0; i < psi.tuples(); ++i) {
    std::uint64_t x0 = u[0], x1 = u[1], y = u[2] * n + u[3], z = u[4] * n + u[5];
    std::uint64_t a0 = t0.at_index(x0 * n2 + y), a1 = t1.at_index(x1 * n2 + y);
    for (std::size_t j = 0; j < r; ++j)
      psi.set(i, j,
              psi0.at(x0 * n2 + y, j) + psi1.at(x1 * n2 + y, j) + psi0.at(a0 * n2 + z, j) +
                  psi1.at(a1 * n2 + z, j));
    advance_tuple(u, static_cast<Element>(n));
  }
  return psi;
}

Cochain doubled_ternary_cocycle_via_functors(const Cochain& psi0, const Cochain& psi1, const OpTable& t0,
                                             const OpTable& t1) {
  OpTable g = g_functor(t0, t1, Verify::unchecked);
  Cochain phi = binary_cocycle_from_ternary_pair(psi0, psi1, t0, t1, Verify::unchecked);
  return ternary_cocycle_from_pair(phi, phi, g, g, Verify::unchecked);
}

Cochain power_cocycle(const Cochain& phi, const OpTable& op, std::size_t n, Verify verify) {
  require_shape(phi, op, op.arity(), "power cocycle");
  if (verify == Verify::checked) require(is_2cocycle(phi, op), "cochain is not a 2-cocycle");
  std::uint64_t size = op.size(), stride = checked_power(size, op.arity() - 1);
  std::size_t r = phi.coeff().rank();
  Cochain out(size, op.arity(), phi.coeff());
  for (std::uint64_t x = 0; x < size; ++x)
    for (std::uint64_t tail = 0; tail < stride; ++tail) {
      std::uint64_t cur = x;
      std::vector<std::uint64_t> acc(r, 0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) acc[j] += phi.at(cur * stride + tail, j);
        cur = op.at_index(cur * stride + tail);
      }
      for (std::size_t j = 0; j < r; ++j) out.set(x * stride + tail, j, acc[j]);
    }
  return out;
}

void validate_ses(const Ses& s) {
  std::uint64_t nh = s.h.order(), ne = s.e.order(), na = s.a.order();
  if (s.inclusion.size() != nh || s.projection.size() != ne || s.section.size() != na)
    throw InputError("exact sequence maps have the wrong lengths");
  for (auto v : s.inclusion)
    if (v >= ne) throw InputError("inclusion value out of range");
  for (auto v : s.projection)
    if (v >= na) throw InputError("projection value out of range");
  for (auto v : s.section)
    if (v >= ne) throw InputError("section value out of range");
  auto eadd = [&](std::uint64_t x, std::uint64_t y) { return s.e.index(s.e.add(s.e.element(x), s.e.element(y))); };
  for (std::uint64_t i = 0; i < nh; ++i)
    for (std::uint64_t j = 0; j < nh; ++j)
      if (s.inclusion[s.h.index(s.h.add(s.h.element(i), s.h.element(j)))] != eadd(s.inclusion[i], s.inclusion[j]))
        throw InputError("inclusion is not a homomorphism");
  for (std::uint64_t i = 0; i < ne; ++i)
    for (std::uint64_t j = 0; j < ne; ++j)
      if (s.projection[eadd(i, j)] != s.a.index(s.a.add(s.a.element(s.projection[i]), s.a.element(s.projection[j]))))
        throw InputError("projection is not a homomorphism");
  std::vector<char> hit(ne, 0);
  for (auto v : s.inclusion) {
    if (hit[v]) throw InputError("inclusion is not injective");
    hit[v] = 1;
    if (s.projection[v] != 0) throw InputError("projection does not kill the image of the inclusion");
  }
  std::uint64_t kernel = 0;
  for (std::uint64_t i = 0; i < ne; ++i) kernel += s.projection[i] == 0;
  if (kernel != nh) throw InputError("sequence is not exact in the middle");
  for (std::uint64_t a = 0; a < na; ++a)
    if (s.projection[s.section[a]] != a) throw InputError("section is not a splitting of the projection");
  if (s.section[0] != 0) throw InputError("section is not normalized");
}

Ses cyclic_ses(std::uint64_t h, std::uint64_t a) {
  Ses s{AbGroup::cyclic(h), AbGroup::cyclic(h * a), AbGroup::cyclic(a), {}, {}, {}};
  for (std::uint64_t i = 0; i < h; ++i) s.inclusion.push_back(i * a);
  for (std::uint64_t e = 0; e < h * a; ++e) s.projection.push_back(e % a);
  for (std::uint64_t i = 0; i < a; ++i) s.section.push_back(i);
  return s;
}

Cochain three_cocycle_from_ses(const Cochain& phi, const OpTable& t, const Ses& ses, Verify verify) {
  if (t.arity() != 3) throw InputError("three-cocycle construction needs a ternary operation");
  require_shape(phi, t, 3, "three-cocycle construction");
  if (!(phi.coeff() == ses.a)) throw InputError("cocycle coefficients differ from the quotient of the sequence");
  if (verify == Verify::checked) {
    validate_ses(ses);
    require(is_2cocycle(phi, t), "cochain is not a 2-cocycle");
  }
  std::uint64_t n = t.size(), ne = ses.e.order();
  std::vector<std::uint64_t> from_e(ne, UINT64_MAX);
  for (std::uint64_t i = 0; i < ses.inclusion.size(); ++i) from_e[ses.inclusion[i]] = i;
  // s phi as elements of E, by argument index.
  std::vector<AbGroup::Value> sphi(phi.tuples());
  for (std::uint64_t i = 0; i < phi.tuples(); ++i) sphi[i] = ses.e.element(ses.section[phi.value_index(i)]);
  auto op = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) { return t.at_index((a * n + b) * n + c); };
  auto id3 = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) { return (a * n + b) * n + c; };

  Cochain alpha(n, 5, ses.h);
  std::vector<Element> x(5, 0);
  for (std::uint64_t i = 0; i < alpha.tuples(); ++i) {
    std::uint64_t t145 = op(x[0], x[3], x[4]), t245 = op(x[1], x[3], x[4]), t345 = op(x[2], x[3], x[4]);
    std::uint64_t t123 = op(x[0], x[1], x[2]);
    AbGroup::Value v = ses.e.add(sphi[id3(x[0], x[1], x[2])], sphi[id3(t123, x[3], x[4])]);
    v = ses.e.sub(v, sphi[id3(t145, t245, t345)]);
    v = ses.e.sub(v, sphi[id3(x[0], x[3], x[4])]);
    std::uint64_t h = from_e[ses.e.index(v)];
    if (h == UINT64_MAX)
      throw std::logic_error("three-cocycle value does not lie in the subgroup (broken sequence or cocycle)");
    alpha.set_value(i, ses.h.element(h));
    advance_tuple(x, static_cast<Element>(n));
  }
  return alpha;
}

CheckResult is_cocycle_of_degree(const Cochain& f, const OpTable& op, std::size_t n) {
  if (n == 0) throw InputError("degree must be at least 1");
  std::size_t k = op.arity(), w = k - 1;
  require_shape(f, op, 1 + (n - 1) * w, "cocycle check");
  std::size_t len = 1 + n * w;
  std::uint64_t size = op.size();
  return scan_condition(size, len, 0, {&f}, [&](const std::vector<Element>& t, auto& add) {
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t start = 1 + (i - 1) * w;
      std::uint64_t tail = 0, stride = 1;
      for (std::size_t q = 0; q < w; ++q) {
        tail = tail * size + t[start + q];
        stride *= size;
      }
      std::uint64_t acted = 0, deleted = 0;
      for (std::size_t p = 0; p < len; ++p) {
        if (p >= start && p < start + w) continue;
        Element v = t[p];
        deleted = deleted * size + v;
        acted = acted * size + (p < start ? op.at_index(v * stride + tail) : v);
      }
      int sign = (i % 2) ? -1 : 1;
      add(0, acted, sign);
      add(0, deleted, -sign);
    }
  });
}

ExtensionEquivalence extension_equivalent(const OpTable& e1, const OpTable& e2, const OpTable& base,
                                          const AbGroup& a, std::uint64_t full_limit) {
  Cochain f1 = extension_cocycle(e1, base, a), f2 = extension_cocycle(e2, base, a);
  std::uint64_t q = a.order(), n = base.size(), k = base.arity();
  std::uint64_t stride = checked_power(n, k - 1);
  std::vector<std::uint64_t> v1(f1.tuples()), v2(f2.tuples());
  for (std::uint64_t i = 0; i < v1.size(); ++i) {
    v1[i] = f1.value_index(i);
    v2[i] = f2.value_index(i);
  }
  std::vector<std::uint64_t> plus(q * q);
  for (std::uint64_t i = 0; i < q; ++i)
    for (std::uint64_t j = 0; j < q; ++j) plus[i * q + j] = a.index(a.add(a.element(i), a.element(j)));

  // sigma[x][b] is the fiber bijection over x.  f(x, b) = (x, sigma_x(b)) is
  // an isomorphism iff sigma_{W(x,y)}(b + f1(x,y)) = sigma_x(b) + f2(x,y).
  auto is_iso = [&](const std::vector<std::vector<std::uint64_t>>& sigma) {
    for (std::uint64_t t = 0; t < v1.size(); ++t) {
      std::uint64_t x = t / stride, wx = base.at_index(t);
      for (std::uint64_t b = 0; b < q; ++b)
        if (sigma[wx][plus[b * q + v1[t]]] != plus[sigma[x][b] * q + v2[t]]) return false;
    }
    return true;
  };
  auto to_map = [&](const std::vector<std::vector<std::uint64_t>>& sigma) {
    std::vector<Element> m(n * q);
    for (std::uint64_t x = 0; x < n; ++x)
      for (std::uint64_t b = 0; b < q; ++b) m[x * q + b] = static_cast<Element>(x * q + sigma[x][b]);
    return m;
  };

  ExtensionEquivalence out;
  std::uint64_t fact = 1;
  for (std::uint64_t i = 2; i <= q; ++i) fact *= i;
  bool full = true;
  std::uint64_t candidates = 1;
  for (std::uint64_t x = 0; x < n && full; ++x) {
    if (candidates > full_limit / fact) full = false;
    candidates *= fact;
  }
  if (full) {
    out.method = "full";
    std::vector<std::uint64_t> id(q);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<std::uint64_t>> perms;
    do perms.push_back(id);
    while (std::next_permutation(id.begin(), id.end()));
    std::vector<std::size_t> choice(n, 0);
    std::vector<std::vector<std::uint64_t>> sigma(n);
    for (std::uint64_t c = 0; c < candidates; ++c) {
      for (std::uint64_t x = 0; x < n; ++x) sigma[x] = perms[choice[x]];
      if (is_iso(sigma)) {
        out.equivalent = true;
        out.map = to_map(sigma);
        return out;
      }
      for (std::size_t x = n; x-- > 0;) {
        if (++choice[x] < perms.size()) break;
        choice[x] = 0;
      }
    }
    return out;
  }

  out.method = "translations";
  std::uint64_t total = checked_power(q, n);
  if (total > 50'000'000) throw InputError("translation search over " + std::to_string(total) + " candidates");
  std::vector<std::vector<std::uint64_t>> sigma(n, std::vector<std::uint64_t>(q));
  std::vector<std::uint64_t> eta(n, 0);
  for (std::uint64_t c = 0; c < total; ++c) {
    for (std::uint64_t x = 0; x < n; ++x)
      for (std::uint64_t b = 0; b < q; ++b) sigma[x][b] = plus[b * q + eta[x]];
    if (is_iso(sigma)) {
      out.equivalent = true;
      out.map = to_map(sigma);
      return out;
    }
    for (std::size_t x = n; x-- > 0;) {
      if (++eta[x] < q) break;
      eta[x] = 0;
    }
  }
  return out;
}

Cochain coboundary_of(const Cochain& eta, const OpTable& op) {
  if (eta.nargs() != 1 || eta.size() != op.size()) throw InputError("coboundary needs a 1-cochain on the carrier");
  std::uint64_t stride = checked_power(op.size(), op.arity() - 1);
  std::size_t r = eta.coeff().rank();
  Cochain out(op.size(), op.arity(), eta.coeff());
  for (std::uint64_t t = 0; t < out.tuples(); ++t)
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t d = eta.coeff().factors()[j];
      out.set(t, j, eta.at(t / stride, j) + d - eta.at(op.at_index(t), j));
    }
  return out;
}

std::optional<Cochain> cocycles_cohomologous(const Cochain& psi1, const Cochain& psi2, const OpTable& op) {
  require_shape(psi1, op, op.arity(), "cohomology test");
  require_shape(psi2, op, op.arity(), "cohomology test");
  require_same_coeff(psi1, psi2);
  Cochain diff = psi1 - psi2;
  std::uint64_t n = op.size(), stride = checked_power(n, op.arity() - 1);
  const AbGroup& g = psi1.coeff();
  Cochain eta(n, 1, g);
  for (std::size_t j = 0; j < g.rank(); ++j) {
    std::uint64_t d = g.factors()[j];
    if (d == 1) continue;
    std::vector<SparseRow> rows;
    std::vector<std::int64_t> rhs;
    for (std::uint64_t t = 0; t < diff.tuples(); ++t) {
      rows.push_back({{static_cast<std::uint32_t>(t / stride), 1}, {static_cast<std::uint32_t>(op.at_index(t)), -1}});
      rhs.push_back(static_cast<std::int64_t>(diff.at(t, j)));
    }
    auto x = solve_particular(n, d, rows, rhs);
    if (!x) return std::nullopt;
    for (std::uint64_t i = 0; i < n; ++i) eta.set(i, j, (*x)[i]);
  }
  return eta;
}

DigitExtension digit_extension(std::uint64_t p, unsigned m) {
  if (p < 2 || m < 1) throw InputError("digit extension needs p >= 2 and m >= 1");
  std::uint64_t pm = checked_power(p, m), pm1 = pm * p;
  if (pm1 > 4096) throw InputError("digit extension carrier too large");
  auto t = static_cast<std::int64_t>(1) - 2 * static_cast<std::int64_t>(p);
  auto s = static_cast<std::int64_t>(p);
  DigitExtension d;
  d.p = p;
  d.m = m;
  d.base = affine_op(pm, 3, {t, s});
  d.total = affine_op(pm1, 3, {t, s});
  auto mod = static_cast<std::int64_t>(pm1);
  d.psi = tabulate_cochain(pm, 3, AbGroup::cyclic(p), [&](const std::vector<Element>& a) {
    std::int64_t v = (t * a[0] + s * a[1] + s * a[2]) % mod;
    if (v < 0) v += mod;
    return std::vector<std::int64_t>{v / static_cast<std::int64_t>(pm)};
  });
  return d;
}

Chain digit_cycle(std::uint64_t p, unsigned m, std::uint64_t r) {
  std::uint64_t pm = checked_power(p, m), low = checked_power(p, m - 1);
  if (r >= low) throw InputError("r must lie in Z/p^(m-1)");
  std::uint64_t w = (pm - r % pm + 2 * r * p + low) % pm;
  return {{1, {0, static_cast<Element>(r % pm), static_cast<Element>(r % pm)}},
          {1, {static_cast<Element>(2 * r * p % pm), static_cast<Element>(w), static_cast<Element>(w)}}};
}

bool is_cycle(const Chain& c, const OpTable& op) {
  std::size_t w = op.arity() - 1;
  std::uint64_t size = op.size();
  std::map<Tuple, std::int64_t> sum;
  for (const auto& [coef, t] : c) {
    if (t.empty() || (t.size() - 1) % w != 0) throw InputError("chain generator has the wrong length");
    std::size_t n = 1 + (t.size() - 1) / w;
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t start = 1 + (i - 1) * w;
      std::uint64_t tail = 0, stride = 1;
      for (std::size_t q = 0; q < w; ++q) {
        tail = tail * size + t[start + q];
        stride *= size;
      }
      Tuple acted, deleted;
      for (std::size_t p = 0; p < t.size(); ++p) {
        if (p >= start && p < start + w) continue;
        deleted.push_back(t[p]);
        acted.push_back(p < start ? op.at_index(t[p] * stride + tail) : t[p]);
      }
      std::int64_t sign = (i % 2) ? -1 : 1;
      sum[acted] += sign * coef;
      sum[deleted] -= sign * coef;
    }
  }
  for (const auto& [t, v] : sum)
    if (v != 0) return false;
  return true;
}

AbGroup::Value evaluate_on_chain(const Cochain& f, const Chain& c) {
  const AbGroup& g = f.coeff();
  std::vector<std::int64_t> acc(g.rank(), 0);
  for (const auto& [coef, t] : c) {
    if (t.size() != f.nargs()) throw InputError("chain and cochain degrees differ");
    auto v = f.value(t);
    for (std::size_t j = 0; j < g.rank(); ++j) {
      auto d = static_cast<std::int64_t>(g.factors()[j]);
      acc[j] = (acc[j] + (coef % d + d) % d * static_cast<std::int64_t>(v[j])) % d;
    }
  }
  return g.reduce(acc);
}

}  // namespace sdops
