#include "sdops/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include "sdops/scan.hpp"

namespace sdops {

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw InputError("tuple space too large to index");
    r *= base;
  }
  return r;
}

std::uint64_t encode_tuple(std::span<const Element> digits, std::uint64_t radix) {
  std::uint64_t idx = 0;
  for (Element d : digits) idx = idx * radix + d;
  return idx;
}

void decode_tuple(std::uint64_t index, std::uint64_t radix, std::span<Element> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Element>(index % radix);
    index /= radix;
  }
}

Tuple decode_tuple(std::uint64_t index, std::uint64_t radix, std::size_t length) {
  Tuple t(length);
  decode_tuple(index, radix, t);
  return t;
}

OpTable::OpTable(std::size_t size, std::size_t arity, std::vector<Element> table,
                 nlohmann::json provenance)
    : size_(size), arity_(arity), table_(std::move(table)), provenance_(std::move(provenance)) {
  if (size == 0) throw InputError("carrier size must be positive");
  if (arity < 2) throw InputError("arity must be at least 2");
  std::uint64_t expected = checked_power(size, arity);
  if (table_.size() != expected)
    throw InputError("table length " + std::to_string(table_.size()) + " != " +
                     std::to_string(size) + "^" + std::to_string(arity) + " = " +
                     std::to_string(expected));
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] >= size)
      throw InputError("entry " + std::to_string(table_[i]) + " at index " + std::to_string(i) +
                       " out of range for size " + std::to_string(size));
}

OpTable make_op_table(std::size_t size, std::size_t arity, std::vector<Element> entries) {
  return OpTable(size, arity, std::move(entries));
}

Element evaluate(const OpTable& op, std::span<const Element> args) {
  if (args.size() != op.arity())
    throw InputError("expected " + std::to_string(op.arity()) + " arguments, got " +
                     std::to_string(args.size()));
  for (Element a : args)
    if (a >= op.size()) throw InputError("argument " + std::to_string(a) + " out of range");
  return op(args);
}

namespace {

// Law 0 of the exchange between wm and wn at t = (x, y, z), y in X^(m-1),
// z in X^(n-1): wn(wm(x, y), z) against wm(wn(x, z), wn(y_1, z), ...).
struct ExchangeEval {
  const OpTable& wm;
  const OpTable& wn;
  void operator()(const std::vector<Element>& t, Element& lhs, Element& rhs) const {
    std::size_t m = wm.arity(), n = wn.arity();
    std::uint64_t size = wn.size();
    std::uint64_t zidx = 0, stride = 1;
    for (std::size_t i = m; i < m + n - 1; ++i) {
      zidx = zidx * size + t[i];
      stride *= size;
    }
    std::uint64_t inner = 0;
    for (std::size_t i = 0; i < m; ++i) inner = inner * size + t[i];
    lhs = wn.at_index(wm.at_index(inner) * stride + zidx);
    std::uint64_t outer = 0;
    for (std::size_t i = 0; i < m; ++i) outer = outer * size + wn.at_index(t[i] * stride + zidx);
    rhs = wm.at_index(outer);
  }
};

}  // namespace

CheckResult is_nary_distributive(const OpTable& op) {
  return check_identity(op.size(), 2 * op.arity() - 1, 0, ExchangeEval{op, op});
}

CheckResult sample_nary_distributive(const OpTable& op, std::uint64_t samples,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(op.size() - 1));
  std::vector<Element> t(2 * op.arity() - 1);
  ExchangeEval eval{op, op};
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& e : t) e = pick(rng);
    Element l, r;
    eval(t, l, r);
    if (l != r) return {false, Counterexample{t, l, r, 0}};
  }
  return {};
}

std::vector<Element> translation(const OpTable& op, std::span<const Element> tail) {
  if (tail.size() + 1 != op.arity()) throw InputError("translation tail has wrong length");
  std::vector<Element> map(op.size());
  std::vector<Element> args(op.arity());
  std::copy(tail.begin(), tail.end(), args.begin() + 1);
  for (Element x = 0; x < op.size(); ++x) {
    args[0] = x;
    map[x] = op(args);
  }
  return map;
}

bool is_permutation(std::span<const Element> map) {
  std::vector<char> seen(map.size(), 0);
  for (Element v : map) {
    if (v >= map.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::vector<Element> inverse_translation(const OpTable& op, std::span<const Element> tail) {
  auto map = translation(op, tail);
  if (!is_permutation(map)) {
    Tuple w(tail.begin(), tail.end());
    throw HypothesisError("translation is not a bijection", Counterexample{w, 0, 0, 0});
  }
  std::vector<Element> inv(map.size());
  for (Element x = 0; x < map.size(); ++x) inv[map[x]] = x;
  return inv;
}

bool all_translations_bijective(const OpTable& op) {
  std::size_t n = op.size();
  std::uint64_t tails = checked_power(n, op.arity() - 1);
  std::vector<char> seen(n);
  for (std::uint64_t t = 0; t < tails; ++t) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint64_t x = 0; x < n; ++x) {
      Element v = op.at_index(x * tails + t);
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_rack(const OpTable& op) {
  return all_translations_bijective(op) && is_nary_distributive(op).holds;
}

bool is_quandle(const OpTable& op) {
  std::vector<Element> diag(op.arity());
  for (Element x = 0; x < op.size(); ++x) {
    std::fill(diag.begin(), diag.end(), x);
    if (op(diag) != x) return false;
  }
  return is_rack(op);
}

CheckResult exchange_law(const OpTable& wm, const OpTable& wn, int law) {
  if (wm.size() != wn.size()) throw InputError("operations act on carriers of different size");
  if (law == 0)
    return check_identity(wm.size(), wm.arity() + wn.arity() - 1, 0, ExchangeEval{wm, wn});
  if (law == 1)
    return check_identity(wm.size(), wm.arity() + wn.arity() - 1, 1, ExchangeEval{wn, wm});
  throw InputError("exchange law index must be 0 or 1");
}

CheckResult are_mutually_distributive(const OpTable& wm, const OpTable& wn) {
  auto first = exchange_law(wm, wn, 0);
  if (!first) return first;
  return exchange_law(wm, wn, 1);
}

CheckResult are_compatible_ternary(const OpTable& t0, const OpTable& t1) {
  if (t0.arity() != 3 || t1.arity() != 3) throw InputError("compatibility needs ternary operations");
  if (t0.size() != t1.size()) throw InputError("operations act on carriers of different size");
  auto law = [&](const OpTable& outer, int index) {
    return check_identity(t0.size(), 5, index,
                          [&](const std::vector<Element>& t, Element& l, Element& r) {
                            Element x = t[0], y0 = t[1], y1 = t[2], z0 = t[3], z1 = t[4];
                            l = outer({outer({x, y0, y1}), z0, z1});
                            r = outer({outer({x, z0, z1}), t0({y0, z0, z1}), t1({y1, z0, z1})});
                          });
  };
  auto first = law(t0, 0);
  if (!first) return first;
  return law(t1, 1);
}

OpTable relabel(const OpTable& op, std::span<const Element> perm) {
  if (perm.size() != op.size() || !is_permutation(perm)) throw InputError("relabel needs a permutation");
  std::vector<Element> out(op.table().size());
  std::vector<Element> args(op.arity()), img(op.arity());
  for (std::uint64_t i = 0; i < out.size(); ++i) {
    decode_tuple(i, op.size(), args);
    for (std::size_t j = 0; j < args.size(); ++j) img[j] = perm[args[j]];
    out[encode_tuple(img, op.size())] = perm[op.at_index(i)];
  }
  return OpTable(op.size(), op.arity(), std::move(out));
}

std::optional<std::vector<Element>> find_isomorphism(const OpTable& a, const OpTable& b) {
  if (a.size() != b.size() || a.arity() != b.arity()) return std::nullopt;
  std::size_t n = a.size(), k = a.arity();
  constexpr Element unset = ~Element{0};
  std::vector<Element> f(n, unset), finv(n, unset);

  // Cheap invariant: number of fixed points of the diagonal.
  auto diag_profile = [&](const OpTable& op) {
    std::vector<std::size_t> counts(n, 0);
    std::vector<Element> d(k);
    for (Element x = 0; x < n; ++x) {
      std::fill(d.begin(), d.end(), x);
      counts[op(d)]++;
    }
    std::sort(counts.begin(), counts.end());
    return counts;
  };
  if (diag_profile(a) != diag_profile(b)) return std::nullopt;

  // After assigning f on {0..i}, every tuple over {0..i} that uses i must map
  // consistently wherever its value is already assigned.
  std::vector<Element> args(k), img(k);
  auto consistent = [&](Element i) {
    std::uint64_t total = checked_power(i + 1, k);
    for (std::uint64_t t = 0; t < total; ++t) {
      decode_tuple(t, i + 1, args);
      if (std::find(args.begin(), args.end(), i) == args.end()) continue;
      for (std::size_t j = 0; j < k; ++j) img[j] = f[args[j]];
      Element va = a(args), vb = b(img);
      if (f[va] != unset) {
        if (f[va] != vb) return false;
      } else if (finv[vb] != unset) {
        return false;
      }
    }
    return true;
  };
  std::function<bool(Element)> go = [&](Element i) {
    if (i == n) return true;
    for (Element c = 0; c < n; ++c) {
      if (finv[c] != unset) continue;
      f[i] = c;
      finv[c] = i;
      if (consistent(i) && go(i + 1)) return true;
      f[i] = unset;
      finv[c] = unset;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return f;
}

FiniteGroup::FiniteGroup(std::size_t size, std::vector<Element> cayley)
    : size_(size), cayley_(std::move(cayley)) {
  if (size == 0) throw InputError("group must be nonempty");
  if (cayley_.size() != size * size) throw InputError("cayley table must have size^2 entries");
  for (Element v : cayley_)
    if (v >= size) throw InputError("cayley entry out of range");
  bool found = false;
  for (Element e = 0; e < size && !found; ++e) {
    bool ok = true;
    for (Element a = 0; a < size && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InputError("cayley table has no identity");
  for (Element a = 0; a < size; ++a)
    for (Element b = 0; b < size; ++b)
      for (Element c = 0; c < size; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw InputError("cayley table is not associative");
  inverse_.assign(size, 0);
  for (Element a = 0; a < size; ++a) {
    bool ok = false;
    for (Element b = 0; b < size && !ok; ++b)
      if (mul(a, b) == identity_ && mul(b, a) == identity_) {
        inverse_[a] = b;
        ok = true;
      }
    if (!ok) throw InputError("element " + std::to_string(a) + " has no inverse");
  }
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < size_; ++a)
    for (Element b = 0; b < size_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup cyclic_group(std::size_t n) {
  std::vector<Element> c(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) c[a * n + b] = static_cast<Element>((a + b) % n);
  return FiniteGroup(n, std::move(c));
}

FiniteGroup symmetric_group(std::size_t n) {
  std::vector<std::vector<Element>> perms;
  std::vector<Element> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::size_t m = perms.size();
  std::vector<Element> c(m * m);
  std::vector<Element> r(n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t i = 0; i < n; ++i) r[i] = perms[b][perms[a][i]];
      auto it = std::lower_bound(perms.begin(), perms.end(), r);
      c[a * m + b] = static_cast<Element>(it - perms.begin());
    }
  return FiniteGroup(m, std::move(c));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  std::size_t n = g.size() * h.size();
  std::vector<Element> c(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Element ga = a / h.size(), ha = a % h.size(), gb = b / h.size(), hb = b % h.size();
      c[a * n + b] = static_cast<Element>(g.mul(ga, gb) * h.size() + h.mul(ha, hb));
    }
  return FiniteGroup(n, std::move(c));
}

std::pair<bool, bool> heap_vs_core_directional(const FiniteGroup& g) {
  std::size_t n = g.size();
  std::vector<Element> core(n * n), heap(n * n * n);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      core[x * n + y] = g.mul(g.mul(y, g.inv(x)), y);
      for (Element z = 0; z < n; ++z) heap[(x * n + y) * n + z] = g.mul(g.mul(x, g.inv(y)), z);
    }
  OpTable c(n, 2, std::move(core)), h(n, 3, std::move(heap));
  return {exchange_law(c, h, 0).holds, exchange_law(c, h, 1).holds};
}

namespace {
std::atomic<std::size_t> jobs_override{0};
}

std::size_t default_jobs() {
  if (std::size_t j = jobs_override.load()) return j;
  if (const char* env = std::getenv("SDOPS_JOBS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_jobs(std::size_t jobs) { jobs_override = jobs; }

}  // namespace sdops
