#include "sdops/modsolve.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>

#include "sdops/cochain.hpp"
#include "sdops/smith.hpp"

namespace sdops {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 reduce_signed(std::int64_t v, u64 m) {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

unsigned valuation(u64 a, u64 p) {
  unsigned v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

u64 ipow(u64 p, unsigned e) {
  u64 r = 1;
  while (e--) r *= p;
  return r;
}

using URow = std::vector<std::pair<std::uint32_t, u64>>;

// Row echelon form over Z/p^e, built one row at a time.  Every stored row
// has its leading entry equal to p^v at its pivot column.
class Echelon {
 public:
  Echelon(std::size_t n, u64 p, unsigned e)
      : n_(n), p_(p), e_(e), q_(ipow(p, e)), pivot_(n, -1), acc_(n, 0), queued_(n, 0) {}

  void insert(const SparseRow& row) {
    for (auto [c, v] : row) {
      u64 r = reduce_signed(v, q_);
      if (!r) continue;
      acc_[c] = (acc_[c] + r) % q_;
      push(c);
    }
    run();
  }

  std::size_t rank() const { return rows_.size(); }
  u64 q() const { return q_; }
  const std::vector<URow>& rows() const { return rows_; }
  const std::vector<unsigned>& vals() const { return vals_; }
  const std::vector<int>& pivots() const { return pivot_; }
  bool full() const { return full_units_ == n_; }

 private:
  void push(std::uint32_t c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      heap_.push(c);
    }
  }

  void load(const URow& r) {
    for (auto [c, v] : r) {
      acc_[c] = (acc_[c] + v) % q_;
      push(c);
    }
  }

  URow drain(std::uint32_t first) {
    URow out;
    out.emplace_back(first, acc_[first]);
    acc_[first] = 0;
    while (!heap_.empty()) {
      std::uint32_t j = heap_.top();
      heap_.pop();
      queued_[j] = 0;
      if (acc_[j]) out.emplace_back(j, acc_[j]);
      acc_[j] = 0;
    }
    return out;
  }

  void run() {
    while (!heap_.empty()) {
      std::uint32_t c = heap_.top();
      heap_.pop();
      queued_[c] = 0;
      u64 a = acc_[c];
      if (!a) continue;
      unsigned w = valuation(a, p_);
      int pi = pivot_[c];
      if (pi < 0 || w < vals_[pi]) {
        URow fresh = drain(c);
        u64 unit = a / ipow(p_, w);
        u64 inv = mod_inverse(unit, q_);
        for (auto& [j, v] : fresh) v = mulmod(v, inv, q_);
        if (pi < 0) {
          pivot_[c] = static_cast<int>(rows_.size());
          rows_.push_back(std::move(fresh));
          vals_.push_back(w);
          if (w == 0) ++full_units_;
          return;
        }
        URow old = std::move(rows_[pi]);
        if (vals_[pi] == 0) --full_units_;
        rows_[pi] = std::move(fresh);
        vals_[pi] = w;
        if (w == 0) ++full_units_;
        load(old);
        continue;
      }
      u64 f = a / ipow(p_, vals_[pi]);
      for (auto [j, v] : rows_[pi]) {
        acc_[j] = (acc_[j] + q_ - mulmod(f, v, q_)) % q_;
        if (j != c) push(j);
      }
    }
  }

  std::size_t n_;
  u64 p_;
  unsigned e_;
  u64 q_;
  std::vector<int> pivot_;
  std::vector<URow> rows_;
  std::vector<unsigned> vals_;
  std::vector<u64> acc_;
  std::vector<char> queued_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
  std::size_t full_units_ = 0;
};

// Kernel of an echelon form over a prime field.
CyclicDecomposition::Part prime_kernel(const Echelon& ech, std::size_t n, u64 p) {
  std::size_t r = ech.rank();
  if (r * n > 200'000'000) throw std::length_error("linear system too large to reduce densely");
  // Dense rows sorted by pivot column.
  std::vector<std::pair<std::uint32_t, std::vector<u64>>> rows;
  rows.reserve(r);
  for (const auto& row : ech.rows()) {
    std::vector<u64> d(n, 0);
    for (auto [c, v] : row) d[c] = v;
    rows.emplace_back(row.front().first, std::move(d));
  }
  std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
  // Back substitution to reduced form.
  for (std::size_t i = r; i-- > 0;) {
    std::uint32_t c = rows[i].first;
    const auto& piv = rows[i].second;
    for (std::size_t k = 0; k < i; ++k) {
      u64 f = rows[k].second[c];
      if (!f) continue;
      auto& tgt = rows[k].second;
      for (std::size_t j = c; j < n; ++j)
        if (piv[j]) tgt[j] = (tgt[j] + p - mulmod(f, piv[j], p)) % p;
    }
  }
  std::vector<char> is_pivot(n, 0);
  for (auto& [c, _] : rows) is_pivot[c] = 1;
  CyclicDecomposition::Part part;
  part.q = p;
  part.p = p;
  part.e = 1;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> g(n, 0);
    g[f] = 1;
    for (auto& [c, d] : rows) g[c] = (p - d[f]) % p;
    std::vector<u64> sel(n, 0);
    sel[f] = 1;
    part.gens.push_back(std::move(g));
    part.coord_rows.push_back(std::move(sel));
    part.divisors.push_back(1);
    part.orders.push_back(p);
  }
  return part;
}

// Kernel over Z/p^e via column reduction of the echelon form.
CyclicDecomposition::Part prime_power_kernel(const Echelon& ech, std::size_t n, u64 p, unsigned e) {
  u64 q = ech.q();
  std::size_t r = ech.rank();
  if (n > 3000) throw std::length_error("linear system too large for prime-power reduction");
  std::vector<std::vector<u64>> a(r, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (auto [c, v] : ech.rows()[i]) a[i][c] = v;
  // Q starts as the identity; columns of Q are kept, Qinv rows are kept.
  std::vector<std::vector<u64>> qcol(n, std::vector<u64>(n, 0)), qinv(n, std::vector<u64>(n, 0));
  for (std::size_t i = 0; i < n; ++i) qcol[i][i] = qinv[i][i] = 1;
  std::vector<unsigned> vals;
  std::size_t k = 0;
  for (; k < r && k < n; ++k) {
    unsigned best = e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < r && best > 0; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (a[i][j]) {
          unsigned v = valuation(a[i][j], p);
          if (v < best) {
            best = v;
            bi = i;
            bj = j;
            if (!v) break;
          }
        }
    if (best == e) break;
    std::swap(a[k], a[bi]);
    if (bj != k) {
      for (auto& row : a) std::swap(row[k], row[bj]);
      std::swap(qcol[k], qcol[bj]);
      std::swap(qinv[k], qinv[bj]);
    }
    u64 unit = a[k][k] / ipow(p, best);
    u64 inv = mod_inverse(unit, q);
    for (std::size_t j = k; j < n; ++j) a[k][j] = mulmod(a[k][j], inv, q);
    u64 pv = ipow(p, best);
    for (std::size_t i = k + 1; i < r; ++i) {
      u64 f = a[i][k] / pv;
      if (!a[i][k]) continue;
      for (std::size_t j = k; j < n; ++j)
        if (a[k][j]) a[i][j] = (a[i][j] + q - mulmod(f, a[k][j], q)) % q;
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (!a[k][j]) continue;
      u64 f = a[k][j] / pv;
      // column j -= f * column k, in A (row k only is nonzero there), Q, and Qinv.
      a[k][j] = 0;
      for (std::size_t t = 0; t < n; ++t)
        if (qcol[k][t]) qcol[j][t] = (qcol[j][t] + q - mulmod(f, qcol[k][t], q)) % q;
      for (std::size_t t = 0; t < n; ++t)
        if (qinv[j][t]) qinv[k][t] = (qinv[k][t] + mulmod(f, qinv[j][t], q)) % q;
    }
    vals.push_back(best);
  }
  CyclicDecomposition::Part part;
  part.q = q;
  part.p = p;
  part.e = e;
  for (std::size_t j = 0; j < n; ++j) {
    unsigned v = j < vals.size() ? vals[j] : e;
    if (v == 0) continue;
    // y_j ranges over p^(e-v) Z/q, a cyclic group of order p^v.
    u64 div = ipow(p, e - v);
    std::vector<u64> g(n);
    for (std::size_t t = 0; t < n; ++t) g[t] = mulmod(div, qcol[j][t], q);
    part.gens.push_back(std::move(g));
    part.coord_rows.push_back(qinv[j]);
    part.divisors.push_back(div);
    part.orders.push_back(ipow(p, v));
  }
  return part;
}

std::vector<CyclicDecomposition::Part> kernel_parts(std::size_t n, u64 d,
                                                    const std::vector<SparseRow>& rows) {
  std::vector<CyclicDecomposition::Part> parts;
  for (auto [p, e] : factorize(d)) {
    Echelon ech(n, p, e);
    for (const auto& row : rows) {
      ech.insert(row);
      if (ech.full()) break;
    }
    auto part = e == 1 ? prime_kernel(ech, n, p) : prime_power_kernel(ech, n, p, e);
    u64 q = part.q, rest = d / q;
    part.lift = mulmod(rest % d, mod_inverse(rest % q, q), d);
    parts.push_back(std::move(part));
  }
  return parts;
}

std::uint64_t row_hash(const SparseRow& r) {
  std::uint64_t h = 1469598103934665603ull;
  for (auto [c, v] : r) {
    h = (h ^ c) * 1099511628211ull;
    h = (h ^ static_cast<std::uint64_t>(v)) * 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

ModSystem::ModSystem(std::size_t nvars, std::uint64_t modulus) : nvars_(nvars), modulus_(modulus) {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  if (modulus >= (1ull << 31)) throw std::invalid_argument("modulus too large");
}

void ModSystem::add_row(SparseRow row) {
  std::sort(row.begin(), row.end());
  SparseRow clean;
  for (auto [c, v] : row) {
    if (c >= nvars_) throw std::out_of_range("row refers to unknown " + std::to_string(c));
    std::int64_t r = static_cast<std::int64_t>(reduce_signed(v, modulus_));
    if (!clean.empty() && clean.back().first == c) {
      clean.back().second = (clean.back().second + r) % static_cast<std::int64_t>(modulus_);
    } else {
      clean.emplace_back(c, r);
    }
  }
  std::erase_if(clean, [](auto& t) { return t.second == 0; });
  if (clean.empty()) return;
  auto h = row_hash(clean);
  auto& bucket = seen_[h];
  for (auto id : bucket)
    if (rows_[id] == clean) return;
  bucket.push_back(rows_.size());
  rows_.push_back(std::move(clean));
}

CyclicDecomposition::CyclicDecomposition(std::uint64_t modulus, std::size_t dim, std::vector<Part> parts)
    : modulus_(modulus), dim_(dim), parts_(std::move(parts)) {
  for (const auto& part : parts_) {
    for (std::size_t i = 0; i < part.gens.size(); ++i) {
      std::vector<u64> g(dim);
      for (std::size_t t = 0; t < dim; ++t) g[t] = mulmod(part.gens[i][t], part.lift, modulus_);
      gens_.push_back(std::move(g));
      orders_.push_back(part.orders[i]);
    }
  }
}

std::optional<std::vector<std::uint64_t>> CyclicDecomposition::coordinates(
    const std::vector<std::uint64_t>& x) const {
  if (x.size() != dim_) return std::nullopt;
  std::vector<u64> out;
  for (const auto& part : parts_) {
    for (std::size_t i = 0; i < part.gens.size(); ++i) {
      u64 y = 0;
      const auto& row = part.coord_rows[i];
      for (std::size_t t = 0; t < dim_; ++t)
        if (row[t]) y = (y + mulmod(row[t], x[t] % part.q, part.q)) % part.q;
      if (y % part.divisors[i]) return std::nullopt;
      out.push_back((y / part.divisors[i]) % part.orders[i]);
    }
  }
  // Membership check by reconstruction.
  std::vector<u64> back(dim_, 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i])
      for (std::size_t t = 0; t < dim_; ++t)
        back[t] = (back[t] + mulmod(out[i], gens_[i][t], modulus_)) % modulus_;
  for (std::size_t t = 0; t < dim_; ++t)
    if (back[t] != x[t] % modulus_) return std::nullopt;
  return out;
}

CyclicDecomposition solve_kernel(const ModSystem& system) {
  return CyclicDecomposition(system.modulus(), system.nvars(),
                             kernel_parts(system.nvars(), system.modulus(), system.rows()));
}

std::optional<std::vector<std::uint64_t>> solve_particular(std::size_t nvars, std::uint64_t modulus,
                                                           const std::vector<SparseRow>& rows,
                                                           const std::vector<std::int64_t>& rhs) {
  if (rhs.size() != rows.size()) throw std::invalid_argument("right-hand side length mismatch");
  // Kernel of [A | -b]; a solution is a kernel vector with last coordinate 1.
  std::vector<SparseRow> aug(rows);
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rhs[i]) aug[i].emplace_back(static_cast<std::uint32_t>(nvars), -rhs[i]);
  for (auto& r : aug) std::sort(r.begin(), r.end());
  std::vector<u64> x(nvars, 0);
  for (auto& part : kernel_parts(nvars + 1, modulus, aug)) {
    bool found = false;
    for (std::size_t i = 0; i < part.gens.size() && !found; ++i) {
      u64 last = part.gens[i][nvars];
      if (last % part.p == 0) continue;
      u64 inv = mod_inverse(last, part.q);
      for (std::size_t t = 0; t < nvars; ++t) {
        u64 v = mulmod(part.gens[i][t], inv, part.q);
        x[t] = (x[t] + mulmod(v, part.lift, modulus)) % modulus;
      }
      found = true;
    }
    if (!found) return std::nullopt;
  }
  return x;
}

std::vector<std::uint64_t> quotient_invariants(const CyclicDecomposition& z,
                                               const std::vector<std::vector<std::uint64_t>>& b) {
  std::size_t k = z.size();
  BigMatrix rel = BigMatrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + b.size()));
  for (std::size_t i = 0; i < k; ++i) rel(i, i) = z.orders()[i];
  for (std::size_t j = 0; j < b.size(); ++j) {
    auto c = z.coordinates(b[j]);
    if (!c) throw std::logic_error("quotient relation lies outside the submodule");
    for (std::size_t i = 0; i < k; ++i) rel(i, k + j) = (*c)[i];
  }
  std::vector<std::uint64_t> out;
  for (const auto& f : invariant_factors_dense(rel))
    if (f > 1) out.push_back(static_cast<std::uint64_t>(f));
  return out;
}

}  // namespace sdops
