#include "sdops/smith.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace sdops {

namespace {

using Index = Eigen::Index;

BigInt babs(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Dense reduction to a divisibility-chain diagonal.  When `track` is set,
// u and v accumulate the row and column operations.
std::vector<BigInt> reduce_dense(BigMatrix& m, BigMatrix* u, BigMatrix* v) {
  Index rows = m.rows(), cols = m.cols();
  auto row_addmul = [&](Index dst, Index src, const BigInt& f) {  // row dst -= f * row src
    if (f == 0) return;
    for (Index j = 0; j < cols; ++j)
      if (m(src, j) != 0) m(dst, j) -= f * m(src, j);
    if (u)
      for (Index j = 0; j < u->cols(); ++j)
        if ((*u)(src, j) != 0) (*u)(dst, j) -= f * (*u)(src, j);
  };
  auto col_addmul = [&](Index dst, Index src, const BigInt& f) {  // col dst -= f * col src
    if (f == 0) return;
    for (Index i = 0; i < rows; ++i)
      if (m(i, src) != 0) m(i, dst) -= f * m(i, src);
    if (v)
      for (Index i = 0; i < v->rows(); ++i)
        if ((*v)(i, src) != 0) (*v)(i, dst) -= f * (*v)(i, src);
  };
  auto row_swap = [&](Index a, Index b) {
    if (a == b) return;
    m.row(a).swap(m.row(b));
    if (u) u->row(a).swap(u->row(b));
  };
  auto col_swap = [&](Index a, Index b) {
    if (a == b) return;
    m.col(a).swap(m.col(b));
    if (v) v->col(a).swap(v->col(b));
  };
  auto row_neg = [&](Index a) {
    m.row(a) = -m.row(a);
    if (u) u->row(a) = -u->row(a);
  };

  std::vector<BigInt> diag;
  for (Index t = 0; t < std::min(rows, cols); ++t) {
    // Pivot of least absolute value in the trailing block.
    Index bi = -1, bj = -1;
    BigInt best = 0;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j)
        if (m(i, j) != 0 && (bi < 0 || babs(m(i, j)) < best)) {
          best = babs(m(i, j));
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    row_swap(t, bi);
    col_swap(t, bj);
    for (;;) {
      bool clean = true;
      for (Index i = t + 1; i < rows; ++i)
        if (m(i, t) != 0) {
          row_addmul(i, t, BigInt(m(i, t) / m(t, t)));
          if (m(i, t) != 0) clean = false;
        }
      for (Index j = t + 1; j < cols; ++j)
        if (m(t, j) != 0) {
          col_addmul(j, t, BigInt(m(t, j) / m(t, t)));
          if (m(t, j) != 0) clean = false;
        }
      if (!clean) {
        // Move the smallest remainder into the pivot position.
        Index si = t, sj = t;
        BigInt s = babs(m(t, t));
        for (Index i = t + 1; i < rows; ++i)
          if (m(i, t) != 0 && babs(m(i, t)) < s) {
            s = babs(m(i, t));
            si = i;
            sj = t;
          }
        for (Index j = t + 1; j < cols; ++j)
          if (m(t, j) != 0 && babs(m(t, j)) < s) {
            s = babs(m(t, j));
            si = t;
            sj = j;
          }
        row_swap(t, si);
        col_swap(t, sj);
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      Index bad = -1;
      for (Index i = t + 1; i < rows && bad < 0; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_addmul(t, bad, BigInt(-1));
    }
    if (m(t, t) < 0) row_neg(t);
    diag.push_back(m(t, t));
  }
  return diag;
}

}  // namespace

SmithForm smith_normal_form(const BigMatrix& m) {
  SmithForm s;
  s.d = m;
  s.u = BigMatrix::Identity(m.rows(), m.rows());
  s.v = BigMatrix::Identity(m.cols(), m.cols());
  s.factors = reduce_dense(s.d, &s.u, &s.v);
  return s;
}

std::vector<BigInt> invariant_factors_dense(BigMatrix m) {
  auto diag = reduce_dense(m, nullptr, nullptr);
  return diag;
}

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix b = BigMatrix::Zero(m.rows(), m.cols());
  for (Index k = 0; k < m.outerSize(); ++k)
    for (IntMatrix::InnerIterator it(m, k); it; ++it) b(it.row(), it.col()) = it.value();
  return b;
}

std::vector<BigInt> invariant_factors(const IntMatrix& m) {
  using Row = std::vector<std::pair<std::uint32_t, std::int64_t>>;
  Index nr = m.rows(), nc = m.cols();
  std::vector<Row> rows(nr);
  for (Index k = 0; k < m.outerSize(); ++k)
    for (IntMatrix::InnerIterator it(m, k); it; ++it)
      if (it.value() != 0) rows[it.row()].emplace_back(static_cast<std::uint32_t>(it.col()), it.value());
  for (auto& r : rows) std::sort(r.begin(), r.end());
  std::vector<std::vector<std::uint32_t>> col_rows(nc);
  for (Index i = 0; i < nr; ++i)
    for (auto [c, _] : rows[i]) col_rows[c].push_back(static_cast<std::uint32_t>(i));
  std::vector<char> alive(nr, 1);

  auto lookup = [](const Row& r, std::uint32_t c) -> std::int64_t {
    auto it = std::lower_bound(r.begin(), r.end(), std::pair<std::uint32_t, std::int64_t>{c, INT64_MIN});
    return it != r.end() && it->first == c ? it->second : 0;
  };
  // dst - f * src, or nullopt on overflow.
  auto combine = [](const Row& dst, const Row& src, std::int64_t f) -> std::optional<Row> {
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
      if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
        out.push_back(dst[a++]);
      } else {
        std::int64_t prod, val = 0;
        if (__builtin_mul_overflow(f, src[b].second, &prod)) return std::nullopt;
        std::uint32_t c = src[b].first;
        if (a < dst.size() && dst[a].first == c) val = dst[a++].second;
        if (__builtin_sub_overflow(val, prod, &val)) return std::nullopt;
        if (val != 0) out.emplace_back(c, val);
        ++b;
      }
    }
    return out;
  };

  std::size_t units = 0;
  bool overflow = false;
  for (bool progress = true; progress && !overflow;) {
    progress = false;
    std::vector<std::uint32_t> order;
    for (Index i = 0; i < nr; ++i)
      if (alive[i] && !rows[i].empty()) order.push_back(static_cast<std::uint32_t>(i));
    std::stable_sort(order.begin(), order.end(),
                     [&](auto a, auto b) { return rows[a].size() < rows[b].size(); });
    for (auto r : order) {
      if (!alive[r] || rows[r].empty()) continue;
      std::int64_t best_count = -1;
      std::uint32_t pc = 0;
      std::int64_t pv = 0;
      for (auto [c, v] : rows[r])
        if ((v == 1 || v == -1) &&
            (best_count < 0 || static_cast<std::int64_t>(col_rows[c].size()) < best_count)) {
          best_count = static_cast<std::int64_t>(col_rows[c].size());
          pc = c;
          pv = v;
        }
      if (best_count < 0) continue;
      // Clear column pc in every other live row.
      std::vector<std::uint32_t> targets = col_rows[pc];
      for (auto r2 : targets) {
        if (r2 == r || !alive[r2]) continue;
        std::int64_t a = lookup(rows[r2], pc);
        if (a == 0) continue;
        auto next = combine(rows[r2], rows[r], a * pv);
        if (!next) {
          overflow = true;
          break;
        }
        for (auto [c, _] : *next)
          if (lookup(rows[r2], c) == 0) col_rows[c].push_back(r2);
        rows[r2] = std::move(*next);
      }
      if (overflow) break;
      alive[r] = 0;
      col_rows[pc].clear();
      ++units;
      progress = true;
    }
  }

  std::vector<Index> live_rows;
  std::vector<char> col_used(nc, 0);
  for (Index i = 0; i < nr; ++i)
    if (alive[i] && !rows[i].empty()) {
      live_rows.push_back(i);
      for (auto [c, _] : rows[i]) col_used[c] = 1;
    }
  std::vector<Index> col_map(nc, -1);
  Index ncols = 0;
  for (Index c = 0; c < nc; ++c)
    if (col_used[c]) col_map[c] = ncols++;
  BigMatrix rest = BigMatrix::Zero(static_cast<Index>(live_rows.size()), ncols);
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (auto [c, v] : rows[live_rows[i]]) rest(static_cast<Index>(i), col_map[c]) = v;
  std::vector<BigInt> out(units, BigInt(1));
  for (auto& f : invariant_factors_dense(std::move(rest))) out.push_back(f);
  return out;
}

BigInt determinant(BigMatrix m) {
  Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return 0;
      m.row(k).swap(m.row(s));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace sdops
