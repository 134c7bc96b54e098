#include "sdops/linear.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sdops/parallel.hpp"

namespace sdops::linear {

namespace bmp = boost::multiprecision;

std::uint64_t shape_dim(const Shape& s) {
  std::uint64_t n = 1;
  for (std::size_t d : s) {
    if (d != 0 && n > (std::uint64_t{1} << 62) / d) throw InputError("tensor power too large");
    n *= d;
  }
  return n;
}

Shape power_shape(std::size_t d, std::size_t k) { return Shape(k, d); }

Shape concat(const Shape& a, const Shape& b) {
  Shape s = a;
  s.insert(s.end(), b.begin(), b.end());
  return s;
}

namespace {

std::vector<std::size_t> decode_shape(std::uint64_t idx, const Shape& s) {
  std::vector<std::size_t> d(s.size());
  for (std::size_t i = s.size(); i-- > 0;) {
    d[i] = static_cast<std::size_t>(idx % s[i]);
    idx /= s[i];
  }
  return d;
}

std::uint64_t encode_shape(const std::vector<std::size_t>& d, const Shape& s) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < s.size(); ++i) idx = idx * s[i] + d[i];
  return idx;
}

SparseVec finish(std::map<std::uint64_t, Scalar>& acc, const Field& f) {
  SparseVec v;
  v.reserve(acc.size());
  for (auto& [i, c] : acc) {
    Scalar r = f.reduce(c);
    if (r != 0) v.emplace_back(i, std::move(r));
  }
  return v;
}

std::string shape_text(const Shape& s) {
  std::string t = "{";
  for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + std::to_string(s[i]);
  return t + "}";
}

void require_shape(const LinMap& m, const Shape& src, const Shape& dst, const std::string& what) {
  if (m.src() != src || m.dst() != dst)
    throw InputError(what + " has shape " + shape_text(m.src()) + " -> " + shape_text(m.dst()) + ", expected " +
                     shape_text(src) + " -> " + shape_text(dst));
}

std::uint64_t checked_mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw InputError("division by zero in " + Field::prime(p).name());
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 31)) throw InputError("field characteristic out of range");
  for (std::uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw InputError(std::to_string(p) + " is not prime");
  return Field(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "GF(" + std::to_string(p_) + ")"; }

Scalar Field::reduce(const Scalar& v) const {
  if (p_ == 0) return v;
  bmp::cpp_int P(p_);
  bmp::cpp_int n = bmp::numerator(v) % P, d = bmp::denominator(v) % P;
  if (n < 0) n += P;
  if (d == 1) return Scalar(n);
  if (d < 0) d += P;
  if (d == 0) throw InputError("denominator divisible by the characteristic");
  std::uint64_t di = checked_mod_inverse(static_cast<std::uint64_t>(d), p_);
  return Scalar((n * di) % P);
}

Scalar Field::inv(const Scalar& a) const {
  Scalar r = reduce(a);
  if (r == 0) throw InputError("division by zero in " + name());
  if (p_ == 0) return 1 / r;
  return Scalar(checked_mod_inverse(static_cast<std::uint64_t>(bmp::numerator(r)), p_));
}

LinMap::LinMap(Field field, Shape src, Shape dst, std::vector<SparseVec> columns)
    : field_(field), src_(std::move(src)), dst_(std::move(dst)), columns_(std::move(columns)) {
  rows_ = shape_dim(dst_);
  if (columns_.size() != shape_dim(src_))
    throw InputError("map with " + std::to_string(columns_.size()) + " columns on a space of dimension " +
                     std::to_string(shape_dim(src_)));
  for (auto& col : columns_) {
    std::map<std::uint64_t, Scalar> acc;
    for (auto& [i, c] : col) {
      if (i >= rows_) throw InputError("row index " + std::to_string(i) + " out of range");
      acc[i] += c;
    }
    col = finish(acc, field_);
  }
}

LinMap LinMap::identity(const Field& f, const Shape& s) {
  std::uint64_t n = shape_dim(s);
  std::vector<SparseVec> cols(n);
  for (std::uint64_t j = 0; j < n; ++j) cols[j] = {{j, Scalar(1)}};
  return LinMap(f, s, s, std::move(cols));
}

LinMap LinMap::zero(const Field& f, const Shape& src, const Shape& dst) {
  return LinMap(f, src, dst, std::vector<SparseVec>(shape_dim(src)));
}

LinMap LinMap::from_dense(const Field& f, const Shape& src, const Shape& dst,
                          const std::vector<std::vector<Scalar>>& rows) {
  std::uint64_t r = shape_dim(dst), c = shape_dim(src);
  if (rows.size() != r) throw InputError("matrix has the wrong number of rows");
  std::vector<SparseVec> cols(c);
  for (std::uint64_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw InputError("matrix has a row of the wrong length");
    for (std::uint64_t j = 0; j < c; ++j)
      if (rows[i][j] != 0) cols[j].emplace_back(i, rows[i][j]);
  }
  return LinMap(f, src, dst, std::move(cols));
}

LinMap LinMap::from_columns(const Field& f, const Shape& src, const Shape& dst,
                            const std::function<SparseVec(std::uint64_t)>& column) {
  std::uint64_t c = shape_dim(src);
  std::vector<SparseVec> cols(c);
  parallel_for(c, [&](std::uint64_t j) { cols[j] = column(j); });
  return LinMap(f, src, dst, std::move(cols));
}

Scalar LinMap::entry(std::uint64_t row, std::uint64_t col) const {
  if (col >= cols() || row >= rows_) throw InputError("matrix entry out of range");
  for (auto& [i, c] : columns_[col])
    if (i == row) return c;
  return 0;
}

std::vector<std::vector<Scalar>> LinMap::dense() const {
  if (rows_ * cols() > 10'000'000) throw InputError("matrix too large to print densely");
  std::vector<std::vector<Scalar>> m(rows_, std::vector<Scalar>(cols()));
  for (std::uint64_t j = 0; j < cols(); ++j)
    for (auto& [i, c] : columns_[j]) m[i][j] = c;
  return m;
}

SparseVec LinMap::apply(const SparseVec& v) const {
  std::map<std::uint64_t, Scalar> acc;
  for (auto& [j, c] : v) {
    if (j >= cols()) throw InputError("vector index out of range");
    for (auto& [i, a] : columns_[j]) acc[i] += c * a;
  }
  return finish(acc, field_);
}

LinMap LinMap::with_entry(std::uint64_t row, std::uint64_t col, const Scalar& value) const {
  if (col >= cols() || row >= rows_) throw InputError("matrix entry out of range");
  LinMap m = *this;
  auto& c = m.columns_[col];
  std::erase_if(c, [&](auto& e) { return e.first == row; });
  Scalar r = field_.reduce(value);
  if (r != 0) {
    c.emplace_back(row, r);
    std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return a.first < b.first; });
  }
  return m;
}

bool LinMap::operator==(const LinMap& o) const {
  return field_ == o.field_ && src_ == o.src_ && dst_ == o.dst_ && columns_ == o.columns_;
}

LinMap compose(const LinMap& a, const LinMap& b) {
  if (a.src() != b.dst()) throw InputError("composing maps " + shape_text(b.dst()) + " into " + shape_text(a.src()));
  if (!(a.field() == b.field())) throw InputError("maps over different fields");
  return LinMap::from_columns(a.field(), b.src(), a.dst(), [&](std::uint64_t j) { return a.apply(b.column(j)); });
}

LinMap add(const LinMap& a, const LinMap& b) {
  if (a.src() != b.src() || a.dst() != b.dst()) throw InputError("adding maps of different shapes");
  return LinMap::from_columns(a.field(), a.src(), a.dst(), [&](std::uint64_t j) {
    SparseVec v = a.column(j);
    v.insert(v.end(), b.column(j).begin(), b.column(j).end());
    return v;
  });
}

LinMap scale(const LinMap& a, const Scalar& s) {
  return LinMap::from_columns(a.field(), a.src(), a.dst(), [&](std::uint64_t j) {
    SparseVec v = a.column(j);
    for (auto& e : v) e.second *= s;
    return v;
  });
}

std::optional<std::uint64_t> first_difference(const LinMap& a, const LinMap& b) {
  if (a.src() != b.src() || a.dst() != b.dst()) throw InputError("comparing maps of different shapes");
  for (std::uint64_t j = 0; j < a.cols(); ++j)
    if (a.column(j) != b.column(j)) return j;
  return std::nullopt;
}

LinMap tensor(const LinMap& a, const LinMap& b) {
  if (!(a.field() == b.field())) throw InputError("maps over different fields");
  std::uint64_t bc = b.cols(), br = b.rows();
  std::vector<SparseVec> cols(a.cols() * bc);
  for (std::uint64_t ja = 0; ja < a.cols(); ++ja)
    for (std::uint64_t jb = 0; jb < bc; ++jb) {
      auto& col = cols[ja * bc + jb];
      for (auto& [ia, x] : a.column(ja))
        for (auto& [ib, y] : b.column(jb)) col.emplace_back(ia * br + ib, x * y);
    }
  return LinMap(a.field(), concat(a.src(), b.src()), concat(a.dst(), b.dst()), std::move(cols));
}

LinMap tensor(const std::vector<LinMap>& maps) {
  if (maps.empty()) throw InputError("empty tensor product");
  LinMap m = maps.front();
  for (std::size_t i = 1; i < maps.size(); ++i) m = tensor(m, maps[i]);
  return m;
}

LinMap factor_permutation(const Field& f, const Shape& src, const std::vector<std::size_t>& perm) {
  if (perm.size() != src.size()) throw InputError("permutation of the wrong length");
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw InputError("not a permutation of the tensor factors");
  Shape dst(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[perm[i]];
  return LinMap::from_columns(f, src, dst, [&](std::uint64_t j) {
    auto d = decode_shape(j, src);
    std::vector<std::size_t> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[perm[i]];
    return SparseVec{{encode_shape(out, dst), Scalar(1)}};
  });
}

LinMap swap_map(const Field& f, const Shape& a, const Shape& b) {
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < b.size(); ++i) perm.push_back(a.size() + i);
  for (std::size_t i = 0; i < a.size(); ++i) perm.push_back(i);
  return factor_permutation(f, concat(a, b), perm);
}

Pipeline& Pipeline::then(const LinMap& m) { return then_tensor({m}); }

Pipeline& Pipeline::then_tensor(std::vector<LinMap> factors) {
  Shape in, out;
  for (auto& m : factors) {
    in = concat(in, m.src());
    out = concat(out, m.dst());
  }
  if (in != cur_) throw InputError("stage expects " + shape_text(in) + " but receives " + shape_text(cur_));
  stages_.push_back({std::move(factors), {}, cur_});
  cur_ = std::move(out);
  return *this;
}

Pipeline& Pipeline::then_permute(std::vector<std::size_t> perm) {
  if (perm.size() != cur_.size()) throw InputError("permutation of the wrong length");
  Shape out(perm.size());
  std::vector<bool> seen(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || seen[perm[i]]) throw InputError("not a permutation of the tensor factors");
    seen[perm[i]] = true;
    out[i] = cur_[perm[i]];
  }
  stages_.push_back({{}, std::move(perm), cur_});
  cur_ = std::move(out);
  return *this;
}

SparseVec Pipeline::run(const Field& f, SparseVec v) const {
  for (auto& st : stages_) {
    std::map<std::uint64_t, Scalar> acc;
    if (st.factors.empty()) {
      Shape out(st.perm.size());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = st.in[st.perm[i]];
      for (auto& [j, c] : v) {
        auto d = decode_shape(j, st.in);
        std::vector<std::size_t> o(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) o[i] = d[st.perm[i]];
        acc[encode_shape(o, out)] += c;
      }
    } else {
      Shape radix;
      for (auto& m : st.factors) radix.push_back(static_cast<std::size_t>(m.cols()));
      std::vector<std::pair<std::uint64_t, Scalar>> terms, next;
      for (auto& [j, c] : v) {
        auto g = decode_shape(j, radix);
        terms.assign(1, {0, c});
        for (std::size_t k = 0; k < st.factors.size(); ++k) {
          const LinMap& m = st.factors[k];
          next.clear();
          for (auto& [o, x] : terms)
            for (auto& [i, a] : m.column(g[k])) next.emplace_back(o * m.rows() + i, f.mul(x, a));
          std::swap(terms, next);
          if (terms.empty()) break;
        }
        for (auto& [o, x] : terms) acc[o] += x;
      }
    }
    v = finish(acc, f);
  }
  return v;
}

LinMap Pipeline::materialize(const Field& f) const {
  return LinMap::from_columns(f, src_, cur_, [&](std::uint64_t j) { return run(f, SparseVec{{j, Scalar(1)}}); });
}

std::vector<std::size_t> shuffle_positions(std::size_t n) {
  if (n < 2) throw InputError("the shuffle needs n >= 2");
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) {
    pos.push_back(i);
    for (std::size_t b = 0; b + 1 < n; ++b) pos.push_back(n + b * n + i);
  }
  return pos;
}

LinMap shuffle_perm(std::size_t n, std::size_t d, const Field& f) {
  Shape s = power_shape(d, n * n);
  if (shape_dim(s) > 1'000'000) throw InputError("shuffle matrix on " + std::to_string(shape_dim(s)) + " columns refused");
  return factor_permutation(f, s, shuffle_positions(n));
}

std::optional<std::string> comonoid_failure(const ComonoidObject& c) {
  Shape x{c.dim};
  require_shape(c.delta, x, {c.dim, c.dim}, "comultiplication");
  require_shape(c.counit, x, {}, "counit");
  LinMap id = LinMap::identity(c.field, x);
  if (compose(tensor(c.delta, id), c.delta) != compose(tensor(id, c.delta), c.delta)) return "coassociativity";
  if (compose(tensor(c.counit, id), c.delta) != id) return "left counit";
  if (compose(tensor(id, c.counit), c.delta) != id) return "right counit";
  return std::nullopt;
}

ComonoidObject make_comonoid(Field f, std::size_t dim, LinMap delta, LinMap counit) {
  ComonoidObject c{f, dim, std::move(delta), std::move(counit)};
  if (auto bad = comonoid_failure(c)) throw HypothesisError("not a comonoid: " + *bad + " fails");
  return c;
}

LinMap iterated_delta(const ComonoidObject& c, std::size_t n) {
  if (n < 1) throw InputError("iterated comultiplication needs n >= 1");
  LinMap d = LinMap::identity(c.field, {c.dim});
  for (std::size_t k = 2; k <= n; ++k)
    d = compose(tensor(c.delta, LinMap::identity(c.field, power_shape(c.dim, k - 2))), d);
  return d;
}

namespace {

void check_sd_shape(const SDObject& obj) {
  if (obj.arity < 2) throw InputError("arity must be at least 2");
  require_shape(obj.W, power_shape(obj.comonoid.dim, obj.arity), {obj.comonoid.dim}, "operation");
}

std::pair<Pipeline, Pipeline> sd_pipelines(const SDObject& obj) {
  check_sd_shape(obj);
  std::size_t n = obj.arity, d = obj.comonoid.dim;
  const Field& f = obj.comonoid.field;
  Shape src = power_shape(d, 2 * n - 1);
  std::uint64_t total = shape_dim(src);
  if (total > 1'000'000)
    throw InputError("the distributivity diagram needs " + std::to_string(total) +
                     " basis inputs; refused above 1000000");
  Pipeline lhs(src);
  lhs.then_tensor({obj.W, LinMap::identity(f, power_shape(d, n - 1))}).then(obj.W);
  Pipeline rhs(src);
  std::vector<LinMap> first{LinMap::identity(f, power_shape(d, n))};
  LinMap dn = iterated_delta(obj.comonoid, n);
  for (std::size_t i = 0; i + 1 < n; ++i) first.push_back(dn);
  rhs.then_tensor(std::move(first)).then_permute(shuffle_positions(n));
  rhs.then_tensor(std::vector<LinMap>(n, obj.W)).then(obj.W);
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace

LinCheck check_nary_sd(const SDObject& obj) {
  auto [lhs, rhs] = sd_pipelines(obj);
  const Field& f = obj.comonoid.field;
  std::uint64_t total = shape_dim(lhs.src());
  std::vector<char> bad(total, 0);
  parallel_for(total, [&](std::uint64_t j) {
    SparseVec e{{j, Scalar(1)}};
    bad[j] = lhs.run(f, e) != rhs.run(f, e);
  });
  for (std::uint64_t j = 0; j < total; ++j)
    if (bad[j]) return {false, j, "self-distributivity"};
  return {};
}

std::pair<LinMap, LinMap> sd_sides(const SDObject& obj) {
  auto [lhs, rhs] = sd_pipelines(obj);
  return {lhs.materialize(obj.comonoid.field), rhs.materialize(obj.comonoid.field)};
}

SDObject make_sd_object(ComonoidObject c, LinMap W, Verify verify) {
  SDObject obj{std::move(c), 0, std::move(W)};
  std::size_t d = obj.comonoid.dim, k = obj.W.src().size();
  obj.arity = k;
  check_sd_shape(obj);
  if (d == 0) return obj;
  if (verify == Verify::checked) {
    auto r = check_nary_sd(obj);
    if (!r) throw HypothesisError("not self-distributive at basis input " + std::to_string(*r.column));
  }
  return obj;
}

std::optional<std::string> hopf_failure(const HopfAlgebraObject& h) {
  std::size_t d = h.dim;
  Shape x{d}, xx{d, d};
  const Field& f = h.field;
  require_shape(h.unit, {}, x, "unit");
  require_shape(h.mult, xx, x, "multiplication");
  require_shape(h.antipode, x, x, "antipode");
  LinMap id = LinMap::identity(f, x);
  if (compose(h.mult, tensor(h.mult, id)) != compose(h.mult, tensor(id, h.mult))) return "associativity";
  if (compose(h.mult, tensor(h.unit, id)) != id || compose(h.mult, tensor(id, h.unit)) != id) return "unit";
  if (auto bad = comonoid_failure(h.comonoid())) return bad;
  Pipeline dm(xx);
  dm.then_tensor({h.delta, h.delta}).then_permute({0, 2, 1, 3}).then_tensor({h.mult, h.mult});
  if (compose(h.delta, h.mult) != dm.materialize(f)) return "multiplicative comultiplication";
  if (compose(h.counit, h.mult) != tensor(h.counit, h.counit)) return "multiplicative counit";
  if (compose(h.delta, h.unit) != tensor(h.unit, h.unit)) return "comultiplicative unit";
  if (compose(h.counit, h.unit) != LinMap::identity(f, {})) return "counit of unit";
  LinMap ue = compose(h.unit, h.counit);
  if (compose(h.mult, compose(tensor(h.antipode, id), h.delta)) != ue ||
      compose(h.mult, compose(tensor(id, h.antipode), h.delta)) != ue)
    return "antipode";
  return std::nullopt;
}

HopfAlgebraObject make_hopf(Field f, std::size_t dim, LinMap unit, LinMap mult, LinMap delta, LinMap counit,
                            LinMap antipode) {
  HopfAlgebraObject h{f,
                      dim,
                      std::move(unit),
                      std::move(mult),
                      std::move(delta),
                      std::move(counit),
                      std::move(antipode)};
  if (auto bad = hopf_failure(h)) throw HypothesisError("not a Hopf algebra: " + *bad + " fails");
  return h;
}

std::optional<std::string> lie_failure(const LieAlgebraObject& l) {
  std::size_t d = l.dim;
  require_shape(l.bracket, {d, d}, {d}, "bracket");
  for (std::size_t i = 0; i < d; ++i)
    if (!l.bracket.column(i * d + i).empty()) return "alternating";
  if (add(l.bracket, compose(l.bracket, swap_map(l.field, {d}, {d}))) != LinMap::zero(l.field, {d, d}, {d}))
    return "antisymmetry";
  LinMap j = compose(l.bracket, tensor(l.bracket, LinMap::identity(l.field, {d})));
  LinMap p = factor_permutation(l.field, {d, d, d}, {1, 2, 0});
  LinMap jp = compose(j, p);
  if (add(add(j, jp), compose(jp, p)) != LinMap::zero(l.field, {d, d, d}, {d})) return "Jacobi";
  return std::nullopt;
}

LieAlgebraObject make_lie(Field f, std::size_t dim, LinMap bracket) {
  LieAlgebraObject l{f, dim, std::move(bracket)};
  if (auto bad = lie_failure(l)) throw HypothesisError("not a Lie algebra: " + *bad + " fails");
  return l;
}

LieAlgebraObject nonabelian_lie2(const Field& f) {
  std::vector<SparseVec> cols(4);
  cols[0 * 2 + 1] = {{1, Scalar(1)}};
  cols[1 * 2 + 0] = {{1, Scalar(-1)}};
  return make_lie(f, 2, LinMap(f, {2, 2}, {2}, std::move(cols)));
}

LieAlgebraObject abelian_lie(const Field& f, std::size_t dim) {
  return make_lie(f, dim, LinMap::zero(f, {dim, dim}, {dim}));
}

SDObject lie_to_binary_sd(const LieAlgebraObject& l, Verify verify) {
  if (auto bad = lie_failure(l)) throw HypothesisError("not a Lie algebra: " + *bad + " fails");
  std::size_t m = l.dim, d = m + 1;
  const Field& f = l.field;
  std::vector<SparseVec> delta(d), counit(d), q(d * d);
  delta[0] = {{0, Scalar(1)}};
  counit[0] = {{0, Scalar(1)}};
  for (std::size_t i = 1; i < d; ++i) delta[i] = {{i * d, Scalar(1)}, {i, Scalar(1)}};
  q[0] = {{0, Scalar(1)}};
  for (std::size_t i = 1; i < d; ++i) {
    q[i * d] = {{i, Scalar(1)}};
    for (std::size_t j = 1; j < d; ++j)
      for (auto& [r, c] : l.bracket.column((i - 1) * m + (j - 1))) q[i * d + j].emplace_back(r + 1, c);
  }
  ComonoidObject c = make_comonoid(f, d, LinMap(f, {d}, {d, d}, std::move(delta)),
                                   LinMap(f, {d}, {}, std::move(counit)));
  return make_sd_object(std::move(c), LinMap(f, {d, d}, {d}, std::move(q)), verify);
}

SDObject categorical_double(const SDObject& binary, Verify verify) {
  if (binary.arity != 2) throw InputError("doubling needs a binary object");
  check_sd_shape(binary);
  std::size_t d = binary.comonoid.dim;
  LinMap t = compose(binary.W, tensor(binary.W, LinMap::identity(binary.comonoid.field, {d})));
  return make_sd_object(binary.comonoid, std::move(t), verify);
}

LinMap lie_ternary_formula(const LieAlgebraObject& l) {
  std::size_t m = l.dim, d = m + 1;
  const Field& f = l.field;
  using Vec = std::vector<Scalar>;
  auto br = [&](const Vec& u, const Vec& v) {
    Vec r(m);
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < m; ++t) {
        if (u[s] == 0 || v[t] == 0) continue;
        for (auto& [i, c] : l.bracket.column(s * m + t)) r[i] += u[s] * v[t] * c;
      }
    return r;
  };
  auto axpy = [&](Vec& acc, const Scalar& a, const Vec& x) {
    for (std::size_t i = 0; i < m; ++i) acc[i] += a * x[i];
  };
  auto split = [&](std::size_t i) {
    Vec x(m);
    if (i > 0) x[i - 1] = 1;
    return std::pair<Scalar, Vec>{Scalar(i == 0 ? 1 : 0), x};
  };
  return LinMap::from_columns(f, {d, d, d}, {d}, [&](std::uint64_t j) {
    auto [a, x] = split(j / (d * d));
    auto [b, y] = split(j / d % d);
    auto [c, z] = split(j % d);
    Vec out(m);
    Vec xy = br(x, y);
    axpy(out, b * c, x);
    axpy(out, c, xy);
    axpy(out, b, br(x, z));
    axpy(out, 1, br(xy, z));
    SparseVec v{{0, a * b * c}};
    for (std::size_t i = 0; i < m; ++i) v.emplace_back(i + 1, out[i]);
    return v;
  });
}

HopfAlgebraObject group_algebra_hopf(const FiniteGroup& g, const Field& f) {
  std::size_t d = g.size();
  std::vector<SparseVec> unit{{{g.identity(), Scalar(1)}}}, mult(d * d), delta(d), counit(d), s(d);
  for (Element a = 0; a < d; ++a) {
    for (Element b = 0; b < d; ++b) mult[a * d + b] = {{g.mul(a, b), Scalar(1)}};
    delta[a] = {{static_cast<std::uint64_t>(a) * d + a, Scalar(1)}};
    counit[a] = {{0, Scalar(1)}};
    s[a] = {{g.inv(a), Scalar(1)}};
  }
  return make_hopf(f, d, LinMap(f, {}, {d}, std::move(unit)), LinMap(f, {d, d}, {d}, std::move(mult)),
                   LinMap(f, {d}, {d, d}, std::move(delta)), LinMap(f, {d}, {}, std::move(counit)),
                   LinMap(f, {d}, {d}, std::move(s)));
}

LinMap iterated_mult(const HopfAlgebraObject& h, std::size_t count) {
  if (count == 0) return h.unit;
  LinMap id = LinMap::identity(h.field, {h.dim});
  LinMap m = id;
  for (std::size_t k = 2; k <= count; ++k) m = compose(h.mult, tensor(m, id));
  return m;
}

SDObject hopf_heap(const HopfAlgebraObject& h, Verify verify) {
  std::size_t d = h.dim;
  LinMap id = LinMap::identity(h.field, {d});
  Pipeline p(power_shape(d, 3));
  p.then_tensor({id, h.antipode, id}).then(iterated_mult(h, 3));
  return make_sd_object(h.comonoid(), p.materialize(h.field), verify);
}

SDObject hopf_adjoint_ternary(const HopfAlgebraObject& h, Verify verify) {
  std::size_t d = h.dim;
  LinMap id = LinMap::identity(h.field, {d});
  Pipeline p(power_shape(d, 3));
  // (x, y1, y2, z1, z2) -> (z1, y1, x, y2, z2)
  p.then_tensor({id, h.delta, h.delta}).then_permute({3, 1, 0, 2, 4});
  p.then_tensor({h.antipode, h.antipode, id, id, id}).then(iterated_mult(h, 5));
  return make_sd_object(h.comonoid(), p.materialize(h.field), verify);
}

AugmentedReport check_augmented_hopf(const LinMap& p, const HopfAlgebraObject& h, const ComonoidObject& x,
                                     const LinMap& mu) {
  std::size_t dx = x.dim, dh = h.dim;
  const Field& f = h.field;
  if (!(x.field == f)) throw InputError("module and Hopf algebra over different fields");
  require_shape(p, {dx, dx}, {dh}, "augmentation");
  require_shape(mu, {dx, dh}, {dx}, "action");
  if (auto bad = comonoid_failure(x)) throw HypothesisError("not a comonoid: " + *bad + " fails");
  if (auto bad = hopf_failure(h)) throw HypothesisError("not a Hopf algebra: " + *bad + " fails");
  LinMap ix = LinMap::identity(f, {dx}), ih = LinMap::identity(f, {dh});
  if (compose(mu, tensor(mu, ih)) != compose(mu, tensor(ix, h.mult)) || compose(mu, tensor(ix, h.unit)) != ix)
    throw HypothesisError("not a right module action");

  Pipeline dz({dx, dx});
  dz.then_tensor({x.delta, x.delta}).then_permute({0, 2, 1, 3}).then_tensor({p, p});
  if (compose(h.delta, p) != dz.materialize(f) || compose(h.counit, p) != tensor(x.counit, x.counit))
    throw NotCoalgebraMorphism("the augmentation is not a coalgebra morphism");

  AugmentedReport rep;
  Pipeline lhs({dx, dx, dh});
  lhs.then_tensor({LinMap::identity(f, {dx, dx}), h.delta}).then_permute({0, 2, 1, 3}).then_tensor({mu, mu}).then(p);
  Pipeline rhs({dx, dx, dh});
  rhs.then_tensor({p, h.delta}).then_permute({1, 0, 2}).then_tensor({h.antipode, ih, ih}).then(iterated_mult(h, 3));
  if (lhs.materialize(f) != rhs.materialize(f)) {
    rep.failure = "augmentation axiom";
    return rep;
  }
  SDObject t = make_sd_object(x, compose(mu, tensor(ix, p)), Verify::unchecked);
  if (!check_nary_sd(t)) {
    rep.failure = "self-distributivity of the induced operation";
    return rep;
  }
  rep.holds = true;
  rep.derived = std::move(t);
  return rep;
}

LinCheck switching_identities_check(const SDObject& binary) {
  if (binary.arity != 2) throw InputError("switching identities need a binary object");
  check_sd_shape(binary);
  std::size_t d = binary.comonoid.dim;
  const Field& f = binary.comonoid.field;
  LinMap id = LinMap::identity(f, {d});
  const LinMap& delta = binary.comonoid.delta;
  LinMap a = compose(tensor(delta, id), swap_map(f, {d}, {d}));
  LinMap b = compose(swap_map(f, {d}, {d, d}), tensor(id, delta));
  if (auto j = first_difference(a, b)) return {false, j, "switch comultiplication"};
  a = compose(swap_map(f, {d}, {d}), tensor(binary.W, id));
  b = compose(tensor(id, binary.W), swap_map(f, {d, d}, {d}));
  if (auto j = first_difference(a, b)) return {false, j, "switch operation"};
  return {};
}

}  // namespace sdops::linear
