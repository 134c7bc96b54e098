#include "sdops/homology.hpp"

#include <algorithm>
#include <map>

#include "sdops/constructions.hpp"
#include "sdops/modsolve.hpp"
#include "sdops/scan.hpp"

namespace sdops {

namespace {

using Triplet = Eigen::Triplet<std::int64_t>;

IntMatrix from_triplets(std::uint64_t rows, std::uint64_t cols, std::vector<Triplet>& t) {
  IntMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  m.prune(std::int64_t{0});
  m.makeCompressed();
  return m;
}

// Label vectors of length len over `labels` symbols, lexicographic.
std::vector<std::vector<std::size_t>> label_vectors(std::size_t labels, std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> v(len, 0);
  std::uint64_t total = checked_power(labels, len);
  for (std::uint64_t i = 0; i < total; ++i) {
    out.push_back(v);
    for (std::size_t k = len; k-- > 0;) {
      if (++v[k] < labels) break;
      v[k] = 0;
    }
  }
  return out;
}

std::uint64_t gcd_big(const BigInt& s, std::uint64_t d) {
  BigInt r = s % d;
  return std::gcd(static_cast<std::uint64_t>(r), d);
}

}  // namespace

LabeledComplex::LabeledComplex(OpSystem ops, Verify verify) : ops_(std::move(ops)) {
  if (ops_.empty()) throw InputError("a complex needs at least one operation");
  size_ = ops_.front().size();
  for (const auto& op : ops_)
    if (op.size() != size_) throw InputError("operations act on carriers of different size");
  if (verify == Verify::checked) {
    for (std::size_t i = 0; i < ops_.size(); ++i)
      for (std::size_t j = i; j < ops_.size(); ++j) {
        auto r = are_mutually_distributive(ops_[i], ops_[j]);
        if (!r.holds)
          throw HypothesisError("operations " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are not mutually distributive",
                                r.counterexample);
      }
  }
}

std::vector<LabeledComplex::Block> LabeledComplex::blocks(std::size_t n) const {
  std::vector<Block> out;
  if (n == 0) return out;
  std::uint64_t offset = 0;
  for (auto& labels : label_vectors(ops_.size(), n - 1)) {
    Block b;
    b.labels = labels;
    b.length = 1;
    for (auto e : labels) b.length += ops_[e].arity() - 1;
    b.offset = offset;
    b.count = checked_power(size_, b.length);
    offset += b.count;
    out.push_back(std::move(b));
  }
  return out;
}

std::uint64_t LabeledComplex::generators(std::size_t n) const {
  std::uint64_t total = 0;
  for (const auto& b : blocks(n)) total += b.count;
  return total;
}

std::uint64_t LabeledComplex::index_of(std::size_t n, std::span<const std::size_t> labels,
                                       std::span<const Element> tuple) const {
  for (const auto& b : blocks(n))
    if (std::equal(b.labels.begin(), b.labels.end(), labels.begin(), labels.end())) {
      if (tuple.size() != b.length) throw InputError("generator tuple has wrong length");
      return b.offset + encode_tuple(tuple, size_);
    }
  throw InputError("no block with these labels");
}

IntMatrix LabeledComplex::boundary(std::size_t n) const {
  if (n == 0) throw InputError("boundary degree must be at least 1");
  std::uint64_t cols = generators(n);
  if (cols > 4 * max_generators)
    throw InputError("C_" + std::to_string(n) + " has " + std::to_string(cols) +
                     " generators, beyond the supported range");
  if (n == 1) return IntMatrix(0, static_cast<Eigen::Index>(cols));
  auto lower = blocks(n - 1);
  std::map<std::vector<std::size_t>, const Block*> by_labels;
  for (const auto& b : lower) by_labels[b.labels] = &b;
  std::uint64_t rows = generators(n - 1);

  std::vector<Triplet> trip;
  std::vector<Element> t, acted, deleted;
  std::vector<std::size_t> sub_labels;
  for (const auto& b : blocks(n)) {
    // Slot boundaries inside the flat tuple.
    std::vector<std::size_t> start(n), len(n);
    start[0] = 0;
    len[0] = 1;
    for (std::size_t i = 1; i < n; ++i) {
      start[i] = start[i - 1] + len[i - 1];
      len[i] = ops_[b.labels[i - 1]].arity() - 1;
    }
    t.assign(b.length, 0);
    for (std::uint64_t local = 0; local < b.count; ++local) {
      auto col = static_cast<Eigen::Index>(b.offset + local);
      for (std::size_t i = 1; i < n; ++i) {
        const OpTable& op = ops_[b.labels[i - 1]];
        std::uint64_t tail = 0, stride = 1;
        for (std::size_t k = 0; k < len[i]; ++k) {
          tail = tail * size_ + t[start[i] + k];
          stride *= size_;
        }
        auto act = [&](Element x) { return op.at_index(x * stride + tail); };
        acted.clear();
        deleted.clear();
        for (std::size_t s = 0; s < n; ++s) {
          if (s == i) continue;
          for (std::size_t k = 0; k < len[s]; ++k) {
            Element v = t[start[s] + k];
            deleted.push_back(v);
            acted.push_back(s < i ? act(v) : v);
          }
        }
        sub_labels.assign(b.labels.begin(), b.labels.end());
        sub_labels.erase(sub_labels.begin() + static_cast<std::ptrdiff_t>(i - 1));
        const Block* target = by_labels.at(sub_labels);
        std::int64_t sign = (i % 2) ? -1 : 1;
        trip.emplace_back(static_cast<Eigen::Index>(target->offset + encode_tuple(acted, size_)), col, sign);
        trip.emplace_back(static_cast<Eigen::Index>(target->offset + encode_tuple(deleted, size_)), col, -sign);
      }
      advance_tuple(t, static_cast<Element>(size_));
    }
  }
  return from_triplets(rows, cols, trip);
}

LabeledCochain LabeledComplex::zero(std::size_t n, const AbGroup& coeff) const {
  LabeledCochain out;
  for (const auto& b : blocks(n)) out.emplace_back(size_, b.length, coeff);
  return out;
}

std::vector<std::uint64_t> LabeledComplex::flatten(std::size_t n, const LabeledCochain& f) const {
  auto bs = blocks(n);
  if (f.size() != bs.size()) throw InputError("cochain has the wrong number of blocks");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (f[i].size() != size_ || f[i].nargs() != bs[i].length)
      throw InputError("cochain block has the wrong shape");
    out.insert(out.end(), f[i].values().begin(), f[i].values().end());
  }
  return out;
}

LabeledCochain LabeledComplex::split(std::size_t n, const AbGroup& coeff,
                                     const std::vector<std::uint64_t>& flat) const {
  LabeledCochain out;
  std::size_t r = coeff.rank();
  for (const auto& b : blocks(n)) {
    auto first = flat.begin() + static_cast<std::ptrdiff_t>(b.offset * r);
    out.emplace_back(size_, b.length, coeff,
                     std::vector<std::uint64_t>(first, first + static_cast<std::ptrdiff_t>(b.count * r)));
  }
  return out;
}

LabeledCochain LabeledComplex::coboundary(std::size_t n, const LabeledCochain& f) const {
  if (f.empty()) throw InputError("empty cochain");
  const AbGroup& coeff = f.front().coeff();
  std::size_t r = coeff.rank();
  auto flat = flatten(n, f);
  IntMatrix d = boundary(n + 1);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(d.cols()) * r, 0);
  for (Eigen::Index g = 0; g < d.outerSize(); ++g)
    for (IntMatrix::InnerIterator it(d, g); it; ++it)
      for (std::size_t j = 0; j < r; ++j) {
        auto m = static_cast<std::int64_t>(coeff.factors()[j]);
        std::int64_t v = (it.value() % m + m) % m;
        auto& o = out[static_cast<std::size_t>(g) * r + j];
        o = (o + static_cast<std::uint64_t>(v) * flat[static_cast<std::size_t>(it.row()) * r + j]) %
            static_cast<std::uint64_t>(m);
      }
  return split(n + 1, coeff, out);
}

IntMatrix ternary_boundary(const OpTable& t, std::size_t n) {
  if (t.arity() != 3) throw InputError("ternary boundary needs a ternary operation");
  return LabeledComplex({t}, Verify::unchecked).boundary(n);
}

IntMatrix labeled_boundary(const OpSystem& system, std::size_t n) {
  return LabeledComplex(system).boundary(n);
}

bool matrices_equal(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  IntMatrix diff = a - b;
  diff.prune(std::int64_t{0});
  return diff.nonZeros() == 0;
}

bool boundary_squares_to_zero(const LabeledComplex& c, std::size_t n) {
  IntMatrix lo = c.boundary(n), hi = c.boundary(n + 1);
  IntMatrix prod = lo * hi;
  prod.prune(std::int64_t{0});
  return prod.nonZeros() == 0;
}

std::vector<std::uint64_t> to_invariant_factors(std::vector<std::uint64_t> orders) {
  std::map<std::uint64_t, std::vector<std::uint64_t>> by_prime;
  for (auto o : orders) {
    if (o == 0) throw InputError("free factor in a finite group");
    for (auto [p, e] : factorize(o)) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < e; ++i) q *= p;
      by_prime[p].push_back(q);
    }
  }
  std::size_t len = 0;
  for (auto& [p, qs] : by_prime) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    len = std::max(len, qs.size());
  }
  std::vector<std::uint64_t> out(len, 1);
  for (auto& [p, qs] : by_prime)
    for (std::size_t i = 0; i < qs.size(); ++i) out[len - 1 - i] *= qs[i];
  return out;
}

namespace {

HomologyResult universal(const LabeledComplex& c, std::size_t n, std::uint64_t coeff) {
  if (n == 0) throw InputError("degree must be at least 1");
  std::uint64_t above = c.generators(n + 1);
  if (above > max_generators)
    throw InputError("degree " + std::to_string(n) + " needs C_" + std::to_string(n + 1) + " with " +
                     std::to_string(above) + " generators (limit " + std::to_string(max_generators) +
                     ")");
  std::uint64_t gens = c.generators(n);
  auto lower = invariant_factors(c.boundary(n));
  auto upper = invariant_factors(c.boundary(n + 1));
  HomologyResult r;
  r.betti = gens - lower.size() - upper.size();
  for (auto& s : upper)
    if (s > 1) r.torsion.push_back(s);
  if (coeff == 0) return r;
  r.integral = false;
  std::vector<std::uint64_t> orders(r.betti, coeff);
  for (auto& s : r.torsion) orders.push_back(gcd_big(s, coeff));
  for (auto& t : lower)
    if (t > 1) orders.push_back(gcd_big(t, coeff));
  r.finite = to_invariant_factors(orders);
  return r;
}

}  // namespace

HomologyResult homology(const LabeledComplex& c, std::size_t n, std::uint64_t coeff) {
  return universal(c, n, coeff);
}

HomologyResult cohomology(const LabeledComplex& c, std::size_t n, std::uint64_t coeff) {
  if (coeff == 0) throw InputError("cohomology needs finite coefficients");
  return universal(c, n, coeff);
}

CohomologySolve cohomology_solve(const LabeledComplex& c, std::size_t n, const AbGroup& coeff) {
  if (n == 0) throw InputError("degree must be at least 1");
  std::uint64_t above = c.generators(n + 1);
  if (above > max_generators)
    throw InputError("cocycle system needs " + std::to_string(above) + " equations (limit " +
                     std::to_string(max_generators) + ")");
  CohomologySolve out;
  out.coeff = coeff;
  out.degree = n;
  std::size_t r = coeff.rank();
  std::uint64_t gens = c.generators(n);
  IntMatrix up = c.boundary(n + 1);
  IntMatrix down = n >= 2 ? IntMatrix(c.boundary(n).transpose()) : IntMatrix();
  std::vector<std::uint64_t> quotient_orders;

  for (std::size_t j = 0; j < r; ++j) {
    std::uint64_t d = coeff.factors()[j];
    ModSystem sys(gens, d);
    for (Eigen::Index g = 0; g < up.outerSize(); ++g) {
      SparseRow row;
      for (IntMatrix::InnerIterator it(up, g); it; ++it)
        row.emplace_back(static_cast<std::uint32_t>(it.row()), it.value());
      sys.add_row(std::move(row));
    }
    auto z = solve_kernel(sys);
    auto embed = [&](const std::vector<std::uint64_t>& v) {
      std::vector<std::uint64_t> flat(gens * r, 0);
      for (std::uint64_t g = 0; g < gens; ++g) flat[g * r + j] = v[g];
      return c.split(n, coeff, flat);
    };
    for (std::size_t i = 0; i < z.size(); ++i) {
      out.cocycles.push_back(embed(z.generators()[i]));
      out.cocycle_orders.push_back(z.orders()[i]);
    }
    std::vector<std::vector<std::uint64_t>> bvecs;
    if (n >= 2) {
      // Row s of d_n, i.e. column s of its transpose, is delta of the
      // elementary cochain at generator s.
      for (Eigen::Index s = 0; s < down.outerSize(); ++s) {
        std::vector<std::uint64_t> v(gens, 0);
        bool any = false;
        for (IntMatrix::InnerIterator it(down, s); it; ++it) {
          auto m = static_cast<std::int64_t>(d);
          v[static_cast<std::size_t>(it.row())] =
              (v[static_cast<std::size_t>(it.row())] + static_cast<std::uint64_t>((it.value() % m + m) % m)) % d;
          any = true;
        }
        if (!any) continue;
        out.coboundaries.push_back(embed(v));
        bvecs.push_back(std::move(v));
      }
    }
    for (auto q : quotient_invariants(z, bvecs)) quotient_orders.push_back(q);
  }
  out.quotient = to_invariant_factors(quotient_orders);
  return out;
}

bool is_cocycle(const LabeledComplex& c, std::size_t n, const LabeledCochain& f) {
  auto d = c.coboundary(n, f);
  for (const auto& b : d)
    if (!b.is_zero()) return false;
  return true;
}

std::optional<LabeledCochain> find_primitive(const LabeledComplex& c, std::size_t n,
                                             const LabeledCochain& f) {
  if (f.empty()) throw InputError("empty cochain");
  const AbGroup& coeff = f.front().coeff();
  std::size_t r = coeff.rank();
  auto flat = c.flatten(n, f);
  if (n == 1) {
    for (auto v : flat)
      if (v) return std::nullopt;
    return LabeledCochain{};
  }
  IntMatrix d = c.boundary(n);
  std::uint64_t lower = c.generators(n - 1);
  std::vector<std::uint64_t> eta(lower * r, 0);
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<SparseRow> rows;
    std::vector<std::int64_t> rhs;
    for (Eigen::Index g = 0; g < d.outerSize(); ++g) {
      SparseRow row;
      for (IntMatrix::InnerIterator it(d, g); it; ++it)
        row.emplace_back(static_cast<std::uint32_t>(it.row()), it.value());
      rows.push_back(std::move(row));
      rhs.push_back(static_cast<std::int64_t>(flat[static_cast<std::size_t>(g) * r + j]));
    }
    auto x = solve_particular(lower, coeff.factors()[j], rows, rhs);
    if (!x) return std::nullopt;
    for (std::uint64_t s = 0; s < lower; ++s) eta[s * r + j] = (*x)[s];
  }
  return c.split(n - 1, coeff, eta);
}

IntMatrix chain_map_F(const OpTable& op0, const OpTable& op1, std::size_t n) {
  if (op0.arity() != 2 || op1.arity() != 2) throw InputError("chain map needs binary operations");
  if (op0.size() != op1.size()) throw InputError("operations act on carriers of different size");
  std::uint64_t size = op0.size();
  std::vector<Triplet> trip;
  if (n == 1) {
    for (std::uint64_t x = 0; x < size; ++x) trip.emplace_back(x, x, 1);
    return from_triplets(size, size, trip);
  }
  LabeledComplex lab({op0, op1}, Verify::unchecked);
  auto blocks = lab.blocks(n);
  auto at = [&](std::size_t block, std::initializer_list<Element> tuple) {
    return static_cast<Eigen::Index>(blocks[block].offset + encode_tuple(tuple, size));
  };
  if (n == 2) {
    std::uint64_t cols = size * size * size;
    for (Element x = 0; x < size; ++x)
      for (Element y0 = 0; y0 < size; ++y0)
        for (Element y1 = 0; y1 < size; ++y1) {
          auto col = static_cast<Eigen::Index>((x * size + y0) * size + y1);
          trip.emplace_back(at(0, {x, y0}), col, 1);
          trip.emplace_back(at(1, {op0({x, y0}), y1}), col, 1);
        }
    return from_triplets(lab.generators(2), cols, trip);
  }
  if (n == 3) {
    std::uint64_t cols = checked_power(size, 5);
    std::vector<Element> t(5, 0);
    for (std::uint64_t col = 0; col < cols; ++col) {
      Element x = t[0], y0 = t[1], y1 = t[2], z0 = t[3], z1 = t[4];
      Element xy = op0({x, y0});
      auto c = static_cast<Eigen::Index>(col);
      trip.emplace_back(at(0, {x, y0, z0}), c, 1);
      trip.emplace_back(at(1, {op0({x, z0}), op0({y0, z0}), z1}), c, 1);
      trip.emplace_back(at(2, {xy, y1, z0}), c, 1);
      trip.emplace_back(at(3, {op0({xy, z0}), op0({y1, z0}), z1}), c, 1);
      advance_tuple(t, static_cast<Element>(size));
    }
    return from_triplets(lab.generators(3), cols, trip);
  }
  throw InputError("chain map defined for degrees 1 to 3");
}

bool verify_chain_map(const OpTable& op0, const OpTable& op1) {
  OpTable t = f_functor(op0, op1);
  LabeledComplex ternary({t}, Verify::unchecked);
  LabeledComplex lab({op0, op1});
  IntMatrix f1 = chain_map_F(op0, op1, 1), f2 = chain_map_F(op0, op1, 2), f3 = chain_map_F(op0, op1, 3);
  IntMatrix lhs2 = f1 * ternary.boundary(2), rhs2 = lab.boundary(2) * f2;
  IntMatrix lhs3 = f2 * ternary.boundary(3), rhs3 = lab.boundary(3) * f3;
  return matrices_equal(lhs2, rhs2) && matrices_equal(lhs3, rhs3);
}

Cochain pullback_labeled_2cocycle(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                                  const OpTable& op1, Verify verify) {
  LabeledComplex lab({op0, op1}, verify);
  LabeledCochain f{phi0, phi1};
  if (verify == Verify::checked && !is_cocycle(lab, 2, f))
    throw HypothesisError("cochain pair is not a labeled 2-cocycle");
  const AbGroup& coeff = phi0.coeff();
  std::size_t r = coeff.rank();
  auto flat = lab.flatten(2, f);
  IntMatrix f2 = chain_map_F(op0, op1, 2);
  Cochain out(op0.size(), 3, coeff);
  for (Eigen::Index g = 0; g < f2.outerSize(); ++g)
    for (IntMatrix::InnerIterator it(f2, g); it; ++it)
      for (std::size_t j = 0; j < r; ++j) {
        auto m = static_cast<std::int64_t>(coeff.factors()[j]);
        auto coef = static_cast<std::uint64_t>((it.value() % m + m) % m);
        auto cur = out.at(static_cast<std::uint64_t>(g), j);
        out.set(static_cast<std::uint64_t>(g), j,
                cur + coef * flat[static_cast<std::size_t>(it.row()) * r + j]);
      }
  return out;
}

}  // namespace sdops
