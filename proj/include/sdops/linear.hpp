#pragma once

// Self-distributive objects in finite-dimensional vector spaces.
//
// A space is described by its shape: the list of dimensions of its tensor
// factors ({} is the ground field).  The basis of d_1 x ... x d_k is
// enumerated with the first factor most significant, the same convention as
// operation tables, so group-algebra basis vectors index like group
// elements.  Maps are stored as sparse columns; tensor products and factor
// permutations can be applied lazily to vectors without forming the full
// matrix, which is what the distributivity diagram needs.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sdops/core.hpp"

namespace sdops::linear {

using Scalar = boost::multiprecision::cpp_rational;
using Shape = std::vector<std::size_t>;
/// Sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<std::uint64_t, Scalar>>;

std::uint64_t shape_dim(const Shape& s);
Shape power_shape(std::size_t d, std::size_t k);
Shape concat(const Shape& a, const Shape& b);

/// GF(p) for a prime p, or Q when the characteristic is 0.  Elements of
/// GF(p) are kept as residues 0..p-1.
class Field {
 public:
  Field() = default;
  static Field prime(std::uint64_t p);
  static Field rationals() { return Field(); }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  Scalar reduce(const Scalar& v) const;
  Scalar from_int(std::int64_t v) const { return reduce(Scalar(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar inv(const Scalar& a) const;
  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

class LinMap {
 public:
  LinMap() = default;
  /// One sparse column per basis vector of `src`; entries are reduced and
  /// checked against the size of `dst`.
  LinMap(Field field, Shape src, Shape dst, std::vector<SparseVec> columns);

  static LinMap identity(const Field& f, const Shape& s);
  static LinMap zero(const Field& f, const Shape& src, const Shape& dst);
  /// rows[r][c] is the coefficient of basis vector r in the image of c.
  static LinMap from_dense(const Field& f, const Shape& src, const Shape& dst,
                           const std::vector<std::vector<Scalar>>& rows);
  static LinMap from_columns(const Field& f, const Shape& src, const Shape& dst,
                             const std::function<SparseVec(std::uint64_t)>& column);

  const Field& field() const { return field_; }
  const Shape& src() const { return src_; }
  const Shape& dst() const { return dst_; }
  std::uint64_t cols() const { return columns_.size(); }
  std::uint64_t rows() const { return rows_; }
  const SparseVec& column(std::uint64_t j) const { return columns_[j]; }
  Scalar entry(std::uint64_t row, std::uint64_t col) const;
  /// Refuses above 10^7 entries.
  std::vector<std::vector<Scalar>> dense() const;
  SparseVec apply(const SparseVec& v) const;
  LinMap with_entry(std::uint64_t row, std::uint64_t col, const Scalar& value) const;

  /// Same field, shapes and entries.
  bool operator==(const LinMap& o) const;

 private:
  Field field_;
  Shape src_, dst_;
  std::uint64_t rows_ = 1;
  std::vector<SparseVec> columns_;
};

/// a after b.
LinMap compose(const LinMap& a, const LinMap& b);
LinMap add(const LinMap& a, const LinMap& b);
LinMap scale(const LinMap& a, const Scalar& s);
/// First column where the two maps differ (shapes must agree).
std::optional<std::uint64_t> first_difference(const LinMap& a, const LinMap& b);
LinMap tensor(const LinMap& a, const LinMap& b);
LinMap tensor(const std::vector<LinMap>& maps);
/// Output factor i is input factor perm[i].
LinMap factor_permutation(const Field& f, const Shape& src, const std::vector<std::size_t>& perm);
/// tau_{A,B}: A (x) B -> B (x) A, where A and B may have several factors.
LinMap swap_map(const Field& f, const Shape& a, const Shape& b);

/// A composite of stages applied to vectors without materializing the
/// intermediate matrices.  Each stage is a tensor product of maps whose
/// sources tile the current shape, or a factor permutation.
class Pipeline {
 public:
  explicit Pipeline(Shape src) : src_(src), cur_(std::move(src)) {}
  Pipeline& then(const LinMap& m);
  Pipeline& then_tensor(std::vector<LinMap> factors);
  Pipeline& then_permute(std::vector<std::size_t> perm);
  const Shape& src() const { return src_; }
  const Shape& dst() const { return cur_; }
  SparseVec run(const Field& f, SparseVec v) const;
  LinMap materialize(const Field& f) const;

 private:
  struct Stage {
    std::vector<LinMap> factors;   // empty for a permutation
    std::vector<std::size_t> perm;
    Shape in;
  };
  Shape src_, cur_;
  std::vector<Stage> stages_;
};

/// Factor positions of the regrouping from (x_1..x_n, then n-1 blocks of n
/// diagonal copies) to n groups (x_i, i-th copy of every block):
/// output factor k is input factor result[k].
std::vector<std::size_t> shuffle_positions(std::size_t n);
/// The same regrouping as a matrix on d^(n^2); refuses above 10^6 columns.
LinMap shuffle_perm(std::size_t n, std::size_t d, const Field& f = Field::prime(2));

struct ComonoidObject {
  Field field;
  std::size_t dim = 0;
  LinMap delta;   // {d} -> {d, d}
  LinMap counit;  // {d} -> {}
};
/// Coassociativity and both counit laws; empty if they hold, else the law.
std::optional<std::string> comonoid_failure(const ComonoidObject& c);
/// Throws HypothesisError unless the laws hold.
ComonoidObject make_comonoid(Field f, std::size_t dim, LinMap delta, LinMap counit);
/// Delta_1 = 1, Delta_n = (Delta (x) 1^(n-2)) Delta_{n-1}.
LinMap iterated_delta(const ComonoidObject& c, std::size_t n);

struct SDObject {
  ComonoidObject comonoid;
  std::size_t arity = 0;
  LinMap W;  // {d,...,d} -> {d}
};

struct LinCheck {
  bool holds = true;
  std::optional<std::uint64_t> column;  // first failing basis input
  std::string law;
  explicit operator bool() const { return holds; }
};

/// W (W (x) 1^(n-1)) against W W^(x)n shuffle_n (1^n (x) Delta_n^(x)(n-1)) as
/// exact maps on d^(2n-1); refuses d^(2n-1) > 10^6.
LinCheck check_nary_sd(const SDObject& obj);
/// Both composites of the diagram as matrices; same guard as check_nary_sd.
std::pair<LinMap, LinMap> sd_sides(const SDObject& obj);
/// Validates shapes, then (unless unchecked) the diagram; throws HypothesisError.
SDObject make_sd_object(ComonoidObject c, LinMap W, Verify verify = Verify::checked);

struct HopfAlgebraObject {
  Field field;
  std::size_t dim = 0;
  LinMap unit;      // {} -> {d}
  LinMap mult;      // {d, d} -> {d}
  LinMap delta;     // {d} -> {d, d}
  LinMap counit;    // {d} -> {}
  LinMap antipode;  // {d} -> {d}
  ComonoidObject comonoid() const { return {field, dim, delta, counit}; }
};
std::optional<std::string> hopf_failure(const HopfAlgebraObject& h);
HopfAlgebraObject make_hopf(Field f, std::size_t dim, LinMap unit, LinMap mult, LinMap delta, LinMap counit,
                            LinMap antipode);

struct LieAlgebraObject {
  Field field;
  std::size_t dim = 0;
  LinMap bracket;  // {d, d} -> {d}
};
std::optional<std::string> lie_failure(const LieAlgebraObject& l);
LieAlgebraObject make_lie(Field f, std::size_t dim, LinMap bracket);
/// [e_0, e_1] = e_1.
LieAlgebraObject nonabelian_lie2(const Field& f);
LieAlgebraObject abelian_lie(const Field& f, std::size_t dim);

/// X = k + L with basis (1,0), (0,e_1), ..., (0,e_m) and
/// Delta(a,x) = (a,x) (x) (1,0) + (1,0) (x) (0,x), eps(a,x) = a,
/// q((a,x),(b,y)) = (ab, bx + [x,y]).
SDObject lie_to_binary_sd(const LieAlgebraObject& l, Verify verify = Verify::checked);
/// T = q (q (x) 1) on the same comonoid.
SDObject categorical_double(const SDObject& binary, Verify verify = Verify::checked);
/// (a,x),(b,y),(c,z) -> (abc, bcx + c[x,y] + b[x,z] + [[x,y],z]) built
/// from the bracket alone.
LinMap lie_ternary_formula(const LieAlgebraObject& l);

/// k[G]: Delta(g) = g (x) g, eps(g) = 1, S(g) = g^-1.
HopfAlgebraObject group_algebra_hopf(const FiniteGroup& g, const Field& f);
/// x (x) y (x) z -> x S(y) z.
SDObject hopf_heap(const HopfAlgebraObject& h, Verify verify = Verify::checked);
/// x (x) y (x) z -> S(z1) S(y1) x y2 z2.
SDObject hopf_adjoint_ternary(const HopfAlgebraObject& h, Verify verify = Verify::checked);

/// The composite of the iterated product of `count` factors.
LinMap iterated_mult(const HopfAlgebraObject& h, std::size_t count);

struct AugmentedReport {
  bool holds = false;
  std::string failure;  // which axiom failed, empty when holds
  std::optional<SDObject> derived;  // T = mu (1 (x) p), present when holds
};
/// Thrown when p is not a coalgebra morphism, kept apart from a failing
/// augmentation axiom.
class NotCoalgebraMorphism : public HypothesisError {
 public:
  using HypothesisError::HypothesisError;
};
/// X a comonoid with right H-action mu: {dX, dH} -> {dX}; p: {dX, dX} -> {dH}.
/// Checks the action, then that p is a coalgebra morphism (throws
/// NotCoalgebraMorphism otherwise), then p(z . Delta(g)) = S(g1) p(z) g2, and
/// finally the distributivity of T = mu (1 (x) p).
AugmentedReport check_augmented_hopf(const LinMap& p, const HopfAlgebraObject& h, const ComonoidObject& x,
                                     const LinMap& mu);

/// (Delta (x) 1) tau = tau (1 (x) Delta) and tau (q (x) 1) = (1 (x) q) tau with Y = X.
LinCheck switching_identities_check(const SDObject& binary);

}  // namespace sdops::linear
