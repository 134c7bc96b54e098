#pragma once

// Chain complexes of racks and mutually distributive systems, their
// integral and finite-coefficient (co)homology.
//
// A system is a list of operations on one carrier; operation i carries
// label i.  A degree-n generator is (x0, (v_1, e_1), ..., (v_{n-1}, e_{n-1}))
// where v_i lies in X^(arity(e_i) - 1).  Generators are ordered first by
// the label vector (lexicographically), then by the flattened tuple
// (x0, v_1, ..., v_{n-1}).  C_1 is spanned by the points, C_0 = 0, and
//   d(x) = sum_i (-1)^i [ (x0 *_{e_i} v_i, v_1 *_{e_i} v_i, .., ^i, ..) - (x0, .., ^i, ..) ]
// where the action on v_j (j < i) is coordinatewise and entries after
// slot i are left alone.  A single ternary operation gives the ternary rack
// complex with C_n spanned by (2n-1)-tuples.

#include <cstdint>
#include <optional>
#include <vector>

#include "sdops/cochain.hpp"
#include "sdops/core.hpp"
#include "sdops/smith.hpp"

namespace sdops {

using OpSystem = std::vector<OpTable>;

/// Per-block cochain: one Cochain for each label vector of the degree, in
/// generator order.  For a single operation there is exactly one block.
using LabeledCochain = std::vector<Cochain>;

class LabeledComplex {
 public:
  struct Block {
    std::vector<std::size_t> labels;
    std::size_t length = 0;  // flattened tuple length
    std::uint64_t offset = 0;
    std::uint64_t count = 0;
  };

  /// With Verify::checked the operations must be pairwise mutually
  /// distributive (each one self-distributive included).
  explicit LabeledComplex(OpSystem ops, Verify verify = Verify::checked);

  std::size_t size() const { return size_; }
  const OpSystem& ops() const { return ops_; }

  std::vector<Block> blocks(std::size_t n) const;
  std::uint64_t generators(std::size_t n) const;

  /// Index of a generator given its labels and flattened tuple.
  std::uint64_t index_of(std::size_t n, std::span<const std::size_t> labels,
                         std::span<const Element> tuple) const;

  /// Matrix of d_n : C_n -> C_{n-1}; rows index C_{n-1}, columns C_n.
  IntMatrix boundary(std::size_t n) const;

  /// Zero cochain of degree n.
  LabeledCochain zero(std::size_t n, const AbGroup& coeff) const;
  /// Flatten / split a cochain over the generators of degree n.
  std::vector<std::uint64_t> flatten(std::size_t n, const LabeledCochain& f) const;
  LabeledCochain split(std::size_t n, const AbGroup& coeff, const std::vector<std::uint64_t>& flat) const;

  /// (delta f)(g) = f(d_{n+1} g) for a degree-n cochain f.
  LabeledCochain coboundary(std::size_t n, const LabeledCochain& f) const;

 private:
  OpSystem ops_;
  std::size_t size_ = 0;
};

/// Largest generator count the homology routines accept for C_{n+1}.
inline constexpr std::uint64_t max_generators = 200'000;

IntMatrix ternary_boundary(const OpTable& t, std::size_t n);
IntMatrix labeled_boundary(const OpSystem& system, std::size_t n);

/// Dense count check of d_n d_{n+1} == 0.
bool boundary_squares_to_zero(const LabeledComplex& c, std::size_t n);

struct HomologyResult {
  std::uint64_t betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, dividing chain
  /// For finite coefficients Z/d: the cyclic orders of the group
  /// (Z/d)^betti + sum Z/gcd(s, d) + sum Z/gcd(t, d); empty otherwise.
  std::vector<std::uint64_t> finite;
  bool integral = true;
};

/// H_n with integer coefficients (coeff == 0) or with Z/coeff.
HomologyResult homology(const LabeledComplex& c, std::size_t n, std::uint64_t coeff = 0);
/// H^n with coefficients Z/coeff via universal coefficients.
HomologyResult cohomology(const LabeledComplex& c, std::size_t n, std::uint64_t coeff);

/// Sort a list of cyclic orders into invariant-factor form (units dropped).
std::vector<std::uint64_t> to_invariant_factors(std::vector<std::uint64_t> orders);

struct CohomologySolve {
  AbGroup coeff;
  std::size_t degree = 0;
  std::vector<LabeledCochain> cocycles;      // internal direct sum basis
  std::vector<std::uint64_t> cocycle_orders;  // order of each basis element
  std::vector<LabeledCochain> coboundaries;  // delta of the elementary (n-1)-cochains
  std::vector<std::uint64_t> quotient;       // invariant factors of Z^n / B^n
};

/// Explicit cocycles, coboundaries, and their quotient.
CohomologySolve cohomology_solve(const LabeledComplex& c, std::size_t n, const AbGroup& coeff);

/// Is `f` a degree-n cocycle?
bool is_cocycle(const LabeledComplex& c, std::size_t n, const LabeledCochain& f);

/// Some eta with delta eta = f, or nullopt.  f is a degree-n cochain.
std::optional<LabeledCochain> find_primitive(const LabeledComplex& c, std::size_t n,
                                             const LabeledCochain& f);

/// Chain map from the ternary complex of T = F(op0, op1) to the labeled
/// complex of (op0, op1), degrees 1 to 3:
///   n = 1: identity on points
///   n = 2: (x, y0, y1) -> (x, y0)_0 + (x *0 y0, y1)_1
///   n = 3: (x, y0, y1, z0, z1) -> (x, y0, z0)_00 + (x *0 z0, y0 *0 z0, z1)_01
///          + (x *0 y0, y1, z0)_10 + ((x *0 y0) *0 z0, y1 *0 z0, z1)_11
IntMatrix chain_map_F(const OpTable& op0, const OpTable& op1, std::size_t n);

/// F_1 d_T = d F_2 and F_2 d_T = d F_3 as exact matrix identities.
bool verify_chain_map(const OpTable& op0, const OpTable& op1);

/// The ternary 2-cochain obtained by composing (phi0, phi1) with F_2.
Cochain pullback_labeled_2cocycle(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                                  const OpTable& op1, Verify verify = Verify::checked);

bool matrices_equal(const IntMatrix& a, const IntMatrix& b);

}  // namespace sdops
