#pragma once

// Linear systems over Z/d.  The modulus is split into prime powers; each
// prime power is handled by row echelon reduction over the local ring
// Z/p^e, followed by a Smith-style column reduction when e > 1.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

namespace sdops {

using SparseRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Homogeneous system rows . x = 0 over Z/modulus in `nvars` unknowns.
class ModSystem {
 public:
  ModSystem(std::size_t nvars, std::uint64_t modulus);

  /// Terms with repeated columns are summed; zero and duplicate rows are dropped.
  void add_row(SparseRow row);

  std::size_t nvars() const { return nvars_; }
  std::uint64_t modulus() const { return modulus_; }
  const std::vector<SparseRow>& rows() const { return rows_; }

 private:
  std::size_t nvars_;
  std::uint64_t modulus_;
  std::vector<SparseRow> rows_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> seen_;
};

/// A submodule of (Z/d)^n written as an internal direct sum of cyclic
/// subgroups generated by generators()[i] of order orders()[i].
class CyclicDecomposition {
 public:
  struct Part {
    std::uint64_t q = 1, p = 1;
    unsigned e = 0;
    std::uint64_t lift = 0;  // CRT idempotent mapping residues mod q into Z/d
    std::vector<std::vector<std::uint64_t>> coord_rows;
    std::vector<std::uint64_t> divisors;
    std::vector<std::uint64_t> orders;
    std::vector<std::vector<std::uint64_t>> gens;  // mod q
  };

  CyclicDecomposition(std::uint64_t modulus, std::size_t dim, std::vector<Part> parts);

  std::uint64_t modulus() const { return modulus_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return orders_.size(); }
  const std::vector<std::vector<std::uint64_t>>& generators() const { return gens_; }
  const std::vector<std::uint64_t>& orders() const { return orders_; }

  /// Coordinates c with x = sum c_i g_i, c_i mod orders()[i]; nullopt when
  /// x is not in the submodule.
  std::optional<std::vector<std::uint64_t>> coordinates(const std::vector<std::uint64_t>& x) const;

  /// Order of the submodule as a list of cyclic orders (product may overflow).
  std::vector<std::uint64_t> cyclic_orders() const { return orders_; }

 private:
  std::uint64_t modulus_;
  std::size_t dim_;
  std::vector<Part> parts_;
  std::vector<std::vector<std::uint64_t>> gens_;
  std::vector<std::uint64_t> orders_;
};

/// The solution module { x : rows . x = 0 }.
CyclicDecomposition solve_kernel(const ModSystem& system);

/// Some x with rows . x = rhs (rhs indexed by row position), or nullopt.
std::optional<std::vector<std::uint64_t>> solve_particular(std::size_t nvars, std::uint64_t modulus,
                                                           const std::vector<SparseRow>& rows,
                                                           const std::vector<std::int64_t>& rhs);

/// Invariant factors (> 1) of the quotient of `z` by the span of `b`; every
/// element of `b` must lie in `z`.
std::vector<std::uint64_t> quotient_invariants(const CyclicDecomposition& z,
                                               const std::vector<std::vector<std::uint64_t>>& b);

/// Prime factorization as (p, e) pairs in increasing p.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

}  // namespace sdops
