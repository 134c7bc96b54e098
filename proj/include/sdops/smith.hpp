#pragma once

// Exact integer matrices and Smith normal form.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace sdops {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = Eigen::SparseMatrix<std::int64_t>;
using BigMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

struct SmithForm {
  BigMatrix u, d, v;            // u * m * v == d
  std::vector<BigInt> factors;  // nonzero diagonal entries, d_1 | d_2 | ...
};

/// Smith normal form with unimodular transforms.  Dense; meant for small
/// matrices and for checking the fast path.
SmithForm smith_normal_form(const BigMatrix& m);

/// Nonzero invariant factors (units included) of a dense matrix.
std::vector<BigInt> invariant_factors_dense(BigMatrix m);

/// Nonzero invariant factors (units included) of a sparse integer matrix.
/// Unit pivots are eliminated sparsely with overflow-checked 64-bit
/// arithmetic; the remainder is reduced densely with arbitrary precision.
std::vector<BigInt> invariant_factors(const IntMatrix& m);

BigMatrix to_big(const IntMatrix& m);
BigInt determinant(BigMatrix m);  // fraction-free elimination

}  // namespace sdops
