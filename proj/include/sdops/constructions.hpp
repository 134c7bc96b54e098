#pragma once

// Example families and the constructions that build new operation tables
// from old ones.  Constructors that depend on hypotheses verify them unless
// called with Verify::unchecked, and refuse with a HypothesisError.
//
// Product carriers X x Y encode the pair (a, b) as a * |Y| + b.

#include <cstdint>
#include <utility>
#include <vector>

#include "sdops/core.hpp"

namespace sdops {

inline Element pair_index(Element a, Element b, std::size_t second_size) {
  return static_cast<Element>(a * second_size + b);
}

/// W(x_1, ..., x_k) = c_1 x_1 + ... + c_{k-1} x_{k-1} + (1 - c_1 - ... - c_{k-1}) x_k mod N.
/// Provenance records whether c_1 is a unit (needed for the rack property).
OpTable affine_op(std::size_t modulus, std::size_t arity, const std::vector<std::int64_t>& coeffs);

/// Closed-form criteria for affine_op(N, 3, {t, s}) and affine_op(N, 3, {t', s'})
/// to be compatible, with u = 1 - t - s and u' = 1 - t' - s'.
///   exact:     u(t' - t) = u(s' - s) = 0 and s'(t - t') = s'(s - s') = 0
///   symmetric: u(t' - t) = u(s' - s) = 0 and u'(t - t') = u'(s - s') = 0
/// Comparing coefficients in both laws gives the exact form: in the second
/// law T0 enters through the s'-weighted slot.  The symmetric form agrees
/// with it whenever t and t' are units mod 4 but not in general.
enum class AffineCriterion { exact, symmetric };
bool affine_compatibility_conditions(std::size_t modulus, std::int64_t t, std::int64_t s, std::int64_t t2,
                                     std::int64_t s2, AffineCriterion form = AffineCriterion::exact);

/// x * y = 2y - x mod N.
OpTable dihedral_quandle(std::size_t n);
/// W(x, ...) = x.
OpTable projection_op(std::size_t size, std::size_t arity);

OpTable conj_quandle(const FiniteGroup& g);  // a * b = b^-1 a b
OpTable core_quandle(const FiniteGroup& g);  // a * b = b a^-1 b
OpTable heap_op(const FiniteGroup& g);       // T(x, y, z) = x y^-1 z

bool is_automorphism(const FiniteGroup& g, std::span<const Element> f);
/// x * y = f(x y^-1) y.
OpTable generalized_alexander(const FiniteGroup& g, std::span<const Element> f);
/// Alexander tables for two commuting automorphisms; refuses if they do not commute.
std::pair<OpTable, OpTable> generalized_alexander_pair(const FiniteGroup& g,
                                                       std::span<const Element> f0,
                                                       std::span<const Element> f1);

/// W^n(x, y) = W(W^(n-1)(x, y), y); n = 0 gives the projection.
OpTable power_op(const OpTable& op, std::size_t n);

/// (W . W')(x, y) = W(W'(x, y), y).
OpTable monoid_product(const OpTable& w, const OpTable& w_prime);

/// (x0, y0) *0 (x1, y1) = (x0 *X x1, y0) and (x0, y0) *1 (x1, y1) = (x0, y0 *Y y1).
std::pair<OpTable, OpTable> product_mutual_pair(const OpTable& rack_x, const OpTable& rack_y,
                                                Verify verify = Verify::checked);

/// (x0, x1) * (y0, y1) = ((x0 *0 y0) *1 y1, (x1 *0 y0) *1 y1) on X^2.
OpTable doubling_binary(const OpTable& op0, const OpTable& op1, Verify verify = Verify::checked);

/// T((x0,x1),(y0,y1),(z0,z1)) = (T0(T0(x0,y0,y1),z0,z1), T1(T1(x1,y0,y1),z0,z1)).
OpTable doubling_ternary(const OpTable& t0, const OpTable& t1, Verify verify = Verify::checked);

/// T(x, y0, y1) = (x *0 y0) *1 y1.
OpTable f_functor(const OpTable& op0, const OpTable& op1, Verify verify = Verify::checked);

/// (x0, x1) * (y0, y1) = (T0(x0, y0, y1), T1(x1, y0, y1)) on X^2.
OpTable g_functor(const OpTable& t0, const OpTable& t1, Verify verify = Verify::checked);

/// g_functor(F, F) == doubling_binary(op0, op1) with F = f_functor(op0, op1).
bool verify_functor_identity_binary(const OpTable& op0, const OpTable& op1);
/// f_functor(G, G) == doubling_ternary(t0, t1) with G = g_functor(t0, t1).
bool verify_functor_identity_ternary(const OpTable& t0, const OpTable& t1);

/// W(x, y, z) = Wn(Wm(x, y), z) of arity m + n - 1.
OpTable compose_mn(const OpTable& wm, const OpTable& wn, Verify verify = Verify::checked);

/// Right action of a group on {0..size-1}: action[x * |G| + g] = x . g.
bool is_right_action(std::size_t size, const FiniteGroup& g, std::span<const Element> action);

/// T(x, y0, y1) = x . p(y0, y1), where p[y0 * size + y1] is a group element
/// with p(y0 g, y1 g) = g^-1 p(y0, y1) g.  The witness of an equivariance
/// failure is (y0, y1, g).
CheckResult augmentation_equivariance(std::size_t size, const FiniteGroup& g,
                                      std::span<const Element> action, std::span<const Element> p);
OpTable augmented_ternary(std::size_t size, const FiniteGroup& g, std::span<const Element> action,
                          std::span<const Element> p, Verify verify = Verify::checked);

/// T(x, x, y) = T(x, y, y) for all x, y.
bool has_diagonal_symmetry(const OpTable& t);

enum class Structure { shelf, rack, quandle };
bool has_structure(const OpTable& op, Structure s);

/// All tables of the given shape with the requested structure, in
/// lexicographic table order.  Full enumeration is limited to size^(size^arity)
/// up to 3^9 binary and 2^8 ternary tables.
std::vector<OpTable> enumerate_operations(std::size_t size, std::size_t arity, Structure s);

/// Affine tables of the given shape with unit leading coefficient and
/// coefficients in lexicographic order.
std::vector<OpTable> enumerate_affine(std::size_t size, std::size_t arity);

/// Ordered pairs (a, b) from `ops` with a and b mutually distributive.
std::vector<std::pair<OpTable, OpTable>> mutual_pairs(const std::vector<OpTable>& ops);

}  // namespace sdops
