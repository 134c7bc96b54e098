#pragma once

// Cocycle conditions, cocycles built from other cocycles, abelian
// extensions, and classification of extensions.
//
// Sign conventions follow the homology module: for a degree-1 cochain eta,
// (delta eta)(x, y) = eta(x) - eta(x * y), so cohomologous cocycles differ
// by such a term.  Extensions of an operation W by a cochain f act on the
// carrier X x A, encoded (x, a) -> x * |A| + index(a):
//   (x, a) * ((y_1, b_1), ...) = (W(x, y_1, ...), a + f(x, y_1, ...)).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdops/cochain.hpp"
#include "sdops/core.hpp"

namespace sdops {

/// Witnesses in this module report lhs and rhs as element indices of the
/// coefficient group.
///
/// phi(x,y) + phi(x*y, z) = phi(x,z) + phi(x*z, y*z).
CheckResult is_binary_2cocycle(const Cochain& phi, const OpTable& op);
/// psi(x,y,z) + psi(T(x,y,z),u,v) = psi(x,u,v) + psi(T(x,u,v),T(y,u,v),T(z,u,v)).
CheckResult is_ternary_2cocycle(const Cochain& psi, const OpTable& t);
/// The 2-cocycle condition for an operation of any arity (nargs == arity).
CheckResult is_2cocycle(const Cochain& f, const OpTable& op);

/// law 0: phi0(x,y) + phi1(x *0 y, z) = phi1(x,z) + phi0(x *1 z, y *1 z)
/// law 1: phi1(x,y) + phi0(x *1 y, z) = phi0(x,z) + phi1(x *0 z, y *0 z)
CheckResult are_mutually_distributive_cocycles(const Cochain& phi0, const Cochain& phi1,
                                               const OpTable& op0, const OpTable& op1);

/// Which x enters psi1(T1(., z0, z1), ...) in the second compatibility law.
/// `proof` uses x1, which is what the doubled cocycle argument needs;
/// `literal` uses x0 as the condition is sometimes printed.
enum class CocycleVariant { proof, literal };

/// Over tuples (x0, x1, y0, y1, z0, z1):
/// law 0: psi0(x0,y) + psi1(T1(x1,y),z) = psi1(x1,z) + psi0(T0(x0,z), T0(y0,z), T1(y1,z))
/// law 1: psi1(x1,y) + psi0(T0(x0,y),z) = psi0(x0,z) + psi1(T1(x1,z), T0(y0,z), T1(y1,z))
CheckResult are_compatible_ternary_cocycles(const Cochain& psi0, const Cochain& psi1,
                                            const OpTable& t0, const OpTable& t1,
                                            CocycleVariant variant = CocycleVariant::proof);

/// Solution module of a cocycle system written as generators with orders.
/// Each generator is one cochain per unknown slot (one slot for a single
/// cocycle, two for a pair).
struct CocycleSpace {
  AbGroup coeff;
  std::vector<std::vector<Cochain>> generators;
  std::vector<std::uint64_t> orders;
  /// Number of elements, or nullopt beyond 2^63.
  std::optional<std::uint64_t> count() const;
  /// Element with coordinates c (c_i taken mod orders[i]).
  std::vector<Cochain> element(const std::vector<std::uint64_t>& c) const;
  /// Every element in mixed-radix coordinate order; refuses above `limit`.
  std::vector<std::vector<Cochain>> elements(std::uint64_t limit = 1'000'000) const;
};

CocycleSpace solve_2cocycles(const OpTable& op, const AbGroup& coeff);
/// Pairs satisfying both individual conditions and both mutual laws.
CocycleSpace solve_mutual_cocycle_pairs(const OpTable& op0, const OpTable& op1, const AbGroup& coeff);
/// Pairs of ternary cocycles satisfying both compatibility laws.
CocycleSpace solve_compatible_cocycle_pairs(const OpTable& t0, const OpTable& t1, const AbGroup& coeff,
                                            CocycleVariant variant = CocycleVariant::proof);

/// Abelian extension of `op` by `f` (binary, ternary or any arity).
OpTable extend(const OpTable& op, const Cochain& f, Verify verify = Verify::checked);
std::pair<OpTable, OpTable> extend_mutual_pair(const OpTable& op0, const OpTable& op1,
                                               const Cochain& phi0, const Cochain& phi1,
                                               Verify verify = Verify::checked);

/// Recover (base, cocycle) from a table of extension form over `base` with
/// fiber `a`; throws InputError if the table is not of that form.
Cochain extension_cocycle(const OpTable& e, const OpTable& base, const AbGroup& a);

/// psi(x, y, z) = phi0(x, y) + phi1(x *0 y, z), a 2-cocycle of f_functor(op0, op1).
Cochain ternary_cocycle_from_pair(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                                  const OpTable& op1, Verify verify = Verify::checked);
/// phi((x0,x1),(y0,y1)) = psi0(x0,y0,y1) + psi1(x1,y0,y1), a 2-cocycle of g_functor(t0, t1).
Cochain binary_cocycle_from_ternary_pair(const Cochain& psi0, const Cochain& psi1, const OpTable& t0,
                                         const OpTable& t1, Verify verify = Verify::checked);
/// phi0(x0,y0) + phi1(x0 *0 y0, y1) + phi0(x1,y0) + phi1(x1 *0 y0, y1) on X^2.
Cochain doubled_binary_cocycle(const Cochain& phi0, const Cochain& phi1, const OpTable& op0,
                               const OpTable& op1, Verify verify = Verify::checked);
/// The same cochain obtained by passing through the ternary operation
/// T = f_functor(op0, op1) and the pair (psi, psi) over (T, T).
Cochain doubled_binary_cocycle_via_functors(const Cochain& phi0, const Cochain& phi1,
                                            const OpTable& op0, const OpTable& op1);
/// psi0(x0,y) + psi1(x1,y) + psi0(T0(x0,y),z) + psi1(T1(x1,y),z) on X^2.
Cochain doubled_ternary_cocycle(const Cochain& psi0, const Cochain& psi1, const OpTable& t0,
                                const OpTable& t1, Verify verify = Verify::checked);
/// The same cochain via G = g_functor(t0, t1) and the pair (phi, phi) over (G, G).
Cochain doubled_ternary_cocycle_via_functors(const Cochain& psi0, const Cochain& psi1,
                                             const OpTable& t0, const OpTable& t1);

/// phi_n(x, y) = phi(x, y) + phi(x * y, y) + ... + phi(x *^(n-1) y, y).
Cochain power_cocycle(const Cochain& phi, const OpTable& op, std::size_t n,
                      Verify verify = Verify::checked);

/// 0 -> H -> E -> A -> 0 given by index maps between the element indices of
/// the three groups.  The section need not be additive but must send 0 to 0.
struct Ses {
  AbGroup h, e, a;
  std::vector<std::uint64_t> inclusion;   // H -> E
  std::vector<std::uint64_t> projection;  // E -> A
  std::vector<std::uint64_t> section;     // A -> E
};
/// Throws InputError unless inclusion and projection are homomorphisms,
/// the sequence is exact, and the section is a normalized set-theoretic
/// splitting.
void validate_ses(const Ses& s);
/// 0 -> Z/h -> Z/(h a) -> Z/a -> 0, inclusion x -> a x, section b -> b.
Ses cyclic_ses(std::uint64_t h, std::uint64_t a);
/// alpha(x1..x5) = s phi(x1,x2,x3) - s phi(T(x1,x4,x5), T(x2,x4,x5), T(x3,x4,x5))
///               - s phi(x1,x4,x5) + s phi(T(x1,x2,x3), x4, x5), read in H.
Cochain three_cocycle_from_ses(const Cochain& phi, const OpTable& t, const Ses& ses,
                               Verify verify = Verify::checked);

/// Degree-n cocycle condition of a single operation, evaluated directly
/// (no matrices) over all generators of degree n + 1.
CheckResult is_cocycle_of_degree(const Cochain& f, const OpTable& op, std::size_t n);

struct ExtensionEquivalence {
  bool equivalent = false;
  /// "translations" if only maps (x, a) -> (x, a + eta(x)) were searched,
  /// "full" if every fiber-preserving bijection was.
  std::string method;
  std::optional<std::vector<Element>> map;  // E1 -> E2 on the total carrier
};
/// Fiber-preserving isomorphism search between two extension-form tables.
/// The full search runs when (|A|!)^N is at most `full_limit`.
ExtensionEquivalence extension_equivalent(const OpTable& e1, const OpTable& e2, const OpTable& base,
                                          const AbGroup& a, std::uint64_t full_limit = 100'000);

/// eta with psi1 - psi2 = delta eta, or nullopt.
std::optional<Cochain> cocycles_cohomologous(const Cochain& psi1, const Cochain& psi2, const OpTable& op);
/// delta eta for a 1-cochain eta.
Cochain coboundary_of(const Cochain& eta, const OpTable& op);

/// The extension E = Z/p^(m+1) -> X = Z/p^m with T(x,y,z) = (1-2p)x + py + pz
/// split into digits: E ~ X x Z/p via x -> (x mod p^m, top digit).  `psi`
/// is the carry cocycle of that splitting, `total` the operation on E.
struct DigitExtension {
  std::uint64_t p = 0;
  unsigned m = 0;
  OpTable base;   // on Z/p^m
  Cochain psi;    // X^3 -> Z/p
  OpTable total;  // on Z/p^(m+1)
};
DigitExtension digit_extension(std::uint64_t p, unsigned m);

/// An integral chain as a list of (coefficient, generator tuple).
using Chain = std::vector<std::pair<std::int64_t, Tuple>>;
/// (0, r, r) + (2rp, -r + 2rp + p^(m-1), -r + 2rp + p^(m-1)) in C_2 of Z/p^m.
Chain digit_cycle(std::uint64_t p, unsigned m, std::uint64_t r);
/// Is the chain a cycle of the single-operation complex?
bool is_cycle(const Chain& c, const OpTable& op);
/// Pairing of a cochain with a chain.
AbGroup::Value evaluate_on_chain(const Cochain& f, const Chain& c);

}  // namespace sdops
