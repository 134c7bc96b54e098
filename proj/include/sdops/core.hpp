#pragma once

// Finite n-ary operation tables and the axiom checks that act on them.
//
// A k-ary operation on the carrier {0, ..., N-1} is stored as a flat table of
// length N^k.  The tuple (a_1, ..., a_k) lives at index sum_i a_i * N^(k-i),
// i.e. the first argument is the most significant digit.  Every other module
// (product carriers, chain generators, cochain tables, tensor bases) inherits
// this convention.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace sdops {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

/// Malformed input: wrong lengths, out-of-range entries, shape mismatches.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A witness that an identity fails: evaluating both sides at `witness`
/// gives `lhs != rhs`.  `law` names which identity of a multi-identity
/// check failed (0-based, in the order the check documents).
struct Counterexample {
  Tuple witness;
  Element lhs = 0;
  Element rhs = 0;
  int law = 0;
};

/// The hypotheses of a construction do not hold.  Carries the witness when
/// the failing hypothesis is an identity over the tuple space.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what,
                           std::optional<Counterexample> witness = std::nullopt)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::optional<Counterexample>& witness() const { return witness_; }

 private:
  std::optional<Counterexample> witness_;
};

struct CheckResult {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  explicit operator bool() const { return holds; }
};

/// Whether constructors verify their hypotheses.  `unchecked` exists for
/// experimentation and for composites whose intermediate hypotheses are
/// known not to be needed.
enum class Verify { checked, unchecked };

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent);

/// Mixed-radix encoding with a uniform radix, first digit most significant.
std::uint64_t encode_tuple(std::span<const Element> digits, std::uint64_t radix);
void decode_tuple(std::uint64_t index, std::uint64_t radix, std::span<Element> out);
Tuple decode_tuple(std::uint64_t index, std::uint64_t radix, std::size_t length);

class OpTable {
 public:
  OpTable() = default;
  /// Validates length == size^arity and every entry < size.
  OpTable(std::size_t size, std::size_t arity, std::vector<Element> table,
          nlohmann::json provenance = nullptr);

  std::size_t size() const { return size_; }
  std::size_t arity() const { return arity_; }
  std::span<const Element> table() const { return table_; }
  const nlohmann::json& provenance() const { return provenance_; }
  void set_provenance(nlohmann::json p) { provenance_ = std::move(p); }

  /// Unchecked lookup; `args` must have length arity() with entries < size().
  Element operator()(std::span<const Element> args) const {
    std::uint64_t idx = 0;
    for (Element a : args) idx = idx * size_ + a;
    return table_[idx];
  }
  Element operator()(std::initializer_list<Element> args) const {
    return (*this)(std::span<const Element>(args.begin(), args.size()));
  }
  Element at_index(std::uint64_t idx) const { return table_[idx]; }

  /// Entry-wise equality of shape and table; provenance is ignored.
  bool same_table(const OpTable& other) const {
    return size_ == other.size_ && arity_ == other.arity_ && table_ == other.table_;
  }

 private:
  std::size_t size_ = 0;
  std::size_t arity_ = 0;
  std::vector<Element> table_;
  nlohmann::json provenance_;
};

OpTable make_op_table(std::size_t size, std::size_t arity, std::vector<Element> entries);

/// Checked evaluation: arity and range errors throw InputError.
Element evaluate(const OpTable& op, std::span<const Element> args);

/// Right n-ary distributivity W(W(x,y),z) = W(W(x,z), W(y_1,z), ..., W(y_{k-1},z))
/// over all N^(2k-1) tuples (x, y, z).  The first failure in lexicographic
/// order is reported.
CheckResult is_nary_distributive(const OpTable& op);

/// Distributivity checked on `samples` uniformly random tuples.
CheckResult sample_nary_distributive(const OpTable& op, std::uint64_t samples,
                                     std::uint64_t seed);

/// The translation x -> W(x, tail) as a vector indexed by x.
std::vector<Element> translation(const OpTable& op, std::span<const Element> tail);
bool is_permutation(std::span<const Element> map);
/// Inverse of the translation for `tail`; throws HypothesisError if it is
/// not a bijection.
std::vector<Element> inverse_translation(const OpTable& op, std::span<const Element> tail);

bool all_translations_bijective(const OpTable& op);
bool is_rack(const OpTable& op);
/// Full-diagonal idempotency W(x, ..., x) = x on top of is_rack.
bool is_quandle(const OpTable& op);

/// Both exchange laws between an m-ary and an n-ary operation:
///   law 0: Wn(Wm(x, y), z) = Wm(Wn(x, z), Wn(y, z)),   y in X^(m-1), z in X^(n-1)
///   law 1: Wm(Wn(x, u), v) = Wn(Wm(x, v), Wm(u, v)),   u in X^(n-1), v in X^(m-1)
/// Witness tuples are (x, y, z) resp. (x, u, v).  Self-distributivity of
/// each operation is not part of this check.
CheckResult are_mutually_distributive(const OpTable& wm, const OpTable& wn);

/// Single exchange law (0 or 1 as above).
CheckResult exchange_law(const OpTable& wm, const OpTable& wn, int law);

/// Compatibility of two ternary operations:
///   law 0: T0(T0(x,y0,y1),z0,z1) = T0(T0(x,z0,z1), T0(y0,z0,z1), T1(y1,z0,z1))
///   law 1: T1(T1(x,y0,y1),z0,z1) = T1(T1(x,z0,z1), T0(y0,z0,z1), T1(y1,z0,z1))
CheckResult are_compatible_ternary(const OpTable& t0, const OpTable& t1);

/// Relabel the carrier: result(pi(a_1), ..., pi(a_k)) = pi(op(a_1, ..., a_k)).
OpTable relabel(const OpTable& op, std::span<const Element> perm);

/// Brute-force isomorphism search; returns a bijection f with
/// f(a(x...)) = b(f(x)...) if one exists.
std::optional<std::vector<Element>> find_isomorphism(const OpTable& a, const OpTable& b);

class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates closure, associativity, identity and inverses.
  FiniteGroup(std::size_t size, std::vector<Element> cayley);

  std::size_t size() const { return size_; }
  Element mul(Element a, Element b) const { return cayley_[a * size_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element identity() const { return identity_; }
  std::span<const Element> cayley() const { return cayley_; }
  bool is_abelian() const;

 private:
  std::size_t size_ = 0;
  std::vector<Element> cayley_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
};

FiniteGroup cyclic_group(std::size_t n);
/// S_n acting on {0..n-1}; elements are permutations in lexicographic
/// order, product (p * q)(i) = q(p(i)) (apply p first).
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// (holds_law0, holds_law1) for core x*y = y x^-1 y against heap x y0^-1 y1.
std::pair<bool, bool> heap_vs_core_directional(const FiniteGroup& g);

// Worker count used by tuple-space checks.  Results never depend on it.
std::size_t default_jobs();
void set_default_jobs(std::size_t jobs);

}  // namespace sdops
