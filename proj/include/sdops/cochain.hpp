#pragma once

// Finite abelian coefficient groups and cochains with values in them.

#include <cstdint>
#include <string>
#include <vector>

#include "sdops/core.hpp"

namespace sdops {

/// A product of cyclic groups Z/d_1 x ... x Z/d_r.  Elements are residue
/// vectors; the index of an element is its mixed-radix value, first factor
/// most significant.  A factor 0 stands for Z and is only allowed in
/// homology results.
class AbGroup {
 public:
  AbGroup() = default;
  explicit AbGroup(std::vector<std::uint64_t> factors, bool allow_free = false);

  static AbGroup cyclic(std::uint64_t d) { return AbGroup({d}); }

  const std::vector<std::uint64_t>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::uint64_t order() const;  // 0 if some factor is free
  bool is_trivial() const;

  using Value = std::vector<std::uint64_t>;
  Value zero() const { return Value(factors_.size(), 0); }
  Value add(const Value& a, const Value& b) const;
  Value sub(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  Value reduce(const std::vector<std::int64_t>& raw) const;
  std::uint64_t index(const Value& a) const;
  Value element(std::uint64_t index) const;

  bool operator==(const AbGroup& o) const { return factors_ == o.factors_; }
  std::string to_string() const;

 private:
  std::vector<std::uint64_t> factors_;
};

/// A function X^nargs -> A stored flat: the value at tuple index t occupies
/// values[t * rank .. t * rank + rank).
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t size, std::size_t nargs, AbGroup coeff);
  Cochain(std::size_t size, std::size_t nargs, AbGroup coeff, std::vector<std::uint64_t> values);

  std::size_t size() const { return size_; }
  std::size_t nargs() const { return nargs_; }
  const AbGroup& coeff() const { return coeff_; }
  std::uint64_t tuples() const { return tuples_; }
  const std::vector<std::uint64_t>& values() const { return values_; }

  std::uint64_t at(std::uint64_t tuple, std::size_t factor) const {
    return values_[tuple * coeff_.rank() + factor];
  }
  void set(std::uint64_t tuple, std::size_t factor, std::uint64_t v) {
    values_[tuple * coeff_.rank() + factor] = v % coeff_.factors()[factor];
  }
  AbGroup::Value value(std::uint64_t tuple) const;
  AbGroup::Value value(std::span<const Element> args) const {
    return value(encode_tuple(args, size_));
  }
  void set_value(std::uint64_t tuple, const AbGroup::Value& v);

  /// Index of the value at `tuple` as an element of coeff().
  std::uint64_t value_index(std::uint64_t tuple) const;

  bool is_zero() const;
  bool operator==(const Cochain& o) const {
    return size_ == o.size_ && nargs_ == o.nargs_ && coeff_ == o.coeff_ && values_ == o.values_;
  }

  Cochain operator+(const Cochain& o) const;
  Cochain operator-(const Cochain& o) const;
  Cochain operator-() const;

 private:
  std::size_t size_ = 0;
  std::size_t nargs_ = 0;
  AbGroup coeff_;
  std::uint64_t tuples_ = 0;
  std::vector<std::uint64_t> values_;
};

Cochain zero_cochain(std::size_t size, std::size_t nargs, const AbGroup& coeff);

/// Cochain from a function of the argument tuple returning raw integers,
/// one per factor (reduced on storage).
template <class F>
Cochain tabulate_cochain(std::size_t size, std::size_t nargs, const AbGroup& coeff, F f) {
  Cochain c(size, nargs, coeff);
  std::vector<Element> args(nargs);
  for (std::uint64_t t = 0; t < c.tuples(); ++t) {
    decode_tuple(t, size, args);
    std::vector<std::int64_t> raw = f(static_cast<const std::vector<Element>&>(args));
    c.set_value(t, coeff.reduce(raw));
  }
  return c;
}

/// Whether the cochain vanishes on the full diagonal (x, ..., x), matching
/// full-diagonal idempotency for quandles of any arity.
bool is_normalized(const Cochain& c);

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);  // throws if not a unit
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

}  // namespace sdops
