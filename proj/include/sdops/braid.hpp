#pragma once

// Braid group actions on X^m through a rack, and operations twisted by them.
//
// sigma_i sends (.., x_i, x_{i+1}, ..) to (.., x_{i+1}, x_i * x_{i+1}, ..);
// its inverse sends (.., c, d, ..) to (.., R_c^-1(d), c, ..).  The action is
// a right action: letters are applied left to right, so x^(b1 b2) = (x^b1)^b2.

#include <cstdint>
#include <string>
#include <vector>

#include "sdops/core.hpp"

namespace sdops {

struct BraidWord {
  std::size_t strands = 2;
  std::vector<int> word;  // +i is sigma_i, -i its inverse

  BraidWord() = default;
  BraidWord(std::size_t strands, std::vector<int> word);
  BraidWord inverse() const;
  /// This word followed by `other`.
  BraidWord then(const BraidWord& other) const;
  bool has_inverse_letters() const;
  std::string to_string() const;
};

/// Parse "1,1,-2" (empty string is the empty word).
BraidWord parse_braid_word(std::size_t strands, const std::string& text);

/// A binary operation prepared for acting on tuples.  Inverse letters need
/// bijective translations and are refused otherwise.
class BraidAction {
 public:
  explicit BraidAction(const OpTable& op);
  const OpTable& op() const { return op_; }
  bool invertible() const { return invertible_; }
  /// Apply the word in place.
  void apply(const BraidWord& b, std::span<Element> x) const;
  Tuple act(const BraidWord& b, const Tuple& x) const;

 private:
  OpTable op_;
  bool invertible_ = false;
  std::vector<Element> inverse_;  // inverse_[c * N + d] = R_c^-1(d)
};

Tuple braid_act(const OpTable& op, const BraidWord& b, const Tuple& x);

/// Braid relations as maps on X^m.  Relations are numbered in the order
/// sigma_i sigma_{i+1} sigma_i = sigma_{i+1} sigma_i sigma_{i+1} for
/// i = 1..m-2, then sigma_i sigma_j = sigma_j sigma_i for j >= i + 2.  A
/// witness reports the encoded images of both sides as lhs and rhs.
CheckResult verify_braid_relations(const OpTable& op, std::size_t m);

/// x^b *^ y = (x *^ y)^b with *^ applied coordinatewise: exhaustively for
/// b = sigma_1 on X^2 (and its inverse when `star` is a rack), then for
/// `random_words` random words on 3 and 4 strands at `samples` random points.
CheckResult verify_equivariance(const OpTable& star, const OpTable& hat, std::size_t random_words = 8,
                                std::size_t samples = 200, std::uint64_t seed = 1);

/// hat^b(x, y) = hat(x, y^b) for a word on arity(hat) - 1 strands.
/// Twisting by b0 and then by b1 equals twisting by b1.then(b0).
OpTable twist_op(const OpTable& hat, const OpTable& star, const BraidWord& b,
                 Verify verify = Verify::checked);

/// sigma_1^e on `strands` strands (negative e gives inverse letters).
BraidWord sigma_power(std::size_t strands, int e);

}  // namespace sdops
