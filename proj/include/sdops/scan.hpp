#pragma once

// Exhaustive scans over the tuple space X^L in lexicographic order.

#include <cstdint>
#include <vector>

#include "sdops/core.hpp"
#include "sdops/parallel.hpp"

namespace sdops {

inline void advance_tuple(std::vector<Element>& t, Element radix) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < radix) return;
    t[i] = 0;
  }
}

/// Check lhs == rhs over all of X^length.  `eval(tuple, lhs, rhs)` fills
/// both sides.  The first failure in lexicographic order is reported with
/// law index `law`.
template <class Eval>
CheckResult check_identity(std::uint64_t radix, std::size_t length, int law, Eval eval) {
  std::uint64_t total = checked_power(radix, length);
  auto probe = [&](std::uint64_t begin,
                   std::uint64_t end) -> std::optional<std::pair<std::uint64_t, Counterexample>> {
    std::vector<Element> t(length);
    decode_tuple(begin, radix, t);
    Element lhs = 0, rhs = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      eval(static_cast<const std::vector<Element>&>(t), lhs, rhs);
      if (lhs != rhs) return std::pair{i, Counterexample{t, lhs, rhs, law}};
      advance_tuple(t, static_cast<Element>(radix));
    }
    return std::nullopt;
  };
  auto hit = first_failure(total, probe);
  if (!hit) return {};
  return {false, std::move(hit->second)};
}

}  // namespace sdops
