#include <numeric>

#include "sdops/constructions.hpp"
#include "sdops/scan.hpp"

namespace sdops {

bool has_structure(const OpTable& op, Structure s) {
  switch (s) {
    case Structure::shelf:
      return is_nary_distributive(op).holds;
    case Structure::rack:
      return is_rack(op);
    case Structure::quandle:
      return is_quandle(op);
  }
  return false;
}

std::vector<OpTable> enumerate_operations(std::size_t size, std::size_t arity, Structure s) {
  std::uint64_t cells = checked_power(size, arity);
  if (cells > 9 || (size > 3 && cells > 1)) {
    throw InputError("full enumeration of " + std::to_string(size) + "^" + std::to_string(cells) +
                     " tables is out of range; use the affine family");
  }
  std::uint64_t total = checked_power(size, cells);
  std::vector<OpTable> out;
  std::vector<Element> t(cells, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    bool rack_candidate = true;
    if (s != Structure::shelf) {
      OpTable probe(size, arity, t);
      rack_candidate = all_translations_bijective(probe);
    }
    if (rack_candidate) {
      OpTable op(size, arity, t, {{"construction", "enumerated"}, {"rank", i}});
      if (has_structure(op, s)) out.push_back(std::move(op));
    }
    advance_tuple(t, static_cast<Element>(size));
  }
  return out;
}

std::vector<OpTable> enumerate_affine(std::size_t size, std::size_t arity) {
  std::vector<OpTable> out;
  std::uint64_t total = checked_power(size, arity - 1);
  std::vector<Element> c(arity - 1, 0);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (std::gcd<std::size_t, std::size_t>(c[0], size) == 1) {
      std::vector<std::int64_t> coeffs(c.begin(), c.end());
      out.push_back(affine_op(size, arity, coeffs));
    }
    advance_tuple(c, static_cast<Element>(size));
  }
  return out;
}

std::vector<std::pair<OpTable, OpTable>> mutual_pairs(const std::vector<OpTable>& ops) {
  std::vector<std::pair<OpTable, OpTable>> out;
  for (const auto& a : ops)
    for (const auto& b : ops)
      if (a.size() == b.size() && are_mutually_distributive(a, b).holds) out.emplace_back(a, b);
  return out;
}

}  // namespace sdops
