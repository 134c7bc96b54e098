#include "sdops/braid.hpp"

#include <cstdlib>
#include <random>
#include <sstream>

#include "sdops/scan.hpp"

namespace sdops {

BraidWord::BraidWord(std::size_t s, std::vector<int> w) : strands(s), word(std::move(w)) {
  if (strands < 2) throw InputError("a braid needs at least 2 strands");
  for (int l : word)
    if (l == 0 || static_cast<std::size_t>(std::abs(l)) >= strands)
      throw InputError("braid letter " + std::to_string(l) + " out of range for " + std::to_string(strands) +
                       " strands");
}

BraidWord BraidWord::inverse() const {
  BraidWord b = *this;
  b.word.assign(word.rbegin(), word.rend());
  for (int& l : b.word) l = -l;
  return b;
}

BraidWord BraidWord::then(const BraidWord& other) const {
  if (other.strands != strands) throw InputError("braid words on different strand counts");
  BraidWord b = *this;
  b.word.insert(b.word.end(), other.word.begin(), other.word.end());
  return b;
}

bool BraidWord::has_inverse_letters() const {
  for (int l : word)
    if (l < 0) return true;
  return false;
}

std::string BraidWord::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : "") + std::to_string(word[i]);
  return s;
}

BraidWord parse_braid_word(std::size_t strands, const std::string& text) {
  auto trim = [](const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::vector<int> w;
  if (trim(text).empty()) return BraidWord(strands, std::move(w));
  std::stringstream ss(text + ",");
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InputError("empty braid letter in '" + text + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad braid letter '" + item + "'");
    }
    if (used != item.size()) throw InputError("bad braid letter '" + item + "'");
    w.push_back(v);
  }
  return BraidWord(strands, std::move(w));
}

BraidAction::BraidAction(const OpTable& op) : op_(op) {
  if (op.arity() != 2) throw InputError("braid actions need a binary operation");
  std::size_t n = op.size();
  invertible_ = all_translations_bijective(op);
  if (invertible_) {
    inverse_.resize(n * n);
    for (Element c = 0; c < n; ++c)
      for (Element x = 0; x < n; ++x) inverse_[c * n + op({x, c})] = x;
  }
}

void BraidAction::apply(const BraidWord& b, std::span<Element> x) const {
  if (x.size() != b.strands)
    throw InputError("tuple of length " + std::to_string(x.size()) + " for a braid on " +
                     std::to_string(b.strands) + " strands");
  std::size_t n = op_.size();
  for (int l : b.word) {
    std::size_t i = static_cast<std::size_t>(std::abs(l)) - 1;
    Element c = x[i], d = x[i + 1];
    if (l > 0) {
      x[i] = d;
      x[i + 1] = op_.at_index(c * n + d);
    } else {
      if (!invertible_) throw HypothesisError("inverse braid letters need a rack");
      x[i] = inverse_[c * n + d];
      x[i + 1] = c;
    }
  }
}

Tuple BraidAction::act(const BraidWord& b, const Tuple& x) const {
  Tuple y = x;
  apply(b, y);
  return y;
}

Tuple braid_act(const OpTable& op, const BraidWord& b, const Tuple& x) {
  for (Element v : x)
    if (v >= op.size()) throw InputError("tuple entry out of range");
  return BraidAction(op).act(b, x);
}

CheckResult verify_braid_relations(const OpTable& op, std::size_t m) {
  if (m < 2) throw InputError("braid relations need at least 2 strands");
  BraidAction act(op);
  std::vector<std::pair<BraidWord, BraidWord>> rel;
  for (int i = 1; i + 1 < static_cast<int>(m); ++i)
    rel.emplace_back(BraidWord(m, {i, i + 1, i}), BraidWord(m, {i + 1, i, i + 1}));
  for (int i = 1; i < static_cast<int>(m); ++i)
    for (int j = i + 2; j < static_cast<int>(m); ++j)
      rel.emplace_back(BraidWord(m, {i, j}), BraidWord(m, {j, i}));
  for (std::size_t r = 0; r < rel.size(); ++r) {
    auto res = check_identity(op.size(), m, static_cast<int>(r),
                              [&](const std::vector<Element>& t, Element& lhs, Element& rhs) {
                                Tuple a = t, b = t;
                                act.apply(rel[r].first, a);
                                act.apply(rel[r].second, b);
                                lhs = static_cast<Element>(encode_tuple(a, op.size()));
                                rhs = static_cast<Element>(encode_tuple(b, op.size()));
                              });
    if (!res.holds) return res;
  }
  return {};
}

namespace {

// x^b *^ y against (x *^ y)^b at one point; on failure fills the witness.
bool equivariant_at(const BraidAction& act, const OpTable& hat, const BraidWord& b, const Tuple& x,
                    const Tuple& y, int law, Counterexample& cx) {
  std::size_t n = hat.size(), stride = checked_power(n, hat.arity() - 1);
  std::uint64_t tail = encode_tuple(y, n);
  Tuple left = act.act(b, x);
  for (auto& v : left) v = hat.at_index(v * stride + tail);
  Tuple right = x;
  for (auto& v : right) v = hat.at_index(v * stride + tail);
  act.apply(b, right);
  if (left == right) return true;
  cx.witness = x;
  cx.witness.insert(cx.witness.end(), y.begin(), y.end());
  cx.lhs = static_cast<Element>(encode_tuple(left, n));
  cx.rhs = static_cast<Element>(encode_tuple(right, n));
  cx.law = law;
  return false;
}

}  // namespace

CheckResult verify_equivariance(const OpTable& star, const OpTable& hat, std::size_t random_words,
                                std::size_t samples, std::uint64_t seed) {
  if (star.size() != hat.size()) throw InputError("operations act on carriers of different size");
  BraidAction act(star);
  std::size_t n = hat.size(), k = hat.arity();
  Counterexample cx;
  std::vector<BraidWord> gens{BraidWord(2, {1})};
  if (act.invertible()) gens.emplace_back(2, std::vector<int>{-1});
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::uint64_t total = checked_power(n, k + 1);
    std::vector<Element> t(k + 1, 0);
    for (std::uint64_t i = 0; i < total; ++i) {
      Tuple x(t.begin(), t.begin() + 2), y(t.begin() + 2, t.end());
      if (!equivariant_at(act, hat, gens[g], x, y, static_cast<int>(g), cx)) return {false, cx};
      advance_tuple(t, static_cast<Element>(n));
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t w = 0; w < random_words; ++w) {
    std::size_t m = 3 + w % 2;
    std::vector<int> letters;
    for (std::size_t l = 0; l < 6; ++l) {
      int v = 1 + static_cast<int>(rng() % (m - 1));
      if (act.invertible() && rng() % 2) v = -v;
      letters.push_back(v);
    }
    BraidWord b(m, letters);
    for (std::size_t s = 0; s < samples; ++s) {
      Tuple x(m), y(k - 1);
      for (auto& v : x) v = static_cast<Element>(rng() % n);
      for (auto& v : y) v = static_cast<Element>(rng() % n);
      if (!equivariant_at(act, hat, b, x, y, 2, cx)) return {false, cx};
    }
  }
  return {};
}

OpTable twist_op(const OpTable& hat, const OpTable& star, const BraidWord& b, Verify verify) {
  if (star.size() != hat.size()) throw InputError("operations act on carriers of different size");
  if (b.strands != hat.arity() - 1)
    throw InputError("twist needs a braid on " + std::to_string(hat.arity() - 1) + " strands");
  if (hat.arity() < 3) throw InputError("twisting needs an operation of arity at least 3");
  if (verify == Verify::checked) {
    if (!is_rack(star)) throw HypothesisError("the acting operation is not a rack");
    auto sd = is_nary_distributive(hat);
    if (!sd.holds) throw HypothesisError("the twisted operation is not distributive", sd.counterexample);
    auto md = are_mutually_distributive(star, hat);
    if (!md.holds) throw HypothesisError("operations are not mutually distributive", md.counterexample);
  }
  BraidAction act(star);
  std::size_t n = hat.size(), k = hat.arity();
  std::uint64_t stride = checked_power(n, k - 1);
  std::vector<Element> table(hat.table().size());
  std::vector<Element> tail(k - 1, 0);
  for (std::uint64_t t = 0; t < stride; ++t) {
    Tuple moved = act.act(b, tail);
    std::uint64_t mt = encode_tuple(moved, n);
    for (std::uint64_t x = 0; x < n; ++x) table[x * stride + t] = hat.at_index(x * stride + mt);
    advance_tuple(tail, static_cast<Element>(n));
  }
  nlohmann::json prov = {{"construction", "braid twist"}, {"word", b.word}, {"strands", b.strands}};
  return OpTable(n, k, std::move(table), std::move(prov));
}

BraidWord sigma_power(std::size_t strands, int e) {
  std::vector<int> w(static_cast<std::size_t>(std::abs(e)), e < 0 ? -1 : 1);
  return BraidWord(strands, std::move(w));
}

}  // namespace sdops
