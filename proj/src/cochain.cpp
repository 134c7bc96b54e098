#include "sdops/cochain.hpp"

#include <numeric>
#include <tuple>

namespace sdops {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) throw std::domain_error(std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

AbGroup::AbGroup(std::vector<std::uint64_t> factors, bool allow_free) : factors_(std::move(factors)) {
  for (auto d : factors_)
    if (d == 0 && !allow_free) throw InputError("coefficient groups must be finite");
}

std::uint64_t AbGroup::order() const {
  std::uint64_t o = 1;
  for (auto d : factors_) {
    if (d == 0) return 0;
    if (o > UINT64_MAX / d) throw InputError("group order overflows");
    o *= d;
  }
  return o;
}

bool AbGroup::is_trivial() const {
  for (auto d : factors_)
    if (d != 1) return false;
  return true;
}

AbGroup::Value AbGroup::add(const Value& a, const Value& b) const {
  Value r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % factors_[i];
  return r;
}

AbGroup::Value AbGroup::sub(const Value& a, const Value& b) const {
  Value r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + factors_[i] - b[i]) % factors_[i];
  return r;
}

AbGroup::Value AbGroup::neg(const Value& a) const { return sub(zero(), a); }

AbGroup::Value AbGroup::reduce(const std::vector<std::int64_t>& raw) const {
  if (raw.size() != factors_.size()) throw InputError("group element has wrong number of residues");
  Value r(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto d = static_cast<std::int64_t>(factors_[i]);
    std::int64_t v = raw[i] % d;
    r[i] = static_cast<std::uint64_t>(v < 0 ? v + d : v);
  }
  return r;
}

std::uint64_t AbGroup::index(const Value& a) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < a.size(); ++i) idx = idx * factors_[i] + a[i];
  return idx;
}

AbGroup::Value AbGroup::element(std::uint64_t index) const {
  Value r(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    r[i] = index % factors_[i];
    index /= factors_[i];
  }
  return r;
}

std::string AbGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " + ";
    s += factors_[i] == 0 ? "Z" : "Z/" + std::to_string(factors_[i]);
  }
  return s;
}

Cochain::Cochain(std::size_t size, std::size_t nargs, AbGroup coeff)
    : size_(size), nargs_(nargs), coeff_(std::move(coeff)), tuples_(checked_power(size, nargs)) {
  if (coeff_.order() == 0) throw InputError("cochain coefficients must be finite");
  values_.assign(tuples_ * coeff_.rank(), 0);
}

Cochain::Cochain(std::size_t size, std::size_t nargs, AbGroup coeff, std::vector<std::uint64_t> values)
    : Cochain(size, nargs, std::move(coeff)) {
  if (values.size() != values_.size())
    throw InputError("cochain needs " + std::to_string(values_.size()) + " residues, got " +
                     std::to_string(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] >= coeff_.factors()[i % coeff_.rank()])
      throw InputError("cochain residue out of range");
  values_ = std::move(values);
}

AbGroup::Value Cochain::value(std::uint64_t tuple) const {
  auto r = coeff_.rank();
  return AbGroup::Value(values_.begin() + tuple * r, values_.begin() + (tuple + 1) * r);
}

void Cochain::set_value(std::uint64_t tuple, const AbGroup::Value& v) {
  for (std::size_t j = 0; j < v.size(); ++j) set(tuple, j, v[j]);
}

std::uint64_t Cochain::value_index(std::uint64_t tuple) const { return coeff_.index(value(tuple)); }

bool Cochain::is_zero() const {
  for (auto v : values_)
    if (v) return false;
  return true;
}

Cochain Cochain::operator+(const Cochain& o) const {
  if (size_ != o.size_ || nargs_ != o.nargs_ || !(coeff_ == o.coeff_))
    throw InputError("cochain shapes differ");
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i)
    r.values_[i] = (values_[i] + o.values_[i]) % coeff_.factors()[i % coeff_.rank()];
  return r;
}

Cochain Cochain::operator-() const {
  Cochain r = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    auto d = coeff_.factors()[i % coeff_.rank()];
    r.values_[i] = (d - values_[i]) % d;
  }
  return r;
}

Cochain Cochain::operator-(const Cochain& o) const { return *this + (-o); }

Cochain zero_cochain(std::size_t size, std::size_t nargs, const AbGroup& coeff) {
  return Cochain(size, nargs, coeff);
}

bool is_normalized(const Cochain& c) {
  std::vector<Element> d(c.nargs());
  for (Element x = 0; x < c.size(); ++x) {
    std::fill(d.begin(), d.end(), x);
    auto v = c.value(d);
    for (auto r : v)
      if (r) return false;
  }
  return true;
}

}  // namespace sdops
