#pragma once

// Finite perfect F_p-algebras (finite products of finite fields) and finite
// commutative monoids.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"

namespace wittcd {

/// A finite product of finite fields of a common characteristic p.
///
/// Elements are integers in mixed radix: factor 0 varies fastest, and each
/// factor's digit is its field encoding. Consequently the base-p digits of an
/// element are its coordinates in the F_p-basis formed by the polynomial
/// bases of the factors.
class PerfectRing {
 public:
  using Element = std::uint32_t;

  explicit PerfectRing(std::vector<FiniteField> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("PerfectRing: needs at least one factor");
    const auto p = factors_.front().characteristic();
    std::uint64_t size = 1;
    for (const auto& f : factors_) {
      if (f.characteristic() != p) throw std::invalid_argument("PerfectRing: factors of different characteristic");
      strides_.push_back(static_cast<std::uint32_t>(size));
      size *= f.order();
      dimension_ += f.degree();
    }
    if (size > (1u << 24)) throw std::invalid_argument("PerfectRing: ring too large");
    size_ = static_cast<std::uint32_t>(size);
  }

  static PerfectRing field(std::uint32_t p, unsigned k) { return PerfectRing({FiniteField(p, k)}); }

  std::uint32_t characteristic() const { return factors_.front().characteristic(); }
  std::uint32_t size() const { return size_; }
  /// Dimension over F_p.
  unsigned dimension() const { return dimension_; }
  const std::vector<FiniteField>& factors() const { return factors_; }
  std::size_t factor_count() const { return factors_.size(); }

  FiniteField::Element component(Element x, std::size_t i) const {
    return (x / strides_[i]) % factors_[i].order();
  }
  std::vector<FiniteField::Element> components(Element x) const {
    std::vector<FiniteField::Element> c(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) c[i] = component(x, i);
    return c;
  }
  Element from_components(const std::vector<FiniteField::Element>& c) const {
    Element x = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) x += c[i] * strides_[i];
    return x;
  }

  Element zero() const { return 0; }
  Element one() const {
    std::vector<FiniteField::Element> c(factors_.size(), 1);
    return from_components(c);
  }
  /// The idempotent of factor i.
  Element idempotent(std::size_t i) const {
    std::vector<FiniteField::Element> c(factors_.size(), 0);
    c[i] = 1;
    return from_components(c);
  }
  Element from_integer(long long n) const {
    std::vector<FiniteField::Element> c;
    for (const auto& f : factors_) c.push_back(f.from_integer(n));
    return from_components(c);
  }

  Element add(Element a, Element b) const {
    return map2(a, b, [](const FiniteField& f, auto x, auto y) { return f.add(x, y); });
  }
  Element sub(Element a, Element b) const {
    return map2(a, b, [](const FiniteField& f, auto x, auto y) { return f.sub(x, y); });
  }
  Element mul(Element a, Element b) const {
    return map2(a, b, [](const FiniteField& f, auto x, auto y) { return f.mul(x, y); });
  }
  Element neg(Element a) const {
    return map1(a, [](const FiniteField& f, auto x) { return f.neg(x); });
  }
  Element pow(Element a, std::uint64_t e) const {
    return map1(a, [e](const FiniteField& f, auto x) { return f.pow(x, e); });
  }
  Element frobenius(Element a) const {
    return map1(a, [](const FiniteField& f, auto x) { return f.frobenius(x); });
  }
  Element inverse_frobenius(Element a) const {
    return map1(a, [](const FiniteField& f, auto x) { return f.inverse_frobenius(x); });
  }

  /// F_p-coordinates (the base-p digits, dimension() of them).
  std::vector<std::uint32_t> coordinates(Element a) const {
    std::vector<std::uint32_t> c;
    c.reserve(dimension_);
    for (unsigned i = 0; i < dimension_; ++i) {
      c.push_back(a % characteristic());
      a /= characteristic();
    }
    return c;
  }
  Element from_coordinates(const std::vector<std::uint32_t>& c) const {
    Element a = 0;
    for (unsigned i = dimension_; i-- > 0;) a = a * characteristic() + c[i] % characteristic();
    return a;
  }
  /// The F_p-basis whose coordinates are coordinates().
  std::vector<Element> additive_basis() const {
    std::vector<Element> b;
    Element scale = 1;
    for (unsigned i = 0; i < dimension_; ++i) {
      b.push_back(scale);
      scale *= characteristic();
    }
    return b;
  }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += "x";
      s += factors_[i].name();
    }
    return s;
  }

  bool operator==(const PerfectRing& o) const { return factors_ == o.factors_; }

 private:
  template <class F>
  Element map1(Element a, F&& f) const {
    Element r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i) r += f(factors_[i], component(a, i)) * strides_[i];
    return r;
  }
  template <class F>
  Element map2(Element a, Element b, F&& f) const {
    Element r = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r += f(factors_[i], component(a, i), component(b, i)) * strides_[i];
    return r;
  }

  std::vector<FiniteField> factors_;
  std::vector<std::uint32_t> strides_;
  std::uint32_t size_ = 1;
  unsigned dimension_ = 0;
};

/// Parse "F4", "F2xF4", "F9xF3" (fields must share a characteristic).
inline PerfectRing parse_perfect_ring(const std::string& spec) {
  std::vector<FiniteField> factors;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t end = spec.find_first_of("x*", pos);
    if (end == std::string::npos) end = spec.size();
    std::string part = spec.substr(pos, end - pos);
    if (part.size() < 2 || (part[0] != 'F' && part[0] != 'f'))
      throw std::invalid_argument("unrecognized field '" + part + "'");
    unsigned long q = 0;
    try {
      q = std::stoul(part.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("unrecognized field '" + part + "'");
    }
    bool found = false;
    for (std::uint32_t p = 2; p <= q && !found; ++p) {
      if (!detail::is_prime(p)) continue;
      unsigned long v = 1;
      unsigned k = 0;
      while (v < q) {
        v *= p;
        ++k;
      }
      if (v == q) {
        factors.emplace_back(p, k);
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("'" + part + "' is not a prime power");
    pos = end + 1;
  }
  return PerfectRing(std::move(factors));
}

/// A finite commutative monoid given by its multiplication table.
class FiniteCommMonoid {
 public:
  FiniteCommMonoid(std::vector<std::vector<std::uint32_t>> table, std::uint32_t unit, std::vector<std::string> names = {})
      : table_(std::move(table)), unit_(unit), names_(std::move(names)) {
    const std::size_t n = table_.size();
    if (n == 0) throw std::invalid_argument("FiniteCommMonoid: empty");
    if (unit_ >= n) throw std::invalid_argument("FiniteCommMonoid: unit out of range");
    for (const auto& row : table_) {
      if (row.size() != n) throw std::invalid_argument("FiniteCommMonoid: table not square");
      for (auto v : row)
        if (v >= n) throw std::invalid_argument("FiniteCommMonoid: product out of range");
    }
    for (std::uint32_t a = 0; a < n; ++a) {
      if (table_[unit_][a] != a) throw std::invalid_argument("FiniteCommMonoid: unit law fails");
      for (std::uint32_t b = 0; b < n; ++b) {
        if (table_[a][b] != table_[b][a]) throw std::invalid_argument("FiniteCommMonoid: not commutative");
        for (std::uint32_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw std::invalid_argument("FiniteCommMonoid: not associative");
      }
    }
  }

  /// The multiplicative monoid (R, ·).
  static FiniteCommMonoid multiplicative(const PerfectRing& R) {
    std::vector<std::vector<std::uint32_t>> t(R.size(), std::vector<std::uint32_t>(R.size()));
    for (std::uint32_t a = 0; a < R.size(); ++a)
      for (std::uint32_t b = 0; b < R.size(); ++b) t[a][b] = R.mul(a, b);
    return FiniteCommMonoid(std::move(t), R.one());
  }

  std::uint32_t size() const { return static_cast<std::uint32_t>(table_.size()); }
  std::uint32_t unit() const { return unit_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = unit_;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  const std::vector<std::vector<std::uint32_t>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }

  /// Elements z with z·m = z for all m.
  std::vector<std::uint32_t> absorbing_elements() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t z = 0; z < size(); ++z) {
      bool abs = true;
      for (std::uint32_t m = 0; m < size() && abs; ++m) abs = mul(z, m) == z;
      if (abs) out.push_back(z);
    }
    return out;
  }

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::uint32_t unit_;
  std::vector<std::string> names_;
};

/// True iff m ↦ m^p is surjective on M.
inline bool is_p_divisible_monoid(const FiniteCommMonoid& M, std::uint32_t p) {
  std::vector<bool> hit(M.size(), false);
  for (std::uint32_t m = 0; m < M.size(); ++m) hit[M.pow(m, p)] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Monoid homomorphism check for a map given on all elements.
inline bool is_monoid_map(const FiniteCommMonoid& M, const std::vector<std::uint32_t>& f,
                          const FiniteCommMonoid& N) {
  if (f.size() != M.size() || f[M.unit()] != N.unit()) return false;
  for (std::uint32_t a = 0; a < M.size(); ++a)
    for (std::uint32_t b = 0; b < M.size(); ++b)
      if (f[M.mul(a, b)] != N.mul(f[a], f[b])) return false;
  return true;
}

}  // namespace wittcd
