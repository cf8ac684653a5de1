#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wittcd {

using Poly = std::vector<std::uint32_t>;  // coefficients over F_p, ascending degree

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * m[i]) % p);
    trim(a);
  }
  return a;
}

inline Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  trim(c);
  return c;
}

/// Monic polynomial of degree k whose lower coefficients are the base-p
/// digits of code.
inline Poly monic_from_code(std::uint64_t code, unsigned k, std::uint32_t p) {
  Poly f(k + 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    f[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  f[k] = 1;
  return f;
}

inline std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace detail

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree at most deg(f)/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  Poly g = f;
  detail::trim(g);
  if (g.size() < 2) return false;
  const unsigned k = static_cast<unsigned>(g.size() - 1);
  for (unsigned d = 1; 2 * d <= k; ++d) {
    const std::uint64_t count = detail::upow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly h = detail::monic_from_code(code, d, p);
      // make g monic for division: scale by inverse of lead
      Poly gm = g;
      std::uint64_t lead = gm.back(), inv = 1;
      for (std::uint32_t e = 0; e < p - 2; ++e) inv = inv * lead % p;
      for (auto& c : gm) c = static_cast<std::uint32_t>(c * inv % p);
      if (detail::poly_mod(gm, h, p).empty()) return false;
    }
  }
  return true;
}

/// F_{p^k}, elements encoded as integers 0..q-1 whose base-p digits are the
/// coefficients in the polynomial basis 1, x, ..., x^{k-1}. The modulus is
/// the least monic irreducible of degree k when its lower coefficients
/// c_0 + c_1 p + ... + c_{k-1} p^{k-1} are read as an integer.
class FiniteField {
 public:
  using Element = std::uint32_t;

  FiniteField(std::uint32_t p, unsigned k) : p_(p), k_(k) {
    if (!detail::is_prime(p)) throw std::invalid_argument("FiniteField: characteristic is not prime");
    if (k < 1) throw std::invalid_argument("FiniteField: degree must be >= 1");
    const std::uint64_t q = detail::upow(p, k);
    if (q > (1u << 24)) throw std::invalid_argument("FiniteField: field too large for table arithmetic");
    q_ = static_cast<std::uint32_t>(q);
    for (std::uint64_t code = 0;; ++code) {
      Poly f = detail::monic_from_code(code, k, p);
      if (is_irreducible(f, p)) {
        modulus_ = std::move(f);
        break;
      }
    }
    build_tables();
  }

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  const Poly& modulus() const { return modulus_; }
  Element primitive_element() const { return q_ == 2 ? 1 : exp_[1]; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  /// The class of x (the chosen root of the modulus). For k = 1 this is the
  /// root -c_0 of the linear modulus.
  Element generator() const { return k_ == 1 ? (p_ - modulus_[0]) % p_ : p_; }

  Poly coefficients(Element a) const {
    Poly c(k_);
    for (unsigned i = 0; i < k_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }
  Element from_coefficients(const Poly& c) const {
    Element a = 0;
    for (unsigned i = k_; i-- > 0;) a = a * p_ + (i < c.size() ? c[i] % p_ : 0);
    return a;
  }
  /// The element of F_p ⊆ F_q represented by an integer.
  Element from_integer(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }

  Element add(Element a, Element b) const {
    Element r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * scale;
      a /= p_;
      b /= p_;
      scale *= p_;
    }
    return r;
  }
  Element neg(Element a) const {
    Element r = 0, scale = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((p_ - a % p_) % p_) * scale;
      a /= p_;
      scale *= p_;
    }
    return r;
  }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element mul(Element a, Element b) const {
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = std::uint64_t(log_[a]) + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }
  Element pow(Element a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    return exp_[(std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
  }
  Element inverse(Element a) const {
    if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  /// Discrete logarithm to the primitive element; undefined for 0.
  std::uint32_t log(Element a) const { return log_[a]; }
  Element exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  Element frobenius(Element a) const { return pow(a, p_); }
  /// The unique p-th root, x^{p^{k-1}}.
  Element inverse_frobenius(Element a) const { return pow(a, detail::upow(p_, k_ - 1)); }

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_; }

  std::string name() const { return "F" + std::to_string(q_); }

 private:
  Element poly_mul_elem(Element a, Element b) const {
    Poly c = detail::poly_mod(detail::poly_mul(coefficients(a), coefficients(b), p_), modulus_, p_);
    return from_coefficients(c);
  }

  void build_tables() {
    exp_.assign(q_ > 1 ? q_ - 1 : 1, 0);
    log_.assign(q_, 0);
    // smallest primitive element, by order computation with direct polynomial products
    for (Element g = 1; g < q_; ++g) {
      Element x = 1;
      std::uint32_t n = 0;
      bool primitive = true;
      for (std::uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        x = poly_mul_elem(x, g);
        ++n;
        if (x == 1 && n < q_ - 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
        return;
      }
    }
    throw std::logic_error("FiniteField: no primitive element found");
  }

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_ = 0;
  Poly modulus_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace wittcd
