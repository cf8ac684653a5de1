#pragma once

// Truncated p-typical Witt vectors W_n(R) over a finite perfect ring R, in
// coordinate representation. W_n has n coordinates, so W_1(R) = R.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_ring.hpp"
#include "perfect_ring.hpp"
#include "witt_polys.hpp"

namespace wittcd {

struct WittVector {
  std::vector<PerfectRing::Element> coords;
  std::size_t length() const { return coords.size(); }
  bool operator==(const WittVector&) const = default;
  bool operator<(const WittVector& o) const { return coords < o.coords; }
};

class WittRing {
 public:
  using Element = PerfectRing::Element;

  WittRing(PerfectRing R, unsigned n) : R_(std::move(R)), n_(n) {
    if (n < 1) throw std::invalid_argument("WittRing: length must be >= 1");
    polys_ = witt_polys(R_.characteristic(), n);
    const unsigned cached = polys_->n;
    for (unsigned i = 0; i < n; ++i) {
      S_.emplace_back(polys_->sum[i], R_.characteristic(), cached);
      P_.emplace_back(polys_->product[i], R_.characteristic(), cached);
      N_.emplace_back(polys_->neg[i], R_.characteristic(), cached);
    }
  }

  const PerfectRing& base() const { return R_; }
  unsigned length() const { return n_; }
  std::uint32_t characteristic_prime() const { return R_.characteristic(); }
  /// |W_n(R)| = |R|^n.
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < n_; ++i) s *= R_.size();
    return s;
  }
  std::string name() const { return "W" + std::to_string(n_) + "(" + R_.name() + ")"; }

  WittVector zero(std::size_t len = 0) const { return WittVector{std::vector<Element>(len ? len : n_, 0)}; }
  WittVector one(std::size_t len = 0) const { return teichmuller(R_.one(), len); }

  /// The multiplicative lift τ(r) = (r, 0, ..., 0).
  WittVector teichmuller(Element r, std::size_t len = 0) const {
    WittVector v = zero(len);
    v.coords[0] = r;
    return v;
  }

  WittVector add(const WittVector& x, const WittVector& y) const { return apply(S_, x, y); }
  WittVector mul(const WittVector& x, const WittVector& y) const { return apply(P_, x, y); }
  WittVector neg(const WittVector& x) const { return apply(N_, x, x); }
  WittVector sub(const WittVector& x, const WittVector& y) const { return add(x, neg(y)); }

  /// k·x for any integer k.
  WittVector multiply_int(const WittVector& x, long long k) const {
    if (k < 0) return neg(multiply_int(x, -k));
    WittVector acc = zero(x.length()), base = x;
    unsigned long long e = static_cast<unsigned long long>(k);
    while (e) {
      if (e & 1) acc = add(acc, base);
      e >>= 1;
      if (e) base = add(base, base);
    }
    return acc;
  }

  /// V(x) = (0, x_0, ..., x_{n-2}).
  WittVector verschiebung(const WittVector& x) const {
    WittVector v = zero(x.length());
    for (std::size_t i = 1; i < x.length(); ++i) v.coords[i] = x.coords[i - 1];
    return v;
  }
  /// F(x) = (x_0^p, ..., x_{n-1}^p). Valid because R is perfect.
  WittVector frobenius(const WittVector& x) const {
    WittVector v = x;
    for (auto& c : v.coords) c = R_.frobenius(c);
    return v;
  }
  WittVector inverse_frobenius(const WittVector& x) const {
    WittVector v = x;
    for (auto& c : v.coords) c = R_.inverse_frobenius(c);
    return v;
  }
  /// The ring map W_n -> W_m, m <= n.
  WittVector truncate(const WittVector& x, std::size_t m) const {
    if (m > x.length()) throw std::invalid_argument("WittRing: cannot truncate to a longer length");
    return WittVector{std::vector<Element>(x.coords.begin(), x.coords.begin() + static_cast<std::ptrdiff_t>(m))};
  }

  /// The unique a with x = Σ p^i τ(a_i).
  std::vector<Element> digits(const WittVector& x) const {
    check(x, x);
    std::vector<Element> a;
    WittVector z = x;
    while (z.length() > 0) {
      a.push_back(z.coords[0]);
      z = sub(z, teichmuller(z.coords[0], z.length()));
      if (z.coords[0] != 0) throw std::logic_error("WittRing: digit extraction left a nonzero 0-th coordinate");
      WittVector shifted{std::vector<Element>(z.coords.begin() + 1, z.coords.end())};
      z = inverse_frobenius(shifted);
    }
    return a;
  }
  /// Σ p^i τ(a_i) = Σ V^i τ(a_i^{p^i}).
  WittVector from_digits(const std::vector<Element>& a) const {
    if (a.size() != n_) throw std::invalid_argument("WittRing: digit vector has wrong length");
    WittVector acc = zero();
    std::uint64_t pi = 1;
    for (unsigned i = 0; i < n_; ++i) {
      WittVector term = zero();
      term.coords[i] = R_.pow(a[i], pi);
      acc = add(acc, term);
      pi *= R_.characteristic();
    }
    return acc;
  }

  /// Additive generators τ(β_j) for the F_p-basis β of R; W_n(R) is free
  /// over Z/p^n on them.
  std::vector<WittVector> additive_basis() const {
    std::vector<WittVector> b;
    for (auto beta : R_.additive_basis()) b.push_back(teichmuller(beta));
    return b;
  }

  /// Coordinates c (0 <= c_j < p^n) with x = Σ c_j τ(β_j).
  Coords additive_coordinates(const WittVector& x) const {
    check(x, x);
    const auto basis = R_.additive_basis();
    const std::uint32_t p = R_.characteristic();
    Coords c(basis.size(), 0);
    WittVector z = x;
    std::int64_t pt = 1;
    while (z.length() > 0) {
      const auto digit = R_.coordinates(z.coords[0]);
      WittVector w = zero(z.length());
      for (std::size_t j = 0; j < basis.size(); ++j) {
        c[j] += static_cast<std::int64_t>(digit[j]) * pt;
        if (digit[j]) w = add(w, multiply_int(teichmuller(basis[j], z.length()), digit[j]));
      }
      z = sub(z, w);
      if (z.coords[0] != 0) throw std::logic_error("WittRing: coordinate extraction failed");
      z = inverse_frobenius(WittVector{std::vector<Element>(z.coords.begin() + 1, z.coords.end())});
      pt *= p;
    }
    return c;
  }

  WittVector from_additive_coordinates(const Coords& c) const {
    const auto basis = additive_basis();
    if (c.size() != basis.size()) throw std::invalid_argument("WittRing: coordinate vector has wrong length");
    WittVector acc = zero();
    for (std::size_t j = 0; j < basis.size(); ++j) acc = add(acc, multiply_int(basis[j], c[j]));
    return acc;
  }

  /// W_n(R) as a presented finite ring on the additive basis τ(β_j).
  FiniteRing as_finite_ring() const {
    const auto basis = R_.additive_basis();
    const std::size_t d = basis.size();
    std::int64_t pn = 1;
    for (unsigned i = 0; i < n_; ++i) pn *= R_.characteristic();
    std::vector<Coords> t(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t[i * d + j] = additive_coordinates(teichmuller(R_.mul(basis[i], basis[j])));
    return FiniteRing(std::vector<std::int64_t>(d, pn), std::move(t), additive_coordinates(one()), name());
  }

  std::uint64_t index(const WittVector& x) const {
    std::uint64_t v = 0;
    for (std::size_t i = x.length(); i-- > 0;) v = v * R_.size() + x.coords[i];
    return v;
  }
  WittVector element(std::uint64_t v) const {
    WittVector x = zero();
    for (unsigned i = 0; i < n_; ++i) {
      x.coords[i] = static_cast<Element>(v % R_.size());
      v /= R_.size();
    }
    return x;
  }

 private:
  void check(const WittVector& x, const WittVector& y) const {
    if (x.length() != y.length() || x.length() > n_ || x.length() == 0)
      throw std::invalid_argument("WittRing: operands have mismatched or unsupported length");
    for (auto c : x.coords)
      if (c >= R_.size()) throw std::invalid_argument("WittRing: coordinate outside the base ring");
    for (auto c : y.coords)
      if (c >= R_.size()) throw std::invalid_argument("WittRing: coordinate outside the base ring");
  }

  WittVector apply(const std::vector<CompiledPoly>& polys, const WittVector& x, const WittVector& y) const {
    check(x, y);
    const std::size_t len = x.length();
    WittVector out = zero(len);
    std::vector<FiniteField::Element> xs(len), ys(len), res(len);
    for (std::size_t f = 0; f < R_.factor_count(); ++f) {
      const FiniteField& F = R_.factors()[f];
      for (std::size_t i = 0; i < len; ++i) {
        xs[i] = R_.component(x.coords[i], f);
        ys[i] = R_.component(y.coords[i], f);
      }
      for (std::size_t i = 0; i < len; ++i) {
        std::vector<FiniteField::Element> c = R_.components(out.coords[i]);
        c[f] = polys[i].evaluate(F, xs, ys);
        out.coords[i] = R_.from_components(c);
      }
    }
    return out;
  }

  PerfectRing R_;
  unsigned n_;
  std::shared_ptr<const WittPolyCache> polys_;
  std::vector<CompiledPoly> S_, P_, N_;
};

}  // namespace wittcd
