#pragma once

// Galois rings GR(p^n, k) = Z/p^n[x]/(f̃), with f̃ the lift of the modulus of
// F_{p^k} whose coefficients lie in [0, p). Used as an oracle for W_n(F_{p^k})
// that shares no code with the Witt polynomial engine.

#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"
#include "finite_ring.hpp"
#include "witt_ring.hpp"

namespace wittcd {

class GaloisRing {
 public:
  using Element = std::vector<std::int64_t>;  // k coefficients mod p^n

  GaloisRing(std::uint32_t p, unsigned k, unsigned n) : field_(p, k), p_(p), k_(k), n_(n) {
    if (n < 1) throw std::invalid_argument("GaloisRing: n must be >= 1");
    if (!is_irreducible(field_.modulus(), p)) throw std::invalid_argument("GaloisRing: modulus is not irreducible");
    mod_ = 1;
    for (unsigned i = 0; i < n; ++i) mod_ *= p;
    lift_.assign(field_.modulus().begin(), field_.modulus().end());
    build_teichmuller();
  }

  std::uint32_t p() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned length() const { return n_; }
  std::int64_t modulus_integer() const { return mod_; }
  const FiniteField& residue_field() const { return field_; }
  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (unsigned i = 0; i < k_; ++i) s *= static_cast<std::uint64_t>(mod_);
    return s;
  }

  Element zero() const { return Element(k_, 0); }
  Element one() const {
    Element e = zero();
    e[0] = 1;
    return e;
  }
  Element from_integer(std::int64_t v) const {
    Element e = zero();
    e[0] = ((v % mod_) + mod_) % mod_;
    return e;
  }

  Element add(const Element& a, const Element& b) const {
    Element c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = (a[i] + b[i]) % mod_;
    return c;
  }
  Element neg(const Element& a) const {
    Element c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = (mod_ - a[i]) % mod_;
    return c;
  }
  Element mul(const Element& a, const Element& b) const {
    std::vector<__int128> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + static_cast<__int128>(a[i]) * b[j]) % mod_;
    // reduce by the monic lift: x^k = -(c_0 + ... + c_{k-1} x^{k-1})
    for (std::size_t d = prod.size(); d-- > k_;) {
      const __int128 lead = prod[d];
      if (lead == 0) continue;
      for (unsigned i = 0; i < k_; ++i) {
        prod[d - k_ + i] = (prod[d - k_ + i] - lead * lift_[i]) % mod_;
        if (prod[d - k_ + i] < 0) prod[d - k_ + i] += mod_;
      }
      prod[d] = 0;
    }
    Element c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = static_cast<std::int64_t>(prod[i]);
    return c;
  }
  Element pow(Element a, std::uint64_t e) const {
    Element r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Reduction mod p to the residue field.
  FiniteField::Element reduce(const Element& a) const {
    Poly c(k_);
    for (unsigned i = 0; i < k_; ++i) c[i] = static_cast<std::uint32_t>(a[i] % p_);
    return field_.from_coefficients(c);
  }

  /// The Teichmüller representative of a, the fixed point of t ↦ t^{p^k}
  /// reached from any lift of a.
  const Element& teichmuller(FiniteField::Element a) const { return teich_[a]; }
  const std::vector<Element>& teichmuller_table() const { return teich_; }
  /// Iterations of t ↦ t^q needed to reach the fixed point from the naive lift.
  unsigned teichmuller_iterations() const { return iterations_; }

  std::uint64_t index(const Element& a) const {
    std::uint64_t v = 0;
    for (unsigned i = k_; i-- > 0;) v = v * static_cast<std::uint64_t>(mod_) + static_cast<std::uint64_t>(a[i]);
    return v;
  }
  Element element(std::uint64_t v) const {
    Element e(k_);
    for (unsigned i = 0; i < k_; ++i) {
      e[i] = static_cast<std::int64_t>(v % static_cast<std::uint64_t>(mod_));
      v /= static_cast<std::uint64_t>(mod_);
    }
    return e;
  }

  /// Presentation on the basis 1, x, ..., x^{k-1}.
  FiniteRing as_finite_ring() const {
    std::vector<Coords> t;
    for (unsigned i = 0; i < k_; ++i)
      for (unsigned j = 0; j < k_; ++j) {
        Element a = zero(), b = zero();
        a[i] = 1;
        b[j] = 1;
        t.push_back(mul(a, b));
      }
    return FiniteRing(std::vector<std::int64_t>(k_, mod_), std::move(t), one(),
                      "GR(" + std::to_string(mod_) + "," + std::to_string(k_) + ")");
  }

 private:
  void build_teichmuller() {
    const std::uint64_t q = field_.order();
    teich_.resize(q);
    iterations_ = 0;
    for (FiniteField::Element a = 0; a < q; ++a) {
      Element t = zero();
      Poly c = field_.coefficients(a);
      for (unsigned i = 0; i < k_; ++i) t[i] = c[i];
      unsigned it = 0;
      for (;;) {
        Element next = pow(t, q);
        if (next == t) break;
        t = std::move(next);
        if (++it > n_ + 1) throw std::logic_error("GaloisRing: Teichmüller iteration did not stabilize");
      }
      iterations_ = std::max(iterations_, it);
      teich_[a] = std::move(t);
    }
  }

  FiniteField field_;
  std::uint32_t p_;
  unsigned k_, n_;
  std::int64_t mod_;
  std::vector<std::int64_t> lift_;
  std::vector<Element> teich_;
  unsigned iterations_ = 0;
};

inline GaloisRing galois_ring_oracle(std::uint32_t p, unsigned k, unsigned n) { return GaloisRing(p, k, n); }

/// Digit transport W_n(F_q) -> GR: x = Σ p^i τ(a_i) ↦ Σ p^i τ̃(a_i).
inline GaloisRing::Element transport(const WittRing& W, const GaloisRing& G, const WittVector& x) {
  const auto a = W.digits(x);
  GaloisRing::Element acc = G.zero();
  std::int64_t pi = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& t = G.teichmuller(a[i]);
    for (unsigned j = 0; j < G.degree(); ++j) acc[j] = (acc[j] + pi % G.modulus_integer() * t[j]) % G.modulus_integer();
    pi *= G.p();
  }
  return acc;
}

struct OracleReport {
  std::uint32_t p = 0;
  unsigned k = 0, n = 0;
  std::string mode;  // "exhaustive" or "random"
  bool bijective = false;
  bool additive = false;
  bool multiplicative = false;
  bool unital = false;
  std::uint64_t checks = 0;
  bool matched() const { return bijective && additive && multiplicative && unital; }
};

namespace detail {

struct TransportTable {
  WittRing W;
  GaloisRing G;
  std::vector<GaloisRing::Element> image;  // by Witt index
  bool bijective = false;
};

inline TransportTable build_transport(std::uint32_t p, unsigned k, unsigned n) {
  TransportTable t{WittRing(PerfectRing::field(p, k), n), GaloisRing(p, k, n), {}, false};
  std::set<std::uint64_t> seen;
  for (std::uint64_t v = 0; v < t.W.size(); ++v) {
    t.image.push_back(transport(t.W, t.G, t.W.element(v)));
    seen.insert(t.G.index(t.image.back()));
  }
  t.bijective = seen.size() == t.W.size() && t.W.size() == t.G.size();
  return t;
}

}  // namespace detail

/// Checks that digit transport is a ring isomorphism, on every pair.
inline OracleReport oracle_match_exhaustive(std::uint32_t p, unsigned k, unsigned n) {
  auto t = detail::build_transport(p, k, n);
  OracleReport r{p, k, n, "exhaustive", t.bijective, true, true, false, 0};
  r.unital = t.image[t.W.index(t.W.one())] == t.G.one();
  const std::uint64_t N = t.W.size();
  for (std::uint64_t a = 0; a < N; ++a) {
    const WittVector x = t.W.element(a);
    for (std::uint64_t b = 0; b < N; ++b) {
      const WittVector y = t.W.element(b);
      if (t.image[t.W.index(t.W.add(x, y))] != t.G.add(t.image[a], t.image[b])) r.additive = false;
      if (t.image[t.W.index(t.W.mul(x, y))] != t.G.mul(t.image[a], t.image[b])) r.multiplicative = false;
      ++r.checks;
    }
  }
  return r;
}

/// Randomized version on `triples` random (x, y, z): checks T(x+y) = T(x)+T(y),
/// T(xy) = T(x)T(y) and T((x+y)z) = (T(x)+T(y))T(z). Bijectivity is still
/// checked on all elements.
inline OracleReport oracle_match_random(std::uint32_t p, unsigned k, unsigned n, std::uint64_t triples,
                                        std::uint64_t seed) {
  auto t = detail::build_transport(p, k, n);
  OracleReport r{p, k, n, "random", t.bijective, true, true, false, 0};
  r.unital = t.image[t.W.index(t.W.one())] == t.G.one();
  std::mt19937_64 rng(seed);
  const std::uint64_t N = t.W.size();
  for (std::uint64_t i = 0; i < triples; ++i) {
    const std::uint64_t a = rng() % N, b = rng() % N, c = rng() % N;
    const WittVector x = t.W.element(a), y = t.W.element(b), z = t.W.element(c);
    const WittVector s = t.W.add(x, y);
    if (t.image[t.W.index(s)] != t.G.add(t.image[a], t.image[b])) r.additive = false;
    if (t.image[t.W.index(t.W.mul(x, y))] != t.G.mul(t.image[a], t.image[b])) r.multiplicative = false;
    if (t.image[t.W.index(t.W.mul(s, z))] != t.G.mul(t.G.add(t.image[a], t.image[b]), t.image[c]))
      r.multiplicative = false;
    ++r.checks;
  }
  return r;
}

/// Exhaustive when |W_n(F_q)|^2 <= 2^16, randomized otherwise.
inline OracleReport oracle_match(std::uint32_t p, unsigned k, unsigned n, std::uint64_t seed = 20240601,
                                 std::uint64_t triples = 10000) {
  std::uint64_t size = 1;
  for (unsigned i = 0; i < k * n; ++i) size *= p;
  if (size <= 256) return oracle_match_exhaustive(p, k, n);
  return oracle_match_random(p, k, n, triples, seed);
}

}  // namespace wittcd
