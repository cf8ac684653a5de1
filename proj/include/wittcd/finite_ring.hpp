#pragma once

// Finite commutative rings presented by an additive group ⊕ Z/d_i and
// structure constants; ring homomorphism search; the tilt.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "perfect_ring.hpp"

namespace wittcd {

using Coords = std::vector<std::int64_t>;

/// A finite commutative ring. The additive group is ⊕ Z/d_i (all d_i >= 2),
/// elements are coordinate vectors with 0 <= c_i < d_i, and multiplication
/// is given by the products of the standard generators.
class FiniteRing {
 public:
  FiniteRing() = default;

  FiniteRing(std::vector<std::int64_t> factors, std::vector<Coords> products, Coords unit, std::string name = {})
      : d_(std::move(factors)), table_(std::move(products)), unit_(std::move(unit)), name_(std::move(name)) {
    const std::size_t r = d_.size();
    for (auto d : d_)
      if (d < 2) throw std::invalid_argument("FiniteRing: invariant factors must be >= 2");
    if (table_.size() != r * r) throw std::invalid_argument("FiniteRing: structure table has wrong size");
    if (unit_.size() != r) throw std::invalid_argument("FiniteRing: unit has wrong length");
    for (auto& c : table_) {
      if (c.size() != r) throw std::invalid_argument("FiniteRing: structure constant has wrong length");
      c = normalize(c);
    }
    unit_ = normalize(unit_);
    std::uint64_t n = 1;
    for (auto d : d_) {
      n *= static_cast<std::uint64_t>(d);
      if (n > (1ull << 32)) throw std::invalid_argument("FiniteRing: ring too large");
    }
    order_ = n;
    validate();
  }

  /// The zero ring.
  static FiniteRing zero_ring() { return FiniteRing({}, {}, {}, "0"); }

  /// Z/n.
  static FiniteRing integers_mod(std::int64_t n) {
    if (n < 2) return zero_ring();
    return FiniteRing({n}, {{1}}, {1}, "Z" + std::to_string(n));
  }

  /// R viewed through its F_p-basis. Element indices agree with R's.
  static FiniteRing from_perfect_ring(const PerfectRing& R) {
    const auto basis = R.additive_basis();
    const std::size_t d = basis.size();
    std::vector<Coords> t(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto c = R.coordinates(R.mul(basis[i], basis[j]));
        t[i * d + j] = Coords(c.begin(), c.end());
      }
    auto u = R.coordinates(R.one());
    return FiniteRing(std::vector<std::int64_t>(d, R.characteristic()), std::move(t), Coords(u.begin(), u.end()),
                      R.name());
  }

  const std::vector<std::int64_t>& invariant_factors() const { return d_; }
  std::size_t generator_count() const { return d_.size(); }
  std::uint64_t order() const { return order_; }
  const Coords& one() const { return unit_; }
  Coords zero() const { return Coords(d_.size(), 0); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const Coords& product_of_generators(std::size_t i, std::size_t j) const { return table_[i * d_.size() + j]; }
  Coords generator(std::size_t i) const {
    Coords e = zero();
    e[i] = 1;
    return e;
  }

  Coords normalize(Coords c) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] %= d_[i];
      if (c[i] < 0) c[i] += d_[i];
    }
    return c;
  }

  Coords add(const Coords& a, const Coords& b) const {
    Coords c(d_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % d_[i];
    return c;
  }
  Coords neg(const Coords& a) const {
    Coords c(d_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = (d_[i] - a[i]) % d_[i];
    return c;
  }
  Coords sub(const Coords& a, const Coords& b) const { return add(a, neg(b)); }
  Coords scale(const Coords& a, std::int64_t s) const {
    Coords c(d_.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      __int128 v = static_cast<__int128>(a[i]) * s % d_[i];
      if (v < 0) v += d_[i];
      c[i] = static_cast<std::int64_t>(v);
    }
    return c;
  }
  Coords mul(const Coords& a, const Coords& b) const {
    const std::size_t r = d_.size();
    std::vector<__int128> acc(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (b[j] == 0) continue;
        const __int128 f = static_cast<__int128>(a[i]) * b[j];
        const Coords& e = table_[i * r + j];
        for (std::size_t k = 0; k < r; ++k)
          if (e[k] != 0) acc[k] = (acc[k] + f % d_[k] * e[k]) % d_[k];
      }
    }
    Coords c(r);
    for (std::size_t k = 0; k < r; ++k) c[k] = static_cast<std::int64_t>(acc[k]);
    return c;
  }
  Coords pow(Coords a, std::uint64_t e) const {
    Coords r = unit_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  bool is_zero(const Coords& a) const {
    return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
  }

  /// Mixed-radix index, coordinate 0 fastest.
  std::uint64_t index(const Coords& a) const {
    std::uint64_t x = 0;
    for (std::size_t i = d_.size(); i-- > 0;) x = x * static_cast<std::uint64_t>(d_[i]) + static_cast<std::uint64_t>(a[i]);
    return x;
  }
  Coords element(std::uint64_t x) const {
    Coords c(d_.size());
    for (std::size_t i = 0; i < d_.size(); ++i) {
      c[i] = static_cast<std::int64_t>(x % static_cast<std::uint64_t>(d_[i]));
      x /= static_cast<std::uint64_t>(d_[i]);
    }
    return c;
  }
  std::vector<Coords> elements() const {
    std::vector<Coords> out;
    out.reserve(order_);
    for (std::uint64_t x = 0; x < order_; ++x) out.push_back(element(x));
    return out;
  }

  /// The additive order of 1 (so char(A) = exponent here, since 1 generates
  /// the prime subring).
  std::int64_t characteristic() const {
    std::int64_t n = 1;
    Coords x = unit_;
    while (!is_zero(x)) {
      x = add(x, unit_);
      ++n;
    }
    return n;
  }

  /// Least k with p^k · A = 0, or nullopt when A is not p-power torsion.
  std::optional<unsigned> p_exponent(std::int64_t p) const {
    std::int64_t c = characteristic();
    unsigned k = 0;
    while (c % p == 0) {
      c /= p;
      ++k;
    }
    if (c != 1) return std::nullopt;
    return k;
  }

  /// A / mA as a ring.
  FiniteRing quotient_by_integer(std::int64_t m) const {
    std::vector<std::int64_t> nd;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < d_.size(); ++i) {
      std::int64_t g = std::gcd(d_[i], m);
      if (g > 1) {
        nd.push_back(g);
        kept.push_back(i);
      }
    }
    auto project = [&](const Coords& c) {
      Coords out;
      for (std::size_t k = 0; k < kept.size(); ++k) out.push_back(c[kept[k]] % nd[k]);
      return out;
    };
    std::vector<Coords> t;
    for (auto i : kept)
      for (auto j : kept) t.push_back(project(product_of_generators(i, j)));
    FiniteRing q(nd, t, project(unit_), name_ + "/" + std::to_string(m));
    return q;
  }
  /// Reduction A -> A/mA on coordinates (matching quotient_by_integer).
  Coords reduce_mod_integer(const Coords& c, std::int64_t m) const {
    Coords out;
    for (std::size_t i = 0; i < d_.size(); ++i) {
      std::int64_t g = std::gcd(d_[i], m);
      if (g > 1) out.push_back(c[i] % g);
    }
    return out;
  }
  /// A lift of an element of A/mA (inverse of reduce_mod_integer up to mA).
  Coords lift_from_quotient(const Coords& c, std::int64_t m) const {
    Coords out(d_.size(), 0);
    std::size_t k = 0;
    for (std::size_t i = 0; i < d_.size(); ++i)
      if (std::gcd(d_[i], m) > 1) out[i] = c[k++];
    return out;
  }

  std::vector<Coords> idempotents() const {
    std::vector<Coords> out;
    for (std::uint64_t x = 0; x < order_; ++x) {
      Coords e = element(x);
      if (mul(e, e) == e) out.push_back(std::move(e));
    }
    return out;
  }

 private:
  void validate() const {
    const std::size_t r = d_.size();
    // multiplication respects relations: d_i · (e_i e_j) = 0
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        if (!is_zero(scale(product_of_generators(i, j), d_[i])))
          throw std::invalid_argument("FiniteRing: multiplication does not respect the additive relations");
    for (std::size_t i = 0; i < r; ++i) {
      if (mul(unit_, generator(i)) != generator(i)) throw std::invalid_argument("FiniteRing: unit law fails");
      for (std::size_t j = 0; j < r; ++j) {
        if (product_of_generators(i, j) != product_of_generators(j, i))
          throw std::invalid_argument("FiniteRing: not commutative");
        for (std::size_t k = 0; k < r; ++k)
          if (mul(product_of_generators(i, j), generator(k)) != mul(generator(i), product_of_generators(j, k)))
            throw std::invalid_argument("FiniteRing: not associative");
      }
    }
  }

  std::vector<std::int64_t> d_;
  std::vector<Coords> table_;
  Coords unit_;
  std::uint64_t order_ = 1;
  std::string name_;
};

/// A ring homomorphism between finite rings, stored as generator images.
struct RingHom {
  std::vector<Coords> images;  // image of each additive generator of the source

  Coords apply(const FiniteRing& target, const Coords& x) const {
    Coords y = target.zero();
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) y = target.add(y, target.scale(images[i], x[i]));
    return y;
  }
  bool operator==(const RingHom&) const = default;
  bool operator<(const RingHom& o) const { return images < o.images; }
};

inline bool is_ring_hom(const FiniteRing& A, const RingHom& f, const FiniteRing& B) {
  if (f.images.size() != A.generator_count()) return false;
  for (std::size_t i = 0; i < A.generator_count(); ++i)
    if (!B.is_zero(B.scale(f.images[i], A.invariant_factors()[i]))) return false;
  if (f.apply(B, A.one()) != B.one()) return false;
  for (std::size_t i = 0; i < A.generator_count(); ++i)
    for (std::size_t j = i; j < A.generator_count(); ++j)
      if (f.apply(B, A.product_of_generators(i, j)) != B.mul(f.images[i], f.images[j])) return false;
  return true;
}

/// All unit-preserving ring homomorphisms A -> B by exhaustive search over
/// images of the additive generators (each restricted to the d_i-torsion).
inline std::vector<RingHom> ring_homs(const FiniteRing& A, const FiniteRing& B) {
  std::vector<std::vector<Coords>> candidates(A.generator_count());
  const auto elems = B.elements();
  for (std::size_t i = 0; i < A.generator_count(); ++i)
    for (const auto& y : elems)
      if (B.is_zero(B.scale(y, A.invariant_factors()[i]))) candidates[i].push_back(y);

  std::vector<RingHom> out;
  RingHom f;
  f.images.resize(A.generator_count());
  // Backtracking with a partial check on generator pairs whose product
  // only involves already-assigned generators.
  auto involves_only = [&](const Coords& c, std::size_t upto) {
    for (std::size_t k = upto; k < c.size(); ++k)
      if (c[k] != 0) return false;
    return true;
  };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == A.generator_count()) {
      if (is_ring_hom(A, f, B)) out.push_back(f);
      return;
    }
    for (const auto& y : candidates[i]) {
      f.images[i] = y;
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j) {
        const Coords& prod = A.product_of_generators(j, i);
        if (!involves_only(prod, i + 1)) continue;
        Coords img = B.zero();
        for (std::size_t k = 0; k <= i; ++k)
          if (prod[k] != 0) img = B.add(img, B.scale(f.images[k], prod[k]));
        ok = img == B.mul(f.images[j], f.images[i]);
      }
      if (ok && involves_only(A.one(), i + 1) && f.apply(B, A.one()) != B.one()) ok = false;
      if (ok) rec(i + 1);
    }
  };
  if (A.generator_count() == 0) {
    // zero ring maps only to the zero ring
    if (B.order() == 1) out.push_back(f);
    return out;
  }
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Ring homomorphism out of a perfect ring, as the image of every element.
using ElementMap = std::vector<Coords>;

/// All ring homomorphisms R -> B for a finite perfect ring R. A homomorphism
/// sends the factor idempotents to orthogonal idempotents summing to 1, and
/// the generator of each factor to a root of that factor's modulus inside
/// the corresponding idempotent piece of B.
inline std::vector<ElementMap> ring_homs(const PerfectRing& R, const FiniteRing& B) {
  const auto idem = B.idempotents();
  const std::size_t n = R.factor_count();
  std::vector<ElementMap> out;
  std::vector<Coords> chosen_idem(n), chosen_root(n);

  auto eval_modulus = [&](const Poly& m, const Coords& y, const Coords& e) {
    Coords acc = B.zero(), power = e;
    for (std::size_t j = 0; j < m.size(); ++j) {
      acc = B.add(acc, B.scale(power, m[j]));
      power = B.mul(power, y);
    }
    return acc;
  };

  auto build = [&]() {
    ElementMap table(R.size());
    for (PerfectRing::Element x = 0; x < R.size(); ++x) {
      Coords img = B.zero();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& F = R.factors()[i];
        const Poly c = F.coefficients(R.component(x, i));
        Coords power = chosen_idem[i];
        for (std::size_t j = 0; j < c.size(); ++j) {
          img = B.add(img, B.scale(power, c[j]));
          power = B.mul(power, chosen_root[i]);
        }
      }
      table[x] = img;
    }
    return table;
  };

  std::function<void(std::size_t, Coords)> choose_idem = [&](std::size_t i, Coords sum) {
    if (i == n) {
      if (sum != B.one()) return;
      // roots per factor
      std::vector<std::vector<Coords>> roots(n);
      for (std::size_t f = 0; f < n; ++f) {
        const Coords& e = chosen_idem[f];
        std::set<Coords> seen;
        for (const auto& y0 : B.elements()) {
          Coords y = B.mul(e, y0);
          if (!seen.insert(y).second) continue;
          if (B.is_zero(eval_modulus(R.factors()[f].modulus(), y, e))) roots[f].push_back(y);
        }
      }
      std::function<void(std::size_t)> choose_root = [&](std::size_t f) {
        if (f == n) {
          out.push_back(build());
          return;
        }
        for (const auto& y : roots[f]) {
          chosen_root[f] = y;
          choose_root(f + 1);
        }
      };
      choose_root(0);
      return;
    }
    for (const auto& e : idem) {
      bool orth = true;
      for (std::size_t j = 0; j < i && orth; ++j) orth = B.is_zero(B.mul(e, chosen_idem[j]));
      if (!orth) continue;
      chosen_idem[i] = e;
      choose_idem(i + 1, B.add(sum, e));
    }
  };
  choose_idem(0, B.zero());

  // keep only genuine homomorphisms (exhaustive check)
  std::vector<ElementMap> verified;
  for (auto& t : out) {
    bool ok = t[R.one()] == B.one();
    for (PerfectRing::Element a = 0; a < R.size() && ok; ++a)
      for (PerfectRing::Element b = 0; b < R.size() && ok; ++b)
        ok = t[R.add(a, b)] == B.add(t[a], t[b]) && t[R.mul(a, b)] == B.mul(t[a], t[b]);
    if (ok) verified.push_back(std::move(t));
  }
  std::sort(verified.begin(), verified.end());
  return verified;
}

/// Ring homomorphisms between perfect rings, as element tables.
inline std::vector<std::vector<PerfectRing::Element>> ring_homs(const PerfectRing& R, const PerfectRing& S) {
  const FiniteRing B = FiniteRing::from_perfect_ring(S);
  std::vector<std::vector<PerfectRing::Element>> out;
  for (const auto& t : ring_homs(R, B)) {
    std::vector<PerfectRing::Element> m;
    for (const auto& c : t) m.push_back(static_cast<PerfectRing::Element>(B.index(c)));
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tilt
// ---------------------------------------------------------------------------

/// The tilt of a finite commutative ring A: the limit of A/p along x ↦ x^p.
/// For finite A it is the stable image S of the Frobenius on A/p, on which
/// the Frobenius is bijective; a coherent sequence is determined by its
/// 0-th term in S.
struct Tilt {
  PerfectRing ring;
  FiniteRing reduction;          // A/p
  std::vector<Coords> embedding;  // element of ring -> its 0-th term in A/p
  unsigned stabilization_index;  // least N with φ^N(A/p) = φ^{N+1}(A/p)
  bool reduction_is_perfect;     // tilt(A) = A/p
};

inline Tilt tilt(const FiniteRing& A, std::uint32_t p) {
  if (!detail::is_prime(p)) throw std::invalid_argument("tilt: p must be prime");
  FiniteRing Ap = A.quotient_by_integer(p);
  std::set<Coords> image;
  for (const auto& x : Ap.elements()) image.insert(x);
  unsigned N = 0;
  for (;;) {
    std::set<Coords> next;
    for (const auto& x : image) next.insert(Ap.pow(x, p));
    if (next.size() == image.size()) break;
    image = std::move(next);
    ++N;
  }
  const bool perfect = image.size() == Ap.order();
  if (Ap.order() == 1) throw std::invalid_argument("tilt: A/p is the zero ring");

  // primitive idempotents of the stable image
  std::vector<Coords> idem;
  for (const auto& e : image)
    if (!Ap.is_zero(e) && Ap.mul(e, e) == e) idem.push_back(e);
  std::vector<Coords> primitive;
  for (const auto& e : idem) {
    bool prim = true;
    for (const auto& f : idem)
      if (f != e && Ap.mul(e, f) == f) prim = false;
    if (prim) primitive.push_back(e);
  }
  struct Piece {
    Coords idem;
    unsigned k;
  };
  std::vector<Piece> pieces;
  for (const auto& e : primitive) {
    std::set<Coords> ideal;
    for (const auto& s : image) ideal.insert(Ap.mul(e, s));
    unsigned k = 0;
    std::size_t sz = ideal.size();
    while (sz > 1) {
      if (sz % p != 0) throw std::logic_error("tilt: stable image piece is not a p-power");
      sz /= p;
      ++k;
    }
    pieces.push_back({e, k});
  }
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.k < b.k; });

  std::vector<FiniteField> fields;
  for (const auto& pc : pieces) fields.emplace_back(p, pc.k);
  PerfectRing R(std::move(fields));

  // an isomorphism F_{p^k} -> e·S for each piece: send x to a root of the modulus
  std::vector<Coords> roots;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Poly& m = R.factors()[i].modulus();
    const Coords& e = pieces[i].idem;
    std::optional<Coords> root;
    for (const auto& s : image) {
      Coords y = Ap.mul(e, s);
      Coords acc = Ap.zero(), power = e;
      for (std::size_t j = 0; j < m.size(); ++j) {
        acc = Ap.add(acc, Ap.scale(power, m[j]));
        power = Ap.mul(power, y);
      }
      if (Ap.is_zero(acc)) {
        root = y;
        break;
      }
    }
    if (!root) throw std::logic_error("tilt: no root of the modulus in a field piece");
    roots.push_back(*root);
  }
  std::vector<Coords> emb(R.size());
  for (PerfectRing::Element x = 0; x < R.size(); ++x) {
    Coords img = Ap.zero();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Poly c = R.factors()[i].coefficients(R.component(x, i));
      Coords power = pieces[i].idem;
      for (std::size_t j = 0; j < c.size(); ++j) {
        img = Ap.add(img, Ap.scale(power, c[j]));
        power = Ap.mul(power, roots[i]);
      }
    }
    emb[x] = img;
  }
  // the embedding must be an injective ring map onto the stable image
  std::set<Coords> hit(emb.begin(), emb.end());
  if (hit.size() != R.size() || hit != image) throw std::logic_error("tilt: embedding is not onto the stable image");
  for (PerfectRing::Element a = 0; a < R.size(); ++a)
    for (PerfectRing::Element b = 0; b < R.size(); ++b)
      if (emb[R.add(a, b)] != Ap.add(emb[a], emb[b]) || emb[R.mul(a, b)] != Ap.mul(emb[a], emb[b]))
        throw std::logic_error("tilt: embedding is not a ring map");
  return Tilt{std::move(R), std::move(Ap), std::move(emb), N, perfect};
}

/// The sharp map tilt(A) -> A: x ↦ (lift of φ^{-k}(x))^{p^k} where p^k A = 0.
/// Independent of the lift chosen, multiplicative, and a section of the
/// projection to A/p.
inline Coords sharp(const FiniteRing& A, const Tilt& t, PerfectRing::Element x, std::uint32_t p) {
  auto k = A.p_exponent(p);
  if (!k) throw std::invalid_argument("sharp: A is not p-power torsion");
  PerfectRing::Element root = x;
  for (unsigned i = 0; i < *k; ++i) root = t.ring.inverse_frobenius(root);
  Coords lifted = A.lift_from_quotient(t.embedding[root], p);
  std::uint64_t e = 1;
  for (unsigned i = 0; i < *k; ++i) e *= p;
  return A.pow(lifted, e);
}

}  // namespace wittcd
