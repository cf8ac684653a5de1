#pragma once

// Tor over finite-dimensional commutative F_p-algebras via free
// resolutions, with the algebras used for the homological-epimorphism and
// Hochschild checks.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "finite_field.hpp"
#include "perfect_ring.hpp"

namespace wittcd {

using FpVector = std::vector<std::uint32_t>;

/// Dense matrix over F_p, stored by columns.
struct FpMatrix {
  std::size_t rows = 0;
  std::vector<FpVector> cols;

  FpMatrix() = default;
  FpMatrix(std::size_t r, std::size_t c) : rows(r), cols(c, FpVector(r, 0)) {}
  static FpMatrix identity(std::size_t n) {
    FpMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols[i][i] = 1;
    return m;
  }
  std::size_t col_count() const { return cols.size(); }
  bool operator==(const FpMatrix&) const = default;
};

namespace fp {

inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline FpVector apply(const FpMatrix& m, const FpVector& x, std::uint32_t p) {
  FpVector y(m.rows, 0);
  for (std::size_t j = 0; j < m.col_count(); ++j) {
    if (!x[j]) continue;
    for (std::size_t i = 0; i < m.rows; ++i) y[i] = static_cast<std::uint32_t>((y[i] + std::uint64_t(x[j]) * m.cols[j][i]) % p);
  }
  return y;
}

inline FpMatrix compose(const FpMatrix& a, const FpMatrix& b, std::uint32_t p) {
  FpMatrix c(a.rows, b.col_count());
  for (std::size_t j = 0; j < b.col_count(); ++j) c.cols[j] = apply(a, b.cols[j], p);
  return c;
}

inline FpMatrix add_scaled(const FpMatrix& a, const FpMatrix& b, std::uint32_t s, std::uint32_t p) {
  FpMatrix c = a;
  for (std::size_t j = 0; j < c.col_count(); ++j)
    for (std::size_t i = 0; i < c.rows; ++i) c.cols[j][i] = static_cast<std::uint32_t>((c.cols[j][i] + std::uint64_t(s) * b.cols[j][i]) % p);
  return c;
}

/// Incrementally maintained row-echelon basis of a subspace of F_p^n.
class Span {
 public:
  Span(std::size_t n, std::uint32_t p) : n_(n), p_(p) {}

  std::size_t dimension() const { return rows_.size(); }
  FpVector reduce(FpVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint32_t c = v[piv_[r]];
      if (!c) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = static_cast<std::uint32_t>((v[j] + std::uint64_t(p_ - c) * rows_[r][j]) % p_);
    }
    return v;
  }
  bool contains(const FpVector& v) const {
    const FpVector r = reduce(v);
    for (auto x : r)
      if (x) return false;
    return true;
  }
  /// Returns true when v was independent of the span.
  bool insert(const FpVector& v) {
    FpVector r = reduce(v);
    std::size_t k = 0;
    while (k < n_ && !r[k]) ++k;
    if (k == n_) return false;
    const std::uint32_t s = inv(r[k], p_);
    for (auto& x : r) x = static_cast<std::uint32_t>(std::uint64_t(x) * s % p_);
    rows_.push_back(std::move(r));
    piv_.push_back(k);
    return true;
  }

 private:
  std::size_t n_;
  std::uint32_t p_;
  std::vector<FpVector> rows_;
  std::vector<std::size_t> piv_;
};

inline std::size_t rank(const FpMatrix& m, std::uint32_t p) {
  Span s(m.rows, p);
  for (const auto& c : m.cols) s.insert(c);
  return s.dimension();
}

/// Basis of {x : m x = 0}, from the reduced row-echelon form.
inline std::vector<FpVector> kernel(const FpMatrix& m, std::uint32_t p) {
  const std::size_t R = m.rows, C = m.col_count();
  std::vector<FpVector> a(R, FpVector(C));
  for (std::size_t j = 0; j < C; ++j)
    for (std::size_t i = 0; i < R; ++i) a[i][j] = m.cols[j][i];
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < C && row < R; ++c) {
    std::size_t k = row;
    while (k < R && !a[k][c]) ++k;
    if (k == R) continue;
    std::swap(a[row], a[k]);
    const std::uint32_t s = inv(a[row][c], p);
    for (auto& x : a[row]) x = static_cast<std::uint32_t>(std::uint64_t(x) * s % p);
    for (std::size_t i = 0; i < R; ++i) {
      if (i == row || !a[i][c]) continue;
      const std::uint32_t f = a[i][c];
      for (std::size_t j = 0; j < C; ++j) a[i][j] = static_cast<std::uint32_t>((a[i][j] + std::uint64_t(p - f) * a[row][j]) % p);
    }
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(C, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<FpVector> out;
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    FpVector v(C, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = (p - a[r][f]) % p;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace fp

/// A finite-dimensional commutative F_p-algebra with structure constants.
class FpAlgebra {
 public:
  FpAlgebra(std::uint32_t p, std::size_t dim, std::vector<FpVector> table, FpVector unit, std::string name)
      : p_(p), dim_(dim), table_(std::move(table)), unit_(std::move(unit)), name_(std::move(name)) {
    if (!detail::is_prime(p)) throw std::invalid_argument("FpAlgebra: p must be prime");
    if (table_.size() != dim * dim || unit_.size() != dim) throw std::invalid_argument("FpAlgebra: shape mismatch");
    for (std::size_t i = 0; i < dim; ++i) {
      if (mul(unit_, basis(i)) != basis(i)) throw std::invalid_argument("FpAlgebra: unit law fails");
      for (std::size_t j = 0; j < dim; ++j) {
        if (product(i, j) != product(j, i)) throw std::invalid_argument("FpAlgebra: not commutative");
        for (std::size_t k = 0; k < dim; ++k)
          if (mul(product(i, j), basis(k)) != mul(basis(i), product(j, k)))
            throw std::invalid_argument("FpAlgebra: not associative");
      }
    }
  }

  std::uint32_t characteristic() const { return p_; }
  std::size_t dimension() const { return dim_; }
  const std::string& name() const { return name_; }
  const FpVector& unit() const { return unit_; }
  const FpVector& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  FpVector basis(std::size_t i) const {
    FpVector v(dim_, 0);
    v[i] = 1;
    return v;
  }
  FpVector mul(const FpVector& a, const FpVector& b) const {
    FpVector c(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (!b[j]) continue;
        const std::uint64_t f = std::uint64_t(a[i]) * b[j] % p_;
        const auto& e = product(i, j);
        for (std::size_t k = 0; k < dim_; ++k) c[k] = static_cast<std::uint32_t>((c[k] + f * e[k]) % p_);
      }
    }
    return c;
  }

 private:
  std::uint32_t p_;
  std::size_t dim_;
  std::vector<FpVector> table_;
  FpVector unit_;
  std::string name_;
};

/// A finite-dimensional module, given by the action of each basis element.
class FpModule {
 public:
  FpModule(const FpAlgebra& A, std::size_t dim, std::vector<FpMatrix> action, std::string name)
      : dim_(dim), action_(std::move(action)), name_(std::move(name)) {
    const auto p = A.characteristic();
    if (action_.size() != A.dimension()) throw std::invalid_argument("FpModule: need one matrix per basis element");
    for (const auto& m : action_)
      if (m.rows != dim || m.col_count() != dim) throw std::invalid_argument("FpModule: matrix shape");
    if (act_matrix(A.unit(), p) != FpMatrix::identity(dim)) throw std::invalid_argument("FpModule: unit does not act as 1");
    for (std::size_t i = 0; i < A.dimension(); ++i)
      for (std::size_t j = 0; j < A.dimension(); ++j)
        if (fp::compose(action_[i], action_[j], p) != act_matrix(A.product(i, j), p))
          throw std::invalid_argument("FpModule: action does not respect the structure constants");
  }

  std::size_t dimension() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<FpMatrix>& action() const { return action_; }
  FpMatrix act_matrix(const FpVector& a, std::uint32_t p) const {
    FpMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i]) m = fp::add_scaled(m, action_[i], a[i], p);
    return m;
  }

 private:
  std::size_t dim_;
  std::vector<FpMatrix> action_;
  std::string name_;
};

struct TorReport {
  std::string algebra;
  std::string module_b, module_c;
  std::size_t algebra_dim = 0;
  std::vector<std::size_t> betti;        // dim Tor_i, i = 0..i_max
  std::vector<std::size_t> free_ranks;   // ranks of the resolution, i = 0..i_max+1
  std::size_t tensor_dim = 0;           // dim B ⊗_A C computed directly
  bool tor0_matches = false;
  bool vanishing() const {
    for (std::size_t i = 1; i < betti.size(); ++i)
      if (betti[i]) return false;
    return true;
  }
  std::string verdict() const { return vanishing() ? "vanishing" : "nonvanishing"; }
};

namespace detail {

/// Action of the basis element e_j on the free module A^b.
inline FpVector act_free(const FpAlgebra& A, std::size_t j, const FpVector& x, std::size_t b) {
  const std::size_t d = A.dimension();
  FpVector y(b * d, 0);
  for (std::size_t s = 0; s < b; ++s) {
    FpVector block(x.begin() + static_cast<std::ptrdiff_t>(s * d), x.begin() + static_cast<std::ptrdiff_t>((s + 1) * d));
    FpVector prod = A.mul(A.basis(j), block);
    std::copy(prod.begin(), prod.end(), y.begin() + static_cast<std::ptrdiff_t>(s * d));
  }
  return y;
}

/// Generators of an A-submodule given by an F_p-basis: greedy in basis
/// order, then pruned of any generator in the span of the others.
template <class Act>
std::vector<FpVector> module_generators(const std::vector<FpVector>& basis, std::size_t ambient, std::size_t dimA,
                                        std::uint32_t p, Act act) {
  auto span_of = [&](const std::vector<FpVector>& gens, std::size_t skip) {
    fp::Span s(ambient, p);
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (g != skip)
        for (std::size_t j = 0; j < dimA; ++j) s.insert(act(j, gens[g]));
    return s;
  };
  std::vector<FpVector> gens;
  fp::Span current(ambient, p);
  for (const auto& v : basis) {
    if (current.contains(v)) continue;
    gens.push_back(v);
    for (std::size_t j = 0; j < dimA; ++j) current.insert(act(j, v));
  }
  for (std::size_t g = 0; g < gens.size();) {
    if (span_of(gens, g).dimension() == current.dimension()) {
      gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(g));
    } else {
      ++g;
    }
  }
  return gens;
}

}  // namespace detail

/// Tor_i^A(B, C) for i = 0..i_max.
inline TorReport tor(const FpAlgebra& A, const FpModule& B, const FpModule& C, unsigned i_max) {
  if (i_max > 4) throw std::invalid_argument("tor: i_max must be <= 4");
  if (B.action().size() != A.dimension() || C.action().size() != A.dimension())
    throw std::invalid_argument("tor: modules over a different algebra");
  const std::uint32_t p = A.characteristic();
  const std::size_t d = A.dimension(), dc = C.dimension();
  TorReport rep;
  rep.algebra = A.name();
  rep.module_b = B.name();
  rep.module_c = C.name();
  rep.algebra_dim = d;

  // generators of F_i, each a vector in F_{i-1} (or in B for i = 0)
  std::vector<std::vector<FpVector>> gens;
  {
    std::vector<FpVector> std_basis;
    for (std::size_t i = 0; i < B.dimension(); ++i) {
      FpVector e(B.dimension(), 0);
      e[i] = 1;
      std_basis.push_back(e);
    }
    gens.push_back(detail::module_generators(std_basis, B.dimension(), d, p, [&](std::size_t j, const FpVector& v) {
      return fp::apply(B.action()[j], v, p);
    }));
  }
  for (unsigned i = 0; i <= i_max; ++i) {
    // the map F_i -> previous, as an F_p-matrix; columns (s, j) = e_j · g_s
    const auto& g = gens[i];
    const std::size_t target_dim = i == 0 ? B.dimension() : gens[i - 1].size() * d;
    FpMatrix phi(target_dim, g.size() * d);
    for (std::size_t s = 0; s < g.size(); ++s)
      for (std::size_t j = 0; j < d; ++j)
        phi.cols[s * d + j] = i == 0 ? fp::apply(B.action()[j], g[s], p)
                                     : detail::act_free(A, j, g[s], gens[i - 1].size());
    const auto K = fp::kernel(phi, p);
    const std::size_t b = g.size();
    gens.push_back(detail::module_generators(K, b * d, d, p, [&](std::size_t j, const FpVector& v) {
      return detail::act_free(A, j, v, b);
    }));
  }
  for (const auto& g : gens) rep.free_ranks.push_back(g.size());

  // d_i : C^{b_i} -> C^{b_{i-1}}, i >= 1
  auto differential = [&](unsigned i) {
    const std::size_t bi = gens[i].size(), bprev = gens[i - 1].size();
    FpMatrix D(bprev * dc, bi * dc);
    for (std::size_t s = 0; s < bi; ++s) {
      const FpVector& v = gens[i][s];
      for (std::size_t t = 0; t < bprev; ++t) {
        FpVector a(v.begin() + static_cast<std::ptrdiff_t>(t * d), v.begin() + static_cast<std::ptrdiff_t>((t + 1) * d));
        const FpMatrix L = C.act_matrix(a, p);
        for (std::size_t c = 0; c < dc; ++c)
          for (std::size_t r = 0; r < dc; ++r) D.cols[s * dc + c][t * dc + r] = L.cols[c][r];
      }
    }
    return D;
  };
  std::vector<std::size_t> ranks(i_max + 2, 0);  // ranks[i] = rank d_i, d_0 = 0
  for (unsigned i = 1; i <= i_max + 1; ++i) ranks[i] = fp::rank(differential(i), p);
  for (unsigned i = 0; i <= i_max; ++i) rep.betti.push_back(gens[i].size() * dc - ranks[i] - ranks[i + 1]);

  // B ⊗_A C directly: B ⊗ C modulo (a b) ⊗ c - b ⊗ (a c)
  const std::size_t db = B.dimension();
  fp::Span rel(db * dc, p);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t x = 0; x < db; ++x)
      for (std::size_t y = 0; y < dc; ++y) {
        FpVector v(db * dc, 0);
        for (std::size_t u = 0; u < db; ++u) {
          const std::uint32_t c = B.action()[j].cols[x][u];
          v[u * dc + y] = (v[u * dc + y] + c) % p;
        }
        for (std::size_t w = 0; w < dc; ++w) {
          const std::uint32_t c = C.action()[j].cols[y][w];
          v[x * dc + w] = (v[x * dc + w] + p - c) % p;
        }
        rel.insert(v);
      }
  rep.tensor_dim = db * dc - rel.dimension();
  rep.tor0_matches = rep.tensor_dim == rep.betti[0];
  return rep;
}

// ---------------------------------------------------------------------------
// Algebras and modules
// ---------------------------------------------------------------------------

/// Multiplication by r on R, on the F_p-basis of R.
inline FpMatrix multiplication_matrix(const PerfectRing& R, PerfectRing::Element r) {
  const auto basis = R.additive_basis();
  FpMatrix m(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) m.cols[j] = R.coordinates(R.mul(r, basis[j]));
  return m;
}

/// F_p[x]/(x^n) on the basis 1, x, ..., x^{n-1}.
inline FpAlgebra truncated_polynomial_algebra(std::uint32_t p, std::size_t n) {
  if (n < 1) throw std::invalid_argument("truncated_polynomial_algebra: n must be >= 1");
  std::vector<FpVector> t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      FpVector v(n, 0);
      if (i + j < n) v[i + j] = 1;
      t.push_back(v);
    }
  FpVector u(n, 0);
  u[0] = 1;
  return FpAlgebra(p, n, std::move(t), u, "F" + std::to_string(p) + "[x]/(x^" + std::to_string(n) + ")");
}

/// F_p with x acting as 0.
inline FpModule residue_module(const FpAlgebra& A) {
  std::vector<FpMatrix> act;
  for (std::size_t i = 0; i < A.dimension(); ++i) {
    FpMatrix m(1, 1);
    m.cols[0][0] = i == 0 ? 1 : 0;
    act.push_back(m);
  }
  return FpModule(A, 1, std::move(act), "F" + std::to_string(A.characteristic()));
}

/// F_p[(R,·)] on the basis [r].
inline FpAlgebra monoid_algebra_fp(const PerfectRing& R) {
  const std::size_t n = R.size();
  std::vector<FpVector> t;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      FpVector v(n, 0);
      v[R.mul(static_cast<PerfectRing::Element>(a), static_cast<PerfectRing::Element>(b))] = 1;
      t.push_back(v);
    }
  FpVector u(n, 0);
  u[R.one()] = 1;
  return FpAlgebra(R.characteristic(), n, std::move(t), u, "F" + std::to_string(R.characteristic()) + "[" + R.name() + "]");
}

/// R as an F_p[(R,·)]-module through the augmentation [r] ↦ r.
inline FpModule augmentation_module(const FpAlgebra& A, const PerfectRing& R) {
  std::vector<FpMatrix> act;
  for (PerfectRing::Element r = 0; r < R.size(); ++r) act.push_back(multiplication_matrix(R, r));
  return FpModule(A, R.dimension(), std::move(act), R.name());
}

/// R itself as an F_p-algebra on its F_p-basis.
inline FpAlgebra perfect_algebra(const PerfectRing& R) {
  const auto basis = R.additive_basis();
  std::vector<FpVector> t;
  for (auto a : basis)
    for (auto b : basis) t.push_back(R.coordinates(R.mul(a, b)));
  return FpAlgebra(R.characteristic(), basis.size(), std::move(t), R.coordinates(R.one()), R.name());
}

/// S as a module over R through a ring map f : R -> S (an element table).
inline FpModule module_via(const FpAlgebra& A, const PerfectRing& R, const PerfectRing& S,
                           const std::vector<PerfectRing::Element>& f) {
  std::vector<FpMatrix> act;
  for (auto beta : R.additive_basis()) act.push_back(multiplication_matrix(S, f[beta]));
  return FpModule(A, S.dimension(), std::move(act), S.name());
}

/// The projection of R onto a sub-product S: each factor of S is matched
/// with the first unused factor of R of the same degree.
inline std::vector<PerfectRing::Element> factor_projection(const PerfectRing& R, const PerfectRing& S) {
  if (R.characteristic() != S.characteristic()) throw std::invalid_argument("factor_projection: characteristics differ");
  std::vector<std::size_t> match;
  std::vector<bool> used(R.factor_count(), false);
  for (const auto& F : S.factors()) {
    std::size_t k = 0;
    while (k < R.factor_count() && (used[k] || R.factors()[k].degree() != F.degree())) ++k;
    if (k == R.factor_count()) throw std::invalid_argument("factor_projection: " + S.name() + " is not a factor of " + R.name());
    used[k] = true;
    match.push_back(k);
  }
  std::vector<PerfectRing::Element> f(R.size());
  for (PerfectRing::Element r = 0; r < R.size(); ++r) {
    std::vector<FiniteField::Element> c;
    for (auto k : match) c.push_back(R.component(r, k));
    f[r] = S.from_components(c);
  }
  return f;
}

/// R ⊗_{F_p} R on the basis β_i ⊗ β_j (index i·d + j).
inline FpAlgebra tensor_square(const PerfectRing& R) {
  const auto basis = R.additive_basis();
  const std::size_t d = basis.size();
  if (d * d > 36) throw std::invalid_argument("tensor_square: dimension of R ⊗ R exceeds 36");
  const std::uint32_t p = R.characteristic();
  std::vector<FpVector> t;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const auto a = R.coordinates(R.mul(basis[i], basis[k]));
          const auto b = R.coordinates(R.mul(basis[j], basis[l]));
          FpVector v(d * d, 0);
          for (std::size_t x = 0; x < d; ++x)
            for (std::size_t y = 0; y < d; ++y) v[x * d + y] = static_cast<std::uint32_t>(std::uint64_t(a[x]) * b[y] % p);
          t.push_back(v);
        }
  const auto one = R.coordinates(R.one());
  FpVector u(d * d, 0);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y) u[x * d + y] = static_cast<std::uint32_t>(std::uint64_t(one[x]) * one[y] % p);
  return FpAlgebra(p, d * d, std::move(t), u, R.name() + "(x)" + R.name());
}

/// R as an R ⊗ R-module: (a ⊗ b)·x = abx.
inline FpModule multiplication_module(const FpAlgebra& RR, const PerfectRing& R) {
  const auto basis = R.additive_basis();
  std::vector<FpMatrix> act;
  for (auto a : basis)
    for (auto b : basis) act.push_back(multiplication_matrix(R, R.mul(a, b)));
  return FpModule(RR, R.dimension(), std::move(act), R.name());
}

/// Tor_i^{R⊗R}(R, R).
inline TorReport hochschild_check(const PerfectRing& R, unsigned i_max) {
  const FpAlgebra RR = tensor_square(R);
  const FpModule M = multiplication_module(RR, R);
  return tor(RR, M, M, i_max);
}

}  // namespace wittcd
