#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, finitely
// presented abelian groups, integer lattices and p-divisibility of
// endomorphisms of finite abelian groups.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wittcd {

// Expression templates off: values are stored and captured with auto freely.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using IntVector = std::vector<BigInt>;

/// Floor-style remainder in [0, |m|).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct ExtendedGcd {
  BigInt g, s, t;  // s*a + t*b = g >= 0
};

inline ExtendedGcd extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline BigInt gcd(const BigInt& a, const BigInt& b) { return extended_gcd(a, b).g; }

inline BigInt ipow(const BigInt& base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

/// Dense integer matrix with arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVector col(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in sum");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: dimension mismatch in difference");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend IntMatrix operator*(const BigInt& s, const IntMatrix& a) {
    IntMatrix c = a;
    for (auto& v : c.data_) v *= s;
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& v) { return v == 0; });
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }
  /// Replace rows (a, b) by (s*a + t*b, u*a + v*b).
  void combine_rows(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t, const BigInt& u,
                    const BigInt& v) {
    for (std::size_t j = 0; j < cols_; ++j) {
      BigInt x = (*this)(a, j), y = (*this)(b, j);
      (*this)(a, j) = s * x + t * y;
      (*this)(b, j) = u * x + v * y;
    }
  }
  void combine_cols(std::size_t a, std::size_t b, const BigInt& s, const BigInt& t, const BigInt& u,
                    const BigInt& v) {
    for (std::size_t i = 0; i < rows_; ++i) {
      BigInt x = (*this)(i, a), y = (*this)(i, b);
      (*this)(i, a) = s * x + t * y;
      (*this)(i, b) = u * x + v * y;
    }
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> data_;
};

inline IntVector row_times(const IntVector& x, const IntMatrix& m) {
  if (x.size() != m.rows()) throw std::invalid_argument("row_times: dimension mismatch");
  IntVector y(m.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

inline IntVector matrix_times(const IntMatrix& m, const IntVector& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("matrix_times: dimension mismatch");
  IntVector y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (x[j] != 0) y[i] += m(i, j) * x[j];
  return y;
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithForm {
  IntMatrix U, D, V;  // U * A * V == D
  IntMatrix V_inverse;
  std::size_t rank = 0;
  /// Diagonal entries d_0 | d_1 | ... (length min(rows, cols)), zeros last.
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

/// Smith normal form with unimodular transforms. The pivot at each stage is
/// the entry of least nonzero absolute value in the remaining block.
inline SmithForm smith_normal_form(const IntMatrix& A) {
  if (A.rows() == 0 || A.cols() == 0) throw std::invalid_argument("smith_normal_form: empty matrix");
  const std::size_t m = A.rows(), n = A.cols();
  SmithForm s{IntMatrix::identity(m), A, IntMatrix::identity(n), IntMatrix::identity(n), 0};
  IntMatrix& D = s.D;

  auto col_op_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    D.add_col(dst, src, f);
    s.V.add_col(dst, src, f);
    s.V_inverse.add_row(src, dst, -f);
  };
  auto col_op_swap = [&](std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    s.V.swap_cols(a, b);
    s.V_inverse.swap_rows(a, b);
  };
  auto row_op_add = [&](std::size_t dst, std::size_t src, const BigInt& f) {
    D.add_row(dst, src, f);
    s.U.add_row(dst, src, f);
  };
  auto row_op_swap = [&](std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    s.U.swap_rows(a, b);
  };

  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      // pivot: least nonzero |entry| in the lower-right block
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      BigInt best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const BigInt& v = D(i, j);
          if (v == 0) continue;
          BigInt a = abs(v);
          if (!piv || a < best) {
            best = a;
            piv = {i, j};
          }
        }
      if (!piv) return s;  // remaining block is zero
      row_op_swap(t, piv->first);
      col_op_swap(t, piv->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        BigInt q = floor_div(D(i, t), D(t, t));
        row_op_add(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        BigInt q = floor_div(D(t, j), D(t, t));
        col_op_add(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: pivot must divide the rest of the block
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (bad_row) {
        row_op_add(t, *bad_row, 1);
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      s.U.negate_row(t);
    }
    ++s.rank;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style)
// ---------------------------------------------------------------------------

/// Row-style Hermite normal form: pivots strictly move right, pivots are
/// positive, entries above a pivot lie in [0, pivot). Zero rows are dropped.
class HermiteBasis {
 public:
  explicit HermiteBasis(std::size_t ambient) : n_(ambient) {}

  std::size_t ambient_rank() const { return n_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

  void insert(IntVector v) {
    if (v.size() != n_) throw std::invalid_argument("HermiteBasis: vector length mismatch");
    std::size_t r = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      if (v[c] == 0) continue;
      while (r < rows_.size() && piv_[r] < c) ++r;
      if (r == rows_.size() || piv_[r] != c) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(r), std::move(v));
        piv_.insert(piv_.begin() + static_cast<std::ptrdiff_t>(r), c);
        reduce_from(r);
        return;
      }
      IntVector& b = rows_[r];
      if (v[c] % b[c] == 0) {
        BigInt q = v[c] / b[c];
        for (std::size_t j = c; j < n_; ++j) v[j] -= q * b[j];
        continue;
      }
      auto [g, s, t] = extended_gcd(b[c], v[c]);
      BigInt bc = b[c] / g, vc = v[c] / g;
      for (std::size_t j = c; j < n_; ++j) {
        BigInt x = b[j], y = v[j];
        b[j] = s * x + t * y;
        v[j] = bc * y - vc * x;
      }
      reduce_from(r);
    }
  }

  /// Reduce v modulo the lattice; returns the canonical representative.
  IntVector reduce(IntVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t c = piv_[r];
      BigInt q = floor_div(v[c], rows_[r][c]);
      if (q != 0)
        for (std::size_t j = c; j < n_; ++j) v[j] -= q * rows_[r][j];
    }
    return v;
  }

  bool contains(const IntVector& v) const {
    IntVector w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](const BigInt& x) { return x == 0; });
  }

  friend bool operator==(const HermiteBasis&, const HermiteBasis&) = default;

 private:
  // Restore the above-pivot reduction in every pivot column from row r on.
  // Ascending order: subtracting row i only touches columns >= piv_[i].
  void reduce_from(std::size_t r) {
    for (std::size_t i = r; i < rows_.size(); ++i) {
      const std::size_t c = piv_[i];
      for (std::size_t k = 0; k < i; ++k) {
        BigInt q = floor_div(rows_[k][c], rows_[i][c]);
        if (q != 0)
          for (std::size_t j = c; j < n_; ++j) rows_[k][j] -= q * rows_[i][j];
      }
    }
  }

  std::size_t n_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> piv_;
};

inline IntMatrix hermite_normal_form(const IntMatrix& A) {
  HermiteBasis h(A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) h.insert(A.row(i));
  return IntMatrix::from_rows(h.rows(), A.cols());
}

/// Basis of the integer left kernel {x : x A = 0}, via row reduction with a
/// tracked transform.
inline IntMatrix left_kernel(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  // Augment [A | I] and row-reduce on the A-part.
  IntMatrix W(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) W(i, j) = A(i, j);
    W(i, n + i) = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      while (W(i, c) != 0) {
        if (W(r, c) == 0) {
          W.swap_rows(r, i);
          continue;
        }
        auto [g, s, t] = extended_gcd(W(r, c), W(i, c));
        BigInt rc = W(r, c) / g, ic = W(i, c) / g;
        W.combine_rows(r, i, s, t, -ic, rc);
      }
    }
    if (W(r, c) != 0) ++r;
  }
  IntMatrix K(m - r, m);
  for (std::size_t i = r; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) K(i - r, j) = W(i, n + j);
  return K;
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// A sublattice of Z^n, stored in Hermite normal form.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient) : basis_(ambient) {}
  Lattice(std::size_t ambient, const std::vector<IntVector>& generators) : basis_(ambient) {
    for (const auto& g : generators) basis_.insert(g);
  }
  static Lattice full(std::size_t n) {
    Lattice l(n);
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n);
      e[i] = 1;
      l.add(std::move(e));
    }
    return l;
  }
  static Lattice zero(std::size_t n) { return Lattice(n); }

  void add(IntVector v) { basis_.insert(std::move(v)); }

  std::size_t ambient_rank() const { return basis_.ambient_rank(); }
  std::size_t rank() const { return basis_.rank(); }
  const std::vector<IntVector>& generators() const { return basis_.rows(); }
  IntMatrix matrix() const { return IntMatrix::from_rows(basis_.rows(), ambient_rank()); }
  bool contains(const IntVector& v) const { return basis_.contains(v); }
  IntVector reduce(const IntVector& v) const { return basis_.reduce(v); }

  bool contains(const Lattice& other) const {
    return std::all_of(other.generators().begin(), other.generators().end(),
                       [&](const IntVector& g) { return contains(g); });
  }

  /// Index [Z^n : L]; zero when L is not of full rank.
  BigInt index() const {
    if (rank() != ambient_rank()) return 0;
    BigInt d = 1;
    for (std::size_t i = 0; i < rank(); ++i) d *= basis_.rows()[i][basis_.pivots()[i]];
    return d;
  }

  Lattice operator+(const Lattice& other) const {
    if (other.ambient_rank() != ambient_rank()) throw std::invalid_argument("Lattice: ambient mismatch");
    Lattice s = *this;
    for (const auto& g : other.generators()) s.add(g);
    return s;
  }

  /// Integer coefficients c with v = Σ c_i g_i over the HNF generators, or
  /// nullopt when v is not in the lattice.
  std::optional<IntVector> express(IntVector v) const {
    const auto& rows = basis_.rows();
    const auto& piv = basis_.pivots();
    IntVector c(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::size_t col = piv[r];
      if (v[col] % rows[r][col] != 0) return std::nullopt;
      c[r] = v[col] / rows[r][col];
      if (c[r] != 0)
        for (std::size_t j = col; j < v.size(); ++j) v[j] -= c[r] * rows[r][j];
    }
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return c;
  }

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  HermiteBasis basis_;
};

/// {x ∈ Z^m : x·A ≡ 0 (mod modulus)} for an m×d matrix A.
inline Lattice kernel_mod(const IntMatrix& A, const BigInt& modulus) {
  const std::size_t m = A.rows(), d = A.cols();
  if (d == 0) return Lattice::full(m);
  IntMatrix stacked(m + d, d);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) stacked(i, j) = A(i, j);
  for (std::size_t j = 0; j < d; ++j) stacked(m + j, j) = modulus;
  const IntMatrix K = left_kernel(stacked);
  Lattice out(m);
  for (std::size_t r = 0; r < K.rows(); ++r) {
    IntVector x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = K(r, i);
    out.add(std::move(x));
  }
  return out;
}

/// Structure constants of a commutative ring that is free of finite rank:
/// product(i, j) is the coordinate vector of e_i * e_j.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), table_(n * n, IntVector(n)) {}
  std::size_t rank() const { return n_; }
  IntVector& product(std::size_t i, std::size_t j) { return table_[i * n_ + j]; }
  const IntVector& product(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

  IntVector multiply(const IntVector& a, const IntVector& b) const {
    IntVector c(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (b[j] == 0) continue;
        BigInt f = a[i] * b[j];
        const IntVector& e = product(i, j);
        for (std::size_t k = 0; k < n_; ++k)
          if (e[k] != 0) c[k] += f * e[k];
      }
    }
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<IntVector> table_;
};

/// The lattice spanned by all pairwise products of generators.
inline Lattice lattice_product(const Lattice& a, const Lattice& b, const StructureConstants& mult) {
  if (a.ambient_rank() != b.ambient_rank() || a.ambient_rank() != mult.rank())
    throw std::invalid_argument("lattice_product: ambient mismatch");
  Lattice out(a.ambient_rank());
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) out.add(mult.multiply(x, y));
  return out;
}

// ---------------------------------------------------------------------------
// Finitely presented abelian groups
// ---------------------------------------------------------------------------

/// A finitely generated abelian group ⊕ Z/d_i in invariant-factor form
/// (d_i >= 2, or d_i = 0 for a free summand), together with the change of
/// basis from the generators of the presentation it was computed from.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// Abstract group ⊕ Z/d_i with the identity presentation. Factors equal
  /// to 1 are dropped; the chain condition is not required here.
  explicit FinAbGroup(const IntVector& factors) {
    for (const auto& d : factors) {
      if (d < 0) throw std::invalid_argument("FinAbGroup: negative factor");
      if (d != 1) factors_.push_back(d);
    }
    const std::size_t r = factors_.size();
    to_coords_ = IntMatrix(factors.size(), r);
    lift_ = IntMatrix(r, factors.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < factors.size(); ++i)
      if (factors[i] != 1) {
        to_coords_(i, k) = 1;
        lift_(k, i) = 1;
        ++k;
      }
  }

  /// Z^n / (row span of relations).
  static FinAbGroup cokernel(const IntMatrix& relations, std::size_t ambient) {
    if (relations.rows() > 0 && relations.cols() != ambient)
      throw std::invalid_argument("cokernel: relation width differs from ambient rank");
    FinAbGroup g;
    if (relations.rows() == 0 || ambient == 0) {
      g = FinAbGroup(IntVector(ambient, BigInt(0)));
      return g;
    }
    SmithForm s = smith_normal_form(relations);
    IntVector diag(ambient, BigInt(0));
    for (std::size_t i = 0; i < s.rank; ++i) diag[i] = s.D(i, i);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ambient; ++i)
      if (diag[i] != 1) kept.push_back(i);
    g.factors_.clear();
    g.to_coords_ = IntMatrix(ambient, kept.size());
    g.lift_ = IntMatrix(kept.size(), ambient);
    for (std::size_t k = 0; k < kept.size(); ++k) {
      g.factors_.push_back(diag[kept[k]]);
      for (std::size_t i = 0; i < ambient; ++i) {
        g.to_coords_(i, k) = s.V(i, kept[k]);
        g.lift_(k, i) = s.V_inverse(kept[k], i);
      }
    }
    return g;
  }

  const IntVector& invariant_factors() const { return factors_; }
  std::size_t generator_count() const { return factors_.size(); }
  std::size_t ambient_rank() const { return to_coords_.rows(); }
  const IntMatrix& basis_change() const { return to_coords_; }
  const IntMatrix& lift_matrix() const { return lift_; }

  bool is_finite() const {
    return std::none_of(factors_.begin(), factors_.end(), [](const BigInt& d) { return d == 0; });
  }
  /// Group order; zero encodes an infinite group.
  BigInt order() const {
    BigInt o = 1;
    for (const auto& d : factors_) o *= d;
    return o;
  }

  /// Normal-form coordinates of an element given in ambient coordinates.
  IntVector reduce(const IntVector& ambient_vector) const {
    IntVector y = row_times(ambient_vector, to_coords_);
    return normalize(std::move(y));
  }
  IntVector normalize(IntVector y) const {
    for (std::size_t i = 0; i < y.size(); ++i)
      if (factors_[i] != 0) y[i] = mod_floor(y[i], factors_[i]);
    return y;
  }
  /// An ambient representative of a normal-form element.
  IntVector lift(const IntVector& coords) const { return row_times(coords, lift_); }

  bool operator==(const FinAbGroup& o) const { return factors_ == o.factors_; }

 private:
  IntVector factors_;
  IntMatrix to_coords_;  // ambient -> normal-form coordinates
  IntMatrix lift_;       // normal-form generators in ambient coordinates
};

/// True when the factor list satisfies d_1 | d_2 | ... (0 divisible by all).
inline bool has_divisibility_chain(const IntVector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == 0) {
      if (d[i + 1] != 0) return false;
      continue;
    }
    if (d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Endomorphisms of finite abelian groups
// ---------------------------------------------------------------------------

/// An endomorphism of ⊕ Z/d_i, as the matrix whose column j is the image of
/// the j-th generator. Entries are kept reduced mod d_i.
class GroupEndomorphism {
 public:
  GroupEndomorphism(IntVector factors, IntMatrix matrix) : factors_(std::move(factors)), m_(std::move(matrix)) {
    const std::size_t r = factors_.size();
    if (m_.rows() != r || m_.cols() != r) throw std::invalid_argument("GroupEndomorphism: shape mismatch");
    for (const auto& d : factors_)
      if (d < 2) throw std::invalid_argument("GroupEndomorphism: factors must be finite and nontrivial");
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        m_(i, j) = mod_floor(m_(i, j), factors_[i]);
        if ((factors_[j] * m_(i, j)) % factors_[i] != 0)
          throw std::invalid_argument("GroupEndomorphism: matrix does not respect the relations");
      }
  }

  static GroupEndomorphism zero(const IntVector& factors) {
    return GroupEndomorphism(factors, IntMatrix(factors.size(), factors.size()));
  }
  static GroupEndomorphism identity(const IntVector& factors) {
    return GroupEndomorphism(factors, IntMatrix::identity(factors.size()));
  }

  const IntVector& factors() const { return factors_; }
  const IntMatrix& matrix() const { return m_; }
  std::size_t size() const { return factors_.size(); }

  IntVector apply(const IntVector& x) const {
    IntVector y = matrix_times(m_, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod_floor(y[i], factors_[i]);
    return y;
  }

  GroupEndomorphism operator+(const GroupEndomorphism& o) const { return {factors_, m_ + o.m_}; }
  GroupEndomorphism operator-(const GroupEndomorphism& o) const { return {factors_, m_ - o.m_}; }
  /// Composition: (*this) ∘ o.
  GroupEndomorphism operator*(const GroupEndomorphism& o) const { return {factors_, m_ * o.m_}; }
  GroupEndomorphism scaled(const BigInt& s) const { return {factors_, s * m_}; }

  bool is_zero() const { return m_.is_zero(); }
  bool operator==(const GroupEndomorphism& o) const { return factors_ == o.factors_ && m_ == o.m_; }

 private:
  IntVector factors_;
  IntMatrix m_;
};

/// Solve a*x ≡ b (mod m), m >= 1; returns the least nonnegative solution.
inline std::optional<BigInt> solve_congruence(const BigInt& a, const BigInt& b, const BigInt& m) {
  auto [g, s, t] = extended_gcd(mod_floor(a, m), m);
  (void)t;
  if (g == 0) return mod_floor(b, m) == 0 ? std::optional<BigInt>(BigInt(0)) : std::nullopt;
  if (mod_floor(b, g) != 0) return std::nullopt;
  BigInt mg = m / g;
  return mod_floor(s * (b / g), mg);
}

/// Finds h with p·h = f as endomorphisms, if one exists.
///
/// Over an invariant-factor presentation the conditions decouple per matrix
/// entry: h_ij ∈ Z/d_i must satisfy d_j·h_ij ≡ 0 and p·h_ij ≡ f_ij (mod d_i).
/// The first condition restricts h_ij to multiples of d_i / gcd(d_i, d_j).
inline std::optional<GroupEndomorphism> hom_divisible_by_p(const GroupEndomorphism& f, const BigInt& p) {
  const auto& d = f.factors();
  const std::size_t r = d.size();
  IntMatrix h(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      BigInt step = d[i] / gcd(d[i], d[j]);
      auto t = solve_congruence(p * step, f.matrix()(i, j), d[i]);
      if (!t) return std::nullopt;
      h(i, j) = *t * step;
    }
  return GroupEndomorphism(d, h);
}

}  // namespace wittcd
