#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "isovolc/residue.hpp"

namespace isovolc {

// Dense matrix over Z/l^N.  Row-major storage, value semantics.
struct ResidueMatrix {
  ResidueRing ring;
  int rows = 0;
  int cols = 0;
  std::vector<u64> data;

  ResidueMatrix() = default;
  ResidueMatrix(const ResidueRing& r, int m, int n)
      : ring(r), rows(m), cols(n), data(static_cast<size_t>(m) * n, 0) {}

  static ResidueMatrix identity(const ResidueRing& r, int n) {
    ResidueMatrix m(r, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ResidueMatrix from_rows(const ResidueRing& r,
                                 const std::vector<std::vector<long long>>& a) {
    ResidueMatrix m(r, static_cast<int>(a.size()), a.empty() ? 0 : static_cast<int>(a[0].size()));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m(i, j) = r.reduce(a[i][j]);
    return m;
  }

  u64& operator()(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  u64 operator()(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  ResidueInt at(int i, int j) const { return ResidueInt(ring, static_cast<long long>((*this)(i, j))); }

  bool operator==(const ResidueMatrix& o) const {
    return ring == o.ring && rows == o.rows && cols == o.cols && data == o.data;
  }
  bool operator!=(const ResidueMatrix& o) const { return !(*this == o); }

  std::vector<u64> col(int j) const {
    std::vector<u64> c(rows);
    for (int i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ResidueMatrix transpose() const {
    ResidueMatrix t(ring, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  ResidueMatrix operator*(const ResidueMatrix& o) const {
    check(cols == o.rows, "matrix product shape mismatch");
    ResidueMatrix p(ring, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        u64 a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols; ++j)
          p(i, j) = ring.add(p(i, j), ring.mul(a, o(k, j)));
      }
    return p;
  }

  std::vector<u64> apply(const std::vector<u64>& v) const {
    check(static_cast<int>(v.size()) == cols, "matrix apply shape mismatch");
    std::vector<u64> r(rows, 0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] = ring.add(r[i], ring.mul((*this)(i, j), v[j]));
    return r;
  }

  ResidueMatrix operator+(const ResidueMatrix& o) const {
    check(rows == o.rows && cols == o.cols, "matrix sum shape mismatch");
    ResidueMatrix s = *this;
    for (size_t i = 0; i < data.size(); ++i) s.data[i] = ring.add(s.data[i], o.data[i]);
    return s;
  }

  ResidueMatrix operator-(const ResidueMatrix& o) const {
    check(rows == o.rows && cols == o.cols, "matrix diff shape mismatch");
    ResidueMatrix s = *this;
    for (size_t i = 0; i < data.size(); ++i) s.data[i] = ring.sub(s.data[i], o.data[i]);
    return s;
  }

  ResidueMatrix scaled(u64 c) const {
    ResidueMatrix s = *this;
    for (auto& x : s.data) x = ring.mul(x, c);
    return s;
  }

  // Scale every entry by l^k exactly (k may be negative: exact division).
  ResidueMatrix shifted(int k) const {
    ResidueMatrix s = *this;
    if (k >= 0) {
      u64 p = ring.ell_pow(k);
      for (auto& x : s.data) x = ring.mul(x, p);
    } else {
      for (auto& x : s.data) x = ring.div_ell_pow(x, -k);
    }
    return s;
  }

  int min_valuation() const {
    int v = ring.precision;
    for (u64 x : data) v = std::min(v, ring.valuation(x));
    return v;
  }

  bool is_zero() const {
    for (u64 x : data)
      if (x != 0) return false;
    return true;
  }
};

inline ResidueMatrix hconcat(const ResidueMatrix& a, const ResidueMatrix& b) {
  check(a.rows == b.rows && a.ring == b.ring, "hconcat shape mismatch");
  ResidueMatrix m(a.ring, a.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i) {
    for (int j = 0; j < a.cols; ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols; ++j) m(i, a.cols + j) = b(i, j);
  }
  return m;
}

// Determinant by cofactor expansion; matrices here are at most 4x4.
inline u64 det(const ResidueMatrix& m) {
  check(m.rows == m.cols, "det of non-square matrix");
  const ResidueRing& R = m.ring;
  int n = m.rows;
  if (n == 0) return 1 % R.modulus;
  if (n == 1) return m(0, 0);
  if (n == 2) return R.sub(R.mul(m(0, 0), m(1, 1)), R.mul(m(0, 1), m(1, 0)));
  u64 acc = 0;
  bool plus = true;
  for (int j = 0; j < n; ++j) {
    ResidueMatrix sub(R, n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        sub(i - 1, jj++) = m(i, k);
      }
    }
    u64 term = R.mul(m(0, j), det(sub));
    acc = plus ? R.add(acc, term) : R.sub(acc, term);
    plus = !plus;
  }
  return acc;
}

// Adjugate: adj(M) * M = det(M) * I.
inline ResidueMatrix adjugate(const ResidueMatrix& m) {
  check(m.rows == m.cols, "adjugate of non-square matrix");
  const ResidueRing& R = m.ring;
  int n = m.rows;
  ResidueMatrix a(R, n, n);
  if (n == 1) {
    a(0, 0) = 1 % R.modulus;
    return a;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ResidueMatrix sub(R, n - 1, n - 1);
      int ii = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int jj = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          sub(ii, jj++) = m(r, c);
        }
        ++ii;
      }
      u64 cof = det(sub);
      if ((i + j) % 2 == 1) cof = R.neg(cof);
      a(j, i) = cof;
    }
  return a;
}

struct NormalForm {
  ResidueMatrix h;  // column echelon, H = M * U
  ResidueMatrix u;  // invertible column transformation
  // (row, col, pivot valuation) triples in row order
  std::vector<std::array<int, 3>> pivots;
};

// Deterministic column echelon form over Z/l^N.  Pivot choice: rows top to
// bottom, minimal valuation within the row, lowest column index on ties.
// Pivot entries are exact powers of l; entries right of a pivot are zero,
// entries left of it are reduced mod the pivot.  Idempotent, and a function
// of the column span only.
inline NormalForm column_normal_form(const ResidueMatrix& m, bool want_u = true) {
  const ResidueRing& R = m.ring;
  NormalForm nf;
  nf.h = m;
  nf.u = want_u ? ResidueMatrix::identity(R, m.cols) : ResidueMatrix(R, 0, 0);
  ResidueMatrix& H = nf.h;
  ResidueMatrix& U = nf.u;

  auto swap_cols = [&](ResidueMatrix& A, int a, int b) {
    for (int i = 0; i < A.rows; ++i) std::swap(A(i, a), A(i, b));
  };
  auto scale_col = [&](ResidueMatrix& A, int c, u64 s) {
    for (int i = 0; i < A.rows; ++i) A(i, c) = R.mul(A(i, c), s);
  };
  auto addmul_col = [&](ResidueMatrix& A, int dst, int src, u64 s) {
    for (int i = 0; i < A.rows; ++i) A(i, dst) = R.sub(A(i, dst), R.mul(s, A(i, src)));
  };

  int j = 0;
  for (int r = 0; r < H.rows && j < H.cols; ++r) {
    int best = -1, bestv = R.precision;
    for (int c = j; c < H.cols; ++c) {
      int v = R.valuation(H(r, c));
      if (v < bestv) {
        bestv = v;
        best = c;
      }
    }
    if (best < 0 || bestv >= R.precision) continue;  // row has no pivot at this precision
    if (best != j) {
      swap_cols(H, best, j);
      if (want_u) swap_cols(U, best, j);
    }
    // normalize pivot to an exact power of l
    u64 unit = H(r, j) / R.ell_pow(bestv);
    u64 iu = R.inv(unit);
    scale_col(H, j, iu);
    if (want_u) scale_col(U, j, iu);
    u64 piv = R.ell_pow(bestv);
    // eliminate to the right (valuations there are >= bestv)
    for (int c = j + 1; c < H.cols; ++c) {
      if (H(r, c) == 0) continue;
      u64 q = H(r, c) / piv;  // exact: divisibility guaranteed by pivot choice
      check(H(r, c) % piv == 0, "pivot division not exact");
      addmul_col(H, c, j, q);
      if (want_u) addmul_col(U, c, j, q);
    }
    // reduce earlier columns mod the pivot
    for (int c = 0; c < j; ++c) {
      u64 q = H(r, c) / piv;  // integer division: canonical reduction
      if (q == 0) continue;
      addmul_col(H, c, j, q);
      if (want_u) addmul_col(U, c, j, q);
    }
    nf.pivots.push_back({r, j, bestv});
    ++j;
  }
  return nf;
}

inline ResidueMatrix normal_form_basis(const ResidueMatrix& m) {
  return column_normal_form(m, false).h;
}

// Solve H*c = v for H in column normal form; nullopt when v is outside the
// column span at working precision.
inline std::optional<std::vector<u64>> solve_in_lattice(const ResidueMatrix& h,
                                                        const std::vector<u64>& v) {
  const ResidueRing& R = h.ring;
  check(static_cast<int>(v.size()) == h.rows, "solve shape mismatch");
  // coefficient ambiguity mod l^(N-k) must not reach later pivot tests: the
  // two largest pivot valuations may not sum past the precision
  {
    std::vector<int> ks;
    for (int j = 0; j < h.cols; ++j)
      for (int i = 0; i < h.rows; ++i)
        if (h(i, j) != 0) {
          ks.push_back(R.valuation(h(i, j)));
          break;
        }
    std::sort(ks.rbegin(), ks.rend());
    if (ks.size() >= 2 && ks[0] + ks[1] > R.precision - 1)
      throw PrecisionExhausted("lattice pivots too deep for an exact solve");
  }
  std::vector<u64> residual = v;
  std::vector<u64> c(h.cols, 0);
  // recover pivots: within a column everything above the pivot is zero
  int prev_row = -1;
  for (int j = 0; j < h.cols; ++j) {
    int r = -1;
    for (int i = 0; i < h.rows; ++i)
      if (h(i, j) != 0) {
        r = i;
        break;
      }
    if (r < 0) continue;  // zero column
    check(r > prev_row, "matrix is not in column normal form");
    prev_row = r;
    int k = R.valuation(h(r, j));
    if (k > 0 && R.precision - k < 1)
      throw PrecisionExhausted("solve would drop below one remaining digit");
    u64 piv = R.ell_pow(k);
    if (residual[r] % piv != 0) return std::nullopt;
    u64 q = residual[r] / piv;
    c[j] = q;
    for (int i = 0; i < h.rows; ++i) residual[i] = R.sub(residual[i], R.mul(q, h(i, j)));
  }
  for (u64 x : residual)
    if (x != 0) return std::nullopt;
  return c;
}

inline bool lattice_contains(const ResidueMatrix& h, const std::vector<u64>& v) {
  return solve_in_lattice(h, v).has_value();
}

inline bool lattice_contains_lattice(const ResidueMatrix& h, const ResidueMatrix& b) {
  for (int j = 0; j < b.cols; ++j)
    if (!lattice_contains(h, b.col(j))) return false;
  return true;
}

// F_l-basis of the null space of M mod l.  Entries of the result are in
// [0, l); dimension + rank = cols.
inline ResidueMatrix kernel_mod_ell(const ResidueMatrix& m) {
  const ResidueRing& R = m.ring;
  u64 l = R.ell;
  int rows = m.rows, cols = m.cols;
  std::vector<std::vector<u64>> a(rows, std::vector<u64>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m(i, j) % l;

  auto mulp = [&](u64 x, u64 y) { return (x * y) % l; };
  auto invp = [&](u64 x) {
    // l is small; brute scan
    for (u64 y = 1; y < l; ++y)
      if (mulp(x, y) == 1) return y;
    throw AssertionFailure("non-invertible pivot mod l");
  };

  std::vector<int> pivot_col_of_row(rows, -1);
  std::vector<int> pivot_row_of_col(cols, -1);
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[pr], a[r]);
    u64 iv = invp(a[r][c]);
    for (int j = 0; j < cols; ++j) a[r][j] = mulp(a[r][j], iv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      u64 f = a[i][c];
      for (int j = 0; j < cols; ++j) a[i][j] = (a[i][j] + (l - mulp(f, a[r][j]))) % l;
    }
    pivot_col_of_row[r] = c;
    pivot_row_of_col[c] = r;
    ++r;
  }
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (pivot_row_of_col[c] < 0) free_cols.push_back(c);

  ResidueMatrix k(R, cols, static_cast<int>(free_cols.size()));
  for (size_t t = 0; t < free_cols.size(); ++t) {
    int fc = free_cols[t];
    k(fc, static_cast<int>(t)) = 1;
    for (int i = 0; i < r; ++i) {
      int pc = pivot_col_of_row[i];
      u64 coeff = a[i][fc];
      if (coeff != 0) k(pc, static_cast<int>(t)) = (l - coeff) % l;
    }
  }
  return k;
}

// Basis (column normal form) of { x in Z^n : A x = 0 mod l^d }, computed by
// lifting the mod-l kernel digit by digit.
inline ResidueMatrix solution_lattice_mod(const ResidueMatrix& a, int d) {
  const ResidueRing& R = a.ring;
  int n = a.cols;
  if (d > R.precision - 2)
    throw PrecisionExhausted("solution lattice modulus too close to working precision");
  ResidueMatrix b = ResidueMatrix::identity(R, n);
  for (int i = 0; i < d; ++i) {
    ResidueMatrix ab = a * b;
    ResidueMatrix q = ab.shifted(-i);  // exact by the loop invariant
    ResidueMatrix k = kernel_mod_ell(q);
    ResidueMatrix next = hconcat(b * k, b.shifted(1));
    ResidueMatrix h = normal_form_basis(next);
    ResidueMatrix trimmed(R, n, n);
    for (int r2 = 0; r2 < n; ++r2)
      for (int c2 = 0; c2 < n; ++c2) trimmed(r2, c2) = h(r2, c2);
    for (int c2 = n; c2 < h.cols; ++c2)
      for (int r2 = 0; r2 < n; ++r2) check(h(r2, c2) == 0, "solution lattice lost full rank");
    b = trimmed;
  }
  return b;
}

// v(det B) - v(det A) for lattices B <= A given by square bases.
inline int lattice_index_valuation(const ResidueMatrix& a, const ResidueMatrix& b) {
  return a.ring.valuation(det(b)) - a.ring.valuation(det(a));
}

}  // namespace isovolc
