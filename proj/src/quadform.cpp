#include "cosieve/quadform.hpp"

#include <stdexcept>

namespace cosieve {

MatF mat_mul(const Field& F, const MatF& A, const MatF& B) {
  MatF R(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      fp aik = A(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < A.n; ++j)
        R(i, j) = F.add(R(i, j), F.mul(aik, B(k, j)));
    }
  return R;
}

MatF mat_transpose(const MatF& A) {
  MatF R(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) R(j, i) = A(i, j);
  return R;
}

fp mat_det(const Field& F, MatF A) {
  fp d = 1;
  for (int c = 0; c < A.n; ++c) {
    int piv = -1;
    for (int r = c; r < A.n; ++r)
      if (A(r, c) != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < A.n; ++j) std::swap(A(c, j), A(piv, j));
      d = F.neg(d);
    }
    d = F.mul(d, A(c, c));
    fp inv = F.inv(A(c, c));
    for (int r = c + 1; r < A.n; ++r) {
      fp f = F.mul(A(r, c), inv);
      if (f == 0) continue;
      for (int j = c; j < A.n; ++j) A(r, j) = F.sub(A(r, j), F.mul(f, A(c, j)));
    }
  }
  return d;
}

std::vector<fp> mat_vec(const Field& F, const MatF& A, const std::vector<fp>& x) {
  std::vector<fp> r(A.n, 0);
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) r[i] = F.add(r[i], F.mul(A(i, j), x[j]));
  return r;
}

std::vector<std::vector<fp>> mat_nullspace(const Field& F, MatF A) {
  int n = A.n;
  std::vector<int> pivots;
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (A(r, c) != 0) { piv = r; break; }
    if (piv < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(A(rank, j), A(piv, j));
    fp inv = F.inv(A(rank, c));
    for (int j = 0; j < n; ++j) A(rank, j) = F.mul(A(rank, j), inv);
    for (int r = 0; r < n; ++r) {
      if (r == rank || A(r, c) == 0) continue;
      fp f = A(r, c);
      for (int j = 0; j < n; ++j) A(r, j) = F.sub(A(r, j), F.mul(f, A(rank, j)));
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::vector<fp>> basis;
  for (int c = 0; c < n; ++c) {
    bool is_pivot = false;
    for (int p : pivots)
      if (p == c) { is_pivot = true; break; }
    if (is_pivot) continue;
    std::vector<fp> v(n, 0);
    v[c] = 1;
    for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = F.neg(A(i, c));
    basis.push_back(std::move(v));
  }
  return basis;
}

QuadSpace::QuadSpace(Field field, MatF g) : F(field), gram(std::move(g)) {
  for (int i = 0; i < gram.n; ++i)
    for (int j = 0; j < gram.n; ++j) {
      gram(i, j) = F.reduce(gram(i, j));
      if (gram(i, j) != gram(j, i) && j < i)
        throw std::invalid_argument("gram matrix must be symmetric");
    }
  if (mat_det(F, gram) == 0)
    throw std::invalid_argument("gram matrix must be non-degenerate");
}

fp QuadSpace::phi(const std::vector<fp>& x, const std::vector<fp>& y) const {
  fp s = 0;
  for (int i = 0; i < gram.n; ++i) {
    if (x[i] == 0) continue;
    fp row = 0;
    for (int j = 0; j < gram.n; ++j) row = F.add(row, F.mul(gram(i, j), y[j]));
    s = F.add(s, F.mul(x[i], row));
  }
  return s;
}

bool QuadSpace::is_orthogonal(const MatF& g) const {
  return mat_mul(F, mat_mul(F, mat_transpose(g), gram), g) == gram;
}

SplitClass QuadSpace::classify() const {
  if (gram.n % 2 == 1) return SplitClass::OddDim;
  int half = gram.n / 2;
  fp d = mat_det(F, gram);
  fp sign = (half % 2 == 1) ? F.reduce(-1) : 1;
  return F.legendre(F.mul(sign, d)) == SquareClass::Square ? SplitClass::Split
                                                           : SplitClass::NonSplit;
}

QuadSpace QuadSpace::hyperbolic(const Field& F, int half_rank) {
  MatF g(2 * half_rank);
  for (int i = 0; i < half_rank; ++i) {
    g(i, half_rank + i) = 1;
    g(half_rank + i, i) = 1;
  }
  return QuadSpace(F, g);
}

QuadSpace QuadSpace::nonsplit(const Field& F, int half_rank) {
  MatF g(2 * half_rank);
  for (int i = 1; i < half_rank; ++i) {
    g(i, half_rank + i) = 1;
    g(half_rank + i, i) = 1;
  }
  g(0, 0) = 1;
  g(half_rank, half_rank) = F.reduce(-F.nonsquare());
  return QuadSpace(F, g);
}

QuadSpace QuadSpace::diagonal(const Field& F, const std::vector<fp>& d) {
  MatF g(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = F.reduce(d[i]);
  return QuadSpace(F, g);
}

MatF reflection(const QuadSpace& V, const std::vector<fp>& v) {
  const Field& F = V.F;
  fp qv = V.q(v);
  if (qv == 0) throw std::invalid_argument("reflection vector must be non-isotropic");
  fp qinv = F.inv(qv);
  int n = V.dim();
  MatF R = MatF::identity(n);
  // column j of R is r_v(e_j) = e_j - 2 Phi(e_j, v)/Q(v) v
  for (int j = 0; j < n; ++j) {
    std::vector<fp> e(n, 0);
    e[j] = 1;
    fp c = F.mul(F.mul(2, V.phi(e, v)), qinv);
    for (int i = 0; i < n; ++i) R(i, j) = F.sub(R(i, j), F.mul(c, v[i]));
  }
  return R;
}

namespace {

// solve B x = b for B with full column rank (columns are basis vectors)
std::vector<fp> solve_full_rank(const Field& F, std::vector<std::vector<fp>> cols,
                                std::vector<fp> b) {
  int rows = static_cast<int>(b.size());
  int m = static_cast<int>(cols.size());
  // augmented elimination
  std::vector<std::vector<fp>> A(rows, std::vector<fp>(m + 1, 0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < m; ++j) A[i][j] = cols[j][i];
    A[i][m] = b[i];
  }
  std::vector<int> pivots;
  int rank = 0;
  for (int c = 0; c < m && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (A[r][c] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(A[rank], A[piv]);
    fp inv = F.inv(A[rank][c]);
    for (int j = 0; j <= m; ++j) A[rank][j] = F.mul(A[rank][j], inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || A[r][c] == 0) continue;
      fp f = A[r][c];
      for (int j = 0; j <= m; ++j) A[r][j] = F.sub(A[r][j], F.mul(f, A[rank][j]));
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<fp> x(m, 0);
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = A[i][m];
  return x;
}

void cd_rec(const QuadSpace& V, const MatF& h, int depth,
            std::vector<std::vector<fp>>& out) {
  const Field& F = V.F;
  int n = V.dim();
  if (depth > 4 * n + 8) throw std::logic_error("reflection decomposition did not terminate");
  if (h == MatF::identity(n)) return;
  MatF hmI = h;
  for (int i = 0; i < n; ++i) hmI(i, i) = F.sub(hmI(i, i), 1);

  // case 1: non-isotropic fixed vector -> recurse on its orthogonal
  // complement. Searching the kernel basis and pairwise sums is complete: if
  // all those have Q = 0, polarization makes the fixed space totally
  // isotropic.
  auto ker = mat_nullspace(F, hmI);
  std::vector<fp> fixed;
  for (const auto& v : ker)
    if (V.q(v) != 0) { fixed = v; break; }
  if (fixed.empty()) {
    for (size_t i = 0; i < ker.size() && fixed.empty(); ++i)
      for (size_t j = i + 1; j < ker.size(); ++j) {
        std::vector<fp> v(n);
        for (int k = 0; k < n; ++k) v[k] = F.add(ker[i][k], ker[j][k]);
        if (V.q(v) != 0) { fixed = v; break; }
      }
  }
  if (!fixed.empty()) {
    // basis of fixed^perp
    MatF row(n);
    for (int j = 0; j < n; ++j) {
      fp s = 0;
      for (int i = 0; i < n; ++i) s = F.add(s, F.mul(fixed[i], V.gram(i, j)));
      row(0, j) = s;
    }
    auto B = mat_nullspace(F, row);
    int m = static_cast<int>(B.size());
    MatF subgram(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) subgram(a, b) = V.phi(B[a], B[b]);
    QuadSpace W(F, subgram);
    MatF hw(m);
    for (int a = 0; a < m; ++a) {
      auto img = mat_vec(F, h, B[a]);
      auto x = solve_full_rank(F, B, img);  // h preserves fixed^perp
      for (int b = 0; b < m; ++b) hw(b, a) = x[b];
    }
    size_t before = out.size();
    cd_rec(W, hw, depth + 1, out);
    for (size_t k = before; k < out.size(); ++k) {
      std::vector<fp> lifted(n, 0);
      for (int b = 0; b < m; ++b)
        for (int i = 0; i < n; ++i)
          lifted[i] = F.add(lifted[i], F.mul(out[k][b], B[b][i]));
      out[k] = std::move(lifted);
    }
    return;
  }

  // case 2: non-isotropic x with Q((h-1)x) != 0; then r_v h fixes x and the
  // next step reduces the dimension. Isotropic x only as a fallback.
  int64_t l = F.modulus();
  std::vector<fp> x(n, 0), iso_v;
  auto advance = [&]() {
    for (int i = 0; i < n; ++i) {
      if (++x[i] < l) return true;
      x[i] = 0;
    }
    return false;
  };
  std::vector<fp> nonisotropic_w;
  while (advance()) {
    std::vector<fp> v = mat_vec(F, hmI, x);
    bool nz = false;
    for (fp c : v) nz |= (c != 0);
    fp qx = V.q(x);
    if (qx != 0 && nonisotropic_w.empty()) nonisotropic_w = x;
    if (!nz || V.q(v) == 0) continue;
    if (qx != 0) {
      out.push_back(v);
      cd_rec(V, mat_mul(F, reflection(V, v), h), depth + 1, out);
      return;
    }
    if (iso_v.empty()) iso_v = v;
  }
  if (!iso_v.empty()) {
    out.push_back(iso_v);
    cd_rec(V, mat_mul(F, reflection(V, iso_v), h), depth + 1, out);
    return;
  }
  // case 3: (h-1)V totally isotropic (forces det h = 1); compose with any
  // reflection -- the result has det -1 and cannot be exceptional again.
  if (nonisotropic_w.empty()) throw std::logic_error("no non-isotropic vector");
  out.push_back(nonisotropic_w);
  cd_rec(V, mat_mul(F, reflection(V, nonisotropic_w), h), depth + 1, out);
}

}  // namespace

std::vector<std::vector<fp>> cartan_dieudonne(const QuadSpace& V, const MatF& g) {
  std::vector<std::vector<fp>> out;
  cd_rec(V, g, 0, out);
  return out;
}

std::optional<SquareClass> zassenhaus_spinor(const QuadSpace& V, const MatF& g) {
  const Field& F = V.F;
  MatF M = g;
  for (int i = 0; i < g.n; ++i) M(i, i) = F.add(M(i, i), 1);
  fp d = mat_det(F, M);
  if (d == 0) return std::nullopt;
  fp half = F.inv(2);
  return F.legendre(F.mul(d, F.pow(half, g.n)));
}

SquareClass spinor_norm(const QuadSpace& V, const MatF& g) {
  if (auto z = zassenhaus_spinor(V, g)) return *z;
  const Field& F = V.F;
  int n = V.dim();
  // multiply by a reflection so -1 is no longer an eigenvalue, then divide out
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      std::vector<fp> w(n, 0);
      w[i] = 1;
      if (j != i) w[j] = 1;
      fp qw = V.q(w);
      if (qw == 0) continue;
      MatF gr = mat_mul(F, g, reflection(V, w));
      if (auto z = zassenhaus_spinor(V, gr)) return *z * F.legendre(qw);
    }
  SquareClass s = SquareClass::Square;
  for (const auto& v : cartan_dieudonne(V, g)) s = s * V.F.legendre(V.q(v));
  return s;
}

CosetLabel coset_label(const QuadSpace& V, const MatF& g) {
  CosetLabel lab;
  lab.det = mat_det(V.F, g) == 1 ? 1 : -1;
  lab.spinor = spinor_norm(V, g);
  return lab;
}

Poly charpoly(const Field& F, const MatF& g) {
  // Berkowitz: division-free, coefficients from highest degree down
  int n = g.n;
  std::vector<fp> c{1};
  for (int r = 1; r <= n; ++r) {
    // principal r x r block; t[k] per the Toeplitz recurrence
    std::vector<fp> t(r + 1, 0);
    t[0] = 1;
    t[1] = F.neg(g(r - 1, r - 1));
    std::vector<fp> p(r - 1);  // p = M'^k C
    for (int i = 0; i < r - 1; ++i) p[i] = g(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      fp dot = 0;
      for (int i = 0; i < r - 1; ++i) dot = F.add(dot, F.mul(g(r - 1, i), p[i]));
      t[k] = F.neg(dot);
      if (k < r) {
        std::vector<fp> np(r - 1, 0);
        for (int i = 0; i < r - 1; ++i)
          for (int j = 0; j < r - 1; ++j)
            np[i] = F.add(np[i], F.mul(g(i, j), p[j]));
        p = std::move(np);
      }
    }
    std::vector<fp> nc(r + 1, 0);
    for (int i = 0; i <= r; ++i)
      for (size_t j = 0; j < c.size() && j <= static_cast<size_t>(i); ++j)
        nc[i] = F.add(nc[i], F.mul(t[i - j], c[j]));
    c = std::move(nc);
  }
  Poly p(c.rbegin(), c.rend());  // ascending
  return p;
}

Poly charpoly_rev(const Field& F, const MatF& g) {
  Poly p = charpoly(F, g);
  Poly r(p.rbegin(), p.rend());
  return poly_norm(F, std::move(r));
}

}  // namespace cosieve
