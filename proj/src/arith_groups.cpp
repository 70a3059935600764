#include "cosieve/arith_groups.hpp"

namespace cosieve {

MatQ matq_mul(const MatQ& A, const MatQ& B) {
  MatQ R(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      const mpq_class& aik = A(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < A.n; ++j) R(i, j) += aik * B(k, j);
    }
  return R;
}

mpq_class matq_det(MatQ A) {
  mpq_class d = 1;
  for (int c = 0; c < A.n; ++c) {
    int piv = -1;
    for (int r = c; r < A.n; ++r)
      if (A(r, c) != 0) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < A.n; ++j) std::swap(A(c, j), A(piv, j));
      d = -d;
    }
    d *= A(c, c);
    for (int r = c + 1; r < A.n; ++r) {
      if (A(r, c) == 0) continue;
      mpq_class f = A(r, c) / A(c, c);
      for (int j = c; j < A.n; ++j) A(r, j) -= f * A(c, j);
    }
  }
  return d;
}

std::vector<mpq_class> charpoly_q(const MatQ& g) {
  int n = g.n;
  std::vector<mpq_class> c{1};
  for (int r = 1; r <= n; ++r) {
    std::vector<mpq_class> t(r + 1, mpq_class(0));
    t[0] = 1;
    t[1] = -g(r - 1, r - 1);
    std::vector<mpq_class> p(r - 1);
    for (int i = 0; i < r - 1; ++i) p[i] = g(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      mpq_class dot = 0;
      for (int i = 0; i < r - 1; ++i) dot += g(r - 1, i) * p[i];
      t[k] = -dot;
      if (k < r) {
        std::vector<mpq_class> np(r - 1, mpq_class(0));
        for (int i = 0; i < r - 1; ++i)
          for (int j = 0; j < r - 1; ++j) np[i] += g(i, j) * p[j];
        p = std::move(np);
      }
    }
    std::vector<mpq_class> nc(r + 1, mpq_class(0));
    for (int i = 0; i <= r; ++i)
      for (size_t j = 0; j < c.size() && j <= static_cast<size_t>(i); ++j)
        nc[i] += t[i - j] * c[j];
    c = std::move(nc);
  }
  return {c.rbegin(), c.rend()};  // ascending
}

bool RingA::contains(const mpq_class& x) const {
  mpz_class den = x.get_den();
  for (auto p : inverted_primes) {
    mpz_class pz(static_cast<long>(p));
    while (den % pz == 0) den /= pz;
  }
  return den == 1;
}

void GroupElem::validate() const {
  for (const auto& e : matrix.a)
    if (!ring.contains(e)) throw std::invalid_argument("entry outside Z[1/P]");
  if (kind == GroupKind::SLCoset) {
    if (matq_det(matrix) != det_target)
      throw std::invalid_argument("determinant does not match coset");
  } else {
    MatQ gram = hyperbolic_gram_q(hyp_rank);
    // g^T gram g == gram
    MatQ gt(matrix.n);
    for (int i = 0; i < matrix.n; ++i)
      for (int j = 0; j < matrix.n; ++j) gt(i, j) = matrix(j, i);
    if (matq_mul(matq_mul(gt, gram), matrix) != gram)
      throw std::invalid_argument("matrix does not preserve the hyperbolic form");
    if (matq_det(matrix) != 1)
      throw std::invalid_argument("determinant must be 1 in the Omega coset");
  }
}

GroupElem transvection(int n, int i, int j, const mpq_class& a, RingA ring) {
  if (i == j) throw std::invalid_argument("transvection needs i != j");
  GroupElem g;
  g.matrix = MatQ::identity(n);
  g.matrix(i, j) = a;
  g.ring = std::move(ring);
  g.kind = GroupKind::SLCoset;
  g.det_target = 1;
  g.validate();
  return g;
}

MatQ hyperbolic_gram_q(int n) {
  MatQ g(2 * n);
  for (int i = 0; i < n; ++i) {
    g(i, n + i) = 1;
    g(n + i, i) = 1;
  }
  return g;
}

mpq_class phi_q(const MatQ& gram, const std::vector<mpq_class>& x,
                const std::vector<mpq_class>& y) {
  mpq_class s = 0;
  for (int i = 0; i < gram.n; ++i)
    for (int j = 0; j < gram.n; ++j) s += x[i] * gram(i, j) * y[j];
  return s;
}

GroupElem eichler_generator(int n, int u_idx, int v_idx, const mpz_class& a, RingA ring) {
  if (n < 2) throw std::invalid_argument("hyperbolic rank >= 2 required");
  int N = 2 * n;
  if (u_idx < 0 || u_idx >= N || v_idx < 0 || v_idx >= N || u_idx == v_idx)
    throw std::invalid_argument("bad isotropic basis indices");
  MatQ gram = hyperbolic_gram_q(n);
  std::vector<mpq_class> u(N, 0), v(N, 0);
  u[u_idx] = 1;
  v[v_idx] = 1;
  if (phi_q(gram, u, v) != 0)
    throw std::invalid_argument("basis vectors must be orthogonal (u = x_i, v = y_i is not allowed)");
  GroupElem g;
  g.matrix = MatQ(N);
  for (int j = 0; j < N; ++j) {
    std::vector<mpq_class> e(N, 0);
    e[j] = 1;
    mpq_class cu = phi_q(gram, e, u), cv = phi_q(gram, e, v);
    for (int i = 0; i < N; ++i)
      g.matrix(i, j) = e[i] + mpq_class(a) * cu * v[i] - mpq_class(a) * cv * u[i];
  }
  g.ring = std::move(ring);
  g.kind = GroupKind::OmegaCoset;
  g.hyp_rank = n;
  g.spinor_rep = 1;  // unipotent: trivial spinor class
  g.validate();
  // unipotence check: (g - 1)^2 = 0 for an Eichler map built from orthogonal
  // isotropic u, v
  MatQ m = g.matrix;
  for (int i = 0; i < N; ++i) m(i, i) -= 1;
  MatQ sq = matq_mul(m, m);
  if (sq != MatQ(N)) throw std::logic_error("Eichler generator is not unipotent");
  return g;
}

GroupElem coset_rep_sl(int n, const mpq_class& D, RingA ring) {
  // unit of A: numerator and denominator both supported on P (or +-1)
  mpz_class num = abs(D.get_num());
  for (auto p : ring.inverted_primes) {
    mpz_class pz(static_cast<long>(p));
    while (num % pz == 0) num /= pz;
  }
  if (num != 1 || D == 0) throw std::invalid_argument("D must be a unit of Z[1/P]");
  GroupElem g;
  g.matrix = MatQ::identity(n);
  g.matrix(0, 0) = D;
  g.ring = std::move(ring);
  g.kind = GroupKind::SLCoset;
  g.det_target = D;
  g.validate();
  return g;
}

GroupElem coset_rep_omega(int n, bool nontrivial_spinor, RingA ring) {
  GroupElem g;
  int N = 2 * n;
  g.matrix = MatQ::identity(N);
  g.kind = GroupKind::OmegaCoset;
  g.hyp_rank = n;
  g.ring = std::move(ring);
  if (nontrivial_spinor) {
    // r_u r_v with u = x_1 + y_1 (Q = 2), v = x_1 - y_1 (Q = -2): negates the
    // first hyperbolic plane; spinor class = squarefree part of -4.
    g.matrix(0, 0) = -1;
    g.matrix(n, n) = -1;
    g.spinor_rep = -1;
  } else {
    g.spinor_rep = 1;
  }
  g.validate();
  return g;
}

GroupElem group_mul(const GroupElem& g, const GroupElem& h) {
  GroupElem r = g;
  r.matrix = matq_mul(g.matrix, h.matrix);
  if (g.kind == GroupKind::SLCoset)
    r.det_target = g.det_target * h.det_target;
  else
    r.spinor_rep = squarefree_part(g.spinor_rep * h.spinor_rep);
  return r;
}

MatF reduce_mod(const GroupElem& g, const Field& F) {
  int64_t l = F.modulus();
  if (g.ring.is_inverted(l)) throw std::invalid_argument("prime is inverted in A");
  if (g.kind == GroupKind::OmegaCoset && mpz_class(g.spinor_rep % l) == 0)
    throw std::invalid_argument("prime divides the spinor representative");
  MatF m(g.matrix.n);
  mpz_class lz(static_cast<long>(l));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      mpz_class num = g.matrix(i, j).get_num() % lz;
      mpz_class den = g.matrix(i, j).get_den() % lz;
      if (den == 0) throw std::invalid_argument("prime divides a denominator");
      fp nv = F.reduce(num.get_si());
      fp dv = F.reduce(den.get_si());
      m(i, j) = F.mul(nv, F.inv(dv));
    }
  return m;
}

std::vector<mpq_class> reduced_charpoly_A(const GroupElem& g) {
  std::vector<mpq_class> f = charpoly_q(g.matrix);
  int N = g.matrix.n;
  mpq_class det = matq_det(g.matrix);
  auto divide_out = [&](const std::vector<mpq_class>& d) {
    // exact synthetic division, ascending coefficients
    std::vector<mpq_class> rem = f;
    int dd = static_cast<int>(d.size()) - 1;
    int nq = static_cast<int>(rem.size()) - 1 - dd;
    std::vector<mpq_class> q(nq + 1, mpq_class(0));
    for (int shift = nq; shift >= 0; --shift) {
      mpq_class c = rem[shift + dd] / d[dd];
      q[shift] = c;
      for (int i = 0; i <= dd; ++i) rem[shift + i] -= c * d[i];
    }
    for (const auto& c : rem)
      if (c != 0) throw std::logic_error("forced factor does not divide the characteristic polynomial");
    return q;
  };
  // The forced-factor removal applies to orthogonal matrices only; in the
  // special linear case the reduced polynomial is the plain charpoly.
  if (g.kind == GroupKind::SLCoset) return f;
  if (N % 2 == 1) return divide_out({-det, 1});
  if (det == -1) return divide_out({-1, 0, 1});
  return f;
}

mpz_class squarefree_part(mpz_class x) {
  if (x == 0) return 0;
  mpz_class sign = x < 0 ? -1 : 1;
  x = abs(x);
  mpz_class out = 1;
  for (mpz_class p = 2; p * p <= x; ++p) {
    int e = 0;
    while (x % p == 0) { x /= p; ++e; }
    if (e % 2 == 1) out *= p;
  }
  return sign * out * x;
}

}  // namespace cosieve
