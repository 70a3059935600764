#include "cosieve/polyff.hpp"

#include <stdexcept>

namespace cosieve {

Poly poly_norm(const Field& F, Poly p) {
  for (auto& c : p) c = F.reduce(c);
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    fp x = i < a.size() ? a[i] : 0;
    fp y = i < b.size() ? b[i] : 0;
    r[i] = F.add(x, y);
  }
  return poly_norm(F, std::move(r));
}

Poly poly_sub(const Field& F, const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    fp x = i < a.size() ? a[i] : 0;
    fp y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  return poly_norm(F, std::move(r));
}

Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return poly_norm(F, std::move(r));
}

std::pair<Poly, Poly> poly_divmod(const Field& F, Poly a, const Poly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  a = poly_norm(F, std::move(a));
  if (a.size() < b.size()) return {{}, a};
  fp inv_lead = F.inv(b.back());
  Poly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    size_t d = a.size() - b.size();
    fp c = F.mul(a.back(), inv_lead);
    q[d] = c;
    for (size_t i = 0; i < b.size(); ++i)
      a[d + i] = F.sub(a[d + i], F.mul(c, b[i]));
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (a.empty()) break;
  }
  return {poly_norm(F, std::move(q)), a};
}

Poly poly_gcd(const Field& F, Poly a, Poly b) {
  a = poly_norm(F, std::move(a));
  b = poly_norm(F, std::move(b));
  while (!b.empty()) {
    Poly r = poly_divmod(F, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, std::move(a));
}

Poly poly_deriv(const Field& F, const Poly& a) {
  Poly r;
  for (size_t i = 1; i < a.size(); ++i) r.push_back(F.mul(F.reduce(i), a[i]));
  return poly_norm(F, std::move(r));
}

fp poly_eval(const Field& F, const Poly& a, fp x) {
  fp r = 0;
  for (size_t i = a.size(); i-- > 0;) r = F.add(F.mul(r, x), a[i]);
  return r;
}

Poly poly_monic(const Field& F, Poly a) {
  a = poly_norm(F, std::move(a));
  if (a.empty() || a.back() == 1) return a;
  fp inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

Poly poly_powmod(const Field& F, Poly base, int64_t e, const Poly& mod) {
  Poly r{1};
  base = poly_divmod(F, std::move(base), mod).second;
  while (e) {
    if (e & 1) r = poly_divmod(F, poly_mul(F, r, base), mod).second;
    base = poly_divmod(F, poly_mul(F, base, base), mod).second;
    e >>= 1;
  }
  return r;
}

FactorizationType factorization_type(const Field& F, const Poly& f) {
  if (poly_deg(f) < 0) throw std::domain_error("factorization of zero polynomial");
  Poly g = poly_monic(F, f);
  FactorizationType out;
  Poly rad = poly_gcd(F, g, poly_deriv(F, g));
  out.squarefree = poly_deg(rad) == 0;
  Poly fr = out.squarefree ? g : poly_divmod(F, g, rad).first;
  // distinct-degree splitting on the squarefree part
  for (int d = 1; poly_deg(fr) > 0; ++d) {
    if (2 * d > poly_deg(fr)) {
      out.degree_multiset[poly_deg(fr)] += 1;
      break;
    }
    int64_t e = 1;
    for (int i = 0; i < d; ++i) e *= F.modulus();
    Poly xp = poly_powmod(F, Poly{0, 1}, e, fr);
    Poly sub = poly_sub(F, xp, Poly{0, 1});  // x^{l^d} - x
    Poly gd = poly_gcd(F, fr, sub);
    if (poly_deg(gd) > 0) {
      out.degree_multiset[d] += poly_deg(gd) / d;
      fr = poly_divmod(F, fr, gd).first;
    }
  }
  return out;
}

bool is_irreducible(const Field& F, const Poly& f) {
  int n = poly_deg(f);
  if (n < 1) throw std::domain_error("irreducibility of constant polynomial");
  FactorizationType t = factorization_type(F, f);
  return t.squarefree && t.degree_multiset == std::map<int, int>{{n, 1}};
}

bool is_self_reciprocal(const Field& F, const Poly& f, fp bn) {
  int N = poly_deg(f);
  if (N < 0) return false;
  if (f[0] != 1) return false;
  if (F.mul(bn, bn) != 1 || f[N] != F.reduce(bn)) return false;
  for (int i = 0; i <= N / 2; ++i)
    if (f[N - i] != F.mul(F.reduce(bn), f[i])) return false;
  return true;
}

Poly meyn_transform(const Field& F, const Poly& f) {
  int N = poly_deg(f);
  if (N < 2 || N % 2 != 0 || !is_self_reciprocal(F, f, 1))
    throw std::invalid_argument("meyn transform needs a monic self-reciprocal polynomial of even degree");
  int half = N / 2;
  Poly rem = f;
  rem.resize(N + 1, 0);
  Poly h(half + 1, 0);
  // peel off c * x^{half-k} (x^2+1)^k from the top coefficient down
  for (int k = half; k >= 0; --k) {
    fp c = rem[half + k];
    h[k] = c;
    if (c == 0) continue;
    Poly term(half - k, 0);
    term.push_back(1);
    Poly x2p1{1, 0, 1};
    for (int i = 0; i < k; ++i) term = poly_mul(F, term, x2p1);
    for (size_t i = 0; i < term.size(); ++i)
      rem[i] = F.sub(rem[i], F.mul(c, term[i]));
  }
  for (fp c : rem)
    if (c != 0) throw std::logic_error("meyn transform: nonzero remainder");
  return poly_norm(F, std::move(h));
}

std::optional<bool> meyn_predict_irreducible(const Field& F, const Poly& f) {
  Poly h = meyn_transform(F, f);
  if (!is_irreducible(F, h)) return std::nullopt;
  fp v = F.mul(poly_eval(F, h, 2), poly_eval(F, h, F.reduce(-2)));
  return F.legendre(v) == SquareClass::NonSquare;
}

Poly reduce_charpoly(const Field& F, const Poly& f, int det_g) {
  int N = poly_deg(f);
  if (N % 2 == 1) {
    Poly div{F.reduce(-det_g), 1};  // T - det_g
    auto [q, r] = poly_divmod(F, f, div);
    if (!r.empty()) throw std::invalid_argument("(T - det) does not divide charpoly");
    return q;
  }
  if (det_g == -1) {
    Poly div{F.reduce(-1), 0, 1};  // T^2 - 1
    auto [q, r] = poly_divmod(F, f, div);
    if (!r.empty()) throw std::invalid_argument("(T^2 - 1) does not divide charpoly");
    return q;
  }
  return f;
}

fp poly_resultant(const Field& F, Poly a, Poly b) {
  a = poly_norm(F, std::move(a));
  b = poly_norm(F, std::move(b));
  if (a.empty() || b.empty()) return 0;
  fp res = 1;
  while (true) {
    int da = poly_deg(a), db = poly_deg(b);
    if (db == 0) return F.mul(res, F.pow(b[0], da));
    Poly r = poly_divmod(F, a, b).second;
    if (r.empty()) return 0;
    int dr = poly_deg(r);
    fp sign = ((static_cast<int64_t>(da) * db) % 2 == 1) ? F.reduce(-1) : 1;
    res = F.mul(res, F.mul(sign, F.pow(b.back(), da - dr)));
    a = std::move(b);
    b = std::move(r);
  }
}

fp poly_discriminant(const Field& F, const Poly& f) {
  int n = poly_deg(f);
  if (n < 2) throw std::domain_error("discriminant needs degree >= 2");
  Poly fd = poly_deriv(F, f);
  fp r = poly_resultant(F, f, fd);
  fp sign = ((static_cast<int64_t>(n) * (n - 1) / 2) % 2 == 1) ? F.reduce(-1) : 1;
  return F.mul(F.mul(sign, r), F.inv(f.back()));
}

SquareClass disc_class_orth_signed(const Field& F, const Poly& f, int sign) {
  int N = poly_deg(f);
  if (N % 2 != 0) throw std::invalid_argument("even degree required");
  fp d = poly_discriminant(F, f);
  if (sign == 1 && (N / 2) % 2 == 1) d = F.neg(d);
  return F.legendre(d);
}

void for_each_self_reciprocal(const Field& F, int N, fp bn,
                              const std::function<void(const Poly&)>& fn) {
  if (N % 2 != 0 || N < 2) throw std::invalid_argument("even degree required");
  int half = N / 2;
  Poly f(N + 1, 0);
  f[0] = 1;
  f[N] = F.reduce(bn);
  std::vector<fp> b(half, 0);
  while (true) {
    for (int i = 1; i <= half; ++i) {
      f[i] = b[i - 1];
      if (i < half) f[N - i] = F.mul(F.reduce(bn), b[i - 1]);
    }
    // middle coefficient must satisfy b_{N/2} = bn*b_{N/2}; for bn = -1 that
    // forces b_{N/2} = 0
    if (F.reduce(bn) == 1 || f[half] == 0) fn(f);
    int i = 0;
    for (; i < half; ++i) {
      if (++b[i] < F.modulus()) break;
      b[i] = 0;
    }
    if (i == half) break;
  }
}

}  // namespace cosieve
