#include "cosieve/galois.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cosieve {

namespace {

bool is_prime_int(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<mpz_class> to_integer_primitive(const PolyQ& f) {
  mpz_class lcm_den = 1;
  for (const auto& c : f) {
    mpz_class d = c.get_den();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
    lcm_den = lcm_den / g * d;
  }
  std::vector<mpz_class> out;
  for (const auto& c : f) out.push_back(mpz_class(c * lcm_den));
  while (!out.empty() && out.back() == 0) out.pop_back();
  if (out.empty()) return out;
  mpz_class content = 0;
  for (const auto& c : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (out.back() < 0) content = -content;
  for (auto& c : out) c /= content;
  return out;
}

// reduction mod l; nullopt when l divides the leading coefficient
std::optional<Poly> reduce_int_poly(const std::vector<mpz_class>& f, const Field& F) {
  if (f.empty()) return std::nullopt;
  mpz_class lz(static_cast<long>(F.modulus()));
  if (f.back() % lz == 0) return std::nullopt;
  Poly out;
  for (const auto& c : f) out.push_back(F.reduce(mpz_class(c % lz).get_si()));
  return poly_norm(F, std::move(out));
}

mpz_class eval_int(const std::vector<mpz_class>& f, const mpz_class& x) {
  mpz_class r = 0;
  for (size_t i = f.size(); i-- > 0;) r = r * x + f[i];
  return r;
}

// all divisors of |v| with both signs; empty when |v| is too large to factor
// cheaply or the count explodes
std::vector<mpz_class> signed_divisors(const mpz_class& v, size_t cap) {
  std::vector<mpz_class> out;
  mpz_class a = abs(v);
  if (a == 0 || a > mpz_class("1000000000000")) return out;
  std::vector<std::pair<mpz_class, int>> fac;
  mpz_class p = 2;
  mpz_class rest = a;
  while (p * p <= rest) {
    if (rest % p == 0) {
      int e = 0;
      while (rest % p == 0) { rest /= p; ++e; }
      fac.emplace_back(p, e);
    }
    p += 1;
  }
  if (rest > 1) fac.emplace_back(rest, 1);
  out.push_back(1);
  for (auto& [q, e] : fac) {
    size_t sz = out.size();
    mpz_class qe = 1;
    for (int i = 1; i <= e; ++i) {
      qe *= q;
      for (size_t j = 0; j < sz; ++j) {
        out.push_back(out[j] * qe);
        if (out.size() > cap) return {};
      }
    }
  }
  size_t sz = out.size();
  for (size_t j = 0; j < sz; ++j) out.push_back(-out[j]);
  return out;
}

// exact division of monic integral f by monic integral g; nullopt if g does
// not divide f over Z
std::optional<std::vector<mpz_class>> divide_exact(const std::vector<mpz_class>& f,
                                                   const std::vector<mpz_class>& g) {
  std::vector<mpz_class> rem = f;
  int dg = static_cast<int>(g.size()) - 1;
  int dq = static_cast<int>(rem.size()) - 1 - dg;
  if (dq < 0) return std::nullopt;
  std::vector<mpz_class> q(dq + 1);
  for (int s = dq; s >= 0; --s) {
    mpz_class c = rem[s + dg];
    q[s] = c;
    for (int i = 0; i <= dg; ++i) rem[s + i] -= c * g[i];
  }
  for (const auto& c : rem)
    if (c != 0) return std::nullopt;
  return q;
}

// search for a monic integral factor of degree d: any such factor g satisfies
// g(p) | f(p) at every integer p, so interpolate g through divisor tuples at
// d sample points. Complete unless a value is too large to factor or the
// tuple count exceeds the cap (reported via *capped).
std::optional<std::vector<mpz_class>> find_monic_factor(
    const std::vector<mpz_class>& f, int d, size_t cap, bool* capped) {
  std::vector<mpz_class> points;
  for (int i = 0; static_cast<int>(points.size()) < d; ++i) {
    mpz_class p = (i % 2 == 0) ? mpz_class(i / 2 + (i > 0 ? 1 : 0)) : mpz_class(-(i / 2 + 1));
    points.push_back(p);
  }
  std::vector<std::vector<mpz_class>> divs;
  size_t combos = 1;
  for (const auto& p : points) {
    mpz_class v = eval_int(f, p);
    if (v == 0) return std::vector<mpz_class>{-p, 1};  // linear factor
    auto dv = signed_divisors(v, cap);
    if (dv.empty()) { *capped = true; return std::nullopt; }
    combos *= dv.size();
    if (combos > cap) { *capped = true; return std::nullopt; }
    divs.push_back(std::move(dv));
  }
  std::vector<size_t> idx(points.size(), 0);
  while (true) {
    // Lagrange interpolation of (p_j, e_j - p_j^d), then add T^d
    std::vector<mpq_class> r(d, 0);
    for (int j = 0; j < d; ++j) {
      mpz_class pd = 1;
      for (int i = 0; i < d; ++i) pd *= points[j];
      mpq_class y = mpq_class(divs[j][idx[j]] - pd);
      std::vector<mpq_class> basis{1};
      mpq_class denom = 1;
      for (int i = 0; i < d; ++i) {
        if (i == j) continue;
        std::vector<mpq_class> nb(basis.size() + 1, 0);
        for (size_t t = 0; t < basis.size(); ++t) {
          nb[t] += basis[t] * mpq_class(-points[i]);
          nb[t + 1] += basis[t];
        }
        basis = std::move(nb);
        denom *= mpq_class(points[j] - points[i]);
      }
      for (size_t t = 0; t < basis.size(); ++t) r[t] += y * basis[t] / denom;
    }
    bool integral = true;
    std::vector<mpz_class> g(d + 1);
    for (int t = 0; t < d; ++t) {
      if (r[t].get_den() != 1) { integral = false; break; }
      g[t] = r[t].get_num();
    }
    if (integral) {
      g[d] = 1;
      if (divide_exact(f, g)) return g;
    }
    int j = 0;
    for (; j < d; ++j) {
      if (++idx[j] < divs[j].size()) break;
      idx[j] = 0;
    }
    if (j == d) break;
  }
  return std::nullopt;
}

// nullopt when a coefficient is too large to factor (search incomplete)
std::optional<bool> has_rational_root(const std::vector<mpz_class>& f) {
  // rational root p/q: p | f_0, q | f_n
  if (f.size() < 2) return false;
  if (f[0] == 0) return true;
  auto ps = signed_divisors(f[0], 1 << 20);
  auto qs = signed_divisors(f.back(), 1 << 20);
  if (ps.empty() || qs.empty()) return std::nullopt;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      if (q <= 0) continue;  // signs covered by p
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), mpz_class(abs(p)).get_mpz_t(), q.get_mpz_t());
      if (g != 1) continue;
      // q^n f(p/q), evaluated exactly
      mpz_class acc = 0, pn = 1;
      std::vector<mpz_class> qpow(f.size());
      qpow[f.size() - 1] = 1;
      for (size_t i = f.size() - 1; i-- > 0;) qpow[i] = qpow[i + 1] * q;
      for (size_t i = 0; i < f.size(); ++i) {
        acc += f[i] * pn * qpow[i];
        pn *= p;
      }
      if (acc == 0) return true;
    }
  return false;
}

std::set<int> subset_sums(const std::map<int, int>& type, int n) {
  std::vector<char> reach(n + 1, 0);
  reach[0] = 1;
  for (auto [d, c] : type)
    for (int rep = 0; rep < c; ++rep)
      for (int s = n - d; s >= 0; --s)
        if (reach[s]) reach[s + d] = 1;
  std::set<int> out;
  for (int s = 0; s <= n; ++s)
    if (reach[s]) out.insert(s);
  return out;
}

std::string type_str(const std::map<int, int>& type) {
  std::string s = "{";
  for (auto [d, c] : type) {
    if (s.size() > 1) s += ",";
    s += std::to_string(d) + ":" + std::to_string(c);
  }
  return s + "}";
}

char class_char(SquareClass c) {
  return c == SquareClass::Square ? '+' : (c == SquareClass::NonSquare ? '-' : '0');
}

}  // namespace

QFactorStatus q_reducibility(const PolyQ& f, int64_t prime_budget) {
  std::vector<mpz_class> g = to_integer_primitive(f);
  int n = static_cast<int>(g.size()) - 1;
  if (n <= 1) return QFactorStatus::Irreducible;
  std::optional<bool> root = has_rational_root(g);
  if (root == true) return QFactorStatus::Reducible;
  bool root_search_complete = root.has_value();
  if (n <= 3 && root_search_complete) return QFactorStatus::Irreducible;

  // certification: intersect achievable factor-degree subset sums over
  // squarefree reductions
  std::set<int> achievable;
  for (int s = 0; s <= n; ++s) achievable.insert(s);
  for (int64_t l = 3; l <= prime_budget; l += 2) {
    if (!Field::is_prime(l)) continue;
    Field F(l);
    auto fr = reduce_int_poly(g, F);
    if (!fr || poly_deg(*fr) != n) continue;
    FactorizationType t = factorization_type(F, *fr);
    if (!t.squarefree) continue;
    std::set<int> sums = subset_sums(t.degree_multiset, n);
    std::set<int> inter;
    std::set_intersection(achievable.begin(), achievable.end(), sums.begin(),
                          sums.end(), std::inserter(inter, inter.begin()));
    achievable = std::move(inter);
    if (achievable == std::set<int>{0, n}) return QFactorStatus::Irreducible;
  }

  // exact factor search over the degrees the reductions left possible
  bool monic = g.back() == 1;
  bool capped = false;
  if (monic) {
    for (int d = 2; 2 * d <= n; ++d) {
      if (!achievable.count(d)) continue;
      if (find_monic_factor(g, d, 200000, &capped)) return QFactorStatus::Reducible;
    }
    bool linear_possible = achievable.count(1) || achievable.count(n - 1);
    if (!capped && (root_search_complete || !linear_possible))
      return QFactorStatus::Irreducible;
  }
  return QFactorStatus::Undetermined;
}

std::vector<int64_t> GaloisVerdict::witnesses() const {
  std::vector<int64_t> out;
  for (const auto& c : criteria)
    if (c.witness) out.push_back(c.witness);
  return out;
}

GaloisVerdict certify_max_galois(const PolyQ& f, GaloisKind kind,
                                 int64_t prime_budget) {
  if (f.empty() || f.back() != 1) throw std::invalid_argument("monic polynomial required");
  int n = static_cast<int>(f.size()) - 1;
  if (n < 2) throw std::invalid_argument("degree >= 2 required");
  if (kind == GaloisKind::WN) {
    if (n % 2 != 0) throw std::invalid_argument("even degree required for the signed-permutation kind");
    for (int i = 0; i <= n; ++i)
      if (f[i] != f[n - i]) throw std::invalid_argument("self-reciprocal polynomial required");
    if (f[0] != 1) throw std::invalid_argument("self-reciprocal polynomial required");
  }
  std::vector<mpz_class> g = to_integer_primitive(f);
  bool rational_monic = !g.empty() && g.back() == 1 &&
                        static_cast<int>(g.size()) - 1 == n;

  GaloisVerdict v;
  if (kind == GaloisKind::Sn)
    v.criteria = {{"irreducible", 0, ""},
                  {"one_two_rest_odd_distinct", 0, ""},
                  {"large_prime_part", 0, ""}};
  else
    v.criteria = {{"irreducible", 0, ""},
                  {"quadratic_times_odd", 0, ""},
                  {"transform_large_prime_factor", 0, ""},
                  {"transform_one_quadratic", 0, ""}};

  std::vector<std::map<int, int>> witnessed_types;
  for (int64_t l = 3; l <= prime_budget && rational_monic; l += 2) {
    if (!Field::is_prime(l)) continue;
    bool all_done = true;
    for (const auto& c : v.criteria) all_done = all_done && c.witness;
    if (all_done) break;
    Field F(l);
    auto fr = reduce_int_poly(g, F);
    if (!fr || poly_deg(*fr) != n) continue;
    FactorizationType t = factorization_type(F, *fr);
    if (!t.squarefree) continue;
    const auto& ty = t.degree_multiset;

    std::string sides;
    {
      fp fm1 = poly_eval(F, *fr, F.reduce(-1));
      sides = std::string(" f(-1)=") + class_char(F.legendre(fm1));
      if (n % 2 == 0)
        sides += std::string(" disc=") + class_char(disc_class_orth(F, *fr));
    }

    auto mark = [&](size_t i) {
      if (v.criteria[i].witness) return;
      v.criteria[i].witness = l;
      v.criteria[i].detail = type_str(ty) + sides;
      witnessed_types.push_back(ty);
    };

    if (kind == GaloisKind::Sn) {
      if (ty == std::map<int, int>{{n, 1}}) mark(0);
      bool one_two = ty.count(2) && ty.at(2) == 1;
      bool rest_odd_distinct = true;
      for (auto [d, c] : ty)
        if (d != 2 && (d % 2 == 0 || c > 1)) rest_odd_distinct = false;
      if (one_two && rest_odd_distinct) mark(1);
      for (auto [d, c] : ty)
        if (is_prime_int(d) && 2 * d > n) mark(2);
    } else {
      if (ty == std::map<int, int>{{n, 1}}) mark(0);
      {
        bool one_two = ty.count(2) && ty.at(2) == 1;
        bool rest_odd = true;
        for (auto [d, c] : ty)
          if (d != 2 && d % 2 == 0) rest_odd = false;
        if (one_two && rest_odd) mark(1);
      }
      if (is_self_reciprocal(F, *fr, 1)) {
        Poly h = meyn_transform(F, *fr);
        FactorizationType ht = factorization_type(F, h);
        if (ht.squarefree) {
          for (auto [d, c] : ht.degree_multiset)
            if (is_prime_int(d) && 4 * d > n) mark(2);
          bool one_two = ht.degree_multiset.count(2) && ht.degree_multiset.at(2) == 1;
          bool rest_odd = true;
          for (auto [d, c] : ht.degree_multiset)
            if (d != 2 && d % 2 == 0) rest_odd = false;
          if (one_two && rest_odd) mark(3);
        }
      }
    }
  }

  bool all = true;
  for (const auto& c : v.criteria) all = all && c.witness != 0;
  if (all) {
    // soundness: the witnessed types must force irreducibility over Q
    std::set<int> achievable;
    for (int s = 0; s <= n; ++s) achievable.insert(s);
    for (const auto& ty : witnessed_types) {
      std::set<int> sums = subset_sums(ty, n);
      std::set<int> inter;
      std::set_intersection(achievable.begin(), achievable.end(), sums.begin(),
                            sums.end(), std::inserter(inter, inter.begin()));
      achievable = std::move(inter);
    }
    v.certified = (achievable == std::set<int>{0, n});
  }
  return v;
}

}  // namespace cosieve
