#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "cosieve/polyff.hpp"

using namespace cosieve;

namespace {

// all monic polynomials of the given degree
void for_each_monic(const Field& F, int deg, const std::function<void(const Poly&)>& fn) {
  Poly p(deg + 1, 0);
  p[deg] = 1;
  while (true) {
    fn(p);
    int i = 0;
    for (; i < deg; ++i) {
      if (++p[i] < F.modulus()) break;
      p[i] = 0;
    }
    if (i == deg) break;
  }
}

// count of monic irreducibles of degree n over F_l: (1/n) sum_{d|n} mu(d) l^{n/d}
int64_t necklace(int64_t l, int n) {
  auto mu = [](int d) {
    int m = 1;
    for (int p = 2; p * p <= d; ++p)
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        m = -m;
      }
    if (d > 1) m = -m;
    return m;
  };
  int64_t s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    int64_t pw = 1;
    for (int i = 0; i < n / d; ++i) pw *= l;
    s += mu(d) * pw;
  }
  return s / n;
}

}  // namespace

TEST_CASE("divmod is exact division with remainder") {
  Field F(7);
  for_each_monic(F, 4, [&](const Poly& a) {
    Poly b{3, 1, 1};  // x^2 + x + 3
    auto [q, r] = poly_divmod(F, a, b);
    CHECK(poly_deg(r) < poly_deg(b));
    CHECK(poly_add(F, poly_mul(F, q, b), r) == poly_norm(F, a));
  });
}

TEST_CASE("gcd divides both inputs and is monic") {
  Field F(5);
  Poly a = poly_mul(F, Poly{1, 1}, Poly{2, 0, 1});
  Poly b = poly_mul(F, Poly{1, 1}, Poly{3, 1});
  Poly g = poly_gcd(F, a, b);
  CHECK(g == Poly{1, 1});
  CHECK(poly_divmod(F, a, g).second.empty());
  CHECK(poly_divmod(F, b, g).second.empty());
}

TEST_CASE("factorization type against brute-force factor search") {
  for (int64_t l : {3, 5}) {
    Field F(l);
    // collect irreducibles of degree 1..2 by definition, then verify the
    // distinct-degree output on every monic quartic by exhaustive division
    std::vector<Poly> irred;
    for (int d = 1; d <= 4; ++d)
      for_each_monic(F, d, [&](const Poly& p) {
        bool divisible = false;
        for (const Poly& q : irred)
          if (poly_deg(q) <= d / 2 && poly_divmod(F, p, q).second.empty())
            divisible = true;
        if (!divisible) irred.push_back(p);
      });
    for_each_monic(F, 4, [&](const Poly& p) {
      std::map<int, int> expect;
      bool squarefree = true;
      Poly rest = p;
      for (const Poly& q : irred) {
        int mult = 0;
        while (poly_divmod(F, rest, q).second.empty()) {
          rest = poly_divmod(F, rest, q).first;
          ++mult;
        }
        if (mult > 1) squarefree = false;
        if (mult > 0) expect[poly_deg(q)] += 1;  // distinct factors only
      }
      FactorizationType t = factorization_type(F, p);
      CHECK(t.squarefree == squarefree);
      if (squarefree) CHECK(t.degree_multiset == expect);
    });
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  for (int64_t l : {3, 5, 7}) {
    Field F(l);
    for (int n : {1, 2, 3, 4}) {
      int64_t count = 0;
      for_each_monic(F, n, [&](const Poly& p) {
        if (is_irreducible(F, p)) ++count;
      });
      CHECK(count == necklace(l, n));
    }
  }
}

TEST_CASE("self-reciprocal enumeration has the right cardinality and shape") {
  for (int64_t l : {3, 5}) {
    Field F(l);
    for (int N : {2, 4, 6}) {
      int64_t plus = 0, minus = 0;
      for_each_self_reciprocal(F, N, 1, [&](const Poly& f) {
        CHECK(is_self_reciprocal(F, f, 1));
        ++plus;
      });
      for_each_self_reciprocal(F, N, F.reduce(-1), [&](const Poly& f) {
        CHECK(is_self_reciprocal(F, f, F.reduce(-1)));
        ++minus;
      });
      int64_t lh = 1;
      for (int i = 0; i < N / 2; ++i) lh *= l;
      CHECK(plus == lh);
      CHECK(minus == lh / l);  // middle coefficient forced to zero
    }
  }
}

TEST_CASE("degree-halving transform satisfies f(x) = x^{N/2} h(x + 1/x)") {
  Field F(7);
  for (int N : {2, 4, 6}) {
    for_each_self_reciprocal(F, N, 1, [&](const Poly& f) {
      Poly h = meyn_transform(F, f);
      for (fp x = 1; x < 7; ++x) {
        fp arg = F.add(x, F.inv(x));
        fp lhs = poly_eval(F, f, x);
        fp rhs = F.mul(F.pow(x, N / 2), poly_eval(F, h, arg));
        CHECK(lhs == rhs);
      }
    });
  }
}

TEST_CASE("irreducibility prediction from the transform") {
  for (int64_t l : {3, 5, 7}) {
    Field F(l);
    for (int N : {2, 4, 6}) {
      for_each_self_reciprocal(F, N, 1, [&](const Poly& f) {
        auto pred = meyn_predict_irreducible(F, f);
        if (pred) CHECK(*pred == is_irreducible(F, f));
        // conversely irreducible f forces irreducible transform
        if (is_irreducible(F, f)) CHECK(pred.has_value());
      });
    }
  }
}

TEST_CASE("discriminant of a quadratic") {
  Field F(11);
  for (fp b = 0; b < 11; ++b)
    for (fp c = 0; c < 11; ++c) {
      Poly f{c, b, 1};
      CHECK(poly_discriminant(F, f) == F.reduce(b * b - 4 * c));
    }
}

TEST_CASE("resultant vanishes exactly on common roots") {
  Field F(5);
  for_each_monic(F, 2, [&](const Poly& a) {
    for_each_monic(F, 2, [&](const Poly& b) {
      bool common = poly_deg(poly_gcd(F, a, b)) > 0;
      CHECK((poly_resultant(F, a, b) == 0) == common);
    });
  });
}

TEST_CASE("orthogonal discriminant convention") {
  Field F(7);
  // N/2 odd twists by -1; N/2 even is the standard class
  Poly f{1, 0, 1};  // 1 + T^2, disc = -4
  CHECK(disc_class_orth_signed(F, f, -1) == F.legendre(F.reduce(-4)));
  CHECK(disc_class_orth(F, f) == F.legendre(4));
}

TEST_CASE("forced-factor removal") {
  Field F(5);
  // odd degree: (T - det) divides; the quotient is returned
  Poly f = poly_mul(F, Poly{F.reduce(-1), 1}, Poly{1, 1, 1});  // (T-1)(T^2+T+1)
  CHECK(reduce_charpoly(F, f, 1) == Poly{1, 1, 1});
  // even degree, det = -1: (T^2 - 1) divides
  Poly g = poly_mul(F, Poly{F.reduce(-1), 0, 1}, Poly{2, 1, 1});
  CHECK(reduce_charpoly(F, g, -1) == Poly{2, 1, 1});
  // even degree, det = 1: unchanged
  CHECK(reduce_charpoly(F, g, 1) == poly_norm(F, g));
  CHECK_THROWS(reduce_charpoly(F, Poly{1, 1, 1, 1}, 1));  // no such factor
}
