#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cosieve/arith_groups.hpp"

using namespace cosieve;

TEST_CASE("ring membership") {
  RingA z{{}};
  CHECK(z.contains(mpq_class(5)));
  CHECK(!z.contains(mpq_class(1, 2)));
  RingA half{{2}};
  CHECK(half.contains(mpq_class(3, 8)));
  CHECK(!half.contains(mpq_class(1, 6)));
  RingA sixth{{2, 3}};
  CHECK(sixth.contains(mpq_class(1, 6)));
  CHECK(sixth.contains(mpq_class(7, 12)));
  CHECK(!sixth.contains(mpq_class(1, 5)));
}

TEST_CASE("transvections multiply like the group law") {
  RingA ring{{}};
  GroupElem t1 = transvection(3, 0, 1, 2, ring);
  GroupElem t2 = transvection(3, 0, 1, 3, ring);
  GroupElem p = group_mul(t1, t2);
  CHECK(p.matrix == transvection(3, 0, 1, 5, ring).matrix);
  CHECK(matq_det(t1.matrix) == 1);
  GroupElem inv = transvection(3, 0, 1, -2, ring);
  CHECK(group_mul(t1, inv).matrix == MatQ::identity(3));
  CHECK_THROWS(transvection(3, 1, 1, 1, ring));  // diagonal slot
}

TEST_CASE("isotropic-pair generators preserve the hyperbolic form") {
  RingA ring{{}};
  MatQ gram = hyperbolic_gram_q(2);
  for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 3}, {1, 2}}) {
    GroupElem e = eichler_generator(2, u, v, 1, ring);
    const MatQ& g = e.matrix;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        std::vector<mpq_class> gi(4), gj(4);
        for (int k = 0; k < 4; ++k) {
          gi[k] = g(k, i);
          gj[k] = g(k, j);
        }
        CHECK(phi_q(gram, gi, gj) == gram(i, j));
      }
    CHECK(matq_det(g) == 1);
  }
}

TEST_CASE("coset representatives carry their labels") {
  RingA ring{{2}};  // D must be a unit of the ring
  GroupElem d = coset_rep_sl(3, 2, ring);
  CHECK(matq_det(d.matrix) == 2);
  CHECK(d.det_target == 2);
  GroupElem w = coset_rep_omega(2, true, ring);
  CHECK(matq_det(w.matrix) == 1);
  CHECK(w.spinor_rep == -1);
  GroupElem id = coset_rep_omega(2, false, ring);
  CHECK(id.matrix == MatQ::identity(4));
}

TEST_CASE("reduction mod l is a homomorphism") {
  RingA ring{{2}};
  Field F(7);
  GroupElem a = transvection(3, 0, 2, mpq_class(3, 2), ring);
  GroupElem b = transvection(3, 2, 1, mpq_class(-1, 4), ring);
  MatF ra = reduce_mod(a, F);
  MatF rb = reduce_mod(b, F);
  CHECK(reduce_mod(group_mul(a, b), F) == mat_mul(F, ra, rb));
  // denominator divisible by l is rejected
  Field F2(3);
  GroupElem c = transvection(2, 0, 1, mpq_class(1, 3), RingA{{3}});
  CHECK_THROWS(reduce_mod(c, F2));
}

TEST_CASE("exact charpoly over the rationals") {
  MatQ g(2);
  g(0, 0) = mpq_class(1, 2);
  g(1, 1) = 2;
  auto f = charpoly_q(g);  // (T - 1/2)(T - 2) = T^2 - 5/2 T + 1
  CHECK(f == std::vector<mpq_class>{1, mpq_class(-5, 2), 1});
}

TEST_CASE("reduced charpoly per group kind") {
  RingA ring{{}};
  // special linear: the plain charpoly, no factor removed
  GroupElem t = transvection(3, 0, 1, 1, ring);
  auto f = reduced_charpoly_A(t);
  CHECK(f.size() == 4);
  CHECK(f == std::vector<mpq_class>{-1, 3, -3, 1});  // (T-1)^3
  // orthogonal with det 1 and even dimension: unchanged degree
  GroupElem e = eichler_generator(2, 0, 1, 1, ring);
  CHECK(reduced_charpoly_A(e).size() == 5);
}

TEST_CASE("squarefree part") {
  CHECK(squarefree_part(12) == 3);
  CHECK(squarefree_part(-4) == -1);
  CHECK(squarefree_part(1) == 1);
  CHECK(squarefree_part(30) == 30);
  CHECK(squarefree_part(49) == 1);
}

TEST_CASE("element validation catches bad invariants") {
  RingA ring{{}};
  GroupElem t = transvection(2, 0, 1, 1, ring);
  t.matrix(0, 0) = 2;  // det no longer matches det_target
  CHECK_THROWS(t.validate());
}
