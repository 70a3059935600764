#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cosieve/ff.hpp"

using namespace cosieve;

TEST_CASE("field rejects bad moduli") {
  CHECK_THROWS(Field(4));
  CHECK_THROWS(Field(2));
  CHECK_THROWS(Field(9));
  CHECK_THROWS(Field(1));
  CHECK_NOTHROW(Field(3));
  CHECK_NOTHROW(Field(101));
}

TEST_CASE("arithmetic identities exhaustively over small primes") {
  for (int64_t l : {3, 5, 7, 11}) {
    Field F(l);
    for (fp a = 0; a < l; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
      for (fp b = 0; b < l; ++b) {
        CHECK(F.add(a, b) == F.reduce(a + b));
        CHECK(F.sub(a, b) == F.reduce(a - b));
        CHECK(F.mul(a, b) == F.reduce(a * b));
      }
    }
  }
}

TEST_CASE("legendre is multiplicative and counts (l-1)/2 squares") {
  for (int64_t l : {3, 5, 7, 11, 13}) {
    Field F(l);
    int squares = 0;
    for (fp a = 1; a < l; ++a) {
      if (F.legendre(a) == SquareClass::Square) ++squares;
      for (fp b = 1; b < l; ++b)
        CHECK(F.legendre(F.mul(a, b)) == F.legendre(a) * F.legendre(b));
    }
    CHECK(squares == (l - 1) / 2);
    CHECK(F.legendre(0) == SquareClass::Zero);
  }
}

TEST_CASE("sqrt_if_square agrees with legendre") {
  Field F(13);
  for (fp a = 0; a < 13; ++a) {
    auto r = F.sqrt_if_square(a);
    if (F.legendre(a) == SquareClass::NonSquare) {
      CHECK(!r);
    } else {
      REQUIRE(r);
      CHECK(F.mul(*r, *r) == a);
    }
  }
}

TEST_CASE("nonsquare really is one") {
  for (int64_t l : {3, 5, 7, 11, 13, 17}) {
    Field F(l);
    CHECK(F.legendre(F.nonsquare()) == SquareClass::NonSquare);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  Field F(11);
  for (fp a = 1; a < 11; ++a) {
    fp acc = 1;
    for (int e = 0; e < 15; ++e) {
      CHECK(F.pow(a, e) == acc);
      acc = F.mul(acc, a);
    }
    CHECK(F.pow(a, 10) == 1);  // Fermat
  }
}
