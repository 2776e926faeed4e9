#include "doctest.h"
#include "lapcas/charform.hpp"

#include <random>
#include <stdexcept>

using namespace lapcas;

namespace {

const UPoly X = UPoly::x();

UPoly upoly(std::initializer_list<Rat> c) { return UPoly(c); }

// Dimensionless Verhulst drift/noise polynomials p = x + p2 x^2, q = q2 x^2.
UPoly verhulst_p(const Rat& p2) { return upoly({Rat(0), Rat(1), p2}); }
UPoly verhulst_q(const Rat& q2) { return upoly({Rat(0), Rat(0), q2}); }

}  // namespace

TEST_CASE("poly_sqrt recognizes exact squares") {
  auto r = poly_sqrt((X + UPoly(Rat(1))) * (X + UPoly(Rat(1))));
  REQUIRE(r.has_value());
  CHECK(*r == X + UPoly(Rat(1)));

  const UPoly p = upoly({Rat(3), Rat(2)});               // 2x+3
  const UPoly q = upoly({Rat(1), Rat(0), Rat(1)});       // x^2+1
  auto r2 = poly_sqrt(p * p * q * q);
  REQUIRE(r2.has_value());
  CHECK(*r2 == p * q);

  // constants: perfect rational squares only
  auto r3 = poly_sqrt(UPoly(Rat(9, 4)));
  REQUIRE(r3.has_value());
  CHECK(*r3 == UPoly(Rat(3, 2)));
  CHECK(poly_sqrt(UPoly()).has_value());  // sqrt(0) = 0

  // normalized to positive leading coefficient even from (-(x+1))^2
  auto r4 = poly_sqrt((-X - UPoly(Rat(1))) * (-X - UPoly(Rat(1))));
  REQUIRE(r4.has_value());
  CHECK(*r4 == X + UPoly(Rat(1)));
}

TEST_CASE("poly_sqrt rejects non-squares") {
  CHECK_FALSE(poly_sqrt(X).has_value());                           // odd degree
  CHECK_FALSE(poly_sqrt(Rat(2) * X * X).has_value());              // lead not square
  CHECK_FALSE(poly_sqrt(X * X + UPoly(Rat(1))).has_value());       // irreducible
  CHECK_FALSE(poly_sqrt(-X * X).has_value());                      // negative lead
  CHECK_FALSE(poly_sqrt(X * X * (X * X + UPoly(Rat(1)))).has_value());
}

TEST_CASE("poly_sqrt randomized roundtrip") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> coeff(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rat> c(4);
    for (auto& r : c) r = Rat(coeff(rng));
    UPoly s(std::move(c));
    if (s.is_zero()) s = X;
    auto root = poly_sqrt(s * s);
    REQUIRE(root.has_value());
    CHECK(*root * *root == s * s);
  }
}

TEST_CASE("eigendata on a constant diagonal matrix") {
  Matrix2R A;
  A.m[0][0] = RationalFunction(1);
  A.m[0][1] = RationalFunction(0);
  A.m[1][0] = RationalFunction(0);
  A.m[1][1] = RationalFunction(2);
  const Eigendata e = eigendata(A);
  CHECK(e.lambda1 == RationalFunction(1));
  CHECK(e.lambda2 == RationalFunction(2));
  CHECK(e.left1.a == RationalFunction(1));
  CHECK(e.left1.b == RationalFunction(0));
  CHECK(e.left2.a == RationalFunction(0));
  CHECK(e.left2.b == RationalFunction(1));
}

TEST_CASE("eigendata on the Verhulst advection matrix") {
  const RationalFunction p{verhulst_p(Rat(-2))}, q{verhulst_q(Rat(1, 2))};
  Matrix2R A;
  A.m[0][0] = -p;
  A.m[0][1] = -q;
  A.m[1][0] = -q;
  A.m[1][1] = -p;
  const Eigendata e = eigendata(A);
  CHECK(e.lambda1 == -p + q);
  CHECK(e.lambda2 == -(p + q));
  // left vectors: (1, -1) pairs with -p+q, (1, 1) with -(p+q)
  CHECK(e.left1.a == RationalFunction(1));
  CHECK(e.left1.b == RationalFunction(-1));
  CHECK(e.left2.a == RationalFunction(1));
  CHECK(e.left2.b == RationalFunction(1));
  // genuine left eigenvectors: l A = lambda l
  CHECK(e.left1.a * A.m[0][0] + e.left1.b * A.m[1][0] == e.lambda1 * e.left1.a);
  CHECK(e.left1.a * A.m[0][1] + e.left1.b * A.m[1][1] == e.lambda1 * e.left1.b);
  CHECK(e.left2.a * A.m[0][0] + e.left2.b * A.m[1][0] == e.lambda2 * e.left2.a);
  CHECK(e.left2.a * A.m[0][1] + e.left2.b * A.m[1][1] == e.lambda2 * e.left2.b);
}

TEST_CASE("eigendata failure modes") {
  Matrix2R A;  // repeated eigenvalue (identity)
  A.m[0][0] = RationalFunction(1);
  A.m[0][1] = RationalFunction(0);
  A.m[1][0] = RationalFunction(0);
  A.m[1][1] = RationalFunction(1);
  CHECK_THROWS_WITH_AS(eigendata(A), "not strictly hyperbolic", std::domain_error);

  Matrix2R B;  // eigenvalues +-sqrt(2): discriminant 8 not a rational square
  B.m[0][0] = RationalFunction(0);
  B.m[0][1] = RationalFunction(2);
  B.m[1][0] = RationalFunction(1);
  B.m[1][1] = RationalFunction(0);
  CHECK_THROWS_WITH_AS(eigendata(B), "irrational characteristic speeds", std::domain_error);
}

TEST_CASE("commutator coefficients") {
  // Verhulst speeds: P = -1, Q = +1 (constants)
  const RationalFunction p{verhulst_p(Rat(-2))}, q{verhulst_q(Rat(1, 2))};
  auto [P, Q] = commutator_coeffs(-p + q, -(p + q));
  CHECK(P == RationalFunction(-1));
  CHECK(Q == RationalFunction(1));

  // constant speeds commute
  auto [P0, Q0] = commutator_coeffs(RationalFunction(1), RationalFunction(2));
  CHECK(P0.is_zero());
  CHECK(Q0.is_zero());

  // defining identity [X1,X2] = P X1 + Q X2 on x-functions:
  // X1 X2 g - X2 X1 g = (l1 l2' - l2 l1') g' must equal -(P l1 + Q l2) g'.
  const RationalFunction l1 = RationalFunction::x();
  const RationalFunction l2 = RationalFunction::x() * RationalFunction::x() + RationalFunction(1);
  auto [P1, Q1] = commutator_coeffs(l1, l2);
  CHECK(l1 * l2.derivative() - l2 * l1.derivative() == -(P1 * l1 + Q1 * l2));
  CHECK(P1 + Q1 == RationalFunction(0));
}

TEST_CASE("master system matrices") {
  const UPoly p = verhulst_p(Rat(-2)), q = verhulst_q(Rat(1, 2));
  const Rat nu(1);
  const FirstOrderSystem2 sys = master_system(p, q, nu);
  CHECK(sys.A.m[0][0] == RationalFunction(-p));
  CHECK(sys.A.m[0][1] == RationalFunction(-q));
  CHECK(sys.A.m[1][0] == RationalFunction(-q));
  CHECK(sys.A.m[1][1] == RationalFunction(-p));
  CHECK(sys.B.m[0][0] == RationalFunction(-p.derivative()));
  CHECK(sys.B.m[0][1] == RationalFunction(-q.derivative()));
  CHECK(sys.B.m[1][0] == RationalFunction(-q.derivative()));
  CHECK(sys.B.m[1][1] == RationalFunction(-(p.derivative() + UPoly(Rat(2) * nu))));
}

TEST_CASE("to_characteristic of the master system") {
  const UPoly p = verhulst_p(Rat(-2)), q = verhulst_q(Rat(1, 2));
  const Rat nu(3);
  const CharacteristicSystem cs = to_characteristic(master_system(p, q, nu));
  const RationalFunction rp{p}, rq{q}, rnu{nu};

  CHECK(cs.lambda1 == -rp + rq);
  CHECK(cs.lambda2 == -(rp + rq));
  CHECK(cs.scale1 == Rat(1));
  CHECK(cs.scale2 == Rat(1));
  CHECK(cs.P == RationalFunction(-1));
  CHECK(cs.Q == RationalFunction(1));

  const RationalFunction dp{p.derivative()}, dq{q.derivative()};
  CHECK(cs.alpha.m[0][0] == -(dp - dq + rnu));
  CHECK(cs.alpha.m[0][1] == rnu);
  CHECK(cs.alpha.m[1][0] == rnu);
  CHECK(cs.alpha.m[1][1] == -(dp + dq + rnu));

  // u1 = W - W1, u2 = W + W1
  CHECK(cs.left1.a == RationalFunction(1));
  CHECK(cs.left1.b == RationalFunction(-1));
  CHECK(cs.left2.a == RationalFunction(1));
  CHECK(cs.left2.b == RationalFunction(1));
}

TEST_CASE("to_characteristic handles generic lower-triangular systems") {
  // A = [[1, 0], [x, 2]]: eigenvalues 1, 2 with non-trivial eigenvectors.
  Matrix2R A, B;
  A.m[0][0] = RationalFunction(1);
  A.m[0][1] = RationalFunction(0);
  A.m[1][0] = RationalFunction::x();
  A.m[1][1] = RationalFunction(2);
  B.m[0][0] = RationalFunction(1);
  B.m[0][1] = RationalFunction::x();
  B.m[1][0] = RationalFunction(0);
  B.m[1][1] = RationalFunction(-1);
  const CharacteristicSystem cs = to_characteristic({A, B});
  CHECK(cs.lambda1 == RationalFunction(1));
  CHECK(cs.lambda2 == RationalFunction(2));

  // Verify the defining relation row by row:  for u_i = l_i . v with
  // v_t = A v_x + B v, the alpha row must satisfy (in matrix form)
  //   l_i B - lambda_i l_i' = sum_k alpha_ik l_k   (as functions of x).
  auto check_row = [&](const Vec2R& li, const RationalFunction& lam, int i) {
    const RationalFunction r0 = li.a * B.m[0][0] + li.b * B.m[1][0] - lam * li.a.derivative();
    const RationalFunction r1 = li.a * B.m[0][1] + li.b * B.m[1][1] - lam * li.b.derivative();
    const RationalFunction e0 = cs.alpha.m[i][0] * cs.left1.a + cs.alpha.m[i][1] * cs.left2.a;
    const RationalFunction e1 = cs.alpha.m[i][0] * cs.left1.b + cs.alpha.m[i][1] * cs.left2.b;
    CHECK(r0 == e0);
    CHECK(r1 == e1);
  };
  check_row(cs.left1, cs.lambda1, 0);
  check_row(cs.left2, cs.lambda2, 1);
}
