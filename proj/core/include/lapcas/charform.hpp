#pragma once

#include <optional>

#include "lapcas/ratfun.hpp"

namespace lapcas {

struct Vec2R {
  RationalFunction a, b;
};

struct Matrix2R {
  RationalFunction m[2][2];
  friend bool operator==(const Matrix2R& x, const Matrix2R& y) {
    return x.m[0][0] == y.m[0][0] && x.m[0][1] == y.m[0][1] && x.m[1][0] == y.m[1][0] &&
           x.m[1][1] == y.m[1][1];
  }
};

// First-order 2x2 system v_t = A(x) v_x + B(x) v.
struct FirstOrderSystem2 {
  Matrix2R A, B;
};

struct Eigendata {
  RationalFunction lambda1, lambda2;
  Vec2R left1, left2;  // normalized left eigenvectors (first nonzero entry = 1)
};

// Characteristic normal form
//   X_i u_i = sum_k alpha_{ik} u_k,   X_i = s_i (D_t - lambda_i(x) D_x),
// with [X_1, X_2] = P X_1 + Q X_2.  The constant prefactors s_i are 1 for
// systems coming from to_characteristic and only differ after rescale().
struct CharacteristicSystem {
  RationalFunction lambda1, lambda2;
  Matrix2R alpha;
  RationalFunction P, Q;
  Vec2R left1{RationalFunction(1), RationalFunction(0)},
      left2{RationalFunction(0), RationalFunction(1)};
  Rat scale1{1}, scale2{1};

  // X_i applied to a function of x alone: X_i g = -s_i lambda_i g'.
  RationalFunction apply_X1(const RationalFunction& g) const {
    return RationalFunction(-scale1) * lambda1 * g.derivative();
  }
  RationalFunction apply_X2(const RationalFunction& g) const {
    return RationalFunction(-scale2) * lambda2 * g.derivative();
  }
};

// Exact square root of a polynomial in Q[x]; nullopt unless p is a perfect
// square (including the leading coefficient being a rational square).  The
// root is normalized to a positive leading coefficient.
std::optional<UPoly> poly_sqrt(const UPoly& p);

// Eigenvalues/left eigenvectors of A over the rational-function field.
// Throws std::domain_error("not strictly hyperbolic") when the discriminant
// vanishes and std::domain_error("irrational characteristic speeds") when it
// is not a perfect square.
Eigendata eigendata(const Matrix2R& A);

// Commutator coefficients of X_i = D_t - lambda_i(x) D_x:
// [X_1, X_2] = P X_1 + Q X_2 with P = (l2 l1' - l1 l2')/(l1 - l2), Q = -P.
std::pair<RationalFunction, RationalFunction> commutator_coeffs(const RationalFunction& lambda1,
                                                                const RationalFunction& lambda2);

// Diagonalize v_t = A v_x + B v to characteristic form via u_i = l_i . v.
CharacteristicSystem to_characteristic(const FirstOrderSystem2& sys);

// Master equations of the logistic model driven by dichotomous noise, as a
// first-order system in v = (W, W1):
//   W_t  + (p W + q W1)_x = 0
//   W1_t + (p W1 + q W)_x + 2 nu W1 = 0.
FirstOrderSystem2 master_system(const UPoly& p, const UPoly& q, const Rat& nu);

}  // namespace lapcas
