#include "lapcas/charform.hpp"

namespace lapcas {

std::optional<UPoly> poly_sqrt(const UPoly& p) {
  if (p.is_zero()) return UPoly();
  int d = p.degree();
  if (d % 2 != 0) return std::nullopt;
  const int m = d / 2;
  Rat lead_root;
  if (!rat_sqrt(p.lead(), lead_root)) return std::nullopt;
  std::vector<Rat> s(m + 1, Rat(0));
  s[m] = lead_root;  // > 0, so the root comes out with positive leading coeff
  const Rat two_lead = Rat(2) * lead_root;
  for (int j = m - 1; j >= 0; --j) {
    // Coefficient of x^(m+j) in s^2 is 2 s_m s_j plus ordered pairs with both
    // indices strictly between j and m, all already determined.
    Rat acc(0);
    for (int i = j + 1; i <= m - 1; ++i) acc += s[i] * s[m + j - i];
    s[j] = (p.coeff(m + j) - acc) / two_lead;
  }
  UPoly root(std::move(s));
  if (root * root != p) return std::nullopt;
  return root;
}

namespace {

// Left null row of (A - lambda I): candidates (A21, lambda - A11) and
// (lambda - A22, A12); both rows of the adjugate-transpose vanish on it.
std::optional<Vec2R> left_eigvec(const Matrix2R& A, const RationalFunction& lambda) {
  Vec2R cand1{A.m[1][0], lambda - A.m[0][0]};
  Vec2R cand2{lambda - A.m[1][1], A.m[0][1]};
  for (const Vec2R& v : {cand1, cand2}) {
    if (!v.a.is_zero()) return Vec2R{RationalFunction(1), v.b / v.a};
    if (!v.b.is_zero()) return Vec2R{RationalFunction(0), RationalFunction(1)};
  }
  return std::nullopt;
}

}  // namespace

Eigendata eigendata(const Matrix2R& A) {
  const RationalFunction tr = A.m[0][0] + A.m[1][1];
  const RationalFunction det = A.m[0][0] * A.m[1][1] - A.m[0][1] * A.m[1][0];
  const RationalFunction disc = tr * tr - RationalFunction(4) * det;
  if (disc.is_zero()) throw std::domain_error("not strictly hyperbolic");

  // disc = s^2 requires num and (monic) den to be perfect squares separately,
  // since they are coprime.
  auto num_root = poly_sqrt(disc.num());
  auto den_root = poly_sqrt(disc.den());
  if (!num_root || !den_root) throw std::domain_error("irrational characteristic speeds");
  const RationalFunction s(*num_root, *den_root);

  const RationalFunction half(Rat(1, 2));
  RationalFunction la = (tr + s) * half;
  RationalFunction lb = (tr - s) * half;

  auto va = left_eigvec(A, la), vb = left_eigvec(A, lb);
  if (!va || !vb) throw std::domain_error("not strictly hyperbolic");

  // Canonical ordering by the normalized eigenvector: (1, *) precedes (0, 1);
  // among (1, *) the smaller second component (total order on rational
  // functions) comes first.  This puts diag(1,2) -> lambda1 = 1 and the
  // symmetric master system -> lambda1 = -p + q with leftvec (1, -1).
  auto key_less = [](const Vec2R& u, const Vec2R& v) {
    const bool u0 = u.a.is_zero(), v0 = v.a.is_zero();
    if (u0 != v0) return v0;  // leading 1 in the first slot wins
    return compare(u.b, v.b) < 0;
  };
  if (key_less(*vb, *va)) {
    std::swap(la, lb);
    std::swap(va, vb);
  }
  return Eigendata{la, lb, *va, *vb};
}

std::pair<RationalFunction, RationalFunction> commutator_coeffs(
    const RationalFunction& lambda1, const RationalFunction& lambda2) {
  const RationalFunction diff = lambda1 - lambda2;
  if (diff.is_zero()) throw std::domain_error("not strictly hyperbolic");
  const RationalFunction P =
      (lambda2 * lambda1.derivative() - lambda1 * lambda2.derivative()) / diff;
  return {P, -P};
}

CharacteristicSystem to_characteristic(const FirstOrderSystem2& sys) {
  const Eigendata ed = eigendata(sys.A);

  // S has rows l1, l2; u = S v.
  const RationalFunction det = ed.left1.a * ed.left2.b - ed.left1.b * ed.left2.a;
  if (det.is_zero()) throw std::domain_error("not strictly hyperbolic");
  // S^{-1} = adj(S)/det, columns indexed by k.
  RationalFunction inv[2][2] = {{ed.left2.b / det, -ed.left1.b / det},
                                {-ed.left2.a / det, ed.left1.a / det}};

  CharacteristicSystem cs;
  cs.lambda1 = ed.lambda1;
  cs.lambda2 = ed.lambda2;
  cs.left1 = ed.left1;
  cs.left2 = ed.left2;
  std::tie(cs.P, cs.Q) = commutator_coeffs(ed.lambda1, ed.lambda2);

  const Vec2R* l[2] = {&ed.left1, &ed.left2};
  const RationalFunction* lam[2] = {&ed.lambda1, &ed.lambda2};
  for (int i = 0; i < 2; ++i) {
    // row_i = l_i B + X_i(l_i), where X_i(g) = -lambda_i g' for x-only rows
    RationalFunction r0 = l[i]->a * sys.B.m[0][0] + l[i]->b * sys.B.m[1][0] -
                          *lam[i] * l[i]->a.derivative();
    RationalFunction r1 = l[i]->a * sys.B.m[0][1] + l[i]->b * sys.B.m[1][1] -
                          *lam[i] * l[i]->b.derivative();
    for (int k = 0; k < 2; ++k) cs.alpha.m[i][k] = r0 * inv[0][k] + r1 * inv[1][k];
  }
  return cs;
}

FirstOrderSystem2 master_system(const UPoly& p, const UPoly& q, const Rat& nu) {
  const RationalFunction rp(p), rq(q);
  const RationalFunction dp(p.derivative()), dq(q.derivative());
  FirstOrderSystem2 sys;
  sys.A.m[0][0] = -rp;
  sys.A.m[0][1] = -rq;
  sys.A.m[1][0] = -rq;
  sys.A.m[1][1] = -rp;
  sys.B.m[0][0] = -dp;
  sys.B.m[0][1] = -dq;
  sys.B.m[1][0] = -dq;
  sys.B.m[1][1] = -(dp + RationalFunction(Rat(2) * nu));
  return sys;
}

}  // namespace lapcas
