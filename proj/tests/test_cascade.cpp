#include "doctest.h"
#include "lapcas/cascade.hpp"

#include <random>
#include <stdexcept>
#include <vector>

using namespace lapcas;

namespace {

const UPoly X = UPoly::x();

UPoly verhulst_p(const Rat& p2) { return UPoly({Rat(0), Rat(1), p2}); }
UPoly verhulst_q(const Rat& q2) { return UPoly({Rat(0), Rat(0), q2}); }

CharacteristicSystem verhulst_system(const Rat& nu) {
  return to_characteristic(master_system(verhulst_p(Rat(-2)), verhulst_q(Rat(1, 2)), nu));
}

// ---------------------------------------------------------------------------
// Test-only model of functions u(x, t) that are polynomial in t with
// rational-function coefficients in x.  Rich enough to distinguish wrong
// operator algebra: X_i = s_i (D_t - lambda_i D_x) acts exactly on it.
struct TPoly {
  std::vector<RationalFunction> c;  // c[j] multiplies t^j

  static TPoly zero() { return {}; }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  friend TPoly operator+(TPoly a, const TPoly& b) {
    if (b.c.size() > a.c.size()) a.c.resize(b.c.size());
    for (std::size_t j = 0; j < b.c.size(); ++j) a.c[j] += b.c[j];
    a.trim();
    return a;
  }
  friend TPoly operator-(TPoly a, const TPoly& b) {
    if (b.c.size() > a.c.size()) a.c.resize(b.c.size());
    for (std::size_t j = 0; j < b.c.size(); ++j) a.c[j] -= b.c[j];
    a.trim();
    return a;
  }
  friend TPoly operator*(const RationalFunction& s, TPoly u) {
    for (auto& cj : u.c) cj = s * cj;
    u.trim();
    return u;
  }
  bool is_zero() const { return c.empty(); }
};

// X u for X = s (D_t - lambda D_x): coefficient j is s((j+1) c_{j+1} - lambda c_j').
TPoly apply_X(const TPoly& u, const RationalFunction& lambda, const Rat& s) {
  TPoly r;
  r.c.resize(u.c.size());
  const RationalFunction sf{s};
  for (std::size_t j = 0; j < u.c.size(); ++j) {
    RationalFunction cj = RationalFunction(0) - lambda * u.c[j].derivative();
    if (j + 1 < u.c.size()) cj += RationalFunction(Rat(static_cast<long>(j + 1))) * u.c[j + 1];
    r.c[j] = sf * cj;
  }
  r.trim();
  return r;
}

TPoly X1(const CharacteristicSystem& cs, const TPoly& u) {
  return apply_X(u, cs.lambda1, cs.scale1);
}
TPoly X2(const CharacteristicSystem& cs, const TPoly& u) {
  return apply_X(u, cs.lambda2, cs.scale2);
}

RationalFunction random_rf(std::mt19937& rng, int max_deg, bool nonzero) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<long> coeff(-4, 4);
  for (;;) {
    std::vector<Rat> c(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& r : c) r = Rat(coeff(rng));
    UPoly p(std::move(c));
    if (!nonzero || !p.is_zero()) return RationalFunction(std::move(p));
  }
}

// A random admissible characteristic system: distinct polynomial speeds,
// both off-diagonal couplings nonzero, P and Q from the commutator.
CharacteristicSystem random_system(std::mt19937& rng) {
  CharacteristicSystem cs;
  for (;;) {
    cs.lambda1 = random_rf(rng, 2, false);
    cs.lambda2 = random_rf(rng, 2, false);
    if (cs.lambda1 != cs.lambda2) break;
  }
  auto [P, Q] = commutator_coeffs(cs.lambda1, cs.lambda2);
  cs.P = P;
  cs.Q = Q;
  cs.alpha.m[0][0] = random_rf(rng, 2, false);
  cs.alpha.m[0][1] = random_rf(rng, 2, true);
  cs.alpha.m[1][0] = random_rf(rng, 2, true);
  cs.alpha.m[1][1] = random_rf(rng, 2, false);
  return cs;
}

TPoly random_u(std::mt19937& rng) {
  TPoly u;
  u.c.resize(3);
  for (auto& cj : u.c) cj = random_rf(rng, 2, false);
  if (u.c.empty() || u.is_zero()) u.c.assign(1, RationalFunction(1));
  return u;
}

// Independently derived explicit h of the dichotomous-noise master system
// with drift p and noise amplitude q (both functions of x), switching rate nu:
//   h = nu^2 - [p'' q^2 (p+q) + (p')^2 q^2 - p' q' q (3p+q) - q'' p q (p+q)
//               + (q')^2 p (2p+q)] / q^2.
RationalFunction explicit_master_h(const UPoly& pp, const UPoly& qq, const Rat& nu) {
  const RationalFunction p{pp}, q{qq};
  const RationalFunction dp{pp.derivative()}, dq{qq.derivative()};
  const RationalFunction ddp{pp.derivative().derivative()}, ddq{qq.derivative().derivative()};
  const RationalFunction num = ddp * q * q * (p + q) + dp * dp * q * q -
                               dp * dq * q * (RationalFunction(3) * p + q) -
                               ddq * p * q * (p + q) +
                               dq * dq * p * (RationalFunction(2) * p + q);
  return RationalFunction(nu * nu) - num / (q * q);
}

}  // namespace

TEST_CASE("invariants of the dichotomous-noise system: k = nu^2, h = nu^2 - 1") {
  for (long n : {1L, 2L, 3L}) {
    const Rat nu(n);
    const InvariantPair inv = invariants(verhulst_system(nu));
    CHECK(inv.k == RationalFunction(nu * nu));
    REQUIRE(inv.h.has_value());
    CHECK(*inv.h == RationalFunction(nu * nu - Rat(1)));
  }
  // non-integer rate: invariants are still exact rationals
  const InvariantPair inv = invariants(verhulst_system(Rat(5, 2)));
  CHECK(inv.k == RationalFunction(Rat(25, 4)));
  CHECK(*inv.h == RationalFunction(Rat(21, 4)));
}

TEST_CASE("invariants require a nonzero coupling") {
  CharacteristicSystem cs = verhulst_system(Rat(1));
  cs.alpha.m[0][1] = RationalFunction(0);
  CHECK_THROWS_AS(invariants(cs), std::domain_error);
  CHECK(is_triangular(cs));
  CHECK_FALSE(is_triangular(verhulst_system(Rat(1))));
}

TEST_CASE("h-formula agrees with the explicit master-system expression") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<long> coeff(-4, 4);
  std::uniform_int_distribution<long> nu_num(1, 5);
  int done = 0;
  while (done < 20) {
    std::vector<Rat> pc(3), qc(3);
    for (auto& r : pc) r = Rat(coeff(rng));
    for (auto& r : qc) r = Rat(coeff(rng));
    const UPoly p{pc}, q{qc};
    if (q.is_zero()) continue;  // needs distinct speeds
    const Rat nu(nu_num(rng), 2);
    const CharacteristicSystem cs = to_characteristic(master_system(p, q, nu));
    const InvariantPair inv = invariants(cs);
    REQUIRE(inv.h.has_value());
    CHECK(*inv.h == explicit_master_h(p, q, nu));
    CHECK(inv.k == RationalFunction(nu * nu));
    ++done;
  }
}

TEST_CASE("Verhulst forward chain: nu^2 - m^2, terminating at zero for integer nu") {
  const InvariantChain chain = build_chain(verhulst_system(Rat(3)), 16);
  REQUIRE(chain.center.h.has_value());
  CHECK(chain.center.k == RationalFunction(9));
  CHECK(*chain.center.h == RationalFunction(8));
  REQUIRE(chain.forward.size() == 3);
  CHECK(chain.forward[0] == RationalFunction(8));   // = h
  CHECK(chain.forward[1] == RationalFunction(5));   // nu^2 - 4
  CHECK(chain.forward[2] == RationalFunction(0));   // nu^2 - 9: cascade closes
  CHECK(chain.terminated_forward);
  CHECK(chain.forward_stop == ChainStop::zero_invariant);

  // the backward direction mirrors the forward one for this system
  REQUIRE(chain.backward.size() == 3);
  CHECK(chain.backward[0] == RationalFunction(8));
  CHECK(chain.backward[1] == RationalFunction(5));
  CHECK(chain.backward[2] == RationalFunction(0));
  CHECK(chain.terminated_backward);

  // nu = 2: shorter chain
  const InvariantChain c2 = build_chain(verhulst_system(Rat(2)), 16);
  REQUIRE(c2.forward.size() == 2);
  CHECK(c2.forward[0] == RationalFunction(3));
  CHECK(c2.forward[1] == RationalFunction(0));
  CHECK(c2.terminated_forward);

  // non-integer nu: never hits zero, stops at the step cap
  const InvariantChain c52 = build_chain(verhulst_system(Rat(5, 2)), 4);
  CHECK(c52.forward.size() == 4);
  CHECK_FALSE(c52.terminated_forward);
  CHECK(c52.forward_stop == ChainStop::step_cap);
  for (int m = 1; m <= 4; ++m) {
    CHECK(c52.forward[static_cast<std::size_t>(m - 1)] ==
          RationalFunction(Rat(25, 4) - Rat(m * m)));
  }
}

TEST_CASE("x1_transform: new k equals old h; x2_transform mirrors") {
  std::mt19937 rng(211);
  for (int trial = 0; trial < 20; ++trial) {
    const CharacteristicSystem cs = random_system(rng);
    const InvariantPair inv = invariants(cs);

    const CharacteristicSystem fwd = x1_transform(cs);
    const InvariantPair finv = invariants(fwd);
    CHECK(finv.k == *inv.h);

    const CharacteristicSystem bwd = x2_transform(cs);
    const InvariantPair binv = invariants(bwd);
    CHECK(*binv.h == inv.k);  // reverse property

    // x2 then x1 restores both invariants (Laplace transforms are inverse
    // up to gauge, and h, k are gauge invariants)
    const InvariantPair round = invariants(x1_transform(bwd));
    CHECK(round.k == inv.k);
    CHECK(*round.h == *inv.h);
  }
}

TEST_CASE("transforms map solutions to solutions (exact operator identities)") {
  std::mt19937 rng(307);
  for (int trial = 0; trial < 12; ++trial) {
    CharacteristicSystem cs = random_system(rng);
    if (trial % 3 == 2) cs = rescale(cs, Rat(2), Rat(-3, 2));  // exercise scales != 1
    const auto& a11 = cs.alpha.m[0][0];
    const auto& a12 = cs.alpha.m[0][1];
    const auto& a21 = cs.alpha.m[1][0];
    const auto& a22 = cs.alpha.m[1][1];

    {
      // forward: pick u1 freely, define u2 so the first equation holds exactly
      const TPoly u1 = random_u(rng);
      const TPoly u2 = (RationalFunction(1) / a12) * (X1(cs, u1) - a11 * u1);
      const TPoly defect2 = X2(cs, u2) - a21 * u1 - a22 * u2;  // residual of eq 2

      const CharacteristicSystem nf = x1_transform(cs);
      const TPoly nu1 = X2(cs, u1) - nf.alpha.m[1][1] * u1;  // (X2 + beta1) u1
      const TPoly nu2 = u1;

      // second transformed equation holds identically
      CHECK((X2(cs, nu2) - nf.alpha.m[1][0] * nu1 - nf.alpha.m[1][1] * nu2).is_zero());
      // first transformed equation fails exactly by a12 * defect2
      const TPoly lhs = X1(cs, nu1) - nf.alpha.m[0][0] * nu1 - nf.alpha.m[0][1] * nu2;
      CHECK((lhs - a12 * defect2).is_zero());
    }
    {
      // backward: pick u2 freely, define u1 from the second equation
      const TPoly u2 = random_u(rng);
      const TPoly u1 = (RationalFunction(1) / a21) * (X2(cs, u2) - a22 * u2);
      const TPoly defect1 = X1(cs, u1) - a11 * u1 - a12 * u2;

      const CharacteristicSystem nb = x2_transform(cs);
      const TPoly nu2 = X1(cs, u2) - nb.alpha.m[0][0] * u2;  // (X1 + gamma1) u2
      const TPoly nu1 = u2;

      CHECK((X1(cs, nu1) - nb.alpha.m[0][0] * nu1 - nb.alpha.m[0][1] * nu2).is_zero());
      const TPoly lhs = X2(cs, nu2) - nb.alpha.m[1][0] * nu1 - nb.alpha.m[1][1] * nu2;
      CHECK((lhs - a21 * defect1).is_zero());
    }
  }
}

TEST_CASE("commutator identity holds on t-polynomials") {
  std::mt19937 rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    CharacteristicSystem cs = random_system(rng);
    if (trial % 2) cs = rescale(cs, Rat(-1, 2), Rat(3));
    const TPoly u = random_u(rng);
    const TPoly lhs = X1(cs, X2(cs, u)) - X2(cs, X1(cs, u));
    const TPoly rhs = cs.P * X1(cs, u) + cs.Q * X2(cs, u);
    CHECK((lhs - rhs).is_zero());
  }
}

TEST_CASE("gauge transforms leave h and k unchanged") {
  std::mt19937 rng(503);
  for (int trial = 0; trial < 20; ++trial) {
    const CharacteristicSystem cs = random_system(rng);
    const RationalFunction g1 = random_rf(rng, 2, true);
    const RationalFunction g2 = random_rf(rng, 2, true);
    const InvariantPair before = invariants(cs);
    const InvariantPair after = invariants(gauge(cs, g1, g2));
    CHECK(after.k == before.k);
    CHECK(*after.h == *before.h);
  }
  CHECK_THROWS_AS(gauge(verhulst_system(Rat(1)), RationalFunction(0), RationalFunction(1)),
                  std::domain_error);
}

TEST_CASE("constant rescaling multiplies both invariants by c1 c2") {
  std::mt19937 rng(601);
  std::uniform_int_distribution<long> nz(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    const CharacteristicSystem cs = random_system(rng);
    Rat c1(nz(rng), 2), c2(nz(rng), 3);
    if (c1.is_zero()) c1 = Rat(1);
    if (c2.is_zero()) c2 = Rat(1);
    const InvariantPair before = invariants(cs);
    const InvariantPair after = invariants(rescale(cs, c1, c2));
    const RationalFunction f{c1 * c2};
    CHECK(after.k == f * before.k);
    CHECK(*after.h == f * *before.h);
  }
  CHECK_THROWS_AS(rescale(verhulst_system(Rat(1)), Rat(0), Rat(1)), std::invalid_argument);
}

TEST_CASE("build_chain reports a degree cap stop instead of hanging") {
  const int old_cap = degree_cap();
  set_degree_cap(48);
  std::mt19937 rng(701);
  // generic systems blow up their invariant degrees within a few transforms
  bool saw_cap = false;
  for (int trial = 0; trial < 10 && !saw_cap; ++trial) {
    const CharacteristicSystem cs = random_system(rng);
    try {
      const InvariantChain chain = build_chain(cs, 12);
      saw_cap = chain.forward_stop == ChainStop::degree_cap ||
                chain.backward_stop == ChainStop::degree_cap;
    } catch (const degree_cap_error&) {
      // the cap fired while sizing up the starting system itself; try another
    }
  }
  set_degree_cap(old_cap);
  CHECK(saw_cap);
}

TEST_CASE("chain on an already-triangular direction closes immediately") {
  CharacteristicSystem cs = verhulst_system(Rat(1));
  cs.alpha.m[0][1] = RationalFunction(0);  // k = 0: no forward transform needed
  const InvariantChain chain = build_chain(cs, 3);
  CHECK_FALSE(chain.center.h.has_value());
  CHECK(chain.center.k.is_zero());
  CHECK(chain.forward.empty());
  CHECK(chain.terminated_forward);
  CHECK(chain.forward_stop == ChainStop::zero_invariant);
}
