#include "lapcas/cascade.hpp"

namespace lapcas {

namespace {

// h by elimination of u2 (valid whenever alpha12 != 0):
//   h = X2(a11) - X1(a22) - X1 X2 ln a12 - X1(P) + P a11 + a12 a21
//       + (a22 + X2 ln a12 + P) Q.
RationalFunction forward_h(const CharacteristicSystem& cs) {
  const RationalFunction& a11 = cs.alpha.m[0][0];
  const RationalFunction& a12 = cs.alpha.m[0][1];
  const RationalFunction& a21 = cs.alpha.m[1][0];
  const RationalFunction& a22 = cs.alpha.m[1][1];
  const RationalFunction x2_ln_a12 = RationalFunction(-cs.scale2) * cs.lambda2 * log_deriv(a12);
  return cs.apply_X2(a11) - cs.apply_X1(a22) - cs.apply_X1(x2_ln_a12) - cs.apply_X1(cs.P) +
         cs.P * a11 + a12 * a21 + (a22 + x2_ln_a12 + cs.P) * cs.Q;
}

}  // namespace

InvariantPair invariants(const CharacteristicSystem& cs) {
  if (cs.alpha.m[0][1].is_zero())
    throw std::domain_error("h undefined; system already triangular in this direction");
  return InvariantPair{forward_h(cs), cs.alpha.m[0][1] * cs.alpha.m[1][0]};
}

CharacteristicSystem x1_transform(const CharacteristicSystem& cs) {
  const RationalFunction& a12 = cs.alpha.m[0][1];
  if (a12.is_zero()) throw std::domain_error("transform undefined");

  const RationalFunction x2_ln_a12 = RationalFunction(-cs.scale2) * cs.lambda2 * log_deriv(a12);
  const RationalFunction beta1 = -(cs.P + x2_ln_a12 + cs.alpha.m[1][1]);
  const RationalFunction beta2 = -(cs.Q + cs.alpha.m[0][0]);
  const RationalFunction h = forward_h(cs);

  // New unknowns: u1~ = (X2 + beta1) u1 (carried by X1), u2~ = u1 (by X2):
  //   X1 u1~ = -beta2 u1~ + h u2~
  //   X2 u2~ =       u1~ - beta1 u2~
  CharacteristicSystem out = cs;
  out.alpha.m[0][0] = -beta2;
  out.alpha.m[0][1] = h;
  out.alpha.m[1][0] = RationalFunction(1);
  out.alpha.m[1][1] = -beta1;
  return out;
}

CharacteristicSystem x2_transform(const CharacteristicSystem& cs) {
  const RationalFunction& a11 = cs.alpha.m[0][0];
  const RationalFunction& a12 = cs.alpha.m[0][1];
  const RationalFunction& a21 = cs.alpha.m[1][0];
  const RationalFunction& a22 = cs.alpha.m[1][1];
  if (a21.is_zero()) throw std::domain_error("transform undefined");

  // Eliminating u1 factors the operator as (X2 + gamma2)(X1 + gamma1) - h_minus.
  const RationalFunction x1_ln_a21 = RationalFunction(-cs.scale1) * cs.lambda1 * log_deriv(a21);
  const RationalFunction gamma1 = cs.Q - x1_ln_a21 - a11;
  const RationalFunction gamma2 = cs.P - a22;
  const RationalFunction h_minus =
      cs.apply_X2(gamma1) + gamma1 * gamma2 - (x1_ln_a21 * a22 - cs.apply_X1(a22) + a11 * a22 - a12 * a21);

  // u2~ = (X1 + gamma1) u2 (carried by X2), u1~ = u2 (by X1):
  //   X1 u1~ = -gamma1 u1~ +        u2~
  //   X2 u2~ = h_minus u1~ - gamma2 u2~
  CharacteristicSystem out = cs;
  out.alpha.m[0][0] = -gamma1;
  out.alpha.m[0][1] = RationalFunction(1);
  out.alpha.m[1][0] = h_minus;
  out.alpha.m[1][1] = -gamma2;
  return out;
}

namespace {

void extend_chain(const CharacteristicSystem& start, int max_steps, bool forward,
                  std::vector<RationalFunction>& out, bool& terminated, ChainStop& stop) {
  terminated = false;
  stop = ChainStop::step_cap;
  const auto& gate = [&](const CharacteristicSystem& s) -> const RationalFunction& {
    return forward ? s.alpha.m[0][1] : s.alpha.m[1][0];
  };
  CharacteristicSystem cur = start;
  if (gate(cur).is_zero()) {
    // Nothing to transform: the chain is already closed in this direction.
    terminated = true;
    stop = ChainStop::zero_invariant;
    return;
  }
  for (int i = 0; i < max_steps; ++i) {
    try {
      cur = forward ? x1_transform(cur) : x2_transform(cur);
    } catch (const degree_cap_error&) {
      stop = ChainStop::degree_cap;
      return;
    }
    const RationalFunction k = cur.alpha.m[0][1] * cur.alpha.m[1][0];
    out.push_back(k);
    if (k.is_zero()) {
      terminated = true;
      stop = ChainStop::zero_invariant;
      return;
    }
  }
}

}  // namespace

InvariantChain build_chain(const CharacteristicSystem& cs, int max_steps) {
  if (max_steps < 0) throw std::invalid_argument("max_steps must be nonnegative");
  InvariantChain chain;
  chain.center.k = cs.alpha.m[0][1] * cs.alpha.m[1][0];
  if (!cs.alpha.m[0][1].is_zero()) chain.center.h = forward_h(cs);
  extend_chain(cs, max_steps, true, chain.forward, chain.terminated_forward, chain.forward_stop);
  extend_chain(cs, max_steps, false, chain.backward, chain.terminated_backward,
               chain.backward_stop);
  return chain;
}

bool is_triangular(const CharacteristicSystem& cs) {
  return cs.alpha.m[0][1].is_zero() || cs.alpha.m[1][0].is_zero();
}

CharacteristicSystem gauge(const CharacteristicSystem& cs, const RationalFunction& g1,
                           const RationalFunction& g2) {
  if (g1.is_zero() || g2.is_zero()) throw std::domain_error("zero divisor");
  CharacteristicSystem out = cs;
  out.alpha.m[0][0] = cs.alpha.m[0][0] + RationalFunction(cs.scale1) * cs.lambda1 * log_deriv(g1);
  out.alpha.m[1][1] = cs.alpha.m[1][1] + RationalFunction(cs.scale2) * cs.lambda2 * log_deriv(g2);
  out.alpha.m[0][1] = cs.alpha.m[0][1] * g2 / g1;
  out.alpha.m[1][0] = cs.alpha.m[1][0] * g1 / g2;
  return out;
}

CharacteristicSystem rescale(const CharacteristicSystem& cs, const Rat& c1, const Rat& c2) {
  if (c1.is_zero() || c2.is_zero()) throw std::invalid_argument("rescale factors must be nonzero");
  CharacteristicSystem out = cs;
  out.scale1 = cs.scale1 * c1;
  out.scale2 = cs.scale2 * c2;
  for (int k = 0; k < 2; ++k) {
    out.alpha.m[0][k] = RationalFunction(c1) * cs.alpha.m[0][k];
    out.alpha.m[1][k] = RationalFunction(c2) * cs.alpha.m[1][k];
  }
  out.P = RationalFunction(c2) * cs.P;
  out.Q = RationalFunction(c1) * cs.Q;
  return out;
}

}  // namespace lapcas
