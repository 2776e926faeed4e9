#pragma once

#include <optional>
#include <vector>

#include "lapcas/charform.hpp"

namespace lapcas {

// Laplace invariants of a characteristic system.  h is absent exactly when
// alpha12 == 0 (the system is already triangular in the X1 direction and the
// defining elimination is impossible); k = alpha12 * alpha21 always exists.
struct InvariantPair {
  std::optional<RationalFunction> h;
  RationalFunction k;
};

enum class ChainStop {
  zero_invariant,  // chain ended on an exact zero: cascade terminates
  step_cap,        // gave up after max_steps transforms
  degree_cap,      // exact algebra exceeded the degree cap
};

struct InvariantChain {
  InvariantPair center;                    // h, k of the original system
  std::vector<RationalFunction> forward;   // k_(1), k_(2), ... (k_(1) == h)
  std::vector<RationalFunction> backward;  // k_(-1), k_(-2), ...
  bool terminated_forward = false;         // true iff forward ended on exact zero
  bool terminated_backward = false;
  ChainStop forward_stop = ChainStop::step_cap;
  ChainStop backward_stop = ChainStop::step_cap;
};

// h and k.  Throws std::domain_error("h undefined; system already triangular
// in this direction") when alpha12 == 0; build_chain handles that case
// without throwing.
InvariantPair invariants(const CharacteristicSystem& cs);

// X1-Laplace transform: eliminate u2, factor the resulting second-order
// operator as (X1 + beta2)(X2 + beta1) - h, and relabel to a new system in
// standard characteristic form with the same speeds.  By construction the
// transformed system has k = h(original).  Requires alpha12 != 0.
CharacteristicSystem x1_transform(const CharacteristicSystem& cs);

// Mirror transform eliminating u1; requires alpha21 != 0.  The transformed
// system has k equal to the backward invariant k_(-1), and x1_transform
// inverts it up to gauge (checked through the gauge-invariant h, k).
CharacteristicSystem x2_transform(const CharacteristicSystem& cs);

InvariantChain build_chain(const CharacteristicSystem& cs, int max_steps = 16);

bool is_triangular(const CharacteristicSystem& cs);

// Gauge transform u_i = g_i * u_i^new (g_i nonzero):
// alpha'_ii = alpha_ii + s_i lambda_i g_i'/g_i, alpha'_ik = alpha_ik g_k/g_i.
// Leaves h and k unchanged.
CharacteristicSystem gauge(const CharacteristicSystem& cs, const RationalFunction& g1,
                           const RationalFunction& g2);

// Constant operator rescaling X_i -> c_i X_i (c_i nonzero rationals);
// multiplies h and k by c1*c2.
CharacteristicSystem rescale(const CharacteristicSystem& cs, const Rat& c1, const Rat& c2);

}  // namespace lapcas
