#include "lapcas/dini.hpp"

#include <stdexcept>

namespace lapcas::dini {

MPoly3 X1(const MPoly3& f) { return f.partial_derivative(0); }

MPoly3 X2(const MPoly3& f) {
  return f.partial_derivative(1) + MPoly3::var(0) * f.partial_derivative(2);
}

MPoly3 X3(const MPoly3& f) { return f.partial_derivative(2); }

MPoly3 dini_v(const MPoly3& phi_ab, const MPoly3& psi_yz) {
  if (phi_ab.degree(2) > 0) {
    throw std::invalid_argument("phi must use only the first two slots");
  }
  if (psi_yz.degree(0) > 0) {
    throw std::invalid_argument("psi must not depend on x");
  }
  const MPoly3 x = MPoly3::var(0), y = MPoly3::var(1), z = MPoly3::var(2);
  const MPoly3 integrand = phi_ab.substitute({x, x * y - z, MPoly3()});
  return integrand.antiderivative(0) + psi_yz;
}

MPoly3 dini_u(const MPoly3& v, const MPoly3& theta_y) {
  if (!X2(X1(v)).is_zero()) {
    throw std::invalid_argument("incompatible v: X2 X1 v must vanish");
  }
  if (theta_y.degree(0) > 0 || theta_y.degree(2) > 0) {
    throw std::invalid_argument("theta must depend on y only");
  }
  const MPoly3 x = MPoly3::var(0), y = MPoly3::var(1);
  // First leg: integrate v(., y, 0) from 0 to x.
  const MPoly3 v_z0 = v.substitute({x, y, MPoly3()});
  const MPoly3 leg_x = v_z0.antiderivative(0);
  // Second leg: integrate (X2 v)(x, y, .) from 0 to z; the anchored
  // antiderivative along axis 2 is exactly this path integral.
  const MPoly3 leg_z = X2(v).antiderivative(2);
  return leg_x + leg_z + theta_y;
}

MPoly3 check_L(const MPoly3& u) { return X2(X1(u)) - X3(u); }

}  // namespace lapcas::dini
