#pragma once

#include "lapcas/mpoly3.hpp"

namespace lapcas::dini {

// Frame of the third-order example L = Dx Dy + x Dx Dz - Dz, factored through
//   X1 = Dx,  X2 = Dy + x Dz,  X3 = Dz,  with [X1, X2] = X3.
MPoly3 X1(const MPoly3& f);
MPoly3 X2(const MPoly3& f);
MPoly3 X3(const MPoly3& f);

// Intermediate integral v(x, y, z) = int phi(x, x y - z) dx + psi(y, z).
// phi is a polynomial in the two formal slots (axes 0 and 1); psi must not
// involve axis 0.  Every such v satisfies X2 X1 v = 0.
MPoly3 dini_v(const MPoly3& phi_ab, const MPoly3& psi_yz);

// Closed-form solution u of X2 X1 u = X3 u assembled from an intermediate
// integral v (which must satisfy X2 X1 v = 0) and a free theta(y):
//   u = int_0^x v(s, y, 0) ds + int_0^z (X2 v)(x, y, s) ds + theta(y).
MPoly3 dini_u(const MPoly3& v, const MPoly3& theta_y);

// Residual X2 X1 u - X3 u; identically zero for dini_u output.
MPoly3 check_L(const MPoly3& u);

}  // namespace lapcas::dini
