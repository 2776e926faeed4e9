#pragma once

#include <functional>

namespace lapcas {

// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute tolerance
// tol (default 1e-10).  Throws std::runtime_error reporting the achieved
// error estimate when the tolerance cannot be met.
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-10);

}  // namespace lapcas
