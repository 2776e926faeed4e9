#pragma once

#include <string>

#include "lapcas/upoly.hpp"

namespace lapcas {

// Quotient of two UPoly in canonical form: gcd(num, den) == 1 and den monic.
// Two rational functions are equal iff their canonical components are equal.
class RationalFunction {
public:
  RationalFunction() : num_(), den_(Rat(1)) {}
  RationalFunction(const Rat& c) : num_(c), den_(Rat(1)) {}
  RationalFunction(int c) : num_(Rat(c)), den_(Rat(1)) {}
  RationalFunction(UPoly p) : num_(std::move(p)), den_(Rat(1)) {}
  RationalFunction(UPoly num, UPoly den);

  static RationalFunction x() { return RationalFunction(UPoly::x()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  Rat as_constant() const;  // throws unless is_constant()

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  RationalFunction derivative() const;
  Rat eval(const Rat& x) const;  // throws std::domain_error at a pole
  double eval(double x) const;

  // "(num)/(den)" or plain num when den == 1.
  std::string to_string(const std::string& var = "x") const;

private:
  void normalize();
  UPoly num_, den_;
};

// f'/f in closed form, without forming any logarithm:
// log_deriv(n/d) = n'/n - d'/d.  Throws std::domain_error("zero divisor") on f == 0.
RationalFunction log_deriv(const RationalFunction& f);

// Deterministic total order (degree, then coefficients from the top, on num
// then den).  Returns <0, 0, >0.  Used for canonical eigenvalue ordering.
int compare(const RationalFunction& a, const RationalFunction& b);

}  // namespace lapcas
