#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "lapcas/rat.hpp"

namespace lapcas {

// Raised when a polynomial operation would exceed the configured degree cap.
// The cascade transforms can blow degrees up combinatorially on adversarial
// inputs; failing loudly beats hanging.
struct degree_cap_error : std::runtime_error {
  explicit degree_cap_error(const std::string& what) : std::runtime_error(what) {}
};

int degree_cap();
void set_degree_cap(int cap);

// Dense univariate polynomial over Rat.  Canonical form: no trailing zero
// coefficients; the zero polynomial is an empty coefficient vector with
// degree() == -1.
class UPoly {
public:
  UPoly() = default;
  UPoly(const Rat& c);                       // constant
  UPoly(std::initializer_list<Rat> coeffs);  // ascending powers
  explicit UPoly(std::vector<Rat> coeffs);   // ascending powers

  static UPoly monomial(const Rat& c, int k);
  static UPoly x() { return monomial(Rat(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Rat coeff(int k) const;
  const Rat& lead() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  UPoly operator-() const;
  UPoly& operator+=(const UPoly& o);
  UPoly& operator-=(const UPoly& o);
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend UPoly operator*(const Rat& s, const UPoly& p);
  friend UPoly operator*(const UPoly& p, const Rat& s) { return s * p; }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

  // Euclidean division over the rationals: *this = q * d + r, deg r < deg d.
  // Throws std::domain_error("zero divisor") when d == 0.
  void divmod(const UPoly& d, UPoly& q, UPoly& r) const;
  UPoly divided_by(const UPoly& d) const;  // exact division; throws if r != 0

  UPoly derivative() const;
  Rat eval(const Rat& x) const;
  double eval(double x) const;  // Horner on double-converted coefficients
  UPoly pow(int e) const;
  UPoly monic() const;

  // gcd via fraction-free subresultant remainder sequence over the integers;
  // result is monic.  gcd(0, 0) == 0.
  static UPoly gcd(const UPoly& a, const UPoly& b);

  // Sparse "3*x^2 - 1/2*x + 7" rendering, descending powers; "0" for zero.
  std::string to_string(const std::string& var = "x") const;

private:
  void trim();
  void check_cap() const;
  std::vector<Rat> c_;  // c_[k] multiplies x^k
};

}  // namespace lapcas
