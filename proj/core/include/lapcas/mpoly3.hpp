#pragma once

#include <array>
#include <map>
#include <string>

#include "lapcas/rat.hpp"

namespace lapcas {

// Sparse polynomial in three variables over Rat.  Terms are kept in a map
// keyed by the exponent triple, so iteration order (and hence printing) is
// canonical.  Zero coefficients are never stored.
class MPoly3 {
public:
  using Exponents = std::array<int, 3>;

  MPoly3() = default;
  MPoly3(const Rat& c) { add_term({0, 0, 0}, c); }
  MPoly3(int c) : MPoly3(Rat(c)) {}

  static MPoly3 var(int axis);  // x, y or z for axis 0, 1, 2
  static MPoly3 monomial(const Rat& c, const Exponents& e);

  bool is_zero() const { return terms_.empty(); }
  int degree(int axis) const;  // -1 for the zero polynomial
  const std::map<Exponents, Rat>& terms() const { return terms_; }
  Rat coeff(const Exponents& e) const;

  MPoly3 operator-() const;
  MPoly3& operator+=(const MPoly3& o);
  MPoly3& operator-=(const MPoly3& o);
  friend MPoly3 operator+(MPoly3 a, const MPoly3& b) { return a += b; }
  friend MPoly3 operator-(MPoly3 a, const MPoly3& b) { return a -= b; }
  friend MPoly3 operator*(const MPoly3& a, const MPoly3& b);
  friend MPoly3 operator*(const Rat& s, const MPoly3& p);

  friend bool operator==(const MPoly3& a, const MPoly3& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly3& a, const MPoly3& b) { return !(a == b); }

  MPoly3 partial_derivative(int axis) const;
  // Antiderivative along axis with zero constant term in that axis, so the
  // result F satisfies dF/daxis == *this and F|_{axis=0} == 0.
  MPoly3 antiderivative(int axis) const;
  // Simultaneous substitution axis i -> g[i].
  MPoly3 substitute(const std::array<MPoly3, 3>& g) const;
  Rat evaluate(const Rat& x, const Rat& y, const Rat& z) const;

  std::string to_string(const std::array<std::string, 3>& names = {"x", "y", "z"}) const;

private:
  void add_term(const Exponents& e, const Rat& c);
  std::map<Exponents, Rat> terms_;
};

}  // namespace lapcas
