#include "lapcas/ratfun.hpp"

namespace lapcas {

RationalFunction::RationalFunction(UPoly num, UPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw std::domain_error("zero divisor");
  if (num_.is_zero()) {
    den_ = UPoly(Rat(1));
    return;
  }
  if (den_.degree() > 0 || num_.degree() > 0) {
    UPoly g = UPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divided_by(g);
      den_ = den_.divided_by(g);
    }
  }
  if (!den_.lead().is_one()) {
    Rat inv = den_.lead().inverse();
    num_ = inv * num_;
    den_ = inv * den_;
  }
}

Rat RationalFunction::as_constant() const {
  if (!is_constant()) throw std::domain_error("rational function is not constant");
  return num_.coeff(0);  // den is monic constant == 1
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw std::domain_error("zero divisor");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::derivative() const {
  // (n/d)' = (n'd - nd')/d^2; the constructor reduces.
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Rat RationalFunction::eval(const Rat& x) const {
  Rat d = den_.eval(x);
  if (d.is_zero()) throw std::domain_error("evaluation at a pole");
  return num_.eval(x) / d;
}

double RationalFunction::eval(double x) const { return num_.eval(x) / den_.eval(x); }

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RationalFunction log_deriv(const RationalFunction& f) {
  if (f.is_zero()) throw std::domain_error("zero divisor");
  // (ln f)' = n'/n - d'/d = (n'd - nd')/(nd)
  return RationalFunction(f.num().derivative() * f.den() - f.num() * f.den().derivative(),
                          f.num() * f.den());
}

namespace {

int compare_poly(const UPoly& a, const UPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int k = a.degree(); k >= 0; --k) {
    const Rat ca = a.coeff(k), cb = b.coeff(k);
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

}  // namespace

int compare(const RationalFunction& a, const RationalFunction& b) {
  if (int c = compare_poly(a.num(), b.num()); c != 0) return c;
  return compare_poly(a.den(), b.den());
}

}  // namespace lapcas
