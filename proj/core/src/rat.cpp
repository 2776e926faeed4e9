#include "lapcas/rat.hpp"

#include <cctype>
#include <ostream>

namespace lapcas {

Rat::Rat(long n, long d) {
  if (d == 0) throw std::domain_error("zero divisor");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) {
  if (sgn(d) == 0) throw std::domain_error("zero divisor");
  v_ = mpq_class(n) / mpq_class(d);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("zero divisor");
  v_ /= o.v_;
  return *this;
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("zero divisor");
  return Rat(mpq_class(1) / v_);
}

Rat Rat::pow(long e) const {
  if (e == 0) return Rat(1);
  Rat base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  mpq_class acc(1);
  mpq_class b = base.v_;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return Rat(std::move(acc));
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat Rat::parse(std::string_view s) {
  std::string_view orig = s;
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  auto fail = [&]() -> Rat {
    throw std::invalid_argument("cannot parse rational: '" + std::string(orig) + "'");
  };

  Rat out;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return fail();
    mpz_class dz(std::string(d), 10);
    if (sgn(dz) == 0) throw std::domain_error("zero divisor");
    out = Rat(mpz_class(std::string(n), 10), dz);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) return fail();
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) return fail();
    mpz_class digits(std::string(ip) + std::string(fp), 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    out = Rat(digits, scale);
  } else {
    if (!all_digits(s)) return fail();
    out = Rat(mpz_class(std::string(s), 10));
  }
  return neg ? -out : out;
}

std::string Rat::to_string() const {
  return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

bool rat_sqrt(const Rat& a, Rat& root) {
  if (a.sign() < 0) return false;
  mpz_class n = a.num(), d = a.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  root = Rat(rn, rd);
  return true;
}

}  // namespace lapcas
