#include "lapcas/upoly.hpp"

#include <atomic>
#include <sstream>

namespace lapcas {

namespace {
std::atomic<int> g_degree_cap{512};
}

int degree_cap() { return g_degree_cap.load(std::memory_order_relaxed); }

void set_degree_cap(int cap) {
  if (cap < 1) throw std::invalid_argument("degree cap must be positive");
  g_degree_cap.store(cap, std::memory_order_relaxed);
}

UPoly::UPoly(const Rat& c) {
  if (!c.is_zero()) c_.push_back(c);
}

UPoly::UPoly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

UPoly::UPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  trim();
  check_cap();
}

UPoly UPoly::monomial(const Rat& c, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  UPoly p;
  if (!c.is_zero()) {
    p.c_.assign(k + 1, Rat(0));
    p.c_[k] = c;
    p.check_cap();
  }
  return p;
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void UPoly::check_cap() const {
  if (degree() > degree_cap())
    throw degree_cap_error("polynomial degree " + std::to_string(degree()) +
                           " exceeds cap " + std::to_string(degree_cap()));
}

Rat UPoly::coeff(int k) const {
  return (k < 0 || k >= static_cast<int>(c_.size())) ? Rat(0) : c_[k];
}

const Rat& UPoly::lead() const {
  if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
  return c_.back();
}

UPoly UPoly::operator-() const {
  UPoly r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rat(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  UPoly r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  r.check_cap();
  return r;
}

UPoly operator*(const Rat& s, const UPoly& p) {
  if (s.is_zero()) return UPoly();
  UPoly r(p);
  for (auto& c : r.c_) c *= s;
  return r;
}

void UPoly::divmod(const UPoly& d, UPoly& q, UPoly& r) const {
  if (d.is_zero()) throw std::domain_error("zero divisor");
  q = UPoly();
  r = *this;
  if (r.degree() < d.degree()) return;
  q.c_.assign(r.degree() - d.degree() + 1, Rat(0));
  Rat inv_lead = d.lead().inverse();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int k = r.degree() - d.degree();
    Rat f = r.lead() * inv_lead;
    q.c_[k] = f;
    // r -= f * x^k * d, done in place
    for (size_t i = 0; i < d.c_.size(); ++i) r.c_[i + k] -= f * d.c_[i];
    r.trim();
  }
  q.trim();
}

UPoly UPoly::divided_by(const UPoly& d) const {
  UPoly q, r;
  divmod(d, q, r);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

UPoly UPoly::derivative() const {
  UPoly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) r.c_[k - 1] = Rat(static_cast<long>(k)) * c_[k];
  r.trim();
  return r;
}

Rat UPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

double UPoly::eval(double x) const {
  double acc = 0.0;
  for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
  return acc;
}

UPoly UPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  UPoly acc(Rat(1)), base(*this);
  while (e) {
    if (e & 1) acc = acc * base;
    if (e >>= 1) base = base * base;
  }
  return acc;
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return lead().inverse() * *this;
}

// ---------------------------------------------------------------------------
// gcd: work over Z with the subresultant pseudo-remainder sequence so the
// intermediate coefficients stay bounded (no rational blow-up).
// ---------------------------------------------------------------------------
namespace {

using ZPoly = std::vector<mpz_class>;  // ascending powers, trimmed

void ztrim(ZPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

mpz_class zcontent(const ZPoly& p) {
  mpz_class g(0);
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

void zdivide_scalar(ZPoly& p, const mpz_class& s) {
  for (auto& c : p) c /= s;
}

ZPoly zprimitive(ZPoly p) {
  ztrim(p);
  if (p.empty()) return p;
  mpz_class g = zcontent(p);
  if (sgn(p.back()) < 0) g = -g;
  zdivide_scalar(p, g);
  return p;
}

mpz_class zpow(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a divided by b.
ZPoly zprem(ZPoly a, const ZPoly& b) {
  int db = zdeg(b);
  const mpz_class lb = b.back();
  int e = zdeg(a) - db + 1;
  while (!a.empty() && zdeg(a) >= db) {
    int k = zdeg(a) - db;
    mpz_class la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + k] -= la * b[i];
    ztrim(a);
    --e;
  }
  if (e > 0 && !a.empty()) {
    mpz_class f = zpow(lb, e);
    for (auto& c : a) c *= f;
  }
  return a;
}

ZPoly subresultant_gcd(ZPoly a, ZPoly b) {
  a = zprimitive(std::move(a));
  b = zprimitive(std::move(b));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (zdeg(a) < zdeg(b)) std::swap(a, b);
  mpz_class g(1), h(1);
  for (;;) {
    int delta = zdeg(a) - zdeg(b);
    ZPoly r = zprem(a, b);
    if (r.empty()) return zprimitive(std::move(b));
    if (zdeg(r) == 0) return ZPoly{mpz_class(1)};
    a = std::move(b);
    b = std::move(r);
    mpz_class divisor = g * zpow(h, delta);
    zdivide_scalar(b, divisor);
    g = a.back();
    // h = h^(1-delta) * g^delta
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = zpow(g, delta) / zpow(h, delta - 1);
    }
  }
}

}  // namespace

UPoly UPoly::gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  auto to_z = [](const UPoly& p) {
    mpz_class l(1);
    for (const auto& r : p.coeffs()) l = lcm(l, r.den());
    ZPoly z(p.coeffs().size());
    for (size_t i = 0; i < z.size(); ++i) {
      const Rat& r = p.coeffs()[i];
      z[i] = r.num() * (l / r.den());
    }
    return z;
  };
  ZPoly g = subresultant_gcd(to_z(a), to_z(b));
  std::vector<Rat> c(g.size());
  for (size_t i = 0; i < g.size(); ++i) c[i] = Rat(g[i]);
  return UPoly(std::move(c)).monic();
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rat c = coeff(k);
    if (c.is_zero()) continue;
    const Rat a = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << a.to_string();
    } else {
      if (!a.is_one()) os << a.to_string() << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

}  // namespace lapcas
