#include "lapcas/mpoly3.hpp"

#include <sstream>
#include <stdexcept>

namespace lapcas {

namespace {
void check_axis(int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis out of range");
}
}  // namespace

MPoly3 MPoly3::var(int axis) {
  check_axis(axis);
  Exponents e{0, 0, 0};
  e[axis] = 1;
  return monomial(Rat(1), e);
}

MPoly3 MPoly3::monomial(const Rat& c, const Exponents& e) {
  for (int k : e)
    if (k < 0) throw std::invalid_argument("negative exponent");
  MPoly3 p;
  p.add_term(e, c);
  return p;
}

void MPoly3::add_term(const Exponents& e, const Rat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MPoly3::degree(int axis) const {
  check_axis(axis);
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[axis]);
  return d;
}

Rat MPoly3::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

MPoly3 MPoly3::operator-() const {
  MPoly3 r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly3& MPoly3::operator+=(const MPoly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly3& MPoly3::operator-=(const MPoly3& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly3 operator*(const MPoly3& a, const MPoly3& b) {
  MPoly3 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

MPoly3 operator*(const Rat& s, const MPoly3& p) {
  MPoly3 r;
  for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
  return r;
}

MPoly3 MPoly3::partial_derivative(int axis) const {
  check_axis(axis);
  MPoly3 r;
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    Exponents d = e;
    --d[axis];
    r.add_term(d, Rat(static_cast<long>(e[axis])) * c);
  }
  return r;
}

MPoly3 MPoly3::antiderivative(int axis) const {
  check_axis(axis);
  MPoly3 r;
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    ++d[axis];
    r.add_term(d, c / Rat(static_cast<long>(d[axis])));
  }
  return r;
}

MPoly3 MPoly3::substitute(const std::array<MPoly3, 3>& g) const {
  // Cache powers of each image; degrees stay small in practice.
  std::array<std::vector<MPoly3>, 3> pows;
  for (int a = 0; a < 3; ++a) pows[a].push_back(MPoly3(Rat(1)));
  auto power = [&](int a, int k) -> const MPoly3& {
    while (static_cast<int>(pows[a].size()) <= k) pows[a].push_back(pows[a].back() * g[a]);
    return pows[a][k];
  };
  MPoly3 r;
  for (const auto& [e, c] : terms_) {
    MPoly3 t = c * power(0, e[0]);
    if (e[1]) t = t * power(1, e[1]);
    if (e[2]) t = t * power(2, e[2]);
    r += t;
  }
  return r;
}

Rat MPoly3::evaluate(const Rat& x, const Rat& y, const Rat& z) const {
  Rat acc(0);
  for (const auto& [e, c] : terms_)
    acc += c * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
  return acc;
}

std::string MPoly3::to_string(const std::array<std::string, 3>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Iterate in reverse so higher exponent triples print first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const Rat a = c.abs();
    if (first) {
      if (c.sign() < 0) os << '-';
      first = false;
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    const bool has_var = e[0] || e[1] || e[2];
    if (!has_var) {
      os << a.to_string();
      continue;
    }
    bool printed = false;
    if (!a.is_one()) {
      os << a.to_string();
      printed = true;
    }
    for (int ax = 0; ax < 3; ++ax) {
      if (!e[ax]) continue;
      if (printed) os << '*';
      os << names[ax];
      if (e[ax] > 1) os << '^' << e[ax];
      printed = true;
    }
  }
  return os.str();
}

}  // namespace lapcas
