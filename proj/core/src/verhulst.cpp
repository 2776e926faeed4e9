#include "lapcas/verhulst.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lapcas::verhulst {

namespace {

// Exact solution of dx/dtau = x + c x^2 from x0 over dtau >= 0 (c < 0 here,
// so the denominator never vanishes for x0 > 0).
double frozen_flow(double x0, double c, double dtau) {
  const double em = std::expm1(dtau);
  return x0 * std::exp(dtau) / (1.0 - c * x0 * em);
}

double clamp01(double u) { return std::min(1.0, std::max(0.0, u)); }

}  // namespace

VerhulstParams VerhulstParams::checked(double p2, double q2) {
  if (!(q2 > 0.0)) throw std::invalid_argument("q2 must be positive");
  if (!(p2 < 0.0)) throw std::invalid_argument("p2 must be negative");
  if (!(-p2 > q2)) throw std::invalid_argument("|p2| must exceed q2 (both branches decaying)");
  return VerhulstParams{p2, q2};
}

// ---------------------------------------------------------------------------
// InitialDensity

InitialDensity InitialDensity::delta(double x_star) {
  if (!(x_star > 0.0)) throw std::invalid_argument("delta position must be positive");
  InitialDensity d;
  d.kind_ = Kind::delta;
  d.support_ = {x_star, x_star};
  d.x_star_ = x_star;
  d.mass_below_ = [x_star](double z) { return z >= x_star ? 1.0 : 0.0; };
  d.weighted_mass_below_ = [x_star](double z) { return z >= x_star ? 1.0 / x_star : 0.0; };
  d.quantile_ = [x_star](double) { return x_star; };
  return d;
}

InitialDensity InitialDensity::uniform(double a, double b) {
  if (!(a > 0.0) || !(b > a)) {
    throw std::invalid_argument("uniform support must satisfy 0 < a < b");
  }
  InitialDensity d;
  d.kind_ = Kind::analytic;
  d.support_ = {a, b};
  const double inv_len = 1.0 / (b - a);
  d.pdf_ = [a, b, inv_len](double x) { return (x > a && x < b) ? inv_len : 0.0; };
  d.mass_below_ = [a, b, inv_len](double z) {
    return clamp01((std::min(z, b) - a) * inv_len);
  };
  d.weighted_mass_below_ = [a, b, inv_len](double z) {
    if (z <= a) return 0.0;
    return std::log(std::min(z, b) / a) * inv_len;
  };
  d.quantile_ = [a, b](double u) { return a + clamp01(u) * (b - a); };
  return d;
}

InitialDensity InitialDensity::bump(double a, double b) {
  if (!(a > 0.0) || !(b > a)) {
    throw std::invalid_argument("bump support must satisfy 0 < a < b");
  }
  // f(x) = C exp(-1/(1-t^2)), t = (2x - a - b)/(b - a); C fixes unit mass.
  auto shape = [](double t) {
    const double s = 1.0 - t * t;
    return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
  };
  const double norm = integrate([&](double t) { return shape(t); }, -1.0, 1.0);
  const double scale = 2.0 / ((b - a) * norm);
  InitialDensity d;
  d.kind_ = Kind::analytic;
  d.support_ = {a, b};
  d.pdf_ = [a, b, shape, scale](double x) {
    if (x <= a || x >= b) return 0.0;
    return scale * shape((2.0 * x - a - b) / (b - a));
  };
  d.build_quantile_table();
  return d;
}

InitialDensity InitialDensity::analytic(std::function<double(double)> pdf, Interval support) {
  if (!pdf) throw std::invalid_argument("analytic density needs a callable pdf");
  if (!(support.lo > 0.0) || !(support.hi >= support.lo)) {
    throw std::invalid_argument("support must satisfy 0 < lo <= hi");
  }
  InitialDensity d;
  d.kind_ = Kind::analytic;
  d.support_ = support;
  d.pdf_ = std::move(pdf);
  d.build_quantile_table();
  return d;
}

InitialDensity InitialDensity::grid(std::vector<double> x, std::vector<double> w) {
  if (x.size() < 2 || x.size() != w.size()) {
    throw std::invalid_argument("grid density needs matching x/w vectors with >= 2 nodes");
  }
  if (!(x.front() > 0.0)) throw std::invalid_argument("grid support must stay positive");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (!(x[i] < x[i + 1])) throw std::invalid_argument("grid abscissae must increase strictly");
  }
  for (double wi : w) {
    if (!(wi >= 0.0)) throw std::invalid_argument("grid density values must be nonnegative");
  }
  const std::size_t n = x.size();
  // Exact cumulative integrals of the piecewise-linear interpolant: the plain
  // mass by the trapezoid rule, the 1/s-weighted mass from
  // int (alpha/s + beta) ds = alpha ln s + beta s on each segment.
  auto cum = std::make_shared<std::vector<double>>(n, 0.0);
  auto wcum = std::make_shared<std::vector<double>>(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = x[i + 1] - x[i];
    const double beta = (w[i + 1] - w[i]) / dx;
    const double alpha = w[i] - beta * x[i];
    (*cum)[i + 1] = (*cum)[i] + 0.5 * (w[i] + w[i + 1]) * dx;
    (*wcum)[i + 1] = (*wcum)[i] + alpha * std::log(x[i + 1] / x[i]) + beta * dx;
  }
  auto xs = std::make_shared<std::vector<double>>(std::move(x));
  auto ws = std::make_shared<std::vector<double>>(std::move(w));
  auto segment = [xs](double z) {
    // Index i with (*xs)[i] <= z < (*xs)[i+1], clamped to valid segments.
    const auto it = std::upper_bound(xs->begin(), xs->end(), z);
    const std::size_t i = static_cast<std::size_t>(it - xs->begin());
    return std::min(xs->size() - 2, i == 0 ? std::size_t{0} : i - 1);
  };
  InitialDensity d;
  d.kind_ = Kind::grid;
  d.support_ = {xs->front(), xs->back()};
  d.pdf_ = [xs, ws, segment](double z) {
    if (z < xs->front() || z > xs->back()) return 0.0;
    const std::size_t i = segment(z);
    const double t = (z - (*xs)[i]) / ((*xs)[i + 1] - (*xs)[i]);
    return (1.0 - t) * (*ws)[i] + t * (*ws)[i + 1];
  };
  d.mass_below_ = [xs, ws, cum, segment, pdf = d.pdf_](double z) {
    if (z <= xs->front()) return 0.0;
    if (z >= xs->back()) return cum->back();
    const std::size_t i = segment(z);
    return (*cum)[i] + 0.5 * ((*ws)[i] + pdf(z)) * (z - (*xs)[i]);
  };
  d.weighted_mass_below_ = [xs, ws, wcum, segment](double z) {
    if (z <= xs->front()) return 0.0;
    if (z >= xs->back()) return wcum->back();
    const std::size_t i = segment(z);
    const double dx = (*xs)[i + 1] - (*xs)[i];
    const double beta = ((*ws)[i + 1] - (*ws)[i]) / dx;
    const double alpha = (*ws)[i] - beta * (*xs)[i];
    return (*wcum)[i] + alpha * std::log(z / (*xs)[i]) + beta * (z - (*xs)[i]);
  };
  d.build_quantile_table();
  return d;
}

double InitialDensity::x_star() const {
  if (kind_ != Kind::delta) throw std::logic_error("x_star is defined for delta data only");
  return x_star_;
}

double InitialDensity::pdf(double x) const {
  if (kind_ == Kind::delta) {
    throw std::domain_error("delta initial data has no density; use solve_delta");
  }
  if (x <= support_.lo || x >= support_.hi) return 0.0;
  return pdf_(x);
}

double InitialDensity::mass_below(double z) const {
  if (mass_below_) return mass_below_(z);
  if (z <= support_.lo) return 0.0;
  return integrate(pdf_, support_.lo, std::min(z, support_.hi));
}

double InitialDensity::weighted_mass_below(double z) const {
  if (weighted_mass_below_) return weighted_mass_below_(z);
  if (z <= support_.lo) return 0.0;
  return integrate([this](double s) { return pdf_(s) / s; }, support_.lo,
                   std::min(z, support_.hi));
}

void InitialDensity::build_quantile_table() {
  // Simpson cumulative over a uniform grid; the inverse is a linear
  // interpolation, plenty below the Monte Carlo resolution.
  constexpr std::size_t kIntervals = 4096;
  const double lo = support_.lo, hi = support_.hi, h = (hi - lo) / kIntervals;
  auto table = std::make_shared<std::vector<double>>(kIntervals + 1, 0.0);
  for (std::size_t i = 0; i < kIntervals; ++i) {
    const double xl = lo + i * h;
    const double fl = pdf_(xl), fm = pdf_(xl + 0.5 * h), fr = pdf_(xl + h);
    (*table)[i + 1] = (*table)[i] + (h / 6.0) * (fl + 4.0 * fm + fr);
  }
  cdf_table_ = table;
  const double total = table->back();
  quantile_ = [table, lo, h, total](double u) {
    if (!(total > 0.0)) throw std::domain_error("cannot sample a density with zero mass");
    const double target = clamp01(u) * total;
    const auto it = std::lower_bound(table->begin(), table->end(), target);
    if (it == table->begin()) return lo;
    const std::size_t i = static_cast<std::size_t>(it - table->begin()) - 1;
    const double c0 = (*table)[i], c1 = (*table)[i + 1];
    const double t = c1 > c0 ? (target - c0) / (c1 - c0) : 1.0;
    return lo + (static_cast<double>(i) + t) * h;
  };
}

double InitialDensity::quantile(double u) const { return quantile_(clamp01(u)); }

// ---------------------------------------------------------------------------
// Characteristic geometry

CharVars char_vars(double x, double tau, const VerhulstParams& pr) {
  const double dp = 1.0 + pr.c_plus() * x;
  const double dm = 1.0 + pr.c_minus() * x;
  if (!(x > 0.0) || !(dp > 0.0) || !(dm > 0.0)) {
    throw std::domain_error(
        "characteristic variable undefined; use backward_map");
  }
  return {-tau + std::log(x / dp), -tau + std::log(x / dm)};
}

BackwardPair backward_map(double x, double tau, const VerhulstParams& pr) {
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  const double et = std::exp(tau);
  const double em = et - 1.0;
  BackwardPair out;
  const double den_p = et + pr.c_plus() * x * em;
  const double den_m = et + pr.c_minus() * x * em;
  out.xhat = den_p > 0.0 ? BackwardCoord{x / den_p, false} : BackwardCoord{0.0, true};
  out.yhat = den_m > 0.0 ? BackwardCoord{x / den_m, false} : BackwardCoord{0.0, true};
  return out;
}

// ---------------------------------------------------------------------------
// General solution and the Cauchy fit

SolutionPoint general_solution(const CharFn& F, const CharFn& G, double x, double tau,
                               const VerhulstParams& pr) {
  const CharVars cv = char_vars(x, tau, pr);
  const double f = F.f(cv.xbar), fp = F.df(cv.xbar);
  const double g = G.f(cv.ybar), gp = G.df(cv.ybar);
  const double q2 = pr.q2;
  SolutionPoint s;
  s.W = q2 / (x * x) * (fp - f + gp - g);
  s.W1 = (-q2 * x * gp + (1.0 + pr.p2 * x) * g + q2 * x * fp + (1.0 + pr.p2 * x) * f) /
         (x * x * x);
  return s;
}

FittedPair fit_cauchy(const InitialDensity& w0, const VerhulstParams& pr) {
  if (w0.kind() == InitialDensity::Kind::delta) {
    throw std::invalid_argument("delta initial data: use solve_delta");
  }
  const double q2 = pr.q2;
  // Invert the tau = 0 characteristic variables: xi = e^v / (1 - c e^v).
  auto make_branch = [&, w0](double c, double i2_sign) {
    CharFn fn;
    fn.f = [w0, q2, c, i2_sign](double v) {
      const double e = std::exp(v);
      const double xi = e / (1.0 - c * e);
      const double i1 = w0.mass_below(xi), i2 = w0.weighted_mass_below(xi);
      const double num = i2_sign * xi * i2 + (q2 * xi - i2_sign) * i1;
      return num / (2.0 * q2 * q2 * (1.0 + c * xi));
    };
    fn.df = [w0, q2, c, i2_sign](double v) {
      const double e = std::exp(v);
      const double xi = e / (1.0 - c * e);
      const double i1 = w0.mass_below(xi), i2 = w0.weighted_mass_below(xi);
      const double rho = w0.pdf(xi);
      const double num = i2_sign * xi * i2 + (q2 * xi - i2_sign) * i1;
      const double dnum = i2_sign * i2 + q2 * i1 + q2 * xi * rho;
      const double den = 2.0 * q2 * q2 * (1.0 + c * xi);
      const double dden = 2.0 * q2 * q2 * c;
      // chain rule through dxi/dv = xi (1 + c xi)
      return (dnum * den - num * dden) / (den * den) * xi * (1.0 + c * xi);
    };
    return fn;
  };
  FittedPair out;
  out.F = make_branch(pr.c_plus(), -1.0);
  out.G = make_branch(pr.c_minus(), +1.0);
  return out;
}

SolutionPoint solve(const InitialDensity& w0, double x, double tau, const VerhulstParams& pr) {
  if (w0.kind() == InitialDensity::Kind::delta) {
    throw std::invalid_argument("delta initial data: use solve_delta");
  }
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  const double q2 = pr.q2;
  const double et = std::exp(tau), emt = std::exp(-tau);
  const double em = et - 1.0;
  const double den_p = et + pr.c_plus() * x * em;
  const double den_m = et + pr.c_minus() * x * em;

  const bool beyond_p = !(den_p > 0.0);
  const bool beyond_m = !(den_m > 0.0);
  const double xhat = beyond_p ? 0.0 : x / den_p;
  const double yhat = beyond_m ? 0.0 : x / den_m;

  const double i1x = beyond_p ? w0.total_mass() : w0.mass_below(xhat);
  const double i1y = beyond_m ? w0.total_mass() : w0.mass_below(yhat);
  const double i2x = beyond_p ? w0.total_weighted_mass() : w0.weighted_mass_below(xhat);
  const double i2y = beyond_m ? w0.total_weighted_mass() : w0.weighted_mass_below(yhat);
  const double w0x = beyond_p ? 0.0 : w0.pdf(xhat);
  const double w0y = beyond_m ? 0.0 : w0.pdf(yhat);

  const double d1 = i1y - i1x;
  const double d2 = i2y - i2x;

  SolutionPoint s;
  s.W = d1 / (2.0 * q2 * x * x);
  if (!beyond_m) s.W += w0y / (2.0 * den_m * den_m);
  if (!beyond_p) s.W += w0x / (2.0 * den_p * den_p);

  s.W1 = d1 * ((emt - 1.0) * pr.p2 * x - 1.0) / (2.0 * q2 * q2 * x * x * x) +
         emt * d2 / (2.0 * q2 * q2 * x * x);
  if (!beyond_m) s.W1 -= w0y / (2.0 * den_m * den_m);
  if (!beyond_p) s.W1 += w0x / (2.0 * den_p * den_p);
  return s;
}

// ---------------------------------------------------------------------------
// Mixed distributions

MixedDistribution1D::MixedDistribution1D(std::vector<Atom> atoms,
                                         std::function<double(double)> density,
                                         Interval support,
                                         std::function<double(double)> continuous_cdf)
    : atoms_(std::move(atoms)),
      density_(std::move(density)),
      support_(support),
      continuous_cdf_(std::move(continuous_cdf)) {
  if (!(support_.hi >= support_.lo)) throw std::invalid_argument("empty support interval");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (!(atoms_[i].mass > 0.0)) throw std::invalid_argument("atom masses must be positive");
    if (i > 0 && !(atoms_[i - 1].x < atoms_[i].x)) {
      throw std::invalid_argument("atoms must be strictly increasing in position");
    }
  }
  if (!density_) density_ = [](double) { return 0.0; };
}

double MixedDistribution1D::density(double x) const {
  return support_.contains(x) ? density_(x) : 0.0;
}

double MixedDistribution1D::atom_mass_at(double x) const {
  for (const Atom& a : atoms_) {
    if (a.x == x) return a.mass;
  }
  return 0.0;
}

double MixedDistribution1D::continuous_mass() const {
  if (continuous_cdf_) return continuous_cdf_(support_.hi);
  if (!(support_.hi > support_.lo)) return 0.0;
  return integrate(density_, support_.lo, support_.hi);
}

double MixedDistribution1D::total_mass() const {
  double m = continuous_mass();
  for (const Atom& a : atoms_) m += a.mass;
  return m;
}

double MixedDistribution1D::cdf(double x) const {
  double c = 0.0;
  for (const Atom& a : atoms_) {
    if (a.x <= x) c += a.mass;
  }
  if (x > support_.lo && support_.hi > support_.lo) {
    if (continuous_cdf_) {
      c += continuous_cdf_(std::min(x, support_.hi));
    } else {
      c += integrate(density_, support_.lo, std::min(x, support_.hi));
    }
  }
  return c;
}

double MixedDistribution1D::moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment order must be nonnegative");
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.mass * std::pow(a.x, k);
  if (support_.hi > support_.lo) {
    m += integrate([this, k](double x) { return std::pow(x, k) * density_(x); }, support_.lo,
                   support_.hi);
  }
  return m;
}

MixedDistribution1D solve_delta(double x_star, double tau, const VerhulstParams& pr) {
  if (!(x_star > 0.0)) throw std::invalid_argument("delta position must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  if (tau == 0.0) {
    return MixedDistribution1D({{x_star, 1.0}}, {}, {x_star, x_star});
  }
  const double x_lo = frozen_flow(x_star, pr.c_minus(), tau);
  const double x_hi = frozen_flow(x_star, pr.c_plus(), tau);
  const double atom_mass = 0.5 * std::exp(-tau);
  const double q2 = pr.q2;
  auto dens = [q2, x_lo, x_hi](double x) {
    return (x > x_lo && x < x_hi) ? 1.0 / (2.0 * q2 * x * x) : 0.0;
  };
  const double cont_total = -std::expm1(-tau);  // 1 - e^-tau, exactly the density mass
  auto ccdf = [q2, x_lo, x_hi, cont_total](double x) {
    if (x <= x_lo) return 0.0;
    if (x >= x_hi) return cont_total;
    return (1.0 / x_lo - 1.0 / x) / (2.0 * q2);
  };
  return MixedDistribution1D({{x_lo, atom_mass}, {x_hi, atom_mass}}, dens, {x_lo, x_hi}, ccdf);
}

SolutionPoint delta_continuous(double x_star, double x, double tau, const VerhulstParams& pr) {
  if (!(x_star > 0.0)) throw std::invalid_argument("delta position must be positive");
  if (!(x > 0.0)) throw std::domain_error("x must be positive");
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  if (tau == 0.0) return {0.0, 0.0};
  const double x_lo = frozen_flow(x_star, pr.c_minus(), tau);
  const double x_hi = frozen_flow(x_star, pr.c_plus(), tau);
  if (!(x > x_lo && x < x_hi)) return {0.0, 0.0};
  const double q2 = pr.q2, emt = std::exp(-tau);
  SolutionPoint s;
  s.W = 1.0 / (2.0 * q2 * x * x);
  s.W1 = ((emt - 1.0) * pr.p2 * x - 1.0) / (2.0 * q2 * q2 * x * x * x) +
         emt / (2.0 * q2 * q2 * x * x * x_star);
  return s;
}

MixedDistribution1D stationary(const VerhulstParams& pr) {
  const double lo = pr.inner_equilibrium();
  const double hi = pr.outer_equilibrium();
  const double q2 = pr.q2;
  auto dens = [q2, lo, hi](double x) {
    return (x > lo && x < hi) ? 1.0 / (2.0 * q2 * x * x) : 0.0;
  };
  auto ccdf = [q2, lo, hi](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return (1.0 / lo - 1.0 / x) / (2.0 * q2);
  };
  return MixedDistribution1D({}, dens, {lo, hi}, ccdf);
}

double cdf(const MixedDistribution1D& d, double x) { return d.cdf(x); }

double moment(const MixedDistribution1D& d, int k) { return d.moment(k); }

MixedDistribution1D solve_distribution(const InitialDensity& w0, double tau,
                                       const VerhulstParams& pr) {
  if (w0.kind() == InitialDensity::Kind::delta) {
    return solve_delta(w0.x_star(), tau, pr);
  }
  const double lo = frozen_flow(w0.support().lo, pr.c_minus(), tau);
  const double hi = frozen_flow(w0.support().hi, pr.c_plus(), tau);
  auto dens = [w0, tau, pr](double x) { return solve(w0, x, tau, pr).W; };
  // Tabulated cumulative so the CDF is cheap inside KS scans.
  constexpr std::size_t kIntervals = 4096;
  const double h = (hi - lo) / kIntervals;
  auto table = std::make_shared<std::vector<double>>(kIntervals + 1, 0.0);
  for (std::size_t i = 0; i < kIntervals; ++i) {
    const double xl = lo + i * h;
    const double fl = dens(xl), fm = dens(xl + 0.5 * h), fr = dens(xl + h);
    (*table)[i + 1] = (*table)[i] + (h / 6.0) * (fl + 4.0 * fm + fr);
  }
  auto ccdf = [table, lo, h](double x) {
    const double t = (x - lo) / h;
    if (t <= 0.0) return 0.0;
    if (t >= static_cast<double>(table->size() - 1)) return table->back();
    const std::size_t i = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(i);
    return (*table)[i] + frac * ((*table)[i + 1] - (*table)[i]);
  };
  return MixedDistribution1D({}, dens, {lo, hi}, ccdf);
}

}  // namespace lapcas::verhulst
