#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "lapcas/quadrature.hpp"

namespace lapcas::verhulst {

// Dimensionless logistic model driven by symmetric dichotomous noise:
//   dx/dtau = x + (p2 + a q2) x^2,  a = +/-1 switching at unit rate,
// obtained from user-scale parameters by tau = nu t, p2 -> p2/p1, q2 -> q2/p1
// (the closed-form solution requires nu == p1).
struct VerhulstParams {
  double p2;  // < 0
  double q2;  // > 0, with |p2| > q2

  static VerhulstParams checked(double p2, double q2);

  double c_plus() const { return p2 + q2; }    // fast branch, a = +1
  double c_minus() const { return p2 - q2; }   // slow branch, a = -1
  // Stable equilibria of the two frozen fields; the stationary density lives
  // between them.
  double inner_equilibrium() const { return -1.0 / c_minus(); }  // 1/(|p2|+q2)
  double outer_equilibrium() const { return -1.0 / c_plus(); }   // 1/(|p2|-q2)
};

struct Interval {
  double lo = 0.0, hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

// Initial probability density W0.  Continuous kinds expose the integrals the
// closed-form solution needs:
//   mass_below(z)          I1(z) = int_{lo}^{z} W0
//   weighted_mass_below(z) I2(z) = int_{lo}^{z} W0(s)/s ds
// Supports must stay away from x = 0 (the 1/s weight) and the delta kind is
// handled by solve_delta, never by quadrature.
class InitialDensity {
public:
  enum class Kind { delta, grid, analytic };

  static InitialDensity delta(double x_star);
  static InitialDensity uniform(double a, double b);
  // Normalized C-infinity bump supported on (a, b).
  static InitialDensity bump(double a, double b);
  static InitialDensity analytic(std::function<double(double)> pdf, Interval support);
  // Piecewise-linear density through (x[i], w[i]); x strictly increasing.
  static InitialDensity grid(std::vector<double> x, std::vector<double> w);

  Kind kind() const { return kind_; }
  Interval support() const { return support_; }
  double x_star() const;       // delta only
  double pdf(double x) const;  // 0 outside support; throws for delta

  double mass_below(double z) const;
  double weighted_mass_below(double z) const;
  double total_mass() const { return mass_below(support_.hi); }
  double total_weighted_mass() const { return weighted_mass_below(support_.hi); }

  // Inverse CDF (u in [0,1]), used by the Monte Carlo sampler.
  double quantile(double u) const;

private:
  InitialDensity() = default;
  Kind kind_ = Kind::analytic;
  Interval support_{};
  double x_star_ = 0.0;
  std::function<double(double)> pdf_;
  // Closed forms when available (delta/uniform/grid); otherwise quadrature.
  std::function<double(double)> mass_below_, weighted_mass_below_, quantile_;
  std::shared_ptr<std::vector<double>> cdf_table_;  // built at construction when needed
  void build_quantile_table();
};

// Characteristic variables (tau >= 0, 0 < x < inner equilibrium):
//   xbar = -tau + ln(x / (1 + (p2+q2) x)),  ybar analogous with p2-q2.
struct CharVars {
  double xbar, ybar;
};
CharVars char_vars(double x, double tau, const VerhulstParams& pr);

// Feet of the two backward characteristics through (x, tau).  A coordinate
// whose denominator is <= 0 left the domain through x = +infinity; it is
// tagged beyond_infinity and consumers use the full-mass limits of I1/I2.
struct BackwardCoord {
  double x = 0.0;
  bool beyond_infinity = false;
};
struct BackwardPair {
  BackwardCoord xhat;  // along the fast (p2+q2) branch
  BackwardCoord yhat;  // along the slow (p2-q2) branch
};
BackwardPair backward_map(double x, double tau, const VerhulstParams& pr);

// A function of one characteristic variable together with its derivative.
struct CharFn {
  std::function<double(double)> f, df;
};

struct SolutionPoint {
  double W, W1;
};

// General solution of the characteristic system from arbitrary C^1 data
// (F along xbar, G along ybar):
//   W  = q2/x^2 [F' - F + G' - G]
//   W1 = 1/x^3 [-q2 x G' + (1+p2 x) G + q2 x F' + (1+p2 x) F].
SolutionPoint general_solution(const CharFn& F, const CharFn& G, double x, double tau,
                               const VerhulstParams& pr);

struct FittedPair {
  CharFn F, G;
};
// Cauchy fit: F, G realizing W(.,0) = w0 and W1(.,0) = 0.
FittedPair fit_cauchy(const InitialDensity& w0, const VerhulstParams& pr);

// Closed-form solution for continuous initial data (x > 0, tau >= 0).
SolutionPoint solve(const InitialDensity& w0, double x, double tau, const VerhulstParams& pr);

struct Atom {
  double x, mass;
};

// Probability distribution with finitely many atoms plus a density.
class MixedDistribution1D {
public:
  MixedDistribution1D(std::vector<Atom> atoms, std::function<double(double)> density,
                      Interval support, std::function<double(double)> continuous_cdf = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  Interval support() const { return support_; }
  double density(double x) const;
  double atom_mass_at(double x) const;
  double continuous_mass() const;
  double total_mass() const;
  double cdf(double x) const;  // right-continuous
  double moment(int k) const;

private:
  std::vector<Atom> atoms_;
  std::function<double(double)> density_;
  Interval support_;
  std::function<double(double)> continuous_cdf_;
};

// Exact solution for W0 = delta(x - x_star): two ballistic atoms of mass
// e^-tau/2 at the feet of the frozen-field flows plus the 1/(2 q2 x^2)
// density between them.  At tau = 0 the atoms coincide: single atom, mass 1.
MixedDistribution1D solve_delta(double x_star, double tau, const VerhulstParams& pr);

// Continuous part of (W, W1) for delta initial data (0 between/outside the
// atoms' interval endpoints as appropriate).
SolutionPoint delta_continuous(double x_star, double x, double tau, const VerhulstParams& pr);

// Long-time limit: density 1/(2 q2 x^2) between the equilibria, no atoms.
MixedDistribution1D stationary(const VerhulstParams& pr);

double cdf(const MixedDistribution1D& d, double x);
double moment(const MixedDistribution1D& d, int k);

// Wrap solve() as a distribution at fixed tau (continuous initial data).
MixedDistribution1D solve_distribution(const InitialDensity& w0, double tau,
                                       const VerhulstParams& pr);

}  // namespace lapcas::verhulst
