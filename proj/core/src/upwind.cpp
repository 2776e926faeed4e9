#include "lapcas/upwind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lapcas::pde {

namespace {

// Characteristic speeds at a point: c1 = p - q, c2 = p + q with
// p = x + p2 x^2, q = q2 x^2 (dimensionless form, p1 = 1).
double speed1(double x, const verhulst::VerhulstParams& pr) {
  return x + (pr.p2 - pr.q2) * x * x;
}
double speed2(double x, const verhulst::VerhulstParams& pr) {
  return x + (pr.p2 + pr.q2) * x * x;
}

struct FaceSpeeds {
  std::vector<double> c1, c2;
  double max_abs = 0.0;
};

FaceSpeeds face_speeds(const Grid1D& g, const verhulst::VerhulstParams& pr) {
  FaceSpeeds fs;
  fs.c1.resize(g.cells + 1);
  fs.c2.resize(g.cells + 1);
  for (std::size_t i = 0; i <= g.cells; ++i) {
    const double x = g.face(i);
    fs.c1[i] = speed1(x, pr);
    fs.c2[i] = speed2(x, pr);
    fs.max_abs = std::max({fs.max_abs, std::abs(fs.c1[i]), std::abs(fs.c2[i])});
  }
  return fs;
}

void check_grid(const Grid1D& g) {
  if (g.cells < 2) throw std::invalid_argument("grid needs at least two cells");
  if (!(g.x_hi > g.x_lo)) throw std::invalid_argument("grid needs x_hi > x_lo");
  if (!(g.x_lo >= 0.0)) throw std::invalid_argument("grid must not extend below x = 0");
}

PdeGridState step_impl(const PdeGridState& s, double dtau, const Grid1D& g,
                       const PdeConfig& cfg, const FaceSpeeds& fs) {
  const std::size_t n = g.cells;
  const double dx = g.dx();
  if (!(dtau > 0.0)) throw std::invalid_argument("step size must be positive");
  if (dtau * fs.max_abs > cfg.cfl * dx * (1.0 + 1e-12)) {
    throw std::invalid_argument("step size violates the CFL bound");
  }
  if (dtau * cfg.nu_ratio > 0.5 * (1.0 + 1e-12)) {
    throw std::invalid_argument("step size violates the source stability bound");
  }

  std::vector<double> u1(n), u2(n);
  for (std::size_t i = 0; i < n; ++i) {
    u1[i] = s.W[i] - s.W1[i];
    u2[i] = s.W[i] + s.W1[i];
  }

  // Upwind fluxes at interior faces; boundary faces carry zero flux, so the
  // total of u1 + u2 is conserved to rounding.
  std::vector<double> f1(n + 1, 0.0), f2(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    f1[i] = fs.c1[i] >= 0.0 ? fs.c1[i] * u1[i - 1] : fs.c1[i] * u1[i];
    f2[i] = fs.c2[i] >= 0.0 ? fs.c2[i] * u2[i - 1] : fs.c2[i] * u2[i];
  }

  PdeGridState out;
  out.tau = s.tau + dtau;
  out.W.resize(n);
  out.W1.resize(n);
  const double nu = cfg.nu_ratio;
  for (std::size_t i = 0; i < n; ++i) {
    const double v1 = u1[i] - dtau / dx * (f1[i + 1] - f1[i]) + dtau * nu * (u2[i] - u1[i]);
    const double v2 = u2[i] - dtau / dx * (f2[i + 1] - f2[i]) + dtau * nu * (u1[i] - u2[i]);
    out.W[i] = 0.5 * (v1 + v2);
    out.W1[i] = 0.5 * (v2 - v1);
  }
  return out;
}

}  // namespace

double default_x_hi(const verhulst::VerhulstParams& pr) {
  return 1.5 * pr.outer_equilibrium();
}

PdeGridState project(const verhulst::InitialDensity& w0, const Grid1D& g) {
  check_grid(g);
  PdeGridState s;
  s.tau = 0.0;
  s.W.resize(g.cells);
  s.W1.assign(g.cells, 0.0);
  double prev = w0.mass_below(g.face(0));
  for (std::size_t i = 0; i < g.cells; ++i) {
    const double next = w0.mass_below(g.face(i + 1));
    s.W[i] = (next - prev) / g.dx();
    prev = next;
  }
  return s;
}

PdeGridState step(const PdeGridState& s, double dtau, const Grid1D& g, const PdeConfig& cfg) {
  check_grid(g);
  if (s.W.size() != g.cells || s.W1.size() != g.cells) {
    throw std::invalid_argument("state size does not match the grid");
  }
  return step_impl(s, dtau, g, cfg, face_speeds(g, cfg.params));
}

std::vector<PdeGridState> solve(const verhulst::InitialDensity& w0, const Grid1D& g,
                                const PdeConfig& cfg, const std::vector<double>& checkpoints,
                                Diagnostics* diag) {
  check_grid(g);
  if (!(cfg.cfl > 0.0) || !(cfg.cfl <= 1.0)) {
    throw std::invalid_argument("cfl must lie in (0, 1]");
  }
  if (!(cfg.nu_ratio >= 0.0)) throw std::invalid_argument("nu_ratio must be nonnegative");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (!(checkpoints[i] >= 0.0)) throw std::invalid_argument("checkpoints must be nonnegative");
    if (i > 0 && !(checkpoints[i - 1] < checkpoints[i])) {
      throw std::invalid_argument("checkpoints must increase strictly");
    }
  }

  const FaceSpeeds fs = face_speeds(g, cfg.params);
  double dt_max = cfg.cfl * g.dx() / std::max(fs.max_abs, 1e-300);
  if (cfg.nu_ratio > 0.0) dt_max = std::min(dt_max, 0.45 / cfg.nu_ratio);

  PdeGridState state = project(w0, g);
  Diagnostics d;
  d.mass_initial = total_mass(state, g);
  d.min_W = *std::min_element(state.W.begin(), state.W.end());

  std::vector<PdeGridState> out;
  out.reserve(checkpoints.size());
  for (double tc : checkpoints) {
    const double span = tc - state.tau;
    if (span > 0.0) {
      const auto nsteps = static_cast<std::size_t>(std::ceil(span / dt_max - 1e-12));
      const double dtau = span / static_cast<double>(std::max<std::size_t>(1, nsteps));
      for (std::size_t k = 0; k < std::max<std::size_t>(1, nsteps); ++k) {
        state = step_impl(state, dtau, g, cfg, fs);
        ++d.steps;
      }
      state.tau = tc;  // remove accumulated rounding in the time stamp
    }
    d.min_W = std::min(d.min_W, *std::min_element(state.W.begin(), state.W.end()));
    d.max_abs_mass_drift =
        std::max(d.max_abs_mass_drift, std::abs(total_mass(state, g) - d.mass_initial));
    out.push_back(state);
  }
  d.mass_final = out.empty() ? d.mass_initial : total_mass(out.back(), g);
  if (diag) *diag = d;
  return out;
}

double total_mass(const PdeGridState& s, const Grid1D& g) {
  double m = 0.0;
  for (double w : s.W) m += w;
  return m * g.dx();
}

}  // namespace lapcas::pde
