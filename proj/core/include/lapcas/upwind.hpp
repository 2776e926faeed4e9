#pragma once

#include <cstddef>
#include <vector>

#include "lapcas/verhulst.hpp"

namespace lapcas::pde {

struct Grid1D {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t cells = 100;

  double dx() const { return (x_hi - x_lo) / static_cast<double>(cells); }
  double face(std::size_t i) const { return x_lo + static_cast<double>(i) * dx(); }
  double center(std::size_t i) const { return x_lo + (static_cast<double>(i) + 0.5) * dx(); }
};

struct PdeGridState {
  double tau = 0.0;
  std::vector<double> W, W1;  // cell averages
};

struct PdeConfig {
  verhulst::VerhulstParams params{-2.0, 0.5};
  double nu_ratio = 1.0;  // switching rate over p1; 1 recovers the solved model
  double cfl = 0.5;       // advective Courant number, must stay <= 1
};

struct Diagnostics {
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double max_abs_mass_drift = 0.0;  // max |mass(tau) - mass(0)| over checkpoints
  double min_W = 0.0;
  std::size_t steps = 0;
};

// Suggested right edge: comfortably beyond the outer equilibrium.
double default_x_hi(const verhulst::VerhulstParams& pr);

// Conservative cell averages of the initial data (exact cumulative-mass
// differences; works for all kinds including delta).  W1 starts at zero.
PdeGridState project(const verhulst::InitialDensity& w0, const Grid1D& g);

// One explicit step of the diagonalized system
//   d/dtau u1 + d/dx ((p-q) u1) = nu_r (u2 - u1)
//   d/dtau u2 + d/dx ((p+q) u2) = nu_r (u1 - u2)
// with face-speed upwind fluxes and zero-flux boundaries (exact mass
// conservation).  Throws if dtau violates the advective CFL bound or the
// source positivity bound dtau * nu_r <= 1/2.
PdeGridState step(const PdeGridState& s, double dtau, const Grid1D& g, const PdeConfig& cfg);

// March to each checkpoint (strictly increasing, >= 0) with automatic step
// size; returns one state per checkpoint.
std::vector<PdeGridState> solve(const verhulst::InitialDensity& w0, const Grid1D& g,
                                const PdeConfig& cfg, const std::vector<double>& checkpoints,
                                Diagnostics* diag = nullptr);

double total_mass(const PdeGridState& s, const Grid1D& g);

}  // namespace lapcas::pde
