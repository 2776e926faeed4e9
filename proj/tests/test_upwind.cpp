#include "doctest.h"
#include "lapcas/upwind.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lapcas;
using namespace lapcas::pde;
using verhulst::InitialDensity;
using verhulst::VerhulstParams;
using doctest::Approx;

namespace {
const VerhulstParams PR = VerhulstParams::checked(-2.0, 0.5);

double l1_error_W(const PdeGridState& s, const Grid1D& g, const InitialDensity& w0,
                  double tau) {
  double acc = 0.0;
  for (std::size_t i = 0; i < g.cells; ++i) {
    acc += std::abs(s.W[i] - verhulst::solve(w0, g.center(i), tau, PR).W) * g.dx();
  }
  return acc;
}

double l1_norm_W1(const PdeGridState& s, const Grid1D& g) {
  double acc = 0.0;
  for (double v : s.W1) acc += std::abs(v) * g.dx();
  return acc;
}
}  // namespace

TEST_CASE("default_x_hi clears the outer equilibrium") {
  CHECK(default_x_hi(PR) == Approx(1.0).epsilon(1e-14));  // 1.5 * (2/3)
  CHECK(default_x_hi(PR) > PR.outer_equilibrium());
}

TEST_CASE("project takes exact cumulative-mass differences") {
  Grid1D g{0.0, 1.0, 100};

  SUBCASE("uniform data fills exactly the covered cells") {
    const auto s = project(InitialDensity::uniform(0.2, 0.3), g);
    CHECK(s.tau == 0.0);
    REQUIRE(s.W.size() == 100);
    for (std::size_t i = 0; i < 100; ++i) {
      const double expect = (i >= 20 && i < 30) ? 10.0 : 0.0;
      CHECK(s.W[i] == Approx(expect).epsilon(1e-11));
      CHECK(s.W1[i] == 0.0);
    }
    CHECK(total_mass(s, g) == Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("a point mass lands in a single cell") {
    const auto s = project(InitialDensity::delta(0.505), g);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < 100; ++i) {
      if (s.W[i] != 0.0) {
        ++nonzero;
        CHECK(i == 50);
        CHECK(s.W[i] == Approx(100.0).epsilon(1e-12));
      }
    }
    CHECK(nonzero == 1);
    CHECK(total_mass(s, g) == Approx(1.0).epsilon(1e-13));
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(project(InitialDensity::delta(0.5), Grid1D{0.0, 1.0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(project(InitialDensity::delta(0.5), Grid1D{1.0, 1.0, 10}),
                    std::invalid_argument);
    CHECK_THROWS_AS(project(InitialDensity::delta(0.5), Grid1D{-0.1, 1.0, 10}),
                    std::invalid_argument);
  }
}

TEST_CASE("step rejects unstable or mismatched input") {
  Grid1D g{0.0, 1.0, 100};
  const auto s = project(InitialDensity::uniform(0.2, 0.3), g);
  PdeConfig cfg;
  cfg.params = PR;

  CHECK_THROWS_WITH_AS(step(s, 0.01, g, cfg), "step size violates the CFL bound",
                       std::invalid_argument);
  CHECK_THROWS_AS(step(s, 0.0, g, cfg), std::invalid_argument);
  CHECK_THROWS_AS(step(s, -1e-3, g, cfg), std::invalid_argument);

  PdeConfig stiff = cfg;
  stiff.nu_ratio = 100.0;
  const Grid1D wide{0.0, 1.0, 10};
  CHECK_THROWS_WITH_AS(step(project(InitialDensity::uniform(0.2, 0.3), wide), 0.01, wide, stiff),
                       "step size violates the source stability bound",
                       std::invalid_argument);

  PdeGridState wrong = s;
  wrong.W.pop_back();
  CHECK_THROWS_AS(step(wrong, 1e-4, g, cfg), std::invalid_argument);
}

TEST_CASE("solve validates configuration and checkpoints") {
  Grid1D g{0.0, 1.0, 50};
  const auto w0 = InitialDensity::uniform(0.2, 0.3);
  PdeConfig cfg;
  cfg.params = PR;

  PdeConfig bad = cfg;
  bad.cfl = 0.0;
  CHECK_THROWS_AS(solve(w0, g, bad, {0.5}), std::invalid_argument);
  bad.cfl = 1.5;
  CHECK_THROWS_AS(solve(w0, g, bad, {0.5}), std::invalid_argument);

  bad = cfg;
  bad.nu_ratio = -1.0;
  CHECK_THROWS_AS(solve(w0, g, bad, {0.5}), std::invalid_argument);

  CHECK_THROWS_AS(solve(w0, g, cfg, {-0.5}), std::invalid_argument);
  CHECK_THROWS_AS(solve(w0, g, cfg, {0.5, 0.5}), std::invalid_argument);

  // a tau = 0 checkpoint returns the projection itself
  const auto states = solve(w0, g, cfg, {0.0});
  const auto proj = project(w0, g);
  CHECK(states.size() == 1);
  CHECK(states[0].W == proj.W);
  CHECK(states[0].W1 == proj.W1);
}

TEST_CASE("mass is conserved to rounding at every checkpoint") {
  Grid1D g{0.0, default_x_hi(PR), 400};
  const auto w0 = InitialDensity::bump(0.1, 0.3);
  for (double nu : {1.0, 3.0}) {
    PdeConfig cfg;
    cfg.params = PR;
    cfg.nu_ratio = nu;
    Diagnostics diag;
    const auto states = solve(w0, g, cfg, {0.25, 0.5, 1.0}, &diag);
    CHECK(states.size() == 3);
    CAPTURE(nu);
    CHECK(diag.mass_initial == Approx(1.0).epsilon(1e-12));
    CHECK(diag.max_abs_mass_drift <= 1e-10);
    CHECK(diag.mass_final == Approx(1.0).epsilon(1e-10));
    CHECK(diag.steps > 0);
    CHECK(diag.min_W >= -1e-12);  // upwinding keeps cell averages nonnegative
  }
}

TEST_CASE("stronger switching damps the odd component") {
  Grid1D g{0.0, 1.0, 400};
  const auto w0 = InitialDensity::bump(0.1, 0.3);
  PdeConfig slow, fast;
  slow.params = fast.params = PR;
  slow.nu_ratio = 1.0;
  fast.nu_ratio = 4.0;
  const auto a = solve(w0, g, slow, {1.0});
  const auto b = solve(w0, g, fast, {1.0});
  CHECK(l1_norm_W1(b[0], g) < l1_norm_W1(a[0], g));
}

TEST_CASE("first-order convergence toward the closed-form solution") {
  const auto w0 = InitialDensity::bump(0.1, 0.3);
  PdeConfig cfg;
  cfg.params = PR;

  Grid1D coarse{0.0, 1.0, 500};
  Grid1D fine{0.0, 1.0, 1000};
  const auto sc = solve(w0, coarse, cfg, {1.0});
  const auto sf = solve(w0, fine, cfg, {1.0});

  const double ec = l1_error_W(sc[0], coarse, w0, 1.0);
  const double ef = l1_error_W(sf[0], fine, w0, 1.0);
  CAPTURE(ec);
  CAPTURE(ef);
  CHECK(ef <= 0.05);             // within a few percent of unit mass already
  CHECK(ec / ef >= 1.6);         // halving dx roughly halves the error
  CHECK(ec / ef <= 2.4);

  // the odd component is also resolved: compare against the closed form
  double e1 = 0.0;
  for (std::size_t i = 0; i < fine.cells; ++i) {
    e1 += std::abs(sf[0].W1[i] - verhulst::solve(w0, fine.center(i), 1.0, PR).W1) *
          fine.dx();
  }
  CHECK(e1 <= ef * 3.0 + 1e-3);
}
