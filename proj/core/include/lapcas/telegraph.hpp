#pragma once

#include <cstdint>
#include <vector>

#include "lapcas/verhulst.hpp"

namespace lapcas::mc {

// Exact logistic flow x0 -> x(dtau) for the frozen field dx/dtau = x + c x^2.
// Throws when the trajectory reaches +infinity inside the step (c > 0 only).
double flow_exact(double x0, double c, double dtau);

struct McConfig {
  verhulst::VerhulstParams params{-2.0, 0.5};
  verhulst::InitialDensity init = verhulst::InitialDensity::delta(0.5);
  std::size_t paths = 10000;
  std::vector<double> checkpoints;  // strictly increasing, all >= 0
  std::uint64_t seed = 1;
  std::size_t batch_size = 4096;    // scheduling granularity; no effect on results
  unsigned threads = 1;
  double flip_rate = 1.0;           // dichotomous switching rate in tau units
};

struct CheckpointSamples {
  double tau = 0.0;
  std::vector<double> sorted_x;        // ascending
  std::vector<std::int8_t> alpha;      // noise sign per path, in path order
};

struct EmpiricalEnsemble {
  std::uint64_t seed = 0;
  std::size_t paths = 0;
  std::vector<CheckpointSamples> checkpoints;
};

// Simulate piecewise-exact trajectories between exponential switching times.
// The result depends only on (seed, paths, checkpoints, init, params,
// flip_rate) -- never on threads or batch_size.
EmpiricalEnsemble simulate(const McConfig& cfg);

// sup_x |F_n(x) - F(x)| against a mixed distribution; both one-sided gaps are
// checked at every sample, atom and support endpoint.
double kolmogorov_distance(const std::vector<double>& sorted_samples,
                           const verhulst::MixedDistribution1D& dist);

// Empirical E[alpha_i alpha_j] across paths for two checkpoint indices.
double alpha_correlation(const EmpiricalEnsemble& ensemble, std::size_t i, std::size_t j);

}  // namespace lapcas::mc
