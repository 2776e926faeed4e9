#include "lapcas/telegraph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lapcas::mc {

double flow_exact(double x0, double c, double dtau) {
  if (!(dtau >= 0.0)) throw std::invalid_argument("flow time must be nonnegative");
  const double em = std::expm1(dtau);
  const double den = 1.0 - c * x0 * em;
  if (!(den > 0.0)) throw std::runtime_error("blow-up in segment");
  return x0 * std::exp(dtau) / den;
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent stream per path: identical output for any thread count.
std::uint64_t path_seed(std::uint64_t seed, std::uint64_t path) {
  return splitmix64(splitmix64(seed) ^ splitmix64(path + 0x632be59bd9b4e019ULL));
}

}  // namespace

EmpiricalEnsemble simulate(const McConfig& cfg) {
  if (cfg.paths == 0) throw std::invalid_argument("need at least one path");
  if (!(cfg.flip_rate > 0.0)) throw std::invalid_argument("flip rate must be positive");
  for (std::size_t i = 0; i < cfg.checkpoints.size(); ++i) {
    if (!(cfg.checkpoints[i] >= 0.0)) {
      throw std::invalid_argument("checkpoints must be nonnegative");
    }
    if (i > 0 && !(cfg.checkpoints[i - 1] < cfg.checkpoints[i])) {
      throw std::invalid_argument("checkpoints must increase strictly");
    }
  }

  cfg.init.quantile(0.5);  // fail fast (zero-mass data) before any thread starts

  const std::size_t n = cfg.paths, m = cfg.checkpoints.size();
  EmpiricalEnsemble out;
  out.seed = cfg.seed;
  out.paths = n;
  out.checkpoints.resize(m);
  for (std::size_t c = 0; c < m; ++c) {
    out.checkpoints[c].tau = cfg.checkpoints[c];
    out.checkpoints[c].sorted_x.resize(n);
    out.checkpoints[c].alpha.resize(n);
  }
  if (m == 0) return out;

  const double c_branch[2] = {cfg.params.c_minus(), cfg.params.c_plus()};  // a = -1, +1

  std::atomic<std::size_t> blown{0};
  std::atomic<std::size_t> next_chunk{0};
  const std::size_t batch = std::max<std::size_t>(1, cfg.batch_size);
  const std::size_t chunks = (n + batch - 1) / batch;

  auto worker = [&]() {
    for (;;) {
      const std::size_t chunk = next_chunk.fetch_add(1);
      if (chunk >= chunks) return;
      const std::size_t lo = chunk * batch, hi = std::min(n, lo + batch);
      for (std::size_t p = lo; p < hi; ++p) {
        std::mt19937_64 rng(path_seed(cfg.seed, p));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        std::exponential_distribution<double> waiting(cfg.flip_rate);
        // State is anchored at the last flip, never at a checkpoint, so a
        // path that has not flipped yet lands bit-for-bit on the exact
        // ballistic foot flow(x0, c, tau).
        double x = cfg.init.quantile(unif(rng));  // position at the last flip
        int a = unif(rng) < 0.5 ? 0 : 1;          // equiprobable initial sign
        double t = 0.0;                           // time of the last flip
        double remaining = waiting(rng);          // wait from t to the next flip
        try {
          for (std::size_t c = 0; c < m; ++c) {
            while (t + remaining < cfg.checkpoints[c]) {
              x = flow_exact(x, c_branch[a], remaining);
              t += remaining;
              a ^= 1;
              remaining = waiting(rng);
            }
            out.checkpoints[c].sorted_x[p] = flow_exact(x, c_branch[a], cfg.checkpoints[c] - t);
            out.checkpoints[c].alpha[p] = static_cast<std::int8_t>(a ? 1 : -1);
          }
        } catch (const std::runtime_error&) {
          blown.fetch_add(1);
        }
      }
    }
  };

  const unsigned nthreads = std::max(1u, cfg.threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  if (blown.load() > 0) {
    std::ostringstream os;
    os << "blow-up in segment: " << blown.load() << " of " << n << " paths diverged";
    throw std::runtime_error(os.str());
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::sort(out.checkpoints[c].sorted_x.begin(), out.checkpoints[c].sorted_x.end());
  }
  return out;
}

double kolmogorov_distance(const std::vector<double>& sorted_samples,
                           const verhulst::MixedDistribution1D& dist) {
  if (sorted_samples.empty()) throw std::invalid_argument("no samples");
  const double n = static_cast<double>(sorted_samples.size());
  std::vector<double> candidates = sorted_samples;
  for (const auto& a : dist.atoms()) candidates.push_back(a.x);
  candidates.push_back(dist.support().lo);
  candidates.push_back(dist.support().hi);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  double d = 0.0;
  for (double x : candidates) {
    const auto lo = std::lower_bound(sorted_samples.begin(), sorted_samples.end(), x);
    const auto hi = std::upper_bound(lo, sorted_samples.end(), x);
    const double below = static_cast<double>(lo - sorted_samples.begin()) / n;
    const double below_eq = static_cast<double>(hi - sorted_samples.begin()) / n;
    const double right = dist.cdf(x);
    const double left = right - dist.atom_mass_at(x);
    d = std::max(d, std::abs(below - left));
    d = std::max(d, std::abs(below_eq - right));
  }
  return d;
}

double alpha_correlation(const EmpiricalEnsemble& ensemble, std::size_t i, std::size_t j) {
  if (i >= ensemble.checkpoints.size() || j >= ensemble.checkpoints.size()) {
    throw std::out_of_range("checkpoint index out of range");
  }
  const auto& ai = ensemble.checkpoints[i].alpha;
  const auto& aj = ensemble.checkpoints[j].alpha;
  double acc = 0.0;
  for (std::size_t p = 0; p < ai.size(); ++p) {
    acc += static_cast<double>(ai[p]) * static_cast<double>(aj[p]);
  }
  return acc / static_cast<double>(ai.size());
}

}  // namespace lapcas::mc
