// Command-line front end: exact cascade invariants and chains, closed-form
// solutions of the dichotomous-noise logistic master equations, Monte-Carlo
// and finite-volume cross checks, and the third-order constructive example.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lapcas/cascade.hpp"
#include "lapcas/charform.hpp"
#include "lapcas/dini.hpp"
#include "lapcas/telegraph.hpp"
#include "lapcas/upwind.hpp"
#include "lapcas/verhulst.hpp"

using json = nlohmann::ordered_json;
using namespace lapcas;

namespace {

// ---------------------------------------------------------------------------
// small utilities

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw std::invalid_argument("failed writing output file: " + out_path);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("cannot parse " + what + ": '" + s + "'");
  return v;
}

// "delta:x=0.5" | "uniform:a=0.2,b=0.3" | "bump:a=0.1,b=0.3"
verhulst::InitialDensity parse_init(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("initial density parameter needs key=value: '" + item + "'");
      }
      kv[item.substr(0, eq)] = parse_double(item.substr(eq + 1), "initial density parameter");
    }
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      throw std::invalid_argument("initial density '" + name + "' needs parameter '" + key + "'");
    }
    return it->second;
  };
  if (name == "delta") return verhulst::InitialDensity::delta(need("x"));
  if (name == "uniform") return verhulst::InitialDensity::uniform(need("a"), need("b"));
  if (name == "bump") return verhulst::InitialDensity::bump(need("a"), need("b"));
  throw std::invalid_argument("unknown initial density '" + name +
                              "' (use delta:x=..., uniform:a=..,b=..., bump:a=..,b=...)");
}

// ---------------------------------------------------------------------------
// JSON config file merged under command-line flags

class ConfigBinder {
 public:
  void bind(CLI::Option* opt, const std::string& key, std::function<void(const json&)> apply) {
    entries_[key] = {opt, std::move(apply)};
    all_keys().insert(key);
  }

  void apply(const json& cfg) const {
    for (const auto& [key, value] : cfg.items()) {
      const auto it = entries_.find(key);
      if (it == entries_.end()) {
        if (all_keys().count(key) == 0) {
          throw std::invalid_argument("unknown config key: '" + key + "'");
        }
        continue;  // valid for some other subcommand; ignore here
      }
      if (it->second.first->count() == 0) it->second.second(value);
    }
  }

  static std::set<std::string>& all_keys() {
    static std::set<std::string> keys;
    return keys;
  }

 private:
  std::map<std::string, std::pair<CLI::Option*, std::function<void(const json&)>>> entries_;
};

double json_double(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_double(v.get<std::string>(), "config key '" + key + "'");
  throw std::invalid_argument("config key '" + key + "' must be a number");
}

void bind_double(ConfigBinder& b, CLI::Option* o, const std::string& key, double& ref) {
  b.bind(o, key, [&ref, key](const json& v) { ref = json_double(v, key); });
}
void bind_string(ConfigBinder& b, CLI::Option* o, const std::string& key, std::string& ref) {
  b.bind(o, key, [&ref, key](const json& v) {
    if (!v.is_string()) throw std::invalid_argument("config key '" + key + "' must be a string");
    ref = v.get<std::string>();
  });
}
template <typename Int>
void bind_int(ConfigBinder& b, CLI::Option* o, const std::string& key, Int& ref) {
  b.bind(o, key, [&ref, key](const json& v) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      throw std::invalid_argument("config key '" + key + "' must be an integer");
    }
    ref = v.get<Int>();
  });
}
void bind_taus(ConfigBinder& b, CLI::Option* o, const std::string& key, std::vector<double>& ref) {
  b.bind(o, key, [&ref, key](const json& v) {
    ref.clear();
    if (v.is_array()) {
      for (const auto& e : v) ref.push_back(json_double(e, key));
    } else {
      ref.push_back(json_double(v, key));
    }
  });
}
void bind_flag(ConfigBinder& b, CLI::Option* o, const std::string& key, bool& ref) {
  b.bind(o, key, [&ref, key](const json& v) {
    if (!v.is_boolean()) throw std::invalid_argument("config key '" + key + "' must be a boolean");
    ref = v.get<bool>();
  });
}

// ---------------------------------------------------------------------------
// user-scale parameters and the dimensionless reduction

struct UserParams {
  double p1 = 1.0;
  double p2 = -2.0;
  double q2 = 0.5;
  double nu = -1.0;  // sentinel: defaults to p1 (the solved model)
};

struct Reduced {
  verhulst::VerhulstParams params;
  double nu_ratio;  // nu / p1; 1 for the closed-form model
};

Reduced reduce(const UserParams& u) {
  if (!(u.p1 > 0.0)) throw std::invalid_argument("p1 must be positive");
  const double nu = u.nu < 0.0 ? u.p1 : u.nu;
  if (!(nu > 0.0)) throw std::invalid_argument("nu must be positive");
  return {verhulst::VerhulstParams::checked(u.p2 / u.p1, u.q2 / u.p1), nu / u.p1};
}

void require_closed_form(const Reduced& r, const char* sub) {
  if (r.nu_ratio != 1.0) {
    throw std::invalid_argument(std::string(sub) +
                                " uses the closed form, which requires nu = p1; "
                                "use the pde subcommand for nu != p1");
  }
}

json dimensionless_json(const Reduced& r) {
  return json{{"p2", r.params.p2}, {"q2", r.params.q2}, {"nu_ratio", r.nu_ratio}};
}

// ---------------------------------------------------------------------------
// exact-rational parameter handling for the symbolic subcommands

struct SymbolicParams {
  std::string p1 = "1", p2 = "-2", q2 = "1/2", nu = "1";
};

CharacteristicSystem symbolic_system(const SymbolicParams& sp) {
  const Rat p1 = Rat::parse(sp.p1), p2 = Rat::parse(sp.p2);
  const Rat q2 = Rat::parse(sp.q2), nu = Rat::parse(sp.nu);
  if (!(Rat(0) < p1)) throw std::invalid_argument("p1 must be positive");
  if (!(p2 < Rat(0))) throw std::invalid_argument("p2 must be negative");
  if (!(Rat(0) < q2) || !((-p2) > q2)) {
    throw std::invalid_argument("q2 must satisfy |p2| > q2 > 0");
  }
  if (!(Rat(0) < nu)) throw std::invalid_argument("nu must be positive");
  const UPoly p{Rat(0), p1, p2};  // p1 x + p2 x^2
  const UPoly q{Rat(0), Rat(0), q2};
  return to_characteristic(master_system(p, q, nu));
}

// ---------------------------------------------------------------------------
// polynomial parsing for the dini subcommand

class PolyParser {
 public:
  PolyParser(std::string_view src, std::array<std::string, 3> names)
      : s_(src), names_(std::move(names)) {}

  MPoly3 parse() {
    MPoly3 out = parse_term_signed();
    skip();
    while (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      const bool minus = s_[i_] == '-';
      ++i_;
      const MPoly3 t = parse_term();
      out += minus ? -t : t;
      skip();
    }
    if (i_ != s_.size()) fail("unexpected character");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse polynomial '" + std::string(s_) + "': " + why +
                                " at position " + std::to_string(i_));
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  MPoly3 parse_term_signed() {
    skip();
    bool minus = false;
    while (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      if (s_[i_] == '-') minus = !minus;
      ++i_;
      skip();
    }
    const MPoly3 t = parse_term();
    return minus ? -t : t;
  }

  MPoly3 parse_term() {
    MPoly3 t = parse_factor();
    skip();
    while (i_ < s_.size() && s_[i_] == '*') {
      ++i_;
      t = t * parse_factor();
      skip();
    }
    return t;
  }

  MPoly3 parse_factor() {
    skip();
    if (i_ >= s_.size()) fail("expected a factor");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' || s_[i_] == '/'))
        ++i_;
      try {
        return MPoly3(Rat::parse(s_.substr(start, i_ - start)));
      } catch (const std::exception&) {
        fail("bad numeric literal");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
        ++i_;
      const std::string name(s_.substr(start, i_ - start));
      int axis = -1;
      for (int a = 0; a < 3; ++a) {
        if (!names_[a].empty() && names_[a] == name) axis = a;
      }
      if (axis < 0) fail("unknown variable '" + name + "'");
      int exp = 1;
      skip();
      if (i_ < s_.size() && s_[i_] == '^') {
        ++i_;
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
          fail("expected an exponent");
        }
        exp = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
          exp = exp * 10 + (s_[i_] - '0');
          if (exp > 64) fail("exponent too large");
          ++i_;
        }
      }
      MPoly3 out(1);
      const MPoly3 v = MPoly3::var(axis);
      for (int k = 0; k < exp; ++k) out = out * v;
      return out;
    }
    fail("unexpected character");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::array<std::string, 3> names_;
};

// ---------------------------------------------------------------------------
// subcommand runners (each returns the primary output text)

std::string run_invariants(const SymbolicParams& sp) {
  const auto inv = invariants(symbolic_system(sp));
  json j;
  j["h"] = inv.h ? inv.h->to_string() : "undefined";
  j["k"] = inv.k.to_string();
  return j.dump() + "\n";
}

std::string run_chain(const SymbolicParams& sp, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const CharacteristicSystem cs = symbolic_system(sp);
  const InvariantChain chain = build_chain(cs, steps);
  json j;
  j["h"] = chain.center.h ? chain.center.h->to_string() : "undefined";
  j["k"] = chain.center.k.to_string();
  auto direction = [&](const std::vector<RationalFunction>& ks) {
    json arr = json::array();
    arr.push_back(chain.center.k.to_string());  // k of the original system
    for (const auto& k : ks) arr.push_back(k.to_string());
    return arr;
  };
  j["forward"] = direction(chain.forward);
  j["backward"] = direction(chain.backward);
  j["terminated"] = chain.terminated_forward || chain.terminated_backward;
  return j.dump() + "\n";
}

std::vector<double> sample_grid(double lo, double hi, int points) {
  if (points < 1) throw std::invalid_argument("points must be positive");
  if (!(hi > lo)) throw std::invalid_argument("x range must satisfy x-hi > x-lo");
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double dx = (hi - lo) / points;
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = lo + (i + 0.5) * dx;
  return xs;
}

void warn_beyond_equilibrium(const std::vector<double>& xs, const Reduced& r) {
  const double outer = r.params.outer_equilibrium();
  const std::size_t beyond =
      static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [&](double x) { return x > outer; }));
  if (beyond > 0) {
    std::cerr << "warning: " << beyond << " evaluation points lie beyond the outer equilibrium x = "
              << fmt12(outer) << "; the closed form is evaluated outside the physically reachable region\n";
  }
}

std::string run_exact(const Reduced& r, const verhulst::InitialDensity& w0,
                      const std::vector<double>& taus, const std::vector<double>& xs,
                      const std::string& format) {
  require_closed_form(r, "exact");
  if (w0.kind() == verhulst::InitialDensity::Kind::delta) {
    throw std::invalid_argument("exact needs a continuous initial density; use the delta subcommand");
  }
  warn_beyond_equilibrium(xs, r);
  if (format == "json") {
    json out = json::array();
    for (double tau : taus) {
      json grid = json::array();
      for (double x : xs) {
        const auto s = verhulst::solve(w0, x, tau, r.params);
        grid.push_back(json{{"x", x}, {"W", s.W}, {"W1", s.W1}});
      }
      out.push_back(json{{"tau", tau}, {"atoms", json::array()}, {"density_grid", grid}});
    }
    return out.dump() + "\n";
  }
  std::string csv = "x,W,W1\n";
  for (double tau : taus) {
    csv += "# tau = " + fmt12(tau) + "\n";
    for (double x : xs) {
      const auto s = verhulst::solve(w0, x, tau, r.params);
      csv += fmt12(x) + "," + fmt12(s.W) + "," + fmt12(s.W1) + "\n";
    }
  }
  return csv;
}

std::string run_delta(const Reduced& r, double x_star, const std::vector<double>& taus,
                      const std::vector<double>& xs, const std::string& format) {
  require_closed_form(r, "delta");
  if (!(x_star > 0.0)) throw std::invalid_argument("x-star must be positive");
  warn_beyond_equilibrium(xs, r);
  if (format == "json") {
    json out = json::array();
    for (double tau : taus) {
      const auto d = verhulst::solve_delta(x_star, tau, r.params);
      json atoms = json::array();
      for (const auto& a : d.atoms()) atoms.push_back(json{{"x", a.x}, {"mass", a.mass}});
      json grid = json::array();
      for (double x : xs) {
        const auto s = verhulst::delta_continuous(x_star, x, tau, r.params);
        grid.push_back(json{{"x", x}, {"W", s.W}, {"W1", s.W1}});
      }
      out.push_back(json{{"tau", tau}, {"atoms", atoms}, {"density_grid", grid}});
    }
    return out.dump() + "\n";
  }
  std::string csv = "x,W,W1\n";
  for (double tau : taus) {
    const auto d = verhulst::solve_delta(x_star, tau, r.params);
    csv += "# tau = " + fmt12(tau) + "\n";
    for (const auto& a : d.atoms()) {
      csv += "# atom," + fmt12(a.x) + "," + fmt12(a.mass) + "\n";
    }
    for (double x : xs) {
      const auto s = verhulst::delta_continuous(x_star, x, tau, r.params);
      csv += fmt12(x) + "," + fmt12(s.W) + "," + fmt12(s.W1) + "\n";
    }
  }
  return csv;
}

std::string run_mc(const Reduced& r, const verhulst::InitialDensity& w0,
                   const std::vector<double>& taus, std::size_t paths, std::uint64_t seed,
                   unsigned threads, int bins, const std::string& format) {
  mc::McConfig cfg;
  cfg.params = r.params;
  cfg.init = w0;
  cfg.paths = paths;
  cfg.checkpoints = taus;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.flip_rate = r.nu_ratio;
  const mc::EmpiricalEnsemble e = mc::simulate(cfg);

  if (bins < 0) throw std::invalid_argument("bins must be nonnegative");
  if (bins == 0) {
    if (format == "json") {
      json out = json::array();
      for (const auto& cp : e.checkpoints) {
        out.push_back(json{{"tau", cp.tau}, {"samples", cp.sorted_x}});
      }
      return out.dump() + "\n";
    }
    std::string csv = "tau,sample\n";
    for (const auto& cp : e.checkpoints) {
      const std::string t = fmt12(cp.tau);
      for (double x : cp.sorted_x) csv += t + "," + fmt12(x) + "\n";
    }
    return csv;
  }

  const double hi = pde::default_x_hi(r.params);
  const double width = hi / bins;
  auto histogram = [&](const std::vector<double>& xs) {
    std::vector<double> dens(static_cast<std::size_t>(bins), 0.0);
    for (double x : xs) {
      auto idx = static_cast<long>(x / width);
      if (idx >= 0 && idx < bins) dens[static_cast<std::size_t>(idx)] += 1.0;
    }
    for (double& d : dens) d /= width * static_cast<double>(xs.size());
    return dens;
  };
  if (format == "json") {
    json out = json::array();
    for (const auto& cp : e.checkpoints) {
      const auto dens = histogram(cp.sorted_x);
      json row = json::array();
      for (int i = 0; i < bins; ++i) {
        row.push_back(json{{"x_mid", (i + 0.5) * width}, {"density", dens[static_cast<std::size_t>(i)]}});
      }
      out.push_back(json{{"tau", cp.tau}, {"bins", row}});
    }
    return out.dump() + "\n";
  }
  std::string csv = "tau,x_mid,density\n";
  for (const auto& cp : e.checkpoints) {
    const auto dens = histogram(cp.sorted_x);
    const std::string t = fmt12(cp.tau);
    for (int i = 0; i < bins; ++i) {
      csv += t + "," + fmt12((i + 0.5) * width) + "," + fmt12(dens[static_cast<std::size_t>(i)]) + "\n";
    }
  }
  return csv;
}

std::string run_pde(const Reduced& r, double nu_ratio, const verhulst::InitialDensity& w0,
                    const std::vector<double>& taus, std::size_t cells, double cfl, double x_lo,
                    double x_hi, const std::string& format) {
  pde::Grid1D g{x_lo, x_hi, cells};
  pde::PdeConfig cfg;
  cfg.params = r.params;
  cfg.nu_ratio = nu_ratio;
  cfg.cfl = cfl;
  pde::Diagnostics diag;
  const auto states = pde::solve(w0, g, cfg, taus, &diag);
  std::cerr << "pde: steps = " << diag.steps << ", max mass drift = " << fmt12(diag.max_abs_mass_drift)
            << ", min W = " << fmt12(diag.min_W) << "\n";
  if (format == "json") {
    json out = json::array();
    for (const auto& s : states) {
      json grid = json::array();
      for (std::size_t i = 0; i < g.cells; ++i) {
        grid.push_back(json{{"x", g.center(i)}, {"W", s.W[i]}, {"W1", s.W1[i]}});
      }
      out.push_back(json{{"tau", s.tau}, {"cells", grid}});
    }
    return out.dump() + "\n";
  }
  std::string csv = "tau,x,W,W1\n";
  for (const auto& s : states) {
    const std::string t = fmt12(s.tau);
    for (std::size_t i = 0; i < g.cells; ++i) {
      csv += t + "," + fmt12(g.center(i)) + "," + fmt12(s.W[i]) + "," + fmt12(s.W1[i]) + "\n";
    }
  }
  return csv;
}

std::string run_compare(const std::string& mode, const Reduced& r,
                        const verhulst::InitialDensity& w0, const std::vector<double>& taus,
                        std::size_t paths, std::uint64_t seed, unsigned threads,
                        std::size_t cells, double cfl) {
  require_closed_form(r, "compare");
  if (mode == "exact-vs-mc") {
    mc::McConfig cfg;
    cfg.params = r.params;
    cfg.init = w0;
    cfg.paths = paths;
    cfg.checkpoints = taus;
    cfg.seed = seed;
    cfg.threads = threads;
    const mc::EmpiricalEnsemble e = mc::simulate(cfg);
    json out = json::array();
    for (const auto& cp : e.checkpoints) {
      const verhulst::MixedDistribution1D exact =
          w0.kind() == verhulst::InitialDensity::Kind::delta
              ? verhulst::solve_delta(w0.x_star(), cp.tau, r.params)
              : verhulst::solve_distribution(w0, cp.tau, r.params);
      out.push_back(json{{"tau", cp.tau},
                         {"kolmogorov", mc::kolmogorov_distance(cp.sorted_x, exact)},
                         {"paths", e.paths}});
    }
    return out.dump() + "\n";
  }
  if (mode == "exact-vs-pde") {
    if (w0.kind() == verhulst::InitialDensity::Kind::delta) {
      throw std::invalid_argument("exact-vs-pde needs a continuous initial density");
    }
    pde::Grid1D g{0.0, pde::default_x_hi(r.params), cells};
    pde::PdeConfig cfg;
    cfg.params = r.params;
    cfg.nu_ratio = 1.0;
    cfg.cfl = cfl;
    const auto states = pde::solve(w0, g, cfg, taus);
    json out = json::array();
    for (const auto& s : states) {
      double l1 = 0.0;
      for (std::size_t i = 0; i < g.cells; ++i) {
        l1 += std::abs(s.W[i] - verhulst::solve(w0, g.center(i), s.tau, r.params).W) * g.dx();
      }
      out.push_back(json{{"tau", s.tau}, {"l1", l1}, {"cells", g.cells}});
    }
    return out.dump() + "\n";
  }
  throw std::invalid_argument("unknown compare mode '" + mode +
                              "' (use exact-vs-mc or exact-vs-pde)");
}

std::string run_dini(bool demo, int trials, std::uint64_t seed, const std::string& phi_s,
                     const std::string& psi_s, const std::string& theta_s) {
  if (demo) {
    if (trials < 1) throw std::invalid_argument("trials must be positive");
    std::mt19937 rng(static_cast<std::mt19937::result_type>(seed));
    std::uniform_int_distribution<int> e(0, 4);
    std::uniform_int_distribution<int> nterms(1, 6);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    auto random_poly = [&](std::array<bool, 3> axes) {
      MPoly3 p;
      const int k = nterms(rng);
      for (int t = 0; t < k; ++t) {
        MPoly3::Exponents ex{0, 0, 0};
        for (int a = 0; a < 3; ++a) ex[a] = axes[a] ? e(rng) : 0;
        p += MPoly3::monomial(Rat(num(rng), den(rng)), ex);
      }
      return p;
    };
    int nonzero = 0;
    std::size_t max_terms = 0;
    for (int t = 0; t < trials; ++t) {
      const MPoly3 phi = random_poly({true, true, false});
      const MPoly3 psi = random_poly({false, true, true});
      const MPoly3 theta = random_poly({false, true, false});
      const MPoly3 res = dini::check_L(dini::dini_u(dini::dini_v(phi, psi), theta));
      if (!res.is_zero()) ++nonzero;
      max_terms = std::max(max_terms, res.terms().size());
    }
    json j;
    j["trials"] = trials;
    j["nonzero_residuals"] = nonzero;
    j["max_residual_terms"] = max_terms;
    j["all_zero"] = nonzero == 0;
    return j.dump() + "\n";
  }

  const MPoly3 phi = PolyParser(phi_s, {"a", "b", ""}).parse();
  const MPoly3 psi = PolyParser(psi_s, {"", "y", "z"}).parse();
  const MPoly3 theta = PolyParser(theta_s, {"", "y", ""}).parse();
  const MPoly3 v = dini::dini_v(phi, psi);
  const MPoly3 u = dini::dini_u(v, theta);
  const MPoly3 res = dini::check_L(u);
  json j;
  j["v"] = v.to_string();
  j["u"] = u.to_string();
  j["residual"] = res.to_string();
  j["residual_is_zero"] = res.is_zero();
  return j.dump() + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace cascades for 2x2 hyperbolic systems and the exact solution of the "
               "dichotomous-noise logistic master equations"};
  app.require_subcommand(1);

  // global options
  std::string out, format = "csv", config_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  ConfigBinder global_bind;
  auto* o_out = app.add_option("--out", out, "write the primary output to this file (default: stdout)");
  auto* o_format = app.add_option("--format", format, "output format")
                       ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", config_path, "JSON config file; explicit flags take precedence");
  auto* o_seed = app.add_option("--seed", seed, "random seed (mc, compare, dini --demo)");
  auto* o_threads = app.add_option("--threads", threads, "worker threads for the Monte-Carlo runs");
  bind_string(global_bind, o_out, "out", out);
  bind_string(global_bind, o_format, "format", format);
  bind_int(global_bind, o_seed, "seed", seed);
  bind_int(global_bind, o_threads, "threads", threads);

  // shared numeric parameters
  UserParams up;
  std::vector<double> taus;
  std::string init_spec = "bump:a=0.1,b=0.3";
  auto add_params = [&](CLI::App* sub, ConfigBinder& bind) {
    bind_double(bind, sub->add_option("--p1", up.p1, "linear growth coefficient (> 0)"), "p1", up.p1);
    bind_double(bind, sub->add_option("--p2", up.p2, "quadratic drift coefficient (< 0)"), "p2", up.p2);
    bind_double(bind, sub->add_option("--q2", up.q2, "noise amplitude coefficient (0 < q2 < |p2|)"),
                "q2", up.q2);
    bind_double(bind, sub->add_option("--nu", up.nu, "switching rate (default: p1)"), "nu", up.nu);
  };
  auto add_taus = [&](CLI::App* sub, ConfigBinder& bind) {
    bind_taus(bind,
              sub->add_option("--tau", taus, "dimensionless checkpoint times (repeatable)")
                  ->delimiter(','),
              "tau", taus);
  };
  auto add_init = [&](CLI::App* sub, ConfigBinder& bind) {
    bind_string(bind,
                sub->add_option("--init", init_spec,
                                "initial density: delta:x=.. | uniform:a=..,b=.. | bump:a=..,b=.."),
                "init", init_spec);
  };

  // exact-rational parameters for the symbolic subcommands
  SymbolicParams sp;
  auto add_symbolic = [&](CLI::App* sub, ConfigBinder& bind) {
    bind_string(bind, sub->add_option("--p1", sp.p1, "exact rational, e.g. 1 or 3/2"), "p1", sp.p1);
    bind_string(bind, sub->add_option("--p2", sp.p2, "exact rational (< 0)"), "p2", sp.p2);
    bind_string(bind, sub->add_option("--q2", sp.q2, "exact rational (0 < q2 < |p2|)"), "q2", sp.q2);
    bind_string(bind, sub->add_option("--nu", sp.nu, "exact rational (> 0)"), "nu", sp.nu);
  };

  // --- invariants
  ConfigBinder bind_invariants;
  auto* sub_invariants =
      app.add_subcommand("invariants", "Laplace invariants h, k of the characteristic system");
  add_symbolic(sub_invariants, bind_invariants);

  // --- chain
  ConfigBinder bind_chain;
  int steps = 16;
  auto* sub_chain = app.add_subcommand("chain", "cascade of Laplace invariants in both directions");
  add_symbolic(sub_chain, bind_chain);
  bind_int(bind_chain, sub_chain->add_option("--steps", steps, "maximum transforms per direction"),
           "steps", steps);

  // --- exact
  ConfigBinder bind_exact;
  int points = 200;
  double x_lo = 0.02, x_hi = -1.0;  // x_hi sentinel: 1.5 * outer equilibrium
  auto* sub_exact = app.add_subcommand("exact", "closed-form (W, W1) on a grid of x per tau");
  add_params(sub_exact, bind_exact);
  add_taus(sub_exact, bind_exact);
  add_init(sub_exact, bind_exact);
  bind_int(bind_exact, sub_exact->add_option("--points", points, "grid points"), "points", points);
  bind_double(bind_exact, sub_exact->add_option("--x-lo", x_lo, "left edge of the grid"), "x-lo", x_lo);
  bind_double(bind_exact, sub_exact->add_option("--x-hi", x_hi, "right edge (default: 1.5/(|p2|-q2))"),
              "x-hi", x_hi);

  // --- delta
  ConfigBinder bind_delta;
  double x_star = 0.5;
  auto* sub_delta =
      app.add_subcommand("delta", "point-mass initial data: atoms plus continuous density per tau");
  add_params(sub_delta, bind_delta);
  add_taus(sub_delta, bind_delta);
  bind_double(bind_delta, sub_delta->add_option("--x-star", x_star, "initial atom position"),
              "x-star", x_star);
  bind_int(bind_delta, sub_delta->add_option("--points", points, "grid points"), "points", points);
  bind_double(bind_delta, sub_delta->add_option("--x-lo", x_lo, "left edge of the grid"), "x-lo", x_lo);
  bind_double(bind_delta, sub_delta->add_option("--x-hi", x_hi, "right edge (default: 1.5/(|p2|-q2))"),
              "x-hi", x_hi);

  // --- mc
  ConfigBinder bind_mc;
  std::size_t paths = 10000;
  int bins = 0;
  auto* sub_mc = app.add_subcommand("mc", "Monte-Carlo simulation of the switching logistic flow");
  add_params(sub_mc, bind_mc);
  add_taus(sub_mc, bind_mc);
  add_init(sub_mc, bind_mc);
  bind_int(bind_mc, sub_mc->add_option("--paths", paths, "number of trajectories"), "paths", paths);
  bind_int(bind_mc, sub_mc->add_option("--bins", bins, "0: raw sorted samples; n: histogram"),
           "bins", bins);

  // --- pde
  ConfigBinder bind_pde;
  std::size_t cells = 400;
  double cfl = 0.5, nu_ratio_flag = -1.0;
  double pde_x_lo = 0.0, pde_x_hi = -1.0;
  auto* sub_pde = app.add_subcommand("pde", "upwind finite-volume solution of the master equations");
  add_params(sub_pde, bind_pde);
  add_taus(sub_pde, bind_pde);
  add_init(sub_pde, bind_pde);
  bind_int(bind_pde, sub_pde->add_option("--cells", cells, "grid cells"), "cells", cells);
  bind_double(bind_pde, sub_pde->add_option("--cfl", cfl, "advective Courant number in (0, 1]"),
              "cfl", cfl);
  bind_double(bind_pde,
              sub_pde->add_option("--nu-ratio", nu_ratio_flag, "switching rate / p1 (default: nu/p1)"),
              "nu-ratio", nu_ratio_flag);
  bind_double(bind_pde, sub_pde->add_option("--x-lo", pde_x_lo, "left edge of the grid"), "x-lo",
              pde_x_lo);
  bind_double(bind_pde, sub_pde->add_option("--x-hi", pde_x_hi, "right edge (default: 1.5/(|p2|-q2))"),
              "x-hi", pde_x_hi);

  // --- compare
  ConfigBinder bind_compare;
  std::string mode = "exact-vs-mc";
  std::size_t cmp_paths = 100000, cmp_cells = 1000;
  double cmp_cfl = 0.5;
  auto* sub_compare =
      app.add_subcommand("compare", "distance between the closed form and an independent solver");
  add_params(sub_compare, bind_compare);
  add_taus(sub_compare, bind_compare);
  add_init(sub_compare, bind_compare);
  bind_string(bind_compare, sub_compare->add_option("--mode", mode, "exact-vs-mc | exact-vs-pde"),
              "mode", mode);
  bind_int(bind_compare, sub_compare->add_option("--paths", cmp_paths, "Monte-Carlo paths"), "paths",
           cmp_paths);
  bind_int(bind_compare, sub_compare->add_option("--cells", cmp_cells, "finite-volume cells"),
           "cells", cmp_cells);
  bind_double(bind_compare, sub_compare->add_option("--cfl", cmp_cfl, "Courant number"), "cfl",
              cmp_cfl);

  // --- dini
  ConfigBinder bind_dini;
  bool demo = false;
  int trials = 50;
  std::string phi_s = "b", psi_s = "0", theta_s = "0";
  auto* sub_dini =
      app.add_subcommand("dini", "constructive solutions of the third-order example L u = 0");
  bind_flag(bind_dini, sub_dini->add_flag("--demo", demo, "run the randomized residual suite"),
            "demo", demo);
  bind_int(bind_dini, sub_dini->add_option("--trials", trials, "randomized trials for --demo"),
           "trials", trials);
  bind_string(bind_dini, sub_dini->add_option("--phi", phi_s, "polynomial in a, b"), "phi", phi_s);
  bind_string(bind_dini, sub_dini->add_option("--psi", psi_s, "polynomial in y, z"), "psi", psi_s);
  bind_string(bind_dini, sub_dini->add_option("--theta", theta_s, "polynomial in y"), "theta",
              theta_s);

  // let global flags (--out, --format, --seed, ...) appear after the subcommand
  for (CLI::App* s : {sub_invariants, sub_chain, sub_exact, sub_delta, sub_mc, sub_pde,
                      sub_compare, sub_dini}) {
    s->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* active = app.get_subcommands().front();
    ConfigBinder* binder = nullptr;
    if (active == sub_invariants) binder = &bind_invariants;
    else if (active == sub_chain) binder = &bind_chain;
    else if (active == sub_exact) binder = &bind_exact;
    else if (active == sub_delta) binder = &bind_delta;
    else if (active == sub_mc) binder = &bind_mc;
    else if (active == sub_pde) binder = &bind_pde;
    else if (active == sub_compare) binder = &bind_compare;
    else binder = &bind_dini;

    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw std::invalid_argument("cannot open config file: " + config_path);
      json cfg;
      try {
        f >> cfg;
      } catch (const std::exception& e) {
        throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
      }
      if (!cfg.is_object()) throw std::invalid_argument("config file must hold a JSON object");
      global_bind.apply(cfg);
      binder->apply(cfg);
    }
    if (taus.empty()) taus = {1.0};
    std::sort(taus.begin(), taus.end());

    // resolved configuration, logged once for reproducibility
    json rc;
    rc["subcommand"] = active->get_name();
    rc["format"] = format;
    if (!out.empty()) rc["out"] = out;
    std::string text;
    if (active == sub_invariants || active == sub_chain) {
      rc["p1"] = sp.p1;
      rc["p2"] = sp.p2;
      rc["q2"] = sp.q2;
      rc["nu"] = sp.nu;
      if (active == sub_chain) rc["steps"] = steps;
      std::cerr << "resolved-config: " << rc.dump() << "\n";
      text = active == sub_invariants ? run_invariants(sp) : run_chain(sp, steps);
    } else if (active == sub_dini) {
      rc["demo"] = demo;
      if (demo) {
        rc["trials"] = trials;
        rc["seed"] = seed;
      } else {
        rc["phi"] = phi_s;
        rc["psi"] = psi_s;
        rc["theta"] = theta_s;
      }
      std::cerr << "resolved-config: " << rc.dump() << "\n";
      text = run_dini(demo, trials, seed, phi_s, psi_s, theta_s);
    } else {
      const Reduced r = reduce(up);
      rc["p1"] = up.p1;
      rc["p2"] = up.p2;
      rc["q2"] = up.q2;
      rc["nu"] = up.nu < 0.0 ? up.p1 : up.nu;
      rc["tau"] = taus;
      rc["dimensionless"] = dimensionless_json(r);
      const double xh = x_hi > 0.0 ? x_hi : 1.5 * r.params.outer_equilibrium();
      const double pde_xh = pde_x_hi > 0.0 ? pde_x_hi : pde::default_x_hi(r.params);
      if (active == sub_exact || active == sub_delta) {
        rc["points"] = points;
        rc["x-lo"] = x_lo;
        rc["x-hi"] = xh;
      }
      if (active == sub_exact || active == sub_mc || active == sub_pde || active == sub_compare) {
        rc["init"] = init_spec;
      }
      if (active == sub_delta) rc["x-star"] = x_star;
      if (active == sub_mc) {
        rc["paths"] = paths;
        rc["bins"] = bins;
        rc["seed"] = seed;
        rc["threads"] = threads;
      }
      if (active == sub_pde) {
        rc["cells"] = cells;
        rc["cfl"] = cfl;
        rc["nu-ratio"] = nu_ratio_flag > 0.0 ? nu_ratio_flag : r.nu_ratio;
        rc["x-lo"] = pde_x_lo;
        rc["x-hi"] = pde_xh;
      }
      if (active == sub_compare) {
        rc["mode"] = mode;
        if (mode == "exact-vs-mc") {
          rc["paths"] = cmp_paths;
          rc["seed"] = seed;
          rc["threads"] = threads;
        } else {
          rc["cells"] = cmp_cells;
          rc["cfl"] = cmp_cfl;
        }
      }
      std::cerr << "resolved-config: " << rc.dump() << "\n";

      if (active == sub_exact) {
        text = run_exact(r, parse_init(init_spec), taus, sample_grid(x_lo, xh, points), format);
      } else if (active == sub_delta) {
        text = run_delta(r, x_star, taus, sample_grid(x_lo, xh, points), format);
      } else if (active == sub_mc) {
        text = run_mc(r, parse_init(init_spec), taus, paths, seed, threads, bins, format);
      } else if (active == sub_pde) {
        text = run_pde(r, nu_ratio_flag > 0.0 ? nu_ratio_flag : r.nu_ratio, parse_init(init_spec),
                       taus, cells, cfl, pde_x_lo, pde_xh, format);
      } else {
        text = run_compare(mode, r, parse_init(init_spec), taus, cmp_paths, seed, threads,
                           cmp_cells, cmp_cfl);
      }
    }
    write_output(text, out);
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
