#include "fraclab/levy_walks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclab/errors.hpp"
#include "fraclab/parallel.hpp"

namespace fraclab {
namespace kernels {
void one_sided_kanter(const double* uw, double* out, std::size_t n, double a, double scale);
}

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBatch = 256;

void check_symmetric(double lam, double scale) {
  if (!(lam > 0.0 && lam <= 2.0)) throw ParameterError("lambda must lie in (0, 2]");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("scale must be positive");
}

void check_one_sided(double order, double scale) {
  if (!(order > 0.0 && order < 1.0)) throw ParameterError("one-sided order must lie in (0, 1)");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ParameterError("scale must be positive");
}

// Unchecked kernels.
double cms(PhiloxStream& rng, double lam, double scale) {
  const double v = kPi * (rng.next_uniform() - 0.5);
  const double w = -std::log(rng.next_uniform());
  double x;
  if (lam == 1.0) {
    x = std::tan(v);
  } else {
    x = std::sin(lam * v) / std::pow(std::cos(v), 1.0 / lam) *
        std::pow(std::cos((1.0 - lam) * v) / w, (1.0 - lam) / lam);
  }
  return std::pow(scale, 1.0 / lam) * x;
}

double kanter(PhiloxStream& rng, double a, double scale) {
  const double uw[2] = {rng.next_uniform(), rng.next_uniform()};
  double out;
  kernels::one_sided_kanter(uw, &out, 1, a, scale);
  return out;
}

// Two independent N(0, 2) variates.
std::array<double, 2> normal_pair(PhiloxStream& rng) {
  const double r = std::sqrt(-4.0 * std::log(rng.next_uniform()));
  const double th = 2.0 * kPi * rng.next_uniform();
  return {r * std::cos(th), r * std::sin(th)};
}

void isotropic(PhiloxStream& rng, double lam, double scale, std::span<double> out) {
  if (out.size() == 1) {
    out[0] = cms(rng, lam, scale);
    return;
  }
  const double a = lam == 2.0 ? scale : kanter(rng, 0.5 * lam, scale);
  const double s = std::sqrt(a);
  for (std::size_t i = 0; i < out.size(); i += 2) {
    const auto g = normal_pair(rng);
    out[i] = s * g[0];
    if (i + 1 < out.size()) out[i + 1] = s * g[1];
  }
}

void check_walk_common(const LevyParams& params, double t, std::size_t n_walkers) {
  params.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive");
  if (n_walkers < 1) throw ParameterError("walkers must be at least 1");
}

// Pseudotime at which the one-sided walk first passes `target`.
// Returns the number of whole steps taken through *steps.
double first_passage(PhiloxStream& rng, double alpha, double ds, double target,
                     std::uint64_t* steps, SubordinatorPath* path) {
  std::array<double, 2 * kBatch> uw{};
  std::array<double, kBatch> dt{};
  double t_now = 0.0;
  std::uint64_t k = 0;
  // Inverse stable subordinators have all moments; this bound is never
  // reached for sane ds.
  const std::uint64_t limit = 1000 * static_cast<std::uint64_t>(std::pow(target, alpha) / ds) + 1000000;
  if (path) {
    path->s_values.assign(1, 0.0);
    path->t_values.assign(1, 0.0);
  }
  for (;;) {
    rng.fill_uniform(uw.data(), uw.size());
    kernels::one_sided_kanter(uw.data(), dt.data(), kBatch, alpha, ds);
    for (std::size_t i = 0; i < kBatch; ++i) {
      if (t_now + dt[i] >= target) {
        const double f = (target - t_now) / dt[i];
        if (path) {
          path->s_values.push_back((static_cast<double>(k) + f) * ds);
          path->t_values.push_back(target);
        }
        *steps = k + 1;
        return (static_cast<double>(k) + f) * ds;
      }
      t_now += dt[i];
      ++k;
      if (path) {
        path->s_values.push_back(static_cast<double>(k) * ds);
        path->t_values.push_back(t_now);
      }
    }
    if (k > limit) throw ConvergenceError("subordinator failed to reach the target time");
  }
}

void check_step(double alpha, double ds, double t) {
  if (!(ds > 0.0) || !std::isfinite(ds)) throw ParameterError("ds must be positive");
  // Typical physical-time increment is ds^{1/alpha}.
  const double typical = std::pow(ds, 1.0 / alpha);
  if (typical > 0.05 * t) {
    std::ostringstream os;
    os << "pseudotime step " << ds << " gives physical increments of order " << typical
       << ", above 5% of t = " << t << "; use ds <= " << std::pow(0.05 * t, alpha);
    throw StepSizeError(os.str());
  }
}

}  // namespace

double draw_stable_symmetric(PhiloxStream& rng, double lam, double scale) {
  check_symmetric(lam, scale);
  return cms(rng, lam, scale);
}

double draw_stable_one_sided(PhiloxStream& rng, double order, double scale) {
  check_one_sided(order, scale);
  return kanter(rng, order, scale);
}

void draw_stable_one_sided_batch(PhiloxStream& rng, double order, double scale,
                                 std::span<double> out) {
  check_one_sided(order, scale);
  std::array<double, 2 * kBatch> uw{};
  for (std::size_t b = 0; b < out.size(); b += kBatch) {
    const std::size_t m = std::min(kBatch, out.size() - b);
    rng.fill_uniform(uw.data(), 2 * m);
    kernels::one_sided_kanter(uw.data(), out.data() + b, m, order, scale);
  }
}

void draw_stable_isotropic(PhiloxStream& rng, double lam, double scale, std::span<double> out) {
  check_symmetric(lam, scale);
  if (out.empty()) throw ParameterError("dimension must be at least 1");
  isotropic(rng, lam, scale, out);
}

std::vector<double> sample_stable_symmetric(double lam, double scale, std::size_t n,
                                            std::uint64_t seed) {
  check_symmetric(lam, scale);
  if (n < 1) throw ParameterError("sample count must be at least 1");
  std::vector<double> out(n);
  parallel_for(n, 1 << 16, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      PhiloxStream rng(seed, i);
      out[i] = cms(rng, lam, scale);
    }
  });
  return out;
}

std::vector<double> sample_stable_one_sided(double order, double scale, std::size_t n,
                                            std::uint64_t seed) {
  check_one_sided(order, scale);
  if (n < 1) throw ParameterError("sample count must be at least 1");
  std::vector<double> out(n);
  parallel_for(n, 1 << 16, [&](std::size_t b, std::size_t e) {
    std::vector<double> uw(2 * (e - b));
    for (std::size_t i = b; i < e; ++i) {
      PhiloxStream rng(seed, i);
      uw[2 * (i - b)] = rng.next_uniform();
      uw[2 * (i - b) + 1] = rng.next_uniform();
    }
    kernels::one_sided_kanter(uw.data(), out.data() + b, e - b, order, scale);
  });
  return out;
}

std::vector<double> WalkEnsemble::first_coordinates() const {
  std::vector<double> x(n_walkers);
  for (std::size_t i = 0; i < n_walkers; ++i) x[i] = coordinate(i, 0);
  return x;
}

std::vector<double> WalkEnsemble::radii() const {
  std::vector<double> r(n_walkers);
  for (std::size_t i = 0; i < n_walkers; ++i) {
    double s = 0.0;
    for (int a = 0; a < params.dim; ++a) s += coordinate(i, a) * coordinate(i, a);
    r[i] = std::sqrt(s);
  }
  return r;
}

WalkEnsemble simulate_walk(const LevyParams& params, double t, std::size_t n_walkers,
                           std::uint64_t n_steps, std::uint64_t seed) {
  check_walk_common(params, t, n_walkers);
  if (params.gamma != 0.0)
    throw PreconditionError("gamma > 0 needs simulate_subordinated, not simulate_walk");
  if (n_steps < 1) throw ParameterError("steps must be at least 1");
  WalkEnsemble ens;
  ens.n_walkers = n_walkers;
  ens.t = t;
  ens.params = params;
  ens.seed = seed;
  ens.n_steps = n_steps;
  const int d = params.dim;
  ens.endpoints.assign(n_walkers * d, 0.0);
  const double step_scale = params.d_lam * t / static_cast<double>(n_steps);
  parallel_for(n_walkers, 4096, [&](std::size_t b, std::size_t e) {
    std::vector<double> inc(d);
    for (std::size_t wk = b; wk < e; ++wk) {
      PhiloxStream rng(seed, wk);
      double* x = ens.endpoints.data() + wk * d;
      for (std::uint64_t s = 0; s < n_steps; ++s) {
        isotropic(rng, params.lam, step_scale, inc);
        for (int a = 0; a < d; ++a) x[a] += inc[a];
      }
    }
  });
  return ens;
}

WalkEnsemble simulate_subordinated(const LevyParams& params, double t, std::size_t n_walkers,
                                   double ds, std::uint64_t seed) {
  check_walk_common(params, t, n_walkers);
  if (params.gamma == 0.0)
    throw PreconditionError("gamma = 0 needs simulate_walk, not simulate_subordinated");
  const double alpha = params.time_order();
  check_step(alpha, ds, t);
  WalkEnsemble ens;
  ens.n_walkers = n_walkers;
  ens.t = t;
  ens.params = params;
  ens.seed = seed;
  ens.ds = ds;
  const int d = params.dim;
  ens.endpoints.assign(n_walkers * d, 0.0);
  std::vector<std::uint64_t> steps(n_walkers, 0);
  parallel_for(n_walkers, 1024, [&](std::size_t b, std::size_t e) {
    for (std::size_t wk = b; wk < e; ++wk) {
      PhiloxStream time_rng(seed, 2 * wk);
      PhiloxStream space_rng(seed, 2 * wk + 1);
      const double s = first_passage(time_rng, alpha, ds, t, &steps[wk], nullptr);
      isotropic(space_rng, params.lam, params.d_lam * s,
                std::span<double>(ens.endpoints.data() + wk * d, d));
    }
  });
  for (auto k : steps) ens.n_steps += k;
  return ens;
}

SubordinatorPath subordinator_path(const LevyParams& params, double t, double ds,
                                   std::uint64_t seed, std::size_t walker) {
  check_walk_common(params, t, 1);
  if (params.gamma == 0.0) throw PreconditionError("subordinator paths need gamma > 0");
  const double alpha = params.time_order();
  check_step(alpha, ds, t);
  SubordinatorPath path;
  PhiloxStream rng(seed, 2 * walker);
  std::uint64_t steps = 0;
  first_passage(rng, alpha, ds, t, &steps, &path);
  return path;
}

Histogram histogram_endpoints(const WalkEnsemble& ens, Histogram hist) {
  for (std::size_t i = 0; i < ens.n_walkers; ++i) hist.add(ens.coordinate(i, 0));
  return hist;
}

}  // namespace fraclab
