#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fraclab/levy_params.hpp"
#include "fraclab/rng.hpp"
#include "fraclab/stats.hpp"

namespace fraclab {

/// Symmetric stable draw with characteristic function exp(-scale |p|^lam)
/// (Chambers-Mallows-Stuck).
double draw_stable_symmetric(PhiloxStream& rng, double lam, double scale);

/// Positive stable draw with Laplace transform exp(-scale s^order),
/// 0 < order < 1 (Kanter's representation).
double draw_stable_one_sided(PhiloxStream& rng, double order, double scale);

/// Fills `out` with one-sided draws; the vectorizable bulk path.
void draw_stable_one_sided_batch(PhiloxStream& rng, double order, double scale,
                                 std::span<double> out);

/// Rotationally invariant stable vector in out.size() dimensions with
/// characteristic function exp(-scale |p|^lam). One dimension uses CMS;
/// higher dimensions use sqrt(A) G with A one-sided of order lam/2 and
/// G ~ N(0, 2 I).
void draw_stable_isotropic(PhiloxStream& rng, double lam, double scale, std::span<double> out);

std::vector<double> sample_stable_symmetric(double lam, double scale, std::size_t n,
                                            std::uint64_t seed);
std::vector<double> sample_stable_one_sided(double order, double scale, std::size_t n,
                                            std::uint64_t seed);

struct WalkEnsemble {
  std::vector<double> endpoints;  // n_walkers x dim, row-major
  std::size_t n_walkers = 0;
  double t = 0.0;
  LevyParams params;
  std::uint64_t seed = 0;
  std::uint64_t n_steps = 0;  // per walker for plain walks, summed over walkers when subordinated
  double ds = 0.0;            // pseudotime step, 0 for plain walks

  int dim() const { return params.dim; }
  double coordinate(std::size_t walker, int axis) const {
    return endpoints[walker * params.dim + axis];
  }
  std::vector<double> first_coordinates() const;
  std::vector<double> radii() const;
};

/// Sum of n_steps symmetric stable increments of scale D_lam t / n_steps.
/// Requires gamma = 0.
WalkEnsemble simulate_walk(const LevyParams& params, double t, std::size_t n_walkers,
                           std::uint64_t n_steps, std::uint64_t seed);

/// Walk in pseudotime s with step ds: physical time grows by one-sided
/// increments of order 1 - gamma and scale ds until it first passes t; the
/// crossing step is cut at the linearly interpolated fraction. The position
/// is the stable displacement over the total pseudotime, drawn in one piece
/// (independent increments aggregate exactly). Requires gamma > 0.
WalkEnsemble simulate_subordinated(const LevyParams& params, double t, std::size_t n_walkers,
                                   double ds, std::uint64_t seed);

struct SubordinatorPath {
  std::vector<double> s_values;
  std::vector<double> t_values;
};

/// The physical-time path of one walker of simulate_subordinated (same
/// random stream), from s = 0 to the first passage of t.
SubordinatorPath subordinator_path(const LevyParams& params, double t, double ds,
                                   std::uint64_t seed, std::size_t walker);

/// Histogram of the first coordinate of every endpoint.
Histogram histogram_endpoints(const WalkEnsemble& ens, Histogram empty);

}  // namespace fraclab
