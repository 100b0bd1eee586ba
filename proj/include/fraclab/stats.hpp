#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fraclab/levy_params.hpp"

namespace fraclab {

/// Counts of the first coordinate in equal bins [lo + i w, lo + (i+1) w).
/// Samples outside the binned window are kept in `below` / `above` so the
/// bin probabilities plus the outside probability sum to one.
struct Histogram {
  double lo = 0.0;
  double width = 1.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t below = 0;
  std::uint64_t above = 0;

  std::size_t bins() const { return counts.size(); }
  double hi() const { return lo + width * static_cast<double>(counts.size()); }
  std::uint64_t total() const;
  void add(double x);
};

/// Histogram whose bins are unions of `cells_per_bin` (odd) grid cells, the
/// middle bin centred on the origin cell, covering at most |x| <= window.
Histogram grid_aligned_histogram(const GridSpec& grid, int cells_per_bin, double window);

/// Probability mass of each histogram bin from a first-coordinate marginal
/// sampled on `grid` (cell sums). Throws InputError when bin edges do not
/// fall on cell edges.
std::vector<double> bin_probabilities(std::span<const double> marginal, const GridSpec& grid,
                                      const Histogram& hist);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  double critical = 0.0;  // at the requested significance
  int dof = 0;            // chi-square only
  bool pass(double significance) const { return p_value > significance; }
};

/// Pearson chi-square of the histogram (including the outside cell) against
/// bin probabilities; adjacent cells are pooled until each expects >= 5.
TestResult chi_square_test(const Histogram& hist, std::span<const double> probs,
                           double significance = 0.01);

/// One-sample Kolmogorov-Smirnov against a continuous CDF. Sorts a copy.
TestResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double significance = 0.01);

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double significance = 0.01);

/// Asymptotic Kolmogorov tail probability P(K > x).
double kolmogorov_tail(double x);

/// Asymptotic critical value c with P(K > c) = significance (1.628 at 1%).
double kolmogorov_critical(double significance);

/// Hill estimate of the tail index from the k largest |samples|.
double hill_estimator(std::span<const double> samples, std::size_t k);

/// Piecewise-linear CDF of a first-coordinate marginal sampled on `grid`,
/// exact at cell edges.
std::function<double(double)> grid_cdf(std::span<const double> marginal, const GridSpec& grid);

}  // namespace fraclab
