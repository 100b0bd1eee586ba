#include "fraclab/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

std::uint64_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), below + above);
}

void Histogram::add(double x) {
  const double u = (x - lo) / width;
  if (!(u >= 0.0)) {
    ++below;  // also catches NaN, which cannot occur for valid samples
    return;
  }
  const double b = std::floor(u);
  if (b >= static_cast<double>(counts.size())) {
    ++above;
    return;
  }
  ++counts[static_cast<std::size_t>(b)];
}

Histogram grid_aligned_histogram(const GridSpec& grid, int cells_per_bin, double window) {
  grid.validate();
  if (cells_per_bin < 1 || cells_per_bin % 2 == 0)
    throw ParameterError("cells per bin must be a positive odd number");
  const double h = grid.spacing();
  const double w = h * cells_per_bin;
  window = std::min(window, grid.extent - 0.5 * h);
  const long side = static_cast<long>(std::floor((window - 0.5 * w) / w));
  if (side < 0) throw ParameterError("histogram window is narrower than one bin");
  Histogram hist;
  hist.width = w;
  hist.lo = -(side + 0.5) * w;
  hist.counts.assign(static_cast<std::size_t>(2 * side + 1), 0);
  return hist;
}

std::vector<double> bin_probabilities(std::span<const double> marginal, const GridSpec& grid,
                                      const Histogram& hist) {
  const double h = grid.spacing();
  if (static_cast<int>(marginal.size()) != grid.points)
    throw InputError("marginal length does not match the grid");
  // Cell j covers [x_j - h/2, x_j + h/2).
  const double first_edge = (hist.lo - (grid.coordinate(0) - 0.5 * h)) / h;
  const double per_bin = hist.width / h;
  const long j0 = std::lround(first_edge);
  const long m = std::lround(per_bin);
  if (std::abs(first_edge - j0) > 1e-6 || std::abs(per_bin - m) > 1e-6 || m < 1)
    throw InputError("histogram bins are not aligned with the density grid cells");
  if (j0 < 0 || j0 + m * static_cast<long>(hist.bins()) > grid.points)
    throw InputError("histogram window extends beyond the density grid");
  std::vector<double> probs(hist.bins(), 0.0);
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    double s = 0.0;
    for (long j = j0 + static_cast<long>(b) * m; j < j0 + static_cast<long>(b + 1) * m; ++j)
      s += marginal[static_cast<std::size_t>(j)];
    probs[b] = s * h;
  }
  return probs;
}

TestResult chi_square_test(const Histogram& hist, std::span<const double> probs,
                           double significance) {
  if (probs.size() != hist.bins()) throw InputError("probability count does not match bins");
  const double n = static_cast<double>(hist.total());
  if (n <= 0.0) throw InputError("empty histogram");
  std::vector<double> expected;
  std::vector<double> observed;
  double inside = 0.0;
  for (std::size_t b = 0; b < probs.size(); ++b) {
    expected.push_back(n * std::max(probs[b], 0.0));
    observed.push_back(static_cast<double>(hist.counts[b]));
    inside += std::max(probs[b], 0.0);
  }
  expected.push_back(n * std::max(0.0, 1.0 - inside));
  observed.push_back(static_cast<double>(hist.below + hist.above));

  // Pool left to right until each pooled cell expects at least 5.
  std::vector<double> e2, o2;
  double eacc = 0.0, oacc = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    eacc += expected[i];
    oacc += observed[i];
    if (eacc >= 5.0) {
      e2.push_back(eacc);
      o2.push_back(oacc);
      eacc = oacc = 0.0;
    }
  }
  if (eacc > 0.0 || oacc > 0.0) {
    if (e2.empty()) {
      e2.push_back(eacc);
      o2.push_back(oacc);
    } else {
      e2.back() += eacc;
      o2.back() += oacc;
    }
  }
  TestResult r;
  for (std::size_t i = 0; i < e2.size(); ++i) {
    if (e2[i] > 0.0) r.statistic += (o2[i] - e2[i]) * (o2[i] - e2[i]) / e2[i];
    else if (o2[i] > 0.0) r.statistic = std::numeric_limits<double>::infinity();
  }
  r.dof = static_cast<int>(e2.size()) - 1;
  if (r.dof < 1) throw InputError("chi-square test needs at least two pooled cells");
  boost::math::chi_squared dist(r.dof);
  r.p_value = std::isfinite(r.statistic) ? boost::math::cdf(boost::math::complement(dist, r.statistic)) : 0.0;
  r.critical = boost::math::quantile(boost::math::complement(dist, significance));
  return r;
}

double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.27) return 1.0;  // series converges slowly; the tail is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k & 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_critical(double significance) {
  if (!(significance > 0.0 && significance < 1.0)) throw ParameterError("significance must lie in (0, 1)");
  double lo = 0.27, hi = 5.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (kolmogorov_tail(mid) > significance ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

TestResult ks_finish(double d, double n_eff, double significance) {
  TestResult r;
  r.statistic = d;
  const double sq = std::sqrt(n_eff);
  // Stephens' small-sample correction.
  r.p_value = kolmogorov_tail((sq + 0.12 + 0.11 / sq) * d);
  r.critical = kolmogorov_critical(significance) / sq;
  return r;
}

}  // namespace

TestResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                   double significance) {
  if (samples.empty()) throw InputError("KS test needs samples");
  std::vector<double> x(samples.begin(), samples.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return ks_finish(d, n, significance);
}

TestResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                         double significance) {
  if (a.empty() || b.empty()) throw InputError("KS test needs samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return ks_finish(d, n * m / (n + m), significance);
}

double hill_estimator(std::span<const double> samples, std::size_t k) {
  if (k < 2 || k >= samples.size()) throw ParameterError("Hill estimator needs 2 <= k < n");
  std::vector<double> a(samples.size());
  std::transform(samples.begin(), samples.end(), a.begin(), [](double v) { return std::abs(v); });
  std::nth_element(a.begin(), a.begin() + static_cast<long>(k), a.end(), std::greater<>());
  const double threshold = a[k];
  if (!(threshold > 0.0)) throw InputError("Hill estimator threshold is zero");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(a[i] / threshold);
  return static_cast<double>(k) / s;
}

std::function<double(double)> grid_cdf(std::span<const double> marginal, const GridSpec& grid) {
  const double h = grid.spacing();
  auto edges = std::make_shared<std::vector<double>>(marginal.size() + 1, 0.0);
  for (std::size_t j = 0; j < marginal.size(); ++j) (*edges)[j + 1] = (*edges)[j] + marginal[j] * h;
  const double first = grid.coordinate(0) - 0.5 * h;
  return [edges, first, h](double x) {
    const double u = (x - first) / h;
    if (u <= 0.0) return 0.0;
    const std::size_t cells = edges->size() - 1;
    if (u >= static_cast<double>(cells)) return edges->back();
    const std::size_t j = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(j);
    return (*edges)[j] + f * ((*edges)[j + 1] - (*edges)[j]);
  };
}

}  // namespace fraclab
