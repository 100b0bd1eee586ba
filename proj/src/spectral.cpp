#include "fraclab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace fraclab {
namespace {

// FFTW planning is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

}  // namespace

struct SpectralGrid::Impl {
  std::vector<int> dims;
  std::size_t total = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  Impl(const GridSpec& g) {
    dims.assign(g.dim, g.points);
    total = g.size();
    std::unique_ptr<fftw_complex, FftwDeleter> scratch(fftw_alloc_complex(total));
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft(g.dim, dims.data(), scratch.get(), scratch.get(), FFTW_FORWARD,
                            FFTW_ESTIMATE);
    backward = fftw_plan_dft(g.dim, dims.data(), scratch.get(), scratch.get(), FFTW_BACKWARD,
                             FFTW_ESTIMATE);
    if (!forward || !backward) throw std::runtime_error("FFTW planning failed");
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

SpectralGrid::SpectralGrid(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  impl_ = std::make_unique<Impl>(grid_);
}

SpectralGrid::~SpectralGrid() = default;
SpectralGrid::SpectralGrid(SpectralGrid&&) noexcept = default;
SpectralGrid& SpectralGrid::operator=(SpectralGrid&&) noexcept = default;

std::vector<int> SpectralGrid::unflatten(std::size_t flat) const {
  std::vector<int> idx(grid_.dim);
  for (int a = grid_.dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % grid_.points);
    flat /= grid_.points;
  }
  return idx;
}

std::size_t SpectralGrid::flatten(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < grid_.dim; ++a) flat = flat * grid_.points + idx[a];
  return flat;
}

long long SpectralGrid::k_squared(std::size_t flat) const {
  long long k2 = 0;
  for (int a = grid_.dim - 1; a >= 0; --a) {
    const int j = static_cast<int>(flat % grid_.points);
    flat /= grid_.points;
    const long long k = folded_wavenumber(j, grid_.points);
    k2 += k * k;
  }
  return k2;
}

double SpectralGrid::radius(std::size_t flat) const {
  double r2 = 0.0;
  for (int a = grid_.dim - 1; a >= 0; --a) {
    const int j = static_cast<int>(flat % grid_.points);
    flat /= grid_.points;
    const double x = grid_.coordinate(j);
    r2 += x * x;
  }
  return std::sqrt(r2);
}

std::vector<double> SpectralGrid::multiplier_table(const std::function<double(double)>& m) const {
  const std::size_t n = size();
  const double dp = std::numbers::pi / grid_.extent;
  std::unordered_map<long long, double> memo;
  std::vector<double> table(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long long k2 = k_squared(i);
    auto it = memo.find(k2);
    if (it == memo.end()) it = memo.emplace(k2, m(dp * std::sqrt(static_cast<double>(k2)))).first;
    table[i] = it->second;
  }
  return table;
}

void SpectralGrid::apply_table(std::span<const double> field, std::span<const double> table,
                               std::span<double> out) const {
  const std::size_t n = size();
  if (field.size() != n || out.size() != n || table.size() != n)
    throw std::invalid_argument("apply_table: size does not match grid");
  std::unique_ptr<fftw_complex, FftwDeleter> buf(fftw_alloc_complex(n));
  fftw_complex* c = buf.get();
  for (std::size_t i = 0; i < n; ++i) {
    c[i][0] = field[i];
    c[i][1] = 0.0;
  }
  fftw_execute_dft(impl_->forward, c, c);
  const double norm = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i][0] *= table[i] * norm;
    c[i][1] *= table[i] * norm;
  }
  fftw_execute_dft(impl_->backward, c, c);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i][0];
}

void SpectralGrid::apply_multiplier(std::span<const double> field,
                                    const std::function<double(double)>& m,
                                    std::span<double> out) const {
  apply_table(field, multiplier_table(m), out);
}

std::vector<double> SpectralGrid::synthesize(const std::function<double(double)>& phi) const {
  const std::size_t n = size();
  const int npts = grid_.points;
  const std::vector<double> table = multiplier_table(phi);
  std::unique_ptr<fftw_complex, FftwDeleter> buf(fftw_alloc_complex(n));
  fftw_complex* c = buf.get();
  // exp(i p_k x_j) with x_j = -L + j h gives the phase (-1)^k per axis.
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    int parity = 0;
    for (int a = 0; a < grid_.dim; ++a) {
      parity += folded_wavenumber(static_cast<int>(rest % npts), npts) & 1;
      rest /= npts;
    }
    c[i][0] = (parity % 2 == 0) ? table[i] : -table[i];
    c[i][1] = 0.0;
  }
  fftw_execute_dft(impl_->backward, c, c);
  const double norm = std::pow(2.0 * grid_.extent, -grid_.dim);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i][0] * norm;
  return out;
}

void SpectralGrid::symmetrize(std::span<double> field) const {
  const std::size_t n = size();
  const long long npts = grid_.points;
  std::vector<long long> stride(grid_.dim, 1);
  for (int a = grid_.dim - 2; a >= 0; --a) stride[a] = stride[a + 1] * npts;
  auto axis_index = [&](std::size_t i, int a) {
    return (static_cast<long long>(i) / stride[a]) % npts;
  };
  auto average_pair = [&](std::size_t i, long long m) {
    if (m <= static_cast<long long>(i)) return;
    const double avg = 0.5 * (field[i] + field[m]);
    field[i] = avg;
    field[m] = avg;
  };
  // Reflections: index j <-> (N - j) mod N on each axis.
  for (int a = 0; a < grid_.dim; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      const long long j = axis_index(i, a);
      const long long jm = (npts - j) % npts;
      average_pair(i, static_cast<long long>(i) + (jm - j) * stride[a]);
    }
  }
  // Axis transpositions.
  for (int a = 0; a < grid_.dim; ++a) {
    for (int b = a + 1; b < grid_.dim; ++b) {
      for (std::size_t i = 0; i < n; ++i) {
        const long long ja = axis_index(i, a);
        const long long jb = axis_index(i, b);
        average_pair(i, static_cast<long long>(i) + (jb - ja) * stride[a] + (ja - jb) * stride[b]);
      }
    }
  }
}

}  // namespace fraclab
