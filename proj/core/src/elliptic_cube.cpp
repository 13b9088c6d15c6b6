#include "specapprox/elliptic_cube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "specapprox/error.hpp"

namespace specapprox {

namespace {

constexpr std::size_t kWeylMinWindow = 20;

void validate(const CubeOperator& op) {
  if (op.q < 1 || op.q > 4) throw ValidationError(fmt::format("cube dimension q={} not in 1..4", op.q));
  if (!(op.a > 0.0) || !std::isfinite(op.a)) throw ValidationError("cube side a must be > 0");
  if (op.n_per_axis < 1) throw ValidationError("cube n_per_axis must be >= 1");
}

}  // namespace

double CubeOperator::unit() const { return std::numbers::pi * std::numbers::pi / (a * a); }

double CubeOperator::reliable_threshold() const {
  return unit() * static_cast<double>(n_per_axis) * n_per_axis;
}

CubeSpectrumIndex cube_spectrum(const CubeOperator& op) {
  validate(op);
  double count = std::pow(static_cast<double>(op.n_per_axis), op.q);
  if (count > static_cast<double>(op.mode_cap)) {
    throw ValidationError(fmt::format("cube spectrum has {} modes, above the cap of {}", count,
                                      op.mode_cap));
  }
  const auto total = static_cast<std::size_t>(count);

  struct Mode {
    long long sum_sq;
    std::vector<int> index;
  };
  std::vector<Mode> modes;
  modes.reserve(total);
  std::vector<int> idx(op.q, 1);
  for (std::size_t i = 0; i < total; ++i) {
    long long s = 0;
    for (int n : idx) s += static_cast<long long>(n) * n;
    modes.push_back({s, idx});
    // odometer in lexicographic order, last axis fastest
    for (int d = op.q - 1; d >= 0; --d) {
      if (++idx[d] <= op.n_per_axis) break;
      idx[d] = 1;
    }
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& l, const Mode& r) { return l.sum_sq < r.sum_sq; });

  std::vector<double> eigenvalues(total);
  std::vector<std::vector<int>> indices(total);
  std::vector<int> multiplicity(total, 1);
  const double unit = op.unit();
  for (std::size_t i = 0; i < total; ++i) {
    eigenvalues[i] = unit * static_cast<double>(modes[i].sum_sq);
    indices[i] = std::move(modes[i].index);
  }
  for (std::size_t i = 0; i < total;) {
    std::size_t j = i;
    while (j < total && modes[j].sum_sq == modes[i].sum_sq) ++j;
    std::fill(multiplicity.begin() + i, multiplicity.begin() + j, static_cast<int>(j - i));
    i = j;
  }
  return {op, make_spectrum(std::move(eigenvalues)), std::move(indices), std::move(multiplicity)};
}

std::size_t CubeSpectrumIndex::reliable_count() const {
  const long long n2 = static_cast<long long>(op.n_per_axis) * op.n_per_axis;
  std::size_t count = 0;
  for (const auto& mi : multi_indices) {
    long long s = 0;
    for (int n : mi) s += static_cast<long long>(n) * n;
    if (s > n2) break;
    ++count;
  }
  return count;
}

double eigenfunction_eval(const CubeOperator& op, std::span<const int> multi_index,
                          std::span<const double> x) {
  validate(op);
  if (multi_index.size() != static_cast<std::size_t>(op.q) ||
      x.size() != static_cast<std::size_t>(op.q)) {
    throw ValidationError(fmt::format("eigenfunction_eval: expected {} coordinates", op.q));
  }
  double value = std::pow(2.0 / op.a, 0.5 * op.q);
  for (int k = 0; k < op.q; ++k) {
    if (multi_index[k] < 1) throw ValidationError("eigenfunction_eval: indices must be >= 1");
    if (!(x[k] >= 0.0 && x[k] <= op.a)) {
      throw ValidationError(fmt::format("eigenfunction_eval: x[{}] = {} outside [0, {}]", k, x[k], op.a));
    }
    if (x[k] == 0.0 || x[k] == op.a) return 0.0;
    value *= std::sin(multi_index[k] * std::numbers::pi * x[k] / op.a);
  }
  return value;
}

double heat_solution_eval(const CubeSpectrumIndex& idx, const SpectralVector& f, double t,
                          std::span<const double> x) {
  if (!f.spectrum().same_as(idx.spectrum)) {
    throw ValidationError("heat_solution_eval: vector is not defined on the cube spectrum");
  }
  if (!(t >= 0.0)) throw ValidationError("heat_solution_eval: t must be >= 0");
  double u = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0.0) continue;
    u += std::exp(-f.lambda(k) * t) * f[k] * eigenfunction_eval(idx.op, idx.multi_indices[k], x);
  }
  return u;
}

WeylFit weyl_fit(const CubeSpectrumIndex& idx, int q, std::size_t first, std::size_t last) {
  if (q != idx.op.q) throw ValidationError("weyl_fit: q does not match the cube operator");
  if (first < 1 || last < first || last > idx.size()) {
    throw ValidationError(fmt::format("weyl_fit: window [{}, {}] outside 1..{}", first, last, idx.size()));
  }
  const std::size_t reliable = idx.reliable_count();
  if (last > reliable) {
    throw ValidationError(fmt::format(
        "weyl_fit: window end {} is past the reliable prefix of {} eigenvalues", last, reliable));
  }
  const std::size_t needed = std::max<std::size_t>(2, std::min(kWeylMinWindow, reliable));
  if (last - first + 1 < needed) {
    throw ValidationError(fmt::format("weyl_fit: window holds {} eigenvalues, need {}",
                                      last - first + 1, needed));
  }

  const double power = 2.0 / q;
  double mx = 0.0, my = 0.0;
  const auto count = static_cast<double>(last - first + 1);
  WeylFit fit;
  fit.c1 = std::numeric_limits<double>::infinity();
  fit.c2 = 0.0;
  for (std::size_t n = first; n <= last; ++n) {
    const double lam = idx.spectrum[n - 1];
    mx += std::log(static_cast<double>(n));
    my += std::log(lam);
    const double ratio = lam / std::pow(static_cast<double>(n), power);
    fit.c1 = std::min(fit.c1, ratio);
    fit.c2 = std::max(fit.c2, ratio);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t n = first; n <= last; ++n) {
    const double dx = std::log(static_cast<double>(n)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(idx.spectrum[n - 1]) - my);
  }
  fit.exponent = sxy / sxx;
  return fit;
}

std::vector<double> uniform_grid(double a, std::size_t grid_points) {
  std::vector<double> x(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    x[i] = a * static_cast<double>(i) / static_cast<double>(grid_points - 1);
  }
  x.back() = a;
  return x;
}

std::vector<double> fd_oracle_1d(double a, std::span<const double> initial, double t_final,
                                 std::size_t grid_points, double dt) {
  if (!(a > 0.0)) throw ValidationError("fd_oracle_1d: a must be > 0");
  if (grid_points < 11) throw ValidationError("fd_oracle_1d: need at least 11 grid points");
  if (initial.size() != grid_points) {
    throw ValidationError(fmt::format("fd_oracle_1d: {} initial values for {} grid points",
                                      initial.size(), grid_points));
  }
  if (!(dt > 0.0)) throw ValidationError("fd_oracle_1d: dt must be > 0");
  if (!(t_final >= 0.0)) throw ValidationError("fd_oracle_1d: t_final must be >= 0");

  std::vector<double> u(initial.begin(), initial.end());
  u.front() = 0.0;
  u.back() = 0.0;
  // Whole number of equal steps ending exactly at t_final.
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(t_final / dt - 1e-9)));
  if (steps == 0) return u;
  const double step = t_final / static_cast<double>(steps);

  const std::size_t m = grid_points - 2;
  const double dx = a / static_cast<double>(grid_points - 1);
  const double mu = 0.5 * step / (dx * dx);

  // Thomas factorization of tridiag(-mu, 1 + 2 mu, -mu), computed once.
  std::vector<double> c_prime(m), inv_pivot(m);
  double pivot = 1.0 + 2.0 * mu;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) pivot = 1.0 + 2.0 * mu - (-mu) * c_prime[i - 1];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
      throw NumericalError(fmt::format("fd_oracle_1d: zero pivot in tridiagonal solve at row {}", i));
    }
    inv_pivot[i] = 1.0 / pivot;
    c_prime[i] = -mu * inv_pivot[i];
  }

  std::vector<double> rhs(m);
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + 1;
      rhs[i] = u[j] + mu * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
    }
    rhs[0] *= inv_pivot[0];
    for (std::size_t i = 1; i < m; ++i) rhs[i] = (rhs[i] + mu * rhs[i - 1]) * inv_pivot[i];
    for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= c_prime[i] * rhs[i + 1];
    std::copy(rhs.begin(), rhs.end(), u.begin() + 1);
  }
  return u;
}

}  // namespace specapprox
