#include "specapprox/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "specapprox/error.hpp"

namespace specapprox {

namespace {

SpectralVector scale_modes(const SpectralVector& f, auto&& factor) {
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = factor(f.lambda(k)) * f[k];
  return {f.spectrum(), std::move(out)};
}

}  // namespace

SolutionHandle SolutionHandle::shifted(double s) const {
  return SolutionHandle(evolve(*this, s).state);
}

EvolvedState evolve(const SolutionHandle& y, double t) {
  if (!std::isfinite(t)) throw ValidationError("evolve: time must be finite");
  auto state = scale_modes(y.initial(), [t](double lam) { return std::exp(-lam * t); });
  return {std::move(state), t < 0.0 ? TimeDirection::Backward : TimeDirection::Forward};
}

SpectralVector derivative(const SolutionHandle& y, unsigned n, double t) {
  if (!(t >= 0.0)) {
    throw ValidationError(fmt::format("derivative: time must be >= 0, got {}", t));
  }
  return scale_modes(y.initial(), [n, t](double lam) {
    const double power = n == 0 ? 1.0 : std::pow(-lam, static_cast<double>(n));
    return power * std::exp(-lam * t);
  });
}

double sup_norm(const SolutionHandle& y) { return norm(y.initial()); }

SolutionHandle difference_power(const SolutionHandle& y, double h, unsigned k) {
  if (!(h >= 0.0)) {
    throw ValidationError(fmt::format("difference_power: step must be >= 0, got {}", h));
  }
  if (k == 0) return y;
  return SolutionHandle(scale_modes(y.initial(), [h, k](double lam) {
    return std::pow(std::expm1(-lam * h), static_cast<double>(k));
  }));
}

double log_entire_eval(const SolutionHandle& y, std::complex<double> z) {
  const auto& f = y.initial();
  const double re = z.real();
  const double minus_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(f.size(), minus_inf);
  double top = minus_inf;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0.0) continue;
    logs[k] = -f.lambda(k) * re + std::log(std::abs(f[k]));
    top = std::max(top, logs[k]);
  }
  if (top == minus_inf) return minus_inf;
  double sum = 0.0;
  for (double l : logs) {
    if (l != minus_inf) sum += std::exp(2.0 * (l - top));
  }
  return top + 0.5 * std::log(sum);
}

double entire_eval(const SolutionHandle& y, std::complex<double> z) {
  const double re = z.real();
  const auto& f = y.initial();
  // Scale by the largest magnitude so squaring cannot overflow when the
  // norm itself is representable.
  std::vector<double> m(f.size());
  double top = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    m[k] = std::abs(std::exp(-f.lambda(k) * re) * f[k]);
    top = std::max(top, m[k]);
  }
  if (top == 0.0) return 0.0;
  if (std::isinf(top)) return std::exp(log_entire_eval(y, z));
  double sum = 0.0;
  for (double v : m) sum += (v / top) * (v / top);
  return top * std::sqrt(sum);
}

}  // namespace specapprox
