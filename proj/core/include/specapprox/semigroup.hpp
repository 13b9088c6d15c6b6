#pragma once

#include <complex>

#include "specapprox/spectral_core.hpp"

namespace specapprox {

/// A weak solution y(t) = e^{-At} f, identified with its initial vector f.
class SolutionHandle {
 public:
  explicit SolutionHandle(SpectralVector initial) : initial_(std::move(initial)) {}

  const SpectralVector& initial() const noexcept { return initial_; }

  /// The solution started from y(s) instead of f, i.e. t -> y(t + s).
  SolutionHandle shifted(double s) const;

 private:
  SpectralVector initial_;
};

enum class TimeDirection { Forward, Backward };

/// Value of y at a time, tagged when the time was negative (the entire
/// extension of a finite-type solution evaluated backwards).
struct EvolvedState {
  SpectralVector state;
  TimeDirection direction;

  bool backward() const noexcept { return direction == TimeDirection::Backward; }
};

/// y(t): coefficients e^{-lambda_k t} f_k.
EvolvedState evolve(const SolutionHandle& y, double t);

/// y^{(n)}(t): coefficients (-lambda_k)^n e^{-lambda_k t} f_k. Requires t >= 0.
SpectralVector derivative(const SolutionHandle& y, unsigned n, double t);

/// sup_{t >= 0} ||y(t)||, which equals ||f||.
double sup_norm(const SolutionHandle& y);

/// Delta_h^k y = (e^{-Ah} - I)^k y, in closed diagonal form.
SolutionHandle difference_power(const SolutionHandle& y, double h, unsigned k);

/// ||y(z)|| for complex z, using |e^{-lambda z}| = e^{-lambda Re z}.
/// Overflows to +inf for very negative Re z; see log_entire_eval.
double entire_eval(const SolutionHandle& y, std::complex<double> z);

/// ln ||y(z)||, safe against overflow. -inf for the zero solution.
double log_entire_eval(const SolutionHandle& y, std::complex<double> z);

}  // namespace specapprox
