#include "specapprox/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "specapprox/error.hpp"

namespace specapprox {

namespace {

constexpr int kClassNormPatience = 10;
constexpr std::size_t kClassNormCap = 10000;

void require_same_spectrum(const SpectralVector& f, const SpectralVector& g, const char* op) {
  if (!f.spectrum().same_as(g.spectrum())) {
    throw ValidationError(fmt::format("{}: vectors live on different spectra", op));
  }
}

}  // namespace

bool DiscreteSpectrum::same_as(const DiscreteSpectrum& other) const noexcept {
  return values_ == other.values_ || *values_ == *other.values_;
}

DiscreteSpectrum make_spectrum(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) {
    throw ValidationError("spectrum must contain at least one eigenvalue");
  }
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!std::isfinite(eigenvalues[i])) {
      throw ValidationError(fmt::format("non-finite eigenvalue at index {}", i));
    }
    if (eigenvalues[i] < 0.0) {
      throw ValidationError(fmt::format("negative eigenvalue at index {}", i));
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return DiscreteSpectrum(std::make_shared<const std::vector<double>>(std::move(eigenvalues)));
}

SpectralVector::SpectralVector(DiscreteSpectrum spectrum, std::vector<double> coeffs)
    : spectrum_(std::move(spectrum)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != spectrum_.size()) {
    throw ValidationError(fmt::format("coefficient count {} does not match spectrum size {}",
                                      coeffs_.size(), spectrum_.size()));
  }
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!std::isfinite(coeffs_[k])) {
      throw ValidationError(fmt::format("non-finite coefficient at index {}", k));
    }
  }
}

SpectralVector SpectralVector::zeros(DiscreteSpectrum spectrum) {
  const auto n = spectrum.size();
  return {std::move(spectrum), std::vector<double>(n, 0.0)};
}

bool SpectralVector::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
}

SpectralVector subtract(const SpectralVector& f, const SpectralVector& g) {
  require_same_spectrum(f, g, "subtract");
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k] - g[k];
  return {f.spectrum(), std::move(out)};
}

SpectralVector project(const SpectralVector& f, double r) {
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.lambda(k) <= r) out[k] = f[k];
  }
  return {f.spectrum(), std::move(out)};
}

SpectralVector apply_power(const SpectralVector& f, unsigned n) {
  std::vector<double> out(f.coeffs().begin(), f.coeffs().end());
  if (n == 0) return {f.spectrum(), std::move(out)};
  for (std::size_t k = 0; k < f.size(); ++k) {
    out[k] *= std::pow(f.lambda(k), static_cast<double>(n));
  }
  return {f.spectrum(), std::move(out)};
}

double norm(const SpectralVector& f) {
  double sum = 0.0;
  for (double c : f.coeffs()) sum += c * c;
  return std::sqrt(sum);
}

double log_power_norm(const SpectralVector& f, unsigned n) {
  // log-sum-exp over ln(lambda_k^n |f_k|)
  const double minus_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(f.size(), minus_inf);
  double top = minus_inf;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] == 0.0) continue;
    const double lam = f.lambda(k);
    if (lam == 0.0 && n > 0) continue;
    logs[k] = (n == 0 ? 0.0 : n * std::log(lam)) + std::log(std::abs(f[k]));
    top = std::max(top, logs[k]);
  }
  if (top == minus_inf) return minus_inf;
  double sum = 0.0;
  for (double l : logs) {
    if (l != minus_inf) sum += std::exp(2.0 * (l - top));
  }
  return top + 0.5 * std::log(sum);
}

double sobolev_norm(const SpectralVector& f, int s) {
  if (s == 0) return norm(f);
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double c2 = f[k] * f[k];
    const double lam = f.lambda(k);
    if (s > 0) {
      sum += (1.0 + std::pow(lam, 2.0 * s)) * c2;
    } else {
      sum += std::pow(1.0 + lam, 2.0 * s) * c2;
    }
  }
  return std::sqrt(sum);
}

double vector_type(const SpectralVector& f) {
  for (std::size_t k = f.size(); k-- > 0;) {
    if (f[k] != 0.0) return f.lambda(k);
  }
  throw ValidationError("type undefined for zero vector");
}

double class_norm(const SpectralVector& f, const GrowthSequence& m, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError(fmt::format("class norm needs alpha > 0, got {}", alpha));
  }
  const double log_alpha = std::log(alpha);
  std::size_t cap = kClassNormCap;
  if (auto len = m.length()) cap = std::min(cap, *len - 1);

  double best = -std::numeric_limits<double>::infinity();
  double previous = best;
  int quiet_steps = 0;
  for (std::size_t n = 0; n <= cap; ++n) {
    const double term =
        log_power_norm(f, static_cast<unsigned>(n)) - n * log_alpha - m.log_value(n);
    best = std::max(best, term);
    if (n > 0) {
      quiet_steps = term <= previous ? quiet_steps + 1 : 0;
      if (quiet_steps >= kClassNormPatience) return std::exp(best);
    }
    previous = term;
  }
  throw NumericalError(fmt::format(
      "class norm diverges: ratio ||A^n f||/(alpha^n m_n) still growing at n = {} ({}, alpha={})",
      cap, m.describe(), alpha));
}

}  // namespace specapprox
