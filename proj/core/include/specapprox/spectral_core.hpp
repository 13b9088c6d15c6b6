#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "specapprox/growth_sequence.hpp"

namespace specapprox {

/// Ascending, nonnegative, finite list of eigenvalues standing in for a
/// nonnegative self-adjoint operator A with discrete spectrum. Copies share
/// the underlying storage.
class DiscreteSpectrum {
 public:
  std::span<const double> eigenvalues() const noexcept { return *values_; }
  std::size_t size() const noexcept { return values_->size(); }
  double operator[](std::size_t k) const { return (*values_)[k]; }
  double max() const noexcept { return values_->back(); }

  /// Same storage, or elementwise identical eigenvalues.
  bool same_as(const DiscreteSpectrum& other) const noexcept;

 private:
  explicit DiscreteSpectrum(std::shared_ptr<const std::vector<double>> values)
      : values_(std::move(values)) {}
  friend DiscreteSpectrum make_spectrum(std::vector<double> eigenvalues);

  std::shared_ptr<const std::vector<double>> values_;
};

/// Validates and sorts. Throws ValidationError on empty input or a negative
/// or non-finite entry (the message names the offending input index).
DiscreteSpectrum make_spectrum(std::vector<double> eigenvalues);

/// Fourier coefficients f_k of a vector in the eigenbasis of a spectrum.
class SpectralVector {
 public:
  SpectralVector(DiscreteSpectrum spectrum, std::vector<double> coeffs);

  /// Zero vector over the given spectrum.
  static SpectralVector zeros(DiscreteSpectrum spectrum);

  const DiscreteSpectrum& spectrum() const noexcept { return spectrum_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  double lambda(std::size_t k) const { return spectrum_[k]; }
  double operator[](std::size_t k) const { return coeffs_[k]; }

  bool is_zero() const noexcept;

 private:
  DiscreteSpectrum spectrum_;
  std::vector<double> coeffs_;
};

/// f - g; both vectors must live on the same spectrum.
SpectralVector subtract(const SpectralVector& f, const SpectralVector& g);

/// Spectral projection E(r) f: keeps modes with lambda_k <= r.
SpectralVector project(const SpectralVector& f, double r);

/// A^n f with the convention 0^0 = 1.
SpectralVector apply_power(const SpectralVector& f, unsigned n);

double norm(const SpectralVector& f);

/// ln ||A^n f||, evaluated without forming lambda^n. -inf for a zero result.
double log_power_norm(const SpectralVector& f, unsigned n);

/// Norm in the scale H^s: s > 0 uses (||f||^2 + ||A^s f||^2)^{1/2},
/// s < 0 uses ||(A + I)^s f||, s = 0 is the plain norm.
double sobolev_norm(const SpectralVector& f, int s);

/// Type sigma(f, A): the largest eigenvalue carrying a nonzero coefficient.
/// Throws ValidationError for the zero vector.
double vector_type(const SpectralVector& f);

/// sup_n ||A^n f|| / (alpha^n m_n).
///
/// The supremum is scanned from n = 0 and stops once the ratio has failed to
/// increase for 10 consecutive steps. Throws NumericalError ("class norm
/// diverges") when that never happens before n = 10000 or the end of a
/// tabulated sequence.
double class_norm(const SpectralVector& f, const GrowthSequence& m, double alpha);

}  // namespace specapprox
