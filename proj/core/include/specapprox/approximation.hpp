#pragma once

#include <span>
#include <string>
#include <vector>

#include "specapprox/spectral_core.hpp"

namespace specapprox {

/// Samples (r, E_r) of the best-approximation error, r strictly increasing.
struct DecayCurve {
  struct Sample {
    double r;
    double value;
  };
  std::vector<Sample> samples;
};

/// Outcome of checking one inequality lhs <= rhs.
struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool holds = false;
};

/// Builds a report; holds iff lhs <= rhs + 1e-12 * max(1, |rhs|).
InequalityReport make_report(std::string name, double lhs, double rhs);

/// Jackson constant c_k = (1 - e^{-1})^{-k}.
double jackson_constant(unsigned k);

/// E_r(f, A) = ||(I - E(r)) f||, the distance to vectors of type <= r.
double best_approx(const SpectralVector& f, double r);

/// omega_k(t, y) = sup_{0 <= h <= t} ||(e^{-Ah} - I)^k f||. Every factor
/// 1 - e^{-lambda h} grows with h, so the sup sits at h = t. k = 0 gives ||f||.
double modulus(const SpectralVector& f, unsigned k, double t);

/// E_r(y) <= c_k omega_k(1/r, y).
InequalityReport jackson_check(const SpectralVector& f, unsigned k, double r);

/// E_r(y) <= c_{k+n} / r^n * omega_k(1/r, y^{(n)}). With k = 0 this is the
/// derivative bound E_r(y) <= c_n / r^n ||y^{(n)}||_S.
InequalityReport derivative_jackson_check(const SpectralVector& f, unsigned n, unsigned k,
                                          double r);

/// ||Delta_h^k y^{(n)}||_S <= (sigma h)^k sigma^n ||y||_S with sigma the type
/// of f. At k = 0 this is the Bernstein inequality ||y^{(n)}|| <= sigma^n ||y||.
InequalityReport lemma1_check(const SpectralVector& f, double h, unsigned k, unsigned n);

/// E_r sampled on a strictly increasing positive grid.
DecayCurve decay_curve(const SpectralVector& f, std::span<const double> r_grid);

}  // namespace specapprox
