#include "specapprox/approximation.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "specapprox/error.hpp"
#include "specapprox/semigroup.hpp"

namespace specapprox {

namespace {

constexpr double kReportTolerance = 1e-12;

void require_positive(double v, const char* what, const char* op) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(fmt::format("{}: {} must be > 0, got {}", op, what, v));
  }
}

}  // namespace

InequalityReport make_report(std::string name, double lhs, double rhs) {
  InequalityReport report;
  report.name = std::move(name);
  report.lhs = lhs;
  report.rhs = rhs;
  report.margin = rhs - lhs;
  report.holds = lhs <= rhs + kReportTolerance * std::max(1.0, std::abs(rhs));
  return report;
}

double jackson_constant(unsigned k) {
  return std::pow(-std::expm1(-1.0), -static_cast<double>(k));
}

double best_approx(const SpectralVector& f, double r) {
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.lambda(k) > r) sum += f[k] * f[k];
  }
  return std::sqrt(sum);
}

double modulus(const SpectralVector& f, unsigned k, double t) {
  require_positive(t, "t", "modulus");
  if (k == 0) return norm(f);
  return norm(difference_power(SolutionHandle(f), t, k).initial());
}

InequalityReport jackson_check(const SpectralVector& f, unsigned k, double r) {
  if (k == 0) throw ValidationError("jackson_check: k must be >= 1");
  require_positive(r, "r", "jackson_check");
  const double lhs = best_approx(f, r);
  const double rhs = jackson_constant(k) * modulus(f, k, 1.0 / r);
  return make_report(fmt::format("jackson[k={},r={}]", k, r), lhs, rhs);
}

InequalityReport derivative_jackson_check(const SpectralVector& f, unsigned n, unsigned k,
                                          double r) {
  require_positive(r, "r", "derivative_jackson_check");
  const double lhs = best_approx(f, r);
  const double rhs = jackson_constant(k + n) / std::pow(r, static_cast<double>(n)) *
                     modulus(apply_power(f, n), k, 1.0 / r);
  const char* label = k == 0 ? "derivative_bound" : "derivative_jackson";
  return make_report(fmt::format("{}[n={},k={},r={}]", label, n, k, r), lhs, rhs);
}

InequalityReport lemma1_check(const SpectralVector& f, double h, unsigned k, unsigned n) {
  require_positive(h, "h", "lemma1_check");
  const double sigma = vector_type(f);
  const SolutionHandle y(apply_power(f, n));
  const double lhs = norm(difference_power(y, h, k).initial());
  const double rhs = std::pow(sigma * h, static_cast<double>(k)) *
                     std::pow(sigma, static_cast<double>(n)) * norm(f);
  const char* label = k == 0 ? "bernstein" : "lemma1";
  return make_report(fmt::format("{}[h={},k={},n={}]", label, h, k, n), lhs, rhs);
}

DecayCurve decay_curve(const SpectralVector& f, std::span<const double> r_grid) {
  DecayCurve curve;
  curve.samples.reserve(r_grid.size());
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 0.0) || !std::isfinite(r_grid[i])) {
      throw ValidationError(fmt::format("decay_curve: grid point {} is not positive", i));
    }
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) {
      throw ValidationError(fmt::format("decay_curve: grid not strictly increasing at {}", i));
    }
    curve.samples.push_back({r_grid[i], best_approx(f, r_grid[i])});
  }
  return curve;
}

}  // namespace specapprox
