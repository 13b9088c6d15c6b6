#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "specapprox/approximation.hpp"
#include "specapprox/growth_sequence.hpp"
#include "specapprox/semigroup.hpp"

namespace specapprox {

/// ln tau(lambda), tau(lambda) = sum_n lambda^n / m_n.
///
/// Terms are summed until one falls below 1e-17 of the partial sum after at
/// least 10 consecutive decreasing terms (hard cap 100000 terms). Throws
/// NumericalError when the series has not settled by the cap, which means m
/// fails m_n >= c alpha^n for alpha = lambda.
double tau_eval(const GrowthSequence& m, double lambda);

/// 1 / tau(alpha r). Underflows to 0 once ln tau exceeds ~745.
double reciprocal_decay(const GrowthSequence& m, double alpha, double r);

/// Least-squares line y = intercept + slope x with its fit quality.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// RMS residual divided by the standard deviation of y (0 for exact fits).
  double normalized_residual = 0.0;
  std::size_t points = 0;
  bool valid = false;
};

enum class Verdict { FiniteSmooth, InfinitelySmooth, GevreyRoumieu, GevreyBeurling, ExponentialType };

std::string to_string(Verdict v);

struct SmoothnessClass {
  Verdict verdict = Verdict::FiniteSmooth;
  /// Smoothness order n for FiniteSmooth.
  int order = 0;
  /// Polynomial rate: ln E vs ln r.
  LineFit polynomial;
  /// Stretched-exponential rate: ln(-ln E) vs ln r.
  LineFit stretched;
  /// 1 / (stretched slope) for Gevrey verdicts.
  double beta = 0.0;
  /// Fitted rate constant alpha in E ~ exp(-alpha r^{1/beta}).
  double alpha = 0.0;
  /// For ExponentialType: first grid point where E_r reached 0.
  double type_bound = 0.0;
  /// Index range [begin, end) of the samples used by the regressions.
  std::size_t window_begin = 0;
  std::size_t window_end = 0;
  std::vector<std::string> flags;
};

/// Assigns a smoothness class from the decay of E_r.
///
/// Trailing zeros mean the vector has finite type (ExponentialType). Otherwise
/// both rate models are fitted on the trailing half of the positive samples
/// (at least 4 points) and the one with the smaller normalized residual wins,
/// provided its residual is below 0.05. Needs at least 8 positive samples.
SmoothnessClass classify_decay(const DecayCurve& curve);

/// rho = 1 / (1 - beta) for beta in (0, 1).
double order_from_beta(double beta);

/// Order estimates of the entire function sum_n y^{(n)}(0) z^n / n!.
struct OrderEstimate {
  /// Order from the Stirling-form fit of ln(n! / ||y^{(n)}(0)||) on [N/2, N].
  double rho = 0.0;
  /// max_{N/2 <= n <= N} n ln n / ln(n! / ||y^{(n)}(0)||); converges to the
  /// same limit but only at rate O(1 / ln n).
  double window_max = 0.0;
};

/// Order of growth from ln ||y^{(n)}(0)||, n = 0..N (log_norms.size() > N).
/// Throws NumericalError ("order undefined at this truncation") when
/// n! <= ||y^{(n)}(0)|| somewhere in the window.
OrderEstimate order_from_log_norms(std::span<const double> log_norms, std::size_t N);

/// Order of the entire extension of y, using ||y^{(n)}(0)|| = ||A^n f||.
OrderEstimate order_from_taylor(const SolutionHandle& y, std::size_t N);

/// For each alpha: whether m_n / alpha^n stays bounded below on n <= N, judged
/// by the running minimum settling in the first half of the range.
std::vector<bool> check_condition_10(const GrowthSequence& m, std::span<const double> alphas,
                                     std::size_t N);

struct Condition12Result {
  bool holds = false;
  double c = 0.0;
  double h = 0.0;
};

/// Smallest h > 1 on a fixed grid (ln h = 0.01, 0.02, ..., 8) for which
/// ln(m_{n+1}/m_n) - n ln h peaks in the first half of n <= N, together with
/// c = exp(max of that quantity), so m_{n+1} <= c h^n m_n on the range.
Condition12Result check_condition_12(const GrowthSequence& m, std::size_t N);

}  // namespace specapprox
