#include "specapprox/classification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <fmt/format.h>

#include "specapprox/error.hpp"

namespace specapprox {

namespace {

constexpr std::size_t kTauCap = 100000;
constexpr int kTauPatience = 10;
const double kTauRelativeCutoff = std::log(1e-17);

constexpr double kGoodFit = 0.05;
constexpr double kMaxPolynomialOrder = 40.0;
constexpr std::size_t kMinWindow = 4;
constexpr std::size_t kMinPositiveSamples = 8;
// Regression noise allowance when reading an integer order off a slope.
constexpr double kOrderSnap = 1e-6;

double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit fit;
  fit.points = x.size();
  if (x.size() < 2) return fit;
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    rss += e * e;
  }
  fit.normalized_residual = syy > 0.0 ? std::sqrt(rss / syy) : 0.0;
  fit.valid = std::isfinite(fit.slope) && std::isfinite(fit.intercept);
  return fit;
}

}  // namespace

double tau_eval(const GrowthSequence& m, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError(fmt::format("tau_eval: lambda must be >= 0, got {}", lambda));
  }
  if (lambda == 0.0) return 0.0;
  const double log_lambda = std::log(lambda);

  std::vector<double> terms;
  double running = -std::numeric_limits<double>::infinity();
  int decreasing = 0;
  for (std::size_t n = 0; n < kTauCap && m.has_index(n); ++n) {
    const double term = static_cast<double>(n) * log_lambda - m.log_value(n);
    decreasing = (!terms.empty() && term < terms.back()) ? decreasing + 1 : 0;
    terms.push_back(term);
    running = log_add(running, term);
    if (decreasing >= kTauPatience && term - running < kTauRelativeCutoff) {
      // Compensated summation of the collected terms relative to the largest.
      const double top = *std::max_element(terms.begin(), terms.end());
      double sum = 0.0, carry = 0.0;
      for (double t : terms) {
        const double v = std::exp(t - top);
        const double s = sum + v;
        carry += std::abs(sum) >= v ? (sum - s) + v : (v - s) + sum;
        sum = s;
      }
      return top + std::log(sum + carry);
    }
  }
  throw NumericalError(fmt::format(
      "tau series for {} does not converge at lambda = {} within {} terms; "
      "the sequence violates the growth condition m_n >= c alpha^n",
      m.describe(), lambda, terms.size()));
}

double reciprocal_decay(const GrowthSequence& m, double alpha, double r) {
  if (!(alpha > 0.0) || !(r > 0.0)) {
    throw ValidationError(fmt::format("reciprocal_decay: need alpha, r > 0 (got {}, {})", alpha, r));
  }
  return std::exp(-tau_eval(m, alpha * r));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::FiniteSmooth:
      return "FiniteSmooth";
    case Verdict::InfinitelySmooth:
      return "InfinitelySmooth";
    case Verdict::GevreyRoumieu:
      return "GevreyRoumieu";
    case Verdict::GevreyBeurling:
      return "GevreyBeurling";
    case Verdict::ExponentialType:
      return "ExponentialType";
  }
  return "unknown";
}

SmoothnessClass classify_decay(const DecayCurve& curve) {
  const auto& s = curve.samples;
  if (s.empty()) throw ValidationError("classify_decay: empty decay curve");

  SmoothnessClass out;
  std::size_t positive = s.size();
  while (positive > 0 && s[positive - 1].value == 0.0) --positive;
  if (positive < s.size()) {
    // E_r vanished: the vector has finite type.
    out.verdict = Verdict::ExponentialType;
    out.type_bound = s[positive].r;
    out.window_begin = positive;
    out.window_end = s.size();
    return out;
  }
  if (positive < kMinPositiveSamples) {
    throw ValidationError(fmt::format(
        "classify_decay: need at least {} positive samples, got {}", kMinPositiveSamples, positive));
  }

  const std::size_t width = std::max(kMinWindow, positive / 2);
  out.window_begin = positive - width;
  out.window_end = positive;

  std::vector<double> log_r, log_e, stretched_x, stretched_y;
  for (std::size_t i = out.window_begin; i < out.window_end; ++i) {
    const double lr = std::log(s[i].r);
    const double le = std::log(s[i].value);
    log_r.push_back(lr);
    log_e.push_back(le);
    if (le < 0.0) {
      stretched_x.push_back(lr);
      stretched_y.push_back(std::log(-le));
    }
  }

  out.polynomial = fit_line(log_r, log_e);
  if (stretched_x.size() >= kMinWindow) out.stretched = fit_line(stretched_x, stretched_y);

  if (!out.polynomial.valid && !out.stretched.valid) {
    throw NumericalError("classify_decay: both rate fits are degenerate");
  }

  const bool poly_ok = out.polynomial.valid && out.polynomial.normalized_residual < kGoodFit &&
                       -out.polynomial.slope < kMaxPolynomialOrder;
  const bool stretch_ok = out.stretched.valid && out.stretched.slope > 0.0 &&
                          out.stretched.normalized_residual < kGoodFit;

  bool use_poly;
  if (poly_ok && stretch_ok) {
    use_poly = out.polynomial.normalized_residual <= out.stretched.normalized_residual;
  } else if (poly_ok || stretch_ok) {
    use_poly = poly_ok;
  } else if (out.polynomial.valid && -out.polynomial.slope >= kMaxPolynomialOrder) {
    out.verdict = Verdict::InfinitelySmooth;
    out.flags.emplace_back("faster_than_resolvable_polynomial");
    return out;
  } else {
    out.flags.emplace_back("poor_fit");
    use_poly = !out.stretched.valid || out.stretched.slope <= 0.0 ||
               (out.polynomial.valid &&
                out.polynomial.normalized_residual <= out.stretched.normalized_residual);
  }

  if (use_poly) {
    out.verdict = Verdict::FiniteSmooth;
    out.order = std::max(0, static_cast<int>(std::floor(-out.polynomial.slope + kOrderSnap)));
    out.flags.emplace_back("order_from_big_O_rate");
  } else {
    out.verdict = Verdict::GevreyRoumieu;
    out.beta = 1.0 / out.stretched.slope;
    out.alpha = std::exp(out.stretched.intercept);
    out.flags.emplace_back("roumieu_vs_beurling_undetermined");
  }
  return out;
}

double order_from_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ValidationError(fmt::format("order_from_beta: beta must lie in (0, 1), got {}", beta));
  }
  return 1.0 / (1.0 - beta);
}

OrderEstimate order_from_log_norms(std::span<const double> log_norms, std::size_t N) {
  if (N < 10) throw ValidationError("order estimate needs N >= 10");
  if (log_norms.size() <= N) {
    throw ValidationError(
        fmt::format("order estimate needs {} derivative norms, got {}", N + 1, log_norms.size()));
  }
  const std::size_t first = (N + 1) / 2;

  OrderEstimate est;
  est.window_max = -std::numeric_limits<double>::infinity();
  std::vector<double> ns, dens;
  for (std::size_t n = first; n <= N; ++n) {
    if (log_norms[n] == -std::numeric_limits<double>::infinity()) continue;
    const auto x = static_cast<double>(n);
    const double den = std::lgamma(x + 1.0) - log_norms[n];
    if (!(den > 0.0) || !std::isfinite(den)) {
      throw NumericalError(fmt::format(
          "order undefined at this truncation: n! <= ||y^(n)(0)|| at n = {}", n));
    }
    est.window_max = std::max(est.window_max, x * std::log(x) / den);
    ns.push_back(x);
    dens.push_back(den);
  }
  if (ns.size() < 3) {
    throw NumericalError("order undefined at this truncation: derivatives vanish in the window");
  }

  // ln(n!/||y^(n)(0)||) ~ (1/rho) n ln n + b n + c for order rho.
  Eigen::MatrixXd basis(ns.size(), 3);
  Eigen::VectorXd rhs(ns.size());
  const double scale = N * std::log(static_cast<double>(N));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    basis(i, 0) = ns[i] * std::log(ns[i]) / scale;
    basis(i, 1) = ns[i] / static_cast<double>(N);
    basis(i, 2) = 1.0;
    rhs(i) = dens[i];
  }
  const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(rhs);
  const double inv_rho = coef(0) / scale;
  if (!(inv_rho > 0.0) || !std::isfinite(inv_rho)) {
    throw NumericalError("order undefined at this truncation: non-positive growth coefficient");
  }
  est.rho = 1.0 / inv_rho;
  return est;
}

OrderEstimate order_from_taylor(const SolutionHandle& y, std::size_t N) {
  if (y.initial().is_zero()) throw ValidationError("order undefined for zero vector");
  std::vector<double> logs(N + 1);
  for (std::size_t n = 0; n <= N; ++n) {
    logs[n] = log_power_norm(y.initial(), static_cast<unsigned>(n));
  }
  return order_from_log_norms(logs, N);
}

std::vector<bool> check_condition_10(const GrowthSequence& m, std::span<const double> alphas,
                                     std::size_t N) {
  std::size_t last = N;
  if (auto len = m.length()) last = std::min(last, *len - 1);
  std::vector<bool> verdicts;
  verdicts.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha > 0.0)) {
      verdicts.push_back(false);
      continue;
    }
    const double log_alpha = std::log(alpha);
    double lowest = std::numeric_limits<double>::infinity();
    std::size_t argmin = 0;
    for (std::size_t n = 0; n <= last; ++n) {
      const double v = m.log_value(n) - static_cast<double>(n) * log_alpha;
      if (v < lowest) {
        lowest = v;
        argmin = n;
      }
    }
    verdicts.push_back(std::isfinite(lowest) && 2 * argmin <= last);
  }
  return verdicts;
}

Condition12Result check_condition_12(const GrowthSequence& m, std::size_t N) {
  std::size_t last = N;
  if (auto len = m.length()) last = std::min(last, *len - 1);
  if (last < 2) return {};
  std::vector<double> ratios(last);
  for (std::size_t n = 0; n < last; ++n) ratios[n] = m.log_value(n + 1) - m.log_value(n);

  for (int j = 1; j <= 800; ++j) {
    const double log_h = 0.01 * j;
    double peak = -std::numeric_limits<double>::infinity();
    std::size_t argmax = 0;
    for (std::size_t n = 0; n < ratios.size(); ++n) {
      const double v = ratios[n] - static_cast<double>(n) * log_h;
      if (v > peak) {
        peak = v;
        argmax = n;
      }
    }
    if (2 * argmax <= ratios.size() - 1) return {true, std::exp(peak), std::exp(log_h)};
  }
  return {};
}

}  // namespace specapprox
