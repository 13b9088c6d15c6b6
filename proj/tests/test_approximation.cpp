#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "specapprox/approximation.hpp"
#include "specapprox/error.hpp"
#include "specapprox/semigroup.hpp"
#include "support/oracles.hpp"

using namespace specapprox;

namespace {

SpectralVector single(double lambda, double coeff = 1.0) { return {make_spectrum({lambda}), {coeff}}; }
SpectralVector two_mode() { return {make_spectrum({1.0, 3.0}), {0.6, 0.8}}; }

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
  return g;
}

}  // namespace

TEST_CASE("best_approx is the spectral tail norm") {
  CHECK(best_approx(two_mode(), 2.0) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(best_approx(two_mode(), 3.0) == 0.0);
  CHECK(best_approx(two_mode(), 0.5) == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 gen(3);
  for (int i = 0; i < 50; ++i) {
    const auto f = oracle::random_vector(gen, 32, 100.0);
    CHECK(best_approx(f, 42.0) == doctest::Approx(norm(subtract(f, project(f, 42.0)))).epsilon(1e-14));
  }
}

TEST_CASE("jackson constant is the reciprocal of (1 - 1/e)^k") {
  CHECK(jackson_constant(0) == 1.0);
  CHECK(jackson_constant(1) * 0.6321205588285577 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jackson_constant(3) == doctest::Approx(std::pow(1.0 - std::exp(-1.0), -3)).epsilon(1e-14));
}

TEST_CASE("modulus") {
  // Grid-sup oracle on h in {0, 0.001, ..., 1}: maximum sits at h = 1.
  double grid_max = 0.0;
  for (int i = 0; i <= 1000; ++i) grid_max = std::max(grid_max, 1.0 - std::exp(-1.0 * (i / 1000.0)));
  REQUIRE(grid_max == doctest::Approx(0.6321205588285577).epsilon(1e-15));
  CHECK(modulus(single(1.0), 1, 1.0) == doctest::Approx(grid_max).epsilon(1e-15));

  CHECK(modulus(two_mode(), 0, 0.3) == norm(two_mode()));
  CHECK(modulus(single(0.0), 3, 2.0) == 0.0);
  CHECK_THROWS_AS(modulus(two_mode(), 1, 0.0), ValidationError);
}

TEST_CASE("jackson_check") {
  const auto above = jackson_check(single(5.0), 2, 7.0);
  CHECK(above.lhs == 0.0);
  CHECK(above.holds);

  // Inclusive boundary: the mode at lambda = r is already captured.
  const auto at = jackson_check(single(1.0), 1, 1.0);
  CHECK(at.lhs == 0.0);

  // Just below the boundary the estimate is tight: lhs 1, rhs -> 1.
  const double r = std::nextafter(1.0, 0.0);
  const auto tight = jackson_check(single(1.0), 1, r);
  const double rhs = jackson_constant(1) * (1.0 - std::exp(-1.0 / r));
  CHECK(tight.lhs == 1.0);
  CHECK(tight.rhs == doctest::Approx(rhs).epsilon(1e-15));
  CHECK(tight.rhs == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tight.holds);
  CHECK(std::abs(tight.margin) < 1e-14);

  // The printed constant (1 - 1/e)^k would make this instance fail.
  const double printed = (1.0 - std::exp(-1.0)) * (1.0 - std::exp(-1.0 / r));
  CHECK(tight.lhs > printed);
}

TEST_CASE("derivative_jackson_check") {
  std::mt19937_64 gen(9);
  const auto f = oracle::random_vector(gen, 16, 50.0);
  const auto plain = jackson_check(f, 2, 3.0);
  const auto deriv = derivative_jackson_check(f, 0, 2, 3.0);
  CHECK(plain.lhs == deriv.lhs);
  CHECK(plain.rhs == deriv.rhs);

  // k = 0: c_n / r^n ||A^n f||
  const auto cor = derivative_jackson_check(f, 2, 0, 3.0);
  CHECK(cor.rhs == doctest::Approx(jackson_constant(2) / 9.0 * norm(apply_power(f, 2))).epsilon(1e-14));

  const auto example = derivative_jackson_check(single(2.0), 1, 1, 1.0);
  CHECK(example.lhs == 1.0);
  CHECK(example.rhs == doctest::Approx(4.3279068274773057).epsilon(1e-14));
  CHECK(example.holds);
}

TEST_CASE("lemma1_check") {
  for (double sigma : {0.5, 1.0, 3.0, 10.0}) {
    for (unsigned n = 0; n <= 6; ++n) {
      const auto rep = lemma1_check(single(sigma, 0.7), 1.0, 0, n);
      CHECK(rep.holds);
      CHECK(std::abs(rep.lhs - rep.rhs) <= 1e-12 * rep.rhs);
    }
  }
  const auto rep = lemma1_check(single(1.0), 1.0, 1, 0);
  CHECK(rep.lhs == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(rep.rhs == 1.0);
  CHECK(rep.holds);
  CHECK_THROWS_AS(lemma1_check(SpectralVector::zeros(make_spectrum({1.0})), 1.0, 1, 1), ValidationError);
}

TEST_CASE("decay_curve") {
  const auto c = decay_curve(single(2.0), std::vector<double>{1.0, 2.0, 3.0});
  REQUIRE(c.samples.size() == 3);
  CHECK(c.samples[0].value == 1.0);
  CHECK(c.samples[1].value == 0.0);
  CHECK(c.samples[2].value == 0.0);

  const auto below = decay_curve(two_mode(), std::vector<double>{0.1, 0.5, 0.9});
  for (const auto& s : below.samples) CHECK(s.value == doctest::Approx(1.0).epsilon(1e-15));

  // f_k = e^{-k} on lambda_k = k; tail sums frozen from 50-digit arithmetic.
  std::vector<double> l, c10;
  for (int k = 1; k <= 10; ++k) {
    l.push_back(k);
    c10.push_back(std::exp(-double(k)));
  }
  const SpectralVector f(make_spectrum(l), c10);
  const auto curve = decay_curve(f, l);
  const double expected[] = {0.14554160638953403, 0.053541762220829763, 0.019696906484154177,
                             0.0072460677020714511, 0.0026656270145161322, 0.00098048713769736836,
                             0.00036031417969101674, 0.00013149575417917944, 4.5399929762484852e-05, 0.0};
  for (int k = 0; k < 10; ++k) CHECK(curve.samples[k].value == doctest::Approx(expected[k]).epsilon(1e-14));

  CHECK_THROWS_AS(decay_curve(f, std::vector<double>{2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(decay_curve(f, std::vector<double>{0.0, 1.0}), ValidationError);
}

TEST_CASE("randomized properties") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> unit(-1.0, 1.0), rdist(0.0, 110.0);
  const auto r_grid = log_grid(0.1, 200.0, 20);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_vector(gen, 64, 100.0);

    // monotone in r
    double prev = best_approx(f, 0.0);
    for (double r : r_grid) {
      const double e = best_approx(f, r);
      CHECK(e <= prev);
      prev = e;
    }

    // no competitor supported on {lambda <= r} gets closer than the projection
    const double r = rdist(gen);
    const double e = best_approx(f, r);
    for (int c = 0; c < 100; ++c) {
      std::vector<double> g(f.size(), 0.0);
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f.lambda(k) <= r) g[k] = f[k] + 0.5 * unit(gen);
      }
      CHECK(norm(subtract(f, SpectralVector(f.spectrum(), g))) >= e * (1.0 - 1e-12));
    }

    for (double t : {0.05, 0.5, 2.0}) {
      for (unsigned k = 1; k <= 3; ++k) {
        CHECK(modulus(f, k + 1, t) <= modulus(f, k, t));
        CHECK(modulus(f, k, t) <= modulus(f, k, 2.0 * t));
      }
    }

    for (unsigned k = 1; k <= 3; ++k) {
      for (double rr : r_grid) CHECK(jackson_check(f, k, rr).holds);
    }
    for (unsigned n = 1; n <= 2; ++n) {
      for (unsigned k = 0; k <= 1; ++k) {
        for (double rr : r_grid) CHECK(derivative_jackson_check(f, n, k, rr).holds);
      }
    }
    if (!f.is_zero()) {
      for (double h : {0.1, 1.0, 2.0}) {
        for (unsigned k = 0; k <= 4; ++k) {
          for (unsigned n = 0; n <= 4; ++n) CHECK(lemma1_check(f, h, k, n).holds);
        }
      }
    }
  }
}

TEST_CASE("modulus matches the h-grid supremum") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_vector(gen, 64, 100.0);
    const SolutionHandle y(f);
    for (unsigned k = 1; k <= 3; ++k) {
      for (double t : {0.1, 1.0}) {
        double grid = 0.0;
        for (int i = 0; i <= 1000; ++i) {
          const double h = i == 1000 ? t : t * i / 1000.0;
          grid = std::max(grid, norm(difference_power(y, h, k).initial()));
        }
        const double closed = modulus(f, k, t);
        CHECK(grid <= closed);
        CHECK(std::abs(grid - closed) <= 1e-9 * closed);
      }
    }
  }
}
