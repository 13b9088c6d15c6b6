#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "specapprox/elliptic_cube.hpp"
#include "specapprox/error.hpp"

using namespace specapprox;
using std::numbers::pi;

namespace {

double l2_relative(const std::vector<double>& u, const std::vector<double>& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += (u[i] - ref[i]) * (u[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("cube_spectrum examples") {
  const auto sq = cube_spectrum({.q = 2, .a = pi, .n_per_axis = 2});
  REQUIRE(sq.size() == 4);
  const double expected[] = {2, 5, 5, 8};
  for (std::size_t i = 0; i < 4; ++i) CHECK(sq.spectrum[i] == doctest::Approx(expected[i]).epsilon(1e-14));
  CHECK(sq.multi_indices[0] == std::vector<int>{1, 1});
  CHECK(sq.multi_indices[1] == std::vector<int>{1, 2});
  CHECK(sq.multi_indices[2] == std::vector<int>{2, 1});
  CHECK(sq.multi_indices[3] == std::vector<int>{2, 2});
  CHECK(sq.multiplicity == std::vector<int>{1, 2, 2, 1});

  const auto line = cube_spectrum({.q = 1, .a = pi, .n_per_axis = 4});
  REQUIRE(line.size() == 4);
  for (int n = 1; n <= 4; ++n) CHECK(line.spectrum[n - 1] == doctest::Approx(n * n).epsilon(1e-14));

  const auto cube = cube_spectrum({.q = 3, .a = pi, .n_per_axis = 1});
  REQUIRE(cube.size() == 1);
  CHECK(cube.spectrum[0] == doctest::Approx(3.0).epsilon(1e-14));

  CHECK_THROWS_AS(cube_spectrum({.q = 3, .a = 1.0, .n_per_axis = 200, .mode_cap = 1000}), ValidationError);
}

TEST_CASE("cube_spectrum is deterministic and complete below the threshold") {
  const CubeOperator op{.q = 2, .a = 1.0, .n_per_axis = 30};
  const auto a = cube_spectrum(op), b = cube_spectrum(op);
  CHECK(a.multi_indices == b.multi_indices);

  // Brute-force count of lattice points with n1^2 + n2^2 <= 30^2.
  std::size_t count = 0;
  for (int i = 1; i <= 30; ++i)
    for (int j = 1; j <= 30; ++j)
      if (i * i + j * j <= 900) ++count;
  CHECK(a.reliable_count() == count);
}

TEST_CASE("eigenfunction_eval") {
  const CubeOperator line{.q = 1, .a = pi, .n_per_axis = 4};
  const std::vector<int> one{1};
  const std::vector<double> mid{pi / 2};
  CHECK(eigenfunction_eval(line, one, mid) == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-15));

  const CubeOperator sq{.q = 2, .a = 1.0, .n_per_axis = 4};
  const std::vector<int> n12{1, 2};
  const std::vector<double> x{0.5, 0.25};
  CHECK(eigenfunction_eval(sq, n12, x) == doctest::Approx(2.0).epsilon(1e-15));

  for (int n1 = 1; n1 <= 4; ++n1) {
    for (int n2 = 1; n2 <= 4; ++n2) {
      const std::vector<int> n{n1, n2};
      for (double face : {0.0, 1.0}) {
        const std::vector<double> p{face, 0.37}, q{0.61, face};
        CHECK(eigenfunction_eval(sq, n, p) == 0.0);
        CHECK(eigenfunction_eval(sq, n, q) == 0.0);
      }
    }
  }

  const std::vector<double> outside{1.5, 0.5};
  CHECK_THROWS_AS(eigenfunction_eval(sq, n12, outside), ValidationError);
}

TEST_CASE("eigenfunctions are orthonormal on the line") {
  const CubeOperator line{.q = 1, .a = pi, .n_per_axis = 5};
  const auto grid = uniform_grid(pi, 2001);
  const double dx = grid[1] - grid[0];
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= 5; ++n) {
      const std::vector<int> im{m}, in{n};
      double s = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::vector<double> x{grid[i]};
        const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
        s += w * eigenfunction_eval(line, im, x) * eigenfunction_eval(line, in, x);
      }
      CHECK(std::abs(s * dx - (m == n ? 1.0 : 0.0)) <= 1e-6);
    }
  }
}

TEST_CASE("heat_solution_eval") {
  const auto idx = cube_spectrum({.q = 1, .a = pi, .n_per_axis = 4});
  const SpectralVector e1(idx.spectrum, {1.0, 0.0, 0.0, 0.0});
  const std::vector<double> mid{pi / 2};
  CHECK(heat_solution_eval(idx, e1, 0.1, mid) == doctest::Approx(std::exp(-0.1) * std::sqrt(2.0 / pi)).epsilon(1e-15));
  CHECK(heat_solution_eval(idx, e1, 0.0, mid) == doctest::Approx(std::sqrt(2.0 / pi)).epsilon(1e-15));

  const SpectralVector two(idx.spectrum, {0.5, 0.0, -0.25, 0.0});
  for (double xv : {0.3, 1.0, 2.2}) {
    for (double t : {0.0, 0.05, 0.4}) {
      const std::vector<double> x{xv};
      const double direct = std::sqrt(2.0 / pi) *
                            (0.5 * std::exp(-t) * std::sin(xv) - 0.25 * std::exp(-9.0 * t) * std::sin(3.0 * xv));
      CHECK(heat_solution_eval(idx, two, t, x) == doctest::Approx(direct).epsilon(1e-14));
    }
  }

  const SpectralVector other(make_spectrum({1.0, 4.0, 9.0, 25.0}), {1.0, 0.0, 0.0, 0.0});
  CHECK_THROWS_AS(heat_solution_eval(idx, other, 0.1, mid), ValidationError);
  CHECK_THROWS_AS(heat_solution_eval(idx, e1, -0.1, mid), ValidationError);
}

TEST_CASE("weyl_fit") {
  const auto line = cube_spectrum({.q = 1, .a = pi, .n_per_axis = 4});
  const auto w1 = weyl_fit(line, 1, 1, 4);
  CHECK(w1.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w1.c1 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w1.c2 == doctest::Approx(1.0).epsilon(1e-14));

  const auto line100 = cube_spectrum({.q = 1, .a = pi, .n_per_axis = 100});
  CHECK(weyl_fit(line100, 1, 1, 100).exponent == doctest::Approx(2.0).epsilon(1e-12));

  const auto sq = cube_spectrum({.q = 2, .a = pi, .n_per_axis = 64});
  const auto w2 = weyl_fit(sq, 2, 100, 1000);
  CHECK(std::abs(w2.exponent - 1.0) <= 0.05);
  CHECK(w2.c1 <= w2.c2);
  for (std::size_t n = 100; n <= 1000; ++n) {
    const double ratio = sq.spectrum[n - 1] / double(n);
    CHECK(ratio >= w2.c1);
    CHECK(ratio <= w2.c2);
  }

  const auto cube = cube_spectrum({.q = 3, .a = pi, .n_per_axis = 32});
  const auto w3 = weyl_fit(cube, 3, 200, 2000);
  CHECK(std::abs(w3.exponent - 2.0 / 3.0) <= 0.1 * 2.0 / 3.0);

  CHECK_THROWS_AS(weyl_fit(sq, 2, 100, 110), ValidationError);                   // too short
  CHECK_THROWS_AS(weyl_fit(sq, 2, 100, sq.reliable_count() + 1), ValidationError);  // unreliable tail
  CHECK_THROWS_AS(weyl_fit(sq, 2, 0, 100), ValidationError);
}

TEST_CASE("Crank-Nicolson oracle") {
  const auto grid = uniform_grid(pi, 401);
  for (const auto& [mode, t] : {std::pair{1, 0.1}, std::pair{2, 0.05}}) {
    std::vector<double> u0, exact;
    for (double x : grid) {
      u0.push_back(std::sin(mode * x));
      exact.push_back(std::exp(-double(mode * mode) * t) * std::sin(mode * x));
    }
    const auto u = fd_oracle_1d(pi, u0, t, 401, 1e-4);
    CHECK(u.front() == 0.0);
    CHECK(u.back() == 0.0);
    CHECK(l2_relative(u, exact) <= 1e-3);
  }

  const std::vector<double> zero(401, 0.0);
  for (double v : fd_oracle_1d(pi, zero, 0.1, 401, 1e-4)) CHECK(v == 0.0);

  CHECK_THROWS_AS(fd_oracle_1d(pi, std::vector<double>(5, 0.0), 0.1, 5, 1e-4), ValidationError);
  CHECK_THROWS_AS(fd_oracle_1d(pi, zero, 0.1, 401, 0.0), ValidationError);
  CHECK_THROWS_AS(fd_oracle_1d(pi, zero, 0.1, 400, 1e-4), ValidationError);
}
