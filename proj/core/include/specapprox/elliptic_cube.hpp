#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specapprox/spectral_core.hpp"

namespace specapprox {

/// Dirichlet Laplacian on the cube (0, a)^q, truncated to n_k <= n_per_axis.
struct CubeOperator {
  int q = 1;
  double a = 1.0;
  int n_per_axis = 1;
  std::size_t mode_cap = 2'000'000;

  /// pi^2 / a^2, the eigenvalue of a unit multi-index step.
  double unit() const;
  /// Eigenvalue below which the truncated lattice lists every mode:
  /// (pi^2 / a^2) n_per_axis^2.
  double reliable_threshold() const;
};

/// Sorted lattice spectrum with the multi-index of every entry. Ties are
/// ordered lexicographically by multi-index.
struct CubeSpectrumIndex {
  CubeOperator op;
  DiscreteSpectrum spectrum;
  std::vector<std::vector<int>> multi_indices;
  /// Size of the tie group each entry belongs to.
  std::vector<int> multiplicity;

  std::size_t size() const noexcept { return multi_indices.size(); }

  /// Length of the prefix whose eigenvalues lie at or below
  /// op.reliable_threshold(); the lattice is complete there.
  std::size_t reliable_count() const;
};

CubeSpectrumIndex cube_spectrum(const CubeOperator& op);

/// (2/a)^{q/2} prod_k sin(n_k pi x_k / a); exactly 0 on the faces.
double eigenfunction_eval(const CubeOperator& op, std::span<const int> multi_index,
                          std::span<const double> x);

/// u(t, x) = sum_k e^{-lambda_k t} f_k e_k(x) for f over the cube spectrum.
double heat_solution_eval(const CubeSpectrumIndex& idx, const SpectralVector& f, double t,
                          std::span<const double> x);

struct WeylFit {
  double exponent = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Log-log slope of lambda_n against n over the 1-based window [first, last],
/// with c1 / c2 the min / max of lambda_n / n^{2/q} there.
///
/// The window must stay below the reliable threshold and hold at least 20
/// eigenvalues, or every reliable eigenvalue when fewer than 20 exist (2 at
/// minimum).
WeylFit weyl_fit(const CubeSpectrumIndex& idx, int q, std::size_t first, std::size_t last);

/// Crank-Nicolson solution of u_t = u_xx on [0, a] with u = 0 at both ends.
/// `initial` holds grid_points values on the uniform grid including the
/// endpoints; the returned vector has the same layout at time t_final.
std::vector<double> fd_oracle_1d(double a, std::span<const double> initial, double t_final,
                                 std::size_t grid_points, double dt);

/// Uniform grid x_i = i a / (grid_points - 1).
std::vector<double> uniform_grid(double a, std::size_t grid_points);

}  // namespace specapprox
