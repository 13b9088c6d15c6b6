#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "specapprox/elliptic_cube.hpp"
#include "specapprox/growth_sequence.hpp"
#include "specapprox/spectral_core.hpp"

namespace specapprox {

enum class ExperimentKind { Decay, Verify, Classify, Cube, Oracle };

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);

struct GrowthSpec {
  GrowthSequence::Kind kind = GrowthSequence::Kind::Factorial;
  double beta = 1.0;
  std::vector<double> values;

  GrowthSequence build() const;
};

struct SpectrumSource {
  enum class Kind { Explicit, Arithmetic, Cube };
  Kind kind = Kind::Explicit;
  std::vector<double> values;  // Explicit
  std::size_t count = 0;       // Arithmetic: lambda_k = k * step, k = 1..count
  double step = 1.0;
  CubeOperator cube;           // Cube
};

struct CoefficientSource {
  enum class Kind { Explicit, Power, StretchedExp, TauReciprocal };
  Kind kind = Kind::Explicit;
  std::vector<double> values;  // Explicit
  double p = 1.0;              // Power: lambda^{-p}
  double beta = 1.0;           // StretchedExp: exp(-lambda^{1/beta})
  GrowthSpec growth;           // TauReciprocal: 1 / tau(alpha lambda)
  double alpha = 1.0;
};

/// A grid given explicitly or generated; `eigenvalues` means "the distinct
/// positive eigenvalues of the configured spectrum".
struct GridSpec {
  std::vector<double> points;
  bool eigenvalues = false;
};

struct VerifySettings {
  std::size_t vectors = 200;
  std::size_t max_modes = 64;
  double lambda_max = 100.0;
  double coeff_bound = 1.0;
  std::vector<unsigned> jackson_k{1, 2, 3};
  std::vector<unsigned> derivative_n{1, 2};
  std::vector<unsigned> derivative_k{0, 1};
  unsigned lemma_max_k = 4;
  unsigned lemma_max_n = 4;
};

struct ClassifySettings {
  enum class CurveKind { FromVector, Power, StretchedExp, Csv };
  CurveKind curve = CurveKind::FromVector;
  double exponent = 3.0;  // Power: E_r = r^{-exponent}
  double beta = 0.5;      // StretchedExp: E_r = exp(-r^{1/beta})
  std::filesystem::path csv;
  std::optional<std::size_t> taylor_n;
};

struct CubeSettings {
  std::optional<std::size_t> window_first;
  std::optional<std::size_t> window_last;
};

struct OracleSettings {
  double a = 3.14159265358979323846;
  std::size_t grid_points = 401;
  double dt = 1e-4;
  double t_final = 0.1;
  std::size_t modes = 5;
  std::vector<double> coefficients;  // empty: seeded uniform in [-1, 1]
};

struct ExperimentConfig {
  std::optional<ExperimentKind> kind;
  std::uint64_t seed = 42;
  std::optional<SpectrumSource> spectrum;
  std::optional<CoefficientSource> coefficients;
  std::optional<GridSpec> r_grid;
  std::optional<GridSpec> t_grid;
  std::optional<GridSpec> h_grid;
  VerifySettings verify;
  ClassifySettings classify;
  CubeSettings cube;
  OracleSettings oracle;
  std::optional<std::filesystem::path> output_dir;
};

/// Parses the YAML config. Throws ValidationError naming the line and field.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunSummary {
  std::vector<std::filesystem::path> files;
  std::size_t reports = 0;
  std::size_t failed_reports = 0;
  std::string message;
};

/// Runs one experiment and writes its artifacts into out_dir (created if
/// needed). Output is a pure function of (kind, config).
RunSummary run(ExperimentKind kind, const ExperimentConfig& config,
               const std::filesystem::path& out_dir);

/// The spectral vector described by the spectrum and coefficient sources.
SpectralVector build_vector(const ExperimentConfig& config);

/// Random vector used by the verify suite for instance `index`: the stream is
/// std::mt19937_64 seeded with seed + index.
SpectralVector random_instance(const VerifySettings& settings, std::uint64_t seed, std::size_t index);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

}  // namespace specapprox
