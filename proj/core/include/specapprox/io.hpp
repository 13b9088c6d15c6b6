#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "specapprox/approximation.hpp"
#include "specapprox/classification.hpp"
#include "specapprox/elliptic_cube.hpp"
#include "specapprox/spectral_core.hpp"

namespace specapprox::io {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// "lambda,coeff" then one row per mode in ascending eigenvalue order.
void write_spectral_csv(std::ostream& os, const SpectralVector& f);
SpectralVector read_spectral_csv(std::istream& is);

/// Spectral CSV with an extra "multi_index" column of ';'-separated integers.
void write_cube_spectrum_csv(std::ostream& os, const CubeSpectrumIndex& idx,
                             std::span<const double> coeffs);

/// "r,E_r" rows.
void write_decay_csv(std::ostream& os, const DecayCurve& curve);
DecayCurve read_decay_csv(std::istream& is);

/// "x,u" rows.
void write_grid_csv(std::ostream& os, std::span<const double> x, std::span<const double> u);

nlohmann::ordered_json to_json(const InequalityReport& report);
nlohmann::ordered_json to_json(const SmoothnessClass& cls);
nlohmann::ordered_json to_json(const LineFit& fit);

/// Serializes with floats at 17 significant digits (non-finite values become
/// null). `indent` < 0 writes a single line.
std::string dump(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace specapprox::io
