#include "specapprox/io.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "specapprox/error.hpp"

namespace specapprox::io {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  return out;
}

double parse_double(const std::string& cell, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("line {}: cannot parse number '{}'", line_no, cell));
  }
}

/// Reads a two-column numeric CSV with the given header.
std::vector<std::pair<double, double>> read_pairs(std::istream& is, const std::string& header) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != header) {
    throw ValidationError(fmt::format("expected CSV header '{}'", header));
  }
  std::vector<std::pair<double, double>> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 2) {
      throw ValidationError(fmt::format("line {}: expected 2 columns, got {}", line_no, cells.size()));
    }
    rows.emplace_back(parse_double(cells[0], line_no), parse_double(cells[1], line_no));
  }
  return rows;
}

void dump_into(std::string& out, const json& j, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(key).dump();
        out += indent < 0 ? ":" : ": ";
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        dump_into(out, value, indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

void write_spectral_csv(std::ostream& os, const SpectralVector& f) {
  os << "lambda,coeff\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    os << format_double(f.lambda(k)) << ',' << format_double(f[k]) << '\n';
  }
}

SpectralVector read_spectral_csv(std::istream& is) {
  const auto rows = read_pairs(is, "lambda,coeff");
  if (rows.empty()) throw ValidationError("spectral CSV has no rows");
  std::vector<double> lambdas, coeffs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].first < rows[i - 1].first) {
      throw ValidationError(fmt::format("spectral CSV row {} breaks ascending eigenvalue order", i + 1));
    }
    lambdas.push_back(rows[i].first);
    coeffs.push_back(rows[i].second);
  }
  return {make_spectrum(std::move(lambdas)), std::move(coeffs)};
}

void write_cube_spectrum_csv(std::ostream& os, const CubeSpectrumIndex& idx,
                             std::span<const double> coeffs) {
  if (coeffs.size() != idx.size()) {
    throw ValidationError("cube spectrum CSV: coefficient count does not match the spectrum");
  }
  os << "lambda,coeff,multi_index\n";
  for (std::size_t k = 0; k < idx.size(); ++k) {
    os << format_double(idx.spectrum[k]) << ',' << format_double(coeffs[k]) << ','
       << fmt::format("{}", fmt::join(idx.multi_indices[k], ";")) << '\n';
  }
}

void write_decay_csv(std::ostream& os, const DecayCurve& curve) {
  os << "r,E_r\n";
  for (const auto& s : curve.samples) os << format_double(s.r) << ',' << format_double(s.value) << '\n';
}

DecayCurve read_decay_csv(std::istream& is) {
  DecayCurve curve;
  for (const auto& [r, v] : read_pairs(is, "r,E_r")) curve.samples.push_back({r, v});
  return curve;
}

void write_grid_csv(std::ostream& os, std::span<const double> x, std::span<const double> u) {
  if (x.size() != u.size()) throw ValidationError("grid CSV: x and u differ in length");
  os << "x,u\n";
  for (std::size_t i = 0; i < x.size(); ++i) os << format_double(x[i]) << ',' << format_double(u[i]) << '\n';
}

json to_json(const InequalityReport& report) {
  json j;
  j["name"] = report.name;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  j["holds"] = report.holds;
  return j;
}

json to_json(const LineFit& fit) {
  json j;
  j["valid"] = fit.valid;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["normalized_residual"] = fit.normalized_residual;
  j["points"] = fit.points;
  return j;
}

json to_json(const SmoothnessClass& cls) {
  json j;
  j["verdict"] = to_string(cls.verdict);
  if (cls.verdict == Verdict::FiniteSmooth) j["order"] = cls.order;
  j["slope"] = cls.polynomial.slope;
  j["beta"] = cls.beta;
  j["alpha"] = cls.alpha;
  if (cls.verdict == Verdict::ExponentialType) j["type_bound"] = cls.type_bound;
  j["residuals"] = {{"polynomial", cls.polynomial.normalized_residual},
                    {"stretched_exponential", cls.stretched.normalized_residual}};
  j["fits"] = {{"polynomial", to_json(cls.polynomial)},
               {"stretched_exponential", to_json(cls.stretched)}};
  j["window"] = {cls.window_begin, cls.window_end};
  j["flags"] = cls.flags;
  return j;
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_into(out, j, indent, 0);
  return out;
}

}  // namespace specapprox::io
