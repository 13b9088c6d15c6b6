#include "specapprox/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "specapprox/approximation.hpp"
#include "specapprox/classification.hpp"
#include "specapprox/error.hpp"
#include "specapprox/io.hpp"
#include "specapprox/semigroup.hpp"

namespace specapprox {

namespace {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// YAML helpers

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
  const auto mark = node.Mark();
  if (mark.is_null()) throw ValidationError(fmt::format("config field '{}': {}", field, what));
  throw ValidationError(fmt::format("config line {}, field '{}': {}", mark.line + 1, field, what));
}

void allow_keys(const YAML::Node& node, const std::string& field,
                std::initializer_list<const char*> keys) {
  if (!node.IsMap()) fail(node, field, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
    }
  }
}

double as_real(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected a number");
  const auto text = node.as<std::string>();
  if (text == "pi") return std::numbers::pi;
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    fail(node, field, fmt::format("'{}' is not a number", text));
  }
}

template <class Int>
Int as_integer(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected an integer");
  try {
    return node.as<Int>();
  } catch (const YAML::Exception&) {
    fail(node, field, fmt::format("'{}' is not a valid integer", node.as<std::string>()));
  }
}

std::vector<double> as_reals(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(as_real(node[i], fmt::format("{}[{}]", field, i)));
  }
  return out;
}

std::vector<unsigned> as_unsigneds(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) fail(node, field, "expected a list of integers");
  std::vector<unsigned> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(as_integer<unsigned>(node[i], fmt::format("{}[{}]", field, i)));
  }
  return out;
}

/// The single key of a one-of mapping, validated against the allowed names.
std::string only_key(const YAML::Node& node, const std::string& field,
                     std::initializer_list<const char*> kinds) {
  allow_keys(node, field, kinds);
  if (node.size() != 1) fail(node, field, "exactly one source must be given");
  return node.begin()->first.as<std::string>();
}

GrowthSpec parse_growth(const YAML::Node& node, const std::string& field) {
  allow_keys(node, field, {"kind", "beta", "values"});
  GrowthSpec spec;
  if (!node["kind"]) fail(node, field, "missing 'kind'");
  const auto kind = node["kind"].as<std::string>();
  if (kind == "factorial") {
    spec.kind = GrowthSequence::Kind::Factorial;
  } else if (kind == "gevrey") {
    spec.kind = GrowthSequence::Kind::Gevrey;
    if (!node["beta"]) fail(node, field, "gevrey needs 'beta'");
    spec.beta = as_real(node["beta"], field + ".beta");
  } else if (kind == "tabulated") {
    spec.kind = GrowthSequence::Kind::Tabulated;
    if (!node["values"]) fail(node, field, "tabulated needs 'values'");
    spec.values = as_reals(node["values"], field + ".values");
  } else {
    fail(node["kind"], field + ".kind", fmt::format("unknown sequence kind '{}'", kind));
  }
  try {
    (void)spec.build();
  } catch (const ValidationError& e) {
    fail(node, field, e.what());
  }
  return spec;
}

GridSpec parse_grid(const YAML::Node& node, const std::string& field) {
  GridSpec grid;
  if (node.IsScalar()) {
    if (node.as<std::string>() != "eigenvalues") fail(node, field, "expected a list, 'eigenvalues', or {log|linear: ...}");
    grid.eigenvalues = true;
    return grid;
  }
  if (node.IsSequence()) {
    grid.points = as_reals(node, field);
  } else {
    const auto kind = only_key(node, field, {"log", "linear"});
    const auto spec = node[kind];
    const auto sub = field + "." + kind;
    allow_keys(spec, sub, {"min", "max", "count"});
    if (!spec["min"] || !spec["max"] || !spec["count"]) fail(spec, sub, "needs min, max and count");
    const double lo = as_real(spec["min"], sub + ".min");
    const double hi = as_real(spec["max"], sub + ".max");
    const auto count = as_integer<std::size_t>(spec["count"], sub + ".count");
    if (count < 2 || !(hi > lo)) fail(spec, sub, "needs count >= 2 and max > min");
    if (kind == "log" && !(lo > 0.0)) fail(spec, sub, "log grid needs min > 0");
    for (std::size_t i = 0; i < count; ++i) {
      const double s = static_cast<double>(i) / static_cast<double>(count - 1);
      grid.points.push_back(kind == "log" ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s);
    }
    grid.points.back() = hi;
  }
  for (std::size_t i = 1; i < grid.points.size(); ++i) {
    if (!(grid.points[i] > grid.points[i - 1])) fail(node, field, "grid must be strictly increasing");
  }
  if (grid.points.empty()) fail(node, field, "grid is empty");
  return grid;
}

CubeOperator parse_cube(const YAML::Node& node, const std::string& field) {
  allow_keys(node, field, {"q", "a", "n_per_axis", "mode_cap"});
  if (!node["q"] || !node["a"] || !node["n_per_axis"]) fail(node, field, "needs q, a and n_per_axis");
  CubeOperator op;
  op.q = as_integer<int>(node["q"], field + ".q");
  op.a = as_real(node["a"], field + ".a");
  op.n_per_axis = as_integer<int>(node["n_per_axis"], field + ".n_per_axis");
  if (node["mode_cap"]) op.mode_cap = as_integer<std::size_t>(node["mode_cap"], field + ".mode_cap");
  if (op.q < 1 || op.q > 4) fail(node["q"], field + ".q", "must be in 1..4");
  if (!(op.a > 0.0)) fail(node["a"], field + ".a", "must be > 0");
  if (op.n_per_axis < 1) fail(node["n_per_axis"], field + ".n_per_axis", "must be >= 1");
  return op;
}

SpectrumSource parse_spectrum(const YAML::Node& node) {
  SpectrumSource src;
  const auto kind = only_key(node, "spectrum", {"explicit", "arithmetic", "cube"});
  const auto body = node[kind];
  if (kind == "explicit") {
    src.kind = SpectrumSource::Kind::Explicit;
    src.values = as_reals(body, "spectrum.explicit");
  } else if (kind == "arithmetic") {
    src.kind = SpectrumSource::Kind::Arithmetic;
    allow_keys(body, "spectrum.arithmetic", {"count", "step"});
    if (!body["count"]) fail(body, "spectrum.arithmetic", "needs 'count'");
    src.count = as_integer<std::size_t>(body["count"], "spectrum.arithmetic.count");
    if (body["step"]) src.step = as_real(body["step"], "spectrum.arithmetic.step");
    if (src.count == 0 || !(src.step > 0.0)) fail(body, "spectrum.arithmetic", "needs count >= 1 and step > 0");
  } else {
    src.kind = SpectrumSource::Kind::Cube;
    src.cube = parse_cube(body, "spectrum.cube");
  }
  return src;
}

CoefficientSource parse_coefficients(const YAML::Node& node) {
  CoefficientSource src;
  const auto kind =
      only_key(node, "coefficients", {"explicit", "power", "stretched_exp", "tau_reciprocal"});
  const auto body = node[kind];
  const auto field = "coefficients." + kind;
  if (kind == "explicit") {
    src.kind = CoefficientSource::Kind::Explicit;
    src.values = as_reals(body, field);
  } else if (kind == "power") {
    src.kind = CoefficientSource::Kind::Power;
    allow_keys(body, field, {"p"});
    if (!body["p"]) fail(body, field, "needs 'p'");
    src.p = as_real(body["p"], field + ".p");
  } else if (kind == "stretched_exp") {
    src.kind = CoefficientSource::Kind::StretchedExp;
    allow_keys(body, field, {"beta"});
    if (!body["beta"]) fail(body, field, "needs 'beta'");
    src.beta = as_real(body["beta"], field + ".beta");
    if (!(src.beta > 0.0)) fail(body["beta"], field + ".beta", "must be > 0");
  } else {
    src.kind = CoefficientSource::Kind::TauReciprocal;
    allow_keys(body, field, {"sequence", "alpha"});
    if (!body["sequence"]) fail(body, field, "needs 'sequence'");
    src.growth = parse_growth(body["sequence"], field + ".sequence");
    if (body["alpha"]) src.alpha = as_real(body["alpha"], field + ".alpha");
    if (!(src.alpha > 0.0)) fail(body, field + ".alpha", "must be > 0");
  }
  return src;
}

void parse_verify(const YAML::Node& node, VerifySettings& v) {
  allow_keys(node, "verify",
             {"vectors", "max_modes", "lambda_max", "coeff_bound", "jackson_k", "derivative_n",
              "derivative_k", "lemma_max_k", "lemma_max_n"});
  if (node["vectors"]) v.vectors = as_integer<std::size_t>(node["vectors"], "verify.vectors");
  if (node["max_modes"]) v.max_modes = as_integer<std::size_t>(node["max_modes"], "verify.max_modes");
  if (node["lambda_max"]) v.lambda_max = as_real(node["lambda_max"], "verify.lambda_max");
  if (node["coeff_bound"]) v.coeff_bound = as_real(node["coeff_bound"], "verify.coeff_bound");
  if (node["jackson_k"]) v.jackson_k = as_unsigneds(node["jackson_k"], "verify.jackson_k");
  if (node["derivative_n"]) v.derivative_n = as_unsigneds(node["derivative_n"], "verify.derivative_n");
  if (node["derivative_k"]) v.derivative_k = as_unsigneds(node["derivative_k"], "verify.derivative_k");
  if (node["lemma_max_k"]) v.lemma_max_k = as_integer<unsigned>(node["lemma_max_k"], "verify.lemma_max_k");
  if (node["lemma_max_n"]) v.lemma_max_n = as_integer<unsigned>(node["lemma_max_n"], "verify.lemma_max_n");
  if (v.max_modes == 0) fail(node, "verify.max_modes", "must be >= 1");
  if (!(v.lambda_max > 0.0) || !(v.coeff_bound > 0.0)) fail(node, "verify", "lambda_max and coeff_bound must be > 0");
  if (std::find(v.jackson_k.begin(), v.jackson_k.end(), 0u) != v.jackson_k.end()) {
    fail(node["jackson_k"], "verify.jackson_k", "Jackson order k must be >= 1");
  }
}

void parse_classify(const YAML::Node& node, ClassifySettings& c) {
  allow_keys(node, "classify", {"curve", "exponent", "beta", "csv", "taylor_n"});
  if (node["curve"]) {
    const auto kind = node["curve"].as<std::string>();
    if (kind == "vector") {
      c.curve = ClassifySettings::CurveKind::FromVector;
    } else if (kind == "power") {
      c.curve = ClassifySettings::CurveKind::Power;
    } else if (kind == "stretched_exp") {
      c.curve = ClassifySettings::CurveKind::StretchedExp;
    } else if (kind == "csv") {
      c.curve = ClassifySettings::CurveKind::Csv;
    } else {
      fail(node["curve"], "classify.curve", fmt::format("unknown curve kind '{}'", kind));
    }
  }
  if (node["exponent"]) c.exponent = as_real(node["exponent"], "classify.exponent");
  if (node["beta"]) c.beta = as_real(node["beta"], "classify.beta");
  if (node["csv"]) c.csv = node["csv"].as<std::string>();
  if (node["taylor_n"]) c.taylor_n = as_integer<std::size_t>(node["taylor_n"], "classify.taylor_n");
  if (c.curve == ClassifySettings::CurveKind::Csv && c.csv.empty()) fail(node, "classify.csv", "csv curve needs a path");
  if (!(c.beta > 0.0)) fail(node, "classify.beta", "must be > 0");
}

void parse_cube_settings(const YAML::Node& node, CubeSettings& c) {
  allow_keys(node, "cube", {"window"});
  if (node["window"]) {
    const auto w = node["window"];
    if (!w.IsSequence() || w.size() != 2) fail(w, "cube.window", "expected [first, last]");
    c.window_first = as_integer<std::size_t>(w[0], "cube.window[0]");
    c.window_last = as_integer<std::size_t>(w[1], "cube.window[1]");
  }
}

void parse_oracle(const YAML::Node& node, OracleSettings& o) {
  allow_keys(node, "oracle", {"a", "grid_points", "dt", "t_final", "modes", "coefficients"});
  if (node["a"]) o.a = as_real(node["a"], "oracle.a");
  if (node["grid_points"]) o.grid_points = as_integer<std::size_t>(node["grid_points"], "oracle.grid_points");
  if (node["dt"]) o.dt = as_real(node["dt"], "oracle.dt");
  if (node["t_final"]) o.t_final = as_real(node["t_final"], "oracle.t_final");
  if (node["modes"]) o.modes = as_integer<std::size_t>(node["modes"], "oracle.modes");
  if (node["coefficients"]) {
    o.coefficients = as_reals(node["coefficients"], "oracle.coefficients");
    o.modes = o.coefficients.size();
  }
  if (!(o.a > 0.0) || !(o.dt > 0.0) || !(o.t_final >= 0.0) || o.grid_points < 11 || o.modes == 0) {
    fail(node, "oracle", "needs a > 0, dt > 0, t_final >= 0, grid_points >= 11, modes >= 1");
  }
}

// ---------------------------------------------------------------------------
// Runners

std::vector<double> resolve_grid(const GridSpec& grid, const ExperimentConfig& config,
                                 const char* name) {
  if (!grid.eigenvalues) return grid.points;
  if (!config.spectrum) {
    throw ValidationError(fmt::format("grids.{}: 'eigenvalues' needs a spectrum source", name));
  }
  const auto f = build_vector(config);
  std::vector<double> points;
  for (double lam : f.spectrum().eigenvalues()) {
    if (lam > 0.0 && lam < f.spectrum().max() && (points.empty() || lam > points.back())) {
      points.push_back(lam);
    }
  }
  if (points.empty()) throw ValidationError(fmt::format("grids.{}: spectrum yields no grid points", name));
  return points;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ValidationError(fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
}

std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                 const std::string& content) {
  const auto path = dir / name;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError(fmt::format("cannot write {}", path.string()));
  os << content;
  return path;
}

RunSummary run_decay(const ExperimentConfig& config, const std::filesystem::path& out) {
  const auto f = build_vector(config);
  if (!config.r_grid) throw ValidationError("decay experiment needs grids.r");
  const auto grid = resolve_grid(*config.r_grid, config, "r");
  const auto curve = decay_curve(f, grid);

  RunSummary summary;
  std::ostringstream decay, vec;
  io::write_decay_csv(decay, curve);
  io::write_spectral_csv(vec, f);
  summary.files.push_back(write_file(out, "decay.csv", decay.str()));
  summary.files.push_back(write_file(out, "vector.csv", vec.str()));
  if (config.t_grid) {
    const SolutionHandle y(f);
    std::ostringstream ev;
    ev << "t,norm\n";
    for (double t : resolve_grid(*config.t_grid, config, "t")) {
      ev << io::format_double(t) << ',' << io::format_double(norm(evolve(y, t).state)) << '\n';
    }
    summary.files.push_back(write_file(out, "evolution.csv", ev.str()));
  }
  summary.message = fmt::format("decay curve with {} samples", curve.samples.size());
  return summary;
}

std::vector<InequalityReport> verify_vector(const SpectralVector& f, const std::string& tag,
                                            const VerifySettings& v, std::span<const double> r_grid,
                                            std::span<const double> h_grid) {
  std::vector<InequalityReport> reports;
  const auto tagged = [&](InequalityReport rep) {
    rep.name = fmt::format("{}:{}", tag, rep.name);
    reports.push_back(std::move(rep));
  };
  for (unsigned k : v.jackson_k) {
    for (double r : r_grid) tagged(jackson_check(f, k, r));
  }
  for (unsigned n : v.derivative_n) {
    for (unsigned k : v.derivative_k) {
      for (double r : r_grid) tagged(derivative_jackson_check(f, n, k, r));
    }
  }
  if (!f.is_zero()) {
    for (double h : h_grid) {
      for (unsigned k = 0; k <= v.lemma_max_k; ++k) {
        for (unsigned n = 0; n <= v.lemma_max_n; ++n) tagged(lemma1_check(f, h, k, n));
      }
    }
  }
  return reports;
}

RunSummary run_verify(const ExperimentConfig& config, const std::filesystem::path& out) {
  const auto& v = config.verify;
  std::vector<double> r_grid;
  if (config.r_grid) {
    r_grid = resolve_grid(*config.r_grid, config, "r");
  } else {
    for (int i = 0; i < 20; ++i) r_grid.push_back(0.1 * std::pow(2000.0, i / 19.0));
    r_grid.back() = 200.0;
  }
  const std::vector<double> h_grid =
      config.h_grid ? resolve_grid(*config.h_grid, config, "h") : std::vector<double>{0.1, 1.0, 2.0};

  std::vector<InequalityReport> reports;
  for (std::size_t i = 0; i < v.vectors; ++i) {
    auto part = verify_vector(random_instance(v, config.seed, i), fmt::format("v{}", i), v, r_grid, h_grid);
    reports.insert(reports.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  if (config.spectrum && config.coefficients) {
    auto part = verify_vector(build_vector(config), "config", v, r_grid, h_grid);
    reports.insert(reports.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }

  json arr = json::array();
  RunSummary summary;
  for (const auto& rep : reports) {
    arr.push_back(io::to_json(rep));
    if (!rep.holds) ++summary.failed_reports;
  }
  summary.reports = reports.size();
  summary.files.push_back(write_file(out, "verify.json", io::dump(arr, 1) + "\n"));
  summary.message = fmt::format("{}/{} inequality reports hold", summary.reports - summary.failed_reports,
                                summary.reports);
  return summary;
}

RunSummary run_classify(const ExperimentConfig& config, const std::filesystem::path& out) {
  const auto& c = config.classify;
  DecayCurve curve;
  std::optional<SpectralVector> vec;
  switch (c.curve) {
    case ClassifySettings::CurveKind::FromVector: {
      vec = build_vector(config);
      const auto grid = config.r_grid ? resolve_grid(*config.r_grid, config, "r")
                                      : resolve_grid(GridSpec{{}, true}, config, "r");
      curve = decay_curve(*vec, grid);
      break;
    }
    case ClassifySettings::CurveKind::Power:
    case ClassifySettings::CurveKind::StretchedExp: {
      if (!config.r_grid) throw ValidationError("synthetic classify curve needs grids.r");
      for (double r : resolve_grid(*config.r_grid, config, "r")) {
        if (!(r > 0.0)) throw ValidationError("grids.r must be positive");
        const double value = c.curve == ClassifySettings::CurveKind::Power
                                 ? std::pow(r, -c.exponent)
                                 : std::exp(-std::pow(r, 1.0 / c.beta));
        curve.samples.push_back({r, value});
      }
      break;
    }
    case ClassifySettings::CurveKind::Csv: {
      std::ifstream is(c.csv);
      if (!is) throw ValidationError(fmt::format("cannot read decay curve {}", c.csv.string()));
      curve = io::read_decay_csv(is);
      break;
    }
  }

  const auto cls = classify_decay(curve);
  json report = io::to_json(cls);
  if (cls.verdict == Verdict::GevreyRoumieu && cls.beta > 0.0 && cls.beta < 1.0) {
    report["order_from_beta"] = order_from_beta(cls.beta);
  }
  if (c.taylor_n) {
    if (!vec) vec = build_vector(config);
    const auto est = order_from_taylor(SolutionHandle(*vec), *c.taylor_n);
    report["order_from_taylor"] = {{"N", *c.taylor_n}, {"rho", est.rho}, {"window_max", est.window_max}};
  }

  RunSummary summary;
  std::ostringstream decay;
  io::write_decay_csv(decay, curve);
  summary.files.push_back(write_file(out, "decay.csv", decay.str()));
  summary.files.push_back(write_file(out, "classification.json", io::dump(report) + "\n"));
  summary.message = fmt::format("verdict {}", to_string(cls.verdict));
  return summary;
}

RunSummary run_cube(const ExperimentConfig& config, const std::filesystem::path& out) {
  if (!config.spectrum || config.spectrum->kind != SpectrumSource::Kind::Cube) {
    throw ValidationError("cube experiment needs spectrum.cube");
  }
  const auto& op = config.spectrum->cube;
  const auto idx = cube_spectrum(op);
  std::vector<double> coeffs(idx.size(), 0.0);
  if (config.coefficients) {
    const auto f = build_vector(config);
    coeffs.assign(f.coeffs().begin(), f.coeffs().end());
  }

  const std::size_t first = config.cube.window_first.value_or(1);
  const std::size_t last = config.cube.window_last.value_or(idx.reliable_count());
  const auto fit = weyl_fit(idx, op.q, first, last);

  json weyl;
  weyl["q"] = op.q;
  weyl["a"] = op.a;
  weyl["n_per_axis"] = op.n_per_axis;
  weyl["window"] = {first, last};
  weyl["reliable_threshold"] = op.reliable_threshold();
  weyl["exponent"] = fit.exponent;
  weyl["expected_exponent"] = 2.0 / op.q;
  weyl["c1"] = fit.c1;
  weyl["c2"] = fit.c2;

  RunSummary summary;
  std::ostringstream spec;
  io::write_cube_spectrum_csv(spec, idx, coeffs);
  summary.files.push_back(write_file(out, "spectrum.csv", spec.str()));
  summary.files.push_back(write_file(out, "weyl.json", io::dump(weyl) + "\n"));
  summary.message = fmt::format("Weyl exponent {} (expected {})", io::format_double(fit.exponent),
                                io::format_double(2.0 / op.q));
  return summary;
}

RunSummary run_oracle(const ExperimentConfig& config, const std::filesystem::path& out) {
  const auto& o = config.oracle;
  std::vector<double> coeffs = o.coefficients;
  if (coeffs.empty()) {
    std::mt19937_64 gen(config.seed);
    for (std::size_t i = 0; i < o.modes; ++i) coeffs.push_back(2.0 * unit_uniform(gen()) - 1.0);
  }
  CubeOperator op{1, o.a, static_cast<int>(coeffs.size())};
  const auto idx = cube_spectrum(op);
  const SpectralVector f(idx.spectrum, coeffs);

  const auto x = uniform_grid(o.a, o.grid_points);
  std::vector<double> initial(x.size()), spectral(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi[1] = {x[i]};
    initial[i] = heat_solution_eval(idx, f, 0.0, xi);
    spectral[i] = heat_solution_eval(idx, f, o.t_final, xi);
  }
  const auto fd = fd_oracle_1d(o.a, initial, o.t_final, o.grid_points, o.dt);

  // Trapezoid-weighted discrete L2 norms.
  double err2 = 0.0, ref2 = 0.0;
  std::ostringstream cmp;
  cmp << "x,u_fd,u_spectral,abs_error\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double w = (i == 0 || i + 1 == x.size()) ? 0.5 : 1.0;
    err2 += w * (fd[i] - spectral[i]) * (fd[i] - spectral[i]);
    ref2 += w * spectral[i] * spectral[i];
    cmp << io::format_double(x[i]) << ',' << io::format_double(fd[i]) << ','
        << io::format_double(spectral[i]) << ',' << io::format_double(std::abs(fd[i] - spectral[i])) << '\n';
  }
  const double rel = ref2 > 0.0 ? std::sqrt(err2 / ref2) : std::sqrt(err2);

  json summary_json;
  summary_json["a"] = o.a;
  summary_json["grid_points"] = o.grid_points;
  summary_json["dt"] = o.dt;
  summary_json["t_final"] = o.t_final;
  summary_json["coefficients"] = coeffs;
  summary_json["l2_relative_error"] = rel;

  RunSummary summary;
  std::ostringstream fd_csv, sp_csv;
  io::write_grid_csv(fd_csv, x, fd);
  io::write_grid_csv(sp_csv, x, spectral);
  summary.files.push_back(write_file(out, "oracle.csv", cmp.str()));
  summary.files.push_back(write_file(out, "fd.csv", fd_csv.str()));
  summary.files.push_back(write_file(out, "spectral.csv", sp_csv.str()));
  summary.files.push_back(write_file(out, "oracle.json", io::dump(summary_json) + "\n"));
  summary.message = fmt::format("L2 relative error {}", io::format_double(rel));
  return summary;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Decay:
      return "decay";
    case ExperimentKind::Verify:
      return "verify";
    case ExperimentKind::Classify:
      return "classify";
    case ExperimentKind::Cube:
      return "cube";
    case ExperimentKind::Oracle:
      return "oracle";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_experiment_kind(const std::string& name) {
  for (auto k : {ExperimentKind::Decay, ExperimentKind::Verify, ExperimentKind::Classify,
                 ExperimentKind::Cube, ExperimentKind::Oracle}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

GrowthSequence GrowthSpec::build() const {
  switch (kind) {
    case GrowthSequence::Kind::Factorial:
      return GrowthSequence::factorial();
    case GrowthSequence::Kind::Gevrey:
      return GrowthSequence::gevrey(beta);
    case GrowthSequence::Kind::Tabulated:
      return GrowthSequence::tabulated(values);
  }
  return GrowthSequence::factorial();
}

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ValidationError(fmt::format("config line {}: {}", e.mark.line + 1, e.msg));
  }
  ExperimentConfig config;
  if (root.IsNull()) return config;
  allow_keys(root, "",
             {"experiment", "seed", "output", "spectrum", "coefficients", "grids", "verify",
              "classify", "cube", "oracle"});
  if (root["experiment"]) {
    const auto name = root["experiment"].as<std::string>();
    config.kind = parse_experiment_kind(name);
    if (!config.kind) fail(root["experiment"], "experiment", fmt::format("unknown experiment '{}'", name));
  }
  if (root["seed"]) config.seed = as_integer<std::uint64_t>(root["seed"], "seed");
  if (root["output"]) config.output_dir = root["output"].as<std::string>();
  if (root["spectrum"]) config.spectrum = parse_spectrum(root["spectrum"]);
  if (root["coefficients"]) config.coefficients = parse_coefficients(root["coefficients"]);
  if (const auto grids = root["grids"]) {
    allow_keys(grids, "grids", {"r", "t", "h"});
    if (grids["r"]) config.r_grid = parse_grid(grids["r"], "grids.r");
    if (grids["t"]) config.t_grid = parse_grid(grids["t"], "grids.t");
    if (grids["h"]) config.h_grid = parse_grid(grids["h"], "grids.h");
  }
  if (root["verify"]) parse_verify(root["verify"], config.verify);
  if (root["classify"]) parse_classify(root["classify"], config.classify);
  if (root["cube"]) parse_cube_settings(root["cube"], config.cube);
  if (root["oracle"]) parse_oracle(root["oracle"], config.oracle);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError(fmt::format("cannot read config {}", path.string()));
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

SpectralVector build_vector(const ExperimentConfig& config) {
  if (!config.spectrum) throw ValidationError("missing spectrum source");
  if (!config.coefficients) throw ValidationError("missing coefficient source");
  const auto& s = *config.spectrum;
  DiscreteSpectrum spectrum = [&] {
    switch (s.kind) {
      case SpectrumSource::Kind::Explicit:
        return make_spectrum(s.values);
      case SpectrumSource::Kind::Arithmetic: {
        std::vector<double> values(s.count);
        for (std::size_t k = 0; k < s.count; ++k) values[k] = static_cast<double>(k + 1) * s.step;
        return make_spectrum(std::move(values));
      }
      case SpectrumSource::Kind::Cube:
        return cube_spectrum(s.cube).spectrum;
    }
    throw ValidationError("unknown spectrum source");
  }();

  const auto& c = *config.coefficients;
  std::vector<double> coeffs(spectrum.size());
  if (c.kind == CoefficientSource::Kind::Explicit) {
    if (c.values.size() != spectrum.size()) {
      throw ValidationError(fmt::format("coefficients.explicit has {} entries for {} modes",
                                        c.values.size(), spectrum.size()));
    }
    if (s.kind == SpectrumSource::Kind::Explicit &&
        !std::is_sorted(s.values.begin(), s.values.end())) {
      throw ValidationError("explicit coefficients need an explicit spectrum in ascending order");
    }
    coeffs = c.values;
  } else {
    const auto sequence = c.growth.build();
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
      const double lam = spectrum[k];
      switch (c.kind) {
        case CoefficientSource::Kind::Power:
          if (lam == 0.0 && c.p > 0.0) throw ValidationError("power coefficients undefined at lambda = 0");
          coeffs[k] = std::pow(lam, -c.p);
          break;
        case CoefficientSource::Kind::StretchedExp:
          coeffs[k] = std::exp(-std::pow(lam, 1.0 / c.beta));
          break;
        case CoefficientSource::Kind::TauReciprocal:
          coeffs[k] = std::exp(-tau_eval(sequence, c.alpha * lam));
          break;
        case CoefficientSource::Kind::Explicit:
          break;
      }
    }
  }
  return {std::move(spectrum), std::move(coeffs)};
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

SpectralVector random_instance(const VerifySettings& settings, std::uint64_t seed, std::size_t index) {
  std::mt19937_64 gen(seed + index);
  const std::size_t modes = 1 + static_cast<std::size_t>(gen() % settings.max_modes);
  std::vector<double> lambdas(modes), coeffs(modes);
  for (auto& lam : lambdas) lam = settings.lambda_max * unit_uniform(gen());
  for (auto& c : coeffs) c = settings.coeff_bound * (2.0 * unit_uniform(gen()) - 1.0);
  // make_spectrum sorts, so pair coefficients with eigenvalues first
  std::vector<std::size_t> order(modes);
  for (std::size_t i = 0; i < modes; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return lambdas[l] < lambdas[r]; });
  std::vector<double> sorted_coeffs(modes);
  for (std::size_t i = 0; i < modes; ++i) sorted_coeffs[i] = coeffs[order[i]];
  if (std::all_of(sorted_coeffs.begin(), sorted_coeffs.end(), [](double v) { return v == 0.0; })) {
    sorted_coeffs.back() = settings.coeff_bound;
  }
  return {make_spectrum(std::move(lambdas)), std::move(sorted_coeffs)};
}

RunSummary run(ExperimentKind kind, const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  if (config.kind && *config.kind != kind) {
    throw ValidationError(fmt::format("config declares experiment '{}' but '{}' was requested",
                                      to_string(*config.kind), to_string(kind)));
  }
  ensure_dir(out_dir);
  switch (kind) {
    case ExperimentKind::Decay:
      return run_decay(config, out_dir);
    case ExperimentKind::Verify:
      return run_verify(config, out_dir);
    case ExperimentKind::Classify:
      return run_classify(config, out_dir);
    case ExperimentKind::Cube:
      return run_cube(config, out_dir);
    case ExperimentKind::Oracle:
      return run_oracle(config, out_dir);
  }
  throw ValidationError("unknown experiment kind");
}

}  // namespace specapprox
