#include <weakval/scenario.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include <weakval/errors.hpp>
#include <weakval/expr.hpp>

namespace weakval {

namespace {

using nlohmann::ordered_json;

Complex complex_from_json(const ordered_json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(field + ": complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

ordered_json complex_to_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

std::vector<Complex> amplitudes_from_json(const ordered_json& j,
                                          const std::string& field,
                                          std::size_t dim) {
  if (!j.is_array() || j.size() != dim)
    throw ValidationError(field + ": expected " + std::to_string(dim) +
                          " amplitudes");
  std::vector<Complex> out(dim);
  for (std::size_t i = 0; i < dim; ++i)
    out[i] = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
  return out;
}

void reject_unknown_keys(const ordered_json& j,
                         std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok)
      throw ValidationError(where + ": unknown field '" + key + "'");
  }
}

MatrixSystem matrix_system_from_json(const ordered_json& j) {
  reject_unknown_keys(j, {"dim", "pre", "post", "observable"}, "system");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ValidationError("system.dim: required positive integer");
  const std::size_t dim = j["dim"].get<std::size_t>();
  if (dim == 0 || dim > 64)
    throw ValidationError("system.dim: must be in [1, 64]");

  for (const char* key : {"pre", "post", "observable"})
    if (!j.contains(key))
      throw ValidationError(std::string("system.") + key + ": required");

  std::vector<Complex> pre = amplitudes_from_json(j["pre"], "system.pre", dim);
  std::vector<Complex> post =
      amplitudes_from_json(j["post"], "system.post", dim);

  const ordered_json& obs_json = j["observable"];
  if (!obs_json.is_array() || obs_json.size() != dim)
    throw ValidationError("system.observable: expected a " +
                          std::to_string(dim) + "x" + std::to_string(dim) +
                          " matrix");
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::string field = "system.observable[" + std::to_string(r) + "]";
    if (!obs_json[r].is_array() || obs_json[r].size() != dim)
      throw ValidationError(field + ": expected " + std::to_string(dim) +
                            " entries");
    for (std::size_t c = 0; c < dim; ++c)
      entries.push_back(
          complex_from_json(obs_json[r][c], field + "[" + std::to_string(c) + "]"));
  }

  try {
    MatrixSystem sys{QuantumState(std::move(pre)), QuantumState(std::move(post)),
                     Observable(HermitianMatrix(dim, std::move(entries)))};
    const double overlap = std::abs(inner(sys.post, sys.pre));
    if (overlap < kOverlapFloor) {
      std::ostringstream msg;
      msg << "system: pre/post overlap |<post|pre>| = " << overlap
          << " is below the 1e-12 floor (orthogonal selection)";
      throw ValidationError(msg.str());
    }
    return sys;
  } catch (const DomainError& e) {
    throw ValidationError(std::string("system: ") + e.what());
  }
}

ExpressionSystem expression_system_from_json(const ordered_json& j) {
  reject_unknown_keys(j, {"source", "pointer_var", "width_var", "params"},
                      "expression");
  ExpressionSystem sys;
  if (!j.contains("source") || !j["source"].is_string())
    throw ValidationError("expression.source: required string");
  sys.source = j["source"].get<std::string>();
  sys.pointer_var = j.value("pointer_var", std::string("Q"));
  sys.width_var = j.value("width_var", std::string("beta"));
  if (sys.pointer_var == sys.width_var)
    throw ValidationError("expression: pointer_var and width_var must differ");
  if (j.contains("params")) {
    if (!j["params"].is_object())
      throw ValidationError("expression.params: expected an object");
    for (const auto& [key, value] : j["params"].items())
      sys.params[key] =
          complex_from_json(value, "expression.params." + key);
  }

  expr::WaveExpr parsed;
  try {
    parsed = expr::parse(sys.source);
  } catch (const SyntaxError& e) {
    throw ValidationError(std::string("expression.source: ") + e.what());
  }
  for (const std::string& name : parsed.free_vars) {
    if (name == sys.pointer_var || name == sys.width_var) continue;
    if (!sys.params.contains(name))
      throw ValidationError("expression: free variable '" + name +
                            "' has no parameter binding");
  }
  return sys;
}

const char* const kPresetRitchie = R"json({
  "name": "ritchie",
  "beta": 0.01,
  "seed": 20240817,
  "ensemble_n": 100000,
  "system": {
    "dim": 2,
    "pre": [[0.7071067811865476, 0.0], [0.7071067811865475, 0.0]],
    "post": [[-0.7741670784769464, 0.0], [0.6329813066769582, 0.0]],
    "observable": [
      [[-1.0, 0.0], [0.0, 0.0]],
      [[0.0, 0.0], [0.0, 0.0]]
    ]
  }
})json";

const char* const kPresetSpinImaginary = R"json({
  "name": "spin-imaginary",
  "beta": 0.05,
  "seed": 20240817,
  "ensemble_n": 100000,
  "system": {
    "dim": 2,
    "pre": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
    "post": [[0.7071067811865476, 0.0], [0.0, 0.7071067811865476]],
    "observable": [
      [[1.0, 0.0], [0.0, 0.0]],
      [[0.0, 0.0], [-1.0, 0.0]]
    ]
  }
})json";

const char* const kPresetEigenstate = R"json({
  "name": "eigenstate",
  "beta": 1.0,
  "seed": 20240817,
  "ensemble_n": 100000,
  "system": {
    "dim": 2,
    "pre": [[1.0, 0.0], [0.0, 0.0]],
    "post": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]],
    "observable": [
      [[1.0, 0.0], [0.0, 0.0]],
      [[0.0, 0.0], [-1.0, 0.0]]
    ]
  }
})json";

const char* const kPresetEnsembleDemo = R"json({
  "name": "ensemble-demo",
  "beta": 0.01,
  "seed": 20240817,
  "ensemble_n": 100000,
  "system": {
    "dim": 2,
    "pre": [[0.7071067811865476, 0.0], [0.7071067811865475, 0.0]],
    "post": [[-0.8844892518835474, 0.0], [0.46656056766778153, 0.0]],
    "observable": [
      [[-1.0, 0.0], [0.0, 0.0]],
      [[0.0, 0.0], [0.0, 0.0]]
    ]
  }
})json";

}  // namespace

const MatrixSystem& Scenario::matrix_system() const {
  if (!is_matrix())
    throw DomainError("scenario '" + name + "' is expression-form");
  return std::get<MatrixSystem>(system);
}

const ExpressionSystem& Scenario::expression_system() const {
  if (is_matrix())
    throw DomainError("scenario '" + name + "' is matrix-form");
  return std::get<ExpressionSystem>(system);
}

namespace {

Scenario scenario_from_parsed(const ordered_json& j);

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  try {
    return scenario_from_parsed(j);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("scenario: ") + e.what());
  }
}

namespace {

Scenario scenario_from_parsed(const ordered_json& j) {
  if (!j.is_object()) throw ValidationError("scenario: expected a JSON object");
  reject_unknown_keys(
      j, {"name", "beta", "seed", "ensemble_n", "grid", "system", "expression"},
      "scenario");

  if (!j.contains("name") || !j["name"].is_string())
    throw ValidationError("scenario.name: required string");
  if (!j.contains("beta") || !j["beta"].is_number())
    throw ValidationError("scenario.beta: required number");

  const bool has_system = j.contains("system");
  const bool has_expression = j.contains("expression");
  if (has_system && has_expression)
    throw ValidationError(
        "scenario: 'system' and 'expression' are mutually exclusive; exactly "
        "one may supply the wavefunction");
  if (!has_system && !has_expression)
    throw ValidationError("scenario: one of 'system' or 'expression' is required");

  const double beta = j["beta"].get<double>();
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw ValidationError("scenario.beta: must be finite and >= 0");

  std::optional<GridSpec> grid;
  if (j.contains("grid")) {
    const ordered_json& g = j["grid"];
    reject_unknown_keys(g, {"min", "max", "points"}, "grid");
    for (const char* key : {"min", "max", "points"})
      if (!g.contains(key))
        throw ValidationError(std::string("grid.") + key + ": required");
    grid = GridSpec{g["min"].get<double>(), g["max"].get<double>(),
                    g["points"].get<int>()};
    if (!(grid->q_min < grid->q_max))
      throw ValidationError("grid: min must be < max");
    if (grid->points < 2) throw ValidationError("grid.points: must be >= 2");
  }

  std::variant<MatrixSystem, ExpressionSystem> system =
      has_system
          ? std::variant<MatrixSystem, ExpressionSystem>(
                matrix_system_from_json(j["system"]))
          : std::variant<MatrixSystem, ExpressionSystem>(
                expression_system_from_json(j["expression"]));

  return Scenario{j["name"].get<std::string>(),
                  beta,
                  j.value("seed", std::uint64_t{0}),
                  j.value("ensemble_n", std::size_t{10000}),
                  grid,
                  std::move(system)};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  ordered_json j;
  j["name"] = s.name;
  j["beta"] = s.beta;
  j["seed"] = s.seed;
  j["ensemble_n"] = s.ensemble_n;
  if (s.grid) {
    j["grid"] = {{"min", s.grid->q_min},
                 {"max", s.grid->q_max},
                 {"points", s.grid->points}};
  }
  if (s.is_matrix()) {
    const MatrixSystem& sys = s.matrix_system();
    ordered_json m;
    m["dim"] = sys.pre.dim();
    ordered_json pre = ordered_json::array();
    ordered_json post = ordered_json::array();
    for (std::size_t i = 0; i < sys.pre.dim(); ++i) {
      pre.push_back(complex_to_json(sys.pre[i]));
      post.push_back(complex_to_json(sys.post[i]));
    }
    m["pre"] = std::move(pre);
    m["post"] = std::move(post);
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < sys.obs.dim(); ++r) {
      ordered_json row = ordered_json::array();
      for (std::size_t c = 0; c < sys.obs.dim(); ++c)
        row.push_back(complex_to_json(sys.obs.matrix()(r, c)));
      rows.push_back(std::move(row));
    }
    m["observable"] = std::move(rows);
    j["system"] = std::move(m);
  } else {
    const ExpressionSystem& sys = s.expression_system();
    ordered_json e;
    e["source"] = sys.source;
    e["pointer_var"] = sys.pointer_var;
    e["width_var"] = sys.width_var;
    ordered_json params = ordered_json::object();
    for (const auto& [name, value] : sys.params)
      params[name] = complex_to_json(value);
    e["params"] = std::move(params);
    j["expression"] = std::move(e);
  }
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot open scenario file for writing: " + path.string());
  out << scenario_to_json(s);
}

std::vector<std::string> preset_names() {
  return {"ritchie", "spin-imaginary", "eigenstate", "ensemble-demo"};
}

Scenario preset(const std::string& name) {
  if (name == "ritchie") return scenario_from_json(kPresetRitchie);
  if (name == "spin-imaginary") return scenario_from_json(kPresetSpinImaginary);
  if (name == "eigenstate") return scenario_from_json(kPresetEigenstate);
  if (name == "ensemble-demo") return scenario_from_json(kPresetEnsembleDemo);
  throw ValidationError("unknown preset '" + name +
                        "' (try: ritchie, spin-imaginary, eigenstate, "
                        "ensemble-demo)");
}

PostselectedWave scenario_postselected(const Scenario& s) {
  const MatrixSystem& sys = s.matrix_system();
  return synthesize_postselected(sys.pre, sys.post, sys.obs, s.beta);
}

AnalyticWave scenario_wave(const Scenario& s) {
  if (s.is_matrix()) return to_analytic_wave(scenario_postselected(s));
  const ExpressionSystem& sys = s.expression_system();
  return to_analytic_wave(expr::parse(sys.source), sys.pointer_var,
                          sys.width_var, sys.params);
}

AnalyticWave optical_wavefunction(const OpticalParams& p) {
  if (!(p.a > 0.0)) throw DomainError("optical: separation a must be > 0");
  if (std::abs(std::cos(p.alpha - p.alpha_prime)) < kOverlapFloor)
    throw OrthogonalSelection(
        "optical: crossed polarizers, cos(alpha - alpha') ~ 0");
  const double w1 = std::cos(p.alpha) * std::cos(p.alpha_prime);
  const double w2 = std::sin(p.alpha) * std::sin(p.alpha_prime);
  const double a = p.a;
  return make_wave([w1, w2, a](auto y, auto beta) {
    using std::exp;
    using S = std::decay_t<decltype(y)>;
    const S shifted = y + S(a);
    return S(w1) * exp(S(-0.5) * beta * shifted * shifted) +
           S(w2) * exp(S(-0.5) * beta * y * y);
  });
}

Complex optical_weak_value_closed_form(const OpticalParams& p) {
  if (!(p.a > 0.0)) throw DomainError("optical: separation a must be > 0");
  const double ca = std::cos(p.alpha);
  const double cap = std::cos(p.alpha_prime);
  if (std::abs(ca) < kOverlapFloor || std::abs(cap) < kOverlapFloor)
    throw DomainError("optical: tangent undefined (polarizer at pi/2)");
  const double denom = 1.0 + std::tan(p.alpha) * std::tan(p.alpha_prime);
  if (std::abs(denom) < kOverlapFloor)
    throw OrthogonalSelection("optical: pole of the closed form, "
                              "cos(alpha - alpha') ~ 0");
  return Complex(-p.a / denom, 0.0);
}

MatrixSystem optical_equivalent_system(const OpticalParams& p) {
  if (!(p.a > 0.0)) throw DomainError("optical: separation a must be > 0");
  QuantumState pre({Complex(std::cos(p.alpha)), Complex(std::sin(p.alpha))});
  QuantumState post(
      {Complex(std::cos(p.alpha_prime)), Complex(std::sin(p.alpha_prime))});
  HermitianMatrix c(2);
  c.set(0, 0, Complex(-p.a));
  return {std::move(pre), std::move(post), Observable(std::move(c))};
}

std::string optical_expression_source() {
  return "cos(alpha)*cos(alphap)*exp(-beta*(y+a)^2/2) + "
         "sin(alpha)*sin(alphap)*exp(-beta*y^2/2)";
}

std::map<std::string, Complex> optical_expression_params(const OpticalParams& p) {
  return {{"alpha", Complex(p.alpha)},
          {"alphap", Complex(p.alpha_prime)},
          {"a", Complex(p.a)}};
}

OpticalParams ritchie_params() {
  return {std::numbers::pi / 4, 3 * std::numbers::pi / 4 + 0.1, 1.0, 0.01};
}

OpticalParams ensemble_demo_params() {
  return {std::numbers::pi / 4, 3 * std::numbers::pi / 4 + 0.3, 1.0, 0.01};
}

}  // namespace weakval
