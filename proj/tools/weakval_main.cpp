// weakval: command-line front end for the weak-measurement toolkit.
//
// Subcommands: run, extract, series, ensemble, profile. All primary
// output goes to stdout (JSON or CSV, 17 significant digits); warnings
// and human-readable notes go to stderr. Exit codes: 0 success (and, for
// `run`, agreement), 2 disagreement, 1 any error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <weakval/weakval.hpp>

using namespace weakval;
using nlohmann::ordered_json;

namespace {

ordered_json to_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

// Reports must reconstruct losslessly, and JSON has no inf/nan, so a
// non-finite value is an error, not a null.
void require_finite(const Complex& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(std::string(what) +
                " is not finite; the wavefunction is pathological at the "
                "extraction point");
}

struct ScenarioArgs {
  std::string preset_name;
  std::string scenario_path;
  std::optional<std::uint64_t> seed_flag;

  void attach(CLI::App* cmd) {
    cmd->add_option("--preset", preset_name,
                    "Bundled preset name (ritchie, spin-imaginary, "
                    "eigenstate, ensemble-demo)");
    cmd->add_option("--scenario", scenario_path, "Path to a scenario JSON file");
    cmd->add_option("--seed", seed_flag, "Override the scenario RNG seed");
  }

  Scenario resolve() const {
    if (preset_name.empty() == scenario_path.empty())
      throw ValidationError("exactly one of --preset or --scenario is required");
    Scenario s = preset_name.empty() ? load_scenario(scenario_path)
                                     : preset(preset_name);
    if (seed_flag) {
      s.seed = *seed_flag;
    } else if (const char* env = std::getenv("WEAKVAL_SEED")) {
      s.seed = std::strtoull(env, nullptr, 10);
    }
    return s;
  }
};

// Writes to a temporary file in the destination directory and renames,
// so failed runs leave no partial files behind.
void write_file_atomically(const std::filesystem::path& path,
                           const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw Error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file_atomically(out_path, content);
  }
}

void warn_if_strong(double weakness) {
  if (weakness > 0.1) {
    std::cerr << "warning: weakness parameter beta*max|c|^2 = " << weakness
              << " exceeds 0.1; the pointer shift may not track the weak "
                 "value (correction terms are not negligible)\n";
  }
}

GridSpec grid_for(const Scenario& s, const std::string& grid_flag) {
  if (!grid_flag.empty()) {
    GridSpec g{};
    char colon1 = 0, colon2 = 0;
    std::istringstream in(grid_flag);
    if (!(in >> g.q_min >> colon1 >> g.q_max >> colon2 >> g.points) ||
        colon1 != ':' || colon2 != ':' || !(g.q_min < g.q_max) || g.points < 2)
      throw ValidationError("--grid expects min:max:points with min < max");
    return g;
  }
  if (s.grid) return *s.grid;
  if (s.is_matrix()) return default_grid(scenario_postselected(s));
  throw ValidationError(
      "expression-form scenario without a grid; pass --grid min:max:points");
}

std::string format_csv_row(std::initializer_list<double> values) {
  std::string row;
  char buf[64];
  bool first = true;
  for (double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) row += ',';
    row += buf;
    first = false;
  }
  row += '\n';
  return row;
}

// ---------------------------------------------------------------------
// run
// ---------------------------------------------------------------------

int cmd_run(const ScenarioArgs& args, bool with_timing) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = args.resolve();

  ordered_json report;
  report["scenario"] = s.name;
  bool agreement = false;

  const ExtractionResult extracted = extract_weak_value(scenario_wave(s));
  require_finite(extracted.weak_value, "extracted weak value");
  require_finite(*extracted.fd_value, "finite-difference weak value");
  if (s.is_matrix()) {
    const MatrixSystem& sys = s.matrix_system();
    const WeakValue direct = weak_value_direct(sys.pre, sys.post, sys.obs);
    const double delta = std::abs(direct.value - extracted.weak_value);
    agreement = delta <= 1e-8;

    report["direct"] = to_json(direct.value);
    report["extracted"] = to_json(extracted.weak_value);
    report["finite_difference"] = to_json(*extracted.fd_value);
    report["delta"] = {{"direct_vs_extracted", delta},
                       {"dual_vs_fd", *extracted.cross_check_delta}};
    report["overlap_abs"] = std::abs(direct.overlap);

    const double weakness = scenario_postselected(s).weakness();
    report["weakness_parameter"] = weakness;
    warn_if_strong(weakness);
  } else {
    agreement = extracted.consistent;
    report["direct"] = nullptr;
    report["extracted"] = to_json(extracted.weak_value);
    report["finite_difference"] = to_json(*extracted.fd_value);
    report["delta"] = {{"dual_vs_fd", *extracted.cross_check_delta}};
  }
  report["agreement"] = agreement;
  report["seed"] = s.seed;
  if (with_timing) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(dt).count();
  }

  std::cout << report.dump(2) << "\n";
  return agreement ? 0 : 2;
}

// ---------------------------------------------------------------------
// extract
// ---------------------------------------------------------------------

Complex parse_param_value(const std::string& text) {
  // "1.5" or "1.5,-0.25" (re,im).
  const std::size_t comma = text.find(',');
  char* end = nullptr;
  const double re = std::strtod(text.c_str(), &end);
  if (comma == std::string::npos) {
    if (end == text.c_str() || *end != '\0')
      throw ValidationError("--param value '" + text + "' is not a number");
    return Complex(re);
  }
  const std::string imag_text = text.substr(comma + 1);
  const double im = std::strtod(imag_text.c_str(), &end);
  return Complex(re, im);
}

int cmd_extract(const std::string& source, const std::string& pointer_var,
                const std::string& width_var,
                const std::vector<std::string>& params_raw,
                const std::vector<std::string>& params_deg_raw, bool check_fd,
                bool with_timing) {
  const auto t0 = std::chrono::steady_clock::now();

  std::map<std::string, Complex> params;
  const auto split = [](const std::string& kv) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ValidationError("--param expects name=value, got '" + kv + "'");
    return std::pair<std::string, std::string>(kv.substr(0, eq),
                                               kv.substr(eq + 1));
  };
  for (const std::string& kv : params_raw) {
    const auto [name, value] = split(kv);
    params[name] = parse_param_value(value);
  }
  for (const std::string& kv : params_deg_raw) {
    const auto [name, value] = split(kv);
    params[name] = parse_param_value(value) * (std::numbers::pi / 180.0);
  }

  ExtractOptions options;
  options.cross_check = check_fd;
  const ExtractionResult r = extract_from_expression(
      expr::parse(source), pointer_var, width_var, params, options);
  require_finite(r.weak_value, "weak value");
  if (r.fd_value) require_finite(*r.fd_value, "finite-difference weak value");

  ordered_json report;
  report["expression"] = source;
  report["pointer_var"] = pointer_var;
  report["width_var"] = width_var;
  report["weak_value"] = to_json(r.weak_value);
  report["method"] = "dual";
  if (r.fd_value) {
    report["finite_difference"] = to_json(*r.fd_value);
    report["cross_check_delta"] = *r.cross_check_delta;
    report["consistent"] = r.consistent;
  }
  if (with_timing) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(dt).count();
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// series
// ---------------------------------------------------------------------

std::pair<int, int> parse_order_range(const std::string& text) {
  int lo = 0, hi = 0;
  const std::size_t dots = text.find("..");
  if (dots == std::string::npos) {
    lo = hi = std::atoi(text.c_str());
  } else {
    lo = std::atoi(text.substr(0, dots).c_str());
    hi = std::atoi(text.substr(dots + 2).c_str());
  }
  if (lo < 1 || hi < lo || hi > 20)
    throw ValidationError("--orders expects LO..HI with 1 <= LO <= HI <= 20");
  return {lo, hi};
}

int cmd_series(const ScenarioArgs& args, const std::string& orders_flag,
               const std::string& grid_flag, std::optional<double> beta_flag,
               const std::string& out_path) {
  const Scenario s = args.resolve();
  if (!s.is_matrix())
    throw ValidationError(
        "series needs the spectral form; use a matrix-form scenario");
  const MatrixSystem& sys = s.matrix_system();
  const double beta = beta_flag.value_or(s.beta);
  if (beta < 0.0) throw ValidationError("--beta must be >= 0");

  const auto [lo, hi] = parse_order_range(orders_flag);

  Scenario gridded = s;
  gridded.beta = beta;
  const GridSpec grid =
      (beta == 0.0 && grid_flag.empty() && !s.grid)
          ? GridSpec{-6.0, 6.0, 2001}
          : grid_for(gridded, grid_flag);

  const PostselectedWave exact =
      synthesize_postselected(sys.pre, sys.post, sys.obs, beta);
  const GridSamples exact_samples = grid_evaluate(exact, grid);
  warn_if_strong(exact.weakness());

  const AvSeriesExpansion series(sys.pre, sys.post, sys.obs, hi);
  std::string csv = "order,l2_distance\n";
  std::vector<double> distances;
  for (int order = lo; order <= hi; ++order) {
    const GridSamples approx = grid_evaluate(
        [&series, beta, order](double q) {
          return series.evaluate(beta, q, order);
        },
        grid.q_min, grid.q_max, grid.points);
    const double d = normalized_l2_distance(exact_samples, approx);
    distances.push_back(d);
    csv += format_csv_row({static_cast<double>(order), d});
  }

  bool monotone = true;
  for (std::size_t i = 1; i < distances.size(); ++i)
    if (distances[i] > distances[i - 1] + 1e-12) monotone = false;

  emit(csv, out_path);
  std::cerr << "series: beta = " << beta << ", orders " << lo << ".." << hi
            << ", trend "
            << (monotone ? "non-increasing" : "not monotone") << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// ensemble
// ---------------------------------------------------------------------

std::vector<std::size_t> parse_study_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const double v = std::strtod(item.c_str(), nullptr);
    if (!(v >= 1.0))
      throw ValidationError("--study expects a comma-separated list of sizes");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw ValidationError("--study list is empty");
  return out;
}

int cmd_ensemble(const ScenarioArgs& args, std::optional<std::size_t> n_flag,
                 const std::string& study_flag,
                 const std::string& samples_csv_path, bool with_timing) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario s = args.resolve();
  if (!s.is_matrix())
    throw ValidationError(
        "ensemble sampling needs the spectral form; use a matrix-form "
        "scenario");
  if (!(s.beta > 0.0))
    throw ValidationError("ensemble sampling needs beta > 0");

  const MatrixSystem& sys = s.matrix_system();
  const PostselectedWave wave = scenario_postselected(s);
  warn_if_strong(wave.weakness());
  const Complex c_w = weak_value_direct(sys.pre, sys.post, sys.obs).value;
  const GridSpec grid = s.grid ? *s.grid : default_grid(wave);
  const PointerSampler sampler(wave, grid);

  ordered_json report;
  report["scenario"] = s.name;
  report["seed"] = s.seed;
  report["weakness_parameter"] = wave.weakness();
  report["re_weak_value"] = c_w.real();

  const std::size_t n = n_flag.value_or(s.ensemble_n);
  if (n < 1) throw ValidationError("ensemble size must be >= 1");
  const std::vector<double> samples = sampler.sample(n, s.seed);
  const SampleStats stats = compute_stats(samples);
  report["n"] = stats.n;
  report["mean"] = stats.mean;
  report["std_dev"] = stats.std_dev;
  report["std_error"] = stats.std_error;
  report["abs_mean_minus_re_cw"] = std::abs(stats.mean - c_w.real());
  report["within_3_std_error"] =
      std::abs(stats.mean - c_w.real()) <= 3.0 * stats.std_error;

  if (!study_flag.empty()) {
    const std::vector<std::size_t> sizes = parse_study_list(study_flag);
    std::vector<SampleStats> study;
    for (std::size_t size : sizes)
      study.push_back(compute_stats(sampler.sample(size, s.seed)));

    ordered_json rows = ordered_json::array();
    for (const SampleStats& st : study) {
      rows.push_back({{"n", st.n},
                      {"mean", st.mean},
                      {"std_dev", st.std_dev},
                      {"std_error", st.std_error}});
    }
    report["study"] = std::move(rows);

    ordered_json ratios = ordered_json::array();
    for (std::size_t i = 0; i < study.size(); ++i) {
      for (std::size_t j = 0; j < study.size(); ++j) {
        if (study[j].n == 4 * study[i].n && study[j].std_error > 0.0) {
          ratios.push_back({{"n", study[i].n},
                            {"n_4x", study[j].n},
                            {"std_error_ratio",
                             study[i].std_error / study[j].std_error}});
        }
      }
    }
    report["std_error_ratios"] = std::move(ratios);
  }

  if (!samples_csv_path.empty()) {
    std::string csv = "Q\n";
    for (double x : samples) csv += format_csv_row({x});
    write_file_atomically(samples_csv_path, csv);
  }

  if (with_timing) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(dt).count();
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------------
// profile
// ---------------------------------------------------------------------

int cmd_profile(const ScenarioArgs& args, const std::string& grid_flag,
                const std::string& out_path) {
  const Scenario s = args.resolve();
  const GridSpec grid = grid_for(s, grid_flag);
  const AnalyticWave wave = scenario_wave(s);
  const double beta = s.beta;
  const GridSamples samples = grid_evaluate(
      [&wave, beta](double q) { return wave.scalar(q, beta); }, grid.q_min,
      grid.q_max, grid.points);
  std::ostringstream csv;
  write_csv(samples, csv);
  emit(csv.str(), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "weakval: simulate pre/postselected Gaussian-pointer weak "
      "measurements and extract complex weak values from detector "
      "wavefunctions"};
  app.require_subcommand(1);
  bool with_timing = false;
  app.add_flag("--timing", with_timing,
               "Include wall-clock timing in JSON reports (off by default so "
               "repeated runs are byte-identical)");

  ScenarioArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Direct (definition) vs extracted (log-derivative) weak value");
  run_args.attach(run);

  std::string source, pointer_var = "Q", width_var = "beta";
  std::vector<std::string> params_raw, params_deg_raw;
  bool check_fd = false;
  CLI::App* extract = app.add_subcommand(
      "extract", "Extract the weak value from an expression wavefunction");
  extract->add_option("--expr", source, "Wavefunction Psi(pointer; width)")
      ->required();
  extract->add_option("--pointer", pointer_var, "Pointer variable name");
  extract->add_option("--width", width_var, "Width-parameter variable name");
  extract->add_option("--param", params_raw,
                      "Parameter binding name=value (value: re or re,im)");
  extract->add_option("--param-deg", params_deg_raw,
                      "Angle parameter in degrees, converted to radians");
  extract->add_flag("--check-fd", check_fd,
                    "Also run the finite-difference cross-check");

  ScenarioArgs series_args;
  std::string orders_flag = "1..8", series_grid, series_out;
  std::optional<double> series_beta;
  CLI::App* series = app.add_subcommand(
      "series", "Truncation study of the detector-wave expansion (CSV)");
  series_args.attach(series);
  series->add_option("--orders", orders_flag, "Order range LO..HI (default 1..8)");
  series->add_option("--grid", series_grid, "Grid as min:max:points");
  series->add_option("--beta", series_beta, "Override the scenario beta");
  series->add_option("--out", series_out, "Write CSV here instead of stdout");

  ScenarioArgs ensemble_args;
  std::optional<std::size_t> ensemble_n;
  std::string study_flag, samples_csv;
  CLI::App* ensemble = app.add_subcommand(
      "ensemble", "Monte Carlo pointer readout statistics (JSON)");
  ensemble_args.attach(ensemble);
  ensemble->add_option("--n", ensemble_n, "Number of samples");
  ensemble->add_option("--study", study_flag,
                       "Comma-separated sizes for the sqrt(N) study");
  ensemble->add_option("--samples-csv", samples_csv,
                       "Also dump raw samples to this CSV file");

  ScenarioArgs profile_args;
  std::string profile_grid, profile_out;
  CLI::App* profile = app.add_subcommand(
      "profile", "Detector wavefunction on a grid (CSV: Q,re,im,abs2)");
  profile_args.attach(profile);
  profile->add_option("--grid", profile_grid, "Grid as min:max:points");
  profile->add_option("--out", profile_out, "Write CSV here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_args, with_timing);
    if (extract->parsed())
      return cmd_extract(source, pointer_var, width_var, params_raw,
                         params_deg_raw, check_fd, with_timing);
    if (series->parsed())
      return cmd_series(series_args, orders_flag, series_grid, series_beta,
                        series_out);
    if (ensemble->parsed())
      return cmd_ensemble(ensemble_args, ensemble_n, study_flag, samples_csv,
                          with_timing);
    if (profile->parsed())
      return cmd_profile(profile_args, profile_grid, profile_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
