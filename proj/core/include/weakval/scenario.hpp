#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <weakval/complex.hpp>
#include <weakval/extraction.hpp>
#include <weakval/pointer.hpp>
#include <weakval/quantum.hpp>

namespace weakval {

/// Finite-dimensional selection triple (preselection, postselection,
/// measured observable).
struct MatrixSystem {
  QuantumState pre;
  QuantumState post;
  Observable obs;

  bool operator==(const MatrixSystem&) const = default;
};

/// Detector wavefunction supplied as expression text. pointer_var names
/// the readout coordinate and width_var the Gaussian width parameter
/// (the optical example uses y; the generic pointer is Q).
struct ExpressionSystem {
  std::string source;
  std::string pointer_var;
  std::string width_var;
  std::map<std::string, Complex> params;

  bool operator==(const ExpressionSystem&) const = default;
};

/// One serializable weak-measurement run. Exactly one of the two system
/// forms supplies the wavefunction.
struct Scenario {
  std::string name;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::size_t ensemble_n = 10000;
  std::optional<GridSpec> grid;
  std::variant<MatrixSystem, ExpressionSystem> system;

  bool is_matrix() const {
    return std::holds_alternative<MatrixSystem>(system);
  }
  const MatrixSystem& matrix_system() const;
  const ExpressionSystem& expression_system() const;

  bool operator==(const Scenario&) const = default;
};

/// JSON schema (complex numbers are [re, im] pairs):
///
///   { "name": str, "beta": num, "seed": uint, "ensemble_n": uint,
///     "grid": {"min": num, "max": num, "points": int},   // optional
///     "system": { "dim": int, "pre": [[re,im],...], "post": [...],
///                 "observable": [[[re,im],...],...] }
///     | "expression": { "source": str, "pointer_var": str,
///                       "width_var": str, "params": {name: [re,im]} } }
///
/// Throws ParseError for broken JSON and ValidationError (naming the
/// violated invariant) for well-formed files that break the schema.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& s, const std::filesystem::path& path);

/// Bundled presets, compiled into the library so no files are needed:
/// "ritchie", "spin-imaginary", "eigenstate", "ensemble-demo".
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

/// The postselected spectral wave of a matrix-form scenario at its beta.
PostselectedWave scenario_postselected(const Scenario& s);

/// Wavefunction of either scenario form, evaluable over both algebras.
AnalyticWave scenario_wave(const Scenario& s);

// ----------------------------------------------------------------------
// Optical polarization analog: polarizer at alpha (preselect),
// birefringent plate separating the polarizations by a (weak coupling),
// polarizer at alpha_prime (postselect); the beam's transverse profile
// with waist beta^{-1/2} is the pointer.
// ----------------------------------------------------------------------

struct OpticalParams {
  double alpha;        // preselection polarizer angle, radians
  double alpha_prime;  // postselection polarizer angle, radians
  double a;            // ordinary/extraordinary ray separation, > 0
  double beta;         // inverse squared beam waist, >= 0
};

/// y |-> cos(alpha) cos(alpha') e^{-beta (y+a)^2/2}
///       + sin(alpha) sin(alpha') e^{-beta y^2/2}, unnormalized.
/// Throws OrthogonalSelection when cos(alpha - alpha') ~ 0.
AnalyticWave optical_wavefunction(const OpticalParams& p);

/// -a / (1 + tan(alpha) tan(alpha')). Throws OrthogonalSelection at the
/// pole and DomainError when either tangent is undefined.
Complex optical_weak_value_closed_form(const OpticalParams& p);

/// Two-level equivalent: pre = (cos a, sin a), post = (cos a', sin a'),
/// observable diag(-a, 0) (the x-polarized ray is the one shifted to
/// y = -a, fixing the sign convention).
MatrixSystem optical_equivalent_system(const OpticalParams& p);

/// The same wavefunction as expression text, pointer variable y, width
/// variable beta, parameters {alpha, alphap, a}.
std::string optical_expression_source();
std::map<std::string, Complex> optical_expression_params(const OpticalParams& p);

/// Parameters behind the two optical presets.
OpticalParams ritchie_params();        // alpha = pi/4, alpha' = 3pi/4 + 0.1
OpticalParams ensemble_demo_params();  // alpha = pi/4, alpha' = 3pi/4 + 0.3

}  // namespace weakval
