#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "pushpull/certificate.hpp"

namespace pushpull {

using Json = nlohmann::ordered_json;

struct ChartSpec {
  std::vector<double> lower, upper;
  std::vector<bool> periodic;
  Json metric;  // selector: identity | diagonal | conformal | angular_radial | expression
};

/// Declarative description of one certification scenario.  The JSON schema is
/// documented in the repository README; `load_scenario` validates everything
/// eagerly, including an orientation check by dense sampling.
struct ScenarioConfig {
  std::string name;
  ChartSpec source, target;
  Json map;                 // selector: identity | linear | translation | shear |
                            // rotation | sinusoidal | radial_stretch
  std::vector<Json> forms;  // one per degree: constant | expression | bump
  std::vector<double> exponents;  // infinity allowed, spelled "inf" in files
  int quadrature_order = 16;
  int sup_samples = 4096;
  double eps_sup = 1e-6;
};

Json to_json(const ScenarioConfig& config);
ScenarioConfig scenario_from_json(const Json& value);

/// Parse + full validation; errors carry the offending field or a witness
/// point for orientation violations.
ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);

/// Compiled pieces.
ChartDomain build_chart(const ChartSpec& spec);
Diffeomorphism build_map(const ScenarioConfig& config);
/// Instantiate the form of the given degree on the source or target chart.
FormField build_form(const ScenarioConfig& config, int degree, bool on_target);
bool has_form(const ScenarioConfig& config, int degree);

/// Everything load_scenario checks beyond JSON syntax.
void validate_scenario(const ScenarioConfig& config);

/// The built-in catalog: isometries, a volume-preserving shear, anisotropic
/// linear maps, sinusoidal perturbations in 2-D and 3-D, non-Euclidean
/// metrics, a bump-supported form, and a near-degenerate error-path entry.
std::vector<ScenarioConfig> builtin_catalog();

/// Names of catalog entries that certify cleanly (excludes the error-path
/// near-degenerate entry).
std::vector<std::string> certifiable_catalog_names();

}  // namespace pushpull
