#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "mtclm/types.hpp"

namespace mtclm {

// Generating mechanisms for the four-level (K = 3) benchmark designs.
// parallel draws one latent regression and cuts it at the 50/66.7/83.3
// empirical percentiles (a true proportional-odds model); the other four
// draw separate screening/severity latents, mark Y = 0 below the empirical
// median of the first, and split the remainder into empirical thirds of the
// second.
enum class Scenario { parallel, identical, almost_inverse, similar, almost_independent };

enum class CoefMagnitude { uniform_075_125, fixed };

struct ScenarioSpec {
  Scenario scenario = Scenario::identical;
  int n = 300;
  int p = 75;
  double rho = 0.0;  // Toeplitz correlation rho^|i-j|
  std::uint64_t seed = 1;
  CoefMagnitude coef_magnitude = CoefMagnitude::uniform_075_125;
  double fixed_magnitude = 1.0;
  bool retain_latent = false;
};

void validate_spec(const ScenarioSpec& spec);

// Sign patterns (+1/-1/0, length p) of the latent regressions, exactly as
// the designs define them; first entry screening, second severity.
std::pair<VectorXd, VectorXd> scenario_support(Scenario scenario, int p);

struct GroundTruth {
  // Model-scale coefficients (negated latent coefficients): the quantities
  // the estimators target under logit P(Y=0|x) = alpha + x'beta and
  // logit P(1<=Y<=k|Y>=1,x) = zeta_k + x'gamma.
  VectorXd beta_true;
  VectorXd gamma_true;
  double screen_threshold = 0.0;   // realized cut on the screening latent
  VectorXd severity_thresholds;    // realized cuts on the severity latent
  VectorXd latent_screen;          // retained only when spec.retain_latent
  VectorXd latent_severity;
};

std::pair<OrdinalDataset, GroundTruth> generate(const ScenarioSpec& spec);

std::string to_string(Scenario scenario);
Scenario scenario_from_string(const std::string& name);
CoefMagnitude coef_magnitude_from_string(const std::string& name);

}  // namespace mtclm
