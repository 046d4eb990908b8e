#pragma once

#include <string_view>

namespace gupqm {

enum class UnitConvention {
  // hbar = mass = box_width = 1, beta is a pure number in [0, 1].
  Natural,
  // beta carries dimension momentum^-2 and is only required to be >= 0.
  General,
};

std::string_view to_string(UnitConvention units);

// Physical constants plus the deformation parameters. The defaults are the
// natural-units point with no deformation.
struct ModelParams {
  double hbar = 1.0;
  double mass = 1.0;
  double box_width = 1.0;
  // Coefficient of p^2 in [x, p] = i hbar (1 + beta p^2).
  double beta = 0.0;
  // Dimensionless coefficient of the gravitational term in the uncertainty bound.
  double alpha = 0.0;
  double planck_length = 1.0;
  UnitConvention units = UnitConvention::Natural;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// Returns `raw` unchanged when every invariant holds; throws Error otherwise.
// NonPositiveConstant names the offending field. BetaOutOfRange is only raised
// under the natural-units convention.
ModelParams validate_params(const ModelParams& raw);

ModelParams with_beta(ModelParams params, double beta);

// Right-hand side of the generalized uncertainty relation:
//   hbar / dp + alpha * l_P^2 * dp / hbar
double gup_bound(double delta_p, const ModelParams& params);

// 2 l_P sqrt(alpha), the minimum of gup_bound over dp > 0.
double minimal_length(const ModelParams& params);

}  // namespace gupqm
