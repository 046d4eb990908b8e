#include "gupqm/units.hpp"

#include <cmath>
#include <string>

#include "gupqm/error.hpp"

namespace gupqm {

std::string_view to_string(UnitConvention units) {
  return units == UnitConvention::Natural ? "natural" : "si-like";
}

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveConstant,
                std::string(field) + " must be a positive finite number");
  }
}

void require_non_negative(double value, const char* field) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveConstant,
                std::string(field) + " must be a non-negative finite number");
  }
}

}  // namespace

ModelParams validate_params(const ModelParams& raw) {
  require_positive(raw.hbar, "hbar");
  require_positive(raw.mass, "mass");
  require_positive(raw.box_width, "box_width");
  require_positive(raw.planck_length, "planck_length");
  require_non_negative(raw.beta, "beta");
  require_non_negative(raw.alpha, "alpha");
  if (raw.units == UnitConvention::Natural && raw.beta > 1.0) {
    throw Error(ErrorCode::BetaOutOfRange,
                "beta = " + std::to_string(raw.beta) + " outside [0, 1] in natural units");
  }
  return raw;
}

ModelParams with_beta(ModelParams params, double beta) {
  params.beta = beta;
  return validate_params(params);
}

double gup_bound(double delta_p, const ModelParams& params) {
  if (!(delta_p > 0.0)) {
    throw Error(ErrorCode::NonPositiveInput, "delta_p must be positive");
  }
  const double lp2 = params.planck_length * params.planck_length;
  return params.hbar / delta_p + params.alpha * lp2 * delta_p / params.hbar;
}

double minimal_length(const ModelParams& params) {
  return 2.0 * params.planck_length * std::sqrt(params.alpha);
}

}  // namespace gupqm
