#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "gupqm/error.hpp"
#include "gupqm/units.hpp"

using namespace gupqm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gupqm::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validate_params accepts the natural-units point", "[units]") {
  ModelParams p;
  p.beta = 0.5;
  CHECK(validate_params(p) == p);
  CHECK(validate_params(validate_params(p)) == validate_params(p));
}

TEST_CASE("validate_params rejects bad constants", "[units]") {
  ModelParams p;
  p.beta = 1.5;
  CHECK(code_of([&] { validate_params(p); }) == ErrorCode::BetaOutOfRange);

  p.units = UnitConvention::General;
  CHECK(validate_params(p).beta == 1.5);

  ModelParams massless;
  massless.mass = 0.0;
  try {
    validate_params(massless);
    FAIL("zero mass accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveConstant);
    CHECK(std::string(e.what()).find("mass") != std::string::npos);
  }

  ModelParams negative_beta;
  negative_beta.beta = -0.1;
  CHECK(code_of([&] { validate_params(negative_beta); }) == ErrorCode::NonPositiveConstant);

  ModelParams no_planck;
  no_planck.planck_length = 0.0;
  CHECK(code_of([&] { validate_params(no_planck); }) == ErrorCode::NonPositiveConstant);
}

TEST_CASE("gup_bound evaluates the deformed uncertainty relation", "[units]") {
  ModelParams p;
  p.alpha = 1.0;
  CHECK_THAT(gup_bound(1.0, p), WithinRel(2.0, 1e-15));
  CHECK_THAT(gup_bound(2.0, p), WithinRel(2.5, 1e-15));
  p.alpha = 0.0;
  CHECK(gup_bound(1.0, p) == 1.0);
  CHECK(code_of([&] { gup_bound(0.0, p); }) == ErrorCode::NonPositiveInput);
  CHECK(code_of([&] { gup_bound(-1.0, p); }) == ErrorCode::NonPositiveInput);
}

TEST_CASE("minimal_length is the minimum of gup_bound", "[units]") {
  ModelParams p;
  p.alpha = 1.0;
  CHECK(minimal_length(p) == 2.0);
  p.alpha = 0.0;
  CHECK(minimal_length(p) == 0.0);

  // Log-grid scan followed by golden-section refinement.
  for (double alpha : {0.01, 0.5, 4.0, 9.0}) {
    p.alpha = alpha;
    p.planck_length = 0.7;
    p.hbar = 1.3;
    p.units = UnitConvention::General;
    double best_log = 0.0, best = INFINITY;
    for (int i = 0; i <= 4000; ++i) {
      const double log_dp = -10.0 + 20.0 * i / 4000.0;
      const double v = gup_bound(std::exp(log_dp), p);
      if (v < best) best = v, best_log = log_dp;
    }
    double lo = best_log - 0.01, hi = best_log + 0.01;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < 120; ++i) {
      const double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
      if (gup_bound(std::exp(c), p) < gup_bound(std::exp(d), p)) {
        hi = d;
      } else {
        lo = c;
      }
    }
    const double found = gup_bound(std::exp(0.5 * (lo + hi)), p);
    CHECK_THAT(found, WithinRel(minimal_length(p), 1e-10));
  }
  p = ModelParams{};
  p.alpha = 4.0;
  CHECK_THAT(minimal_length(p), WithinRel(4.0, 1e-15));
}

TEST_CASE("gup_bound is convex in delta_p", "[units][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  ModelParams p;
  p.alpha = 2.0;
  for (int i = 0; i < 500; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double mid = gup_bound(0.5 * (a + b), p);
    const double chord = 0.5 * (gup_bound(a, p) + gup_bound(b, p));
    CHECK(mid <= chord * (1.0 + 1e-15));
  }
}
