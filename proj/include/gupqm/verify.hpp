#pragma once

// Self-verification suite run by `gupqm verify`: every closed form is
// compared with an independent numerical route (root finding, the
// finite-difference eigensolver, finite differences, quadrature).

#include <string>
#include <vector>

#include "gupqm/units.hpp"

namespace gupqm::verify {

struct VerifyOptions {
  ModelParams params;  // hbar, mass and box_width are used; beta comes from each check
  bool quick = false;  // smaller grids for the finite-difference checks
  // Test hook: relative error injected into the closed-form spectrum before
  // the exactness check. Zero in normal use.
  double perturb_eq13 = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed deviation
  double tolerance = 0.0;  // threshold the deviation is held to
  std::string detail;
};

std::vector<CheckResult> run_checks(const VerifyOptions& options);

}  // namespace gupqm::verify
