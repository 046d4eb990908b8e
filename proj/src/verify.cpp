#include "gupqm/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "gupqm/box_analytic.hpp"
#include "gupqm/fd_eigensolver.hpp"
#include "gupqm/momentum_states.hpp"

namespace gupqm::verify {

namespace {

using std::numbers::pi;

// Uniform draws from raw engine output so the sample sequence does not depend
// on the standard library's distribution implementation.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  // (0, hi]
  double positive(double hi) { return hi * (1.0 - uniform(0.0, 1.0)); }

 private:
  std::mt19937_64 engine_;
};

CheckResult make(std::string name, double worst, double tolerance, std::string detail = {}) {
  return {std::move(name), worst <= tolerance, worst, tolerance, std::move(detail)};
}

std::string sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

double rel(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

double golden_minimum(auto f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

CheckResult check_minimal_length(const ModelParams& base) {
  double worst = 0.0;
  for (double alpha : {0.25, 1.0, 4.0}) {
    ModelParams p = base;
    p.alpha = alpha;
    auto bound = [&](double log_dp) { return gup_bound(std::exp(log_dp), p); };
    const double found = golden_minimum(bound, std::log(1e-6), std::log(1e6), 200);
    worst = std::max(worst, rel(found, minimal_length(p)));
  }
  return make("gup_minimal_length", worst, 1e-10, "golden-section minimum of the bound");
}

CheckResult check_quartic_roots(const ModelParams& base) {
  Sampler rng(11);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double energy = rng.positive(1e3);
    const auto p = with_beta(base, rng.positive(1.0));
    const auto roots = box::characteristic_roots(energy, p);
    const double scale = 2.0 * p.mass * energy;
    worst = std::max(worst, std::abs(box::quartic_residual(roots.k_real * roots.k_real, energy, p)) / scale);
    worst = std::max(worst, std::abs(box::quartic_residual(-roots.k_osc * roots.k_osc, energy, p)) / scale);
  }
  ModelParams hand;
  hand.beta = 0.5;
  const auto r = box::characteristic_roots(1.0, hand);
  const double hand_err = std::max(std::abs(r.k_real - std::sqrt(2.0)), std::abs(r.k_osc - 1.0));
  auto result = make("quartic_root_residuals", worst, 1e-10, "100 random (E, beta)");
  if (hand_err > 1e-12) {
    result.passed = false;
    result.detail += "; hand case E=1 beta=0.5 off by " + sci(hand_err);
  }
  return result;
}

CheckResult check_spectrum_exactness(const ModelParams& base, double perturb) {
  double worst = 0.0;
  for (double beta : {1e-6, 0.01, 0.25, 0.5, 1.0}) {
    const auto p = with_beta(base, beta);
    for (int n = 1; n <= 50; ++n) {
      const double closed = box::energy_level(n, p).e_total * (1.0 + perturb);
      worst = std::max(worst, rel(box::energy_from_condition(n, p), closed));
    }
  }
  return make("spectrum_exactness", worst, 1e-12, "root of the energy condition vs closed form");
}

struct FdChecks {
  CheckResult oracle;
  CheckResult discrete;
  CheckResult shape;
};

FdChecks check_fd(const ModelParams& base, int grid_points) {
  double worst_oracle = 0.0;   // scaled by the per-level tolerance
  double worst_discrete = 0.0;
  double worst_shape = 0.0;
  std::ostringstream detail;
  for (double beta : {0.0, 0.01, 0.25, 1.0}) {
    const auto params = with_beta(base, beta);
    const auto problem = fd::make_problem(params, grid_points);
    const auto spectrum = fd::solve_lowest(problem, 3);
    for (int n = 1; n <= 3; ++n) {
      const double lambda = spectrum.eigenvalues[static_cast<std::size_t>(n - 1)];
      const double tol = n == 1 ? 1e-4 : 1e-3;
      worst_oracle = std::max(worst_oracle, rel(lambda, box::energy_level(n, params).e_total) / tol);
      worst_discrete = std::max(worst_discrete, rel(lambda, fd::discrete_eigenvalue(problem, n)));
    }
    const double h = fd::grid_spacing(problem);
    const double a = params.box_width;
    const auto& v = spectrum.eigenvectors.front();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double x = static_cast<double>(i + 1) * h;
      worst_shape = std::max(worst_shape, std::abs(v[i] - std::sqrt(2.0 / a) * std::sin(pi * x / a)));
    }
  }
  detail << "N = " << grid_points;
  return {make("fd_oracle_agreement", worst_oracle, 1.0,
               detail.str() + ", error / tolerance (1e-4 for n=1, 1e-3 otherwise)"),
          make("fd_discrete_closed_form", worst_discrete, fd::kSolverTolerance, detail.str()),
          make("fd_eigenvector_shape", worst_shape, 1e-8, detail.str())};
}

CheckResult check_fd_convergence(const ModelParams& base, bool quick) {
  const std::array<int, 4> grids = quick ? std::array<int, 4>{50, 100, 200, 400}
                                         : std::array<int, 4>{250, 500, 1000, 2000};
  double worst = 0.0;
  std::ostringstream detail;
  detail << "slopes";
  for (double beta : {0.0, 0.01, 0.25, 1.0}) {
    const auto study = fd::convergence_study(with_beta(base, beta), grids, 1);
    worst = std::max(worst, std::abs(study.slope - 2.0));
    detail << ' ' << study.slope;
  }
  return make("fd_convergence_order", worst, 0.2, detail.str());
}

CheckResult check_dispersion_round_trip(const ModelParams& base) {
  Sampler rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k = rng.uniform(-10.0, 10.0);
    const auto p = with_beta(base, rng.uniform(0.0, 1.0));
    const auto s = momentum::dispersion_solve(momentum::dispersion_forward(k, p), p);
    worst = std::max(worst, std::abs(s.k_exact - k));
  }
  return make("dispersion_round_trip", worst, 1e-12, "1000 random (k, beta)");
}

CheckResult check_perturbative_gap(const ModelParams& base) {
  const std::array<double, 3> betas{1e-4, 1e-3, 1e-2};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double beta : betas) {
    const auto s = momentum::dispersion_solve(1.0, with_beta(base, beta));
    const double x = std::log(beta);
    const double y = std::log(std::abs(s.k_exact - s.k_pert));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  return make("perturbative_gap_order", std::abs(slope - 2.0), 0.05,
              "slope " + sci(slope));
}

CheckResult check_cubic_roots(const ModelParams& base) {
  Sampler rng(37);
  double worst = 0.0;
  double worst_branch = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double pm = rng.uniform(-10.0, 10.0);
    const auto p = with_beta(base, rng.positive(1.0));
    const auto roots = momentum::characteristic_cubic_roots(pm, p);
    const double scale = pm == 0.0 ? 1e-12 : 1e-10 * std::abs(pm);
    for (double r : roots.residuals) worst = std::max(worst, r / scale);
    const double k = momentum::dispersion_solve(pm, p).k_exact;
    worst_branch = std::max(worst_branch,
                            std::abs(roots.roots[0] - std::complex<double>(0.0, k)) / std::max(1.0, std::abs(k)));
  }
  auto result = make("cubic_root_residuals", worst, 1.0, "residual / bound over 100 random (p, beta)");
  if (worst_branch > 1e-10) {
    result.passed = false;
    result.detail += "; bounded root misses i k_exact by " + sci(worst_branch);
  }
  return result;
}

CheckResult check_jacobian(const ModelParams& base) {
  Sampler rng(41);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double pm = rng.uniform(-5.0, 5.0);
    const auto p = with_beta(base, rng.uniform(0.0, 1.0));
    const double step = 1e-6 * std::max(1.0, std::abs(pm));
    const double cd = (momentum::dispersion_solve(pm + step, p).k_exact -
                       momentum::dispersion_solve(pm - step, p).k_exact) /
                      (2.0 * step);
    worst = std::max(worst, rel(momentum::normalization_jacobian(pm, p), cd));
  }
  // First-order amplitude check: (1 - 3 beta p^2) / hbar against dk/dp.
  const auto p = with_beta(base, 1e-4);
  const double step = 1e-6;
  const double cd = (momentum::dispersion_solve(1.0 + step, p).k_exact -
                     momentum::dispersion_solve(1.0 - step, p).k_exact) /
                    (2.0 * step);
  const double first_order = (1.0 - 3.0 * p.beta) / p.hbar;
  const double gap = rel(first_order, cd);
  auto result = make("jacobian_finite_difference", worst, 1e-8,
                     "first-order gap at beta=1e-4: " + sci(gap));
  if (gap > 1e-6) result.passed = false;
  return result;
}

CheckResult check_ode_residual(const ModelParams& base) {
  using namespace std::complex_literals;
  const auto p = with_beta(base, 1e-4);
  const double pm = 1.0;
  const double h = 1e-3;
  const auto u = momentum::make_eigenfunction(pm, p);
  const double c3 = p.beta * p.hbar * p.hbar * p.hbar;
  double worst = 0.0;
  for (int j = 2; j <= 10000 - 2; ++j) {
    const double x = j * h;
    const auto um2 = u(x - 2 * h), um1 = u(x - h), up1 = u(x + h), up2 = u(x + 2 * h);
    const auto d1 = (up1 - um1) / (2.0 * h);
    const auto d3 = (up2 - 2.0 * up1 + 2.0 * um1 - um2) / (2.0 * h * h * h);
    worst = std::max(worst, std::abs(c3 * d3 - p.hbar * d1 + 1i * pm * u(x)));
  }
  return make("eq22_ode_residual", worst, 1e-6, "max over x in [0, 10], h = 1e-3");
}

CheckResult check_normalization(const ModelParams& base) {
  const double a = base.box_width;
  constexpr int kPoints = 10000;
  std::vector<double> xs(kPoints);
  for (int i = 0; i < kPoints; ++i) xs[static_cast<std::size_t>(i)] = a * i / (kPoints - 1);
  xs.back() = a;
  double worst = 0.0;
  bool walls_zero = true;
  for (int n = 1; n <= 5; ++n) {
    const auto w = box::eigenfunction(n, base, xs);
    const double h = a / (kPoints - 1);
    double integral = 0.0;
    for (std::size_t i = 0; i < w.psi.size(); ++i) {
      const double weight = (i == 0 || i + 1 == w.psi.size()) ? 0.5 : 1.0;
      integral += weight * w.psi[i] * w.psi[i];
    }
    worst = std::max(worst, std::abs(integral * h - 1.0));
    walls_zero = walls_zero && w.psi.front() == 0.0 && w.psi.back() == 0.0;
  }
  auto result = make("eigenfunction_normalization", worst, 1e-8, "trapezoid, 1e4 points, n = 1..5");
  if (!walls_zero) {
    result.passed = false;
    result.detail += "; wall values not exactly zero";
  }
  return result;
}

}  // namespace

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  ModelParams base = options.params;
  base.beta = 0.0;
  base = validate_params(base);

  std::vector<CheckResult> results;
  results.push_back(check_minimal_length(base));
  results.push_back(check_quartic_roots(base));
  results.push_back(check_spectrum_exactness(base, options.perturb_eq13));
  auto fd_checks = check_fd(base, options.quick ? 399 : 1999);
  results.push_back(std::move(fd_checks.oracle));
  results.push_back(std::move(fd_checks.discrete));
  results.push_back(std::move(fd_checks.shape));
  results.push_back(check_fd_convergence(base, options.quick));
  results.push_back(check_dispersion_round_trip(base));
  results.push_back(check_perturbative_gap(base));
  results.push_back(check_cubic_roots(base));
  results.push_back(check_jacobian(base));
  results.push_back(check_ode_residual(base));
  results.push_back(check_normalization(base));
  return results;
}

}  // namespace gupqm::verify
