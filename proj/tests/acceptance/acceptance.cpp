// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: gupqm_acceptance <path-to-gupqm-cli>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gupqm/box_analytic.hpp"
#include "gupqm/fd_eigensolver.hpp"
#include "gupqm/momentum_states.hpp"
#include "gupqm/units.hpp"

using namespace gupqm;
using std::numbers::pi;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

double rel(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

ModelParams natural(double beta) {
  ModelParams p;
  p.beta = beta;
  return validate_params(p);
}

Outcome spectrum_exactness() {
  double worst = 0.0;
  for (double beta : {1e-6, 0.01, 0.25, 0.5, 1.0}) {
    const auto p = natural(beta);
    for (int n = 1; n <= 50; ++n) {
      const double closed = box::energy_unperturbed(n, p) + box::energy_shift(n, p);
      worst = std::max(worst, rel(box::energy_from_condition(n, p), closed));
    }
  }
  return {worst <= 1e-12, "worst rel " + sci(worst) + " (tol 1e-12)"};
}

Outcome fd_oracle() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;  // in units of the per-level tolerance
  double slope_lo = 1e300, slope_hi = -1e300;
  const std::array<int, 4> grids{250, 500, 1000, 2000};
  for (double beta : {0.0, 0.01, 0.25, 1.0}) {
    const auto p = natural(beta);
    const auto values = fd::lowest_eigenvalues(fd::make_problem(p, 1999), 3);
    for (int n = 1; n <= 3; ++n) {
      const double tol = n == 1 ? 1e-4 : 1e-3;
      const double exact = box::energy_unperturbed(n, p) + box::energy_shift(n, p);
      worst = std::max(worst, rel(values[static_cast<std::size_t>(n - 1)], exact) / tol);
    }
    const double slope = fd::convergence_study(p, grids, 1).slope;
    slope_lo = std::min(slope_lo, slope);
    slope_hi = std::max(slope_hi, slope);
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = worst <= 1.0 && slope_lo >= 1.8 && slope_hi <= 2.2 && seconds <= 30.0;
  return {ok, "worst gap/tol " + sci(worst) + ", slopes [" + sci(slope_lo) + ", " +
                  sci(slope_hi) + "], " + sci(seconds) + " s"};
}

Outcome discrete_closed_form() {
  double worst = 0.0;
  for (double beta : {0.0, 0.01, 0.25, 1.0}) {
    const auto p = natural(beta);
    const int grid_points = 1999;
    const double h = p.box_width / (grid_points + 1);
    const auto values = fd::lowest_eigenvalues(fd::make_problem(p, grid_points), 3);
    for (int n = 1; n <= 3; ++n) {
      // Independent of the library formula: straight from 2 - 2 cos.
      const long double mu =
          (2.0L - 2.0L * std::cos(static_cast<long double>(n) * std::numbers::pi_v<long double> * h /
                                  p.box_width)) /
          (static_cast<long double>(h) * h);
      const long double h2 = static_cast<long double>(p.hbar) * p.hbar;
      const long double closed = (h2 * mu + 2.0L * p.beta * h2 * h2 * mu * mu) / (2.0L * p.mass);
      worst = std::max(worst, rel(values[static_cast<std::size_t>(n - 1)], static_cast<double>(closed)));
    }
  }
  return {worst <= 1e-10, "worst rel " + sci(worst) + " (tol 1e-10)"};
}

Outcome characteristic_roots() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double energy = 1e3 * (1.0 - unit(rng));  // (0, 1e3]
    const double beta = 1.0 - unit(rng);            // (0, 1]
    const auto p = natural(beta);
    const auto r = box::characteristic_roots(energy, p);
    // +-k_real are real roots; +-i k_osc have r^2 = -k_osc^2.
    for (double r2 : {r.k_real * r.k_real, -r.k_osc * r.k_osc}) {
      const double scale = 2.0 * beta * r2 * r2 + std::abs(r2) + 2.0 * energy;
      worst = std::max(worst, std::abs(box::quartic_residual(r2, energy, p)) / scale);
    }
  }
  const auto hand = box::characteristic_roots(1.0, natural(0.5));
  const double hand_err = std::max(std::abs(hand.k_real - std::sqrt(2.0)), std::abs(hand.k_osc - 1.0));
  return {worst <= 1e-10 && hand_err <= 1e-12,
          "worst rel residual " + sci(worst) + ", hand case error " + sci(hand_err)};
}

Outcome dispersion_round_trip() {
  std::mt19937_64 rng(977);
  std::uniform_real_distribution<double> kdist(-10.0, 10.0), bdist(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k = kdist(rng);
    const auto p = natural(bdist(rng));
    const double back = momentum::dispersion_solve(momentum::dispersion_forward(k, p), p).k_exact;
    worst = std::max(worst, std::abs(back - k) / std::max(1.0, std::abs(k)));
  }
  std::vector<double> lx, ly;
  for (double beta : {1e-4, 1e-3, 1e-2}) {
    const auto s = momentum::dispersion_solve(1.0, natural(beta));
    lx.push_back(std::log(beta));
    ly.push_back(std::log(std::abs(s.k_exact - s.k_pert)));
  }
  const double mx = (lx[0] + lx[1] + lx[2]) / 3.0, my = (ly[0] + ly[1] + ly[2]) / 3.0;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  return {worst <= 1e-12 && std::abs(slope - 2.0) <= 0.05,
          "worst round-trip " + sci(worst) + ", gap slope " + sci(slope)};
}

Outcome momentum_eigenfunction() {
  using namespace std::complex_literals;
  const auto p = natural(1e-4);
  const double pm = 1.0;
  const double step = 1e-4;
  const double dkdp = (momentum::dispersion_solve(pm + step, p).k_exact -
                       momentum::dispersion_solve(pm - step, p).k_exact) /
                      (2.0 * step);
  const double first_order = (1.0 - 3.0 * p.beta * pm * pm) / p.hbar;
  const double jac_gap = rel(first_order, dkdp);
  const double amp = momentum::make_eigenfunction(pm, p).amplitude;
  const double amp_gap = rel(amp * amp, first_order / (2.0 * pi));

  const auto u = momentum::make_eigenfunction(pm, p);
  const double h = 1e-3;
  double residual = 0.0;
  for (int j = 2; j <= 9998; ++j) {
    const double x = j * h;
    const auto d1 = (u(x + h) - u(x - h)) / (2.0 * h);
    const auto d3 = (u(x + 2 * h) - 2.0 * u(x + h) + 2.0 * u(x - h) - u(x - 2 * h)) / (2.0 * h * h * h);
    // (hbar/i) u' + i beta hbar^3 u''' = p u
    const auto lhs = -1i * p.hbar * d1 + 1i * p.beta * p.hbar * p.hbar * p.hbar * d3;
    residual = std::max(residual, std::abs(lhs - pm * u(x)));
  }
  return {jac_gap <= 1e-6 && amp_gap <= 1e-15 && residual <= 1e-6,
          "jacobian gap " + sci(jac_gap) + ", ODE residual " + sci(residual)};
}

Outcome sweep_reproduction(const std::string& cli) {
  const auto run = [&](std::string& out) {
    const std::string cmd = "\"" + cli + "\" sweep";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return -1;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    return pclose(pipe);
  };
  std::string first, second;
  if (run(first) != 0 || run(second) != 0) return {false, "CLI sweep did not exit 0"};
  if (first != second) return {false, "output differs between runs"};

  std::istringstream in(first);
  std::string line;
  std::getline(in, line);
  if (line != "n,beta,e0,shift,e_total") return {false, "unexpected header: " + line};
  std::vector<std::array<double, 5>> rows;
  while (std::getline(in, line)) {
    std::array<double, 5> r{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &r[0], &r[1], &r[2], &r[3], &r[4]) != 5)
      return {false, "unparsable row: " + line};
    rows.push_back(r);
  }
  if (rows.size() != 5 * 101) return {false, "expected 505 rows, got " + std::to_string(rows.size())};
  double flat_err = 0.0;
  bool ordered = true;
  for (std::size_t i = 0; i < 101; ++i) {
    const double n = rows[i][0];
    // %.12e keeps 13 significant digits, so compare at that resolution.
    flat_err = std::max(flat_err, std::abs(rows[i][4] - n * n * pi * pi / 2.0) / std::max(1.0, rows[i][4]));
    for (std::size_t c = 1; c < 5; ++c) {
      const auto& lo = rows[(c - 1) * 101 + i];
      const auto& hi = rows[c * 101 + i];
      if (lo[0] != hi[0] || !(lo[1] < hi[1])) ordered = false;
      if (n > 0.0 && !(lo[4] < hi[4])) ordered = false;
    }
  }
  return {ordered && flat_err <= 1e-12,
          "5 curves x 101 points, byte-identical, beta=0 error " + sci(flat_err) +
              (ordered ? ", ordered in beta" : ", ORDERING VIOLATED")};
}

Outcome normalization() {
  const auto p = natural(0.0);
  constexpr int kPoints = 10000;
  std::vector<double> xs(kPoints);
  for (int i = 0; i < kPoints; ++i) xs[static_cast<std::size_t>(i)] = p.box_width * i / (kPoints - 1);
  const double h = p.box_width / (kPoints - 1);
  double worst = 0.0;
  bool walls = true;
  for (int n = 1; n <= 5; ++n) {
    const auto w = box::eigenfunction(n, p, xs);
    double sum = 0.0;
    for (std::size_t i = 0; i < w.psi.size(); ++i) {
      const double weight = (i == 0 || i + 1 == w.psi.size()) ? 0.5 : 1.0;
      sum += weight * w.psi[i] * w.psi[i];
    }
    worst = std::max(worst, std::abs(sum * h - 1.0));
    walls = walls && w.psi.front() == 0.0 && w.psi.back() == 0.0;
  }
  return {worst <= 1e-8 && walls, "worst |norm - 1| " + sci(worst) + (walls ? ", walls exactly 0" : ", WALLS NONZERO")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <gupqm-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 spectrum exactness", spectrum_exactness},
      {"2 finite-difference oracle and convergence", fd_oracle},
      {"3 discrete closed-form cross-check", discrete_closed_form},
      {"4 characteristic-root residuals", characteristic_roots},
      {"5 dispersion round-trip and gap scaling", dispersion_round_trip},
      {"6 momentum eigenfunction and jacobian", momentum_eigenfunction},
      {"7 sweep reproduction", [&] { return sweep_reproduction(cli); }},
      {"8 box eigenfunction normalization", normalization},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s  %-44s %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %d of %zu criteria passed\n", failures == 0 ? "ACCEPTED" : "REJECTED",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
