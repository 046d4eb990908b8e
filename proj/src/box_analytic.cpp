#include "gupqm/box_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gupqm/error.hpp"

namespace gupqm::box {

namespace {

using std::numbers::pi;

void require_quantum_number(int n) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidQuantumNumber, "n = " + std::to_string(n) + " must be >= 1");
  }
}

void require_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw Error(ErrorCode::NonPositiveEnergy, "energy must be positive and finite");
  }
}

void require_deformed(const ModelParams& params) {
  if (!(params.beta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be positive for the deformed equation");
  }
}

// sqrt(1 + 16 m E beta), and sqrt(1 + 16 m E beta) - 1 without cancellation.
struct Discriminant {
  double root;
  double root_minus_one;
};

Discriminant discriminant(double energy, const ModelParams& params) {
  const double x = 16.0 * params.mass * energy * params.beta;
  const double root = std::sqrt(1.0 + x);
  return {root, x / (root + 1.0)};
}

}  // namespace

double energy_unperturbed_continuous(double n, const ModelParams& params) {
  const double k = n * pi * params.hbar / params.box_width;
  return k * k / (2.0 * params.mass);
}

double energy_shift_continuous(double n, const ModelParams& params) {
  const double k = n * pi * params.hbar / params.box_width;
  const double k2 = k * k;
  return params.beta * k2 * k2 / params.mass;
}

double energy_unperturbed(int n, const ModelParams& params) {
  require_quantum_number(n);
  return energy_unperturbed_continuous(n, params);
}

double energy_shift(int n, const ModelParams& params) {
  require_quantum_number(n);
  return energy_shift_continuous(n, params);
}

EnergyLevel energy_level(int n, const ModelParams& params) {
  EnergyLevel level;
  level.n = n;
  level.e0 = energy_unperturbed(n, params);
  level.shift = energy_shift(n, params);
  level.e_total = level.e0 + level.shift;
  return level;
}

double wavenumber_j(double energy, const ModelParams& params) {
  require_energy(energy);
  require_deformed(params);
  const auto disc = discriminant(energy, params);
  return std::sqrt(disc.root_minus_one / params.beta) / (2.0 * params.hbar);
}

double energy_from_wavenumber(double j, const ModelParams& params) {
  const double hj2 = params.hbar * params.hbar * j * j;
  return hj2 / (2.0 * params.mass) + params.beta * hj2 * hj2 / params.mass;
}

double energy_from_condition(int n, const ModelParams& params) {
  require_quantum_number(n);
  require_deformed(params);
  const double target = n * pi / params.box_width;
  const double e0 = energy_unperturbed(n, params);
  const double shift = energy_shift(n, params);

  // j(E) is strictly increasing, so the sign change is unique.
  double lo = e0;
  double hi = e0 + 2.0 * shift + 1.0;
  auto f = [&](double e) { return wavenumber_j(e, params) - target; };
  if (f(lo) > 0.0 || f(hi) < 0.0) {
    throw Error(ErrorCode::RootBracketFailure,
                "energy condition not bracketed for n = " + std::to_string(n));
  }
  constexpr double kRelTol = 1e-14;
  for (int iter = 0; iter < 200 && hi - lo > kRelTol * lo; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);

  const double closed = energy_from_wavenumber(target, params);
  if (std::abs(root - closed) > 1e-12 * closed) {
    throw Error(ErrorCode::RootBracketFailure,
                "bisection root disagrees with the closed-form inversion for n = " +
                    std::to_string(n));
  }
  return root;
}

CharRoots characteristic_roots(double energy, const ModelParams& params) {
  require_energy(energy);
  require_deformed(params);
  const auto disc = discriminant(energy, params);
  const double scale = 2.0 * params.hbar;
  return {std::sqrt((1.0 + disc.root) / params.beta) / scale,
          std::sqrt(disc.root_minus_one / params.beta) / scale};
}

double quartic_residual(double r_squared, double energy, const ModelParams& params) {
  const long double h2 = static_cast<long double>(params.hbar) * params.hbar;
  const long double r2 = r_squared;
  const long double value = r2 * (2.0L * params.beta * h2 * h2 * r2 - h2) -
                            2.0L * params.mass * static_cast<long double>(energy);
  return static_cast<double>(value);
}

WaveSample eigenfunction(int n, const ModelParams& params, std::span<const double> x_grid) {
  require_quantum_number(n);
  const double a = params.box_width;
  const double amplitude = std::sqrt(2.0 / a);
  WaveSample sample;
  sample.x_grid.assign(x_grid.begin(), x_grid.end());
  sample.psi.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= a)) {
      throw Error(ErrorCode::OutOfDomain, "x = " + std::to_string(x) + " outside [0, a]");
    }
    // The walls are pinned exactly rather than through sin(n pi) ~ 1e-16.
    sample.psi.push_back((x == 0.0 || x == a) ? 0.0 : amplitude * std::sin(n * pi * x / a));
  }
  return sample;
}

}  // namespace gupqm::box
