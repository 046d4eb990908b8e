#pragma once

// Particle in a one-dimensional box under the fourth-order Schrodinger
// equation
//
//   2 beta hbar^4 psi'''' - hbar^2 psi'' - 2 m E psi = 0,   0 < x < a.
//
// Substituting exp(r x) gives the characteristic quartic
//   2 beta hbar^4 r^4 - hbar^2 r^2 - 2 m E = 0
// with roots +-k_real (sinh/cosh pair) and +-i k_osc (sin/cos pair). The
// walls keep only the sine branch, so the eigenfunctions are the ordinary
// box sines and the quantization k_osc = n pi / a yields
//
//   E_n = n^2 pi^2 hbar^2 / (2 m a^2) + beta n^4 pi^4 hbar^4 / (m a^4).
//
// Bracket convention: the oscillatory wavenumber is
//   j = (1 / 2 hbar) sqrt((sqrt(1 + 16 m E beta) - 1) / beta),
// i.e. the "-1" sits inside the 1/beta factor. This is the only placement
// consistent with the quartic and with the spectrum above.

#include <span>
#include <vector>

#include "gupqm/units.hpp"

namespace gupqm::box {

struct EnergyLevel {
  int n = 0;
  double e0 = 0.0;
  double shift = 0.0;
  double e_total = 0.0;
};

struct CharRoots {
  double k_real = 0.0;
  double k_osc = 0.0;
};

struct WaveSample {
  std::vector<double> x_grid;
  std::vector<double> psi;
};

double energy_unperturbed(int n, const ModelParams& params);
double energy_shift(int n, const ModelParams& params);
EnergyLevel energy_level(int n, const ModelParams& params);

// Same closed forms with a continuous quantum number (n >= 0), used for
// spectrum sweeps where n is treated as a real parameter.
double energy_unperturbed_continuous(double n, const ModelParams& params);
double energy_shift_continuous(double n, const ModelParams& params);

// Solves j(E) = n pi / a for E by bisection. Requires beta > 0.
double energy_from_condition(int n, const ModelParams& params);

// Oscillatory wavenumber j(E). Requires E > 0 and beta > 0.
double wavenumber_j(double energy, const ModelParams& params);

// Inverse of wavenumber_j: E(j) = hbar^2 j^2 / 2m + beta hbar^4 j^4 / m.
double energy_from_wavenumber(double j, const ModelParams& params);

CharRoots characteristic_roots(double energy, const ModelParams& params);

// 2 beta hbar^4 r^4 - hbar^2 r^2 - 2 m E evaluated at r^2 = r_squared
// (pass -k^2 for the imaginary pair).
double quartic_residual(double r_squared, double energy, const ModelParams& params);

WaveSample eigenfunction(int n, const ModelParams& params, std::span<const double> x_grid);

}  // namespace gupqm::box
