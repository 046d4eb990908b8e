#pragma once

// Eigenfunctions of the deformed momentum operator
//
//   P = (hbar / i) d/dx [1 + beta ((hbar / i) d/dx)^2].
//
// P u = p u is the third-order ODE  beta hbar^3 u''' - hbar u' + i p u = 0.
// Plane waves exp(i k x) solve it exactly when p = hbar k + beta hbar^3 k^3,
// a strictly increasing odd map, so every real p has one bounded branch. The
// remaining two characteristic roots grow or decay exponentially.

#include <array>
#include <complex>

#include "gupqm/units.hpp"

namespace gupqm::momentum {

struct DispersionSolution {
  double p = 0.0;
  double k_exact = 0.0;
  double k_pert = 0.0;  // (p - beta p^3) / hbar
  double jacobian = 0.0;  // dk/dp at k_exact
};

struct CubicRoots {
  std::array<std::complex<double>, 3> roots;  // roots[0] is the bounded branch i k
  std::array<double, 3> residuals;
};

// Amplitude and phase wavenumber of the first-order normalized eigenfunction.
struct MomentumEigenfunction {
  double p = 0.0;
  double amplitude = 0.0;  // sqrt((1 - 3 beta p^2) / (2 pi hbar))
  double k_pert = 0.0;

  std::complex<double> operator()(double x) const;
};

double dispersion_forward(double k, const ModelParams& params);

DispersionSolution dispersion_solve(double p, const ModelParams& params);

// Roots lambda of beta hbar^3 lambda^3 - hbar lambda + i p = 0. Requires beta > 0.
CubicRoots characteristic_cubic_roots(double p, const ModelParams& params);

std::complex<double> cubic_residual(std::complex<double> lambda, double p,
                                    const ModelParams& params);

// Throws OutsideFirstOrderDomain unless 1 - 3 beta p^2 > 0.
MomentumEigenfunction make_eigenfunction(double p, const ModelParams& params);

std::complex<double> eigenfunction_value(double p, double x, const ModelParams& params);

// Undeformed plane wave exp(i p x / hbar) / sqrt(2 pi hbar).
std::complex<double> plane_wave(double p, double x, const ModelParams& params);

// dk/dp = 1 / (hbar + 3 beta hbar^3 k^2) at the exact wavenumber.
double normalization_jacobian(double p, const ModelParams& params);

}  // namespace gupqm::momentum
