#include "gupqm/momentum_states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gupqm/error.hpp"

namespace gupqm::momentum {

namespace {

using std::numbers::pi;
using namespace std::complex_literals;

// Positive root of hbar k + beta hbar^3 k^3 = target for target >= 0.
// Newton from the perturbative guess, falling back to bisection whenever a
// step leaves the bracket [0, target / hbar].
double solve_positive(double target, const ModelParams& params) {
  const double hbar = params.hbar;
  const double c3 = params.beta * hbar * hbar * hbar;
  if (target == 0.0) return 0.0;
  if (params.beta == 0.0) return target / hbar;

  auto f = [&](double k) { return hbar * k + c3 * k * k * k - target; };
  double lo = 0.0;
  double hi = target / hbar;
  double k = (target - params.beta * target * target * target) / hbar;
  if (!(k > lo && k < hi)) k = hi;

  constexpr double kTol = 1e-14;
  for (int iter = 0; iter < 200; ++iter) {
    const double fk = f(k);
    if (fk == 0.0) return k;
    (fk < 0.0 ? lo : hi) = k;
    const double step = fk / (hbar + 3.0 * c3 * k * k);
    double next = k - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - k) <= kTol * std::abs(next) || hi - lo <= kTol * hi) {
      k = next;
      break;
    }
    k = next;
  }
  // One last Newton step from the converged iterate.
  return k - f(k) / (hbar + 3.0 * c3 * k * k);
}

}  // namespace

double dispersion_forward(double k, const ModelParams& params) {
  const double hbar = params.hbar;
  return hbar * k + params.beta * hbar * hbar * hbar * k * k * k;
}

DispersionSolution dispersion_solve(double p, const ModelParams& params) {
  const double hbar = params.hbar;
  DispersionSolution s;
  s.p = p;
  const double k = solve_positive(std::abs(p), params);
  s.k_exact = p < 0.0 ? -k : k;
  s.k_pert = (p - params.beta * p * p * p) / hbar;
  s.jacobian = 1.0 / (hbar + 3.0 * params.beta * hbar * hbar * hbar * k * k);
  return s;
}

std::complex<double> cubic_residual(std::complex<double> lambda, double p,
                                    const ModelParams& params) {
  const double hbar = params.hbar;
  return params.beta * hbar * hbar * hbar * lambda * lambda * lambda - hbar * lambda + 1i * p;
}

CubicRoots characteristic_cubic_roots(double p, const ModelParams& params) {
  if (!(params.beta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "characteristic cubic needs beta > 0");
  }
  const double hbar = params.hbar;
  const double c3 = params.beta * hbar * hbar * hbar;

  // lambda = i kappa turns the equation into the real depressed cubic
  //   kappa^3 + P kappa + Q = 0,  P = 1 / (beta hbar^2) > 0,  Q = -p / c3,
  // which has a single real root (Cardano, one-real-root case).
  const double P = 1.0 / (params.beta * hbar * hbar);
  const double Q = -p / c3;
  const double disc = std::sqrt(0.25 * Q * Q + P * P * P / 27.0);
  // With u^3 + v^3 = -Q and u v = -P / 3, the root u + v equals
  // -Q / (u^2 - u v + v^2), which avoids the u + v cancellation at small beta.
  const double u = std::cbrt(-0.5 * Q + (Q <= 0.0 ? disc : -disc));
  const double v = -P / (3.0 * u);
  double kappa = -Q / (u * u + P / 3.0 + v * v);
  const double dk = (kappa * kappa * kappa + P * kappa + Q) / (3.0 * kappa * kappa + P);
  kappa -= dk;

  // kappa^3 + P kappa + Q = (kappa - k)(kappa^2 + k kappa + k^2 + P)
  const double im = std::sqrt(0.75 * kappa * kappa + P);
  const std::complex<double> kappa_plus(-0.5 * kappa, im);
  const std::complex<double> kappa_minus(-0.5 * kappa, -im);

  CubicRoots r;
  r.roots = {1i * kappa, 1i * kappa_plus, 1i * kappa_minus};
  for (std::size_t i = 0; i < 3; ++i) {
    r.residuals[i] = std::abs(cubic_residual(r.roots[i], p, params));
  }
  return r;
}

std::complex<double> MomentumEigenfunction::operator()(double x) const {
  return amplitude * std::exp(1i * (k_pert * x));
}

MomentumEigenfunction make_eigenfunction(double p, const ModelParams& params) {
  const double weight = 1.0 - 3.0 * params.beta * p * p;
  if (!(weight > 0.0)) {
    std::ostringstream msg;
    msg << "p = " << p << ": 1 - 3 beta p^2 = " << weight << " <= 0";
    throw Error(ErrorCode::OutsideFirstOrderDomain, msg.str());
  }
  MomentumEigenfunction u;
  u.p = p;
  u.amplitude = std::sqrt(weight / (2.0 * pi * params.hbar));
  u.k_pert = (p - params.beta * p * p * p) / params.hbar;
  return u;
}

std::complex<double> eigenfunction_value(double p, double x, const ModelParams& params) {
  return make_eigenfunction(p, params)(x);
}

std::complex<double> plane_wave(double p, double x, const ModelParams& params) {
  return std::exp(1i * (p * x / params.hbar)) / std::sqrt(2.0 * pi * params.hbar);
}

double normalization_jacobian(double p, const ModelParams& params) {
  return dispersion_solve(p, params).jacobian;
}

}  // namespace gupqm::momentum
