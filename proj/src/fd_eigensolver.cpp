#include "gupqm/fd_eigensolver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "gupqm/box_analytic.hpp"
#include "gupqm/error.hpp"

namespace gupqm::fd {

using linalg::wide_real;

FdProblem make_problem(const ModelParams& params, int grid_points) {
  if (grid_points < kMinGridPoints) {
    throw Error(ErrorCode::GridTooSmall, "N = " + std::to_string(grid_points) + " < " +
                                             std::to_string(kMinGridPoints));
  }
  return FdProblem{validate_params(params), grid_points, BoundaryCondition::Pinned};
}

double grid_spacing(const FdProblem& problem) {
  return problem.params.box_width / (problem.grid_points + 1);
}

linalg::SymBandMatrix assemble_operator(const FdProblem& problem) {
  if (problem.grid_points < kMinGridPoints) {
    throw Error(ErrorCode::GridTooSmall, "N = " + std::to_string(problem.grid_points));
  }
  const auto n = static_cast<std::size_t>(problem.grid_points);
  const auto& p = problem.params;

  const wide_real h = wide_real(p.box_width) / wide_real(problem.grid_points + 1);
  const wide_real inv_h2 = 1 / (h * h);
  const wide_real hbar2 = wide_real(p.hbar) * p.hbar;
  const wide_real c2 = hbar2 / (2 * wide_real(p.mass));
  const wide_real c4 = wide_real(p.beta) * hbar2 * hbar2 / wide_real(p.mass);

  // A = -D2 as a band matrix, then A^2 by explicit multiplication so the
  // corner rows come out of the product rather than a hand-written stencil.
  linalg::SymBandMatrix a(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    a.lower(i, 0) = 2 * inv_h2;
    if (i > 0) a.lower(i, 1) = -inv_h2;
  }

  linalg::SymBandMatrix h_op(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d <= std::min<std::size_t>(2, i); ++d) {
      const std::size_t j = i - d;
      wide_real a2 = 0;
      const std::size_t k_lo = i > 0 ? i - 1 : 0;
      const std::size_t k_hi = std::min(n - 1, j + 1);
      for (std::size_t k = k_lo; k <= k_hi; ++k) a2 += a(i, k) * a(k, j);
      h_op.lower(i, d) = c2 * a(i, j) + c4 * a2;
    }
  }
  return h_op;
}

std::vector<double> lowest_eigenvalues(const FdProblem& problem, int count) {
  if (count < 1 || count > problem.grid_points / 4) {
    throw Error(ErrorCode::InvalidArgument,
                "count = " + std::to_string(count) + " must lie in [1, N/4]");
  }
  const auto op = assemble_operator(problem);
  const auto values = linalg::lowest_eigenvalues(op, static_cast<std::size_t>(count));
  return {values.begin(), values.end()};
}

FdSpectrum solve_lowest(const FdProblem& problem, int count) {
  if (count < 1 || count > problem.grid_points / 4) {
    throw Error(ErrorCode::InvalidArgument,
                "count = " + std::to_string(count) + " must lie in [1, N/4]");
  }
  const auto op = assemble_operator(problem);
  const auto values = linalg::lowest_eigenvalues(op, static_cast<std::size_t>(count));
  const double h = grid_spacing(problem);

  FdSpectrum spectrum;
  spectrum.grid_points = problem.grid_points;
  double worst = 0.0;
  for (const wide_real lambda : values) {
    auto pair = linalg::inverse_iteration(op, lambda, kSolverTolerance);
    const double lam = static_cast<double>(lambda);
    const double residual = static_cast<double>(pair.residual);
    worst = std::max(worst, residual / std::abs(lam));
    if (!(residual <= kSolverTolerance * std::abs(lam))) {
      std::ostringstream msg;
      msg << "inverse iteration stalled after " << pair.iterations
          << " sweeps; relative residual " << residual / std::abs(lam);
      throw Error(ErrorCode::ConvergenceFailure, msg.str());
    }

    // Unit 2-norm -> h-weighted norm, sign fixed by the first entry.
    const double sign = pair.vector.front() < 0 ? -1.0 : 1.0;
    const double scale = sign / std::sqrt(h);
    std::vector<double> v;
    v.reserve(pair.vector.size());
    for (const wide_real x : pair.vector) v.push_back(static_cast<double>(x) * scale);

    spectrum.eigenvalues.push_back(lam);
    spectrum.residual_norms.push_back(residual);
    spectrum.eigenvectors.push_back(std::move(v));
  }
  for (std::size_t k = 1; k < spectrum.eigenvalues.size(); ++k) {
    if (!(spectrum.eigenvalues[k] > spectrum.eigenvalues[k - 1])) {
      throw Error(ErrorCode::ConvergenceFailure, "eigenvalues not strictly ascending");
    }
  }
  return spectrum;
}

double discrete_eigenvalue(const FdProblem& problem, int n) {
  const auto& p = problem.params;
  const double h = grid_spacing(problem);
  const double s = std::sin(n * std::numbers::pi / (2.0 * (problem.grid_points + 1)));
  const double mu = 4.0 * s * s / (h * h);
  const double hbar2 = p.hbar * p.hbar;
  return (hbar2 * mu + 2.0 * p.beta * hbar2 * hbar2 * mu * mu) / (2.0 * p.mass);
}

ConvergenceStudy convergence_study(const ModelParams& params, std::span<const int> grids,
                                   int level) {
  if (grids.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "convergence study needs at least 3 grids");
  }
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (grids[i] <= grids[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "grids must be strictly increasing");
    }
  }
  const double exact = box::energy_level(level, params).e_total;

  ConvergenceStudy study;
  study.grids.assign(grids.begin(), grids.end());
  bool all_at_floor = true;
  for (int n : grids) {
    const auto problem = make_problem(params, n);
    const double lambda = lowest_eigenvalues(problem, level).back();
    const double err = std::abs(lambda - exact);
    study.spacings.push_back(grid_spacing(problem));
    study.errors.push_back(err);
    if (err > 64.0 * std::numeric_limits<double>::epsilon() * exact) all_at_floor = false;
  }
  if (all_at_floor) {
    throw Error(ErrorCode::DegenerateFit, "converged below measurement floor on every grid");
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(grids.size());
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const double x = std::log(study.spacings[i]);
    const double y = std::log(std::max(study.errors[i], std::numeric_limits<double>::min()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  study.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return study;
}

}  // namespace gupqm::fd
