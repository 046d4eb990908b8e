#pragma once

// Finite-difference oracle for the box spectrum.
//
// The fourth-order operator is discretized on N interior points of [0, a]
// with spacing h = a / (N + 1) as
//
//   H = (1 / 2m) (hbar^2 A + 2 beta hbar^4 A^2),   A = -D2,
//
// where D2 is the Dirichlet second difference. Squaring D2 instead of using
// a five-point fourth-difference stencil imposes psi'' = 0 at the walls as
// well as psi = 0 ("pinned" walls). With that closure the sampled sines are
// exact discrete eigenvectors, with eigenvalues
//
//   (1 / 2m) (hbar^2 mu_n + 2 beta hbar^4 mu_n^2),  mu_n = 4 sin^2(n pi h / 2a) / h^2.

#include <span>
#include <vector>

#include "gupqm/band_eigen.hpp"
#include "gupqm/units.hpp"

namespace gupqm::fd {

enum class BoundaryCondition { Pinned };

struct FdProblem {
  ModelParams params;
  int grid_points = 0;  // interior points N
  BoundaryCondition bc = BoundaryCondition::Pinned;
};

inline constexpr int kMinGridPoints = 8;
inline constexpr double kSolverTolerance = 1e-10;

// Validates N >= 8 (GridTooSmall) and the parameters.
FdProblem make_problem(const ModelParams& params, int grid_points);

double grid_spacing(const FdProblem& problem);

linalg::SymBandMatrix assemble_operator(const FdProblem& problem);

struct FdSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> residual_norms;
  // Interior samples, normalized so that h * sum(v^2) = 1 and with the first
  // entry positive (the sign of sin(n pi x / a) near x = 0).
  std::vector<std::vector<double>> eigenvectors;
  int grid_points = 0;
};

// The `count` lowest eigenpairs; requires count <= N / 4.
FdSpectrum solve_lowest(const FdProblem& problem, int count);

// Lowest `count` eigenvalues without eigenvectors.
std::vector<double> lowest_eigenvalues(const FdProblem& problem, int count);

// Closed-form eigenvalue of the discrete operator for level n.
double discrete_eigenvalue(const FdProblem& problem, int n);

struct ConvergenceStudy {
  std::vector<int> grids;
  std::vector<double> spacings;
  std::vector<double> errors;  // |lambda_n(N) - E_n|
  double slope = 0.0;          // least-squares d log(error) / d log(h)
};

ConvergenceStudy convergence_study(const ModelParams& params, std::span<const int> grids,
                                   int level);

}  // namespace gupqm::fd
