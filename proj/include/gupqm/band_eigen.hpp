#pragma once

// Symmetric band eigensolver for the lowest part of the spectrum.
//
// Eigenvalues come from bisection on Sylvester inertia counts (the number of
// negative pivots in a banded LDL^T of A - sigma I), eigenvectors from
// inverse iteration with a partially pivoted band LU. All arithmetic is done
// in an extended type: the fourth-order operators assembled here have norms
// around 1e14 against low eigenvalues of order 1e2, so double precision
// cannot resolve the low spectrum to better than ~1e-4 relative.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace gupqm::linalg {

#if defined(__SIZEOF_FLOAT128__)
__extension__ typedef __float128 wide_real;
inline constexpr double kWideEpsilon = 1.925929944387235853e-34;  // 2^-112
#else
using wide_real = long double;
inline constexpr double kWideEpsilon = 1.0842021724855044e-19;  // 2^-63
#endif

wide_real wide_abs(wide_real x);
wide_real wide_sqrt(wide_real x);

// Symmetric matrix with `bandwidth` sub-diagonals, stored by rows:
// entry (i, i - d) for d = 0..bandwidth.
class SymBandMatrix {
 public:
  SymBandMatrix(std::size_t size, std::size_t bandwidth);

  std::size_t size() const noexcept { return size_; }
  std::size_t bandwidth() const noexcept { return bandwidth_; }

  // Element (row, row - offset); offset <= bandwidth and offset <= row.
  wide_real& lower(std::size_t row, std::size_t offset);
  wide_real lower(std::size_t row, std::size_t offset) const;

  // Symmetric access; zero outside the band.
  wide_real operator()(std::size_t i, std::size_t j) const;

  std::vector<wide_real> multiply(std::span<const wide_real> x) const;

  // Gershgorin interval containing the whole spectrum.
  std::pair<wide_real, wide_real> gershgorin() const;

  // Largest Gershgorin radius magnitude; a cheap norm bound.
  wide_real norm_bound() const;

 private:
  std::size_t size_;
  std::size_t bandwidth_;
  std::vector<wide_real> data_;
};

// Number of eigenvalues strictly below `shift`.
std::size_t count_below(const SymBandMatrix& a, wide_real shift);

// The `count` smallest eigenvalues in ascending order, each bisected until the
// bracket is below rel_tol relative (with an absolute floor at the working
// precision times the matrix norm).
std::vector<wide_real> lowest_eigenvalues(const SymBandMatrix& a, std::size_t count,
                                          double rel_tol = 1e-24);

struct EigenVector {
  std::vector<wide_real> vector;  // unit 2-norm
  wide_real residual = 0;         // ||A v - lambda v|| / ||v||
  int iterations = 0;
};

// Inverse iteration at a (converged) eigenvalue estimate. Stops once the
// residual is below tol * |lambda| or after max_iterations sweeps; the caller
// decides whether the final residual is acceptable.
EigenVector inverse_iteration(const SymBandMatrix& a, wide_real lambda, double tol,
                              int max_iterations = 8);

}  // namespace gupqm::linalg
