#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gupqm/band_eigen.hpp"

using namespace gupqm::linalg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Cyclic Jacobi on a dense copy; independent of the inertia/bisection path.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

SymBandMatrix random_band(std::size_t n, std::size_t b, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymBandMatrix m(n, b);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t d = 0; d <= std::min(b, i); ++d) m.lower(i, d) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("count_below on a diagonal matrix", "[band]") {
  SymBandMatrix m(5, 2);
  const double diag[] = {3.0, -1.0, 7.0, 0.5, 2.0};
  for (std::size_t i = 0; i < 5; ++i) m.lower(i, 0) = diag[i];
  CHECK(count_below(m, -2.0) == 0);
  CHECK(count_below(m, 0.0) == 1);
  CHECK(count_below(m, 2.5) == 3);
  CHECK(count_below(m, 100.0) == 5);
}

TEST_CASE("band eigenvalues match dense Jacobi", "[band]") {
  for (unsigned seed : {1u, 2u, 3u}) {
    for (std::size_t b : {1u, 2u, 3u}) {
      const std::size_t n = 14;
      const auto m = random_band(n, b, seed);
      std::vector<std::vector<double>> dense(n, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dense[i][j] = static_cast<double>(m(i, j));
      const auto expected = jacobi_eigenvalues(dense);
      const auto got = lowest_eigenvalues(m, n);
      REQUIRE(got.size() == n);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK_THAT(static_cast<double>(got[k]), WithinAbs(expected[k], 1e-12));
      }
    }
  }
}

TEST_CASE("tridiagonal Laplacian has sine eigenpairs", "[band]") {
  const std::size_t n = 200;
  SymBandMatrix m(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    m.lower(i, 0) = 2;
    if (i > 0) m.lower(i, 1) = -1;
  }
  const auto values = lowest_eigenvalues(m, 4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sin((k + 1) * std::numbers::pi / (2.0 * (n + 1)));
    CHECK_THAT(static_cast<double>(values[k]), WithinRel(4.0 * s * s, 1e-14));

    const auto pair = inverse_iteration(m, values[k], 1e-20);
    CHECK(static_cast<double>(pair.residual) < 1e-20);
    // Unit norm and sine shape up to sign.
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += static_cast<double>(pair.vector[i]) *
             std::sin((k + 1) * std::numbers::pi * (i + 1) / (n + 1));
    }
    CHECK_THAT(std::abs(dot), WithinRel(std::sqrt((n + 1) / 2.0), 1e-12));
  }
}

TEST_CASE("wide helpers", "[band]") {
  CHECK(wide_abs(wide_real(-2)) == wide_real(2));
  const wide_real r = wide_sqrt(wide_real(2));
  CHECK(static_cast<double>(wide_abs(r * r - 2)) < 1e-30);
  CHECK(wide_sqrt(wide_real(0)) == wide_real(0));
}

TEST_CASE("matrix-vector product and Gershgorin bounds", "[band]") {
  const auto m = random_band(9, 2, 42);
  std::vector<wide_real> x(9);
  for (std::size_t i = 0; i < 9; ++i) x[i] = static_cast<double>(i) - 4.0;
  const auto y = m.multiply(x);
  for (std::size_t i = 0; i < 9; ++i) {
    wide_real s = 0;
    for (std::size_t j = 0; j < 9; ++j) s += m(i, j) * x[j];
    CHECK(static_cast<double>(wide_abs(s - y[i])) < 1e-25);
  }
  const auto [lo, hi] = m.gershgorin();
  const auto all = lowest_eigenvalues(m, 9);
  CHECK(all.front() >= lo);
  CHECK(all.back() <= hi);
}
