#include "gupqm/band_eigen.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace gupqm::linalg {

wide_real wide_abs(wide_real x) { return x < 0 ? -x : x; }

wide_real wide_sqrt(wide_real x) {
  if (x <= 0) return 0;
  // Newton from the double estimate; two steps reach working precision.
  wide_real s = std::sqrt(static_cast<double>(x));
  if (s == 0) s = 1e-300;
  s = 0.5 * (s + x / s);
  s = 0.5 * (s + x / s);
  return s;
}

SymBandMatrix::SymBandMatrix(std::size_t size, std::size_t bandwidth)
    : size_(size), bandwidth_(bandwidth), data_(size * (bandwidth + 1), wide_real(0)) {}

wide_real& SymBandMatrix::lower(std::size_t row, std::size_t offset) {
  assert(offset <= bandwidth_ && offset <= row && row < size_);
  return data_[row * (bandwidth_ + 1) + offset];
}

wide_real SymBandMatrix::lower(std::size_t row, std::size_t offset) const {
  assert(offset <= bandwidth_ && offset <= row && row < size_);
  return data_[row * (bandwidth_ + 1) + offset];
}

wide_real SymBandMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i < j) std::swap(i, j);
  const std::size_t offset = i - j;
  return offset > bandwidth_ ? wide_real(0) : lower(i, offset);
}

std::vector<wide_real> SymBandMatrix::multiply(std::span<const wide_real> x) const {
  assert(x.size() == size_);
  std::vector<wide_real> y(size_, wide_real(0));
  for (std::size_t i = 0; i < size_; ++i) {
    y[i] += lower(i, 0) * x[i];
    for (std::size_t d = 1; d <= std::min(bandwidth_, i); ++d) {
      const wide_real v = lower(i, d);
      y[i] += v * x[i - d];
      y[i - d] += v * x[i];
    }
  }
  return y;
}

std::pair<wide_real, wide_real> SymBandMatrix::gershgorin() const {
  wide_real lo = 0, hi = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    wide_real radius = 0;
    for (std::size_t j = (i > bandwidth_ ? i - bandwidth_ : 0); j <= std::min(size_ - 1, i + bandwidth_);
         ++j) {
      if (j != i) radius += wide_abs((*this)(i, j));
    }
    const wide_real d = lower(i, 0);
    if (i == 0 || d - radius < lo) lo = d - radius;
    if (i == 0 || d + radius > hi) hi = d + radius;
  }
  return {lo, hi};
}

wide_real SymBandMatrix::norm_bound() const {
  const auto [lo, hi] = gershgorin();
  return std::max(wide_abs(lo), wide_abs(hi));
}

std::size_t count_below(const SymBandMatrix& a, wide_real shift) {
  const std::size_t n = a.size();
  const std::size_t b = a.bandwidth();
  // Pivots are clamped away from zero; a zero pivot is counted as negative.
  const wide_real pivmin = wide_real(1e-60) * std::max(wide_real(1), a.norm_bound());

  std::vector<wide_real> d(n);
  // l[i * b + (k - 1)] = L(i, i - k)
  std::vector<wide_real> l(n * std::max<std::size_t>(b, 1), wide_real(0));
  auto L = [&](std::size_t i, std::size_t j) -> wide_real& { return l[i * b + (i - j - 1)]; };

  std::size_t negatives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = i > b ? i - b : 0;
    for (std::size_t j = first; j < i; ++j) {
      wide_real s = a(i, j);
      for (std::size_t k = first; k < j; ++k) {
        if (j - k <= b) s -= L(i, k) * L(j, k) * d[k];
      }
      L(i, j) = s / d[j];
    }
    wide_real pivot = a.lower(i, 0) - shift;
    for (std::size_t k = first; k < i; ++k) pivot -= L(i, k) * L(i, k) * d[k];
    if (wide_abs(pivot) < pivmin) pivot = -pivmin;
    d[i] = pivot;
    if (pivot < 0) ++negatives;
  }
  return negatives;
}

std::vector<wide_real> lowest_eigenvalues(const SymBandMatrix& a, std::size_t count,
                                          double rel_tol) {
  count = std::min(count, a.size());
  auto [glo, ghi] = a.gershgorin();
  const wide_real norm = std::max(wide_abs(glo), wide_abs(ghi));
  const wide_real abs_floor = wide_real(64.0 * kWideEpsilon) * std::max(norm, wide_real(1));
  glo -= abs_floor;
  ghi += abs_floor;

  // upper[k]: smallest shift seen so far with more than k eigenvalues below it.
  std::vector<wide_real> upper(count, ghi);
  std::vector<wide_real> values;
  values.reserve(count);
  wide_real lower_start = glo;

  for (std::size_t k = 0; k < count; ++k) {
    wide_real lo = lower_start;
    wide_real hi = upper[k];
    for (int iter = 0; iter < 400; ++iter) {
      const wide_real width = hi - lo;
      const wide_real scale = std::max(wide_abs(lo), wide_abs(hi));
      if (width <= abs_floor || width <= wide_real(rel_tol) * scale) break;
      const wide_real mid = lo + width / 2;
      const std::size_t below = count_below(a, mid);
      if (below > k) {
        hi = mid;
        for (std::size_t j = k + 1; j < std::min(below, count); ++j) {
          if (mid < upper[j]) upper[j] = mid;
        }
      } else {
        lo = mid;
      }
    }
    const wide_real value = lo + (hi - lo) / 2;
    values.push_back(value);
    lower_start = lo;
  }
  return values;
}

namespace {

// Partially pivoted LU of a band matrix (kl = ku = b) with the fill-in
// columns LU pivoting creates. Row i stores columns [i - b, i + 2b].
class BandLu {
 public:
  BandLu(const SymBandMatrix& a, wide_real shift)
      : n_(a.size()), b_(a.bandwidth()), width_(3 * b_ + 1),
        rows_(n_ * width_, wide_real(0)), mult_(n_ * std::max<std::size_t>(b_, 1), wide_real(0)),
        pivots_(n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      const std::size_t first = i > b_ ? i - b_ : 0;
      const std::size_t last = std::min(n_ - 1, i + b_);
      for (std::size_t j = first; j <= last; ++j) at(i, j) = a(i, j);
      at(i, i) -= shift;
    }
    const wide_real tiny = wide_real(kWideEpsilon) * std::max(wide_real(1), a.norm_bound());
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t last_row = std::min(n_ - 1, j + b_);
      const std::size_t last_col = std::min(n_ - 1, j + 2 * b_);
      std::size_t p = j;
      for (std::size_t i = j + 1; i <= last_row; ++i) {
        if (wide_abs(at(i, j)) > wide_abs(at(p, j))) p = i;
      }
      pivots_[j] = p;
      if (p != j) {
        for (std::size_t c = j; c <= last_col; ++c) std::swap(at(j, c), at(p, c));
      }
      if (wide_abs(at(j, j)) < tiny) at(j, j) = tiny;
      for (std::size_t i = j + 1; i <= last_row; ++i) {
        const wide_real f = at(i, j) / at(j, j);
        mult_[j * b_ + (i - j - 1)] = f;
        at(i, j) = 0;
        if (f == 0) continue;
        for (std::size_t c = j + 1; c <= last_col; ++c) at(i, c) -= f * at(j, c);
      }
    }
  }

  void solve(std::vector<wide_real>& rhs) const {
    for (std::size_t j = 0; j < n_; ++j) {
      if (pivots_[j] != j) std::swap(rhs[j], rhs[pivots_[j]]);
      for (std::size_t i = j + 1; i <= std::min(n_ - 1, j + b_); ++i) {
        rhs[i] -= mult_[j * b_ + (i - j - 1)] * rhs[j];
      }
    }
    for (std::size_t i = n_; i-- > 0;) {
      wide_real s = rhs[i];
      for (std::size_t c = i + 1; c <= std::min(n_ - 1, i + 2 * b_); ++c) s -= at(i, c) * rhs[c];
      rhs[i] = s / at(i, i);
    }
  }

 private:
  wide_real& at(std::size_t i, std::size_t j) { return rows_[i * width_ + (j + b_ - i)]; }
  wide_real at(std::size_t i, std::size_t j) const { return rows_[i * width_ + (j + b_ - i)]; }

  std::size_t n_;
  std::size_t b_;
  std::size_t width_;
  std::vector<wide_real> rows_;
  std::vector<wide_real> mult_;
  std::vector<std::size_t> pivots_;
};

wide_real norm2(std::span<const wide_real> v) {
  wide_real s = 0;
  for (wide_real x : v) s += x * x;
  return wide_sqrt(s);
}

}  // namespace

EigenVector inverse_iteration(const SymBandMatrix& a, wide_real lambda, double tol,
                              int max_iterations) {
  const std::size_t n = a.size();
  const BandLu lu(a, lambda);

  // Fixed seed and raw engine output keep the start vector identical across
  // platforms and runs.
  std::mt19937_64 engine(0x9e3779b97f4a7c15ULL);
  std::vector<wide_real> x(n);
  for (auto& v : x) v = static_cast<double>(engine() >> 11) * 0x1.0p-53 - 0.5;

  EigenVector result;
  for (int iter = 1; iter <= max_iterations; ++iter) {
    lu.solve(x);
    const wide_real nrm = norm2(x);
    for (auto& v : x) v /= nrm;
    const auto ax = a.multiply(x);
    wide_real r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const wide_real e = ax[i] - lambda * x[i];
      r += e * e;
    }
    result.residual = wide_sqrt(r);
    result.iterations = iter;
    if (result.residual <= wide_real(tol) * wide_abs(lambda)) break;
  }
  result.vector = std::move(x);
  return result;
}

}  // namespace gupqm::linalg
