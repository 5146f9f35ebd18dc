#include "hyac/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyac/errors.hpp"

namespace hyac {

BandedMatrix::BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper)
    : n_(n), lower_(lower), upper_(upper), width_(lower + upper + 1), data_(n * width_, 0.0) {}

bool BandedMatrix::in_band(std::size_t i, std::size_t j) const noexcept {
  return i < n_ && j < n_ && j + lower_ >= i && j <= i + upper_;
}

double BandedMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
  if (!in_band(i, j)) return 0.0;
  return data_[i * width_ + (j + lower_ - i)];
}

double& BandedMatrix::at(std::size_t i, std::size_t j) {
  if (!in_band(i, j)) {
    throw InvalidArgument("band entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") outside the band");
  }
  return data_[i * width_ + (j + lower_ - i)];
}

void BandedMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i >= lower_ ? i - lower_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + upper_);
    double acc = 0.0;
    for (std::size_t j = j0; j <= j1; ++j) acc += data_[i * width_ + (j + lower_ - i)] * x[j];
    y[i] = acc;
  }
}

BandedLU::BandedLU(BandedMatrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.size();
  const std::size_t kl = lu_.lower();
  const std::size_t ku = lu_.upper();
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = lu_(k, k);
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw LinearSolveError("zero pivot in banded LU at row " + std::to_string(k));
    }
    const std::size_t i_end = std::min(n - 1, k + kl);
    const std::size_t j_end = std::min(n - 1, k + ku);
    for (std::size_t i = k + 1; i <= i_end; ++i) {
      double& lik = lu_.at(i, k);
      if (lik == 0.0) continue;
      lik /= pivot;
      for (std::size_t j = k + 1; j <= j_end; ++j) lu_.at(i, j) -= lik * lu_(k, j);
    }
  }
}

void BandedLU::solve(std::span<double> b) const {
  const std::size_t n = lu_.size();
  const std::size_t kl = lu_.lower();
  const std::size_t ku = lu_.upper();
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j0 = i >= kl ? i - kl : 0;
    double acc = b[i];
    for (std::size_t j = j0; j < i; ++j) acc -= lu_(i, j) * b[j];
    b[i] = acc;
  }
  for (std::size_t ii = n; ii-- > 0;) {
    const std::size_t j1 = std::min(n - 1, ii + ku);
    double acc = b[ii];
    for (std::size_t j = ii + 1; j <= j1; ++j) acc -= lu_(ii, j) * b[j];
    b[ii] = acc / lu_(ii, ii);
  }
}

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> x(rhs.begin(), rhs.end());
  c[0] = n > 1 ? super[0] / diag[0] : 0.0;
  x[0] /= diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - sub[i] * c[i - 1];
    if (i + 1 < n) c[i] = super[i] / m;
    x[i] = (x[i] - sub[i] * x[i - 1]) / m;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return x;
}

namespace {

// Dense LU with partial pivoting for the small Woodbury capacitance matrix.
void dense_lu(std::vector<double>& a, std::vector<std::size_t>& piv, std::size_t k) {
  piv.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < k; ++r) {
      if (std::abs(a[r * k + c]) > std::abs(a[p * k + c])) p = r;
    }
    piv[c] = p;
    if (p != c) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[c * k + j], a[p * k + j]);
    }
    if (a[c * k + c] == 0.0) throw LinearSolveError("singular Woodbury capacitance matrix");
    for (std::size_t r = c + 1; r < k; ++r) {
      a[r * k + c] /= a[c * k + c];
      for (std::size_t j = c + 1; j < k; ++j) a[r * k + j] -= a[r * k + c] * a[c * k + j];
    }
  }
}

void dense_solve(const std::vector<double>& lu, const std::vector<std::size_t>& piv,
                 std::vector<double>& b) {
  const std::size_t k = piv.size();
  for (std::size_t c = 0; c < k; ++c) std::swap(b[c], b[piv[c]]);
  for (std::size_t r = 1; r < k; ++r) {
    for (std::size_t j = 0; j < r; ++j) b[r] -= lu[r * k + j] * b[j];
  }
  for (std::size_t r = k; r-- > 0;) {
    for (std::size_t j = r + 1; j < k; ++j) b[r] -= lu[r * k + j] * b[j];
    b[r] /= lu[r * k + r];
  }
}

}  // namespace

CornerBandSystem::CornerBandSystem(BandedMatrix band, std::vector<Entry> corners)
    : band_(std::move(band)), corners_(std::move(corners)), lu_(band_) {
  for (const auto& e : corners_) {
    if (band_.in_band(e.row, e.col)) throw InvalidArgument("corner entry lies inside the band");
  }
  const std::size_t k = corners_.size();
  if (k == 0) return;
  const std::size_t n = band_.size();
  z_.assign(k, std::vector<double>(n, 0.0));
  for (std::size_t c = 0; c < k; ++c) {
    z_[c][corners_[c].row] = corners_[c].value;
    lu_.solve(z_[c]);
  }
  capacitance_lu_.assign(k * k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      capacitance_lu_[r * k + c] = (r == c ? 1.0 : 0.0) + z_[c][corners_[r].col];
    }
  }
  dense_lu(capacitance_lu_, capacitance_piv_, k);
}

double CornerBandSystem::entry(std::size_t i, std::size_t j) const {
  double v = band_(i, j);
  for (const auto& e : corners_) {
    if (e.row == i && e.col == j) v += e.value;
  }
  return v;
}

void CornerBandSystem::multiply(std::span<const double> x, std::span<double> y) const {
  band_.multiply(x, y);
  for (const auto& e : corners_) y[e.row] += e.value * x[e.col];
}

void CornerBandSystem::solve(std::span<double> b) const {
  lu_.solve(b);
  const std::size_t k = corners_.size();
  if (k == 0) return;
  std::vector<double> t(k);
  for (std::size_t r = 0; r < k; ++r) t[r] = b[corners_[r].col];
  dense_solve(capacitance_lu_, capacitance_piv_, t);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < b.size(); ++i) b[i] -= z_[c][i] * t[c];
  }
}

double CornerBandSystem::gershgorin_margin(std::size_t i) const {
  const std::size_t n = band_.size();
  const std::size_t j0 = i >= band_.lower() ? i - band_.lower() : 0;
  const std::size_t j1 = std::min(n - 1, i + band_.upper());
  double off = 0.0;
  for (std::size_t j = j0; j <= j1; ++j) {
    if (j != i) off += std::abs(band_(i, j));
  }
  for (const auto& e : corners_) {
    if (e.row == i) off += std::abs(e.value);
  }
  return std::abs(band_(i, i)) - off;
}

}  // namespace hyac
