#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyac {

/// Square band matrix with `lower` sub- and `upper` super-diagonals.
///
/// Storage is row-major over the band: entry (i, j) lives at
/// data[i * width + (j - i + lower)], width = lower + upper + 1.
class BandedMatrix {
 public:
  BandedMatrix() = default;
  BandedMatrix(std::size_t n, std::size_t lower, std::size_t upper);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return lower_; }
  std::size_t upper() const noexcept { return upper_; }

  bool in_band(std::size_t i, std::size_t j) const noexcept;

  /// Entry (i, j); zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept;
  /// Mutable entry; (i, j) must be inside the band.
  double& at(std::size_t i, std::size_t j);

  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  std::size_t n_ = 0;
  std::size_t lower_ = 0;
  std::size_t upper_ = 0;
  std::size_t width_ = 1;
  std::vector<double> data_;
};

/// LU factorization without pivoting, for diagonally dominant band matrices.
class BandedLU {
 public:
  BandedLU() = default;
  explicit BandedLU(BandedMatrix a);

  bool empty() const noexcept { return lu_.size() == 0; }
  std::size_t size() const noexcept { return lu_.size(); }

  /// Solves A x = b in place.
  void solve(std::span<double> b) const;

 private:
  BandedMatrix lu_;
};

/// Thomas algorithm for a tridiagonal system; sub[0] and super[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> super, std::span<const double> rhs);

/// A band matrix plus a few entries outside the band (periodic corners).
///
/// Solves through the band LU and a Woodbury correction whose rank equals the
/// number of out-of-band entries.
class CornerBandSystem {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };

  CornerBandSystem() = default;
  CornerBandSystem(BandedMatrix band, std::vector<Entry> corners);

  std::size_t size() const noexcept { return band_.size(); }
  const BandedMatrix& band() const noexcept { return band_; }
  const std::vector<Entry>& corners() const noexcept { return corners_; }

  /// Full entry (i, j), corners included.
  double entry(std::size_t i, std::size_t j) const;

  void multiply(std::span<const double> x, std::span<double> y) const;
  void solve(std::span<double> b) const;

  /// |a_ii| - sum_{j != i} |a_ij| for row i.
  double gershgorin_margin(std::size_t i) const;

 private:
  BandedMatrix band_;
  std::vector<Entry> corners_;
  BandedLU lu_;
  // Woodbury pieces: Z = A0^{-1} U (column k stored contiguously), and the
  // factorized capacitance I + V^T Z.
  std::vector<std::vector<double>> z_;
  std::vector<double> capacitance_lu_;
  std::vector<std::size_t> capacitance_piv_;
};

}  // namespace hyac
