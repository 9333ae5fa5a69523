#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fracdiff {

struct PointSource {
  std::int64_t j = 0;  // x index (column)
  std::int64_t l = 0;  // y index (row); 0 in 1D
  double value = 0.0;

  bool operator==(const PointSource&) const = default;
};

/// Uniform 1D/2D scalar field with spacing dx and a zero Dirichlet boundary
/// ring. Row-major storage: ny rows of nx values each; ny == 1 selects the
/// 1D layout, where only j = 0 and j = nx-1 are boundary points.
class FieldGrid {
 public:
  FieldGrid(std::int64_t nx, std::int64_t ny, double dx);

  int dims() const noexcept { return ny_ == 1 ? 1 : 2; }
  std::int64_t nx() const noexcept { return nx_; }
  std::int64_t ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  std::int64_t size() const noexcept { return nx_ * ny_; }

  double& at(std::int64_t j, std::int64_t l) { return data_[l * nx_ + j]; }
  double at(std::int64_t j, std::int64_t l) const { return data_[l * nx_ + j]; }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  bool interior(std::int64_t j, std::int64_t l) const noexcept;
  bool finite() const noexcept;

  bool operator==(const FieldGrid&) const = default;

 private:
  std::int64_t nx_;
  std::int64_t ny_;
  double dx_;
  std::vector<double> data_;
};

/// The discrete Laplacian kernel: same shape as its input, zero on the
/// boundary ring, and on the interior
///   2D: delta = u(j+1,l) + u(j-1,l) - 4 u(j,l) + u(j,l+1) + u(j,l-1)
///   1D: delta = u(j+1) - 2 u(j) + u(j-1)
using KernelField = FieldGrid;

KernelField laplacian_kernel(const FieldGrid& u);

/// Zero grid with the listed point values set. Every index must be strictly
/// interior; anything on or outside the boundary ring throws ValidationError.
FieldGrid make_initial(std::int64_t nx, std::int64_t ny, double dx,
                       std::span<const PointSource> sources);

/// CSV snapshot: one line per grid row, comma-separated reals at 17
/// significant digits (1D grids are a single row).
void write_csv(const FieldGrid& u, std::ostream& os);

/// FNV-1a 64-bit checksum of the canonical byte serialization (nx, ny, then
/// each value's IEEE-754 bit pattern, all little-endian), as 16 hex digits.
std::string checksum_hex(const FieldGrid& u);

}  // namespace fracdiff
