#include "fracdiff/lattice.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "fracdiff/errors.hpp"
#include "fracdiff/format.hpp"

namespace fracdiff {

FieldGrid::FieldGrid(std::int64_t nx, std::int64_t ny, double dx)
    : nx_(nx), ny_(ny), dx_(dx), data_(static_cast<std::size_t>(nx * ny), 0.0) {
  if (nx < 3) throw ValidationError("nx must be at least 3, got " + std::to_string(nx));
  if (ny != 1 && ny < 3)
    throw ValidationError("ny must be 1 (1D) or at least 3, got " + std::to_string(ny));
  if (!std::isfinite(dx) || !(dx > 0.0)) throw ValidationError("dx must be positive");
}

bool FieldGrid::interior(std::int64_t j, std::int64_t l) const noexcept {
  if (ny_ == 1) return l == 0 && j >= 1 && j <= nx_ - 2;
  return j >= 1 && j <= nx_ - 2 && l >= 1 && l <= ny_ - 2;
}

bool FieldGrid::finite() const noexcept {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

KernelField laplacian_kernel(const FieldGrid& u) {
  KernelField d(u.nx(), u.ny(), u.dx());
  const std::int64_t nx = u.nx();
  if (u.dims() == 1) {
    for (std::int64_t j = 1; j <= nx - 2; ++j)
      d.at(j, 0) = u.at(j + 1, 0) - 2.0 * u.at(j, 0) + u.at(j - 1, 0);
  } else {
    for (std::int64_t l = 1; l <= u.ny() - 2; ++l)
      for (std::int64_t j = 1; j <= nx - 2; ++j)
        d.at(j, l) = u.at(j + 1, l) + u.at(j - 1, l) - 4.0 * u.at(j, l) +
                     u.at(j, l + 1) + u.at(j, l - 1);
  }
  return d;
}

FieldGrid make_initial(std::int64_t nx, std::int64_t ny, double dx,
                       std::span<const PointSource> sources) {
  FieldGrid u(nx, ny, dx);
  for (const auto& s : sources) {
    if (!u.interior(s.j, s.l))
      throw ValidationError("initial source at (" + std::to_string(s.j) + ", " +
                            std::to_string(s.l) + ") is on or outside the boundary");
    u.at(s.j, s.l) = s.value;
  }
  return u;
}

void write_csv(const FieldGrid& u, std::ostream& os) {
  for (std::int64_t l = 0; l < u.ny(); ++l) {
    for (std::int64_t j = 0; j < u.nx(); ++j) {
      if (j) os << ',';
      os << fmt_real(u.at(j, l));
    }
    os << '\n';
  }
}

std::string checksum_hex(const FieldGrid& u) {
  constexpr std::uint64_t kOffset = 14695981039346656037ull;
  constexpr std::uint64_t kPrime = 1099511628211ull;
  std::uint64_t h = kOffset;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffull;
      h *= kPrime;
    }
  };
  mix(static_cast<std::uint64_t>(u.nx()));
  mix(static_cast<std::uint64_t>(u.ny()));
  for (double v : u.data()) mix(std::bit_cast<std::uint64_t>(v));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fracdiff
