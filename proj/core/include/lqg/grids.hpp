// Copyright 2026 The lqgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LQG_GRIDS_HPP
#define LQG_GRIDS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "lqg/errors.hpp"

namespace lqg {

using Complex = std::complex<double>;

/// Square grid of cells covering [-R, R]^2; the inscribed disk R*D is the
/// active domain. Cells are addressed row-major, (ix, iy) with ix the x index.
/// A cell is interior iff its center lies strictly inside the disk.
class PlanarGrid {
 public:
  PlanarGrid(int resolution, double domain_radius);

  int resolution() const noexcept { return resolution_; }
  double domain_radius() const noexcept { return radius_; }
  double cell_size() const noexcept { return cell_; }
  double cell_area() const noexcept { return cell_ * cell_; }
  std::size_t num_cells() const noexcept {
    return static_cast<std::size_t>(resolution_) * resolution_;
  }

  std::size_t index(int ix, int iy) const noexcept {
    return static_cast<std::size_t>(iy) * resolution_ + ix;
  }
  Complex center(int ix, int iy) const noexcept {
    return {-radius_ + (ix + 0.5) * cell_, -radius_ + (iy + 0.5) * cell_};
  }
  Complex center(std::size_t idx) const noexcept {
    const int iy = static_cast<int>(idx) / resolution_;
    const int ix = static_cast<int>(idx) % resolution_;
    return center(ix, iy);
  }

  bool interior(int ix, int iy) const noexcept {
    return std::abs(center(ix, iy)) < radius_;
  }
  bool interior(std::size_t idx) const noexcept { return mask_[idx]; }

  /// Interior/boundary mask, one flag per cell.
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }
  std::size_t num_interior() const noexcept { return num_interior_; }

  bool operator==(const PlanarGrid& o) const noexcept {
    return resolution_ == o.resolution_ && radius_ == o.radius_;
  }

 private:
  int resolution_;
  double radius_;
  double cell_;
  std::vector<std::uint8_t> mask_;
  std::size_t num_interior_ = 0;
};

/// Periodic-in-theta grid on [t_min, t_max] x [0, 2pi). Row-major over
/// (it, itheta); the first and last theta columns are adjacent.
class CylinderGrid {
 public:
  CylinderGrid(double t_min, double t_max, int n_t, int n_theta);

  double t_min() const noexcept { return t_min_; }
  double t_max() const noexcept { return t_max_; }
  int n_t() const noexcept { return n_t_; }
  int n_theta() const noexcept { return n_theta_; }
  double dt() const noexcept { return (t_max_ - t_min_) / n_t_; }
  double dtheta() const noexcept { return 2.0 * M_PI / n_theta_; }
  double cell_area() const noexcept { return dt() * dtheta(); }
  std::size_t num_cells() const noexcept {
    return static_cast<std::size_t>(n_t_) * n_theta_;
  }

  std::size_t index(int it, int itheta) const noexcept {
    return static_cast<std::size_t>(it) * n_theta_ + itheta;
  }
  double t_center(int it) const noexcept { return t_min_ + (it + 0.5) * dt(); }
  double theta_center(int itheta) const noexcept {
    return (itheta + 0.5) * dtheta();
  }

  /// Plane coordinate of a cell center under z = exp(-(t + i*theta)).
  Complex plane_point(int it, int itheta) const noexcept {
    const double t = t_center(it);
    const double th = theta_center(itheta);
    return std::exp(Complex(-t, -th));
  }

  bool operator==(const CylinderGrid& o) const noexcept {
    return t_min_ == o.t_min_ && t_max_ == o.t_max_ && n_t_ == o.n_t_ &&
           n_theta_ == o.n_theta_;
  }

 private:
  double t_min_, t_max_;
  int n_t_, n_theta_;
};

using GridVariant = std::variant<PlanarGrid, CylinderGrid>;

/// How the additive constant of a sampled field was fixed.
enum class Pinning : std::uint8_t {
  kZeroBoundary = 0,      // vanishes on boundary cells
  kCircleMeanZero = 1,    // unit-circle average equals zero
  kSphericalMeanZero = 2, // average against the spherical density equals zero
  kModuloConstant = 3,    // constant left unfixed
};

/// Real-valued sample on a grid. Planar fields store one value per cell with
/// exact zeros on non-interior cells; cylinder fields store every cell.
struct Field {
  GridVariant geometry;
  std::vector<double> values;
  Pinning pinning = Pinning::kModuloConstant;

  const PlanarGrid* planar() const noexcept {
    return std::get_if<PlanarGrid>(&geometry);
  }
  const CylinderGrid* cylinder() const noexcept {
    return std::get_if<CylinderGrid>(&geometry);
  }

  /// Adds a constant on the active cells (interior for planar, all for
  /// cylinder); boundary zeros of a zero-boundary field are left untouched.
  void add_constant(double c);
};

/// Bilinear interpolation of a planar field at z. Values outside the cell
/// lattice throw GeometryError.
double interpolate(const Field& field, Complex z);

/// Mean of the field over >= max(64, 2*pi*radius/cell) equispaced points on
/// the circle of given center and radius, by bilinear interpolation.
double circle_average(const Field& field, Complex center, double radius);

/// radial(it) = mean over theta at row it; angular = field - radial.
struct RadialAngularSplit {
  std::vector<double> t;       // row centers
  std::vector<double> radial;  // circle means per row
  Field angular;               // zero circle-mean remainder
};

RadialAngularSplit radial_angular_split(const Field& field);

}  // namespace lqg

#endif  // LQG_GRIDS_HPP
