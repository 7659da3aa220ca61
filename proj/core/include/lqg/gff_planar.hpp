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

#ifndef LQG_GFF_PLANAR_HPP
#define LQG_GFF_PLANAR_HPP

#include <cstdint>
#include <memory>

#include "lqg/background.hpp"
#include "lqg/grids.hpp"

namespace lqg {

/// Zero-boundary Gaussian free field on the lattice graph of interior cells.
///
/// The precision operator is the graph Laplacian; draws are produced through
/// a sparse Cholesky factorization computed once at construction and shared
/// (immutably) across draws and threads. Samples are scaled by sqrt(2*pi) so
/// that the covariance approaches the continuum Dirichlet Green's function in
/// the -Laplacian G = 2*pi*delta convention as the mesh refines.
class DirichletGffSampler {
 public:
  explicit DirichletGffSampler(const PlanarGrid& grid);
  ~DirichletGffSampler();
  DirichletGffSampler(DirichletGffSampler&&) noexcept;
  DirichletGffSampler& operator=(DirichletGffSampler&&) noexcept;

  const PlanarGrid& grid() const noexcept { return grid_; }

  /// One field draw; identical (grid, seed) pairs give bit-identical fields.
  Field sample(std::uint64_t seed) const;

  /// Exact lattice covariance 2*pi * (L^{-1})_{xy} between the cells that
  /// contain x and y, by a direct solve. Deterministic; used for calibration
  /// and as an oracle in tests.
  double lattice_covariance(Complex x, Complex y) const;
  double lattice_variance(Complex x) const { return lattice_covariance(x, x); }

  /// Additive lattice constant c in
  ///   Var h(x) = -log(cell) + log((R^2-|x|^2)/R) + c + o(1),
  /// measured from exact lattice variances at a few interior probes. Feeds
  /// the chaos-measure calibration.
  double log_variance_offset() const;

 private:
  PlanarGrid grid_;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Whole-plane field pinned so that the average against rho vanishes,
/// realized at finite volume: a zero-boundary draw on the (large) grid,
/// recentered by its rho-average. The covariance approximates the pinned
/// Green's function on compacts well inside the domain.
Field sample_pinned_whole_plane_gff(const DirichletGffSampler& sampler,
                                    const BackgroundMeasure& rho,
                                    std::uint64_t seed);

}  // namespace lqg

#endif  // LQG_GFF_PLANAR_HPP
