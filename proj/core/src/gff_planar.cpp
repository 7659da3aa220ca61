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

#include "lqg/gff_planar.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <vector>

#include "lqg/rng.hpp"

namespace lqg {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
}

struct DirichletGffSampler::Impl {
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
  std::vector<std::int32_t> node_of_cell;  // -1 for boundary cells
  std::vector<std::uint32_t> cell_of_node;
};

DirichletGffSampler::DirichletGffSampler(const PlanarGrid& grid)
    : grid_(grid), impl_(std::make_unique<Impl>()) {
  const int res = grid.resolution();
  impl_->node_of_cell.assign(grid.num_cells(), -1);
  impl_->cell_of_node.reserve(grid.num_interior());
  for (std::size_t c = 0; c < grid.num_cells(); ++c) {
    if (grid.interior(c)) {
      impl_->node_of_cell[c] = static_cast<std::int32_t>(impl_->cell_of_node.size());
      impl_->cell_of_node.push_back(static_cast<std::uint32_t>(c));
    }
  }
  const auto n = static_cast<Eigen::Index>(impl_->cell_of_node.size());

  // Graph Laplacian with Dirichlet clamp: full degree 4 on the diagonal,
  // -1 for each interior neighbour. Off-grid and boundary neighbours are
  // zero-valued and only contribute to the degree.
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(5 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t c = impl_->cell_of_node[i];
    const int iy = static_cast<int>(c) / res;
    const int ix = static_cast<int>(c) % res;
    trips.emplace_back(i, i, 4.0);
    const int nbr[4][2] = {{ix - 1, iy}, {ix + 1, iy}, {ix, iy - 1}, {ix, iy + 1}};
    for (const auto& nb : nbr) {
      if (nb[0] < 0 || nb[1] < 0 || nb[0] >= res || nb[1] >= res) continue;
      const std::int32_t j = impl_->node_of_cell[grid.index(nb[0], nb[1])];
      if (j >= 0) trips.emplace_back(i, j, -1.0);
    }
  }
  Eigen::SparseMatrix<double> lap(n, n);
  lap.setFromTriplets(trips.begin(), trips.end());
  impl_->llt.compute(lap);
  if (impl_->llt.info() != Eigen::Success) {
    throw NumericError("sparse Cholesky factorization of the lattice "
                       "precision operator failed");
  }
}

DirichletGffSampler::~DirichletGffSampler() = default;
DirichletGffSampler::DirichletGffSampler(DirichletGffSampler&&) noexcept = default;
DirichletGffSampler& DirichletGffSampler::operator=(DirichletGffSampler&&) noexcept =
    default;

Field DirichletGffSampler::sample(std::uint64_t seed) const {
  const auto n = static_cast<Eigen::Index>(impl_->cell_of_node.size());
  Rng rng(seed);
  Eigen::VectorXd xi(n);
  for (Eigen::Index i = 0; i < n; ++i) xi[i] = rng.normal();

  // Factorization is P A P^T = L L^T, so x = P^T L^{-T} xi has covariance
  // A^{-1}; scale by sqrt(2*pi) for the continuum Green convention.
  Eigen::VectorXd y = impl_->llt.matrixU().solve(xi);
  Eigen::VectorXd x = impl_->llt.permutationPinv() * y;

  Field field;
  field.geometry = grid_;
  field.pinning = Pinning::kZeroBoundary;
  field.values.assign(grid_.num_cells(), 0.0);
  const double scale = std::sqrt(kTwoPi);
  for (Eigen::Index i = 0; i < n; ++i) {
    field.values[impl_->cell_of_node[i]] = scale * x[i];
  }
  return field;
}

double DirichletGffSampler::lattice_covariance(Complex x, Complex y) const {
  const double cell = grid_.cell_size();
  const double r = grid_.domain_radius();
  auto node_at = [&](Complex z) -> Eigen::Index {
    const int ix = static_cast<int>(std::floor((z.real() + r) / cell));
    const int iy = static_cast<int>(std::floor((z.imag() + r) / cell));
    if (ix < 0 || iy < 0 || ix >= grid_.resolution() || iy >= grid_.resolution()) {
      throw GeometryError("probe point outside the grid");
    }
    const std::int32_t node = impl_->node_of_cell[grid_.index(ix, iy)];
    if (node < 0) throw GeometryError("probe point is in a boundary cell");
    return node;
  };
  const Eigen::Index i = node_at(x), j = node_at(y);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(
      static_cast<Eigen::Index>(impl_->cell_of_node.size()));
  e[j] = 1.0;
  Eigen::VectorXd col = impl_->llt.solve(e);
  return kTwoPi * col[i];
}

double DirichletGffSampler::log_variance_offset() const {
  const double r = grid_.domain_radius();
  const double probes[][2] = {{0.05, 0.1}, {-0.3, 0.2}, {0.25, -0.35}, {-0.1, -0.15}};
  double acc = 0.0;
  int count = 0;
  for (const auto& p : probes) {
    const Complex z(p[0] * r, p[1] * r);
    const double var = lattice_variance(z);
    acc += var + std::log(grid_.cell_size()) -
           std::log((r * r - std::norm(z)) / r);
    ++count;
  }
  return acc / count;
}

Field sample_pinned_whole_plane_gff(const DirichletGffSampler& sampler,
                                    const BackgroundMeasure& rho,
                                    std::uint64_t seed) {
  Field field = sampler.sample(seed);
  const double avg = rho.field_average(field);
  field.add_constant(-avg);
  switch (rho.kind()) {
    case BackgroundKind::kUnitCircle:
      field.pinning = Pinning::kCircleMeanZero;
      break;
    case BackgroundKind::kSphere:
      field.pinning = Pinning::kSphericalMeanZero;
      break;
    default:
      field.pinning = Pinning::kModuloConstant;
      break;
  }
  return field;
}

}  // namespace lqg
