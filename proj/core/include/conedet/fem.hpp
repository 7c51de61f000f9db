#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "conedet/mesh.hpp"

namespace conedet {

using SparseMat = Eigen::SparseMatrix<double>;

// Conformal density rho for mass-matrix weighting. Charts of torus-built
// meshes are plane coordinates, so rho is evaluated at the chart point
// directly. Vertices listed in `singular` carry local behavior
// rho ~ h |z - p|^(2b); elements touching them are integrated with a
// power-weighted radial rule that is exact in the radial power.
struct DensityField {
  std::function<double(const Vec2&)> rho;
  struct SingularVertex {
    int vertex_id = -1;
    double order = 0.0;  // b > -1
  };
  std::vector<SingularVertex> singular;
};

// P1 stiffness/mass pair of the Friedrichs form on the mesh: conforming
// elements are bounded at cone vertices, which selects the Friedrichs
// extension among all self-adjoint ones.
struct DiscreteOperatorPair {
  SparseMat stiffness;  // K, symmetric psd, constants in the kernel
  SparseMat mass;       // M, symmetric pd (density-weighted if requested)
  int n = 0;
};

DiscreteOperatorPair assemble(const MeshLevel& mesh,
                              const std::optional<DensityField>& density = {});

}  // namespace conedet
