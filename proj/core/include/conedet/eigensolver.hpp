#pragma once

#include <vector>

#include "conedet/fem.hpp"

namespace conedet {

// Ascending generalized eigenvalues of (K, M) with per-value error estimates
// (populated by Richardson extrapolation across mesh levels, zero otherwise).
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<double> error_estimate;
  int mesh_level = -1;
  int dofs = 0;

  int count() const { return static_cast<int>(eigenvalues.size()); }
  double max_eigenvalue() const {
    return eigenvalues.empty() ? 0.0 : eigenvalues.back();
  }
};

struct EigenOptions {
  int dense_threshold = 2200;  // use a dense solve for n below this
  double residual_tol = 1e-9;  // relative Ritz residual target (Lanczos)
  int max_extra_steps = 2000;
};

// Smallest `count` eigenvalues of K x = lambda M x. Dense path for small
// problems, shift-invert Lanczos (full reorthogonalization, deterministic
// start) otherwise. Results are deterministic for fixed inputs.
Spectrum eigenvalues(const DiscreteOperatorPair& pair, int count,
                     const EigenOptions& opts = {});

// lambda_fine + (lambda_fine - lambda_coarse)/3 per index, the O(h^2)
// elimination for nested P1 meshes; error estimates carry the correction
// size.
Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine);

}  // namespace conedet
