#include "conedet/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "conedet/errors.hpp"

namespace conedet {

namespace {

Spectrum dense_solve(const DiscreteOperatorPair& pair, int count) {
  Eigen::MatrixXd K = Eigen::MatrixXd(pair.stiffness);
  Eigen::MatrixXd M = Eigen::MatrixXd(pair.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      K, M, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  require(solver.info() == Eigen::Success, ErrorCode::SolverBreakdown,
          "dense generalized eigensolver failed");
  Spectrum spec;
  spec.dofs = pair.n;
  spec.eigenvalues.assign(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + count);
  spec.error_estimate.assign(count, 0.0);
  return spec;
}

// Shift-invert Lanczos on A = (K + M)^{-1} M, self-adjoint in the M inner
// product; mu = 1/(lambda + 1) maps the smallest lambda to the largest mu.
// Full reorthogonalization, deterministic start vector.
Spectrum lanczos_solve(const DiscreteOperatorPair& pair, int count,
                       const EigenOptions& opts) {
  const int n = pair.n;
  SparseMat S = pair.stiffness + pair.mass;
  Eigen::SimplicialLLT<SparseMat> chol(S);
  require(chol.info() == Eigen::Success, ErrorCode::SolverBreakdown,
          "Cholesky factorization of K + M failed");

  const int max_steps = std::min(
      n, count + std::max(80, count / 2) + opts.max_extra_steps);
  const int check_every = 40;

  Eigen::MatrixXd V(n, std::min(max_steps, count + std::max(80, count / 2)) + 8);
  std::vector<double> alpha, beta;

  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 7.0 * i);
  v /= std::sqrt(v.dot(pair.mass * v));

  auto m_reorth = [&](Eigen::VectorXd& w, int upto) {
    for (int pass = 0; pass < 2; ++pass) {
      Eigen::VectorXd Mw = pair.mass * w;
      Eigen::VectorXd coeff = V.leftCols(upto).transpose() * Mw;
      w.noalias() -= V.leftCols(upto) * coeff;
    }
  };

  std::vector<double> top_ritz;  // descending in mu
  auto converged_count = [&](int steps, double beta_bound) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(steps, steps);
    for (int i = 0; i < steps; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < steps) {
        T(i, i + 1) = beta[i];
        T(i + 1, i) = beta[i];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const auto& mu = es.eigenvalues();
    const auto& Sv = es.eigenvectors();
    top_ritz.clear();
    for (int i = steps - 1; i >= 0 &&
         static_cast<int>(top_ritz.size()) < count; --i) {
      const double resid = std::abs(beta_bound * Sv(steps - 1, i));
      if (resid > opts.residual_tol * std::max(std::abs(mu[i]), 1e-8)) break;
      top_ritz.push_back(mu[i]);
    }
    return static_cast<int>(top_ritz.size());
  };

  int steps = 0;
  double beta_last = 0.0;
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n);
  bool done = false;
  while (steps < max_steps && !done) {
    if (steps + 1 > V.cols()) {
      Eigen::MatrixXd V2(n, V.cols() + 256);
      V2.leftCols(V.cols()) = V;
      V.swap(V2);
    }
    V.col(steps) = v;
    Eigen::VectorXd w = chol.solve(pair.mass * v);
    alpha.push_back(w.dot(pair.mass * v));
    w.noalias() -= alpha.back() * v;
    if (steps > 0) w.noalias() -= beta_last * v_prev;
    m_reorth(w, steps + 1);
    const double b = std::sqrt(std::max(0.0, w.dot(pair.mass * w)));
    ++steps;

    const bool breakdown = b < 1e-14;
    if (breakdown || steps % check_every == 0 || steps == max_steps)
      done = converged_count(steps, breakdown ? 0.0 : b) >= count || breakdown;

    if (!breakdown) {
      beta.push_back(b);
      beta_last = b;
      v_prev = V.col(steps - 1);
      v = w / b;
    }
  }
  require(static_cast<int>(top_ritz.size()) >= count, ErrorCode::SolverBreakdown,
          "Lanczos did not converge the requested eigenvalue count");

  Spectrum spec;
  spec.dofs = n;
  for (int i = 0; i < count; ++i) {
    const double mu = top_ritz[i];
    require(mu > 0.0, ErrorCode::SolverBreakdown, "nonpositive Ritz value");
    spec.eigenvalues.push_back(1.0 / mu - 1.0);
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
  spec.error_estimate.assign(count, 0.0);
  return spec;
}

}  // namespace

Spectrum eigenvalues(const DiscreteOperatorPair& pair, int count,
                     const EigenOptions& opts) {
  require(count >= 1 && count <= pair.n, ErrorCode::InvalidArgument,
          "eigenvalue count out of range");
  Spectrum spec = (pair.n <= opts.dense_threshold)
                      ? dense_solve(pair, count)
                      : lanczos_solve(pair, count, opts);
  require(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()),
          ErrorCode::SolverBreakdown, "spectrum not ascending");
  for (double l : spec.eigenvalues)
    require(std::isfinite(l), ErrorCode::SolverBreakdown, "non-finite eigenvalue");
  // lambda_0 is the constant mode: clamp solver noise at zero, fail loudly if
  // it is genuinely away from zero.
  if (spec.count() >= 2) {
    require(std::abs(spec.eigenvalues[0]) <= 1e-10 * std::abs(spec.eigenvalues[1]),
            ErrorCode::SolverBreakdown,
            "constant mode not resolved as a zero eigenvalue");
    spec.eigenvalues[0] = std::max(spec.eigenvalues[0], 0.0);
  }
  return spec;
}

Spectrum richardson_extrapolate(const Spectrum& coarse, const Spectrum& fine) {
  require(coarse.count() >= 1 && fine.count() >= 1, ErrorCode::InvalidArgument,
          "empty spectra");
  const int k = std::min(coarse.count(), fine.count());
  Spectrum out;
  out.mesh_level = fine.mesh_level;
  out.dofs = fine.dofs;
  out.eigenvalues.resize(k);
  out.error_estimate.resize(k);
  for (int i = 0; i < k; ++i) {
    const double d = fine.eigenvalues[i] - coarse.eigenvalues[i];
    out.eigenvalues[i] = fine.eigenvalues[i] + d / 3.0;
    out.error_estimate[i] = std::abs(d) / 3.0;
  }
  // extrapolation can perturb near-degenerate pairs out of order
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  if (!out.eigenvalues.empty() && out.eigenvalues[0] < 0.0 &&
      out.eigenvalues[0] > -1e-12)
    out.eigenvalues[0] = 0.0;
  return out;
}

}  // namespace conedet
