#pragma once

#include <span>
#include <vector>

#include "carleson/measure.h"
#include "carleson/spectral.h"

namespace carleson {

/// u = f + g with f the H_μ part (degree ≤ N) and g the L¹ part on the grid.
struct Decomposition {
  CoeffVector f;
  GridFunction g;
  double residual = 0.0;  ///< max_k |f(θ_k) + g_k - u(θ_k)|
};

/// Two-sided certificate for the discretized norm ‖u‖_{H_μ + L¹}:
/// `upper` is the objective at `witness`, `lower` the dual value at `dual_witness`.
struct CertifiedNorm {
  double upper = 0.0;
  double lower = 0.0;
  double gap = 0.0;
  long iterations = 0;
  bool converged = true;
  Decomposition witness;
  GridFunction dual_witness;  ///< ‖φ‖_∞ ≤ 1 and dual H_μ norm ≤ 1
};

struct SumNormOptions {
  std::size_t m = 512;
  double tol = 1e-5;  ///< relative gap target: upper - lower ≤ tol · upper
  long max_iterations = 200000;
  int check_every = 32;
};

/// Certified ‖u‖_{H_μ(𝕋)+L¹(𝕋)} over decompositions with f of degree ≤ N,
/// the L¹ term measured on the M-point grid. Restarted primal-dual hybrid
/// gradient iteration; deterministic given its inputs.
CertifiedNorm sum_norm(const CoeffVector& u, const RadialMeasure& mu, const SumNormOptions& options = {});
/// Same with moments σ_0..σ_N supplied.
CertifiedNorm sum_norm(const CoeffVector& u, std::span<const double> sigma, const SumNormOptions& options = {});

/// (Σ_{|n|≤N} |φ̂(n)|² / (2πσ_{|n|}))^{1/2}, N = n_max of the coefficient vector.
double dual_hmu_norm(const CoeffVector& phi_hat, std::span<const double> sigma);

/// Weak-duality lower bound |(1/M) Σ u(θ_k) conj φ(θ_k)| after rescaling φ by
/// 1/max(‖φ‖_∞, dual H_μ norm). Returns 0 for φ = 0.
double dual_bound(const CoeffVector& u, const GridFunction& phi, const RadialMeasure& mu);
double dual_bound(const CoeffVector& u, const GridFunction& phi, std::span<const double> sigma);

}  // namespace carleson
