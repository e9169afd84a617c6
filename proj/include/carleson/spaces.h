#pragma once

#include <span>
#include <string>
#include <vector>

#include "carleson/measure.h"
#include "carleson/spectral.h"

namespace carleson {

enum class NormMethod { ClosedForm, Quadrature, GridSup };

struct NormReport {
  double value = 0.0;  ///< may be +∞
  NormMethod method = NormMethod::ClosedForm;
  double est_error = 0.0;
};

std::string to_string(NormMethod method);

/// (Σ |c_n|²)^{1/2}, the L²(𝕋) norm with the (1/2π) dθ normalization.
double l2_norm(const CoeffVector& u);

/// (1/M) Σ |samples[k]|: boundary L¹ norm with weight 1/2π, which for a
/// trigonometric polynomial equals its h¹(𝔻) norm.
double l1_norm(const GridFunction& g);

/// (2π Σ |c_n|² σ_{|n|})^{1/2}; also the B²(𝔻, μ) norm of the harmonic extension.
double hmu_norm(const CoeffVector& u, const RadialMeasure& mu);
/// Same with precomputed moments σ_0..σ_N (at least n_max + 1 entries).
double hmu_norm(const CoeffVector& u, std::span<const double> sigma);

/// A²(𝔻, μ) norm of an analytic polynomial; throws on negative frequencies.
double a2_norm(const CoeffVector& u, const RadialMeasure& mu);

/// Samples of w_σ(e^{iθ}) = 2i ∫ r² sin θ / |r² - e^{-iθ}|² σ(dr) on the M-point grid.
/// Emits a warning on std::clog when σ fails the Carleson test (w_σ is then unbounded).
GridFunction w_sigma(const RadialMeasure& mu, std::size_t m);
/// Single point of w_σ.
cplx w_sigma_at(const RadialMeasure& mu, double theta);

/// M_μ = (∫_𝔻 μ(dz)/(1 - |z|²))^{1/2}; +∞ propagates.
double cauchy_kernel_bound(const RadialMeasure& mu);

/// 2048 points in (0, π] clustered toward θ = 0.
std::vector<double> default_theta_grid();

/// ∫ sin θ / ((r - cos θ)² + sin² θ) α(dr).
double poisson_integral(const RadialMeasure& alpha, double theta);

/// sup over θ ∈ (0, π) of poisson_integral: grid maximum refined by a
/// golden-section search, or +∞ for boundary pieces with exponent p < 0.
double poisson_sup(const RadialMeasure& alpha, std::span<const double> theta_grid);
double poisson_sup(const RadialMeasure& alpha);

}  // namespace carleson
