#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "carleson/measure.h"

namespace carleson {

using cplx = std::complex<double>;

/// Truncated harmonic Fourier series Σ_{|n|≤N} c_n e_n, where e_n(z) = z^n for
/// n ≥ 0 and z̄^{|n|} for n < 0. On the circle e_n = e^{inθ}.
class CoeffVector {
 public:
  CoeffVector() : CoeffVector(0) {}
  explicit CoeffVector(int n_max);
  CoeffVector(int n_max, std::vector<cplx> coeffs);

  /// c_n = 1 at index n, zero elsewhere; degree max(|n|, n_max).
  static CoeffVector basis(int n, int n_max = 0);

  int n_max() const { return n_max_; }
  std::size_t size() const { return coeffs_.size(); }

  /// c_n for |n| ≤ N; zero outside.
  cplx operator[](int n) const;
  cplx& at(int n);

  std::span<const cplx> data() const { return coeffs_; }
  std::span<cplx> data() { return coeffs_; }

  /// Zero-pads (or truncates) to a new degree.
  CoeffVector resized(int n_max) const;

  CoeffVector& operator+=(const CoeffVector& other);
  CoeffVector& operator-=(const CoeffVector& other);
  CoeffVector& operator*=(cplx scale);
  friend CoeffVector operator+(CoeffVector lhs, const CoeffVector& rhs) { return lhs += rhs; }
  friend CoeffVector operator-(CoeffVector lhs, const CoeffVector& rhs) { return lhs -= rhs; }
  friend CoeffVector operator*(cplx scale, CoeffVector v) { return v *= scale; }
  friend CoeffVector operator*(CoeffVector v, cplx scale) { return v *= scale; }

  bool is_zero() const;
  /// True when every negative-frequency coefficient vanishes.
  bool is_analytic() const;

 private:
  int n_max_;
  std::vector<cplx> coeffs_;  // index n + N
};

/// Samples on θ_k = 2πk/M, k = 0..M-1, each carrying quadrature weight 2π/M.
struct GridFunction {
  std::vector<cplx> samples;

  std::size_t m() const { return samples.size(); }
  static double node(std::size_t k, std::size_t m);
};

/// FFTW plans for transforms of a fixed length M.
class SpectralPlan {
 public:
  explicit SpectralPlan(std::size_t m);
  ~SpectralPlan();
  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  std::size_t m() const { return m_; }

  /// samples[k] = Σ_n c_n e^{inθ_k}; requires M ≥ 2N + 1.
  void synthesize(const CoeffVector& u, std::span<cplx> out) const;
  /// c_n = (1/M) Σ_k samples[k] e^{-inθ_k} for |n| ≤ N; requires N ≤ (M-1)/2.
  void analyze(std::span<const cplx> samples, CoeffVector& out) const;

 private:
  std::size_t m_;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// Shared immutable plan for length M.
std::shared_ptr<const SpectralPlan> plan_for(std::size_t m);

/// Direct O(M·N) transforms, kept as the reference path for the fast one.
GridFunction synthesize_direct(const CoeffVector& u, std::size_t m);
CoeffVector analyze_direct(const GridFunction& g, int n_max);

GridFunction synthesize(const CoeffVector& u, std::size_t m);
CoeffVector analyze(const GridFunction& g, int n_max);

/// Σ c_n e_n(z) for |z| < 1.
cplx evaluate(const CoeffVector& u, cplx z);

/// c_n ↦ r^{|n|} c_n.
CoeffVector poisson_dilate(const CoeffVector& u, double r);
/// c_n ↦ sgn(n) c_n with sgn(0) = 0.
CoeffVector hilbert(const CoeffVector& u);
/// Drops every c_n with n < 0.
CoeffVector analytic_projection(const CoeffVector& u);

/// Symbol a(n) on [-N, N], stored at index n + N.
using Symbol = std::vector<cplx>;

Symbol make_symbol(int n_max, const std::function<cplx(int)>& a);
/// Pointwise coefficient product; the symbol must cover [-N, N].
CoeffVector multiplier(const CoeffVector& u, const Symbol& a);

/// μ-adapted multiplier pair: |a(n)|² b(n) sgn(n) = (2πσ_{|n|})^{-1} on 0 < |n| ≤ N.
struct AdaptedPair {
  int n_max = 0;
  Symbol a;
  Symbol b;
  double c_b = 1.0;
};

/// Default b(n) = sgn(n), b(0) = 0.
double sign_choice(int n);

/// Builds a(n) = (2πσ_{|n|} b(n) sgn(n))^{-1/2} for n ≠ 0 and a(0) = (2πσ_0)^{-1/2}.
/// Rejects b with b(n) sgn(n) ≤ 0 on ℤ*, non-finite b, and non-positive σ_0.
AdaptedPair adapted_pair(const RadialMeasure& mu, int n_max,
                         const std::function<double(int)>& b_choice = sign_choice);

/// The symbol of 𝒜_μ: n ↦ (2πσ_{|n|})^{-1/2}.
Symbol bergman_symbol(const RadialMeasure& mu, int n_max);

}  // namespace carleson
