#pragma once

#include <complex>
#include <span>
#include <vector>

namespace oracle {

/// Revised simplex for  max hᵀλ  s.t.  Aλ = c, λ ≥ 0, with columns added between solves.
class DualLp {
 public:
  explicit DualLp(std::vector<double> c);

  void add_column(std::vector<double> column, double h);
  /// Solves from the current basis; returns the optimal value.
  double solve();
  /// Simplex multipliers of the last solve: the optimal point of  min cᵀz  s.t. Aᵀz ≥ h.
  const std::vector<double>& multipliers() const { return pi_; }
  std::size_t columns() const { return cols_.size(); }

 private:
  void refactor();
  bool phase(bool first);
  void pivot(std::size_t row, std::size_t entering, const std::vector<double>& alpha);
  double cost(std::size_t j, bool first) const;
  const std::vector<double>& column(std::size_t j) const;

  std::size_t n_;
  std::vector<double> c_;
  std::vector<std::vector<double>> cols_;
  std::vector<double> h_;
  std::vector<std::vector<double>> unit_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<double>> binv_;
  std::vector<double> xb_;
  std::vector<double> pi_;
  bool feasible_ = false;
  int since_refactor_ = 0;
};

struct SumNormOracle {
  double lower = 0.0;
  double upper = 0.0;
  int iterations = 0;
};

/// min_f ‖f‖_{H_μ} + (1/M)Σ|u(θ_k) - f(θ_k)| over f of degree ≤ N, by Kelley cutting planes.
/// `u` holds c_{-N..N}; `sigma` holds σ_0..σ_N.
SumNormOracle sum_norm_lp(std::span<const std::complex<double>> u, std::span<const double> sigma, int m,
                          double rel_tol = 1e-9, int max_iterations = 20000);

}  // namespace oracle
