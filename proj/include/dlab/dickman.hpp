#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dlab {

/// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

inline constexpr double kDefaultDickmanStep = 1e-3;
inline constexpr double kDefaultDickmanXMax = 20.0;

/// Generalized Dickman function rho_theta tabulated on {0, h, 2h, ..., x_max},
/// together with the GD(theta) normalization and cumulative mass.
///
/// rho_theta = 0 for x <= 0, x^{theta-1} on (0, 1], and for x > 1 solves
///   x rho'(x) + (1 - theta) rho(x) + theta rho(x - 1) = 0.
/// The density of GD(theta) is e^{-gamma theta} / Gamma(theta) * rho_theta.
class DickmanSolution {
 public:
  double theta() const { return theta_; }
  double step() const { return h_; }
  double x_max() const { return h_ * static_cast<double>(rho_.size() - 1); }
  double norm_const() const { return norm_; }
  double gamma_em() const { return kEulerGamma; }

  std::size_t grid_size() const { return rho_.size(); }
  double grid_x(std::size_t i) const { return h_ * static_cast<double>(i); }
  /// rho at grid points; entry 0 is rho(0) = 0.
  std::span<const double> rho_values() const { return rho_; }
  /// Cumulative GD mass at grid points.
  std::span<const double> cdf_values() const { return cdf_; }

  /// rho_theta(x), closed form on (0, 1], linear interpolation beyond.
  /// Throws std::out_of_range for x > x_max.
  double rho(double x) const;

 private:
  friend DickmanSolution solve_rho(double theta, double x_max, double h);

  double theta_ = 1.0;
  double h_ = kDefaultDickmanStep;
  double norm_ = 0.0;
  std::size_t per_unit_ = 0;  // grid points per unit length, 1/h
  std::vector<double> rho_;
  std::vector<double> cdf_;
};

/// On (1, 2] uses u = x^{1-theta} rho, u' = -theta x^{-theta} rho(x - 1),
/// with s = (x-1)^theta removing the endpoint singularity. Beyond 2 uses
///   x rho(x) = theta * integral_{x-1}^{x} rho,
/// with positive-weight composite rules split at integer nodes.
///
/// Requires theta in (0, 1], x_max >= 1 and 1/h a positive integer (>= 2).
/// x_max is rounded up to a multiple of h.
DickmanSolution solve_rho(double theta, double x_max = kDefaultDickmanXMax,
                          double h = kDefaultDickmanStep);

/// GD(theta) density; 0 for x <= 0.
double gd_density(const DickmanSolution& sol, double x);

/// GD(theta) distribution function. Exact on [0, 1] (the mass there is
/// x^theta / theta times the normalization); beyond 1 built from the
/// window identity above.
double gd_cdf(const DickmanSolution& sol, double x);

/// Upper estimate of the GD mass beyond x_max, from the identity
/// integral_{x-1}^{x} rho = x rho(x) / theta and monotone decay of rho.
double gd_tail_estimate(const DickmanSolution& sol);

/// Mean of GD(theta) over [0, x_max]. Throws accuracy_error when the tail
/// estimate exceeds 1e-6.
double gd_mean(const DickmanSolution& sol);

/// e^{gamma theta} Gamma(theta + 1) for theta in (0, 1].
double mertens_constant(double theta);

}  // namespace dlab
