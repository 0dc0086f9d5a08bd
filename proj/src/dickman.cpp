#include "dlab/dickman.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "dlab/errors.hpp"

namespace dlab {

namespace {

constexpr double kMeanTailThreshold = 1e-6;
// Target Simpson panel width in s for the (1, 2] substitution integral.
constexpr double kSubPanelWidth = 1e-3;

void check_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::domain_error(fmt::format("theta = {} outside (0, 1]", theta));
}

template <typename F>
double simpson(F&& f, double a, double b, int panels) {
  const double w = (b - a) / (2 * panels);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i) acc += f(a + i * w) * (i % 2 ? 4.0 : 2.0);
  return acc * w / 3.0;
}

// Positive-weight composite rule over v[0..m] (m cells of width h):
// Simpson, closed by a 3/8 panel when m is odd, trapezoid for m = 1.
// Returns the sum without the last node and that node's weight.
struct PieceRule {
  double partial;
  double last_weight;
};

PieceRule piece_rule(const double* v, std::size_t m, double h) {
  if (m == 0) return {0.0, 0.0};
  if (m == 1) return {0.5 * h * v[0], 0.5 * h};
  const std::size_t simpson_cells = m % 2 ? m - 3 : m;
  double acc = 0.0;
  if (simpson_cells > 0) {
    double inner = v[0];
    for (std::size_t j = 1; j < simpson_cells; ++j) inner += v[j] * (j % 2 ? 4.0 : 2.0);
    acc = h / 3.0 * inner;
  }
  if (simpson_cells == m) return {acc, h / 3.0};
  const double* w = v + simpson_cells;
  acc += (simpson_cells > 0 ? h / 3.0 * v[simpson_cells] : 0.0) +
         3.0 * h / 8.0 * (w[0] + 3.0 * w[1] + 3.0 * w[2]);
  return {acc, 3.0 * h / 8.0};
}

// Integral over nodes [a, b] split at multiples of M.
double aligned_integral(std::span<const double> v, std::size_t a, std::size_t b, std::size_t M,
                        double h) {
  double total = 0.0;
  while (a < b) {
    const std::size_t next = std::min(b, (a / M + 1) * M);
    const auto r = piece_rule(v.data() + a, next - a, h);
    total += r.partial + r.last_weight * v[next];
    a = next;
  }
  return total;
}

}  // namespace

DickmanSolution solve_rho(double theta, double x_max, double h) {
  check_theta(theta);
  if (!(h > 0.0)) throw std::domain_error("step h must be positive");
  const double inv = 1.0 / h;
  const auto per_unit = static_cast<std::size_t>(std::llround(inv));
  if (per_unit < 2 || std::abs(static_cast<double>(per_unit) - inv) > 1e-9 * inv)
    throw std::domain_error(fmt::format("1/h = {} is not an integer >= 2", inv));
  if (!(x_max >= 1.0)) throw std::domain_error("x_max must be >= 1");

  const auto n = static_cast<std::size_t>(std::ceil(x_max * inv - 1e-9));
  const std::size_t M = per_unit;
  const double step = 1.0 / static_cast<double>(M);

  DickmanSolution sol;
  sol.theta_ = theta;
  sol.h_ = step;
  sol.per_unit_ = M;
  sol.norm_ = std::exp(-kEulerGamma * theta) / std::tgamma(theta);
  sol.rho_.assign(n + 1, 0.0);
  sol.cdf_.assign(n + 1, 0.0);
  auto& rho = sol.rho_;
  auto x_at = [&](std::size_t i) { return static_cast<double>(i) / static_cast<double>(M); };

  for (std::size_t i = 1; i <= std::min(M, n); ++i) rho[i] = std::pow(x_at(i), theta - 1.0);

  // (1, 2]: x^{1-theta} rho(x) = 1 - F((x-1)^theta), F(S) = int_0^S (1 + s^{1/theta})^{-theta} ds.
  const auto sub = [theta](double s) { return std::pow(1.0 + std::pow(s, 1.0 / theta), -theta); };
  double F = 0.0;
  double s_prev = 0.0;
  for (std::size_t i = M + 1; i <= std::min(2 * M, n); ++i) {
    const double s = std::pow(x_at(i - M), theta);
    const int panels = std::max(4, static_cast<int>(std::ceil((s - s_prev) / kSubPanelWidth)));
    F += simpson(sub, s_prev, s, panels);
    s_prev = s;
    rho[i] = std::pow(x_at(i), theta - 1.0) * (1.0 - F);
  }

  // Beyond 2: x rho(x) = theta * int_{x-1}^{x} rho. The part of the window in
  // (1, 2] is closed form, int_1^y rho = ((y-1)^theta + y rho(y) - 1) / theta.
  const auto c1 = [&](std::size_t j) {
    return (std::pow(x_at(j - M), theta) + x_at(j) * rho[j] - 1.0) / theta;
  };
  const double c1_two = n >= 2 * M ? c1(2 * M) : 0.0;
  for (std::size_t i = 2 * M + 1; i <= n; ++i) {
    std::size_t a = i - M;
    double known = 0.0;
    if (a < 2 * M) {
      known = c1_two - c1(a);
      a = 2 * M;
    }
    const std::size_t last = (i - 1) / M * M;
    known += aligned_integral(rho, a, last, M, step);
    const auto r = piece_rule(rho.data() + last, i - last, step);
    const double x = x_at(i);
    rho[i] = theta * (known + r.partial) / (x - theta * r.last_weight);
  }

  // CDF: analytic on [0, 1], then C(x) = C(x - 1) + x p(x) / theta.
  auto& cdf = sol.cdf_;
  for (std::size_t i = 1; i <= std::min(M, n); ++i)
    cdf[i] = sol.norm_ * std::pow(x_at(i), theta) / theta;
  for (std::size_t i = M + 1; i <= n; ++i) {
    cdf[i] = cdf[i - M] + sol.norm_ * x_at(i) * rho[i] / theta;
    // Rounding guard: tail increments drop below one ulp.
    cdf[i] = std::max(cdf[i], cdf[i - 1]);
  }
  return sol;
}

double DickmanSolution::rho(double x) const {
  if (x <= 0.0) return 0.0;
  if (x > x_max() * (1 + 1e-12))
    throw std::out_of_range(fmt::format("x = {} beyond x_max = {}", x, x_max()));
  if (x <= 1.0) return std::pow(x, theta_ - 1.0);
  const double pos = x / h_;
  const auto i = std::min(static_cast<std::size_t>(pos), rho_.size() - 2);
  const double t = pos - static_cast<double>(i);
  return rho_[i] + t * (rho_[i + 1] - rho_[i]);
}

double gd_density(const DickmanSolution& sol, double x) { return sol.norm_const() * sol.rho(x); }

double gd_cdf(const DickmanSolution& sol, double x) {
  if (x <= 0.0) return 0.0;
  if (x > sol.x_max() * (1 + 1e-12))
    throw std::out_of_range(fmt::format("x = {} beyond x_max = {}", x, sol.x_max()));
  const double theta = sol.theta();
  if (x <= 1.0) return sol.norm_const() * std::pow(x, theta) / theta;
  const double pos = x / sol.step();
  const auto cdf = sol.cdf_values();
  const auto i = std::min(static_cast<std::size_t>(pos), cdf.size() - 1);
  const double xi = sol.grid_x(i);
  if (x <= xi) return cdf[i];
  // Trapezoid over the partial cell, consistent with linear interpolation.
  return cdf[i] + 0.5 * (x - xi) * (gd_density(sol, xi) + gd_density(sol, x));
}

double gd_tail_estimate(const DickmanSolution& sol) {
  const auto rho = sol.rho_values();
  return sol.norm_const() * sol.x_max() * rho.back() / sol.theta();
}

double gd_mean(const DickmanSolution& sol) {
  const double tail = gd_tail_estimate(sol);
  if (tail > kMeanTailThreshold)
    throw accuracy_error(fmt::format(
        "x_max = {} leaves estimated tail mass {:.3g} > {:g}", sol.x_max(), tail,
        kMeanTailThreshold));
  const double theta = sol.theta();
  const double h = sol.step();
  const auto rho = sol.rho_values();
  const std::size_t M = static_cast<std::size_t>(std::llround(1.0 / h));
  const std::size_t n = rho.size() - 1;
  if (n <= M) return sol.norm_const() * std::pow(sol.x_max(), theta + 1.0) / (theta + 1.0);

  std::vector<double> g(n + 1);
  for (std::size_t i = M; i <= n; ++i) g[i] = sol.grid_x(i) * rho[i];
  // int_0^1 x * x^{theta-1} dx = 1 / (theta + 1)
  const double mean = 1.0 / (theta + 1.0) + aligned_integral(g, M, n, M, h);
  return sol.norm_const() * mean;
}

double mertens_constant(double theta) {
  check_theta(theta);
  return std::exp(kEulerGamma * theta) * std::tgamma(theta + 1.0);
}

}  // namespace dlab
