#include "hawkes_queue/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hawkes_queue/exp_convolution.hpp"

namespace hawkes_queue {

const char* to_string(MomentConvention c) {
  return c == MomentConvention::AsWritten ? "as-written" : "raw-moments";
}

double jump_moment(const JumpDist& jump, int k, MomentConvention convention) {
  if (convention == MomentConvention::RawMoments) return jump.raw_moment(k);
  return std::pow(jump.mean(), k);
}

bool near_critical(const ArrivalParams& p) {
  return std::abs(p.r - p.jump.mean()) < 1e-9 * p.r;
}

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("moments: t must be >= 0");
}

// Convolution of decaying exponentials with rates given in units of
// kappa = r - E[B]; the closed forms below are sums of these.
double conv(double kappa, double t, std::initializer_list<double> multiples) {
  std::array<double, 8> rates{};
  std::size_t n = 0;
  for (double m : multiples) rates[n++] = m * kappa;
  return exp_convolution(std::span<const double>(rates.data(), n), t);
}

// Published closed forms, evaluated literally.
namespace as_written {

double var_lambda(const ArrivalParams& p, double t) {
  const double b1 = p.jump.mean();
  const double k = p.r - b1;
  const double linf = p.r * p.lambda_star / k;
  return b1 * b1 / k *
         ((linf / 2 - p.lambda0) * std::exp(-2 * t * k) - (linf - p.lambda0) * std::exp(-t * k) +
          linf / 2);
}

double var_M(const ArrivalParams& p, double t) {
  const double r = p.r, ls = p.lambda_star, l0 = p.lambda0;
  const double b1 = p.jump.mean();
  const double k = r - b1;
  const double e1 = std::exp(-t * k), e2 = std::exp(-2 * t * k);
  return 1.0 / (k * k * k) *
         (r * r * r * ls * t + r * r * (l0 - r * ls / (2 * k)) * (1 - e2) -
          2 * r * b1 * k * (l0 - r * ls / k) * t * e1 +
          ((r * r - b1 * b1) * l0 - r * ls * (r * r - b1 * b1 + 2 * r * b1) / k) * (1 - e1));
}

double critical_var_M(const ArrivalParams& p, double t) {
  const double r = p.r, ls = p.lambda_star, l0 = p.lambda0;
  return l0 * t + r * (l0 + ls / 2) * t * t + r * r / 3 * (l0 + ls) * t * t * t +
         r * r * ls / 6 * (r + 3 * ls) * t * t * t * t;
}

}  // namespace as_written

}  // namespace

double mean_lambda(const ArrivalParams& p, double t) {
  check_time(t);
  if (near_critical(p)) return p.lambda0 + p.r * p.lambda_star * t;
  const double k = p.r - p.jump.mean();
  // lambda0 e^{-kt} + r lambda* (1 - e^{-kt}) / k
  return p.lambda0 * conv(k, t, {1}) + p.r * p.lambda_star * conv(k, t, {0, 1});
}

double mean_M(const ArrivalParams& p, double t) {
  check_time(t);
  if (near_critical(p)) return p.lambda0 * t + p.r * p.lambda_star * t * t / 2;
  const double k = p.r - p.jump.mean();
  return p.lambda0 * conv(k, t, {0, 1}) + p.r * p.lambda_star * conv(k, t, {0, 0, 1});
}

double var_lambda(const ArrivalParams& p, double t, MomentConvention convention) {
  check_time(t);
  const double b2 = jump_moment(p.jump, 2, convention);
  const double rl = p.r * p.lambda_star;
  if (near_critical(p)) return b2 * (p.lambda0 * t + rl * t * t / 2);
  if (convention == MomentConvention::AsWritten) return as_written::var_lambda(p, t);
  const double k = p.r - p.jump.mean();
  // Var' = -2k Var + E[B^2] E[lambda]
  return b2 * (p.lambda0 * conv(k, t, {2, 1}) + rl * conv(k, t, {2, 1, 0}));
}

double var_M(const ArrivalParams& p, double t, MomentConvention convention) {
  check_time(t);
  const double l0 = p.lambda0;
  const double rl = p.r * p.lambda_star;
  if (convention == MomentConvention::AsWritten) {
    return near_critical(p) ? as_written::critical_var_M(p, t) : as_written::var_M(p, t);
  }
  const double b1 = p.jump.mean();
  const double b2 = p.jump.raw_moment(2);
  if (near_critical(p)) {
    const double r = p.r, ls = p.lambda_star;
    return l0 * t + r * (l0 + ls / 2) * t * t + (b2 * l0 + r * r * ls) / 3 * t * t * t +
           b2 * r * ls / 12 * t * t * t * t;
  }
  const double k = p.r - b1;
  // Var[M]' = E[lambda] + 2 Cov(lambda, M),  Cov' = -k Cov + Var[lambda] + E[B] E[lambda].
  return l0 * conv(k, t, {0, 1}) + rl * conv(k, t, {0, 0, 1}) +
         2 * b2 * (l0 * conv(k, t, {0, 1, 1, 2}) + rl * conv(k, t, {0, 0, 1, 1, 2})) +
         2 * b1 * (l0 * conv(k, t, {0, 1, 1}) + rl * conv(k, t, {0, 0, 1, 1}));
}

MomentReport moment_report(const ArrivalParams& p, double t, MomentConvention convention) {
  return {t, mean_lambda(p, t), var_lambda(p, t, convention), mean_M(p, t),
          var_M(p, t, convention), convention};
}

StationaryMoments stationary_lambda(const ArrivalParams& p, MomentConvention convention) {
  p.validate();
  if (!p.stable()) throw DomainError("stationary limits need E[B] < r");
  const double k = p.r - p.jump.mean();
  const double rl = p.r * p.lambda_star;
  return {rl / k, rl * jump_moment(p.jump, 2, convention) / (2 * k * k)};
}

// ---------------------------------------------------------------------------

MomentOdeResult::MomentOdeResult(int n_max, std::vector<double> times,
                                 std::vector<std::vector<double>> values)
    : n_max_(n_max), times_(std::move(times)), values_(std::move(values)) {}

std::size_t MomentOdeResult::index(int a, int b) {
  const auto d = static_cast<std::size_t>(a + b);
  return d * (d + 1) / 2 + static_cast<std::size_t>(b);
}

std::size_t MomentOdeResult::size(int n_max) {
  const auto n = static_cast<std::size_t>(n_max);
  return (n + 1) * (n + 2) / 2;
}

double MomentOdeResult::moment(int a, int b, std::size_t time_index) const {
  if (a < 0 || b < 0 || a + b > n_max_) throw DomainError("moment order out of range");
  return values_.at(time_index).at(index(a, b));
}

double MomentOdeResult::var_lambda(std::size_t i) const {
  const double m = moment(1, 0, i);
  return moment(2, 0, i) - m * m;
}

double MomentOdeResult::var_M(std::size_t i) const {
  const double m = moment(0, 1, i);
  return moment(0, 2, i) - m * m;
}

MomentOdeResult moment_ode_solve(const ArrivalParams& p, int n_max, std::span<const double> t_grid,
                                 MomentConvention convention,
                                 const ode::AdaptiveOptions& options) {
  p.validate();
  if (n_max < 1 || n_max > 4) throw DomainError("moment_ode_solve: n_max must be in 1..4");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    check_time(t_grid[i]);
    if (i > 0 && t_grid[i] < t_grid[i - 1]) {
      throw DomainError("moment_ode_solve: t_grid must be non-decreasing");
    }
  }

  const std::size_t dim = MomentOdeResult::size(n_max);
  std::array<double, 5> bk{1.0};
  for (int k = 1; k <= n_max; ++k) bk[k] = jump_moment(p.jump, k, convention);
  std::array<std::array<double, 5>, 5> binom{};
  for (int n = 0; n <= 4; ++n) {
    binom[n][0] = 1.0;
    for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0.0);
  }

  const double r = p.r;
  const double rl = p.r * p.lambda_star;
  auto rhs = [=](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = 0.0;
    for (int d = 1; d <= n_max; ++d) {
      for (int b = 0; b <= d; ++b) {
        const int a = d - b;
        double v = 0.0;
        if (a > 0) {
          v += a * rl * y[MomentOdeResult::index(a - 1, b)];
          v -= a * r * y[MomentOdeResult::index(a, b)];
        }
        // Arrival jumps: E[lambda ((lambda + B)^a (M + 1)^b - lambda^a M^b)].
        for (int i = 0; i <= a; ++i) {
          for (int j = 0; j <= b; ++j) {
            if (i == a && j == b) continue;
            v += binom[a][i] * binom[b][j] * bk[a - i] * y[MomentOdeResult::index(i + 1, j)];
          }
        }
        dy[MomentOdeResult::index(a, b)] = v;
      }
    }
  };

  ode::State y(dim, 0.0);
  for (int a = 0; a <= n_max; ++a) y[MomentOdeResult::index(a, 0)] = std::pow(p.lambda0, a);

  std::vector<double> times(t_grid.begin(), t_grid.end());
  std::vector<std::vector<double>> values;
  values.reserve(times.size());
  double t = 0.0;
  for (double target : times) {
    if (target > t) {
      ode::OdeProblem problem{rhs, y, t, target};
      y = ode::integrate_adaptive(problem, options).final_state();
      t = target;
    }
    values.push_back(y);
  }
  return {n_max, std::move(times), std::move(values)};
}

}  // namespace hawkes_queue
