#include "hawkes_queue/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hawkes_queue::ode {

namespace {

std::string describe(const std::string& what, double t, const State& y) {
  std::ostringstream out;
  out.precision(17);
  out << what << " at t=" << t << ", y=(";
  for (std::size_t i = 0; i < y.size(); ++i) out << (i ? ", " : "") << y[i];
  out << ")";
  return out.str();
}

/// Evaluates the right-hand side and aborts on any non-finite component.
class CheckedRhs {
 public:
  explicit CheckedRhs(const Rhs& f) : f_(f) {}

  void operator()(double t, const State& y, State& dy) const {
    f_(t, y, dy);
    for (double v : dy) {
      if (!std::isfinite(v)) throw IntegrationError("non-finite right-hand side", t, y);
    }
  }

 private:
  const Rhs& f_;
};

void check_problem(const OdeProblem& p) {
  if (!p.rhs) throw DomainError("ode: missing right-hand side");
  if (p.y0.empty()) throw DomainError("ode: dimension must be positive");
  if (!(p.t_end >= p.t_start)) throw DomainError("ode: t_end must be >= t_start");
}

// y_out = y + h * sum(coef[i] * k[i])
void combine(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms,
             State& out) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    double acc = 0.0;
    for (const auto& [c, k] : terms) acc += c * (*k)[i];
    out[i] = y[i] + h * acc;
  }
}

}  // namespace

IntegrationError::IntegrationError(const std::string& what, double t, State y)
    : NumericalError(describe(what, t, y)), t_(t), y_(std::move(y)) {}

OdeSolution::OdeSolution(std::vector<double> times, std::vector<State> states,
                         std::vector<State> derivatives, OdeStats stats)
    : times_(std::move(times)),
      states_(std::move(states)),
      derivatives_(std::move(derivatives)),
      stats_(stats) {}

State OdeSolution::at(double t) const {
  if (times_.empty()) throw DomainError("ode: empty solution");
  if (t <= times_.front()) return states_.front();
  if (t >= times_.back()) return states_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double h = times_[k + 1] - times_[k];
  const double x = (t - times_[k]) / h;
  const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
  const double h10 = x * (1 - x) * (1 - x);
  const double h01 = x * x * (3 - 2 * x);
  const double h11 = x * x * (x - 1);
  State y(states_[k].size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = h00 * states_[k][i] + h10 * h * derivatives_[k][i] + h01 * states_[k + 1][i] +
           h11 * h * derivatives_[k + 1][i];
  }
  return y;
}

OdeSolution integrate_rk4(const OdeProblem& p, double step) {
  check_problem(p);
  if (!(step > 0.0)) throw DomainError("ode: step must be > 0");
  const CheckedRhs f(p.rhs);
  const std::size_t n = p.dimension();

  std::vector<double> times{p.t_start};
  std::vector<State> states{p.y0};
  State k1(n), k2(n), k3(n), k4(n), tmp(n);
  f(p.t_start, p.y0, k1);
  std::vector<State> derivs{k1};
  OdeStats stats;

  // Node times come from the index so rounding never accumulates; a
  // remainder below 1e-9 of a step is folded into the last full step.
  const double span = p.t_end - p.t_start;
  auto nodes = static_cast<std::size_t>(std::floor(span / step));
  if (span - static_cast<double>(nodes) * step > 1e-9 * step) ++nodes;
  State y = p.y0;
  double t = p.t_start;
  for (std::size_t i = 1; i <= nodes; ++i) {
    const double t_next = i == nodes ? p.t_end : p.t_start + static_cast<double>(i) * step;
    const double h = t_next - t;
    combine(y, h / 2, {{1.0, &k1}}, tmp);
    f(t + h / 2, tmp, k2);
    combine(y, h / 2, {{1.0, &k2}}, tmp);
    f(t + h / 2, tmp, k3);
    combine(y, h, {{1.0, &k3}}, tmp);
    f(t + h, tmp, k4);
    combine(y, h / 6, {{1.0, &k1}, {2.0, &k2}, {2.0, &k3}, {1.0, &k4}}, y);
    t = t_next;
    f(t, y, k1);
    times.push_back(t);
    states.push_back(y);
    derivs.push_back(k1);
    ++stats.steps;
  }
  return {std::move(times), std::move(states), std::move(derivs), stats};
}

OdeSolution integrate_adaptive(const OdeProblem& p, double rel_tol, double abs_tol) {
  AdaptiveOptions options;
  options.rel_tol = rel_tol;
  options.abs_tol = abs_tol;
  return integrate_adaptive(p, options);
}

OdeSolution integrate_adaptive(const OdeProblem& p, const AdaptiveOptions& opt) {
  check_problem(p);
  if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0)) {
    throw DomainError("ode: tolerances must be > 0");
  }
  const CheckedRhs f(p.rhs);
  const std::size_t n = p.dimension();

  // Dormand-Prince 5(4) tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  constexpr double kSafety = 0.9, kFacMin = 0.2, kFacMax = 10.0;
  constexpr double kBeta = 0.04, kAlpha = 0.2 - 0.75 * kBeta;

  State y = p.y0, y_new(n), tmp(n);
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double t = p.t_start;
  f(t, y, k1);

  std::vector<double> times{t};
  std::vector<State> states{y};
  std::vector<State> derivs{k1};
  OdeStats stats;

  const double span = p.t_end - p.t_start;
  if (span == 0.0) return {std::move(times), std::move(states), std::move(derivs), stats};

  auto scaled_norm = [&](const State& v, const State& ref) {
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * std::abs(ref[i]);
      d += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(d / static_cast<double>(n));
  };

  double h = opt.initial_step;
  if (!(h > 0.0)) {
    const double d0 = scaled_norm(y, y);
    const double d1 = scaled_norm(k1, y);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, span);
  }

  double err_old = 1e-4;
  bool last_rejected = false;
  const double h_min = 1e-14 * span;

  while (t < p.t_end) {
    if (stats.steps + stats.rejected_steps >= opt.max_steps) {
      throw IntegrationError("step budget exhausted", t, y);
    }
    if (h < h_min) throw IntegrationError("step underflow (stiff or singular problem)", t, y);
    bool final_step = false;
    if (t + h >= p.t_end) {
      h = p.t_end - t;
      final_step = true;
    }

    combine(y, h, {{a21, &k1}}, tmp);
    f(t + c2 * h, tmp, k2);
    combine(y, h, {{a31, &k1}, {a32, &k2}}, tmp);
    f(t + c3 * h, tmp, k3);
    combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, tmp);
    f(t + c4 * h, tmp, k4);
    combine(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, tmp);
    f(t + c5 * h, tmp, k5);
    combine(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, tmp);
    f(t + h, tmp, k6);
    combine(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}}, y_new);
    const double t_new = final_step ? p.t_end : t + h;
    f(t_new, y_new, k7);

    State err_vec(n), ref(n);
    for (std::size_t i = 0; i < n; ++i) {
      err_vec[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
      ref[i] = std::max(std::abs(y[i]), std::abs(y_new[i]));
    }
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opt.abs_tol + opt.rel_tol * ref[i];
      err += (err_vec[i] / sc) * (err_vec[i] / sc);
    }
    err = std::sqrt(err / static_cast<double>(n));
    if (!std::isfinite(err)) throw IntegrationError("non-finite error estimate", t, y);

    if (err <= 1.0) {
      const double e = std::max(err, 1e-10);
      double fac = kSafety * std::pow(e, -kAlpha) * std::pow(err_old, kBeta);
      fac = std::clamp(fac, kFacMin, kFacMax);
      if (last_rejected) fac = std::min(fac, 1.0);
      err_old = std::max(err, 1e-4);
      stats.max_error_estimate = std::max(stats.max_error_estimate, err);
      ++stats.steps;
      t = t_new;
      y = y_new;
      k1 = k7;
      times.push_back(t);
      states.push_back(y);
      derivs.push_back(k1);
      h *= fac;
      last_rejected = false;
    } else {
      const double fac = std::max(kFacMin, kSafety * std::pow(err, -kAlpha));
      h *= fac;
      ++stats.rejected_steps;
      last_rejected = true;
    }
  }
  return {std::move(times), std::move(states), std::move(derivs), stats};
}

double quadrature_trapezoid(const OdeSolution& solution, std::size_t component) {
  const auto& ts = solution.times();
  const auto& ys = solution.states();
  if (ys.empty() || component >= ys.front().size()) {
    throw DomainError("ode: quadrature component out of range");
  }
  double sum = 0.0;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    sum += 0.5 * (ts[k] - ts[k - 1]) * (ys[k][component] + ys[k - 1][component]);
  }
  return sum;
}

}  // namespace hawkes_queue::ode
