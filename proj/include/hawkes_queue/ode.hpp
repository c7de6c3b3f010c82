#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue::ode {

using State = std::vector<double>;

/// dy = f(t, y). The callee writes every component of dy.
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dy)>;

struct OdeProblem {
  Rhs rhs;
  State y0;
  double t_start = 0.0;
  double t_end = 0.0;

  std::size_t dimension() const { return y0.size(); }
};

struct OdeStats {
  std::size_t steps = 0;
  std::size_t rejected_steps = 0;
  /// Largest accepted scaled local error (<= 1 means within tolerance);
  /// zero for fixed-step runs.
  double max_error_estimate = 0.0;
};

/// Integrator abort: non-finite right-hand side, step underflow, or step
/// budget exhausted. Carries the state where it happened.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double t, State y);

  double t() const { return t_; }
  const State& y() const { return y_; }

 private:
  double t_;
  State y_;
};

class OdeSolution {
 public:
  OdeSolution() = default;
  OdeSolution(std::vector<double> times, std::vector<State> states,
              std::vector<State> derivatives, OdeStats stats);

  const std::vector<double>& times() const { return times_; }
  const std::vector<State>& states() const { return states_; }
  const OdeStats& stats() const { return stats_; }
  const State& final_state() const { return states_.back(); }

  /// Dense output: cubic Hermite between stored nodes.
  State at(double t) const;

 private:
  std::vector<double> times_;
  std::vector<State> states_;
  std::vector<State> derivatives_;
  OdeStats stats_;
};

/// Classical RK4 with fixed step; the last step is shortened to land on t_end.
OdeSolution integrate_rk4(const OdeProblem& problem, double step);

struct AdaptiveOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  /// Zero picks a starting step from the initial slope.
  double initial_step = 0.0;
  std::size_t max_steps = 5'000'000;
};

/// Dormand-Prince 5(4) with PI step control.
OdeSolution integrate_adaptive(const OdeProblem& problem, const AdaptiveOptions& options = {});
OdeSolution integrate_adaptive(const OdeProblem& problem, double rel_tol, double abs_tol);

/// Composite trapezoid rule of one component over the stored nodes.
double quadrature_trapezoid(const OdeSolution& solution, std::size_t component);

}  // namespace hawkes_queue::ode
