#pragma once

#include <string>
#include <vector>

#include "hawkes_queue/simulator.hpp"

namespace hawkes_queue {

/// Test functionals with closed-form generator images.
enum class Functional { Lambda, Mu, M, S, Lambda2, LambdaM };

const char* to_string(Functional f);
Functional parse_functional(const std::string& name);

/// Generator used in the residual.
enum class GeneratorForm {
  /// Exact for the simulated queue: mu = N * factor, arrivals move mu
  /// through N, departures add C to the factor.
  StateDependent,
  /// Drift s(mu* - mu) and a single C-jump of mu at each departure.
  AsWritten,
};

const char* to_string(GeneratorForm g);

struct DynkinOptions {
  GeneratorForm form = GeneratorForm::StateDependent;
  /// Omits every jump contribution from A f (sensitivity self-test).
  bool drop_jump_terms = false;
};

/// f(X) at a replayed state.
double functional_value(Functional f, const Snapshot& s);

/// f(X_t) - f(X_0) - int_0^t A f(X_u) du along one path for each t of the
/// non-decreasing grid. The time integral is exact: between events the
/// state follows exponential decay, and A f is a quadratic polynomial in
/// (lambda, factor) there.
std::vector<double> dynkin_residuals(const Trajectory& traj, Functional f,
                                     const std::vector<double>& t_grid,
                                     const DynkinOptions& options = {});

}  // namespace hawkes_queue
