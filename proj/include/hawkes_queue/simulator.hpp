#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

enum class EventKind { Arrival, Departure };

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::Arrival;
  double lambda_after = 0.0;
  double mu_after = 0.0;
  std::int64_t n_after = 0;
  /// Per-customer service factor after the event; mu_after = n_after * factor_after.
  double factor_after = 0.0;
};

struct Trajectory {
  Model model;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  std::vector<Event> events;
};

/// Raised when a path exceeds the event cap.
class ExplosionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct SimulationOptions {
  std::size_t max_events = 10'000'000;
};

/// Replayed state of a path at one time.
struct Snapshot {
  std::int64_t N = 0;
  double lambda = 0.0;
  double mu = 0.0;
  std::int64_t M = 0;
  std::int64_t S = 0;
  double factor = 0.0;
};

/// State at t = 0: empty system, lambda0, factor mu0.
Snapshot initial_snapshot(const Model& model);

/// One path by thinning on [0, horizon]. The random stream is
/// make_path_rng(seed, 0).
Trajectory simulate_path(const Model& model, double horizon, std::uint64_t seed,
                         const SimulationOptions& options = {});

/// Same, drawing from a caller-supplied stream.
Trajectory simulate_path(const Model& model, double horizon, Rng& rng, std::uint64_t seed_label,
                         const SimulationOptions& options = {});

/// lambda(t) from the last event at or before t.
double arrival_intensity_at(const Trajectory& traj, double t);
/// mu(t) = N_t * factor(t).
double service_intensity_at(const Trajectory& traj, double t);

/// Right-continuous state at t in [0, horizon].
Snapshot snapshot(const Trajectory& traj, double t);

/// States at each of the non-decreasing times, in one sweep.
std::vector<Snapshot> snapshots(const Trajectory& traj, const std::vector<double>& times);

/// CSV `time,kind,n,lambda,mu`, 12 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace hawkes_queue
