#include "hawkes_queue/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace hawkes_queue {

namespace {

double decay(double level, double value, double rate, double dt) {
  return level + (value - level) * std::exp(-rate * dt);
}

struct PathState {
  double t = 0.0;
  double lambda = 0.0;
  double factor = 0.0;
  std::int64_t N = 0;
};

// Advances the deterministic flow to time t.
void flow_to(PathState& st, const ArrivalParams& a, const ServiceParams& s, double t) {
  const double dt = t - st.t;
  st.lambda = decay(a.lambda_star, st.lambda, a.r, dt);
  st.factor = decay(s.mu_star, st.factor, s.s, dt);
  st.t = t;
}

void check_time(const Trajectory& traj, double t) {
  if (!(t >= 0.0) || !(t <= traj.horizon)) {
    std::ostringstream msg;
    msg << "time " << t << " outside [0, " << traj.horizon << "]";
    throw DomainError(msg.str());
  }
}

// Index one past the last event with time <= t.
std::size_t events_up_to(const Trajectory& traj, double t) {
  const auto it = std::upper_bound(traj.events.begin(), traj.events.end(), t,
                                   [](double x, const Event& e) { return x < e.time; });
  return static_cast<std::size_t>(it - traj.events.begin());
}

}  // namespace

Snapshot initial_snapshot(const Model& model) {
  Snapshot s;
  s.lambda = model.effective_arrival().lambda0;
  s.factor = model.service.mu0;
  return s;
}

Trajectory simulate_path(const Model& model, double horizon, std::uint64_t seed,
                         const SimulationOptions& options) {
  Rng rng = make_path_rng(seed, 0);
  return simulate_path(model, horizon, rng, seed, options);
}

Trajectory simulate_path(const Model& model, double horizon, Rng& rng, std::uint64_t seed_label,
                         const SimulationOptions& options) {
  model.validate();
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("horizon must be positive and finite");
  }
  const ArrivalParams a = model.effective_arrival();
  const ServiceParams& sv = model.service;

  Trajectory traj{model, horizon, seed_label, {}};
  PathState st{0.0, a.lambda0, sv.mu0, 0};

  while (true) {
    // Both lambda and the per-customer factor move monotonically toward
    // their baselines, so the larger of (current, baseline) bounds them.
    const double bound = std::max(st.lambda, a.lambda_star) +
                         static_cast<double>(st.N) * std::max(st.factor, sv.mu_star);
    if (!(bound > 0.0)) break;
    const double tau = st.t + exponential_draw(rng, bound);
    if (tau > horizon) break;
    flow_to(st, a, sv, tau);
    const double lam = st.lambda;
    const double mu = static_cast<double>(st.N) * st.factor;
    const double total = lam + mu;
    if (total > bound * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "thinning bound violated at t=" << tau << ": intensity " << total << " > bound "
          << bound;
      throw NumericalError(msg.str());
    }
    const double u = uniform01(rng);
    if (u * bound >= total) continue;

    Event ev;
    ev.time = tau;
    if (u * bound < lam) {
      ev.kind = EventKind::Arrival;
      st.lambda += a.jump.sample(rng);
      ++st.N;
      if (st.N == 1) st.factor = sv.mu0;
    } else {
      ev.kind = EventKind::Departure;
      --st.N;
      st.factor += sv.jump.sample(rng);
      if (st.N == 1 && sv.reset == ResetPolicy::WheneverOne) st.factor = sv.mu0;
    }
    ev.lambda_after = st.lambda;
    ev.n_after = st.N;
    ev.factor_after = st.factor;
    ev.mu_after = static_cast<double>(st.N) * st.factor;
    traj.events.push_back(ev);
    if (traj.events.size() > options.max_events) {
      std::ostringstream msg;
      msg << "path exceeded " << options.max_events << " events before t=" << horizon
          << "; the arrival process explodes unless E[B] < r (E[B]=" << a.jump.mean()
          << ", r=" << a.r << ")";
      throw ExplosionError(msg.str());
    }
  }
  return traj;
}

double arrival_intensity_at(const Trajectory& traj, double t) {
  return snapshot(traj, t).lambda;
}

double service_intensity_at(const Trajectory& traj, double t) {
  return snapshot(traj, t).mu;
}

Snapshot snapshot(const Trajectory& traj, double t) {
  return snapshots(traj, {t}).front();
}

std::vector<Snapshot> snapshots(const Trajectory& traj, const std::vector<double>& times) {
  const ArrivalParams a = traj.model.effective_arrival();
  const ServiceParams& sv = traj.model.service;
  std::vector<Snapshot> out;
  out.reserve(times.size());

  Snapshot cur = initial_snapshot(traj.model);
  double t_cur = 0.0;
  std::size_t next = 0;
  double prev = 0.0;
  for (double t : times) {
    check_time(traj, t);
    if (t < prev) throw DomainError("snapshot times must be non-decreasing");
    prev = t;
    const std::size_t stop = events_up_to(traj, t);
    for (; next < stop; ++next) {
      const Event& e = traj.events[next];
      cur.lambda = e.lambda_after;
      cur.factor = e.factor_after;
      cur.N = e.n_after;
      if (e.kind == EventKind::Arrival) {
        ++cur.M;
      } else {
        ++cur.S;
      }
      t_cur = e.time;
    }
    Snapshot s = cur;
    s.lambda = decay(a.lambda_star, cur.lambda, a.r, t - t_cur);
    s.factor = decay(sv.mu_star, cur.factor, sv.s, t - t_cur);
    s.mu = static_cast<double>(s.N) * s.factor;
    out.push_back(s);
  }
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "time,kind,n,lambda,mu\n";
  char line[160];
  for (const Event& e : traj.events) {
    std::snprintf(line, sizeof line, "%.12g,%c,%lld,%.12g,%.12g\n", e.time,
                  e.kind == EventKind::Arrival ? 'A' : 'D', static_cast<long long>(e.n_after),
                  e.lambda_after, e.mu_after);
    out << line;
  }
}

}  // namespace hawkes_queue
