#include "hawkes_queue/monte_carlo.hpp"

#include <algorithm>
#include <cmath>

#include "hawkes_queue/parallel.hpp"

namespace hawkes_queue {

namespace {

// Mean accumulated relative to the first sample, exact for constant samples.
double shifted_mean(std::span<const double> x) {
  const double shift = x[0];
  double sum = 0.0;
  for (double v : x) sum += v - shift;
  return shift + sum / static_cast<double>(x.size());
}

}  // namespace

McEstimate mean_estimate(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw DomainError("estimate needs at least one sample");
  const double mean = shifted_mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

McEstimate variance_estimate(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("variance estimate needs at least two samples");
  const double mean = shifted_mean(x);
  double m2 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d2 = (v - mean) * (v - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double nd = static_cast<double>(n);
  const double var = m2 / (nd - 1);
  m2 /= nd;
  m4 /= nd;
  return {var, std::sqrt(std::max(m4 - m2 * m2, 0.0) / nd), n};
}

void TransformQuery::validate() const {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("query: t must be >= 0");
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("query: z must lie in [0, 1]");
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("query: u must be >= 0");
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("query: v must be >= 0");
}

double transform_sample(const Snapshot& s, const TransformQuery& q) {
  return std::pow(q.z, static_cast<double>(s.N)) * std::exp(-q.u * s.lambda - q.v * s.mu);
}

std::vector<std::vector<Snapshot>> sample_states(const Model& model,
                                                 const std::vector<double>& t_grid,
                                                 std::size_t n_paths, std::uint64_t base_seed) {
  model.validate();
  if (n_paths == 0) throw DomainError("n_paths must be positive");
  if (t_grid.empty()) throw DomainError("time grid must not be empty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] >= 0.0) || !std::isfinite(t_grid[k])) {
      throw DomainError("time grid entries must be finite and >= 0");
    }
  }
  // Paths are simulated once to the largest time and replayed at sorted
  // times; results are put back in grid order.
  std::vector<std::size_t> order(t_grid.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });
  std::vector<double> sorted(t_grid.size());
  for (std::size_t k = 0; k < order.size(); ++k) sorted[k] = t_grid[order[k]];
  const double horizon = sorted.back();

  std::vector<std::vector<Snapshot>> out(n_paths);
  const Snapshot init = initial_snapshot(model);
  parallel_for(n_paths, [&](std::size_t i) {
    std::vector<Snapshot> row(t_grid.size(), init);
    if (horizon > 0.0) {
      Rng rng = make_path_rng(base_seed, i);
      const Trajectory traj = simulate_path(model, horizon, rng, base_seed);
      const std::vector<Snapshot> s = snapshots(traj, sorted);
      for (std::size_t k = 0; k < order.size(); ++k) row[order[k]] = s[k];
    }
    out[i] = std::move(row);
  });
  return out;
}

McEstimate mc_transform(const Model& model, const TransformQuery& query, std::size_t n_paths,
                        std::uint64_t base_seed) {
  return mc_transform_grid(model, {query}, n_paths, base_seed).front();
}

std::vector<McEstimate> mc_transform_grid(const Model& model,
                                          const std::vector<TransformQuery>& queries,
                                          std::size_t n_paths, std::uint64_t base_seed) {
  if (queries.empty()) return {};
  std::vector<double> times;
  for (const auto& q : queries) {
    q.validate();
    times.push_back(q.t);
  }
  const auto states = sample_states(model, times, n_paths, base_seed);
  std::vector<McEstimate> out;
  std::vector<double> samples(n_paths);
  for (std::size_t k = 0; k < queries.size(); ++k) {
    for (std::size_t i = 0; i < n_paths; ++i) samples[i] = transform_sample(states[i][k], queries[k]);
    out.push_back(mean_estimate(samples));
  }
  return out;
}

std::vector<McMoments> mc_moments(const Model& model, const std::vector<double>& t_grid,
                                  std::size_t n_paths, std::uint64_t base_seed) {
  if (n_paths < 2) throw DomainError("moment estimates need at least two paths");
  const auto states = sample_states(model, t_grid, n_paths, base_seed);
  std::vector<McMoments> out;
  std::vector<double> lam(n_paths), m(n_paths), n(n_paths);
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    for (std::size_t i = 0; i < n_paths; ++i) {
      lam[i] = states[i][k].lambda;
      m[i] = static_cast<double>(states[i][k].M);
      n[i] = static_cast<double>(states[i][k].N);
    }
    out.push_back({t_grid[k], mean_estimate(lam), variance_estimate(lam), mean_estimate(m),
                   variance_estimate(m), mean_estimate(n)});
  }
  return out;
}

std::vector<std::size_t> mc_system_size_counts(const Model& model, double t, std::size_t n_paths,
                                               std::uint64_t base_seed) {
  const auto states = sample_states(model, {t}, n_paths, base_seed);
  std::vector<std::size_t> counts;
  for (const auto& row : states) {
    const auto k = static_cast<std::size_t>(row.front().N);
    if (k >= counts.size()) counts.resize(k + 1, 0);
    ++counts[k];
  }
  return counts;
}

}  // namespace hawkes_queue
