#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hawkes_queue/model.hpp"
#include "hawkes_queue/simulator.hpp"

namespace hawkes_queue {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
};

/// Sample mean with SE = sd / sqrt(n).
McEstimate mean_estimate(std::span<const double> samples);

/// Sample variance with the delta-method SE sqrt((m4 - m2^2) / n).
McEstimate variance_estimate(std::span<const double> samples);

/// Path states at each time of t_grid; result[i][k] is path i at t_grid[k].
/// Path i draws from make_path_rng(base_seed, i), so the result does not
/// depend on thread count.
std::vector<std::vector<Snapshot>> sample_states(const Model& model,
                                                 const std::vector<double>& t_grid,
                                                 std::size_t n_paths, std::uint64_t base_seed);

struct TransformQuery {
  double t = 0.0;
  double z = 1.0;
  double u = 0.0;
  double v = 0.0;

  /// Ranges t >= 0, 0 <= z <= 1, u >= 0, v >= 0.
  void validate() const;
};

/// z^N e^{-u lambda} e^{-v mu} for one state.
double transform_sample(const Snapshot& s, const TransformQuery& q);

McEstimate mc_transform(const Model& model, const TransformQuery& query, std::size_t n_paths,
                        std::uint64_t base_seed);

/// All queries estimated from one shared set of paths.
std::vector<McEstimate> mc_transform_grid(const Model& model,
                                          const std::vector<TransformQuery>& queries,
                                          std::size_t n_paths, std::uint64_t base_seed);

struct McMoments {
  double t = 0.0;
  McEstimate mean_lambda;
  McEstimate var_lambda;
  McEstimate mean_M;
  McEstimate var_M;
  McEstimate mean_N;
};

std::vector<McMoments> mc_moments(const Model& model, const std::vector<double>& t_grid,
                                  std::size_t n_paths, std::uint64_t base_seed);

/// Empirical distribution of N_t: counts[k] = #paths with N_t = k.
std::vector<std::size_t> mc_system_size_counts(const Model& model, double t, std::size_t n_paths,
                                               std::uint64_t base_seed);

}  // namespace hawkes_queue
