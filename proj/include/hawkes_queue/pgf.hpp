#pragma once

#include <functional>
#include <vector>

namespace hawkes_queue {

struct PgfOptions {
  /// Expansion point; the generating function is never evaluated below it.
  double z0 = 1e-3;
  /// Step halvings in each Richardson table.
  int levels = 6;
  /// Derivatives beyond k_max kept when shifting the expansion to z = 0.
  int extra_terms = 4;
  /// Entries with a larger error estimate are flagged unreliable.
  double max_error = 1e-4;
};

struct PmfEstimate {
  std::vector<double> probabilities;  ///< clipped to [0, 1]
  std::vector<double> error_estimates;
  std::vector<bool> reliable;
};

/// P[N = k], k = 0..k_max (k_max <= 30), from a generating function
/// evaluable on [z0, 1]. Taylor coefficients at z0 come from forward
/// differences refined by Richardson extrapolation, then are re-expanded
/// about 0.
PmfEstimate pmf_from_pgf(const std::function<double(double)>& pgf, int k_max,
                         const PgfOptions& options = {});

}  // namespace hawkes_queue
