#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hawkes_queue {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Goodness of fit of observed counts to probabilities. Categories are
/// pooled from the tail until every expected count is at least
/// min_expected; the remaining probability mass forms the last cell.
ChiSquareResult chi_square_gof(std::span<const std::size_t> counts,
                               std::span<const double> probabilities,
                               double min_expected = 5.0);

/// Half the L1 distance; missing entries count as zero.
double total_variation(std::span<const double> p, std::span<const double> q);

/// counts / sum(counts).
std::vector<double> empirical_pmf(std::span<const std::size_t> counts);

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool pass = false;
};

/// One-sample Kolmogorov-Smirnov test against Exponential(rate) at
/// alpha = 0.01 (asymptotic critical value 1.628 / sqrt(n)).
KsResult ks_exponential(std::vector<double> samples, double rate);

}  // namespace hawkes_queue
