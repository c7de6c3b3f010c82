#include "hawkes_queue/statistics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

ChiSquareResult chi_square_gof(std::span<const std::size_t> counts,
                               std::span<const double> probabilities, double min_expected) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  if (!(n > 0.0)) throw DomainError("chi-square needs at least one observation");

  std::vector<double> obs, expct;
  double tail_obs = n, tail_exp = n;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    const double e = n * probabilities[k];
    const double o = k < counts.size() ? static_cast<double>(counts[k]) : 0.0;
    if (tail_exp - e < min_expected) break;
    obs.push_back(o);
    expct.push_back(e);
    tail_obs -= o;
    tail_exp -= e;
  }
  obs.push_back(tail_obs);
  expct.push_back(tail_exp);
  // Merge a short head cell into its neighbour.
  while (expct.size() > 1 && expct.front() < min_expected) {
    expct[1] += expct[0];
    obs[1] += obs[0];
    expct.erase(expct.begin());
    obs.erase(obs.begin());
  }

  ChiSquareResult r;
  for (std::size_t k = 0; k < obs.size(); ++k) {
    if (expct[k] > 0.0) r.statistic += (obs[k] - expct[k]) * (obs[k] - expct[k]) / expct[k];
  }
  r.dof = static_cast<int>(obs.size()) - 1;
  r.p_value = r.dof > 0 ? boost::math::gamma_q(0.5 * r.dof, 0.5 * r.statistic) : 1.0;
  return r;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  const std::size_t n = std::max(p.size(), q.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = k < p.size() ? p[k] : 0.0;
    const double b = k < q.size() ? q[k] : 0.0;
    sum += std::abs(a - b);
  }
  return 0.5 * sum;
}

std::vector<double> empirical_pmf(std::span<const std::size_t> counts) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  if (!(n > 0.0)) throw DomainError("empty sample");
  std::vector<double> p(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / n;
  return p;
}

KsResult ks_exponential(std::vector<double> x, double rate) {
  if (x.empty()) throw DomainError("KS test needs samples");
  if (!(rate > 0.0)) throw DomainError("KS test rate must be > 0");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * x[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  KsResult r;
  r.statistic = d;
  r.critical_value = 1.628 / std::sqrt(n);
  r.pass = d <= r.critical_value;
  return r;
}

}  // namespace hawkes_queue
