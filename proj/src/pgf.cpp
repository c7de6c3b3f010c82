#include "hawkes_queue/pgf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <map>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

namespace {

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

struct Coefficient {
  double value = 0.0;
  double error = 0.0;
};

}  // namespace

PmfEstimate pmf_from_pgf(const std::function<double(double)>& pgf, int k_max,
                         const PgfOptions& opt) {
  if (k_max < 0 || k_max > 30) throw DomainError("pmf_from_pgf: k_max must be in 0..30");
  if (!(opt.z0 > 0.0 && opt.z0 < 1.0)) throw DomainError("pmf_from_pgf: z0 must lie in (0, 1)");
  if (opt.levels < 2) throw DomainError("pmf_from_pgf: need at least two Richardson levels");

  std::map<double, double> cache;
  auto G = [&](double z) {
    const auto it = cache.find(z);
    if (it != cache.end()) return it->second;
    const double g = pgf(z);
    cache.emplace(z, g);
    return g;
  };

  const int K = k_max + std::max(opt.extra_terms, 0);
  std::vector<Coefficient> c(static_cast<std::size_t>(K) + 1);
  c[0] = {G(opt.z0), 0.0};

  for (int j = 1; j <= K; ++j) {
    const double h0 = (1.0 - opt.z0) / j;
    const double jfact = std::exp(std::lgamma(j + 1.0));
    // Returns the difference quotient and a bound on its rounding error.
    auto estimate = [&](double h) {
      double d = 0.0, mag = 0.0;
      for (int i = 0; i <= j; ++i) {
        const double term = binomial(j, i) * G(opt.z0 + i * h);
        d += (j - i) % 2 == 0 ? term : -term;
        mag += std::abs(term);
      }
      const double scale = jfact * std::pow(h, j);
      return std::pair{d / scale, 4.0 * std::numeric_limits<double>::epsilon() * mag / scale};
    };
    // Ridders-style table; an entry's error is the larger of its disagreement
    // with its neighbours and its propagated rounding error.
    std::vector<std::vector<double>> T(static_cast<std::size_t>(opt.levels));
    std::vector<std::vector<double>> R(static_cast<std::size_t>(opt.levels));
    double best = 0.0, best_err = INFINITY;
    double h = h0;
    for (std::size_t m = 0; m < static_cast<std::size_t>(opt.levels); ++m, h *= 0.5) {
      const auto [value, rounding] = estimate(h);
      T[m].push_back(value);
      R[m].push_back(rounding);
      for (std::size_t l = 1; l <= m; ++l) {
        const double f = std::ldexp(1.0, static_cast<int>(l)) - 1.0;
        const double prev = T[m - 1][l - 1];
        const double cur = T[m][l - 1];
        const double next = cur + (cur - prev) / f;
        const double rnd = R[m][l - 1] * (1.0 + 1.0 / f) + R[m - 1][l - 1] / f;
        T[m].push_back(next);
        R[m].push_back(rnd);
        const double err = std::max({std::abs(next - cur), std::abs(next - prev), rnd});
        if (err < best_err) {
          best_err = err;
          best = next;
        }
      }
    }
    c[static_cast<std::size_t>(j)] = {best, best_err};
  }

  PmfEstimate out;
  for (int k = 0; k <= k_max; ++k) {
    double p = 0.0, err = 0.0;
    for (int j = k; j <= K; ++j) {
      const double w = binomial(j, k) * std::pow(opt.z0, j - k);
      const double sign = (j - k) % 2 == 0 ? 1.0 : -1.0;
      p += sign * w * c[static_cast<std::size_t>(j)].value;
      err += w * c[static_cast<std::size_t>(j)].error;
    }
    // Tail of the re-expansion left out beyond K.
    err += binomial(K + 1, k) * std::pow(opt.z0, K + 1 - k) *
           std::abs(c[static_cast<std::size_t>(K)].value);
    out.probabilities.push_back(std::clamp(p, 0.0, 1.0));
    out.error_estimates.push_back(err);
    out.reliable.push_back(err <= opt.max_error);
  }
  return out;
}

}  // namespace hawkes_queue
