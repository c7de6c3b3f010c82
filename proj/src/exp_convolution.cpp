#include "hawkes_queue/exp_convolution.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hawkes_queue/model.hpp"

namespace hawkes_queue {

namespace {

using Matrix = std::vector<std::vector<double>>;

Matrix multiply_upper(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i; k < n; ++k) {
      if (a[i][k] == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

}  // namespace

// The divided differences are the top-right entry of exp(J), where J is
// bidiagonal with the nodes on the diagonal and ones above it. Nodes are
// shifted to be <= 0 so exp(J) has non-negative entries and repeated
// squaring never cancels.
double exp_divided_difference(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  if (n == 0) throw DomainError("exp_divided_difference: no nodes");
  const double shift = *std::max_element(nodes.begin(), nodes.end());
  if (n == 1) return std::exp(nodes[0]);

  double norm = 1.0;
  for (double x : nodes) norm = std::max(norm, std::abs(x - shift) + 1.0);
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
  const double scale = std::ldexp(1.0, -squarings);

  Matrix j(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    j[i][i] = (nodes[i] - shift) * scale;
    if (i + 1 < n) j[i][i + 1] = scale;
  }

  // Taylor series of exp(J / 2^s); the norm is at most 1/2.
  Matrix e(n, std::vector<double>(n, 0.0));
  Matrix term(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = term[i][i] = 1.0;
  for (int k = 1; k <= 30; ++k) {
    term = multiply_upper(term, j);
    double biggest = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r; c < n; ++c) {
        term[r][c] /= k;
        e[r][c] += term[r][c];
        biggest = std::max(biggest, std::abs(term[r][c]));
      }
    }
    if (biggest < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) e = multiply_upper(e, e);

  return std::exp(shift) * e[0][n - 1];
}

double exp_convolution(std::span<const double> rates, double t) {
  if (rates.empty()) throw DomainError("exp_convolution: no rates");
  if (t == 0.0) return rates.size() == 1 ? 1.0 : 0.0;
  std::vector<double> nodes(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) nodes[i] = -rates[i] * t;
  return std::pow(t, static_cast<double>(rates.size() - 1)) * exp_divided_difference(nodes);
}

}  // namespace hawkes_queue
