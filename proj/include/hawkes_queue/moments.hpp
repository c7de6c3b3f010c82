#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hawkes_queue/model.hpp"
#include "hawkes_queue/ode.hpp"

namespace hawkes_queue {

/// How the k-th jump moment enters the second-order formulas.
enum class MomentConvention {
  AsWritten,   ///< (E[B])^k, and the published Var[M_t] expression verbatim
  RawMoments,  ///< E[B^k], with Var[M_t] re-derived from the moment system
};

const char* to_string(MomentConvention c);

struct MomentReport {
  double t = 0.0;
  double mean_lambda = 0.0;
  double var_lambda = 0.0;
  double mean_M = 0.0;
  double var_M = 0.0;
  MomentConvention convention = MomentConvention::RawMoments;
};

/// E[B^k] or (E[B])^k depending on the convention; k >= 1.
double jump_moment(const JumpDist& jump, int k, MomentConvention convention);

/// |r - E[B]| < 1e-9 r: the critical closed forms apply.
bool near_critical(const ArrivalParams& p);

double mean_lambda(const ArrivalParams& p, double t);
double var_lambda(const ArrivalParams& p, double t,
                  MomentConvention convention = MomentConvention::RawMoments);
double mean_M(const ArrivalParams& p, double t);
double var_M(const ArrivalParams& p, double t,
             MomentConvention convention = MomentConvention::RawMoments);

MomentReport moment_report(const ArrivalParams& p, double t,
                           MomentConvention convention = MomentConvention::RawMoments);

struct StationaryMoments {
  double mean = 0.0;
  double var = 0.0;
};

/// Limits of E[lambda_t] and Var[lambda_t]; requires E[B] < r.
StationaryMoments stationary_lambda(const ArrivalParams& p,
                                    MomentConvention convention = MomentConvention::RawMoments);

/// Joint moments E[lambda^a M^b] for a + b <= n_max on a time grid.
class MomentOdeResult {
 public:
  MomentOdeResult(int n_max, std::vector<double> times, std::vector<std::vector<double>> values);

  int n_max() const { return n_max_; }
  const std::vector<double>& times() const { return times_; }

  /// E[lambda^lambda_power M^m_power] at times()[time_index].
  double moment(int lambda_power, int m_power, std::size_t time_index) const;

  double var_lambda(std::size_t time_index) const;
  double var_M(std::size_t time_index) const;

  /// Position of (a, b) in the packed state vector.
  static std::size_t index(int lambda_power, int m_power);
  static std::size_t size(int n_max);

 private:
  int n_max_;
  std::vector<double> times_;
  std::vector<std::vector<double>> values_;
};

/// Assembles and integrates the recursive moment system up to total order
/// n_max (1..4). t_grid must be non-negative and non-decreasing.
MomentOdeResult moment_ode_solve(const ArrivalParams& p, int n_max, std::span<const double> t_grid,
                                 MomentConvention convention = MomentConvention::RawMoments,
                                 const ode::AdaptiveOptions& options = {1e-12, 1e-14, 0.0,
                                                                       5'000'000});

}  // namespace hawkes_queue
