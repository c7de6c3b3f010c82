#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hawkes_queue/dynkin.hpp"
#include "hawkes_queue/moments.hpp"
#include "hawkes_queue/monte_carlo.hpp"
#include "hawkes_queue/transform.hpp"

namespace hawkes_queue {

/// One compared value. For Monte Carlo references the score is a z-score
/// (analytic - mc) / max(se, 1e-6); for deterministic references it is the
/// absolute difference or the named statistic.
struct ComparisonPoint {
  std::string label;
  double t = 0.0;
  bool evaluated = true;  ///< false when the analytic side threw
  std::string error;
  double analytic = 0.0;
  McEstimate reference;
  double score = 0.0;
  bool pass = false;
};

struct ComparisonReport {
  std::string quantity;
  std::string criterion;
  std::vector<ComparisonPoint> points;
  bool pass = false;

  /// Largest |score| over evaluated points (infinity if any point failed to evaluate).
  double max_abs_score() const;
};

/// SE floor in z-scores, so exact references do not divide by zero.
inline constexpr double kSeFloor = 1e-6;

double z_score(double analytic, const McEstimate& mc);

/// Adds a z-score point that passes iff |z| <= limit.
void add_z_point(ComparisonReport& report, std::string label, double t, double analytic,
                 const McEstimate& mc, double limit = 3.0);
/// Adds a point for an analytic evaluation that threw.
void add_failed_point(ComparisonReport& report, std::string label, double t,
                      const McEstimate& mc, const std::string& error);
/// Recomputes report.pass from its points.
void finalize(ComparisonReport& report);

enum class MomentQuantity { MeanLambda, VarLambda, MeanM, VarM };
const char* to_string(MomentQuantity q);

/// Analytic moments (convention `conv`) against mc_moments. `perturb`
/// multiplies one analytic quantity by 1.1 (fault injection).
ComparisonReport compare_moments(const Model& model, const std::vector<double>& t_grid,
                                 std::size_t n_paths, std::uint64_t seed,
                                 MomentConvention conv = MomentConvention::RawMoments,
                                 std::optional<MomentQuantity> perturb = std::nullopt);

enum class ConventionQuestion { VarianceConvention, ZetaPrefactor, Theorem2Sign };
const char* to_string(ConventionQuestion q);

struct ConventionVerdict {
  ConventionQuestion question = ConventionQuestion::VarianceConvention;
  /// Candidate label, "tie" or "inconclusive".
  std::string winner;
  std::string candidate_a;
  std::string candidate_b;
  ComparisonReport evidence_a;
  ComparisonReport evidence_b;
  std::size_t n_paths = 0;
  std::string note;
  /// Further reports that did not decide the verdict.
  std::vector<ComparisonReport> supplementary;

  bool strict() const { return winner == candidate_a || winner == candidate_b; }
};

/// Winner passes (all |score| <= 3) while the loser has some |score| > 5.
std::string decide(const std::string& a, const ComparisonReport& ra, const std::string& b,
                   const ComparisonReport& rb);

/// Var[lambda_t] under both conventions against Monte Carlo, escalating the
/// path count tenfold up to max_paths while inconclusive. Constant jumps
/// give a tie without simulation.
ConventionVerdict variance_convention_test(const Model& model, double t, std::size_t n_paths,
                                           std::uint64_t seed, std::size_t max_paths = 1'000'000);

/// Hawkes/sdHawkes prefactor e^{-u(0) lambda0} against e^{-u(t) lambda0}.
ConventionVerdict convention_test_zeta(const Model& model,
                                       const std::vector<TransformQuery>& queries,
                                       std::size_t n_paths, std::uint64_t seed);

/// M/sdHawkes exponent sign. Candidates failing the normalization
/// zeta(t, 1, 0, 0) = 1 are eliminated first; the Monte Carlo comparison
/// at `queries` is kept as evidence.
ConventionVerdict theorem2_sign_test(const Model& model, const std::vector<TransformQuery>& queries,
                                     std::size_t n_paths, std::uint64_t seed);

/// Mean Dynkin residual with its SE at each time of the grid.
ComparisonReport dynkin_martingale_test(const Model& model, Functional f,
                                        const std::vector<double>& t_grid, std::size_t n_paths,
                                        std::uint64_t seed, const DynkinOptions& options = {});

/// Transform engine against Monte Carlo on a query grid.
ComparisonReport compare_transform(const Model& model, const std::vector<TransformQuery>& queries,
                                   std::size_t n_paths, std::uint64_t seed,
                                   const TransformOptions& options = {});

/// Cartesian product of query coordinates.
std::vector<TransformQuery> query_grid(const std::vector<double>& ts, const std::vector<double>& zs,
                                       const std::vector<double>& us,
                                       const std::vector<double>& vs);

/// Reduction-chain checks: Hawkes/sdHawkes with memoryless service against
/// Hawkes/M, the near-degenerate limit against the M/M closed form, M/M
/// simulator against the transient and stationary pmfs.
std::vector<ComparisonReport> reduction_suite(std::size_t n_paths, std::uint64_t seed);

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<ComparisonReport> reports;
  std::vector<ConventionVerdict> verdicts;
  bool pass = false;
};

/// Runs moments, transform, dynkin, reductions, conventions or all.
/// Monte Carlo path counts are multiplied by `scale`.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed, double scale = 1.0);

}  // namespace hawkes_queue
