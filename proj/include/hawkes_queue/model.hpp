#pragma once

#include <stdexcept>
#include <string>

#include "hawkes_queue/random.hpp"

namespace hawkes_queue {

/// Invalid input: bad parameters, out-of-range queries, malformed documents.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: integrator aborts, explosion guard, singular evaluation.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Law of the intensity jump sizes (B for arrivals, C for service completions).
class JumpDist {
 public:
  enum class Kind { Exponential, Constant };

  static JumpDist exponential(double rate);
  static JumpDist constant(double value);

  Kind kind() const { return kind_; }
  /// Rate for Exponential, value for Constant.
  double param() const { return param_; }

  double mean() const;

  /// E[exp(-uX)] for u >= 0.
  double laplace(double u) const;

  /// E[exp(-uX)] continued to negative u where it is finite (u > -rate for
  /// Exponential). The characteristic ODEs leave the positive half-line, so
  /// they use this form; outside the convergence region it throws
  /// NumericalError.
  double laplace_continued(double u) const;

  /// E[X^n], n >= 1.
  double raw_moment(int n) const;

  /// One draw; Exponential uses the inverse CDF.
  double sample(Rng& rng) const;

  bool is_zero() const { return kind_ == Kind::Constant && param_ == 0.0; }

  friend bool operator==(const JumpDist&, const JumpDist&) = default;

 private:
  JumpDist(Kind kind, double param) : kind_(kind), param_(param) {}

  Kind kind_;
  double param_;
};

std::string to_string(const JumpDist& d);

struct ArrivalParams {
  double lambda_star = 0.0;
  double r = 1.0;
  double lambda0 = 0.0;
  JumpDist jump = JumpDist::constant(0.0);

  void validate() const;
  /// mean(B) < r; a flag only, the critical case stays constructible.
  bool stable() const { return jump.mean() < r; }
};

/// When the per-customer service excitation starts over.
enum class ResetPolicy {
  BusyPeriodStart,  ///< memory clears when N goes 0 -> 1
  WheneverOne,      ///< memory clears every time N becomes 1, departures included
};

struct ServiceParams {
  double mu_star = 0.0;
  double s = 1.0;
  double mu0 = 0.0;
  JumpDist jump = JumpDist::constant(0.0);
  ResetPolicy reset = ResetPolicy::BusyPeriodStart;

  void validate() const;
  bool memoryless() const { return jump.is_zero() && mu0 == mu_star; }
};

/// Which of the four queueing models applies.
struct ModelKind {
  enum class Tag { HawkesSdHawkes, MSdHawkes, HawkesM, MM };

  Tag tag = Tag::HawkesSdHawkes;
  /// Constant arrival rate, only meaningful for MSdHawkes.
  double lambda = 0.0;

  static ModelKind hawkes_sdhawkes() { return {Tag::HawkesSdHawkes, 0.0}; }
  static ModelKind m_sdhawkes(double lambda) { return {Tag::MSdHawkes, lambda}; }
  static ModelKind hawkes_m() { return {Tag::HawkesM, 0.0}; }
  static ModelKind mm() { return {Tag::MM, 0.0}; }

  friend bool operator==(const ModelKind&, const ModelKind&) = default;
};

std::string short_name(ModelKind::Tag tag);
ModelKind::Tag parse_model_tag(const std::string& name);

/// Full model parameterization. The arrival parameters of an MSdHawkes
/// model are implied by its constant rate; see effective_arrival().
struct Model {
  ModelKind kind;
  ArrivalParams arrival;
  ServiceParams service;

  /// Throws DomainError naming the offending field.
  void validate() const;

  /// Arrival parameters actually driving the simulation.
  ArrivalParams effective_arrival() const;
};

}  // namespace hawkes_queue
