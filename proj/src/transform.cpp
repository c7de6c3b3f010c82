#include "hawkes_queue/transform.hpp"

#include <cmath>
#include <sstream>

namespace hawkes_queue {

const char* to_string(ZetaConvention c) {
  return c == ZetaConvention::PrefactorAtZero ? "prefactor-at-zero" : "prefactor-at-t";
}

const char* to_string(Theorem2Sign s) {
  return s == Theorem2Sign::PlusOne ? "plus-one" : "minus-one";
}

ZetaConvention parse_zeta_convention(const std::string& name) {
  if (name == "prefactor-at-zero" || name == "at-zero") return ZetaConvention::PrefactorAtZero;
  if (name == "prefactor-at-t" || name == "at-t") return ZetaConvention::PrefactorAtT;
  throw DomainError("convention: expected prefactor-at-t or prefactor-at-zero, got '" + name +
                    "'");
}

Theorem2Sign parse_theorem2_sign(const std::string& name) {
  if (name == "plus-one") return Theorem2Sign::PlusOne;
  if (name == "minus-one") return Theorem2Sign::MinusOne;
  throw DomainError("sign: expected minus-one or plus-one, got '" + name + "'");
}

namespace {

std::string describe(const TransformQuery& q) {
  std::ostringstream out;
  out << "(t=" << q.t << ", z=" << q.z << ", u=" << q.u << ", v=" << q.v << ")";
  return out.str();
}

double checked_range(double zeta, const TransformQuery& q) {
  if (!(zeta > 0.0) || !(zeta <= 1.0 + 1e-6)) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "transform value " << zeta << " outside (0, 1] at " << describe(q);
    throw NumericalError(msg.str());
  }
  return zeta;
}

template <class F>
ode::State solve(const ode::OdeProblem& p, const ode::AdaptiveOptions& options,
                 const TransformQuery& q, F&& context) {
  try {
    return ode::integrate_adaptive(p, options).final_state();
  } catch (const NumericalError& e) {
    throw NumericalError(std::string(context()) + " failed at " + describe(q) + ": " + e.what());
  }
}

void require_positive_z(const TransformQuery& q, const char* engine) {
  if (!(q.z > 0.0)) {
    throw DomainError(std::string(engine) +
                      ": z = 0 makes gamma(v)/z singular; use pmf extraction at z >= 1e-3 "
                      "or Monte Carlo");
  }
}

}  // namespace

ode::OdeProblem hawkes_sdhawkes_problem(const ArrivalParams& arrival, const ServiceParams& service,
                                        const TransformQuery& q, CharacteristicForm form) {
  arrival.validate();
  service.validate();
  q.validate();
  require_positive_z(q, "Hawkes/sdHawkes transform");
  if (form == CharacteristicForm::Auto) {
    const bool expo = arrival.jump.kind() == JumpDist::Kind::Exponential &&
                      service.jump.kind() == JumpDist::Kind::Exponential;
    form = expo ? CharacteristicForm::Exponential : CharacteristicForm::Generic;
  }
  const double r = arrival.r, s = service.s, ms = service.mu_star, z = q.z;
  const JumpDist B = arrival.jump, C = service.jump;

  ode::OdeProblem p;
  p.t_start = 0.0;
  p.t_end = q.t;
  if (form == CharacteristicForm::Generic) {
    // (u, y1 = int v, y2 = v, int u)
    p.y0 = {q.u, 0.0, q.v, 0.0};
    p.rhs = [=](double, std::span<const double> y, std::span<double> dy) {
      const double e = std::exp(s * ms * y[1]);
      dy[0] = -r * y[0] + 1.0 - z * B.laplace_continued(y[0]) / e;
      dy[1] = y[2];
      dy[2] = 1.0 - s * y[2] - C.laplace_continued(y[2]) * e / z;
      dy[3] = y[0];
    };
  } else {
    // (y1 = u, y2 = v, y3 = z(t), int u)
    p.y0 = {q.u, q.v, z, 0.0};
    p.rhs = [=](double, std::span<const double> y, std::span<double> dy) {
      dy[0] = 1.0 - r * y[0] - y[2] * B.laplace_continued(y[0]);
      dy[1] = 1.0 - s * y[1] - C.laplace_continued(y[1]) / y[2];
      dy[2] = -s * ms * y[1] * y[2];
      dy[3] = y[0];
    };
  }
  return p;
}

double zeta_hawkes_sdhawkes(const ArrivalParams& arrival, const ServiceParams& service,
                            const TransformQuery& q, const TransformOptions& options) {
  const ode::OdeProblem p = hawkes_sdhawkes_problem(arrival, service, q, options.form);
  if (q.t == 0.0) return std::exp(-q.u * arrival.lambda0);
  const ode::State y = solve(p, options.ode, q, [] { return "Hawkes/sdHawkes characteristics"; });
  const double u_pref = options.zeta == ZetaConvention::PrefactorAtT ? y[0] : q.u;
  return checked_range(
      std::exp(-u_pref * arrival.lambda0 - arrival.r * arrival.lambda_star * y[3]), q);
}

double zeta_m_sdhawkes(double lambda, const ServiceParams& service, const TransformQuery& q,
                       const TransformOptions& options) {
  service.validate();
  q.validate();
  if (!(lambda > 0.0)) throw DomainError("M/sdHawkes transform: lambda must be > 0");
  require_positive_z(q, "M/sdHawkes transform");
  if (q.t == 0.0) return 1.0;
  const double s = service.s, ms = service.mu_star, z = q.z;
  const JumpDist C = service.jump;
  ode::OdeProblem p;
  // (v, int v, int z(x))
  p.y0 = {q.v, 0.0, 0.0};
  p.t_end = q.t;
  p.rhs = [=](double, std::span<const double> y, std::span<double> dy) {
    const double e = std::exp(s * ms * y[1]);
    dy[0] = 1.0 - s * y[0] - C.laplace_continued(y[0]) * e / z;
    dy[1] = y[0];
    dy[2] = z / e;
  };
  const ode::State y = solve(p, options.ode, q, [] { return "M/sdHawkes characteristics"; });
  const double exponent =
      options.sign == Theorem2Sign::PlusOne ? -lambda * (y[2] + q.t) : -lambda * (q.t - y[2]);
  return checked_range(std::exp(exponent), q);
}

double zeta_hawkes_m(const ArrivalParams& arrival, double mu_star, double t, double z, double u,
                     const ode::AdaptiveOptions& ode_options) {
  arrival.validate();
  const TransformQuery q{t, z, u, 0.0};
  q.validate();
  if (!(mu_star > 0.0)) throw DomainError("Hawkes/M transform: mu_star must be > 0");
  if (t == 0.0) return std::exp(-u * arrival.lambda0);
  const double r = arrival.r;
  const JumpDist B = arrival.jump;
  ode::OdeProblem p;
  // (u, int u)
  p.y0 = {u, 0.0};
  p.t_end = t;
  p.rhs = [=](double w, std::span<const double> y, std::span<double> dy) {
    dy[0] = -r * y[0] - (1.0 + (z - 1.0) * std::exp(-mu_star * w)) * B.laplace_continued(y[0]) + 1.0;
    dy[1] = y[0];
  };
  const ode::State y = solve(p, ode_options, q, [] { return "Hawkes/M characteristic"; });
  return checked_range(std::exp(-y[0] * arrival.lambda0 - r * arrival.lambda_star * y[1]), q);
}

double zeta_mm(double lambda0, double mu0, const TransformQuery& q) {
  q.validate();
  if (!(lambda0 > 0.0) || !(mu0 > 0.0)) throw DomainError("M/M transform: lambda0, mu0 must be > 0");
  const double m = lambda0 / mu0 * -std::expm1(-mu0 * q.t);
  return std::exp(-q.u * lambda0) * std::exp(-m * (1.0 - q.z * std::exp(-q.v * mu0)));
}

namespace {

double poisson_pmf(double mean, int k) {
  if (k < 0) throw DomainError("pmf: k must be >= 0");
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

}  // namespace

double pmf_mm(double lambda0, double mu0, double t, int k) {
  if (!(lambda0 > 0.0) || !(mu0 > 0.0)) throw DomainError("M/M pmf: lambda0, mu0 must be > 0");
  if (!(t >= 0.0)) throw DomainError("M/M pmf: t must be >= 0");
  return poisson_pmf(lambda0 / mu0 * -std::expm1(-mu0 * t), k);
}

double pmf_mm_stationary(double lambda0, double mu0, int k) {
  if (!(lambda0 > 0.0) || !(mu0 > 0.0)) throw DomainError("M/M pmf: lambda0, mu0 must be > 0");
  return poisson_pmf(lambda0 / mu0, k);
}

double zeta(const Model& model, const TransformQuery& q, const TransformOptions& options) {
  model.validate();
  q.validate();
  switch (model.kind.tag) {
    case ModelKind::Tag::HawkesSdHawkes:
      return zeta_hawkes_sdhawkes(model.arrival, model.service, q, options);
    case ModelKind::Tag::MSdHawkes:
      return std::exp(-q.u * model.kind.lambda) *
             zeta_m_sdhawkes(model.kind.lambda, model.service, q, options);
    case ModelKind::Tag::HawkesM: {
      const double mu = model.service.mu_star;
      return zeta_hawkes_m(model.arrival, mu, q.t, q.z * std::exp(-q.v * mu), q.u, options.ode);
    }
    case ModelKind::Tag::MM:
      return zeta_mm(model.arrival.lambda0, model.service.mu0, q);
  }
  throw DomainError("unknown model");
}

}  // namespace hawkes_queue
