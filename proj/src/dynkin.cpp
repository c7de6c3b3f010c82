#include "hawkes_queue/dynkin.hpp"

#include <cmath>

namespace hawkes_queue {

const char* to_string(Functional f) {
  switch (f) {
    case Functional::Lambda: return "lambda";
    case Functional::Mu: return "mu";
    case Functional::M: return "M";
    case Functional::S: return "S";
    case Functional::Lambda2: return "lambda^2";
    case Functional::LambdaM: return "lambda*M";
  }
  return "?";
}

Functional parse_functional(const std::string& name) {
  if (name == "lambda") return Functional::Lambda;
  if (name == "mu") return Functional::Mu;
  if (name == "M") return Functional::M;
  if (name == "S") return Functional::S;
  if (name == "lambda^2" || name == "lambda2") return Functional::Lambda2;
  if (name == "lambda*M" || name == "lambdaM") return Functional::LambdaM;
  throw DomainError("unsupported test functional '" + name +
                    "' (expected lambda, mu, M, S, lambda^2, lambda*M)");
}

const char* to_string(GeneratorForm g) {
  return g == GeneratorForm::StateDependent ? "state-dependent" : "as-written";
}

double functional_value(Functional f, const Snapshot& s) {
  switch (f) {
    case Functional::Lambda: return s.lambda;
    case Functional::Mu: return s.mu;
    case Functional::M: return static_cast<double>(s.M);
    case Functional::S: return static_cast<double>(s.S);
    case Functional::Lambda2: return s.lambda * s.lambda;
    case Functional::LambdaM: return s.lambda * static_cast<double>(s.M);
  }
  return 0.0;
}

namespace {

// A f = c0 + cl lambda + cll lambda^2 + cf phi + cff phi^2 + clf lambda phi,
// phi being the per-customer service factor.
struct Quadratic {
  double c0 = 0, cl = 0, cll = 0, cf = 0, cff = 0, clf = 0;
};

Quadratic generator(Functional f, const Snapshot& x, const ArrivalParams& a,
                    const ServiceParams& sv, const DynkinOptions& opt) {
  const double r = a.r, ls = a.lambda_star;
  const double b1 = a.jump.mean(), b2 = a.jump.raw_moment(2);
  const double c1 = sv.jump.mean();
  const double N = static_cast<double>(x.N), M = static_cast<double>(x.M);
  const double jump = opt.drop_jump_terms ? 0.0 : 1.0;
  Quadratic q;
  switch (f) {
    case Functional::Lambda:
      q.c0 = r * ls;
      q.cl = -r + jump * b1;
      break;
    case Functional::M:
      q.cl = jump;
      break;
    case Functional::S:
      q.cf = jump * N;
      break;
    case Functional::Lambda2:
      q.cl = 2 * r * ls + jump * b2;
      q.cll = -2 * r + jump * 2 * b1;
      break;
    case Functional::LambdaM:
      q.c0 = r * ls * M;
      q.cl = -r * M + jump * b1 * (M + 1);
      q.cll = jump;
      break;
    case Functional::Mu:
      if (opt.form == GeneratorForm::AsWritten) {
        q.c0 = sv.s * sv.mu_star;
        q.cf = -sv.s * N + jump * N * c1;
        break;
      }
      q.c0 = sv.s * N * sv.mu_star;
      q.cf = -sv.s * N;
      if (x.N == 0) {
        q.cl = jump * sv.mu0;
      } else {
        q.clf = jump;
      }
      if (sv.reset == ResetPolicy::WheneverOne && x.N == 2) {
        q.cf += jump * 2 * sv.mu0;
        q.cff += -jump * 4;
      } else {
        q.cff += -jump * N;
        q.cf += jump * N * (N - 1) * c1;
      }
      break;
  }
  return q;
}

double decay_integral(double k, double dt) { return -std::expm1(-k * dt) / k; }

double integrate(const Quadratic& q, double lam, double phi, double dt, const ArrivalParams& a,
                 const ServiceParams& sv) {
  const double ls = a.lambda_star, ms = sv.mu_star, r = a.r, s = sv.s;
  const double dl = lam - ls, df = phi - ms;
  const double er = decay_integral(r, dt), es = decay_integral(s, dt);
  const double i_l = ls * dt + dl * er;
  const double i_ll = ls * ls * dt + 2 * ls * dl * er + dl * dl * decay_integral(2 * r, dt);
  const double i_f = ms * dt + df * es;
  const double i_ff = ms * ms * dt + 2 * ms * df * es + df * df * decay_integral(2 * s, dt);
  const double i_lf =
      ls * ms * dt + ls * df * es + ms * dl * er + dl * df * decay_integral(r + s, dt);
  return q.c0 * dt + q.cl * i_l + q.cll * i_ll + q.cf * i_f + q.cff * i_ff + q.clf * i_lf;
}

}  // namespace

std::vector<double> dynkin_residuals(const Trajectory& traj, Functional f,
                                     const std::vector<double>& t_grid,
                                     const DynkinOptions& options) {
  const ArrivalParams a = traj.model.effective_arrival();
  const ServiceParams& sv = traj.model.service;
  const Snapshot init = initial_snapshot(traj.model);
  const double f0 = functional_value(f, init);

  Snapshot x = init;
  double cur = 0.0, integral = 0.0;
  std::size_t ei = 0;
  auto advance = [&](double t) {
    const double dt = t - cur;
    if (dt > 0.0) {
      integral += integrate(generator(f, x, a, sv, options), x.lambda, x.factor, dt, a, sv);
      x.lambda = a.lambda_star + (x.lambda - a.lambda_star) * std::exp(-a.r * dt);
      x.factor = sv.mu_star + (x.factor - sv.mu_star) * std::exp(-sv.s * dt);
      x.mu = static_cast<double>(x.N) * x.factor;
      cur = t;
    }
  };

  std::vector<double> out;
  out.reserve(t_grid.size());
  double prev = 0.0;
  for (double t : t_grid) {
    if (!(t >= prev) || !(t <= traj.horizon)) {
      throw DomainError("dynkin grid must be non-decreasing within [0, horizon]");
    }
    prev = t;
    while (ei < traj.events.size() && traj.events[ei].time <= t) {
      const Event& e = traj.events[ei++];
      advance(e.time);
      x.lambda = e.lambda_after;
      x.factor = e.factor_after;
      x.N = e.n_after;
      x.mu = e.mu_after;
      if (e.kind == EventKind::Arrival) {
        ++x.M;
      } else {
        ++x.S;
      }
    }
    advance(t);
    out.push_back(functional_value(f, x) - f0 - integral);
  }
  return out;
}

}  // namespace hawkes_queue
