#pragma once

#include <string>
#include <vector>

#include "hawkes_queue/model.hpp"
#include "hawkes_queue/monte_carlo.hpp"
#include "hawkes_queue/ode.hpp"

namespace hawkes_queue {

/// Which value of u multiplies lambda0 in the Hawkes/sdHawkes transform.
enum class ZetaConvention {
  PrefactorAtZero,  ///< e^{-u(0) lambda0}
  PrefactorAtT,     ///< e^{-u(t) lambda0}
};

/// Integrand of the M/sdHawkes exponent.
enum class Theorem2Sign {
  PlusOne,   ///< exp{-lambda int (z(x) + 1)}
  MinusOne,  ///< exp{-lambda int (1 - z(x))}
};

/// Characteristic system used by the Hawkes/sdHawkes engine.
enum class CharacteristicForm {
  Auto,         ///< Exponential when both jump laws are exponential
  Generic,      ///< (u, int v, v, int u) with beta, gamma from the jump laws
  Exponential,  ///< (u, v, z, int u) with rational beta, gamma
};

const char* to_string(ZetaConvention c);
const char* to_string(Theorem2Sign s);
ZetaConvention parse_zeta_convention(const std::string& name);
Theorem2Sign parse_theorem2_sign(const std::string& name);

struct TransformOptions {
  ZetaConvention zeta = ZetaConvention::PrefactorAtT;
  Theorem2Sign sign = Theorem2Sign::MinusOne;
  CharacteristicForm form = CharacteristicForm::Auto;
  ode::AdaptiveOptions ode{1e-10, 1e-12, 0.0, 5'000'000};
};

/// Characteristic IVP of the Hawkes/sdHawkes engine in the chosen form.
/// The last component is int_0^t u.
ode::OdeProblem hawkes_sdhawkes_problem(const ArrivalParams& arrival, const ServiceParams& service,
                                        const TransformQuery& q, CharacteristicForm form);

/// zeta for Hawkes arrivals and sdHawkes service. Needs z > 0.
double zeta_hawkes_sdhawkes(const ArrivalParams& arrival, const ServiceParams& service,
                            const TransformQuery& q, const TransformOptions& options = {});

/// E[z^N e^{-v mu}] for constant arrival rate lambda. Needs z > 0.
double zeta_m_sdhawkes(double lambda, const ServiceParams& service, const TransformQuery& q,
                       const TransformOptions& options = {});

/// E[z^N e^{-u lambda}] for Hawkes arrivals and exponential service at rate mu_star.
double zeta_hawkes_m(const ArrivalParams& arrival, double mu_star, double t, double z, double u,
                     const ode::AdaptiveOptions& ode_options = {1e-10, 1e-12, 0.0, 5'000'000});

/// Closed form for Poisson(lambda0) arrivals and rate-mu0 service.
double zeta_mm(double lambda0, double mu0, const TransformQuery& q);

/// P[N_t = k] for the M/M/infinity system started empty.
double pmf_mm(double lambda0, double mu0, double t, int k);

/// Poisson(lambda0 / mu0) limit as t grows.
double pmf_mm_stationary(double lambda0, double mu0, int k);

/// Dispatches on model.kind. For hm and mm the v-dependence enters through
/// mu = N mu_star; for msd the u-dependence through lambda = const.
double zeta(const Model& model, const TransformQuery& q, const TransformOptions& options = {});

}  // namespace hawkes_queue
