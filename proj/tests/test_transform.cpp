#include <doctest.h>

#include <cmath>
#include <vector>

#include "hawkes_queue/moments.hpp"
#include "hawkes_queue/monte_carlo.hpp"
#include "hawkes_queue/pgf.hpp"
#include "hawkes_queue/presets.hpp"
#include "hawkes_queue/transform.hpp"

using namespace hawkes_queue;

namespace {

double mm_oracle(double l0, double m0, double t, double z, double u, double v) {
  return std::exp(-u * l0) * std::exp(-(l0 / m0) * (1 - std::exp(-m0 * t)) * (1 - z * std::exp(-v * m0)));
}

double poisson_pmf(double mean, int k) {
  return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

// E[N_t] for Hawkes arrivals and rate-mu service from the first-moment
// equations l' = r l* - (r - b) l, n' = l - mu n.
double mean_n_oracle(const ArrivalParams& a, double mu, double t) {
  double l = a.lambda0, n = 0.0;
  const int steps = 20000;
  const double h = t / steps, k = a.r - a.jump.mean();
  auto f = [&](double ll, double nn) {
    return std::pair{a.r * a.lambda_star - k * ll, ll - mu * nn};
  };
  for (int i = 0; i < steps; ++i) {
    const auto [a1, b1] = f(l, n);
    const auto [a2, b2] = f(l + h / 2 * a1, n + h / 2 * b1);
    const auto [a3, b3] = f(l + h / 2 * a2, n + h / 2 * b2);
    const auto [a4, b4] = f(l + h * a3, n + h * b3);
    l += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    n += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  return n;
}

bool within(double analytic, const McEstimate& e) {
  return std::abs(analytic - e.value) <= 3.0 * std::max(e.std_error, 1e-6);
}

}  // namespace

TEST_CASE("convention names") {
  CHECK(parse_zeta_convention("prefactor-at-t") == ZetaConvention::PrefactorAtT);
  CHECK(parse_zeta_convention("at-zero") == ZetaConvention::PrefactorAtZero);
  CHECK(parse_theorem2_sign("plus-one") == Theorem2Sign::PlusOne);
  CHECK(parse_theorem2_sign("minus-one") == Theorem2Sign::MinusOne);
  CHECK(parse_zeta_convention(to_string(ZetaConvention::PrefactorAtZero)) ==
        ZetaConvention::PrefactorAtZero);
  CHECK(parse_theorem2_sign(to_string(Theorem2Sign::PlusOne)) == Theorem2Sign::PlusOne);
  CHECK_THROWS_AS(parse_zeta_convention("sideways"), DomainError);
  CHECK_THROWS_AS(parse_theorem2_sign("zero"), DomainError);
}

TEST_CASE("M/M closed form") {
  for (double t : {0.0, 0.3, 1.0, 4.0}) {
    for (double z : {0.0, 0.5, 1.0}) {
      for (double u : {0.0, 1.0}) {
        for (double v : {0.0, 0.5}) {
          CHECK(zeta_mm(2, 2, {t, z, u, v}) == doctest::Approx(mm_oracle(2, 2, t, z, u, v)));
          CHECK(zeta_mm(1.5, 3, {t, z, u, v}) ==
                doctest::Approx(mm_oracle(1.5, 3, t, z, u, v)));
        }
      }
    }
  }
  CHECK(zeta_mm(2, 2, {1, 0.5, 1, 0.5}) ==
        doctest::Approx(std::exp(-2.0) * std::exp(-(1 - std::exp(-2.0)) * (1 - 0.5 * std::exp(-1.0)))));
}

TEST_CASE("M/M pmf") {
  double sum = 0.0;
  for (int k = 0; k <= 200; ++k) sum += pmf_mm(2, 2, 1, k);
  CHECK(std::abs(sum - 1.0) < 1e-12);
  CHECK(pmf_mm(2, 2, 60, 0) == doctest::Approx(0.367879).epsilon(1e-6));
  for (int k = 0; k <= 12; ++k) {
    CHECK(pmf_mm(2, 2, 1, k) == doctest::Approx(poisson_pmf(1 - std::exp(-2.0), k)).epsilon(1e-12));
    CHECK(pmf_mm_stationary(3, 2, k) == doctest::Approx(poisson_pmf(1.5, k)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(pmf_mm(2, 2, 1, -1), DomainError);
  CHECK_THROWS_AS(pmf_mm(0, 2, 1, 1), DomainError);
}

TEST_CASE("every engine starts from the initial state") {
  const TransformQuery q{0.0, 0.4, 0.8, 1.3};
  const Model f1 = preset_fig1(), f2 = preset_fig2(), f3 = preset_fig3();
  CHECK(zeta_hawkes_sdhawkes(f1.arrival, f1.service, q) ==
        doctest::Approx(std::exp(-0.8 * 2)).epsilon(1e-12));
  CHECK(zeta_m_sdhawkes(2.0, f2.service, q) == doctest::Approx(1.0));
  CHECK(zeta_hawkes_m(f3.arrival, 2.0, 0.0, 0.4, 0.8) ==
        doctest::Approx(std::exp(-0.8 * 2)).epsilon(1e-12));
  for (const auto& name : preset_names()) {
    const Model m = preset(name);
    if (m.kind.tag == ModelKind::Tag::HawkesSdHawkes && !m.arrival.stable()) continue;
    CHECK(zeta(m, q) == doctest::Approx(std::exp(-0.8 * m.effective_arrival().lambda0)));
  }
}

TEST_CASE("property: normalization of every engine") {
  for (const auto& name : {"fig1", "fig2", "fig3", "mm-base"}) {
    const Model m = preset(name);
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      CAPTURE(name);
      CAPTURE(t);
      CHECK(std::abs(zeta(m, {t, 1.0, 0.0, 0.0}) - 1.0) <= 1e-6);
    }
  }
}

TEST_CASE("sign variants of the constant-rate engine") {
  const ServiceParams s = preset_fig2().service;
  TransformOptions plus;
  plus.sign = Theorem2Sign::PlusOne;
  for (double t : {0.5, 1.0, 2.0}) {
    CHECK(zeta_m_sdhawkes(2.0, s, {t, 1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(zeta_m_sdhawkes(2.0, s, {t, 1, 0, 0}, plus) ==
          doctest::Approx(std::exp(-4.0 * t)).epsilon(1e-9));
  }
}

TEST_CASE("zero z is rejected where the characteristic is singular") {
  const Model f1 = preset_fig1();
  CHECK_THROWS_AS(zeta_hawkes_sdhawkes(f1.arrival, f1.service, {1.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(zeta_m_sdhawkes(2.0, preset_fig2().service, {1.0, 0.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(zeta(f1, {1.0, 0.5, -1.0, 0.0}), DomainError);
}

TEST_CASE("Hawkes/M with Poisson arrivals is M/M") {
  const ArrivalParams poisson{2.0, 1.0, 2.0, JumpDist::constant(0)};
  for (double t : {0.5, 1.0, 3.0}) {
    for (double z : {0.0, 0.3, 0.9}) {
      CHECK(zeta_hawkes_m(poisson, 2.0, t, z, 0.0) ==
            doctest::Approx(mm_oracle(2, 2, t, z, 0, 0)).epsilon(1e-8));
    }
  }
}

TEST_CASE("Hawkes/M derivatives recover the first moments") {
  const ArrivalParams a = preset_fig3().arrival;
  const double h = 1e-5;
  for (double t : {0.5, 1.0, 2.0}) {
    const double dz = (zeta_hawkes_m(a, 2.0, t, 1.0, 0.0) - zeta_hawkes_m(a, 2.0, t, 1.0 - h, 0.0)) / h;
    CHECK(dz == doctest::Approx(mean_n_oracle(a, 2.0, t)).epsilon(1e-4));
    const double du = (zeta_hawkes_m(a, 2.0, t, 1.0, 0.0) - zeta_hawkes_m(a, 2.0, t, 1.0, h)) / h;
    CHECK(du == doctest::Approx(mean_lambda(a, t)).epsilon(1e-3));
  }
}

TEST_CASE("property: range and monotonicity of the Hawkes/M and M/M transforms") {
  for (const auto& name : {"fig3", "mm-base"}) {
    const Model m = preset(name);
    const std::vector<double> zs = {0.0, 0.2, 0.5, 0.8, 1.0}, us = {0.0, 0.5, 1.0, 2.0},
                              vs = {0.0, 0.5, 1.0};
    for (double t : {0.25, 1.0, 3.0}) {
      for (double z : zs) {
        for (double u : us) {
          for (double v : vs) {
            const double x = zeta(m, {t, z, u, v});
            CHECK(x > 0.0);
            CHECK(x <= 1.0 + 1e-12);
            if (z < 1.0) CHECK(zeta(m, {t, z + 0.1, u, v}) >= x - 1e-12);
            CHECK(zeta(m, {t, z, u + 0.1, v}) <= x + 1e-12);
            CHECK(zeta(m, {t, z, u, v + 0.1}) <= x + 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("Hawkes/M transform against Monte Carlo") {
  const Model m = preset_fig3();
  const std::vector<TransformQuery> qs = {{1.0, 0.5, 1.0, 0.0}, {1.0, 1.0, 1.0, 0.0},
                                          {2.0, 0.5, 0.0, 0.0}};
  const auto mc = mc_transform_grid(m, qs, 100'000, 31);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CAPTURE(i);
    CHECK(within(zeta(m, qs[i]), mc[i]));
  }
}

TEST_CASE("M/M transform against Monte Carlo") {
  const Model m = preset_mm_base();
  const std::vector<TransformQuery> qs = {{0.5, 0.0, 0.0, 0.0}, {1.0, 0.5, 1.0, 0.5},
                                          {10.0, 0.5, 0.0, 1.0}};
  const auto mc = mc_transform_grid(m, qs, 100'000, 32);
  for (std::size_t i = 0; i < qs.size(); ++i) CHECK(within(zeta(m, qs[i]), mc[i]));
}

TEST_CASE("characteristic forms agree for exponential jumps") {
  const Model m = preset_fig1();
  TransformOptions generic, fast;
  generic.form = CharacteristicForm::Generic;
  fast.form = CharacteristicForm::Exponential;
  for (double t : {0.2, 0.5}) {
    for (double z : {0.7, 1.0}) {
      const TransformQuery q{t, z, 0.5, 0.5};
      CHECK(zeta_hawkes_sdhawkes(m.arrival, m.service, q, generic) ==
            doctest::Approx(zeta_hawkes_sdhawkes(m.arrival, m.service, q, fast)).epsilon(1e-7));
    }
  }
}

TEST_CASE("pmf extraction reproduces the M/M pmf") {
  for (double t : {0.5, 1.0, 3.0}) {
    const auto est = pmf_from_pgf([&](double z) { return zeta_mm(2, 2, {t, z, 0, 0}); }, 10);
    REQUIRE(est.probabilities.size() == 11);
    for (int k = 0; k <= 10; ++k) {
      CAPTURE(t);
      CAPTURE(k);
      CHECK(std::abs(est.probabilities[k] - pmf_mm(2, 2, t, k)) < 1e-6);
    }
  }
}

TEST_CASE("property: extracted pmfs are probability vectors") {
  const Model hm = preset_fig3();
  for (double t : {0.5, 1.0, 2.0}) {
    const auto est = pmf_from_pgf([&](double z) { return zeta(hm, {t, z, 0, 0}); }, 15);
    REQUIRE(est.error_estimates.size() == est.probabilities.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < est.probabilities.size(); ++k) {
      CHECK(est.probabilities[k] >= -1e-8);
      CHECK(est.reliable[k] == (est.error_estimates[k] <= PgfOptions{}.max_error));
      if (est.reliable[k]) sum += est.probabilities[k];
    }
    CHECK(sum <= 1.0 + 1e-8);
    CHECK(est.reliable[0]);
    CHECK(est.reliable[1]);
  }
}

TEST_CASE("pmf extraction flags entries it cannot resolve") {
  const auto wide = pmf_from_pgf([](double z) { return std::exp(-8.0 * (1 - z)); }, 20);
  bool any_flagged = false;
  for (std::size_t k = 0; k < wide.reliable.size(); ++k) {
    if (!wide.reliable[k]) any_flagged = true;
    if (wide.reliable[k]) {
      CHECK(std::abs(wide.probabilities[k] - poisson_pmf(8.0, static_cast<int>(k))) <= 1e-4);
    }
  }
  CHECK(any_flagged);
  CHECK_THROWS_AS(pmf_from_pgf([](double) { return 1.0; }, 31), DomainError);
}
