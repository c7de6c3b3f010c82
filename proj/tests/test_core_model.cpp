#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hawkes_queue/model.hpp"
#include "hawkes_queue/params_io.hpp"
#include "hawkes_queue/presets.hpp"
#include "hawkes_queue/random.hpp"

using namespace hawkes_queue;

namespace {

// Trapezoid quadrature of x^n a e^{-ax} on [0, 40/a].
double exponential_moment_by_quadrature(double a, int n) {
  const int steps = 400000;
  const double hi = 40.0 / a, h = hi / steps;
  double sum = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double x = i * h;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    sum += w * std::pow(x, n) * a * std::exp(-a * x);
  }
  return sum * h;
}

}  // namespace

TEST_CASE("laplace transform of the jump laws") {
  CHECK(JumpDist::exponential(2).laplace(0) == 1.0);
  CHECK(JumpDist::exponential(2).laplace(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(JumpDist::constant(0).laplace(7.3) == 1.0);
  CHECK(JumpDist::constant(1.5).laplace(2) == doctest::Approx(std::exp(-3.0)));
  CHECK_THROWS_AS(JumpDist::exponential(2).laplace(-0.1), DomainError);
}

TEST_CASE("continued laplace transform") {
  CHECK(JumpDist::exponential(2).laplace_continued(-1) == doctest::Approx(2.0));
  CHECK(JumpDist::constant(1).laplace_continued(-1) == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(JumpDist::exponential(2).laplace_continued(-2), NumericalError);
}

TEST_CASE("raw moments") {
  CHECK(JumpDist::exponential(2).raw_moment(1) == 0.5);
  CHECK(JumpDist::exponential(2).raw_moment(2) ==
        doctest::Approx(exponential_moment_by_quadrature(2, 2)).epsilon(1e-6));
  CHECK(JumpDist::exponential(3).raw_moment(3) ==
        doctest::Approx(exponential_moment_by_quadrature(3, 3)).epsilon(1e-6));
  CHECK(JumpDist::constant(3).raw_moment(2) == 9.0);
  CHECK_THROWS_AS(JumpDist::constant(3).raw_moment(0), DomainError);
}

TEST_CASE("sampling") {
  Rng rng = make_path_rng(5, 0);
  CHECK(JumpDist::constant(2).sample(rng) == 2.0);

  Rng a = make_path_rng(11, 3), b = make_path_rng(11, 3);
  CHECK(JumpDist::exponential(2).sample(a) == JumpDist::exponential(2).sample(b));

  Rng big = make_path_rng(1, 0);
  double sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) sum += JumpDist::exponential(2).sample(big);
  CHECK(std::abs(sum / n - 0.5) < 0.002);
}

TEST_CASE("property: laplace lies between the Jensen bound and 1") {
  const std::vector<JumpDist> laws = {JumpDist::exponential(0.5), JumpDist::exponential(2),
                                      JumpDist::exponential(10), JumpDist::constant(0),
                                      JumpDist::constant(0.7), JumpDist::constant(3)};
  for (const auto& d : laws) {
    for (double u = 0.0; u <= 20.0; u += 0.25) {
      const double l = d.laplace(u);
      CHECK(l <= 1.0);
      CHECK(l >= 1.0 - u * d.raw_moment(1) - 1e-15);
    }
  }
}

TEST_CASE("property: sample means converge across seeds") {
  const int n = 100'000;
  for (const auto& d : {JumpDist::exponential(2), JumpDist::exponential(0.5)}) {
    const double sd = std::sqrt(d.raw_moment(2) - d.mean() * d.mean());
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng = make_path_rng(1000 + seed, 0);
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += d.sample(rng);
      CHECK(std::abs(sum / n - d.mean()) <= 4.0 * sd / std::sqrt(n));
    }
  }
}

TEST_CASE("path streams are independent of each other") {
  Rng a = make_path_rng(7, 0), b = make_path_rng(7, 1), c = make_path_rng(8, 0);
  const auto x = a(), y = b(), z = c();
  CHECK(x != y);
  CHECK(x != z);
}

TEST_CASE("parameter validation") {
  ArrivalParams a{2, 2, 2, JumpDist::exponential(2)};
  CHECK_NOTHROW(a.validate());
  a.r = 0;
  CHECK_THROWS_AS(a.validate(), DomainError);
  a.r = 2;
  a.lambda0 = -1;
  CHECK_THROWS_AS(a.validate(), DomainError);

  ServiceParams s{2, 2, 2, JumpDist::exponential(2)};
  CHECK_NOTHROW(s.validate());
  s.s = -1;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.s = 2;
  s.mu_star = -0.5;
  CHECK_THROWS_AS(s.validate(), DomainError);

  CHECK_THROWS_AS(JumpDist::exponential(0), DomainError);
  CHECK_THROWS_AS(JumpDist::constant(-1), DomainError);
}

TEST_CASE("model kinds constrain the service law") {
  Model hm = preset_fig3();
  CHECK_NOTHROW(hm.validate());
  hm.service.jump = JumpDist::exponential(2);
  CHECK_THROWS_AS(hm.validate(), DomainError);

  Model mm = preset_mm_base();
  mm.service.mu0 = 3;
  CHECK_THROWS_AS(mm.validate(), DomainError);
}

TEST_CASE("stability is a flag") {
  CHECK(preset_fig1().arrival.stable());
  const Model c = preset_corollary1();
  CHECK_FALSE(c.arrival.stable());
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("presets") {
  const Model f1 = preset_fig1();
  CHECK(f1.arrival.lambda0 == 2);
  CHECK(f1.arrival.lambda_star == 2);
  CHECK(f1.arrival.r == 2);
  CHECK(f1.service.s == 2);
  CHECK(f1.service.mu_star == 2);
  CHECK(f1.arrival.jump == JumpDist::exponential(2));
  CHECK(f1.service.jump == JumpDist::exponential(2));
  CHECK(preset_fig2().kind == ModelKind::m_sdhawkes(2));
  CHECK(preset_fig3().kind.tag == ModelKind::Tag::HawkesM);
  for (const auto& name : preset_names()) CHECK_NOTHROW(preset(name).validate());
  CHECK_THROWS_AS(preset("fig9"), DomainError);
}

TEST_CASE("parameter documents round-trip") {
  for (const auto& name : preset_names()) {
    const Model m = preset(name);
    const Model back = model_from_json(model_to_json(m));
    CHECK(back.kind == m.kind);
    CHECK(back.arrival.lambda0 == m.arrival.lambda0);
    CHECK(back.arrival.jump == m.arrival.jump);
    CHECK(back.service.mu_star == m.service.mu_star);
    CHECK(back.service.jump == m.service.jump);
  }
}

TEST_CASE("parameter documents are strict") {
  auto doc = model_to_json(preset_fig1());
  auto extra = doc;
  extra["lambda_bar"] = 1.0;
  CHECK_THROWS_AS(model_from_json(extra), DomainError);

  auto missing = doc;
  missing.erase("mu0");
  try {
    model_from_json(missing);
    FAIL("missing key accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("mu0") != std::string::npos);
  }

  auto bad_kind = doc;
  bad_kind["arrival_jump"]["kind"] = "gamma";
  CHECK_THROWS_AS(model_from_json(bad_kind), DomainError);

  CHECK_NOTHROW(load_model(doc.dump()));
  CHECK_THROWS_AS(load_model("{not json"), DomainError);
}
