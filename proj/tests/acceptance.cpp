// Acceptance checks. Each criterion prints one PASS/FAIL line and sets the
// exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hawkes_queue/moments.hpp"
#include "hawkes_queue/ode.hpp"
#include "hawkes_queue/presets.hpp"
#include "hawkes_queue/report_io.hpp"
#include "hawkes_queue/transform.hpp"
#include "hawkes_queue/validate.hpp"

using namespace hawkes_queue;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr std::size_t kPaths = 100'000;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string score_text(const ComparisonReport& r) {
  return "max |score| " + fmt("%.4g", r.max_abs_score());
}

void add_report(Outcome& o, const ComparisonReport& r) {
  o.check(r.pass, r.quantity + ": " + score_text(r) + " (" + r.criterion + ")");
  for (const auto& p : r.points) {
    if (!p.pass) {
      o.details.push_back("       " + p.label + (p.evaluated ? " score " + fmt("%.4g", p.score)
                                                             : " error: " + p.error));
    }
  }
}

double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// 1: moments against Monte Carlo at the figure parameters.
Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto r = compare_moments(preset_fig1(), {0.5, 1.0, 2.0, 5.0}, kPaths, kSeed);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  add_report(o, r);
  o.check(secs < 120.0, "runtime " + fmt("%.1f", secs) + " s (limit 120 s)");
  return o;
}

// 2: critical regime values, Monte Carlo, and continuity of the closed forms.
Outcome criterion2() {
  Outcome o;
  const Model c = preset_corollary1();
  o.check(std::abs(mean_lambda(c.arrival, 1.0) - 6.0) < 1e-12,
          "E[lambda_1] = " + fmt("%.12g", mean_lambda(c.arrival, 1.0)) + " (expected 6)");
  o.check(std::abs(mean_M(c.arrival, 1.0) - 4.0) < 1e-12,
          "E[M_1] = " + fmt("%.12g", mean_M(c.arrival, 1.0)) + " (expected 4)");

  const auto mc = mc_moments(c, {1.0}, kPaths, kSeed);
  ComparisonReport r;
  r.quantity = "critical regime vs Monte Carlo";
  r.criterion = "|z| <= 3";
  add_z_point(r, "E[lambda_1]", 1.0, mean_lambda(c.arrival, 1.0), mc[0].mean_lambda);
  add_z_point(r, "E[M_1]", 1.0, mean_M(c.arrival, 1.0), mc[0].mean_M);
  finalize(r);
  add_report(o, r);

  double worst = 0.0;
  for (double eps : {1e-5, -1e-5}) {
    ArrivalParams near = c.arrival;
    near.jump = JumpDist::constant(2.0 + eps);
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      worst = std::max({worst, rel_diff(mean_lambda(near, t), mean_lambda(c.arrival, t)),
                        rel_diff(var_lambda(near, t), var_lambda(c.arrival, t)),
                        rel_diff(mean_M(near, t), mean_M(c.arrival, t)),
                        rel_diff(var_M(near, t), var_M(c.arrival, t))});
    }
  }
  o.check(worst < 1e-3, "continuity at |r - E[B]| = 1e-5: max relative difference " +
                            fmt("%.3g", worst) + " (limit 1e-3)");
  return o;
}

// 3: stationary mean.
Outcome criterion3() {
  Outcome o;
  const Model m = preset_fig1();
  const double limit = 8.0 / 3.0;
  const double at50 = mean_lambda(m.arrival, 50.0);
  o.check(std::abs(at50 - limit) < 1e-6,
          "|E[lambda_50] - 8/3| = " + fmt("%.3g", std::abs(at50 - limit)) + " (limit 1e-6)");
  o.check(std::abs(stationary_lambda(m.arrival).mean - limit) < 1e-12,
          "stationary mean " + fmt("%.12g", stationary_lambda(m.arrival).mean));
  const auto mc = mc_moments(m, {50.0}, kPaths, kSeed);
  ComparisonReport r;
  r.quantity = "E[lambda_50] vs Monte Carlo";
  r.criterion = "|z| <= 3";
  add_z_point(r, "E[lambda_50]", 50.0, at50, mc[0].mean_lambda);
  finalize(r);
  add_report(o, r);
  return o;
}

// 4: moment ODE system against the closed forms.
Outcome criterion4() {
  Outcome o;
  const auto p = preset_fig1().arrival;
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(0.1 * i);
  const auto ode = moment_ode_solve(p, 2, grid);
  double worst = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    worst = std::max({worst, rel_diff(ode.moment(1, 0, i), mean_lambda(p, t)),
                      rel_diff(ode.var_lambda(i), var_lambda(p, t)),
                      rel_diff(ode.moment(0, 1, i), mean_M(p, t)),
                      rel_diff(ode.var_M(i), var_M(p, t))});
  }
  o.check(worst < 1e-6,
          "max relative deviation over t in [0, 5]: " + fmt("%.3g", worst) + " (limit 1e-6)");
  return o;
}

// 5: transform engines against Monte Carlo.
Outcome criterion5() {
  Outcome o;
  const std::vector<double> ts = {0.5, 1.0, 2.0}, zs = {0.3, 0.7, 1.0};
  struct Case {
    std::string name;
    Model model;
    std::vector<TransformQuery> queries;
  };
  const std::vector<Case> cases = {
      {"fig1 (Hawkes/sdHawkes)", preset_fig1(), query_grid(ts, zs, {0.0, 1.0}, {0.0, 1.0})},
      {"fig2 (M/sdHawkes)", preset_fig2(), query_grid(ts, zs, {0.0}, {0.0, 1.0})},
      {"fig3 (Hawkes/M)", preset_fig3(), query_grid(ts, zs, {0.0, 1.0}, {0.0})},
  };
  std::uint64_t offset = 0;
  for (const auto& c : cases) {
    for (double t : ts) {
      double x = NAN;
      std::string err;
      try {
        x = zeta(c.model, {t, 1.0, 0.0, 0.0});
      } catch (const std::exception& e) {
        err = e.what();
      }
      o.check(std::abs(x - 1.0) <= 1e-6, c.name + " normalization at t=" + fmt("%g", t) + ": " +
                                              (err.empty() ? fmt("%.12g", x) : err));
    }
    auto r = compare_transform(c.model, c.queries, kPaths, kSeed + offset++);
    r.quantity = c.name + " vs Monte Carlo";
    add_report(o, r);
  }
  return o;
}

// 6: reduction chain.
Outcome criterion6() {
  Outcome o;
  for (const auto& r : reduction_suite(kPaths, kSeed)) add_report(o, r);
  return o;
}

// 7: Dynkin formula and its fault-injected variants.
Outcome criterion7() {
  Outcome o;
  const Model m = preset_fig1();
  const std::vector<double> grid = {0.5, 1.0, 1.5, 2.0};
  DynkinOptions drop;
  drop.drop_jump_terms = true;
  std::uint64_t offset = 0;
  for (auto f : {Functional::Lambda, Functional::M, Functional::Lambda2}) {
    auto r = dynkin_martingale_test(m, f, grid, kPaths, kSeed + offset);
    add_report(o, r);
    auto faulty = dynkin_martingale_test(m, f, grid, kPaths, kSeed + offset, drop);
    o.check(!faulty.pass, std::string("fault injected (jump terms dropped) for f = ") +
                              to_string(f) + " detected: " + score_text(faulty));
    ++offset;
  }
  return o;
}

// 8: convention arbitration and the generated record.
Outcome criterion8() {
  Outcome o;
  const auto suite = run_suite("conventions", kSeed);
  const TransformOptions defaults;
  const std::map<ConventionQuestion, std::string> shipped = {
      {ConventionQuestion::VarianceConvention, to_string(MomentConvention::RawMoments)},
      {ConventionQuestion::ZetaPrefactor, to_string(defaults.zeta)},
      {ConventionQuestion::Theorem2Sign, to_string(defaults.sign)},
  };
  for (const auto& v : suite.verdicts) {
    const std::string q = to_string(v.question);
    o.check(v.strict() || v.winner == "tie",
            q + ": verdict '" + v.winner + "' at " + std::to_string(v.n_paths) + " paths");
    if (v.strict()) {
      o.check(v.winner == shipped.at(v.question),
              q + ": shipped default '" + shipped.at(v.question) + "' matches the verdict");
    }
  }
  o.check(suite.verdicts.size() == 3, "three verdicts recorded");
  const auto path = std::filesystem::path(HQ_WORK_DIR) / "CONVENTIONS.md";
  {
    std::ofstream out(path);
    out << conventions_markdown(suite.verdicts);
  }
  o.check(std::filesystem::file_size(path) > 0, "wrote " + path.string());
  return o;
}

double rk4_decay_error(double h) {
  const ode::OdeProblem p{[](double, std::span<const double> y, std::span<double> dy) {
                            dy[0] = -y[0];
                          },
                          {1.0},
                          0.0,
                          1.0};
  return std::abs(ode::integrate_rk4(p, h).final_state()[0] - std::exp(-1.0));
}

// 9: integrators.
Outcome criterion9() {
  Outcome o;
  for (double h : {0.1, 0.05, 0.025}) {
    const double order = std::log2(rk4_decay_error(h) / rk4_decay_error(h / 2));
    o.check(order >= 3.5 && order <= 4.5,
            "RK4 order between h=" + fmt("%g", h) + " and h/2: " + fmt("%.3f", order));
  }
  const Model m = preset_fig1();
  for (const TransformQuery& q : {TransformQuery{1.0, 0.5, 1.0, 1.0},
                                  TransformQuery{0.5, 0.3, 0.0, 1.0},
                                  TransformQuery{2.0, 0.7, 1.0, 0.0}}) {
    const auto p = hawkes_sdhawkes_problem(m.arrival, m.service, q, CharacteristicForm::Exponential);
    double diff = NAN;
    std::string err;
    try {
      const auto fixed = ode::integrate_rk4(p, 1e-4).final_state();
      const auto adaptive = ode::integrate_adaptive(p, TransformOptions{}.ode).final_state();
      diff = 0.0;
      for (std::size_t i = 0; i < fixed.size(); ++i) {
        diff = std::max(diff, std::abs(fixed[i] - adaptive[i]));
      }
    } catch (const std::exception& e) {
      err = e.what();
    }
    o.check(diff < 1e-6, "exponential-jump system at (t=" + fmt("%g", q.t) + ", z=" +
                             fmt("%g", q.z) + ", u=" + fmt("%g", q.u) + ", v=" + fmt("%g", q.v) +
                             "): adaptive vs RK4(h=1e-4) max diff " +
                             (err.empty() ? fmt("%.3g", diff) : err) + " (limit 1e-6)");
  }
  return o;
}

std::string run_cli(const std::string& args, const std::string& threads) {
  const auto out = std::filesystem::path(HQ_WORK_DIR) / "determinism.out";
  std::string cmd = std::string("HAWKES_QUEUE_THREADS=") + threads + " '" + HQ_CLI_PATH + "' " +
                    args + " > '" + out.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return "exit " + std::to_string(status) + "\n" + ss.str();
}

// 10: byte-identical outputs for repeated commands.
Outcome criterion10() {
  Outcome o;
  const std::vector<std::string> commands = {
      "simulate --preset fig1 --horizon 5 --seed 42",
      "simulate --preset fig1 --mc-paths 20000 --t-grid 0:5:6 --seed 42",
      "moments --preset fig1 --t-grid 0:5:51",
      "transform --preset fig3 --t-grid 0:5:51 --z 0.5 --u 1",
      "figure fig1",
      "validate --suite all --seed 42",
  };
  for (const auto& c : commands) {
    const std::string a = run_cli(c, "1"), b = run_cli(c, "1"), d = run_cli(c, "4");
    o.check(a == b && a == d && a.size() > 8,
            "`" + c + "` repeated (1 thread twice, then 4): " + std::to_string(a.size()) +
                " bytes, " + (a == b && a == d ? "identical" : "different"));
  }
  return o;
}

// Not a criterion: how the Hawkes/sdHawkes engine with memoryless service
// depends on s, which the queue itself does not.
Outcome large_s_diagnostic() {
  Outcome o;
  const Model hm = preset_fig3();
  const TransformQuery q{1.0, 0.5, 1.0, 0.0};
  const double target = zeta_hawkes_m(hm.arrival, hm.service.mu_star, q.t, q.z, q.u);
  o.details.push_back("info Hawkes/M engine: " + fmt("%.9g", target));
  for (double s : {0.5, 2.0, 20.0, 200.0, 2000.0}) {
    Model m = preset_fig1();
    m.service.jump = JumpDist::constant(0);
    m.service.mu0 = m.service.mu_star;
    m.service.s = s;
    std::string value;
    try {
      value = fmt("%.9g", zeta(m, q));
    } catch (const std::exception& e) {
      value = e.what();
    }
    o.details.push_back("info memoryless Hawkes/sdHawkes engine, s=" + fmt("%g", s) + ": " + value);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int criterion = 0;
  std::string diagnostic;
  app.add_option("--criterion", criterion, "Criterion number 1-10")->check(CLI::Range(1, 10));
  app.add_option("--diagnostic", diagnostic, "large-s");
  CLI11_PARSE(app, argc, argv);

  const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria = {
      {1, {"moment agreement with Monte Carlo", criterion1}},
      {2, {"critical regime", criterion2}},
      {3, {"stationary limit", criterion3}},
      {4, {"moment ODE system vs closed forms", criterion4}},
      {5, {"transform engines vs Monte Carlo", criterion5}},
      {6, {"reduction chain", criterion6}},
      {7, {"Dynkin formula", criterion7}},
      {8, {"convention arbitration", criterion8}},
      {9, {"ODE integrators", criterion9}},
      {10, {"determinism", criterion10}},
  };

  if (diagnostic == "large-s") {
    const Outcome o = large_s_diagnostic();
    std::printf("INFO diagnostic large-s\n");
    for (const auto& d : o.details) std::printf("  %s\n", d.c_str());
    return 0;
  }
  if (!diagnostic.empty()) {
    std::fprintf(stderr, "unknown diagnostic '%s'\n", diagnostic.c_str());
    return 2;
  }

  std::vector<int> which;
  if (criterion != 0) {
    which.push_back(criterion);
  } else {
    for (const auto& [n, _] : criteria) which.push_back(n);
  }

  bool all = true;
  for (int n : which) {
    const auto& [name, fn] = criteria.at(n);
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, name.c_str());
    for (const auto& d : o.details) std::printf("  %s\n", d.c_str());
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
