#include "hawkes_queue/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "hawkes_queue/figure.hpp"
#include "hawkes_queue/moments.hpp"
#include "hawkes_queue/params_io.hpp"
#include "hawkes_queue/presets.hpp"
#include "hawkes_queue/report_io.hpp"
#include "hawkes_queue/simulator.hpp"
#include "hawkes_queue/transform.hpp"
#include "hawkes_queue/validate.hpp"

namespace hawkes_queue::cli {

namespace {

struct ModelArgs {
  std::string preset;
  std::string params;
  std::string model;
};

struct Options {
  ModelArgs m;
  std::string out;
  unsigned long long seed = kDefaultSeed;
  // simulate
  double horizon = 5.0;
  std::size_t mc_paths = 0;
  std::string sim_grid = "0:5:6";
  // moments
  std::string moment_grid = "0:5:51";
  std::string moment_convention = "raw-moments";
  std::string method = "closed-form";
  // transform
  std::string transform_grid = "0:5:51";
  double z = 1.0, u = 0.0, v = 0.0;
  std::string zeta_convention = "prefactor-at-t";
  std::string sign = "minus-one";
  // validate
  std::string suite = "all";
  double scale = 1.0;
  std::string conventions_out;
  // figure
  std::string figure;
  int points = 51;
};

struct Apps {
  std::unique_ptr<CLI::App> app;
  CLI::App* simulate = nullptr;
  CLI::App* moments = nullptr;
  CLI::App* transform = nullptr;
  CLI::App* validate = nullptr;
  CLI::App* figure = nullptr;
};

void add_model_flags(CLI::App* sub, ModelArgs& m) {
  sub->add_option("--preset", m.preset, "Named parameter set: fig1, fig2, fig3, mm-base, corollary1");
  sub->add_option("--params", m.params, "Parameter JSON, inline or a file path");
  sub->add_option("--model", m.model, "Override the model: hsd, msd, hm, mm");
}

Apps build(Options& o) {
  Apps a;
  a.app = std::make_unique<CLI::App>(
      "Hawkes-driven infinite-server queues: simulation, moments, transforms, validation",
      "hawkes_queue");
  a.app->require_subcommand(1);
  a.app->set_help_all_flag("--help-all", "Help for every subcommand");

  a.simulate = a.app->add_subcommand("simulate", "Simulate one path (CSV) or Monte Carlo moments (JSON)");
  add_model_flags(a.simulate, o.m);
  a.simulate->add_option("--horizon", o.horizon, "Path horizon")->capture_default_str();
  a.simulate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  a.simulate->add_option("--mc-paths", o.mc_paths,
                         "Number of paths; > 0 switches to Monte Carlo moment estimates")
      ->capture_default_str();
  a.simulate->add_option("--t-grid", o.sim_grid, "Times a:b:n for Monte Carlo moments")
      ->capture_default_str();
  a.simulate->add_option("--out", o.out, "Output file (default stdout)");

  a.moments = a.app->add_subcommand("moments", "Moments of the arrival process (CSV)");
  add_model_flags(a.moments, o.m);
  a.moments->add_option("--t-grid", o.moment_grid, "Times a:b:n")->capture_default_str();
  a.moments->add_option("--convention", o.moment_convention, "raw-moments or as-written")
      ->capture_default_str();
  a.moments->add_option("--method", o.method, "closed-form or ode")->capture_default_str();
  a.moments->add_option("--out", o.out, "Output file (default stdout)");

  a.transform = a.app->add_subcommand("transform", "Joint transform zeta(t,z,u,v) on a time grid (CSV)");
  add_model_flags(a.transform, o.m);
  a.transform->add_option("--t-grid", o.transform_grid, "Times a:b:n")->capture_default_str();
  a.transform->add_option("--z", o.z, "z in [0, 1]")->capture_default_str();
  a.transform->add_option("--u", o.u, "u >= 0")->capture_default_str();
  a.transform->add_option("--v", o.v, "v >= 0")->capture_default_str();
  a.transform->add_option("--convention", o.zeta_convention,
                          "lambda0 prefactor: prefactor-at-t or prefactor-at-zero")
      ->capture_default_str();
  a.transform->add_option("--sign", o.sign, "M/sdHawkes exponent: minus-one or plus-one")
      ->capture_default_str();
  a.transform->add_option("--out", o.out, "Output file (default stdout)");

  a.validate = a.app->add_subcommand("validate", "Run a validation suite (JSON report)");
  a.validate->add_option("--suite", o.suite,
                         "moments, transform, dynkin, reductions, conventions or all")
      ->capture_default_str();
  a.validate->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  a.validate->add_option("--scale", o.scale, "Multiplier on Monte Carlo path counts")
      ->capture_default_str();
  a.validate->add_option("--out", o.out, "JSON report file (default stdout)");
  a.validate->add_option("--conventions-out", o.conventions_out,
                         "Write the CONVENTIONS.md record of arbitrated verdicts here");

  a.figure = a.app->add_subcommand("figure", "zeta-versus-t curves of a figure parameter set (CSV)");
  a.figure->add_option("name", o.figure, "fig1, fig2 or fig3")->required();
  a.figure->add_option("--points", o.points, "Time points on [0, 5]")->capture_default_str();
  a.figure->add_option("--out", o.out, "Output file (default stdout)");
  return a;
}

Model resolve_model(const ModelArgs& m) {
  if (!m.preset.empty() && !m.params.empty()) {
    throw DomainError("--preset and --params are mutually exclusive");
  }
  if (m.preset.empty() && m.params.empty()) {
    throw DomainError("no model given: pass --preset or --params");
  }
  Model model = m.preset.empty() ? load_model(m.params) : preset(m.preset);
  if (!m.model.empty()) {
    const auto tag = parse_model_tag(m.model);
    if (tag != model.kind.tag) {
      model.kind.tag = tag;
      model.kind.lambda = tag == ModelKind::Tag::MSdHawkes ? model.arrival.lambda_star : 0.0;
    }
  }
  model.validate();
  return model;
}

// Renders into a buffer first so a failure leaves no partial file.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("--out: cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw DomainError("--out: write to '" + path + "' failed");
}

std::string g12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Model model = resolve_model(o.m);
  std::ostringstream text;
  if (o.mc_paths > 0) {
    const auto rows = mc_moments(model, parse_grid(o.sim_grid), o.mc_paths, o.seed);
    text << mc_moments_json(rows).dump(2) << "\n";
  } else {
    write_trajectory_csv(text, simulate_path(model, o.horizon, o.seed));
  }
  emit(text.str(), o.out, out);
  return kExitOk;
}

int cmd_moments(const Options& o, std::ostream& out) {
  const Model model = resolve_model(o.m);
  const ArrivalParams a = model.effective_arrival();
  MomentConvention conv;
  if (o.moment_convention == "raw-moments") {
    conv = MomentConvention::RawMoments;
  } else if (o.moment_convention == "as-written") {
    conv = MomentConvention::AsWritten;
  } else {
    throw DomainError("--convention: expected raw-moments or as-written");
  }
  const auto grid = parse_grid(o.moment_grid);
  std::ostringstream text;
  text << "t,mean_lambda,var_lambda,mean_M,var_M\n";
  if (o.method == "closed-form") {
    for (double t : grid) {
      const MomentReport r = moment_report(a, t, conv);
      text << g12(t) << ',' << g12(r.mean_lambda) << ',' << g12(r.var_lambda) << ','
           << g12(r.mean_M) << ',' << g12(r.var_M) << '\n';
    }
  } else if (o.method == "ode") {
    const auto res = moment_ode_solve(a, 2, grid, conv);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      text << g12(grid[i]) << ',' << g12(res.moment(1, 0, i)) << ',' << g12(res.var_lambda(i))
           << ',' << g12(res.moment(0, 1, i)) << ',' << g12(res.var_M(i)) << '\n';
    }
  } else {
    throw DomainError("--method: expected closed-form or ode");
  }
  emit(text.str(), o.out, out);
  return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
  const Model model = resolve_model(o.m);
  TransformOptions opt;
  opt.zeta = parse_zeta_convention(o.zeta_convention);
  opt.sign = parse_theorem2_sign(o.sign);
  std::ostringstream text;
  text << "t,z,u,v,zeta\n";
  for (double t : parse_grid(o.transform_grid)) {
    const double value = zeta(model, {t, o.z, o.u, o.v}, opt);
    text << g12(t) << ',' << g12(o.z) << ',' << g12(o.u) << ',' << g12(o.v) << ',' << g12(value)
         << '\n';
  }
  emit(text.str(), o.out, out);
  return kExitOk;
}

int cmd_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const SuiteResult result = run_suite(o.suite, o.seed, o.scale);
  emit(to_json(result).dump(2) + "\n", o.out, out);
  if (!o.conventions_out.empty()) {
    if (result.verdicts.empty()) {
      err << "note: suite '" << o.suite << "' has no convention verdicts; "
          << "CONVENTIONS.md lists none\n";
    }
    std::ofstream f(o.conventions_out, std::ios::binary);
    if (!f) throw DomainError("--conventions-out: cannot open '" + o.conventions_out + "'");
    f << conventions_markdown(result.verdicts);
  }
  for (const auto& r : result.reports) {
    if (!r.pass) err << "FAIL " << r.quantity << " (max |score| " << r.max_abs_score() << ")\n";
  }
  for (const auto& v : result.verdicts) {
    err << "verdict " << to_string(v.question) << ": " << v.winner << "\n";
  }
  return result.pass ? kExitOk : kExitValidation;
}

int cmd_figure(const Options& o, std::ostream& out) {
  std::ostringstream text;
  write_figure_csv(text, o.figure, o.points);
  emit(text.str(), o.out, out);
  return kExitOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](const std::string& s) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw DomainError("--t-grid: cannot parse '" + spec + "'");
    return x;
  };
  if (parts.size() == 1) return {num(parts[0])};
  if (parts.size() != 3) throw DomainError("--t-grid: expected a:b:n, got '" + spec + "'");
  const double a = num(parts[0]), b = num(parts[1]), nd = num(parts[2]);
  if (nd < 1 || nd != static_cast<double>(static_cast<long>(nd))) {
    throw DomainError("--t-grid: n must be a positive integer");
  }
  if (!(a >= 0.0) || !(b >= a)) throw DomainError("--t-grid: need 0 <= a <= b");
  const auto n = static_cast<std::size_t>(nd);
  std::vector<double> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

std::string help_text(const std::string& subcommand) {
  Options o;
  Apps a = build(o);
  if (subcommand.empty()) return a.app->help();
  return a.app->get_subcommand(subcommand)->help(a.app->get_name());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  Apps a = build(o);
  try {
    a.app->parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = a.app->exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }
  try {
    if (a.simulate->parsed()) return cmd_simulate(o, out);
    if (a.moments->parsed()) return cmd_moments(o, out);
    if (a.transform->parsed()) return cmd_transform(o, out);
    if (a.validate->parsed()) return cmd_validate(o, out, err);
    if (a.figure->parsed()) return cmd_figure(o, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitDomain;
}

}  // namespace hawkes_queue::cli
