#include "hawkes_queue/figure.hpp"

#include <cstdio>
#include <ostream>

#include "hawkes_queue/presets.hpp"
#include "hawkes_queue/transform.hpp"

namespace hawkes_queue {

std::vector<FigureCurve> figure_curves(const std::string& name) {
  if (name == "fig1") {
    return {{1.0, 1.0, 0.0}, {1.0, 1.0, 0.5}, {0.9, 0.0, 0.0}, {0.9, 1.0, 0.0}, {0.9, 0.0, 0.5},
            {0.8, 0.0, 0.0}, {0.7, 0.0, 0.0}, {0.7, 1.0, 0.0}, {0.5, 1.0, 0.0}};
  }
  if (name == "fig2") {
    return {{1.0, 0.0, 0.5}, {0.9, 0.0, 0.0}, {0.9, 0.0, 0.5}, {0.8, 0.0, 0.0}, {0.7, 0.0, 0.0},
            {0.7, 0.0, 0.5}};
  }
  if (name == "fig3") {
    return {{1.0, 1.0, 0.0}, {0.9, 0.0, 0.0}, {0.5, 0.0, 0.0}, {0.1, 0.0, 0.0},
            {0.9, 1.0, 0.0}, {0.5, 1.0, 0.0}, {0.1, 1.0, 0.0}};
  }
  throw DomainError("figure: expected fig1, fig2 or fig3, got '" + name + "'");
}

void write_figure_csv(std::ostream& out, const std::string& name, int points) {
  if (points < 2) throw DomainError("figure: need at least two time points");
  const Model model = preset(name);
  const auto curves = figure_curves(name);
  out << "t,z,u,v,zeta\n";
  char line[200];
  for (const auto& c : curves) {
    for (int i = 0; i < points; ++i) {
      const double t = 5.0 * i / (points - 1);
      const double value = zeta(model, {t, c.z, c.u, c.v});
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", t, c.z, c.u, c.v, value);
      out << line;
    }
  }
}

}  // namespace hawkes_queue
