#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hawkes_queue {

struct FigureCurve {
  double z = 1.0;
  double u = 0.0;
  double v = 0.0;
};

/// (z, u, v) curves exported for fig1, fig2 and fig3.
std::vector<FigureCurve> figure_curves(const std::string& name);

/// CSV `t,z,u,v,zeta` of every curve on `points` equally spaced times in [0, 5].
void write_figure_csv(std::ostream& out, const std::string& name, int points = 51);

}  // namespace hawkes_queue
