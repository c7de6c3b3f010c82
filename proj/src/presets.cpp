#include "hawkes_queue/presets.hpp"

namespace hawkes_queue {

Model preset_fig1() {
  Model m;
  m.kind = ModelKind::hawkes_sdhawkes();
  m.arrival = {2.0, 2.0, 2.0, JumpDist::exponential(2.0)};
  m.service = {2.0, 2.0, 2.0, JumpDist::exponential(2.0), ResetPolicy::BusyPeriodStart};
  return m;
}

Model preset_fig2() {
  Model m;
  m.kind = ModelKind::m_sdhawkes(2.0);
  m.arrival = {2.0, 2.0, 2.0, JumpDist::constant(0.0)};
  m.service = {2.0, 2.0, 2.0, JumpDist::exponential(2.0), ResetPolicy::BusyPeriodStart};
  return m;
}

Model preset_fig3() {
  Model m;
  m.kind = ModelKind::hawkes_m();
  m.arrival = {2.0, 2.0, 2.0, JumpDist::exponential(2.0)};
  m.service = {2.0, 2.0, 2.0, JumpDist::constant(0.0), ResetPolicy::BusyPeriodStart};
  return m;
}

Model preset_mm_base() {
  Model m;
  m.kind = ModelKind::mm();
  m.arrival = {2.0, 2.0, 2.0, JumpDist::constant(0.0)};
  m.service = {2.0, 2.0, 2.0, JumpDist::constant(0.0), ResetPolicy::BusyPeriodStart};
  return m;
}

Model preset_corollary1() {
  Model m = preset_fig1();
  m.arrival.jump = JumpDist::constant(2.0);
  return m;
}

Model preset(const std::string& name) {
  if (name == "fig1") return preset_fig1();
  if (name == "fig2") return preset_fig2();
  if (name == "fig3") return preset_fig3();
  if (name == "mm-base") return preset_mm_base();
  if (name == "corollary1") return preset_corollary1();
  throw DomainError("preset: unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "mm-base", "corollary1"};
}

}  // namespace hawkes_queue
