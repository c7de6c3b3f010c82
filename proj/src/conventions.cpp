#include <cmath>
#include <sstream>

#include "hawkes_queue/report_io.hpp"

namespace hawkes_queue {

namespace {

const char* question_title(ConventionQuestion q) {
  switch (q) {
    case ConventionQuestion::VarianceConvention:
      return "Second jump moment in Var[lambda_t]: E[B^2] (raw-moments) or E[B]^2 (as-written)";
    case ConventionQuestion::ZetaPrefactor:
      return "lambda0 prefactor of the Hawkes/sdHawkes transform: e^{-u(t) lambda0} or "
             "e^{-u(0) lambda0}";
    case ConventionQuestion::Theorem2Sign:
      return "M/sdHawkes exponent: exp{-lambda int (1 - z(x))} (minus-one) or "
             "exp{-lambda int (z(x) + 1)} (plus-one)";
  }
  return "?";
}

std::string shipped_default(ConventionQuestion q) {
  switch (q) {
    case ConventionQuestion::VarianceConvention: return to_string(MomentConvention::RawMoments);
    case ConventionQuestion::ZetaPrefactor: return to_string(TransformOptions{}.zeta);
    case ConventionQuestion::Theorem2Sign: return to_string(TransformOptions{}.sign);
  }
  return "?";
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void table(std::ostringstream& out, const ComparisonReport& r) {
  out << "**" << r.quantity << "** (" << r.criterion << "): " << (r.pass ? "pass" : "fail")
      << "\n\n| point | t | analytic | reference | SE | score |\n|---|---|---|---|---|---|\n";
  for (const auto& p : r.points) {
    out << "| " << p.label << " | " << fmt(p.t) << " | "
        << (p.evaluated ? fmt(p.analytic) : "error") << " | " << fmt(p.reference.value) << " | "
        << fmt(p.reference.std_error) << " | " << fmt(p.score) << " |\n";
  }
  out << "\n";
}

}  // namespace

std::string conventions_markdown(const std::vector<ConventionVerdict>& verdicts) {
  std::ostringstream out;
  out << "# Conventions\n\n"
      << "Each ambiguity below was settled against the Monte Carlo simulator. A candidate wins\n"
      << "when all its scores satisfy |z| <= 3 while the other has some |z| > 5. A candidate\n"
      << "that breaks the normalization zeta(t,1,0,0) = 1 is eliminated before that.\n\n";
  for (const auto& v : verdicts) {
    const std::string def = shipped_default(v.question);
    out << "## " << to_string(v.question) << "\n\n"
        << question_title(v.question) << "\n\n"
        << "- verdict: **" << v.winner << "**\n"
        << "- shipped default: `" << def << "`"
        << (v.winner == def || v.winner == "tie" ? "" : " (does not match the verdict)") << "\n"
        << "- paths: " << v.n_paths << "\n";
    if (!v.note.empty()) out << "- note: " << v.note << "\n";
    out << "\n";
    table(out, v.evidence_a);
    table(out, v.evidence_b);
    for (const auto& r : v.supplementary) table(out, r);
  }
  return out.str();
}

}  // namespace hawkes_queue
