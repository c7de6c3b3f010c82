#include "hawkes_queue/model.hpp"

#include <cmath>
#include <sstream>

namespace hawkes_queue {

JumpDist JumpDist::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("exponential jump rate must be positive and finite");
  }
  return {Kind::Exponential, rate};
}

JumpDist JumpDist::constant(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError("constant jump value must be non-negative and finite");
  }
  return {Kind::Constant, value};
}

double JumpDist::mean() const {
  return kind_ == Kind::Exponential ? 1.0 / param_ : param_;
}

double JumpDist::laplace(double u) const {
  if (!(u >= 0.0)) throw DomainError("laplace transform argument must be >= 0");
  return laplace_continued(u);
}

double JumpDist::laplace_continued(double u) const {
  if (kind_ == Kind::Constant) return std::exp(-u * param_);
  if (!(u > -param_)) {
    std::ostringstream msg;
    msg << "laplace transform of Exponential(" << param_
        << ") diverges at argument " << u;
    throw NumericalError(msg.str());
  }
  return param_ / (param_ + u);
}

double JumpDist::raw_moment(int n) const {
  if (n < 1) throw DomainError("raw_moment order must be >= 1");
  if (kind_ == Kind::Constant) return std::pow(param_, n);
  // n! / a^n
  double m = 1.0;
  for (int k = 1; k <= n; ++k) m *= k / param_;
  return m;
}

double JumpDist::sample(Rng& rng) const {
  if (kind_ == Kind::Constant) return param_;
  return exponential_draw(rng, param_);
}

std::string to_string(const JumpDist& d) {
  std::ostringstream out;
  out << (d.kind() == JumpDist::Kind::Exponential ? "Exponential(" : "Constant(")
      << d.param() << ")";
  return out.str();
}

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw DomainError(std::string(field) + ": " + what);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }
bool finite_pos(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void ArrivalParams::validate() const {
  require(finite_nonneg(lambda_star), "lambda_star", "must be >= 0");
  require(finite_pos(r), "r", "must be > 0");
  require(finite_nonneg(lambda0), "lambda0", "must be >= 0");
}

void ServiceParams::validate() const {
  require(finite_nonneg(mu_star), "mu_star", "must be >= 0");
  require(finite_pos(s), "s", "must be > 0");
  require(finite_nonneg(mu0), "mu0", "must be >= 0");
}

std::string short_name(ModelKind::Tag tag) {
  switch (tag) {
    case ModelKind::Tag::HawkesSdHawkes: return "hsd";
    case ModelKind::Tag::MSdHawkes: return "msd";
    case ModelKind::Tag::HawkesM: return "hm";
    case ModelKind::Tag::MM: return "mm";
  }
  return "?";
}

ModelKind::Tag parse_model_tag(const std::string& name) {
  if (name == "hsd") return ModelKind::Tag::HawkesSdHawkes;
  if (name == "msd") return ModelKind::Tag::MSdHawkes;
  if (name == "hm") return ModelKind::Tag::HawkesM;
  if (name == "mm") return ModelKind::Tag::MM;
  throw DomainError("model: unknown model '" + name + "' (expected hsd, msd, hm, mm)");
}

void Model::validate() const {
  arrival.validate();
  service.validate();
  switch (kind.tag) {
    case ModelKind::Tag::HawkesSdHawkes:
      break;
    case ModelKind::Tag::MSdHawkes:
      require(finite_pos(kind.lambda), "model",
              "M/sdHawkes needs a constant arrival rate > 0");
      break;
    case ModelKind::Tag::HawkesM:
      require(service.memoryless(), "service_jump",
              "Hawkes/M needs memoryless service (C = 0 and mu0 = mu_star)");
      break;
    case ModelKind::Tag::MM:
      require(service.memoryless(), "service_jump",
              "M/M needs memoryless service (C = 0 and mu0 = mu_star)");
      require(arrival.jump.is_zero() && arrival.lambda0 == arrival.lambda_star,
              "arrival_jump", "M/M needs Poisson arrivals (B = 0 and lambda0 = lambda_star)");
      break;
  }
}

ArrivalParams Model::effective_arrival() const {
  if (kind.tag != ModelKind::Tag::MSdHawkes) return arrival;
  ArrivalParams a = arrival;
  a.lambda_star = kind.lambda;
  a.lambda0 = kind.lambda;
  a.jump = JumpDist::constant(0.0);
  return a;
}

}  // namespace hawkes_queue
