#include "kdvsat/feedback.hpp"

#include <cmath>

#include "kdvsat/diagnostics.hpp"
#include "kdvsat/errors.hpp"

namespace kdvsat {

FeedbackLaw FeedbackLaw::linear(double gain_a) {
  if (!(gain_a > 0.0)) throw ConfigError("FeedbackLaw::linear: gain must be positive");
  return FeedbackLaw(Kind::Linear, gain_a, 0.0);
}

FeedbackLaw FeedbackLaw::saturated(double gain_a, double level_u_s) {
  if (!(gain_a > 0.0)) throw ConfigError("FeedbackLaw::saturated: gain must be positive");
  if (!(level_u_s > 0.0)) throw ConfigError("FeedbackLaw::saturated: level must be positive");
  return FeedbackLaw(Kind::Saturated, gain_a, level_u_s);
}

namespace detail {

void control_apply(const FeedbackLaw& law, std::span<const double> y, double h,
                   std::span<double> out) {
  const size_t n = y.size();
  switch (law.kind()) {
    case FeedbackLaw::Kind::Zero:
      for (size_t i = 0; i < n; ++i) out[i] = 0.0;
      break;
    case FeedbackLaw::Kind::Linear:
      for (size_t i = 0; i < n; ++i) out[i] = law.gain() * y[i];
      break;
    case FeedbackLaw::Kind::Saturated:
      for (size_t i = 0; i < n; ++i) out[i] = law.gain() * y[i];
      sat_inplace(out, h, law.level());
      break;
  }
}

} // namespace detail

StateField control_field(const FeedbackLaw& law, const StateField& y) {
  std::vector<double> out(static_cast<size_t>(y.size()));
  detail::control_apply(law, y.values(), y.grid().spacing(), out);
  return StateField(y.grid(), std::move(out));
}

DecayEnvelope decay_envelope(const FeedbackLaw& law, double r) {
  if (law.kind() != FeedbackLaw::Kind::Saturated)
    throw ConfigError("decay_envelope: needs a saturated law");
  if (!(r > 0.0)) throw ConfigError("decay_envelope: radius must be positive");
  const double a = law.gain();
  const double us = law.level();
  DecayEnvelope env{};
  env.radius_r = r;
  env.gain_a = a;
  env.level_u_s = us;
  env.mu = std::min(a, us / r);
  env.switch_time_T_r = (a * r > us) ? std::log(a * r / us) / env.mu : 0.0;
  env.amplification = std::exp(a * env.switch_time_T_r);
  return env;
}

EnvelopeReport rate_envelope_check(const EnergyTrace& trace, double rate,
                                   double slack) {
  EnvelopeReport rep;
  if (trace.samples.empty()) throw ConfigError("envelope check: empty trace");
  const double norm0 = std::sqrt(trace.initial_energy());
  rep.pass = true;
  rep.worst_margin = -1.0;
  for (const auto& s : trace.samples) {
    const double envelope = norm0 * std::exp(-rate * s.t) * (1.0 + slack);
    const double value = std::sqrt(s.energy);
    const double margin = (envelope > 0.0)
                              ? value / envelope - 1.0
                              : (value > 0.0 ? 1.0 : -1.0);
    if (margin > rep.worst_margin) rep.worst_margin = margin;
    if (value > envelope && rep.pass) {
      rep.pass = false;
      rep.first_violation_time = s.t;
    }
  }
  return rep;
}

EnvelopeReport envelope_check(const EnergyTrace& trace, const DecayEnvelope& env,
                              double slack) {
  if (trace.samples.empty()) throw ConfigError("envelope_check: empty trace");
  const double norm0 = std::sqrt(trace.initial_energy());
  if (norm0 > env.radius_r * (1.0 + 1e-12)) {
    EnvelopeReport rep;
    rep.applicable = false;
    rep.pass = false;
    return rep;
  }
  return rate_envelope_check(trace, env.mu, slack);
}

} // namespace kdvsat
