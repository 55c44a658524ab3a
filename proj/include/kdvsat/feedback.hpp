#pragma once

#include "kdvsat/grid.hpp"
#include "kdvsat/saturation.hpp"

namespace kdvsat {

struct EnergyTrace; // diagnostics.hpp

// Distributed feedback f in y_t + y_x + y_xxx + y y_x + f = 0:
// Zero (f = 0), Linear (f = a y), Saturated (f = sat(a y)).
class FeedbackLaw {
public:
  enum class Kind { Zero, Linear, Saturated };

  static FeedbackLaw zero() { return FeedbackLaw(Kind::Zero, 0.0, 0.0); }
  static FeedbackLaw linear(double gain_a);
  static FeedbackLaw saturated(double gain_a, double level_u_s);

  Kind kind() const noexcept { return kind_; }
  double gain() const noexcept { return gain_a_; }
  double level() const noexcept { return level_u_s_; }

private:
  FeedbackLaw(Kind k, double a, double us) : kind_(k), gain_a_(a), level_u_s_(us) {}

  Kind kind_;
  double gain_a_;
  double level_u_s_;
};

StateField control_field(const FeedbackLaw& law, const StateField& y);

// Decay certificate for the saturated law on the ball ||y0|| <= r:
//   mu = min{a, u_s/r},
//   T_r = ln(a r / u_s) / mu  when a r > u_s, else 0   (norm reaches u_s/a),
//   amplification = e^{a T_r}  (the global envelope is r*amplification*e^{-at}).
struct DecayEnvelope {
  double radius_r;
  double gain_a;
  double level_u_s;
  double mu;
  double switch_time_T_r;
  double amplification;
};

DecayEnvelope decay_envelope(const FeedbackLaw& law, double r);

struct EnvelopeReport {
  bool applicable = true;   // false when sqrt(E(0)) exceeds the envelope radius
  bool pass = false;
  double worst_margin = 0.0;          // max over samples of sqrtE/envelope - 1
  double first_violation_time = -1.0; // -1 when no violation
};

// Verifies sqrt(E(t_k)) <= sqrt(E(0)) e^{-mu t_k} (1 + slack) at every sample.
EnvelopeReport envelope_check(const EnergyTrace& trace, const DecayEnvelope& env,
                              double slack);

// Same check at an arbitrary rate, without the radius precondition (used for
// the linear-law envelope e^{-a t} and the zero-law constant bound).
EnvelopeReport rate_envelope_check(const EnergyTrace& trace, double rate,
                                   double slack);

namespace detail {
// out = f(y) on raw storage; for the saturated law the same discrete norm as
// the diagnostics is used inside sat, keeping the closed loop self-consistent.
void control_apply(const FeedbackLaw& law, std::span<const double> y, double h,
                   std::span<double> out);
} // namespace detail

} // namespace kdvsat
