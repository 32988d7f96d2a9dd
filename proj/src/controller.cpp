#include "ehsmc/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ehsmc {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    throw std::invalid_argument(std::string(field) + ": " + what);
  }
}

}  // namespace

void validate(const ControllerParams& cp) {
  require(cp.lambda > 0.0, "lambda", "must be > 0");
  require(cp.phi > 0.0, "phi", "must be > 0");
  require(cp.eta > 0.0, "eta", "must be > 0");
  require(cp.gamma >= 1.0, "gamma", "must be >= 1");
  require(cp.delta >= 0.0, "delta", "must be >= 0");
  require(cp.alpha_rel >= 0.0, "alpha_rel", "must be >= 0");
  require(cp.alpha_cap >= 0.0, "alpha_cap", "must be >= 0");
  require(cp.k_v_hat > 0.0, "k_v_hat", "must be > 0");
  require(cp.p_s_hat > 0.0, "p_s_hat", "must be > 0");
  require(cp.b_floor_rel > 0.0, "b_floor_rel", "must be > 0");
}

double sliding_variable(const TrackingError& err, double lambda) {
  return err.dde + 2.0 * lambda * err.de + lambda * lambda * err.e;
}

double saturation(double z) {
  if (z >= 1.0) return 1.0;
  if (z <= -1.0) return -1.0;
  return z;
}

double boundary_distance(double s, double phi) {
  return s - phi * saturation(s / phi);
}

BhatResult b_hat_estimate(const PlantState& s, double u_prev,
                          const ControllerParams& cp, const PlantParams& pp) {
  const double scale =
      4.0 * pp.beta_e * pp.a_p / (pp.v_t * pp.m_t) * pp.c_d * pp.w * cp.k_v_hat;
  const double load = (pp.m_t * s.acc + pp.b_t * s.v + pp.k_s * s.x) / pp.a_p;
  double arg = (cp.p_s_hat - sgn(u_prev) * load) / pp.rho;
  BhatResult r;
  if (arg < 0.0) {
    arg = 0.0;
    r.saturated = true;
  }
  r.b_hat = scale * std::sqrt(arg);
  const double floor = cp.b_floor_rel * scale * std::sqrt(cp.p_s_hat / pp.rho);
  if (r.b_hat < floor) {
    r.b_hat = floor;
    r.saturated = true;
  }
  return r;
}

double equivalent_control(const PlantState& s, const Reference& ref,
                          const TrackingError& err, double b_hat,
                          const ControllerParams& cp) {
  const double ax = cp.a_hat[0] * s.x + cp.a_hat[1] * s.v + cp.a_hat[2] * s.acc;
  return (ax + ref.dddxd - 2.0 * cp.lambda * err.dde -
          cp.lambda * cp.lambda * err.de) /
         b_hat;
}

double control_gain(double u_eq, double d_hat, double b_hat, double alpha,
                    const ControllerParams& cp) {
  return cp.gamma / b_hat * (cp.eta + alpha) + cp.delta + std::abs(d_hat) +
         (cp.gamma - 1.0) * std::abs(u_eq);
}

ControlSample SlidingModeController::update(const PlantState& s,
                                            const Reference& ref,
                                            double d_hat) {
  const TrackingError err = tracking_error(s, ref);
  ControlSample out;
  out.s = sliding_variable(err, cp_.lambda);
  out.s_phi = boundary_distance(out.s, cp_.phi);

  const BhatResult bh = b_hat_estimate(s, u_prev_, cp_, pp_);
  out.b_hat = bh.b_hat;
  out.b_saturated = bh.saturated;
  out.u_eq = equivalent_control(s, ref, err, bh.b_hat, cp_);

  const double ax =
      cp_.a_hat[0] * s.x + cp_.a_hat[1] * s.v + cp_.a_hat[2] * s.acc;
  const double alpha = std::min(cp_.alpha_rel * std::abs(ax), cp_.alpha_cap);
  out.gain = control_gain(out.u_eq, d_hat, bh.b_hat, alpha, cp_);

  const double sw = cp_.law == SwitchingLaw::smooth
                        ? saturation(out.s / cp_.phi)
                        : sgn(out.s);
  out.u = out.u_eq + d_hat - out.gain * sw;
  u_prev_ = out.u;
  return out;
}

}  // namespace ehsmc
