#pragma once

#include <array>

#include "ehsmc/plant.hpp"

namespace ehsmc {

// Tracking error vector (x - x_d, v - dx_d, acc - ddx_d).
struct TrackingError {
  double e = 0.0;    // position error (m)
  double de = 0.0;   // velocity error (m/s)
  double dde = 0.0;  // acceleration error (m/s^2)
};

// Desired trajectory sample with analytic derivatives up to jerk.
struct Reference {
  double xd = 0.0;
  double dxd = 0.0;
  double ddxd = 0.0;
  double dddxd = 0.0;
};

// The discontinuous variant exists as a reference for the chattering
// contrast check only.
enum class SwitchingLaw { smooth, discontinuous };

struct ControllerParams {
  double lambda = 8.0;      // sliding-surface bandwidth (1/s)
  double phi = 1.0;         // boundary-layer thickness
  double eta = 0.1;         // reaching-rate constant
  double gamma = 1.2;       // gain-ratio bound sqrt(b_max/b_min)
  double delta = 1.1;       // dead-band bound (V)
  double alpha_rel = 0.05;  // online mismatch margin: alpha = min(alpha_rel*|a_hat.x|, alpha_cap)
  double alpha_cap = 10.0;
  std::array<double, 3> a_hat = plant_coefficients(PlantParams{});
  double k_v_hat = 2.0e-6;  // estimated spool slope (m/V)
  double p_s_hat = 7.0e6;   // estimated supply pressure (Pa)
  double b_floor_rel = 1.0e-3;  // b_hat floor relative to the zero-load nominal value
  SwitchingLaw law = SwitchingLaw::smooth;
};

void validate(const ControllerParams& cp);

inline TrackingError tracking_error(const PlantState& s, const Reference& r) {
  return {s.x - r.xd, s.v - r.dxd, s.acc - r.ddxd};
}

// s = dde + 2*lambda*de + lambda^2*e
double sliding_variable(const TrackingError& err, double lambda);

// sgn(z) for |z| >= 1, z otherwise.
double saturation(double z);

// Distance to the boundary layer: s - phi*sat(s/phi).
double boundary_distance(double s, double phi);

struct BhatResult {
  double b_hat = 0.0;
  bool saturated = false;  // sqrt clamped or floor active
};

// Model-side input-gain estimate: the plant gain formula with k_v_hat and the
// constant p_s_hat substituted, the load sign taken from the previous control
// sample, and the result floored at b_floor_rel times the zero-load value.
BhatResult b_hat_estimate(const PlantState& s, double u_prev,
                          const ControllerParams& cp, const PlantParams& pp);

// Equivalent control: b_hat^-1 (a_hat.x + dddx_d - 2*lambda*dde - lambda^2*de).
double equivalent_control(const PlantState& s, const Reference& ref,
                          const TrackingError& err, double b_hat,
                          const ControllerParams& cp);

// K = gamma*b_hat^-1*(eta + alpha) + delta + |d_hat| + (gamma - 1)*|u_eq|,
// taken with equality (tightest admissible gain).
double control_gain(double u_eq, double d_hat, double b_hat, double alpha,
                    const ControllerParams& cp);

struct ControlSample {
  double u = 0.0;      // control voltage (V)
  double s = 0.0;      // sliding variable
  double s_phi = 0.0;  // distance to the boundary layer
  double u_eq = 0.0;   // equivalent-control part
  double gain = 0.0;   // switching gain K
  double b_hat = 0.0;
  bool b_saturated = false;
};

// Smooth sliding-mode control law with dead-zone compensation input d_hat.
// Pure except for the previous-control-sign memo used by b_hat_estimate.
class SlidingModeController {
 public:
  SlidingModeController(const ControllerParams& cp, const PlantParams& pp)
      : cp_(cp), pp_(pp) {}

  ControlSample update(const PlantState& s, const Reference& ref, double d_hat);
  void reset() { u_prev_ = 0.0; }
  const ControllerParams& params() const { return cp_; }

 private:
  ControllerParams cp_;
  PlantParams pp_;
  double u_prev_ = 0.0;
};

}  // namespace ehsmc
