#pragma once

#include <array>
#include <cmath>

namespace ehsmc {

// Argument of the supply-pressure modulation P_s = p_s_nominal*(1 + p_s_variation*sin(arg)):
// piston displacement (default) or simulation time.
enum class SupplyMode { displacement, time };

// Physical constants of the valve-cylinder-load assembly plus the dead-zone
// parameters of the spool map. Defaults are the reference rig values.
struct PlantParams {
  double rho = 850.0;          // fluid density (kg/m^3)
  double c_d = 0.6;            // discharge coefficient (-)
  double w = 2.5e-2;           // orifice area gradient (m)
  double a_p = 3.0e-4;         // ram area (m^2)
  double c_tp = 2.0e-12;       // total leakage coefficient (m^3/(s*Pa))
  double beta_e = 7.0e8;       // effective bulk modulus (Pa)
  double v_t = 6.0e-5;         // total volume under compression (m^3)
  double m_t = 250.0;          // total mass of piston and load (kg)
  double b_t = 100.0;          // viscous damping coefficient (N*s/m)
  double k_s = 75.0;           // load spring constant (N/m)
  double p_s_nominal = 7.0e6;  // nominal supply pressure (Pa)
  double p_s_variation = 0.2;  // relative supply-pressure variation amplitude (-)
  SupplyMode supply_mode = SupplyMode::displacement;
  double delta_l = -1.1;       // left dead-band edge (V), <= 0
  double delta_r = 0.9;        // right dead-band edge (V), >= 0
  double k_l = 2.0e-6;         // left branch slope constant (m/V)
  double k_r = 2.0e-6;         // right branch slope constant (m/V)
  bool dz_ripple = true;       // keep the 0.2*sin/cos terms in the branch maps
};

// Throws std::invalid_argument naming the offending field.
void validate(const PlantParams& p);

// Mechanical state triple tracked by the third-order model.
struct PlantState {
  double x = 0.0;    // piston displacement (m)
  double v = 0.0;    // piston velocity (m/s)
  double acc = 0.0;  // piston acceleration (m/s^2)
};

inline PlantState operator+(const PlantState& a, const PlantState& b) {
  return {a.x + b.x, a.v + b.v, a.acc + b.acc};
}
inline PlantState operator*(double c, const PlantState& a) {
  return {c * a.x, c * a.v, c * a.acc};
}
inline bool all_finite(const PlantState& s) {
  return std::isfinite(s.x) && std::isfinite(s.v) && std::isfinite(s.acc);
}
inline bool all_finite(double y) { return std::isfinite(y); }

inline double sgn(double z) { return (z > 0.0) - (z < 0.0); }

// Slope/offset form of the dead-zone map: spool = k_v*(u - d).
struct DeadZoneDecomposition {
  double k_v = 0.0;  // effective slope (m/V)
  double d = 0.0;    // saturation-like offset (V), |d| <= max(-delta_l, delta_r)
};

// Spool displacement produced by control voltage u.
// Left branch  k_l*(u + 0.2*sin u - delta_l) for u <= delta_l,
// right branch k_r*(u - 0.2*cos u - delta_r) for u >= delta_r, zero inside.
// With the ripple terms the branches do not vanish at the band edges, so the
// map has small jumps at u = delta_l and u = delta_r; boundary points belong
// to the branches, matching the inequality signs above.
double dead_zone_output(double u, const PlantParams& p);

// Analytic derivative of the active branch at u (left branch for u below the
// band midpoint, right branch otherwise).
double dead_zone_slope(double u, const PlantParams& p);

// Exact (k_v, d) such that dead_zone_output(u) == k_v*(u - d) outside the
// band. Inside the band u - d == 0 and any slope preserves the identity; the
// analytic one-sided slope at the nearest band edge is used so analysis code
// sees a positive, continuous-ish value. The plant output is zero there.
DeadZoneDecomposition dead_zone_decompose(double u, const PlantParams& p);

// Coefficient vector (a0, a1, a2) of the combined third-order model.
std::array<double, 3> plant_coefficients(const PlantParams& p);

// p_s_nominal*(1 + p_s_variation*sin(arg)); arg is displacement or time
// depending on the caller's supply mode.
double supply_pressure(double arg, const PlantParams& p);

struct InputGain {
  double b = 0.0;
  bool saturated = false;  // square-root argument clamped at zero
};

// Input gain b(x, u). The square-root argument P_s - sgn(u)*P_load can go
// negative at extreme states (load pressure meeting supply pressure); it is
// clamped at zero and flagged. t is used only when supply_mode == time.
InputGain input_gain_b(const PlantState& s, double u, double k_v,
                       const PlantParams& p, double t = 0.0);

struct PlantDerivative {
  PlantState dot;
  bool saturated = false;
};

// State derivative (v, acc, jerk) with jerk = -a.x + b*(u - d).
PlantDerivative plant_derivative(const PlantState& s, double u,
                                 const PlantParams& p, double t = 0.0);

}  // namespace ehsmc
