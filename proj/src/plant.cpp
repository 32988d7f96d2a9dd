#include "ehsmc/plant.hpp"

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

void validate(const PlantParams& p) {
  require(p.rho > 0.0, "rho", "must be > 0");
  require(p.c_d > 0.0, "c_d", "must be > 0");
  require(p.w > 0.0, "w", "must be > 0");
  require(p.a_p > 0.0, "a_p", "must be > 0");
  require(p.c_tp >= 0.0, "c_tp", "must be >= 0");
  require(p.beta_e > 0.0, "beta_e", "must be > 0");
  require(p.v_t > 0.0, "v_t", "must be > 0");
  require(p.m_t > 0.0, "m_t", "must be > 0");
  require(p.b_t >= 0.0, "b_t", "must be >= 0");
  require(p.k_s >= 0.0, "k_s", "must be >= 0");
  require(p.p_s_nominal > 0.0, "p_s_nominal", "must be > 0");
  require(p.p_s_variation >= 0.0 && p.p_s_variation < 1.0, "p_s_variation",
          "must be in [0, 1)");
  require(p.delta_l <= 0.0, "delta_l", "must be <= 0");
  require(p.delta_r >= 0.0, "delta_r", "must be >= 0");
  require(p.k_l > 0.0, "k_l", "must be > 0");
  require(p.k_r > 0.0, "k_r", "must be > 0");
}

double dead_zone_output(double u, const PlantParams& p) {
  if (u <= p.delta_l) {
    const double ripple = p.dz_ripple ? 0.2 * std::sin(u) : 0.0;
    return p.k_l * (u + ripple - p.delta_l);
  }
  if (u >= p.delta_r) {
    const double ripple = p.dz_ripple ? 0.2 * std::cos(u) : 0.0;
    return p.k_r * (u - ripple - p.delta_r);
  }
  return 0.0;
}

double dead_zone_slope(double u, const PlantParams& p) {
  const double mid = 0.5 * (p.delta_l + p.delta_r);
  if (u < mid) {
    return p.k_l * (1.0 + (p.dz_ripple ? 0.2 * std::cos(u) : 0.0));
  }
  return p.k_r * (1.0 + (p.dz_ripple ? 0.2 * std::sin(u) : 0.0));
}

DeadZoneDecomposition dead_zone_decompose(double u, const PlantParams& p) {
  DeadZoneDecomposition dz;
  if (u <= p.delta_l) {
    dz.d = p.delta_l;
  } else if (u >= p.delta_r) {
    dz.d = p.delta_r;
  } else {
    dz.d = u;
  }
  if (u != dz.d) {
    dz.k_v = dead_zone_output(u, p) / (u - dz.d);
  } else {
    // Inside the band (or exactly at a degenerate edge): one-sided slope at
    // the nearest edge, evaluated there rather than at u.
    const double mid = 0.5 * (p.delta_l + p.delta_r);
    dz.k_v = dead_zone_slope(u < mid ? p.delta_l : p.delta_r, p);
  }
  return dz;
}

std::array<double, 3> plant_coefficients(const PlantParams& p) {
  const double vm = p.v_t * p.m_t;
  const double a0 = 4.0 * p.beta_e * p.c_tp * p.k_s / vm;
  const double a1 = p.k_s / p.m_t + 4.0 * p.beta_e * p.a_p * p.a_p / vm +
                    4.0 * p.beta_e * p.c_tp * p.b_t / vm;
  const double a2 = p.b_t / p.m_t + 4.0 * p.beta_e * p.c_tp / p.v_t;
  return {a0, a1, a2};
}

double supply_pressure(double arg, const PlantParams& p) {
  return p.p_s_nominal * (1.0 + p.p_s_variation * std::sin(arg));
}

InputGain input_gain_b(const PlantState& s, double u, double k_v,
                       const PlantParams& p, double t) {
  const double p_s =
      supply_pressure(p.supply_mode == SupplyMode::displacement ? s.x : t, p);
  const double load = (p.m_t * s.acc + p.b_t * s.v + p.k_s * s.x) / p.a_p;
  double arg = (p_s - sgn(u) * load) / p.rho;
  InputGain g;
  if (arg < 0.0) {
    arg = 0.0;
    g.saturated = true;
  }
  g.b = 4.0 * p.beta_e * p.a_p / (p.v_t * p.m_t) * p.c_d * p.w * k_v *
        std::sqrt(arg);
  return g;
}

PlantDerivative plant_derivative(const PlantState& s, double u,
                                 const PlantParams& p, double t) {
  const auto a = plant_coefficients(p);
  const auto dz = dead_zone_decompose(u, p);
  const auto g = input_gain_b(s, u, dz.k_v, p, t);
  PlantDerivative out;
  out.dot.x = s.v;
  out.dot.v = s.acc;
  out.dot.acc =
      -(a[0] * s.x + a[1] * s.v + a[2] * s.acc) + g.b * (u - dz.d);
  out.saturated = g.saturated;
  return out;
}

}  // namespace ehsmc
