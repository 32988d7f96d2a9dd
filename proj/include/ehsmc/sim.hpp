#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ehsmc/controller.hpp"
#include "ehsmc/plant.hpp"
#include "ehsmc/rbf.hpp"

namespace ehsmc {

class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what)
      : std::runtime_error(what) {}
};

struct SimConfig {
  double t_end = 100.0;      // episode length (s)
  double dt_plant = 1.0e-3;  // plant integration step (s)
  double dt_control = 2.0e-3;  // control period (s), integer multiple of dt_plant
  double t_train = 50.0;     // training-phase end (s)
  PlantState initial_state{};
  bool compensation = true;
  TargetMode target_mode = TargetMode::residual;
  double retrain_period = 0.0;   // 0 disables periodic retraining
  double svd_threshold = 1e-4;   // truncation for the episode training solves
  double ref_amplitude = 0.5;    // desired trajectory amplitude (m)
  double ref_omega = 0.1;        // desired trajectory frequency (rad/s)
  std::uint64_t seed = 0;        // reserved for batch orchestration
  double divergence_limit = 1e6; // |x| beyond this aborts the episode (m)
};

void validate(const SimConfig& cfg);

// Record flags.
inline constexpr int kFlagPlantSaturated = 1;  // sqrt clamp during the hold
inline constexpr int kFlagBhatSaturated = 2;   // controller b_hat clamp/floor

// One control-rate log entry.
struct StepRecord {
  double t = 0.0;
  PlantState state;
  Reference ref;
  TrackingError err;
  double s = 0.0;
  double s_phi = 0.0;
  double u = 0.0;
  double d_hat = 0.0;
  double d_true = 0.0;  // plant-side d(u); never read by the controller
  double gain = 0.0;
  int flags = 0;
};

struct EpisodeLog {
  std::vector<StepRecord> records;        // one per control step, t = k*dt_control
  std::vector<double> plant_acc;          // plant-rate acceleration trace
  double dt_control = 0.0;
  double dt_plant = 0.0;
  double t_train = 0.0;
  double phi = 0.0;
  bool trained = false;
  TrainResult train_result;
  std::vector<double> train_times;
};

struct WindowMetrics {
  double t0 = 0.0, t1 = 0.0;
  double rms_s = 0.0;
  double max_s = 0.0;
  double max_e = 0.0;
  double max_du = 0.0;  // largest control increment between consecutive samples
  double mean_gain = 0.0;
};

struct MetricsSummary {
  bool reached = false;
  double reach_time = 0.0;  // first entry into |s| <= phi
  std::vector<WindowMetrics> windows;
};

MetricsSummary metrics_summary(const EpisodeLog& log,
                               const std::vector<std::pair<double, double>>& windows);

// Desired trajectory amplitude*sin(omega*t) with analytic derivatives.
Reference reference_trajectory(double t, double amplitude = 0.5,
                               double omega = 0.1);

// Classical RK4 step; f(y, t) -> dy/dt is held fixed in its non-state inputs.
// Fails fast on non-finite stage values.
template <typename State, typename Deriv>
State rk4_step(Deriv&& f, const State& y, double t, double dt) {
  const State k1 = f(y, t);
  const State k2 = f(y + (0.5 * dt) * k1, t + 0.5 * dt);
  const State k3 = f(y + (0.5 * dt) * k2, t + 0.5 * dt);
  const State k4 = f(y + dt * k3, t + dt);
  if (!all_finite(k1) || !all_finite(k2) || !all_finite(k3) || !all_finite(k4)) {
    throw SimulationError("rk4_step: non-finite stage value at t=" +
                          std::to_string(t));
  }
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Dual-rate episode: control at dt_control with zero-order hold, plant RK4 at
// dt_plant. Phase 1 (t < t_train) runs with d_hat = 0 while logging training
// samples; at t_train the network is batch-trained on the accumulated
// residual targets; phase 2 applies d_hat = clamp(predict). The network is
// trained in place.
EpisodeLog run_episode(const SimConfig& cfg, const PlantParams& pp,
                       const ControllerParams& cp, RbfNetwork& net);

}  // namespace ehsmc
