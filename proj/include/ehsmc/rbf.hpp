#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ehsmc/controller.hpp"

namespace ehsmc {

// Gaussian radial-basis network approximating the dead-zone disturbance as a
// function of the tracking error vector. Inputs are normalized per axis by
// input_scale before the radial norm so the three error components (whose
// physical units differ by orders of magnitude) contribute comparably.
// Centers and widths live in that normalized space.
struct RbfNetwork {
  std::vector<std::array<double, 3>> centers;
  std::vector<double> widths;   // one positive scale per center
  std::vector<double> weights;  // output weights (V)
  std::array<double, 3> input_scale = {1.0, 1.0, 1.0};

  std::size_t size() const { return centers.size(); }
};

void validate(const RbfNetwork& net);

// Uniform grid layout for the default compensator: points_per_axis^3 centers
// spanning span_factor times the convergence box
// [-phi/lambda^2, phi/lambda^2] x [-2phi/lambda, 2phi/lambda] x [-6phi, 6phi].
struct GridLayout {
  int points_per_axis = 3;
  double span_factor = 1.5;
};

RbfNetwork make_grid_network(const ControllerParams& cp,
                             const GridLayout& layout);

// Feature vector: component i = exp(-||z - c_i||^2 / (2 w_i^2)) with z the
// normalized input. Each component lies in (0, 1].
std::vector<double> activations(const RbfNetwork& net, const TrackingError& err);

// Weighted sum of activations (V), unclamped.
double predict(const RbfNetwork& net, const TrackingError& err);

// Prediction clamped to [-delta, delta]; the true disturbance obeys the same
// bound, and the clamp keeps the gain inequality meaningful.
double predict_clamped(const RbfNetwork& net, const TrackingError& err,
                       double delta);

struct TrainingSet {
  std::vector<TrackingError> inputs;
  std::vector<double> targets;  // disturbance samples (V)
};

struct TrainResult {
  double error = 0.0;  // ||targets - Phi*w||_2
  int truncated = 0;   // singular values dropped by the threshold
  std::size_t rows = 0;
};

// Minimum-norm least-squares fit of the output weights via SVD with relative
// truncation. Deterministic; rank deficiency is reported, never an error.
TrainResult train_least_squares(RbfNetwork& net, const TrainingSet& ts,
                                double svd_threshold = 1e-10);

enum class TargetMode { residual, nu };

// One logged control step, as needed to reconstruct a disturbance target.
struct StepSample {
  PlantState state;
  Reference ref;
  double u = 0.0;
  double d_hat = 0.0;
  double jerk = 0.0;    // finite-difference estimate of the third derivative
  bool has_jerk = false;
  bool saturated = false;
};

// Disturbance target for one sample. residual: u - (jerk + a_hat.x)/b_hat,
// inverting the model with estimates. nu: d_hat - nu/b_hat with
// nu = jerk_err + 2*lambda*dde + lambda^2*de - d_hat*b_hat.
// Returns nullopt for saturated samples and episode boundaries (no jerk).
std::optional<double> training_target(const StepSample& sample,
                                      const ControllerParams& cp,
                                      const PlantParams& pp, TargetMode mode);

// Flat text format: header line M, then M lines "cx cy cz width weight" in
// scientific notation (normalized-space coordinates; the input scale is
// config-derived, not stored).
void save_network(const RbfNetwork& net, const std::string& path);
RbfNetwork load_network(const std::string& path);

}  // namespace ehsmc
