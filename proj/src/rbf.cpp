#include "ehsmc/rbf.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ehsmc {

void validate(const RbfNetwork& net) {
  if (net.size() < 1) {
    throw std::invalid_argument("rbf: network must have at least one center");
  }
  if (net.widths.size() != net.size() || net.weights.size() != net.size()) {
    throw std::invalid_argument("rbf: centers/widths/weights size mismatch");
  }
  for (double w : net.widths) {
    if (!(w > 0.0)) throw std::invalid_argument("rbf: widths must be > 0");
  }
  for (double s : net.input_scale) {
    if (!(s > 0.0)) throw std::invalid_argument("rbf: input_scale must be > 0");
  }
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      if (net.centers[i] == net.centers[j]) {
        throw std::invalid_argument("rbf: centers must be pairwise distinct");
      }
    }
  }
}

RbfNetwork make_grid_network(const ControllerParams& cp,
                             const GridLayout& layout) {
  if (layout.points_per_axis < 1) {
    throw std::invalid_argument("rbf_grid_points: must be >= 1");
  }
  if (!(layout.span_factor > 0.0)) {
    throw std::invalid_argument("rbf_span_factor: must be > 0");
  }
  const double l2 = cp.lambda * cp.lambda;
  const std::array<double, 3> box = {cp.phi / l2, 2.0 * cp.phi / cp.lambda,
                                     6.0 * cp.phi};
  RbfNetwork net;
  for (int i = 0; i < 3; ++i) net.input_scale[i] = layout.span_factor * box[i];

  const int n = layout.points_per_axis;
  std::vector<double> g(n, 0.0);
  for (int i = 0; i < n; ++i) {
    g[i] = n > 1 ? -1.0 + 2.0 * i / (n - 1) : 0.0;
  }
  const double spacing = n > 1 ? 2.0 / (n - 1) : 2.0;
  const double width = std::sqrt(3.0) * spacing;  // norm of per-axis spacings

  net.centers.reserve(static_cast<std::size_t>(n) * n * n);
  for (double a : g)
    for (double b : g)
      for (double c : g) net.centers.push_back({a, b, c});
  net.widths.assign(net.size(), width);
  net.weights.assign(net.size(), 0.0);
  return net;
}

std::vector<double> activations(const RbfNetwork& net,
                                const TrackingError& err) {
  const std::array<double, 3> z = {err.e / net.input_scale[0],
                                   err.de / net.input_scale[1],
                                   err.dde / net.input_scale[2]};
  std::vector<double> phi(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    const double dx = z[0] - net.centers[i][0];
    const double dy = z[1] - net.centers[i][1];
    const double dz = z[2] - net.centers[i][2];
    const double r2 = dx * dx + dy * dy + dz * dz;
    phi[i] = std::exp(-r2 / (2.0 * net.widths[i] * net.widths[i]));
  }
  return phi;
}

double predict(const RbfNetwork& net, const TrackingError& err) {
  const auto phi = activations(net, err);
  double out = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) out += net.weights[i] * phi[i];
  return out;
}

double predict_clamped(const RbfNetwork& net, const TrackingError& err,
                       double delta) {
  return std::clamp(predict(net, err), -delta, delta);
}

TrainResult train_least_squares(RbfNetwork& net, const TrainingSet& ts,
                                double svd_threshold) {
  const std::size_t p = ts.inputs.size();
  if (p < 1 || ts.targets.size() != p) {
    throw std::invalid_argument("rbf: training set must have p >= 1 matching rows");
  }
  const std::size_t m = net.size();
  Eigen::MatrixXd phi(p, m);
  Eigen::VectorXd d(p);
  for (std::size_t r = 0; r < p; ++r) {
    const auto row = activations(net, ts.inputs[r]);
    for (std::size_t c = 0; c < m; ++c) phi(r, c) = row[c];
    d(r) = ts.targets[r];
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(phi,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(svd_threshold);
  const Eigen::VectorXd w = svd.solve(d);

  TrainResult res;
  res.rows = p;
  res.truncated =
      static_cast<int>(svd.singularValues().size() - svd.rank());
  res.error = (d - phi * w).norm();
  net.weights.assign(w.data(), w.data() + m);
  return res;
}

std::optional<double> training_target(const StepSample& sample,
                                      const ControllerParams& cp,
                                      const PlantParams& pp, TargetMode mode) {
  if (sample.saturated || !sample.has_jerk) return std::nullopt;
  const BhatResult bh = b_hat_estimate(sample.state, sample.u, cp, pp);
  const double ax = cp.a_hat[0] * sample.state.x +
                    cp.a_hat[1] * sample.state.v +
                    cp.a_hat[2] * sample.state.acc;
  if (mode == TargetMode::residual) {
    return sample.u - (sample.jerk + ax) / bh.b_hat;
  }
  const TrackingError err = tracking_error(sample.state, sample.ref);
  const double jerk_err = sample.jerk - sample.ref.dddxd;
  const double nu = jerk_err + 2.0 * cp.lambda * err.dde +
                    cp.lambda * cp.lambda * err.de - sample.d_hat * bh.b_hat;
  return sample.d_hat - nu / bh.b_hat;
}

void save_network(const RbfNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("rbf: cannot open for writing: " + path);
  }
  out << net.size() << "\n";
  char line[160];
  for (std::size_t i = 0; i < net.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17e %.17e %.17e %.17e %.17e\n",
                  net.centers[i][0], net.centers[i][1], net.centers[i][2],
                  net.widths[i], net.weights[i]);
    out << line;
  }
  if (!out) {
    throw std::runtime_error("rbf: write failed: " + path);
  }
}

RbfNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("rbf: cannot open: " + path);
  }
  std::size_t m = 0;
  if (!(in >> m) || m < 1) {
    throw std::runtime_error("rbf: bad header in " + path);
  }
  RbfNetwork net;
  net.centers.resize(m);
  net.widths.resize(m);
  net.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(in >> net.centers[i][0] >> net.centers[i][1] >> net.centers[i][2] >>
          net.widths[i] >> net.weights[i])) {
      throw std::runtime_error("rbf: truncated network file: " + path);
    }
  }
  validate(net);
  return net;
}

}  // namespace ehsmc
