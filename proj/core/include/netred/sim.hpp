#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "netred/dynamics.hpp"
#include "netred/reduction.hpp"

namespace netred {

/// Continuous-time realization dx = A x + B u, y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd A, B, C, D;

  int states() const { return static_cast<int>(A.rows()); }
  int inputs() const { return static_cast<int>(B.cols()); }
  int outputs() const { return static_cast<int>(C.rows()); }
};

/// Controllable canonical form. D is the leading-coefficient ratio when
/// deg num == deg den, else zero. Throws ImproperTransferFunction when
/// deg num > deg den.
StateSpace realize_statespace(const RationalFunction& r);

/// C (s I - A)^-1 B + D: frequency-response probe for realizations.
Eigen::MatrixXcd statespace_response(const StateSpace& ss, std::complex<double> s0);

/// Block realization of the loop y = G(s)(u - f(s) L y): one realization
/// per node plus n parallel copies of f driving the Laplacian feedback.
/// Throws AlgebraicLoop when both G and f have direct feedthrough and
/// I + d_f D_G L is singular.
StateSpace assemble_closed_loop(const NetworkModel& net);

/// Step input of given magnitude at one node, entering at start_time.
struct DisturbanceSpec {
  int node = 0;
  double magnitude = 1.0;
  double start_time = 0.0;
};

/// Output samples on the uniform grid t_k = k dt, one row per output.
/// `diverged` is set (and integration stops) when any |y| exceeds 1e9,
/// signalling instability or a too-large step.
struct TimeSeries {
  std::vector<double> times;
  Eigen::MatrixXd outputs;  // outputs x time
  bool diverged = false;
};

/// Classical fixed-step RK4 from zero initial state.
TimeSeries step_response(const StateSpace& ss, const DisturbanceSpec& dist,
                         double t_final, double dt);

/// Paired full/reduced simulation under a step disturbance. The reduced
/// network receives the group-aggregated input (1_{Ia}^T u, 1_{Ib}^T u).
struct ResponseRecord {
  std::vector<double> times;
  Eigen::MatrixXd full_outputs;     // n x time
  Eigen::MatrixXd reduced_outputs;  // 2 x time
  Eigen::MatrixXd group_means;      // 2 x time
  std::array<double, 2> rms_vs_members{};  // RMS of yhat_g - y_i over members
  std::array<double, 2> rms_vs_mean{};     // RMS of yhat_g - group mean
  bool diverged = false;
};

ResponseRecord response_report(const NetworkModel& net, const ReducedModel& rm,
                               const DisturbanceSpec& dist, double t_final,
                               double dt);

inline constexpr double kDefaultTimeStep = 0.005;
inline constexpr double kDefaultHorizon = 30.0;

}  // namespace netred
