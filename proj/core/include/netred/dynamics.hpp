#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "netred/graph.hpp"
#include "netred/polyrat.hpp"

namespace netred {

/// Second-order generator: inertia m, damping d, droop gain 1/r and
/// turbine time constant tau, all positive.
struct GeneratorParams {
  double inertia = 0.1;   // m, per-unit s^2
  double damping = 0.3;   // d, per-unit
  double droop = 7.0;     // r, per-unit (enters as 1/r)
  double turbine_tau = 5.0;  // s

  void validate() const;
};

/// (tau s + 1) / (m tau s^2 + (m + d tau) s + d + 1/r): the swing model
/// 1/(m s + d + (1/r)/(tau s + 1)) with the inner fraction cleared.
RationalFunction generator_tf(const GeneratorParams& params);

/// Uniform sampling ranges for generator parameters.
struct GeneratorRanges {
  std::array<double, 2> inertia{0.05, 0.5};
  std::array<double, 2> damping{0.2, 0.5};
  std::array<double, 2> droop{5.0, 10.0};
  std::array<double, 2> turbine_tau{2.0, 10.0};

  void validate() const;
};

/// One independent draw per node, fields sampled in declaration order so a
/// fixed seed reproduces the exact parameter list.
std::vector<GeneratorParams> sample_generators(int n, const GeneratorRanges& ranges,
                                               std::uint64_t seed);

/// Diagonal node dynamics G(s), scalar coupling dynamics f(s), and the
/// coupling graph Laplacian; y = G(s) (u - f(s) L y).
struct NetworkModel {
  std::vector<RationalFunction> nodes;
  RationalFunction coupling;
  Laplacian laplacian;

  NetworkModel(std::vector<RationalFunction> nodes_in, RationalFunction coupling_in,
               Laplacian laplacian_in);
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Aggregate dynamics (sum_i g_i^-1)^-1, kept as an exact rational function
/// (no order truncation). Throws ZeroFunction when any g_i is zero.
RationalFunction aggregate_dynamics(std::span<const RationalFunction> gs);

/// T_yu(s0) = (G^-1(s0) + f(s0) L)^-1, solved with partial-pivoting LU
/// against the identity; rcond is the solve's reciprocal condition estimate.
struct PointSolve {
  Eigen::MatrixXcd matrix;
  double rcond = 0.0;
};

/// Throws SingularAtPoint when the system matrix is numerically singular
/// (s0 at or near a pole of T_yu); PoleAtPoint propagates from evaluating
/// f or any g_i^-1.
PointSolve solve_tyu(const NetworkModel& net, std::complex<double> s0);
Eigen::MatrixXcd evaluate_tyu(const NetworkModel& net, std::complex<double> s0);

/// Spectral norm (largest singular value) of a complex matrix.
double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace netred
