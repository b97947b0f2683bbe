#pragma once

#include <Eigen/Dense>
#include <complex>

#include "netred/dynamics.hpp"
#include "netred/spectral.hpp"

namespace netred {

/// (lambda2, v2) of a Laplacian, the pair that defines the rank-two
/// approximant.
struct FiedlerPair {
  double lambda2 = 0.0;
  Eigen::VectorXd v2;
};

/// From the full symmetric eigendecomposition (sign convention applied).
FiedlerPair fiedler_pair(const Laplacian& laplacian);

/// The 2x2 complex-symmetric frequency-point matrix
///   [ (1/n) sum g_i^-1          (1/sqrt n) sum g_i^-1 [v2]_i          ]
///   [ (1/sqrt n) sum g_i^-1 [v2]_i   sum g_i^-1 [v2]_i^2 + lambda2 f ]
/// evaluated at s0.
Eigen::Matrix2cd build_h2(const NetworkModel& net, const FiedlerPair& eig,
                          std::complex<double> s0);

/// Rank-two approximant T2(s0) = V2 H2^-1 V2^T with V2 = [1/sqrt(n), v2].
/// Throws SingularH2 when H2(s0) is numerically singular (a pole of T2).
Eigen::MatrixXcd evaluate_t2(const NetworkModel& net, const FiedlerPair& eig,
                             std::complex<double> s0);

/// Certified gap between the network response and its rank-two approximant:
///   lhs = ||T_yu(s0) - T2(s0)||,
///   rhs = (M1 M2 + 1)^2 / (|f(s0)| lambda3 - M2 - M1 M2^2),
/// with M1 = ||T2(s0)||, M2 = max_i |g_i^-1(s0)|. The bound applies when
/// |f(s0)| lambda3 >= M2 + M1 M2^2, and then lhs <= rhs.
struct RankTwoErrorBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool applicable = false;
  double m1 = 0.0;
  double m2 = 0.0;
};

RankTwoErrorBound rank_two_error_bound(const NetworkModel& net,
                                       std::complex<double> s0);

/// Two-aggregate-node model: group aggregates coupled through
/// l_hat_weight * [[1,-1],[-1,1]] with the original coupling dynamics,
/// where l_hat_weight = lambda2 n_a n_b / (n_a + n_b).
struct ReducedModel {
  Partition partition;
  RationalFunction g_hat_a;
  RationalFunction g_hat_b;
  double l_hat_weight = 0.0;
  RationalFunction coupling;
};

/// Cluster, aggregate each group, and form the reduced coupling weight.
/// Throws DegeneratePartition when clustering leaves a group empty.
ReducedModel reduce_network(const NetworkModel& net);

/// T_hat_2(s0) = (G_hat^-1(s0) + f(s0) L_hat)^-1.
Eigen::Matrix2cd evaluate_reduced(const ReducedModel& rm, std::complex<double> s0);

/// n x n lift of the reduced response: entry (i, j) is
/// [T_hat_2(s0)]_{g(i), g(j)} with g the group map.
Eigen::MatrixXcd lift_reduced(const ReducedModel& rm, std::complex<double> s0);

}  // namespace netred
