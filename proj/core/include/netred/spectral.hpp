#pragma once

#include <Eigen/Dense>
#include <vector>

#include "netred/errors.hpp"
#include "netred/graph.hpp"

namespace netred {

/// Full symmetric eigendecomposition, eigenvalues ascending, with a
/// deterministic sign convention: each column's entry of largest magnitude
/// (lowest index on ties) is nonnegative.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // column i pairs with values(i)
};

/// Throws NotSymmetric when max|M - M^T| exceeds 1e-10 relative.
EigenPairs symmetric_eig(const Eigen::MatrixXd& m);

/// Two-way split by the sign of the Fiedler vector: node i joins group a
/// iff [v2]_i >= 0.
struct Partition {
  std::vector<int> group_a;
  std::vector<int> group_b;
  double lambda2 = 0.0;
  /// False when lambda3 - lambda2 <= 1e-9: the Fiedler pair is not
  /// isolated and v2 (hence the split) is not unique. Gap-based bounds
  /// refuse to evaluate in that case.
  bool fiedler_isolated = true;

  int n() const { return static_cast<int>(group_a.size() + group_b.size()); }
};

Partition spectral_cluster(const Laplacian& laplacian);

/// sqrt(1 - (u^T v)^2) clamped to [0, 1]. Throws NotUnit unless both
/// vectors have unit norm to 1e-9.
double sin_theta(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// High-probability spectral guarantees for a WSBM sample:
///   lambda3(L_A) >= w_p (p + gamma q) n_min - 8 w_p sqrt(n p log(4n/delta))
///   sin(v2(L_A), v2(L_EA)) <= 16 sqrt(2) w_p sqrt(n p log(4n/delta))
///                              / (n_min w_p (p - gamma q))
/// with gamma = w_q / w_p. The w_p factors in the sin bound cancel; the
/// evaluated value equals the main-statement prefactor 16 sqrt(2)/(p - gamma q).
struct SpectralBounds {
  double lambda3_lower = 0.0;
  double sintheta_upper = 0.0;
};

/// Throws DegenerateRegime unless p > q and p - gamma q > 0.
SpectralBounds wsbm_spectral_bounds(const WsbmParams& params, double delta);

/// Misassigned-node count, minimized over the two label assignments;
/// 0 means perfect clustering. Throws SizeMismatch when the node counts
/// differ.
int partition_mismatch(const Partition& found, const std::vector<int>& planted_a,
                       const std::vector<int>& planted_b);

}  // namespace netred
