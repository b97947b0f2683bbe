#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "netred/errors.hpp"

namespace netred {

/// Dense symmetric Laplacian of a nonnegatively-weighted undirected graph:
/// row sums are zero and off-diagonal entries are nonpositive.
class Laplacian {
 public:
  /// Validates the invariants (symmetry to 1e-12, row sums to 1e-9,
  /// off-diagonals <= 0 up to roundoff) and throws std::invalid_argument
  /// on violation.
  explicit Laplacian(Eigen::MatrixXd m);

  /// Rebuilds a Laplacian from the off-diagonal part of m: symmetrizes,
  /// clamps positive roundoff noise to zero and sets the diagonal so row
  /// sums vanish exactly.
  static Laplacian from_offdiagonal(const Eigen::MatrixXd& m);

  const Eigen::MatrixXd& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }

 private:
  Eigen::MatrixXd m_;
};

/// Ideal two-block adjacency: weight alpha on every intra-group pair and
/// beta on every inter-group pair, 0 <= beta <= alpha.
struct BlockModelParams {
  int n_a = 1;
  int n_b = 1;
  double alpha = 1.0;
  double beta = 0.0;

  int n() const { return n_a + n_b; }
  void validate() const;
};

/// Weighted stochastic block model with two communities: intra-group edges
/// appear with probability p and weight w_p, inter-group with q and w_q.
struct WsbmParams {
  std::vector<int> part_a;
  std::vector<int> part_b;
  double p = 0.6;
  double q = 0.1;
  double w_p = 5.0;
  double w_q = 0.5;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(part_a.size() + part_b.size()); }
  void validate() const;

  /// Groups laid out as {0..n_a-1} and {n_a..n-1}.
  static WsbmParams contiguous(int n_a, int n_b, double p, double q, double w_p,
                               double w_q, std::uint64_t seed);

  Eigen::MatrixXd probability_matrix() const;  // P_ij
  Eigen::MatrixXd weight_matrix() const;       // W_ij
  Eigen::MatrixXd expected_adjacency() const;  // P .* W
};

/// Closed-form spectrum of the two-block Laplacian.
struct BlockSpectrum {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  Eigen::VectorXd v2;
};

struct WsbmSample {
  Eigen::MatrixXd adjacency;
  Laplacian laplacian;
};

/// L = diag(A*1) - A. Self-loops A_ii cancel identically.
/// Throws AsymmetricInput when max|A - A^T| > 1e-12.
Laplacian laplacian_from_adjacency(const Eigen::MatrixXd& adjacency);

Laplacian build_block_laplacian(const BlockModelParams& params);

/// lambda2 = n*beta, lambda3 = min{n_a*alpha + n_b*beta, n_b*alpha + n_a*beta},
/// v2 = (1/sqrt(n)) [sqrt(n_b/n_a) 1_{n_a}; -sqrt(n_a/n_b) 1_{n_b}].
/// Throws OrderingViolated when alpha < beta.
BlockSpectrum block_spectrum_closed_form(const BlockModelParams& params);

/// Independent-edge sampler: for every i <= j, A_ij = W_ij with probability
/// P_ij, else 0, mirrored to A_ji. The diagonal is sampled too; it cancels
/// in the Laplacian. Bit-reproducible for a fixed seed.
WsbmSample sample_wsbm(const WsbmParams& params);

/// Schur complement onto `keep`, eliminating the remaining nodes.
/// Throws SingularInterior when the eliminated principal block is
/// numerically singular.
Laplacian kron_reduce(const Laplacian& laplacian, const std::vector<int>& keep);

/// Laplacian concentration quantities for an independent-edge model.
struct ConcentrationBound {
  double max_row_moment = 0.0;  // max_i sum_j P_ij W_ij^2
  double norm_bound = 0.0;      // 8 sqrt(max_row_moment * log(4n/delta))
  double exponent = 0.0;        // c solving delta = 4 n^-c
  bool applicable = false;      // max_row_moment >= 16 (c+1) log n
};

/// When `rescale` is set, W is divided by max|W_ij| first (the bound's
/// statement assumes weights bounded by one).
ConcentrationBound concentration_bound(const Eigen::MatrixXd& probabilities,
                                       const Eigen::MatrixXd& weights,
                                       double delta, bool rescale);
ConcentrationBound concentration_bound(const WsbmParams& params, double delta,
                                       bool rescale);

/// Spectral norm of a symmetric matrix (largest |eigenvalue|).
double spectral_norm_symmetric(const Eigen::MatrixXd& m);

}  // namespace netred
