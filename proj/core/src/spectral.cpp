#include "netred/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace netred {

EigenPairs symmetric_eig(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw NotSymmetric("matrix not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NotSymmetric("matrix not symmetric to 1e-10");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("symmetric_eig: eigensolver failed to converge");
  EigenPairs out{solver.eigenvalues(), solver.eigenvectors()};
  // Sign convention: largest-magnitude entry (lowest index on ties)
  // nonnegative.
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < out.vectors.rows(); ++r) {
      const double mag = std::abs(out.vectors(r, c));
      if (mag > best) {
        best = mag;
        arg = r;
      }
    }
    if (out.vectors(arg, c) < 0.0) out.vectors.col(c) = -out.vectors.col(c);
  }
  return out;
}

Partition spectral_cluster(const Laplacian& laplacian) {
  const int n = laplacian.size();
  if (n < 2)
    throw std::invalid_argument("spectral_cluster: need at least 2 nodes");
  const EigenPairs eig = symmetric_eig(laplacian.matrix());

  // For connected graphs v2 is orthogonal to the all-ones vector already and
  // this is a no-op. When lambda2 = 0 (disconnected graph) the solver may
  // return a component-localized null vector instead; re-centering picks the
  // representative of the null space whose signs separate the components.
  Eigen::VectorXd fiedler = eig.vectors.col(1);
  Eigen::VectorXd centered = fiedler.array() - fiedler.mean();
  if (centered.norm() < 1e-8) {
    fiedler = eig.vectors.col(0);
    centered = fiedler.array() - fiedler.mean();
  }
  if (centered.norm() > 0.0) fiedler = centered / centered.norm();
  Eigen::Index arg = 0;
  fiedler.cwiseAbs().maxCoeff(&arg);
  if (fiedler(arg) < 0.0) fiedler = -fiedler;

  Partition out;
  out.lambda2 = eig.values(1);
  out.fiedler_isolated = n < 3 || (eig.values(2) - eig.values(1)) > 1e-9;
  for (int i = 0; i < n; ++i) {
    if (fiedler(i) >= 0.0)
      out.group_a.push_back(i);
    else
      out.group_b.push_back(i);
  }
  return out;
}

double sin_theta(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw SizeMismatch("sin_theta: dimension mismatch");
  if (std::abs(u.norm() - 1.0) > 1e-9 || std::abs(v.norm() - 1.0) > 1e-9)
    throw NotUnit("sin_theta: inputs must be unit vectors");
  // For unit vectors ||u - v (v^T u)|| equals sqrt(1 - (u^T v)^2) but keeps
  // full precision for nearly parallel inputs, where the direct formula
  // bottoms out at sqrt(machine epsilon).
  const double c = u.dot(v);
  return std::min(1.0, (u - c * v).norm());
}

SpectralBounds wsbm_spectral_bounds(const WsbmParams& params, double delta) {
  params.validate();
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("wsbm_spectral_bounds: need 0 < delta < 1");
  if (!(params.p > params.q))
    throw DegenerateRegime("wsbm_spectral_bounds: requires p > q");
  const double gamma = params.w_q / params.w_p;
  const double gap = params.p - gamma * params.q;
  if (!(gap > 0.0))
    throw DegenerateRegime("wsbm_spectral_bounds: p - gamma q must be positive");
  const double n = params.n();
  const double n_min = std::min(params.part_a.size(), params.part_b.size());
  const double dev = std::sqrt(n * params.p * std::log(4.0 * n / delta));
  SpectralBounds out;
  out.lambda3_lower =
      params.w_p * (params.p + gamma * params.q) * n_min - 8.0 * params.w_p * dev;
  out.sintheta_upper =
      16.0 * std::sqrt(2.0) * params.w_p * dev / (n_min * params.w_p * gap);
  return out;
}

int partition_mismatch(const Partition& found, const std::vector<int>& planted_a,
                       const std::vector<int>& planted_b) {
  const int n = found.n();
  if (static_cast<int>(planted_a.size() + planted_b.size()) != n)
    throw SizeMismatch("partition_mismatch: node counts differ");
  std::vector<char> found_in_a(n, 0), planted_in_a(n, 0);
  auto mark = [n](const std::vector<int>& idx, std::vector<char>& flag) {
    for (int i : idx) {
      if (i < 0 || i >= n)
        throw SizeMismatch("partition_mismatch: index out of range");
      flag[i] = 1;
    }
  };
  mark(found.group_a, found_in_a);
  mark(planted_a, planted_in_a);
  int direct = 0;
  for (int i = 0; i < n; ++i)
    if (found_in_a[i] != planted_in_a[i]) ++direct;
  return std::min(direct, n - direct);
}

}  // namespace netred
