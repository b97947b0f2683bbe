#include "netred/reduction.hpp"

#include <cmath>
#include <limits>

namespace netred {

FiedlerPair fiedler_pair(const Laplacian& laplacian) {
  const EigenPairs eig = symmetric_eig(laplacian.matrix());
  return FiedlerPair{eig.values(1), eig.vectors.col(1)};
}

Eigen::Matrix2cd build_h2(const NetworkModel& net, const FiedlerPair& eig,
                          std::complex<double> s0) {
  const int n = net.size();
  if (eig.v2.size() != n)
    throw SizeMismatch("build_h2: v2 dimension does not match network");
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  std::complex<double> h11 = 0.0, h12 = 0.0, h22 = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> gi_inv = net.nodes[i].eval_reciprocal(s0);
    const double vi = eig.v2(i);
    h11 += gi_inv;
    h12 += gi_inv * vi;
    h22 += gi_inv * vi * vi;
  }
  h11 /= static_cast<double>(n);
  h12 /= sqrt_n;
  h22 += eig.lambda2 * net.coupling.eval(s0);
  Eigen::Matrix2cd h;
  h << h11, h12, h12, h22;
  return h;
}

namespace {

Eigen::Matrix2cd invert_2x2(const Eigen::Matrix2cd& h, const char* what) {
  const std::complex<double> det = h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0);
  const double scale = h.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > 1e-14 * scale * scale)) throw SingularH2(what);
  Eigen::Matrix2cd inv;
  inv << h(1, 1), -h(0, 1), -h(1, 0), h(0, 0);
  return inv / det;
}

}  // namespace

Eigen::MatrixXcd evaluate_t2(const NetworkModel& net, const FiedlerPair& eig,
                             std::complex<double> s0) {
  const int n = net.size();
  const Eigen::Matrix2cd h2_inv =
      invert_2x2(build_h2(net, eig, s0), "evaluate_t2: H2 singular at s0");
  Eigen::MatrixXd basis(n, 2);
  basis.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  basis.col(1) = eig.v2;
  const Eigen::MatrixXcd basis_c = basis.cast<std::complex<double>>();
  return basis_c * h2_inv * basis_c.transpose();
}

RankTwoErrorBound rank_two_error_bound(const NetworkModel& net,
                                       std::complex<double> s0) {
  const EigenPairs eig = symmetric_eig(net.laplacian.matrix());
  const FiedlerPair pair{eig.values(1), eig.vectors.col(1)};
  const double lambda3 = net.size() >= 3 ? eig.values(2) : eig.values(net.size() - 1);

  const Eigen::MatrixXcd t2 = evaluate_t2(net, pair, s0);
  const Eigen::MatrixXcd tyu = evaluate_tyu(net, s0);

  RankTwoErrorBound out;
  out.lhs = spectral_norm(tyu - t2);
  out.m1 = spectral_norm(t2);
  out.m2 = 0.0;
  for (const auto& g : net.nodes)
    out.m2 = std::max(out.m2, std::abs(g.eval_reciprocal(s0)));
  const double coupling_gain = std::abs(net.coupling.eval(s0));
  const double denom = coupling_gain * lambda3 - out.m2 - out.m1 * out.m2 * out.m2;
  out.applicable = denom >= 0.0;
  const double numer = (out.m1 * out.m2 + 1.0) * (out.m1 * out.m2 + 1.0);
  if (denom > 0.0)
    out.rhs = numer / denom;
  else if (denom == 0.0)
    out.rhs = std::numeric_limits<double>::infinity();
  else
    out.rhs = std::numeric_limits<double>::quiet_NaN();
  return out;
}

ReducedModel reduce_network(const NetworkModel& net) {
  Partition part = spectral_cluster(net.laplacian);
  if (part.group_a.empty() || part.group_b.empty())
    throw DegeneratePartition("reduce_network: clustering left a group empty");
  std::vector<RationalFunction> in_a, in_b;
  for (int i : part.group_a) in_a.push_back(net.nodes[i]);
  for (int i : part.group_b) in_b.push_back(net.nodes[i]);
  const double n_a = static_cast<double>(part.group_a.size());
  const double n_b = static_cast<double>(part.group_b.size());
  const double l_hat = part.lambda2 * n_a * n_b / (n_a + n_b);
  return ReducedModel{std::move(part), aggregate_dynamics(in_a),
                      aggregate_dynamics(in_b), l_hat, net.coupling};
}

Eigen::Matrix2cd evaluate_reduced(const ReducedModel& rm, std::complex<double> s0) {
  const std::complex<double> f_val = rm.coupling.eval(s0);
  Eigen::Matrix2cd system;
  system << rm.g_hat_a.eval_reciprocal(s0) + f_val * rm.l_hat_weight,
      -f_val * rm.l_hat_weight, -f_val * rm.l_hat_weight,
      rm.g_hat_b.eval_reciprocal(s0) + f_val * rm.l_hat_weight;
  return invert_2x2(system, "evaluate_reduced: reduced system singular at s0");
}

Eigen::MatrixXcd lift_reduced(const ReducedModel& rm, std::complex<double> s0) {
  const Eigen::Matrix2cd reduced = evaluate_reduced(rm, s0);
  const int n = rm.partition.n();
  std::vector<int> group_of(n, 0);
  for (int i : rm.partition.group_b) group_of[i] = 1;
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = reduced(group_of[i], group_of[j]);
  return out;
}

}  // namespace netred
