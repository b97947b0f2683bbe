#include "netred/dynamics.hpp"

#include <cmath>

#include "netred/rng.hpp"

namespace netred {

void GeneratorParams::validate() const {
  if (!(inertia > 0.0 && damping > 0.0 && droop > 0.0 && turbine_tau > 0.0))
    throw std::invalid_argument("GeneratorParams: all parameters must be > 0");
}

RationalFunction generator_tf(const GeneratorParams& params) {
  params.validate();
  const double m = params.inertia;
  const double d = params.damping;
  const double r_inv = 1.0 / params.droop;
  const double tau = params.turbine_tau;
  Polynomial num({1.0, tau});
  Polynomial den({d + r_inv, m + d * tau, m * tau});
  return RationalFunction(std::move(num), std::move(den));
}

void GeneratorRanges::validate() const {
  for (const auto& range : {inertia, damping, droop, turbine_tau})
    if (!(range[0] <= range[1]) || !(range[0] > 0.0))
      throw std::invalid_argument(
          "GeneratorRanges: each range needs 0 < lo <= hi");
}

std::vector<GeneratorParams> sample_generators(int n, const GeneratorRanges& ranges,
                                               std::uint64_t seed) {
  ranges.validate();
  Rng rng(seed);
  std::vector<GeneratorParams> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    GeneratorParams p;
    p.inertia = rng.uniform(ranges.inertia[0], ranges.inertia[1]);
    p.damping = rng.uniform(ranges.damping[0], ranges.damping[1]);
    p.droop = rng.uniform(ranges.droop[0], ranges.droop[1]);
    p.turbine_tau = rng.uniform(ranges.turbine_tau[0], ranges.turbine_tau[1]);
    out.push_back(p);
  }
  return out;
}

NetworkModel::NetworkModel(std::vector<RationalFunction> nodes_in,
                           RationalFunction coupling_in, Laplacian laplacian_in)
    : nodes(std::move(nodes_in)),
      coupling(std::move(coupling_in)),
      laplacian(std::move(laplacian_in)) {
  if (static_cast<int>(nodes.size()) != laplacian.size())
    throw std::invalid_argument(
        "NetworkModel: node count does not match Laplacian size");
  for (const auto& g : nodes)
    if (g.is_zero())
      throw std::invalid_argument("NetworkModel: zero node dynamics");
}

RationalFunction aggregate_dynamics(std::span<const RationalFunction> gs) {
  if (gs.empty())
    throw std::invalid_argument("aggregate_dynamics: empty node list");
  RationalFunction sum = gs.front().reciprocal();
  for (std::size_t i = 1; i < gs.size(); ++i) sum = sum + gs[i].reciprocal();
  return sum.reciprocal();
}

PointSolve solve_tyu(const NetworkModel& net, std::complex<double> s0) {
  const int n = net.size();
  const std::complex<double> f_val = net.coupling.eval(s0);
  Eigen::MatrixXcd system = f_val * net.laplacian.matrix().cast<std::complex<double>>();
  for (int i = 0; i < n; ++i) system(i, i) += net.nodes[i].eval_reciprocal(s0);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14))
    throw SingularAtPoint("solve_tyu: system matrix singular at s0");
  PointSolve out;
  out.matrix = lu.solve(Eigen::MatrixXcd::Identity(n, n));
  out.rcond = rcond;
  return out;
}

Eigen::MatrixXcd evaluate_tyu(const NetworkModel& net, std::complex<double> s0) {
  return solve_tyu(net, s0).matrix;
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.adjoint() * m,
                                                         Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

}  // namespace netred
