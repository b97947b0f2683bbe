#include <doctest.h>

#include <cmath>
#include <complex>

#include "netred/reduction.hpp"
#include "netred/rng.hpp"
#include "netred/validate.hpp"

using namespace netred;
using cplx = std::complex<double>;

namespace {

Laplacian two_cliques(int n1, int n2) {
  const int n = n1 + n2;
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((i < n1) == (j < n1)) adj(i, j) = adj(j, i) = 1.0;
  return laplacian_from_adjacency(adj);
}

}  // namespace

TEST_CASE("h2 frequency point") {
  const cplx s0(0.4, 1.3);

  // Identical nodes: v2 is orthogonal to the all-ones vector, so the
  // off-diagonal entry vanishes.
  const RationalFunction g = generator_tf({0.2, 0.4, 6.0, 4.0});
  const NetworkModel same(std::vector<RationalFunction>(5, g),
                          RationalFunction::integrator(),
                          build_block_laplacian({3, 2, 2.0, 1.0}));
  const FiedlerPair pair = fiedler_pair(same.laplacian);
  const Eigen::Matrix2cd h = build_h2(same, pair, s0);
  CHECK(std::abs(h(0, 1)) < 1e-12);
  CHECK(std::abs(h(0, 1) - h(1, 0)) < 1e-14);

  // Two-block network: the entries collapse to aggregate expressions.
  const NetworkModel blk = make_generator_network(
      build_block_laplacian({3, 2, 2.0, 1.0}), 404);
  const FiedlerPair bpair = fiedler_pair(blk.laplacian);
  const Eigen::Matrix2cd hb = build_h2(blk, bpair, s0);
  std::vector<RationalFunction> in_a(blk.nodes.begin(), blk.nodes.begin() + 3);
  std::vector<RationalFunction> in_b(blk.nodes.begin() + 3, blk.nodes.end());
  const cplx ga_inv = aggregate_dynamics(in_a).eval_reciprocal(s0);
  const cplx gb_inv = aggregate_dynamics(in_b).eval_reciprocal(s0);
  const double n = 5, n_a = 3, n_b = 2;
  CHECK(std::abs(hb(0, 0) - (ga_inv + gb_inv) / n) < 1e-9);
  const double sign = bpair.v2(0) > 0 ? 1.0 : -1.0;  // v2 sign is conventional
  const cplx h12 = sign / n * (std::sqrt(n_b / n_a) * ga_inv -
                               std::sqrt(n_a / n_b) * gb_inv);
  CHECK(std::abs(hb(0, 1) - h12) < 1e-9);
  const cplx h22 = (n_b / n_a * ga_inv + n_a / n_b * gb_inv) / n +
                   bpair.lambda2 * blk.coupling.eval(s0);
  CHECK(std::abs(hb(1, 1) - h22) < 1e-9);

  // n = 2: H2 is the full system in the orthonormal basis [1/sqrt2, v2].
  const NetworkModel duo = make_generator_network(
      build_block_laplacian({1, 1, 0.8, 0.8}), 11);
  const FiedlerPair dpair = fiedler_pair(duo.laplacian);
  Eigen::MatrixXd basis(2, 2);
  basis.col(0).setConstant(1.0 / std::sqrt(2.0));
  basis.col(1) = dpair.v2;
  Eigen::Matrix2cd full;
  full.setZero();
  full(0, 0) = duo.nodes[0].eval_reciprocal(s0);
  full(1, 1) = duo.nodes[1].eval_reciprocal(s0);
  full += duo.coupling.eval(s0) *
          duo.laplacian.matrix().cast<cplx>();
  const Eigen::Matrix2cd expected =
      basis.cast<cplx>().transpose() * full * basis.cast<cplx>();
  CHECK((build_h2(duo, dpair, s0) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("rank-two approximant") {
  const cplx s0(0.2, 0.9);

  // n = 2 is exact.
  const NetworkModel duo = make_generator_network(
      build_block_laplacian({1, 1, 0.8, 0.8}), 21);
  const FiedlerPair dpair = fiedler_pair(duo.laplacian);
  CHECK((evaluate_t2(duo, dpair, s0) - evaluate_tyu(duo, s0))
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  // Construction forces numerical rank <= 2.
  const NetworkModel net = make_generator_network(
      build_block_laplacian({3, 2, 2.0, 1.0}), 22);
  const FiedlerPair pair = fiedler_pair(net.laplacian);
  const Eigen::MatrixXcd t2 = evaluate_t2(net, pair, s0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(t2);
  CHECK(svd.singularValues()(2) <= 1e-10 * svd.singularValues()(0));
}

TEST_CASE("singular h2 points are reported") {
  // Two identical integrators with static coupling: H2(0) = [[0,0],[0,2k]].
  const NetworkModel duo(
      std::vector<RationalFunction>(2, RationalFunction::integrator()),
      RationalFunction::one(), build_block_laplacian({1, 1, 0.7, 0.7}));
  const FiedlerPair pair = fiedler_pair(duo.laplacian);
  CHECK_THROWS_AS((void)evaluate_t2(duo, pair, cplx(0.0, 0.0)), SingularH2);
}

TEST_CASE("rank-two error bound") {
  // Direct substitution: M1 = M2 = 1, |f| lambda3 = 10 gives rhs = 0.5.
  CHECK((1.0 * 1.0 + 1.0) * (1.0 * 1.0 + 1.0) / (10.0 - 1.0 - 1.0 * 1.0) ==
        doctest::Approx(0.5));

  // n = 2 network: lhs vanishes wherever the bound applies.
  const NetworkModel duo = make_generator_network(
      build_block_laplacian({1, 1, 0.8, 0.8}), 33);
  const RankTwoErrorBound duo_bound = rank_two_error_bound(duo, cplx(0.0, 0.5));
  CHECK(duo_bound.lhs < 1e-10);
  if (duo_bound.applicable) CHECK(duo_bound.lhs <= duo_bound.rhs + 1e-9);

  // Paper-style two-block network at s0 = 1j.
  const NetworkModel blk = make_generator_network(
      build_block_laplacian({30, 20, 3.0, 0.5}), 44);
  const RankTwoErrorBound bound = rank_two_error_bound(blk, cplx(0.0, 1.0));
  CHECK(bound.applicable);
  CHECK(bound.lhs <= bound.rhs + 1e-9);

  // Bound tightness: rhs shrinks as alpha (hence lambda3) grows.
  double prev_rhs = std::numeric_limits<double>::infinity();
  for (double alpha : {2.0, 4.0, 8.0}) {
    const NetworkModel net(blk.nodes, blk.coupling,
                           build_block_laplacian({30, 20, alpha, 0.5}));
    const RankTwoErrorBound b = rank_two_error_bound(net, cplx(0.0, 1.0));
    REQUIRE(b.applicable);
    CHECK(b.rhs < prev_rhs);
    prev_rhs = b.rhs;
  }
}

TEST_CASE("network reduction") {
  // Two disconnected cliques of identical integrators.
  const NetworkModel cliques(
      std::vector<RationalFunction>(7, RationalFunction::integrator()),
      RationalFunction::one(), two_cliques(3, 4));
  const ReducedModel rm = reduce_network(cliques);
  CHECK(rm.l_hat_weight == doctest::Approx(0.0));
  const double n_first = static_cast<double>(rm.partition.group_a.size());
  CHECK(rm.g_hat_a.den().coeffs()[1] == doctest::Approx(1.0));
  CHECK(rm.g_hat_a.num().coeffs()[0] == doctest::Approx(1.0 / n_first));
  CHECK(partition_mismatch(rm.partition, {0, 1, 2}, {3, 4, 5, 6}) == 0);

  // Two-block graph with identical nodes: weight lambda2 n_a n_b / n.
  const NetworkModel blk(
      std::vector<RationalFunction>(5, RationalFunction::integrator()),
      RationalFunction::one(), build_block_laplacian({3, 2, 2.0, 1.0}));
  CHECK(reduce_network(blk).l_hat_weight == doctest::Approx(6.0));

  // Reference WSBM instance: groups of 30 and 20 (up to labels).
  const WsbmParams params = WsbmParams::contiguous(30, 20, 0.6, 0.1, 5.0, 0.5, 3);
  const NetworkModel sampled =
      make_generator_network(sample_wsbm(params).laplacian, 3);
  const ReducedModel srm = reduce_network(sampled);
  CHECK(partition_mismatch(srm.partition, params.part_a, params.part_b) == 0);
}

TEST_CASE("lift of the reduced response") {
  const cplx s0(0.6, 0.8);
  const NetworkModel duo = make_generator_network(
      build_block_laplacian({1, 1, 0.8, 0.8}), 55);
  const ReducedModel rm = reduce_network(duo);
  CHECK((lift_reduced(rm, s0) - evaluate_reduced(rm, s0)).cwiseAbs().maxCoeff() <
        1e-14);

  // Two-node exactness on a block network, 20 random points.
  const NetworkModel blk = make_generator_network(
      build_block_laplacian({6, 3, 2.5, 0.7}), 56);
  const ReducedModel brm = reduce_network(blk);
  const FiedlerPair pair = fiedler_pair(blk.laplacian);
  Rng rng(57);
  for (int k = 0; k < 20; ++k) {
    const cplx s(rng.uniform(0.05, 3.0), rng.uniform(-3.0, 3.0));
    const Eigen::MatrixXcd t2 = evaluate_t2(blk, pair, s);
    CHECK(spectral_norm(t2 - lift_reduced(brm, s)) <=
          1e-8 * spectral_norm(t2));
  }
}

TEST_CASE("rank-two response depends on inputs only through group sums") {
  const NetworkModel blk = make_generator_network(
      build_block_laplacian({4, 3, 2.0, 0.6}), 58);
  const FiedlerPair pair = fiedler_pair(blk.laplacian);
  const cplx s0(0.3, 1.7);
  const Eigen::MatrixXcd t2 = evaluate_t2(blk, pair, s0);

  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(7);
  u(1) = 1.0;
  // Perturbation inside group a with zero group sum.
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(7);
  w(0) = 0.5;
  w(2) = -0.5;
  CHECK((t2 * (u + w) - t2 * u).norm() < 1e-9 * (t2 * u).norm());
}

TEST_CASE("clustering always yields two nonempty groups") {
  // Star graphs and disconnected graphs are the classic ways to end up
  // with a one-sided Fiedler vector; the centered representative keeps
  // both groups populated.
  Eigen::MatrixXd star = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 1; i < 6; ++i) star(0, i) = star(i, 0) = 1.0;
  const Partition hub = spectral_cluster(laplacian_from_adjacency(star));
  CHECK(!hub.group_a.empty());
  CHECK(!hub.group_b.empty());

  const Partition split = spectral_cluster(two_cliques(1, 5));
  CHECK(!split.group_a.empty());
  CHECK(!split.group_b.empty());
}
