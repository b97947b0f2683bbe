#include <doctest.h>

#include <cmath>

#include "netred/graph.hpp"
#include "netred/rng.hpp"
#include "netred/spectral.hpp"

using namespace netred;

namespace {

WsbmParams reference_params() {
  return WsbmParams::contiguous(30, 20, 0.6, 0.1, 5.0, 0.5, 42);
}

}  // namespace

TEST_CASE("laplacian from adjacency") {
  Eigen::MatrixXd edge(2, 2);
  edge << 0, 1, 1, 0;
  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, -1, 1;
  CHECK(laplacian_from_adjacency(edge).matrix().isApprox(expected));

  // Self-loops cancel identically.
  Eigen::MatrixXd loop = Eigen::MatrixXd::Zero(3, 3);
  loop(1, 1) = 5.0;
  CHECK(laplacian_from_adjacency(loop).matrix().isZero(0.0));

  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(3, 3);
  path(0, 1) = path(1, 0) = 1.0;
  path(1, 2) = path(2, 1) = 2.0;
  Eigen::MatrixXd lap(3, 3);
  lap << 1, -1, 0, -1, 3, -2, 0, -2, 2;
  CHECK(laplacian_from_adjacency(path).matrix().isApprox(lap));

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS((void)laplacian_from_adjacency(bad), AsymmetricInput);
}

TEST_CASE("block laplacian") {
  Eigen::MatrixXd single(2, 2);
  single << 1, -1, -1, 1;
  CHECK(build_block_laplacian({1, 1, 1.0, 1.0}).matrix().isApprox(single));

  const Laplacian l = build_block_laplacian({3, 2, 2.0, 1.0});
  for (int i = 0; i < 3; ++i) CHECK(l.matrix()(i, i) == doctest::Approx(6.0));

  // alpha == beta degenerates to the complete graph.
  const Laplacian k4 = build_block_laplacian({2, 2, 1.0, 1.0});
  Eigen::MatrixXd complete =
      4.0 * Eigen::MatrixXd::Identity(4, 4) - Eigen::MatrixXd::Ones(4, 4);
  CHECK(k4.matrix().isApprox(complete));
}

TEST_CASE("closed-form block spectrum") {
  const BlockSpectrum s = block_spectrum_closed_form({3, 2, 2.0, 1.0});
  CHECK(s.lambda2 == doctest::Approx(5.0));
  CHECK(s.lambda3 == doctest::Approx(7.0));
  const double scale = 1.0 / std::sqrt(5.0);
  for (int i = 0; i < 3; ++i)
    CHECK(s.v2(i) == doctest::Approx(scale * std::sqrt(2.0 / 3.0)));
  for (int i = 3; i < 5; ++i)
    CHECK(s.v2(i) == doctest::Approx(-scale * std::sqrt(3.0 / 2.0)));
  CHECK(s.v2.norm() == doctest::Approx(1.0));

  const BlockSpectrum equal = block_spectrum_closed_form({3, 3, 1.5, 1.5});
  CHECK(equal.lambda2 == doctest::Approx(9.0));
  CHECK(equal.lambda3 == doctest::Approx(9.0));

  CHECK_THROWS_AS((void)block_spectrum_closed_form({2, 2, 1.0, 2.0}),
                  OrderingViolated);
}

TEST_CASE("closed-form spectrum matches a numeric eigensolver") {
  // Includes single-node groups, where only one of the two block
  // eigenvalues actually occurs in the spectrum.
  Rng rng(501);
  for (int trial = 0; trial < 60; ++trial) {
    BlockModelParams params;
    const int n = 2 + static_cast<int>(rng.uniform() * 59.0);
    params.n_a = 1 + static_cast<int>(rng.uniform() * (n - 1));
    params.n_b = n - params.n_a;
    params.beta = rng.uniform(0.2, 2.0);
    params.alpha = params.beta + rng.uniform(0.3, 3.0);

    const BlockSpectrum closed = block_spectrum_closed_form(params);
    const EigenPairs numeric = symmetric_eig(build_block_laplacian(params).matrix());
    CHECK(std::abs(numeric.values(0)) < 1e-9);
    CHECK(std::abs(numeric.values(1) - closed.lambda2) < 1e-9);
    if (n >= 3) CHECK(std::abs(numeric.values(2) - closed.lambda3) < 1e-9);
    CHECK(sin_theta(numeric.vectors.col(1), closed.v2) < 1e-8);
  }
}

TEST_CASE("wsbm sampling") {
  const WsbmParams certain = WsbmParams::contiguous(2, 2, 1.0, 1.0, 1.0, 1.0, 5);
  CHECK(sample_wsbm(certain).adjacency.isApprox(Eigen::MatrixXd::Ones(4, 4)));

  const WsbmParams empty = WsbmParams::contiguous(3, 2, 0.0, 0.0, 1.0, 0.5, 5);
  CHECK(sample_wsbm(empty).laplacian.matrix().isZero(0.0));

  const WsbmParams ref = WsbmParams::contiguous(30, 20, 0.6, 0.1, 5.0, 0.5, 42);
  const WsbmSample first = sample_wsbm(ref);
  const WsbmSample second = sample_wsbm(ref);
  CHECK(first.adjacency == second.adjacency);  // bit-reproducible

  CHECK_THROWS_AS(
      (void)WsbmParams::contiguous(2, 2, 0.2, 0.5, 1.0, 1.0, 1).n(),
      std::invalid_argument);
}

TEST_CASE("wsbm empirical mean approaches the block adjacency") {
  const int samples = 2000;
  WsbmParams ref = reference_params();
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(50, 50);
  for (int k = 0; k < samples; ++k) {
    ref.seed = Rng::child_seed(7, k);
    acc += sample_wsbm(ref).adjacency;
  }
  acc /= samples;
  const Eigen::MatrixXd expected = ref.expected_adjacency();
  int outside3 = 0;
  for (int i = 0; i < 50; ++i)
    for (int j = i; j < 50; ++j) {
      const bool intra = (i < 30) == (j < 30);
      const double p = intra ? ref.p : ref.q;
      const double w = intra ? ref.w_p : ref.w_q;
      const double se = std::sqrt(p * (1.0 - p)) * w / std::sqrt(samples);
      const double dev = std::abs(acc(i, j) - expected(i, j));
      if (dev > 3.0 * se) ++outside3;
      CHECK(dev <= 5.0 * se);  // hard cap
    }
  // ~0.27% of entries are expected outside 3 standard errors.
  CHECK(outside3 <= 0.01 * (50 * 51 / 2));
}

TEST_CASE("kron reduction") {
  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(3, 3);
  path(0, 1) = path(1, 0) = 1.0;
  path(1, 2) = path(2, 1) = 1.0;
  const Laplacian lap = laplacian_from_adjacency(path);

  const Laplacian series = kron_reduce(lap, {0, 2});
  CHECK(series.matrix()(0, 1) == doctest::Approx(-0.5));

  CHECK(kron_reduce(lap, {0, 1, 2}).matrix().isApprox(lap.matrix()));

  Eigen::MatrixXd triangle = Eigen::MatrixXd::Ones(3, 3);
  triangle.diagonal().setZero();
  const Laplacian tri = laplacian_from_adjacency(triangle);
  const Laplacian pair = kron_reduce(tri, {0, 1});
  CHECK(pair.matrix()(0, 1) == doctest::Approx(-1.5));

  // Eliminating an isolated node leaves a singular interior block.
  Eigen::MatrixXd with_isolated = Eigen::MatrixXd::Zero(3, 3);
  with_isolated(0, 1) = with_isolated(1, 0) = 1.0;
  const Laplacian iso = laplacian_from_adjacency(with_isolated);
  CHECK_THROWS_AS((void)kron_reduce(iso, {0, 1}), SingularInterior);
}

TEST_CASE("kron reduction composes") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 6 + static_cast<int>(rng.uniform() * 5.0);
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double w = rng.bernoulli(0.6) ? rng.uniform(0.5, 2.0) : 0.0;
        adj(i, j) = adj(j, i) = w;
      }
    for (int i = 1; i < n; ++i) {  // spanning path keeps it connected
      const double w = rng.uniform(0.5, 2.0);
      adj(i - 1, i) += w;
      adj(i, i - 1) += w;
    }
    const Laplacian lap = laplacian_from_adjacency(adj);

    std::vector<int> keep_two;  // drop nodes 0 and 1 in two different ways
    for (int i = 2; i < n; ++i) keep_two.push_back(i);
    std::vector<int> keep_first;
    for (int i = 1; i < n; ++i) keep_first.push_back(i);

    const Laplacian direct = kron_reduce(lap, keep_two);
    std::vector<int> keep_second;
    for (int i = 0; i + 1 < n; ++i) keep_second.push_back(i + 1);
    const Laplacian staged =
        kron_reduce(kron_reduce(lap, keep_first), [&] {
          std::vector<int> idx;
          for (int i = 1; i < n - 1; ++i) idx.push_back(i);
          return idx;
        }());
    CHECK((direct.matrix() - staged.matrix()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("concentration quantities") {
  // Uniform model: every row contributes n * p.
  const int n = 12;
  const double p = 0.3;
  const Eigen::MatrixXd probs = Eigen::MatrixXd::Constant(n, n, p);
  const Eigen::MatrixXd weights = Eigen::MatrixXd::Ones(n, n);
  const ConcentrationBound uniform = concentration_bound(probs, weights, 0.1, false);
  CHECK(uniform.max_row_moment == doctest::Approx(n * p));

  // Reference parameters, rescaled by w_p = 5.
  const ConcentrationBound ref =
      concentration_bound(reference_params(), 0.1, true);
  CHECK(ref.max_row_moment == doctest::Approx(18.02).epsilon(1e-12));
  CHECK(ref.norm_bound == doctest::Approx(93.62675252587101).epsilon(1e-9));
  CHECK(ref.exponent == doctest::Approx(0.9429595503388948).epsilon(1e-12));
  CHECK_FALSE(ref.applicable);  // 18.02 < 16 (c+1) log 50 = 121.6

  // The group-b row moment is the smaller one.
  const Eigen::MatrixXd pm = reference_params().probability_matrix();
  Eigen::MatrixXd wm = reference_params().weight_matrix() / 5.0;
  const Eigen::VectorXd moments = pm.cwiseProduct(wm.cwiseAbs2()).rowwise().sum();
  CHECK(moments(49) == doctest::Approx(12.03).epsilon(1e-12));
}

TEST_CASE("spectral norm of symmetric matrices") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 3, 3, 0;
  CHECK(spectral_norm_symmetric(m) == doctest::Approx(3.0));
}
