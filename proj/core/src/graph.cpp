#include "netred/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "netred/rng.hpp"

namespace netred {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kRowSumTol = 1e-9;

}  // namespace

Laplacian::Laplacian(Eigen::MatrixXd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw std::invalid_argument("Laplacian: matrix not square");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > kSymmetryTol * scale)
    throw std::invalid_argument("Laplacian: not symmetric");
  if (m_.rowwise().sum().cwiseAbs().maxCoeff() > kRowSumTol * scale)
    throw std::invalid_argument("Laplacian: row sums not zero");
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      if (i != j && m_(i, j) > kSymmetryTol * scale)
        throw std::invalid_argument("Laplacian: positive off-diagonal entry");
}

Laplacian Laplacian::from_offdiagonal(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sym.rows(), sym.cols());
  for (Eigen::Index i = 0; i < sym.rows(); ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < sym.cols(); ++j) {
      if (i == j) continue;
      double w = sym(i, j);
      if (w > 0.0) {
        if (w > 1e-9 * scale)
          throw std::invalid_argument(
              "Laplacian: off-diagonal entry positive beyond roundoff");
        w = 0.0;
      }
      out(i, j) = w;
      diag -= w;
    }
    out(i, i) = diag;
  }
  return Laplacian(std::move(out));
}

void BlockModelParams::validate() const {
  if (n_a < 1 || n_b < 1)
    throw std::invalid_argument("BlockModelParams: group sizes must be >= 1");
  if (beta < 0.0 || alpha < beta)
    throw std::invalid_argument("BlockModelParams: need 0 <= beta <= alpha");
}

void WsbmParams::validate() const {
  const int total = n();
  if (total < 1) throw std::invalid_argument("WsbmParams: empty node set");
  std::vector<char> seen(total, 0);
  for (const auto& part : {part_a, part_b})
    for (int i : part) {
      if (i < 0 || i >= total || seen[i])
        throw std::invalid_argument(
            "WsbmParams: parts must be a disjoint cover of 0..n-1");
      seen[i] = 1;
    }
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw std::invalid_argument("WsbmParams: probabilities must lie in [0,1]");
  if (q > p) throw std::invalid_argument("WsbmParams: need q <= p");
  if (!(w_p > 0.0) || w_q < 0.0)
    throw std::invalid_argument("WsbmParams: need w_p > 0 and w_q >= 0");
}

WsbmParams WsbmParams::contiguous(int n_a, int n_b, double p, double q,
                                  double w_p, double w_q, std::uint64_t seed) {
  WsbmParams out;
  out.part_a.resize(n_a);
  out.part_b.resize(n_b);
  std::iota(out.part_a.begin(), out.part_a.end(), 0);
  std::iota(out.part_b.begin(), out.part_b.end(), n_a);
  out.p = p;
  out.q = q;
  out.w_p = w_p;
  out.w_q = w_q;
  out.seed = seed;
  out.validate();
  return out;
}

namespace {

std::vector<char> group_indicator(const WsbmParams& w) {
  std::vector<char> in_a(w.n(), 0);
  for (int i : w.part_a) in_a[i] = 1;
  return in_a;
}

}  // namespace

Eigen::MatrixXd WsbmParams::probability_matrix() const {
  const auto in_a = group_indicator(*this);
  const int total = n();
  Eigen::MatrixXd mat(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      mat(i, j) = (in_a[i] == in_a[j]) ? p : q;
  return mat;
}

Eigen::MatrixXd WsbmParams::weight_matrix() const {
  const auto in_a = group_indicator(*this);
  const int total = n();
  Eigen::MatrixXd mat(total, total);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < total; ++j)
      mat(i, j) = (in_a[i] == in_a[j]) ? w_p : w_q;
  return mat;
}

Eigen::MatrixXd WsbmParams::expected_adjacency() const {
  return probability_matrix().cwiseProduct(weight_matrix());
}

Laplacian laplacian_from_adjacency(const Eigen::MatrixXd& adjacency) {
  if (adjacency.rows() != adjacency.cols())
    throw AsymmetricInput("adjacency matrix not square");
  if ((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw AsymmetricInput("adjacency matrix not symmetric");
  const Eigen::Index n = adjacency.rows();
  Eigen::MatrixXd lap = -adjacency;
  for (Eigen::Index i = 0; i < n; ++i) {
    // L_ii = sum_{j != i} A_ij; the self-loop A_ii cancels.
    lap(i, i) = adjacency.row(i).sum() - adjacency(i, i);
  }
  return Laplacian(std::move(lap));
}

Laplacian build_block_laplacian(const BlockModelParams& params) {
  params.validate();
  const int n = params.n();
  Eigen::MatrixXd adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      adj(i, j) = ((i < params.n_a) == (j < params.n_a)) ? params.alpha
                                                         : params.beta;
  return laplacian_from_adjacency(adj);
}

BlockSpectrum block_spectrum_closed_form(const BlockModelParams& params) {
  if (params.alpha < params.beta)
    throw OrderingViolated("closed-form spectrum requires alpha >= beta");
  params.validate();
  const double n_a = params.n_a;
  const double n_b = params.n_b;
  const double n = n_a + n_b;
  BlockSpectrum out;
  out.lambda1 = 0.0;
  out.lambda2 = n * params.beta;
  // The remaining eigenvalues are n_a*alpha + n_b*beta with multiplicity
  // n_a - 1 and n_b*alpha + n_a*beta with multiplicity n_b - 1, so the min
  // only runs over values that actually occur. For n = 2 both multiplicities
  // vanish and lambda3 falls back to lambda2.
  const double from_a = n_a * params.alpha + n_b * params.beta;
  const double from_b = n_b * params.alpha + n_a * params.beta;
  if (params.n_a >= 2 && params.n_b >= 2)
    out.lambda3 = std::min(from_a, from_b);
  else if (params.n_a >= 2)
    out.lambda3 = from_a;
  else if (params.n_b >= 2)
    out.lambda3 = from_b;
  else
    out.lambda3 = out.lambda2;
  out.v2.resize(params.n());
  const double va = std::sqrt(n_b / n_a) / std::sqrt(n);
  const double vb = -std::sqrt(n_a / n_b) / std::sqrt(n);
  for (int i = 0; i < params.n(); ++i) out.v2(i) = (i < params.n_a) ? va : vb;
  return out;
}

WsbmSample sample_wsbm(const WsbmParams& params) {
  params.validate();
  const int n = params.n();
  const auto in_a = group_indicator(params);
  Rng rng(params.seed);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const bool intra = in_a[i] == in_a[j];
      const double prob = intra ? params.p : params.q;
      const double weight = intra ? params.w_p : params.w_q;
      if (rng.bernoulli(prob)) {
        adj(i, j) = weight;
        adj(j, i) = weight;
      }
    }
  }
  Laplacian lap = laplacian_from_adjacency(adj);
  return WsbmSample{std::move(adj), std::move(lap)};
}

Laplacian kron_reduce(const Laplacian& laplacian, const std::vector<int>& keep) {
  const int n = laplacian.size();
  std::vector<char> kept(n, 0);
  for (int i : keep) {
    if (i < 0 || i >= n)
      throw std::invalid_argument("kron_reduce: keep index out of range");
    kept[i] = 1;
  }
  std::vector<int> elim;
  for (int i = 0; i < n; ++i)
    if (!kept[i]) elim.push_back(i);
  if (elim.empty()) return laplacian;
  if (keep.empty())
    throw std::invalid_argument("kron_reduce: must keep at least one node");

  const Eigen::MatrixXd& full = laplacian.matrix();
  const auto sub = [&full](const std::vector<int>& rows,
                           const std::vector<int>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        out(r, c) = full(rows[r], cols[c]);
    return out;
  };
  const Eigen::MatrixXd l_kk = sub(keep, keep);
  const Eigen::MatrixXd l_ke = sub(keep, elim);
  const Eigen::MatrixXd l_ee = sub(elim, elim);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(l_ee);
  if (!(lu.rcond() > 1e-12))
    throw SingularInterior(
        "kron_reduce: eliminated block is numerically singular");
  const Eigen::MatrixXd reduced =
      l_kk - l_ke * lu.solve(l_ke.transpose());
  return Laplacian::from_offdiagonal(reduced);
}

ConcentrationBound concentration_bound(const Eigen::MatrixXd& probabilities,
                                       const Eigen::MatrixXd& weights,
                                       double delta, bool rescale) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("concentration_bound: need 0 < delta < 1");
  if (probabilities.rows() != weights.rows() ||
      probabilities.cols() != weights.cols())
    throw std::invalid_argument("concentration_bound: shape mismatch");
  Eigen::MatrixXd w = weights;
  if (rescale) {
    const double wmax = w.cwiseAbs().maxCoeff();
    if (wmax > 0.0) w /= wmax;
  }
  const int n = static_cast<int>(probabilities.rows());
  ConcentrationBound out;
  out.max_row_moment =
      (probabilities.cwiseProduct(w.cwiseAbs2())).rowwise().sum().maxCoeff();
  out.norm_bound =
      8.0 * std::sqrt(out.max_row_moment * std::log(4.0 * n / delta));
  out.exponent = std::log(4.0 / delta) / std::log(static_cast<double>(n));
  out.applicable =
      out.max_row_moment >= 16.0 * (out.exponent + 1.0) * std::log(n);
  return out;
}

ConcentrationBound concentration_bound(const WsbmParams& params, double delta,
                                       bool rescale) {
  return concentration_bound(params.probability_matrix(),
                             params.weight_matrix(), delta, rescale);
}

double spectral_norm_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace netred
