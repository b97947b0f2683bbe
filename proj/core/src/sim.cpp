#include "netred/sim.hpp"

#include <cmath>

namespace netred {

StateSpace realize_statespace(const RationalFunction& r) {
  if (!r.is_proper())
    throw ImproperTransferFunction("realize_statespace: deg num > deg den");
  const auto& den = r.den().coeffs();  // monic by RationalFunction invariant
  const int n = r.den().degree();
  double d_term = 0.0;
  Polynomial strictly_proper_num = r.num();
  if (r.num().degree() == n && n >= 0) {
    d_term = r.num().leading() / r.den().leading();
    strictly_proper_num = r.num() - d_term * r.den();
  }
  StateSpace ss;
  ss.A = Eigen::MatrixXd::Zero(n, n);
  ss.B = Eigen::MatrixXd::Zero(n, 1);
  ss.C = Eigen::MatrixXd::Zero(1, n);
  ss.D = Eigen::MatrixXd::Constant(1, 1, d_term);
  if (n == 0) return ss;
  for (int i = 0; i + 1 < n; ++i) ss.A(i, i + 1) = 1.0;
  for (int j = 0; j < n; ++j) ss.A(n - 1, j) = -den[j] / den[n];
  ss.B(n - 1, 0) = 1.0;
  const auto& num = strictly_proper_num.coeffs();
  for (int j = 0; j < n && j < static_cast<int>(num.size()); ++j)
    ss.C(0, j) = num[j] / den[n];
  return ss;
}

Eigen::MatrixXcd statespace_response(const StateSpace& ss, std::complex<double> s0) {
  const int n = ss.states();
  const Eigen::MatrixXcd d_c = ss.D.cast<std::complex<double>>();
  if (n == 0) return d_c;
  Eigen::MatrixXcd resolvent =
      s0 * Eigen::MatrixXcd::Identity(n, n) - ss.A.cast<std::complex<double>>();
  return ss.C.cast<std::complex<double>>() *
             resolvent.partialPivLu().solve(ss.B.cast<std::complex<double>>()) +
         d_c;
}

StateSpace assemble_closed_loop(const NetworkModel& net) {
  const int n = net.size();
  const Eigen::MatrixXd& lap = net.laplacian.matrix();

  std::vector<StateSpace> plants;
  plants.reserve(n);
  int n_g = 0;
  for (const auto& g : net.nodes) {
    plants.push_back(realize_statespace(g));
    n_g += plants.back().states();
  }
  const StateSpace f_ss = realize_statespace(net.coupling);
  const int n_f_each = f_ss.states();
  const int n_f = n * n_f_each;
  const double d_f = f_ss.D(0, 0);

  // Block-diagonal plant matrices; D_G is diagonal.
  Eigen::MatrixXd a_g = Eigen::MatrixXd::Zero(n_g, n_g);
  Eigen::MatrixXd b_g = Eigen::MatrixXd::Zero(n_g, n);
  Eigen::MatrixXd c_g = Eigen::MatrixXd::Zero(n, n_g);
  Eigen::MatrixXd d_g = Eigen::MatrixXd::Zero(n, n);
  int offset = 0;
  for (int i = 0; i < n; ++i) {
    const int k = plants[i].states();
    a_g.block(offset, offset, k, k) = plants[i].A;
    b_g.block(offset, i, k, 1) = plants[i].B;
    c_g.block(i, offset, 1, k) = plants[i].C;
    d_g(i, i) = plants[i].D(0, 0);
    offset += k;
  }

  // n parallel copies of f, each driven by one node output.
  Eigen::MatrixXd a_f = Eigen::MatrixXd::Zero(n_f, n_f);
  Eigen::MatrixXd b_f = Eigen::MatrixXd::Zero(n_f, n);
  Eigen::MatrixXd c_f = Eigen::MatrixXd::Zero(n, n_f);
  for (int i = 0; i < n; ++i) {
    a_f.block(i * n_f_each, i * n_f_each, n_f_each, n_f_each) = f_ss.A;
    b_f.block(i * n_f_each, i, n_f_each, 1) = f_ss.B;
    c_f.block(i, i * n_f_each, 1, n_f_each) = f_ss.C;
  }

  // Resolve the output equation y = C_G x_g + D_G (u - L (C_F x_f + d_f y)).
  Eigen::MatrixXd loop = Eigen::MatrixXd::Identity(n, n) + d_f * d_g * lap;
  Eigen::PartialPivLU<Eigen::MatrixXd> loop_lu(loop);
  if (!(loop_lu.rcond() > 1e-12))
    throw AlgebraicLoop("assemble_closed_loop: direct feedthrough loop singular");
  const Eigen::MatrixXd s_cg = loop_lu.solve(c_g);
  const Eigen::MatrixXd s_dg = loop_lu.solve(d_g);
  const Eigen::MatrixXd s_dg_l_cf = s_dg * lap * c_f;

  StateSpace out;
  const int n_x = n_g + n_f;
  out.A = Eigen::MatrixXd::Zero(n_x, n_x);
  out.B = Eigen::MatrixXd::Zero(n_x, n);
  out.C = Eigen::MatrixXd::Zero(n, n_x);
  out.D = s_dg;

  // e = u - L C_F x_f - d_f L y with y = S C_G x_g - S D_G L C_F x_f + S D_G u.
  const Eigen::MatrixXd e_from_xg = -d_f * lap * s_cg;
  const Eigen::MatrixXd e_from_xf = -(lap * c_f) + d_f * lap * s_dg_l_cf;
  const Eigen::MatrixXd e_from_u =
      Eigen::MatrixXd::Identity(n, n) - d_f * lap * s_dg;

  out.A.topLeftCorner(n_g, n_g) = a_g + b_g * e_from_xg;
  out.A.topRightCorner(n_g, n_f) = b_g * e_from_xf;
  out.A.bottomLeftCorner(n_f, n_g) = b_f * s_cg;
  out.A.bottomRightCorner(n_f, n_f) = a_f - b_f * s_dg_l_cf;
  out.B.topRows(n_g) = b_g * e_from_u;
  out.B.bottomRows(n_f) = b_f * s_dg;
  out.C.leftCols(n_g) = s_cg;
  out.C.rightCols(n_f) = -s_dg_l_cf;
  return out;
}

TimeSeries step_response(const StateSpace& ss, const DisturbanceSpec& dist,
                         double t_final, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_response: dt must be > 0");
  if (!(t_final > dist.start_time))
    throw std::invalid_argument("step_response: t_final must exceed start_time");
  if (dist.node < 0 || dist.node >= ss.inputs())
    throw std::invalid_argument("step_response: disturbance node out of range");
  if (!std::isfinite(dist.magnitude))
    throw std::invalid_argument("step_response: disturbance magnitude not finite");

  const int steps = static_cast<int>(std::llround(t_final / dt));
  const int n_x = ss.states();
  const int n_y = ss.outputs();

  const Eigen::VectorXd forced = ss.B.col(dist.node) * dist.magnitude;
  const Eigen::VectorXd fed = ss.D.col(dist.node) * dist.magnitude;

  TimeSeries series;
  series.times.resize(steps + 1);
  series.outputs.resize(n_y, steps + 1);

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n_x);
  Eigen::VectorXd k1(n_x), k2(n_x), k3(n_x), k4(n_x);
  const auto deriv = [&](double t, const Eigen::VectorXd& state,
                         Eigen::VectorXd& dx) {
    dx.noalias() = ss.A * state;
    if (t >= dist.start_time) dx += forced;
  };

  int recorded = 0;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    series.times[k] = t;
    series.outputs.col(k).noalias() = ss.C * x;
    if (t >= dist.start_time) series.outputs.col(k) += fed;
    recorded = k + 1;
    if (series.outputs.col(k).cwiseAbs().maxCoeff() > 1e9) {
      series.diverged = true;
      break;
    }
    if (k == steps) break;
    deriv(t, x, k1);
    deriv(t + 0.5 * dt, x + (0.5 * dt) * k1, k2);
    deriv(t + 0.5 * dt, x + (0.5 * dt) * k2, k3);
    deriv(t + dt, x + dt * k3, k4);
    x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  if (series.diverged) {
    series.times.resize(recorded);
    series.outputs.conservativeResize(n_y, recorded);
  }
  return series;
}

ResponseRecord response_report(const NetworkModel& net, const ReducedModel& rm,
                               const DisturbanceSpec& dist, double t_final,
                               double dt) {
  const int n = net.size();
  if (dist.node < 0 || dist.node >= n)
    throw std::invalid_argument("response_report: disturbance node out of range");

  const StateSpace full_ss = assemble_closed_loop(net);
  const TimeSeries full = step_response(full_ss, dist, t_final, dt);

  std::vector<int> group_of(n, 0);
  for (int i : rm.partition.group_b) group_of[i] = 1;

  Eigen::MatrixXd reduced_lap(2, 2);
  reduced_lap << rm.l_hat_weight, -rm.l_hat_weight, -rm.l_hat_weight,
      rm.l_hat_weight;
  const NetworkModel reduced_net({rm.g_hat_a, rm.g_hat_b}, rm.coupling,
                                 Laplacian(reduced_lap));
  const StateSpace reduced_ss = assemble_closed_loop(reduced_net);
  // A single-node step aggregates to a step of the same magnitude at the
  // node's group.
  DisturbanceSpec reduced_dist{group_of[dist.node], dist.magnitude,
                               dist.start_time};
  const TimeSeries reduced = step_response(reduced_ss, reduced_dist, t_final, dt);

  const int samples =
      static_cast<int>(std::min(full.times.size(), reduced.times.size()));

  ResponseRecord record;
  record.diverged = full.diverged || reduced.diverged;
  record.times.assign(full.times.begin(), full.times.begin() + samples);
  record.full_outputs = full.outputs.leftCols(samples);
  record.reduced_outputs = reduced.outputs.leftCols(samples);

  record.group_means = Eigen::MatrixXd::Zero(2, samples);
  std::array<int, 2> sizes{static_cast<int>(rm.partition.group_a.size()),
                           static_cast<int>(rm.partition.group_b.size())};
  for (int i = 0; i < n; ++i)
    record.group_means.row(group_of[i]) += record.full_outputs.row(i);
  for (int g = 0; g < 2; ++g) record.group_means.row(g) /= sizes[g];

  for (int g = 0; g < 2; ++g) {
    const Eigen::RowVectorXd err_mean =
        record.reduced_outputs.row(g) - record.group_means.row(g);
    record.rms_vs_mean[g] = std::sqrt(err_mean.squaredNorm() / samples);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      if (group_of[i] != g) continue;
      acc += (record.reduced_outputs.row(g) - record.full_outputs.row(i))
                 .squaredNorm();
    }
    record.rms_vs_members[g] = std::sqrt(acc / (sizes[g] * samples));
  }
  return record;
}

}  // namespace netred
