#include "netred/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "netred/reduction.hpp"
#include "netred/rng.hpp"
#include "netred/sim.hpp"
#include "netred/spectral.hpp"

namespace netred {

std::vector<std::complex<double>> default_s0_grid() {
  constexpr int kPoints = 12;
  const double lo = std::log10(0.01);
  const double hi = std::log10(100.0);
  std::vector<std::complex<double>> grid;
  grid.reserve(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    const double w = std::pow(10.0, lo + (hi - lo) * k / (kPoints - 1));
    grid.emplace_back(0.0, w);
  }
  return grid;
}

void parallel_for_trials(int count, const std::function<void(int)>& body) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* cap = std::getenv("NETRED_THREADS")) {
    const int parsed = std::atoi(cap);
    if (parsed >= 1) workers = std::min(workers, parsed);
  }
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

WsbmParams reference_wsbm(std::uint64_t seed) {
  return WsbmParams::contiguous(30, 20, 0.6, 0.1, 5.0, 0.5, seed);
}

WsbmParams concentration_wsbm(std::uint64_t seed) {
  return WsbmParams::contiguous(120, 80, 0.6, 0.1, 1.0, 0.1, seed);
}

NetworkModel make_generator_network(Laplacian laplacian, std::uint64_t seed) {
  const int n = laplacian.size();
  std::vector<RationalFunction> nodes;
  nodes.reserve(n);
  for (const auto& p : sample_generators(n, GeneratorRanges{}, seed))
    nodes.push_back(generator_tf(p));
  return NetworkModel(std::move(nodes), RationalFunction::integrator(),
                      std::move(laplacian));
}

namespace {

void finalize_slack(SuiteResult& result, std::vector<double> slack) {
  if (slack.empty()) return;
  std::sort(slack.begin(), slack.end());
  result.slack_min = slack.front();
  result.slack_max = slack.back();
  const std::size_t mid = slack.size() / 2;
  result.slack_median = (slack.size() % 2) ? slack[mid]
                                           : 0.5 * (slack[mid - 1] + slack[mid]);
}

struct TrialSlots {
  std::vector<int> checks;
  std::vector<int> failures;
  std::vector<std::vector<double>> slack;
  std::vector<std::string> notes;

  explicit TrialSlots(int trials)
      : checks(trials, 0), failures(trials, 0), slack(trials), notes(trials) {}

  void merge_into(SuiteResult& result) const {
    std::vector<double> all;
    for (std::size_t t = 0; t < checks.size(); ++t) {
      result.checks += checks[t];
      result.failures += failures[t];
      all.insert(all.end(), slack[t].begin(), slack[t].end());
      if (!notes[t].empty()) result.notes.push_back(notes[t]);
    }
    finalize_slack(result, std::move(all));
  }
};

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

BlockModelParams random_block_params(Rng& rng, int max_group) {
  BlockModelParams params;
  params.n_a = 1 + static_cast<int>(rng.uniform() * max_group);
  params.n_b = 1 + static_cast<int>(rng.uniform() * max_group);
  params.beta = rng.uniform(0.2, 2.0);
  params.alpha = params.beta + rng.uniform(0.3, 3.0);
  return params;
}

}  // namespace

SuiteResult run_spectrum_suite(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "spectrum";
  result.trials = trials;
  TrialSlots slots(trials);
  parallel_for_trials(trials, [&](int t) {
    Rng rng(Rng::child_seed(seed, t));
    BlockModelParams params;
    const int n = 2 + static_cast<int>(rng.uniform() * 59.0);  // 2..60
    params.n_a = 1 + static_cast<int>(rng.uniform() * (n - 1));
    params.n_b = n - params.n_a;
    params.beta = rng.uniform(0.2, 2.0);
    params.alpha = params.beta + rng.uniform(0.3, 3.0);

    const Laplacian lap = build_block_laplacian(params);
    const EigenPairs numeric = symmetric_eig(lap.matrix());
    const BlockSpectrum closed = block_spectrum_closed_form(params);

    double err = std::abs(numeric.values(1) - closed.lambda2);
    if (n >= 3) err = std::max(err, std::abs(numeric.values(2) - closed.lambda3));
    const double angle = sin_theta(numeric.vectors.col(1), closed.v2);

    slots.checks[t] = 1;
    slots.slack[t].push_back(1e-8 - angle);
    if (err > 1e-9 || angle > 1e-8) {
      slots.failures[t] = 1;
      slots.notes[t] = "trial " + std::to_string(t) +
                       ": eigenvalue err " + sci(err) +
                       ", sin angle " + sci(angle);
    }
  });
  slots.merge_into(result);
  result.violation_rate =
      result.trials ? static_cast<double>(result.failures) / result.trials : 0.0;
  result.passed = result.failures == 0;
  return result;
}

SuiteResult run_thm2_suite(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "thm2";
  result.trials = trials;
  constexpr int kPointsPerNetwork = 20;
  TrialSlots slots(trials);
  parallel_for_trials(trials, [&](int t) {
    const std::uint64_t trial_seed = Rng::child_seed(seed, t);
    Rng geom(Rng::child_seed(trial_seed, 0));
    const BlockModelParams params = random_block_params(geom, 15);
    const Laplacian lap = build_block_laplacian(params);
    const NetworkModel net =
        make_generator_network(lap, Rng::child_seed(trial_seed, 1));

    const ReducedModel rm = reduce_network(net);
    const FiedlerPair pair = fiedler_pair(net.laplacian);

    Rng points(Rng::child_seed(trial_seed, 2));
    for (int k = 0; k < kPointsPerNetwork; ++k) {
      const std::complex<double> s0(points.uniform(0.05, 3.0),
                                    points.uniform(-3.0, 3.0));
      const Eigen::MatrixXcd t2 = evaluate_t2(net, pair, s0);
      const Eigen::MatrixXcd lifted = lift_reduced(rm, s0);
      const double rel = spectral_norm(t2 - lifted) / spectral_norm(t2);
      ++slots.checks[t];
      slots.slack[t].push_back(1e-8 - rel);
      if (!(rel <= 1e-8)) {
        ++slots.failures[t];
        slots.notes[t] =
            "trial " + std::to_string(t) + ": relative residual " + sci(rel);
      }
    }
  });
  slots.merge_into(result);
  result.violation_rate =
      result.checks ? static_cast<double>(result.failures) / result.checks : 0.0;
  result.passed = result.failures == 0;
  return result;
}

SuiteResult run_thm1_suite(int trials, std::uint64_t seed,
                           std::vector<std::complex<double>> s0_grid) {
  SuiteResult result;
  result.suite = "thm1";
  result.trials = trials;
  if (s0_grid.empty()) s0_grid = default_s0_grid();
  TrialSlots slots(trials);
  parallel_for_trials(trials, [&](int t) {
    const std::uint64_t trial_seed = Rng::child_seed(seed, t);
    Rng geom(Rng::child_seed(trial_seed, 0));
    Laplacian lap = [&] {
      if (t % 2 == 0) {
        BlockModelParams params = random_block_params(geom, 30);
        params.n_a = std::max(params.n_a, 2);
        params.n_b = std::max(params.n_b, 2);
        return build_block_laplacian(params);
      }
      const int n_a = 5 + static_cast<int>(geom.uniform() * 31.0);
      const int n_b = 5 + static_cast<int>(geom.uniform() * 31.0);
      const double p = geom.uniform(0.4, 0.9);
      const double q = geom.uniform(0.02, 0.3 * p);
      const double w_p = geom.uniform(1.0, 6.0);
      const double w_q = geom.uniform(0.05, 0.5) * w_p;
      return sample_wsbm(WsbmParams::contiguous(
                             n_a, n_b, p, q, w_p, w_q,
                             Rng::child_seed(trial_seed, 3)))
          .laplacian;
    }();
    const NetworkModel net =
        make_generator_network(std::move(lap), Rng::child_seed(trial_seed, 1));

    for (const auto& s0 : s0_grid) {
      RankTwoErrorBound bound;
      try {
        bound = rank_two_error_bound(net, s0);
      } catch (const Error&) {
        continue;  // s0 at a pole: outside the bound's domain
      }
      if (!bound.applicable) continue;
      ++slots.checks[t];
      slots.slack[t].push_back(bound.rhs - bound.lhs);
      if (!(bound.lhs <= bound.rhs + 1e-9)) {
        ++slots.failures[t];
        slots.notes[t] = "trial " + std::to_string(t) + ": lhs " +
                         std::to_string(bound.lhs) + " > rhs " +
                         std::to_string(bound.rhs);
      }
    }
  });
  slots.merge_into(result);
  result.violation_rate =
      result.checks ? static_cast<double>(result.failures) / result.checks : 0.0;
  result.passed = result.failures == 0;
  return result;
}

SuiteResult run_clustering_suite(int trials, std::uint64_t seed) {
  SuiteResult result;
  result.suite = "clustering";
  result.trials = trials;
  TrialSlots slots(trials);
  parallel_for_trials(trials, [&](int t) {
    const WsbmParams params = reference_wsbm(Rng::child_seed(seed, t));
    const WsbmSample sample = sample_wsbm(params);
    const Partition found = spectral_cluster(sample.laplacian);
    const int mismatch = partition_mismatch(found, params.part_a, params.part_b);
    slots.checks[t] = 1;
    slots.slack[t].push_back(-static_cast<double>(mismatch));
    if (mismatch != 0) {
      slots.failures[t] = 1;
      slots.notes[t] =
          "trial " + std::to_string(t) + ": mismatch " + std::to_string(mismatch);
    }
  });
  slots.merge_into(result);
  result.violation_rate =
      result.trials ? static_cast<double>(result.failures) / result.trials : 0.0;
  result.passed = result.failures == 0;
  return result;
}

SuiteResult run_prop1_suite(int trials, std::uint64_t seed, double delta) {
  SuiteResult result;
  result.suite = "prop1";
  result.trials = trials;
  TrialSlots slots(trials);
  bool bound_applicable = true;
  double bound_value = 0.0;
  parallel_for_trials(trials, [&](int t) {
    const WsbmParams params = concentration_wsbm(Rng::child_seed(seed, t));
    const ConcentrationBound bound = concentration_bound(params, delta, false);
    if (t == 0) {
      bound_applicable = bound.applicable;
      bound_value = bound.norm_bound;
    }
    const WsbmSample sample = sample_wsbm(params);
    const Laplacian expected = laplacian_from_adjacency(params.expected_adjacency());
    const double deviation =
        spectral_norm_symmetric(sample.laplacian.matrix() - expected.matrix());
    slots.checks[t] = 1;
    slots.slack[t].push_back(bound.norm_bound - deviation);
    if (deviation > bound.norm_bound) slots.failures[t] = 1;
  });
  slots.merge_into(result);
  result.violation_rate =
      result.trials ? static_cast<double>(result.failures) / result.trials : 0.0;
  result.passed = result.violation_rate <= delta;
  result.notes.push_back("norm bound " + std::to_string(bound_value) +
                         (bound_applicable
                              ? "; moment condition holds"
                              : "; moment condition Delta >= 16(c+1) log n does "
                                "not hold at this n"));
  return result;
}

SuiteResult run_thm4_suite(int trials, std::uint64_t seed, double delta) {
  SuiteResult result;
  result.suite = "thm4";
  result.trials = trials;

  std::vector<int> eq10_holds(trials, 0), sin_holds(trials, 0);
  TrialSlots slots(trials);
  parallel_for_trials(trials, [&](int t) {
    const WsbmParams params = concentration_wsbm(Rng::child_seed(seed, t));
    const WsbmSample sample = sample_wsbm(params);
    const Laplacian expected = laplacian_from_adjacency(params.expected_adjacency());
    const BlockModelParams block{
        static_cast<int>(params.part_a.size()),
        static_cast<int>(params.part_b.size()),
        params.p * params.w_p, params.q * params.w_q};
    const BlockSpectrum closed = block_spectrum_closed_form(block);

    const EigenPairs eig_a = symmetric_eig(sample.laplacian.matrix());
    const double lambda3_a = eig_a.values(2);
    const double angle = sin_theta(eig_a.vectors.col(1), closed.v2);
    const double deviation =
        spectral_norm_symmetric(sample.laplacian.matrix() - expected.matrix());
    const SpectralBounds bounds = wsbm_spectral_bounds(params, delta);

    eq10_holds[t] = lambda3_a >= bounds.lambda3_lower ? 1 : 0;
    sin_holds[t] = angle <= bounds.sintheta_upper ? 1 : 0;

    // Proof-sketch inequalities, checked per trial with roundoff slack.
    const double weyl_gap = std::abs(lambda3_a - closed.lambda3);
    const double dk_rhs =
        2.0 * std::sqrt(2.0) * deviation / (closed.lambda3 - closed.lambda2);
    slots.checks[t] = 4;
    slots.slack[t].push_back(deviation - weyl_gap);
    slots.slack[t].push_back(dk_rhs - angle);
    int bad = 0;
    if (!(weyl_gap <= deviation + 1e-9)) ++bad;
    if (!(angle <= dk_rhs + 1e-9)) ++bad;
    if (bad) {
      slots.failures[t] = bad;
      slots.notes[t] = "trial " + std::to_string(t) +
                       ": intermediate inequality violated";
    }
  });
  slots.merge_into(result);

  const double eq10_frac =
      std::accumulate(eq10_holds.begin(), eq10_holds.end(), 0.0) / trials;
  const double sin_frac =
      std::accumulate(sin_holds.begin(), sin_holds.end(), 0.0) / trials;
  result.violation_rate = std::max(1.0 - eq10_frac, 1.0 - sin_frac);
  result.passed =
      eq10_frac >= 0.9 && sin_frac >= 0.9 && result.failures == 0;
  result.notes.push_back("lambda3 lower bound held in " +
                         std::to_string(static_cast<int>(eq10_frac * trials)) +
                         "/" + std::to_string(trials) + " trials");
  result.notes.push_back("sin-theta bound held in " +
                         std::to_string(static_cast<int>(sin_frac * trials)) +
                         "/" + std::to_string(trials) + " trials");
  return result;
}

SuiteResult run_rank_one_suite(std::uint64_t seed) {
  SuiteResult result;
  result.suite = "rank-one";
  result.trials = 1;

  // Strengthening intra-group coupling shrinks the gap to the fully
  // coherent response g_hat(s0) 1 1^T.
  const std::vector<double> alphas{1.0, 2.0, 4.0, 8.0, 16.0};
  const NetworkModel probe_net = make_generator_network(
      build_block_laplacian({30, 20, alphas.front(), 0.5}),
      Rng::child_seed(seed, 1'000'000));
  const std::complex<double> s0(0.0, 1.0);
  std::vector<double> gaps;
  for (double alpha : alphas) {
    const NetworkModel net(probe_net.nodes, probe_net.coupling,
                           build_block_laplacian({30, 20, alpha, 0.5}));
    std::complex<double> ghat_inv = 0.0;
    for (const auto& g : net.nodes) ghat_inv += g.eval_reciprocal(s0);
    const int n = net.size();
    const Eigen::MatrixXcd coherent =
        (1.0 / ghat_inv) * Eigen::MatrixXcd::Ones(n, n);
    gaps.push_back(spectral_norm(evaluate_tyu(net, s0) - coherent));
  }
  std::vector<double> slack;
  for (std::size_t k = 0; k + 1 < gaps.size(); ++k) {
    ++result.checks;
    slack.push_back(gaps[k] - gaps[k + 1]);
    result.notes.push_back("rank-one gap at alpha " + std::to_string(alphas[k]) +
                           ": " + sci(gaps[k]));
    if (gaps[k + 1] > gaps[k] * (1.0 + 1e-12)) ++result.failures;
  }
  result.notes.push_back("rank-one gap at alpha " + std::to_string(alphas.back()) +
                         ": " + sci(gaps.back()));
  finalize_slack(result, std::move(slack));
  result.passed = result.failures == 0;
  return result;
}

SuiteResult run_time_coherence_suite(int pairs, std::uint64_t seed,
                                     double t_final, double dt) {
  SuiteResult result;
  result.suite = "time-coherence";
  result.trials = pairs;

  struct PairOutcome {
    double rms_sparse = 0.0;
    double rms_dense = 0.0;
    bool steady_ok = true;
    bool failed = false;
  };
  std::vector<PairOutcome> outcomes(pairs);
  parallel_for_trials(pairs, [&](int k) {
    const std::uint64_t pair_seed = Rng::child_seed(seed, k);
    const std::uint64_t edge_seed = Rng::child_seed(pair_seed, 0);
    const std::uint64_t gen_seed = Rng::child_seed(pair_seed, 1);
    PairOutcome& outcome = outcomes[k];
    for (double p : {0.6, 0.9}) {
      // Same edge seed for both densities: the denser graph contains the
      // sparser one, which removes most pairing noise from the trend.
      const WsbmParams params =
          WsbmParams::contiguous(30, 20, p, 0.1, 5.0, 0.5, edge_seed);
      const WsbmSample sample = sample_wsbm(params);
      const NetworkModel net = make_generator_network(sample.laplacian, gen_seed);
      const ReducedModel rm = reduce_network(net);
      const ResponseRecord record =
          response_report(net, rm, DisturbanceSpec{1, 1.0, 0.0}, t_final, dt);
      if (record.diverged) {
        outcome.failed = true;
        return;
      }
      // Per-group RMS errors against the group mean, summed over the two
      // groups, give the pair's comparison scalar.
      const double rms = record.rms_vs_mean[0] + record.rms_vs_mean[1];
      if (p == 0.6)
        outcome.rms_sparse = rms;
      else
        outcome.rms_dense = rms;

      std::complex<double> dc_inv = 0.0;
      for (const auto& g : net.nodes) dc_inv += g.eval_reciprocal(0.0);
      const double target = 1.0 / dc_inv.real();  // = 1 / sum(d_i + 1/r_i)
      const int last = static_cast<int>(record.times.size()) - 1;
      const double full_err =
          (record.full_outputs.col(last).array() - target).abs().maxCoeff();
      const double reduced_err =
          (record.reduced_outputs.col(last).array() - target).abs().maxCoeff();
      if (full_err > 0.005 * std::abs(target) ||
          reduced_err > 0.005 * std::abs(target))
        outcome.steady_ok = false;
    }
  });

  int wins = 0;
  bool steady_all = true;
  for (const auto& outcome : outcomes) {
    ++result.checks;
    if (outcome.failed) {
      ++result.failures;
      steady_all = false;
      continue;
    }
    if (outcome.rms_dense < outcome.rms_sparse) ++wins;
    if (!outcome.steady_ok) {
      steady_all = false;
      ++result.failures;
    }
  }
  const int needed = (pairs * 8 + 9) / 10;  // >= 8 of 10
  result.notes.push_back("denser graph won " + std::to_string(wins) + "/" +
                         std::to_string(pairs) + " pairs (need " +
                         std::to_string(needed) + ")");
  result.violation_rate =
      pairs ? 1.0 - static_cast<double>(wins) / pairs : 0.0;
  result.passed = steady_all && wins >= needed;
  if (!steady_all) result.notes.push_back("steady-state tolerance exceeded");
  return result;
}

SuiteResult run_coherence_suite(int pairs, std::uint64_t seed, double t_final,
                                double dt) {
  const SuiteResult trend = run_rank_one_suite(seed);
  SuiteResult result = run_time_coherence_suite(pairs, seed, t_final, dt);
  result.suite = "coherence";
  result.checks += trend.checks;
  result.failures += trend.failures;
  result.passed = result.passed && trend.passed;
  result.notes.insert(result.notes.begin(), trend.notes.begin(),
                      trend.notes.end());
  return result;
}

}  // namespace netred
