#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "netred/dynamics.hpp"
#include "netred/graph.hpp"

namespace netred {

/// Outcome of one property suite. Inequality suites must have zero
/// failures; probabilistic suites compare the empirical violation rate
/// against their delta. Slack is rhs - lhs over all evaluated checks.
struct SuiteResult {
  std::string suite;
  int trials = 0;
  int checks = 0;
  int failures = 0;
  double violation_rate = 0.0;
  double slack_min = 0.0;
  double slack_median = 0.0;
  double slack_max = 0.0;
  bool passed = false;
  std::vector<std::string> notes;
};

/// 12 imaginary-axis points, log-spaced over [0.01, 100] rad/s.
std::vector<std::complex<double>> default_s0_grid();

/// Runs body(0..count-1) across worker threads (capped by NETRED_THREADS),
/// deterministic because every trial derives its own child seed.
void parallel_for_trials(int count, const std::function<void(int)>& body);

/// Closed-form two-block spectrum vs a numeric eigensolver over random
/// (n_a, n_b, alpha, beta) with alpha >= beta and 2 <= n <= 60.
/// Fails when eigenvalues differ by more than 1e-9 or the Fiedler
/// sin-angle exceeds 1e-8.
SuiteResult run_spectrum_suite(int trials, std::uint64_t seed);

/// Two-node exactness: random two-block networks with heterogeneous
/// generator dynamics; at 20 random points per network the lifted reduced
/// response must match the rank-two approximant to 1e-8 relative.
SuiteResult run_thm2_suite(int trials, std::uint64_t seed);

/// Rank-two error bound: random networks (alternating two-block and WSBM
/// coupling graphs) checked on the s0 grid; at every applicable point
/// lhs <= rhs + 1e-9.
SuiteResult run_thm1_suite(int trials, std::uint64_t seed,
                           std::vector<std::complex<double>> s0_grid = {});

/// Perfect clustering at the reference WSBM parameters
/// (30, 20, p=0.6, q=0.1, w_p=5, w_q=0.5): mismatch must be 0 every trial.
SuiteResult run_clustering_suite(int trials, std::uint64_t seed);

/// Laplacian concentration at n = 200 (rescaled weights): the fraction of
/// trials with ||L_A - L_EA|| above 8 sqrt(Delta log(4n/delta)) must stay
/// below delta.
SuiteResult run_prop1_suite(int trials, std::uint64_t seed, double delta);

/// Spectral guarantees on the same trials as the concentration suite:
/// the lambda3 lower bound and the sin-theta upper bound must hold in at
/// least 90% of trials, and the per-trial Weyl / Davis-Kahan inequalities
/// in every trial.
SuiteResult run_thm4_suite(int trials, std::uint64_t seed, double delta);

/// Rank-one limit trend: for a two-block graph with beta = 0.5 and alpha
/// in {1,2,4,8,16}, ||T_yu(1j) - g_hat(1j) 11^T|| is non-increasing in
/// alpha.
SuiteResult run_rank_one_suite(std::uint64_t seed);

/// Time-domain coherence over paired seeds: the reduced-vs-group-mean RMS
/// error (summed over the two groups) at p = 0.9 beats p = 0.6 in at least
/// 8 of 10 pairs, and full and reduced step responses settle to the
/// predicted common value within 0.5% by t_final.
SuiteResult run_time_coherence_suite(int pairs, std::uint64_t seed,
                                     double t_final = 30.0, double dt = 0.005);

/// Both coherence trends combined (the CLI's "coherence" suite).
SuiteResult run_coherence_suite(int pairs, std::uint64_t seed,
                                double t_final = 30.0, double dt = 0.005);

/// Reference experiment parameters (two groups of 30 and 20 nodes).
WsbmParams reference_wsbm(std::uint64_t seed);

/// n = 200 concentration-suite parameters, weights already rescaled so
/// max W_ij = 1.
WsbmParams concentration_wsbm(std::uint64_t seed);

/// Generator network on the given graph: per-node second-order dynamics
/// from the reference uniform ranges, integrator coupling f = 1/s.
NetworkModel make_generator_network(Laplacian laplacian, std::uint64_t seed);

}  // namespace netred
