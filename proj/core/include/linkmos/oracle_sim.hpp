#ifndef LINKMOS_ORACLE_SIM_HPP
#define LINKMOS_ORACLE_SIM_HPP

#include <cstdint>
#include <span>

#include "linkmos/packet_model.hpp"

namespace linkmos {

/// Discrete-event simulation settings. Runs are fully deterministic given
/// the seed: randomness comes from std::mt19937_64 and exponential variates
/// are drawn by inverse CDF (-log1p(-u) / rate with u uniform in [0,1)), so
/// reports replay identically on any platform.
struct SimConfig {
  std::uint64_t seed = 1;
  std::uint64_t n_arrivals = 1'000'000;
  double warmup_fraction = 0.1;  // leading fraction of arrivals discarded
};

/// Empirical estimates with standard errors. Queue statistics use
/// batch-means standard errors (100 batches over the measurement window) to
/// absorb sample autocorrelation; HARQ trials are independent, so their
/// standard errors are the plain sample ones.
struct SimReport {
  // M/M/1/K quantities (simulate_mm1k).
  double p_block = 0, p_block_se = 0;
  double l_avg_pkts = 0, l_avg_se = 0;
  double w_avg_s = 0, w_avg_se = 0;
  double window_loss = 0, window_loss_se = 0;  // sojourn > rx_window fraction

  // HARQ quantities (simulate_harq).
  double e_n_retr = 0, e_n_retr_se = 0;
  double residual_loss = 0, residual_loss_se = 0;
};

/// Event-driven M/M/1/K simulation: exponential interarrivals at rate
/// lambda, exponential service at rate mu, arrivals to a system holding K
/// packets are dropped. Measures the blocked fraction, the time-average
/// waiting-queue length (excluding the packet in service), the mean wait of
/// accepted packets, and the fraction of accepted packets whose sojourn
/// exceeds rx_window. The queue-length integral runs from the end of warmup
/// to the final arrival; accepted packets then drain so every wait and
/// sojourn is observed. Throws on rho > 1.
SimReport simulate_mm1k(const QueueConfig& queue, double rx_window_s,
                        const SimConfig& sim);

/// Monte Carlo HARQ: per trial, transmission i succeeds with probability
/// 1 - bler_seq[i-1], stopping at the first success or after n_max attempts.
/// Reports the mean transmission count and the fraction of trials where all
/// attempts failed. Deterministic given the seed.
SimReport simulate_harq(std::span<const double> bler_seq, int n_max,
                        std::uint64_t trials, std::uint64_t seed);

}  // namespace linkmos

#endif  // LINKMOS_ORACLE_SIM_HPP
