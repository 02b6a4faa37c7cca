#ifndef LINKMOS_PACKET_MODEL_HPP
#define LINKMOS_PACKET_MODEL_HPP

#include <span>
#include <vector>

#include "linkmos/curves.hpp"

namespace linkmos {

/// M/M/1/K buffer configuration. K counts the packet in service, so the
/// system blocks new arrivals whenever K packets are present.
struct QueueConfig {
  double lambda_pps = 0.0;  // Poisson arrival rate, packets/s
  double mu_pps = 1.0;      // exponential service rate, packets/s
  int k_max = 1;            // system capacity K >= 1
};

/// Steady-state M/M/1/K outputs.
struct QueueMetrics {
  double p0 = 0.0;            // empty-system probability
  double p_block = 0.0;       // blocking probability p_K
  double l_avg_pkts = 0.0;    // mean waiting-queue length, excluding the packet in service
  double lambda_e_pps = 0.0;  // effective arrival rate lambda * (1 - p_block)
  double mu_e_pps = 0.0;      // effective service rate (equal to mu)
  double w_avg_s = 0.0;       // mean scheduling wait l_avg / lambda_e
};

/// Protocol timing parameters. Defaults hold the bundled public values:
/// 1 ms protocol processing, 1 ms air-interface message time, 30 ms handover,
/// 5 ms network relay, plus artifact defaults for the remaining knobs.
struct TimingConfig {
  double t_protocolproc_s = 1e-3;  // higher-layer protocol processing, per endpoint
  double t_sigproc_s = 1e-3;       // PHY signal processing per transmission
  int n_uu = 1;                    // air-interface message exchanges per transmission
  double t_uu_s = 1e-3;            // per-message air-interface time
  double t_netrelay_s = 5e-3;      // core-network relay time (deterministic)
  int n_ho = 0;                    // handovers during the transfer
  double t_ho_s = 30e-3;           // per-handover penalty
  double t_netwin_s = 50e-3;       // network-side routing tolerance window
  double t_rxwin_s = 0.3;          // receiver service tolerance window
  int n_harq_max = 4;              // max transmissions per HARQ procedure, >= 1
};

/// End-to-end delay decomposition:
///   t_all = t_ulharq + t_cn + t_dlharq + 2 * t_protocolproc
/// e_n_retr and t_single_tr record the uplink HARQ expectation feeding
/// t_ulharq; the downlink counterpart is reported by its LinkResult.
struct DelayBudget {
  double e_n_retr = 1.0;     // expected transmissions, uplink
  double t_single_tr_s = 0;  // first-transmission time, uplink
  double t_ulharq_s = 0;
  double t_dlharq_s = 0;
  double t_cn_s = 0;
  double t_all_s = 0;
};

/// Five-component end-to-end loss composition plus the per-direction
/// intermediates that produce p_ul / p_dl.
struct LossBreakdown {
  double p_to1 = 0;  // uplink transmit-buffer overflow
  double p_ul = 0;   // uplink transmission loss
  double p_npl = 0;  // network-layer loss
  double p_to2 = 0;  // downlink buffer overflow
  double p_dl = 0;   // downlink transmission loss

  double p_e_ul = 0;     // residual PHY failure, uplink (all HARQ attempts fail)
  double p_e_dl = 0;     // residual PHY failure, downlink
  double p_ul_loss = 0;  // tolerance-window exceedance, uplink
  double p_dl_loss = 0;  // tolerance-window exceedance, downlink

  double p_all_exact = 0;   // full composition
  double p_all_approx = 0;  // first-order sum, clamped to [0,1]
};

/// Expectation rule for the HARQ transmission count.
enum class HarqExpectationMode {
  /// 1 + sum_{i=2..n_max} i * bler[i-1]: each term weighted by the BLER of
  /// the single preceding transmission. This is the default rule.
  per_transmission,
  /// 1 + sum_{i=2..n_max} prod_{j=1..i-1} bler[j]: the expectation of the
  /// stopping time when attempt j fails independently with probability
  /// bler[j]. This is the rule the simulation oracle reproduces.
  cumulative_product,
};

/// Steady-state M/M/1/K metrics.
///
/// p0 = (1-rho)/(1-rho^{K+1}) for rho != 1 and 1/(K+1) at rho = 1 (the rho=1
/// branch is taken for |rho-1| < 1e-9 to avoid cancellation). p_block =
/// rho^K * p0. l_avg is the mean number of packets waiting behind the one in
/// service:
///   rho/(1-rho) - rho(1+K rho^K)/(1-rho^{K+1})  (rho != 1)
///   K(K-1) / (2(K+1))                            (rho  = 1)
/// which equals sum_{n=1..K} (n-1) p_n. w_avg = l_avg / lambda_e by Little's
/// law, with w_avg = 0 when lambda_e = 0.
///
/// Throws std::invalid_argument on bad config or rho > 1 (no steady state).
QueueMetrics queue_steady_state(const QueueConfig& cfg);

/// Expected HARQ transmission count for per-transmission BLERs bler_seq
/// (bler_seq[0] is the first transmission). Requires n_max >= 1 and at least
/// n_max - 1 entries in per_transmission mode, n_max entries in
/// cumulative_product mode.
double expected_transmissions(std::span<const double> bler_seq, int n_max,
                              HarqExpectationMode mode);

/// Time of one transmission: t_ulschedule + t_sigproc + n_uu * t_uu.
/// Retransmissions are scheduled with priority, so callers pass
/// t_ulschedule = 0 for them.
double single_tx_time(double t_ulschedule_s, const TimingConfig& timing);

/// Mean HARQ procedure time: t_first + (e_n_retr - 1) * t_retx. With
/// t_first == t_retx this reduces to e_n_retr * t_single_tr.
double harq_delay(double e_n_retr, double t_first_s, double t_retx_s);

/// Core-network time: t_netrelay + n_ho * t_ho.
double cn_delay(const TimingConfig& timing);

/// Per-direction HARQ delay summary used to assemble the end-to-end budget.
struct HarqTiming {
  double e_n_retr = 1.0;
  double t_single_tr_s = 0;
  double t_harq_s = 0;
};

/// Assembles the end-to-end budget from the two directions:
/// t_all = ul.t_harq + cn_delay(timing) + dl.t_harq + 2 * t_protocolproc.
DelayBudget e2e_delay(const HarqTiming& ul, const HarqTiming& dl,
                      const TimingConfig& timing);

/// Probability that every one of the n_max transmissions fails:
/// prod_{i=1..n_max} bler_seq[i-1]. Requires n_max entries.
double residual_phy_loss(std::span<const double> bler_seq, int n_max);

/// Probability that the queue sojourn exceeds the tolerance window:
/// exp(-(mu_e - lambda_e) * window). The exponential sojourn model needs
/// mu_e > lambda_e; violating that is an error, not a clamp.
double window_loss(double mu_e_pps, double lambda_e_pps, double window_s);

/// One-direction transmission loss: p_e + (1 - p_e) * p_window.
double link_loss(double p_e, double p_window);

/// Network-layer loss indicator with deterministic core-network time:
/// 1 if t_cn > t_netwin (strictly), else 0.
double network_loss(double t_cn_s, const TimingConfig& timing);

/// Combines the five loss components. p_all_exact follows the full cascade
/// expansion (identical to 1 - prod(1 - P_i)); p_all_approx is the
/// first-order sum clamped to [0,1]. Per-direction intermediates are left
/// zero; the evaluation pipeline fills them.
LossBreakdown combine_loss(double p_to1, double p_ul, double p_npl,
                           double p_to2, double p_dl);

/// Everything the packet model derives for one link direction.
struct LinkResult {
  double sinr_db = 0;
  double bler = 0;          // first-transmission BLER at the operating point
  double goodput_bps = 0;
  QueueMetrics queue;
  std::vector<double> bler_seq;  // per-transmission BLERs, length n_harq_max
  double e_n_retr = 1.0;
  double t_single_tr_s = 0;  // first transmission, includes scheduling wait
  double t_harq_s = 0;
  double p_e = 0;            // residual PHY loss
  double p_window_loss = 0;  // tolerance-window exceedance
  double p_link = 0;         // link_loss(p_e, p_window_loss)
};

/// Runs the single-direction cascade: queue steady state, per-transmission
/// BLER sequence, HARQ expectation and delay, residual PHY loss, window
/// loss, combined link loss. rx_window_s is the service tolerance window for
/// this direction. Deterministic in its inputs; component errors propagate.
LinkResult evaluate_link(const PhyCurveSet& curves, double sinr_db,
                         const QueueConfig& queue, const TimingConfig& timing,
                         double rx_window_s, HarqExpectationMode mode);

}  // namespace linkmos

#endif  // LINKMOS_PACKET_MODEL_HPP
