#include "linkmos/packet_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace linkmos {

namespace {

void check_bler_seq(std::span<const double> bler_seq, std::size_t needed,
                    const char* who) {
  if (bler_seq.size() < needed)
    throw std::invalid_argument(std::string(who) + ": insufficient bler sequence length");
  for (double b : bler_seq)
    if (!(b >= 0.0 && b <= 1.0))
      throw std::invalid_argument(std::string(who) + ": probability out of range");
}

}  // namespace

QueueMetrics queue_steady_state(const QueueConfig& cfg) {
  if (!(cfg.lambda_pps >= 0))
    throw std::invalid_argument("queue_steady_state: lambda must be >= 0");
  if (!(cfg.mu_pps > 0))
    throw std::invalid_argument("queue_steady_state: mu must be > 0");
  if (cfg.k_max < 1)
    throw std::invalid_argument("queue_steady_state: K must be >= 1");

  const double rho = cfg.lambda_pps / cfg.mu_pps;
  const int k = cfg.k_max;
  // The rho = 1 formulas are removable-singularity limits; take them inside
  // a small window to avoid catastrophic cancellation.
  const bool at_one = std::abs(rho - 1.0) < 1e-9;
  if (rho > 1.0 && !at_one)
    throw std::invalid_argument("queue_steady_state: rho > 1, no steady state");

  QueueMetrics m;
  if (at_one) {
    m.p0 = 1.0 / (k + 1);
    m.p_block = m.p0;
    m.l_avg_pkts = static_cast<double>(k) * (k - 1) / (2.0 * (k + 1));
  } else {
    const double rho_k = std::pow(rho, k);
    const double rho_k1 = rho_k * rho;
    m.p0 = (1.0 - rho) / (1.0 - rho_k1);
    m.p_block = rho_k * m.p0;
    m.l_avg_pkts = rho / (1.0 - rho) - rho * (1.0 + k * rho_k) / (1.0 - rho_k1);
    // With no waiting room the closed form cancels to rounding noise around
    // its exact value of zero; pin it.
    m.l_avg_pkts = k == 1 ? 0.0 : std::max(0.0, m.l_avg_pkts);
  }
  m.lambda_e_pps = cfg.lambda_pps * (1.0 - m.p_block);
  m.mu_e_pps = cfg.mu_pps;
  m.w_avg_s = m.lambda_e_pps > 0 ? m.l_avg_pkts / m.lambda_e_pps : 0.0;
  return m;
}

double expected_transmissions(std::span<const double> bler_seq, int n_max,
                              HarqExpectationMode mode) {
  if (n_max < 1)
    throw std::invalid_argument("expected_transmissions: n_max must be >= 1");
  double e = 1.0;
  switch (mode) {
    case HarqExpectationMode::per_transmission:
      check_bler_seq(bler_seq, static_cast<std::size_t>(n_max - 1),
                     "expected_transmissions");
      // 1 + sum_{i=2..n_max} i * bler[i-1]  (bler of the (i-1)-th attempt)
      for (int i = 2; i <= n_max; ++i) e += i * bler_seq[i - 2];
      return e;
    case HarqExpectationMode::cumulative_product: {
      check_bler_seq(bler_seq, static_cast<std::size_t>(n_max),
                     "expected_transmissions");
      // 1 + sum_{i=2..n_max} prod_{j=1..i-1} bler[j]
      double fail_all_prior = 1.0;
      for (int i = 2; i <= n_max; ++i) {
        fail_all_prior *= bler_seq[i - 2];
        e += fail_all_prior;
      }
      return e;
    }
  }
  throw std::logic_error("expected_transmissions: unknown mode");
}

double single_tx_time(double t_ulschedule_s, const TimingConfig& timing) {
  return t_ulschedule_s + timing.t_sigproc_s + timing.n_uu * timing.t_uu_s;
}

double harq_delay(double e_n_retr, double t_first_s, double t_retx_s) {
  if (!(e_n_retr >= 1.0))
    throw std::invalid_argument("harq_delay: expected transmissions must be >= 1");
  return t_first_s + (e_n_retr - 1.0) * t_retx_s;
}

double cn_delay(const TimingConfig& timing) {
  return timing.t_netrelay_s + timing.n_ho * timing.t_ho_s;
}

DelayBudget e2e_delay(const HarqTiming& ul, const HarqTiming& dl,
                      const TimingConfig& timing) {
  if (ul.t_harq_s < 0 || dl.t_harq_s < 0)
    throw std::invalid_argument("e2e_delay: negative component delay");
  DelayBudget budget;
  budget.e_n_retr = ul.e_n_retr;
  budget.t_single_tr_s = ul.t_single_tr_s;
  budget.t_ulharq_s = ul.t_harq_s;
  budget.t_dlharq_s = dl.t_harq_s;
  budget.t_cn_s = cn_delay(timing);
  budget.t_all_s = budget.t_ulharq_s + budget.t_cn_s + budget.t_dlharq_s +
                   2.0 * timing.t_protocolproc_s;
  return budget;
}

double residual_phy_loss(std::span<const double> bler_seq, int n_max) {
  if (n_max < 1)
    throw std::invalid_argument("residual_phy_loss: n_max must be >= 1");
  check_bler_seq(bler_seq, static_cast<std::size_t>(n_max), "residual_phy_loss");
  double p = 1.0;
  for (int i = 0; i < n_max; ++i) p *= bler_seq[i];
  return p;
}

double window_loss(double mu_e_pps, double lambda_e_pps, double window_s) {
  if (!(lambda_e_pps >= 0))
    throw std::invalid_argument("window_loss: lambda_e must be >= 0");
  if (!(window_s >= 0))
    throw std::invalid_argument("window_loss: window must be >= 0");
  if (!(mu_e_pps > lambda_e_pps))
    throw std::invalid_argument(
        "window_loss: requires mu_e > lambda_e (exponential sojourn undefined)");
  return std::exp(-(mu_e_pps - lambda_e_pps) * window_s);
}

double link_loss(double p_e, double p_window) {
  if (!(p_e >= 0 && p_e <= 1) || !(p_window >= 0 && p_window <= 1))
    throw std::invalid_argument("link_loss: probability out of range");
  return p_e + (1.0 - p_e) * p_window;
}

double network_loss(double t_cn_s, const TimingConfig& timing) {
  return t_cn_s > timing.t_netwin_s ? 1.0 : 0.0;
}

LossBreakdown combine_loss(double p_to1, double p_ul, double p_npl,
                           double p_to2, double p_dl) {
  for (double p : {p_to1, p_ul, p_npl, p_to2, p_dl})
    if (!(p >= 0 && p <= 1))
      throw std::invalid_argument("combine_loss: probability out of range");

  LossBreakdown loss;
  loss.p_to1 = p_to1;
  loss.p_ul = p_ul;
  loss.p_npl = p_npl;
  loss.p_to2 = p_to2;
  loss.p_dl = p_dl;

  // Each stage applies to the traffic surviving every earlier stage.
  const double term1 = p_to1;
  const double term2 = (1.0 - term1) * p_ul;
  const double term3 = (1.0 - term1 - term2) * p_npl;
  const double term4 = (1.0 - term1 - term2 - term3) * p_to2;
  const double term5 = (1.0 - term1 - term2 - term3 - term4) * p_dl;
  loss.p_all_exact = term1 + term2 + term3 + term4 + term5;
  loss.p_all_approx = std::min(1.0, p_to1 + p_ul + p_npl + p_to2 + p_dl);
  return loss;
}

LinkResult evaluate_link(const PhyCurveSet& curves, double sinr_db,
                         const QueueConfig& queue, const TimingConfig& timing,
                         double rx_window_s, HarqExpectationMode mode) {
  LinkResult r;
  r.sinr_db = sinr_db;
  r.bler = bler_at(curves, sinr_db);
  r.goodput_bps = goodput_at(curves, sinr_db);
  r.queue = queue_steady_state(queue);

  const int n_max = timing.n_harq_max;
  if (n_max < 1)
    throw std::invalid_argument("evaluate_link: n_harq_max must be >= 1");
  r.bler_seq.reserve(static_cast<std::size_t>(n_max));
  for (int i = 1; i <= n_max; ++i)
    r.bler_seq.push_back(retx_bler(curves, sinr_db, i));

  r.e_n_retr = expected_transmissions(r.bler_seq, n_max, mode);
  r.t_single_tr_s = single_tx_time(r.queue.w_avg_s, timing);
  const double t_retx = single_tx_time(0.0, timing);
  r.t_harq_s = harq_delay(r.e_n_retr, r.t_single_tr_s, t_retx);
  r.p_e = residual_phy_loss(r.bler_seq, n_max);
  r.p_window_loss = window_loss(r.queue.mu_e_pps, r.queue.lambda_e_pps, rx_window_s);
  r.p_link = link_loss(r.p_e, r.p_window_loss);
  return r;
}

}  // namespace linkmos
