#include "linkmos/oracle_sim.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace linkmos {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBatches = 100;

// Uniform in [0,1) from the top 53 bits; identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF exponential draw; avoids std::exponential_distribution, whose
// output is implementation-defined.
double exp_draw(std::mt19937_64& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

// Batch-means standard error of the overall mean, given per-batch means.
double batch_se(const std::vector<double>& batch_means) {
  const std::size_t b = batch_means.size();
  if (b < 2) return 0.0;
  double mean = 0;
  for (double x : batch_means) mean += x;
  mean /= static_cast<double>(b);
  double ss = 0;
  for (double x : batch_means) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(b) * (b - 1)));
}

struct Pending {
  double t_arr = 0;
  int batch = -1;  // -1 while warming up
};

}  // namespace

SimReport simulate_mm1k(const QueueConfig& queue, double rx_window_s,
                        const SimConfig& sim) {
  if (!(queue.lambda_pps >= 0))
    throw std::invalid_argument("simulate_mm1k: lambda must be >= 0");
  if (!(queue.mu_pps > 0))
    throw std::invalid_argument("simulate_mm1k: mu must be > 0");
  if (queue.k_max < 1)
    throw std::invalid_argument("simulate_mm1k: K must be >= 1");
  if (queue.lambda_pps / queue.mu_pps > 1.0 + 1e-9)
    throw std::invalid_argument("simulate_mm1k: rho > 1, no steady state");
  if (sim.n_arrivals < 1)
    throw std::invalid_argument("simulate_mm1k: need at least one arrival");
  if (!(sim.warmup_fraction >= 0.0 && sim.warmup_fraction < 1.0))
    throw std::invalid_argument("simulate_mm1k: warmup fraction must be in [0,1)");
  if (!(rx_window_s >= 0))
    throw std::invalid_argument("simulate_mm1k: rx window must be >= 0");

  SimReport report;
  if (queue.lambda_pps == 0) return report;

  const std::uint64_t n = sim.n_arrivals;
  const auto warmup = static_cast<std::uint64_t>(sim.warmup_fraction * static_cast<double>(n));
  const std::uint64_t n_counted = n - warmup;
  const int b_eff = static_cast<int>(std::min<std::uint64_t>(kBatches, n_counted));

  std::vector<double> blocked_b(b_eff, 0), arrivals_b(b_eff, 0);
  std::vector<double> wait_sum_b(b_eff, 0), wait_cnt_b(b_eff, 0);
  std::vector<double> exceed_b(b_eff, 0), sojourn_cnt_b(b_eff, 0);
  std::vector<double> integral_b(b_eff, 0), duration_b(b_eff, 0);

  std::mt19937_64 rng(sim.seed);

  double t_now = 0;
  double t_next_arrival = exp_draw(rng, queue.lambda_pps);
  double t_depart = kInf;
  std::deque<Pending> waiting;
  bool busy = false;
  Pending in_service;

  std::uint64_t arrival_index = 0;
  bool integrating = false;
  int cur_batch = 0;

  while (true) {
    const double t_next = std::min(t_next_arrival, t_depart);
    if (t_next == kInf) break;
    if (integrating) {
      const double dt = t_next - t_now;
      integral_b[cur_batch] += dt * static_cast<double>(waiting.size());
      duration_b[cur_batch] += dt;
    }
    t_now = t_next;

    if (t_depart <= t_next_arrival) {
      // Departure: record the sojourn, pull the next waiter into service.
      if (in_service.batch >= 0) {
        sojourn_cnt_b[in_service.batch] += 1;
        if (t_now - in_service.t_arr > rx_window_s) exceed_b[in_service.batch] += 1;
      }
      if (!waiting.empty()) {
        in_service = waiting.front();
        waiting.pop_front();
        if (in_service.batch >= 0) {
          wait_sum_b[in_service.batch] += t_now - in_service.t_arr;
          wait_cnt_b[in_service.batch] += 1;
        }
        t_depart = t_now + exp_draw(rng, queue.mu_pps);
      } else {
        busy = false;
        t_depart = kInf;
      }
      continue;
    }

    // Arrival.
    const bool counted = arrival_index >= warmup;
    if (counted && !integrating) integrating = true;  // warmup ends here
    int batch = -1;
    if (counted) {
      batch = static_cast<int>((arrival_index - warmup) * static_cast<std::uint64_t>(b_eff) /
                               n_counted);
      cur_batch = batch;
      arrivals_b[batch] += 1;
    }
    const auto occupancy =
        static_cast<std::uint64_t>(waiting.size()) + (busy ? 1 : 0);
    if (occupancy >= static_cast<std::uint64_t>(queue.k_max)) {
      if (counted) blocked_b[batch] += 1;
    } else if (!busy) {
      busy = true;
      in_service = {t_now, batch};
      if (batch >= 0) wait_cnt_b[batch] += 1;  // zero wait
      t_depart = t_now + exp_draw(rng, queue.mu_pps);
    } else {
      waiting.push_back({t_now, batch});
    }

    ++arrival_index;
    if (arrival_index == n) {
      t_next_arrival = kInf;
      integrating = false;  // the stationary window ends at the last arrival
    } else {
      t_next_arrival = t_now + exp_draw(rng, queue.lambda_pps);
    }
  }

  // Global estimates from the full sums; batch means only for the errors.
  double blocked = 0, arrivals = 0, wait_sum = 0, wait_cnt = 0;
  double exceed = 0, sojourns = 0, integral = 0, duration = 0;
  std::vector<double> pb_b, w_b, wl_b, l_b;
  for (int b = 0; b < b_eff; ++b) {
    blocked += blocked_b[b];
    arrivals += arrivals_b[b];
    wait_sum += wait_sum_b[b];
    wait_cnt += wait_cnt_b[b];
    exceed += exceed_b[b];
    sojourns += sojourn_cnt_b[b];
    integral += integral_b[b];
    duration += duration_b[b];
    if (arrivals_b[b] > 0) pb_b.push_back(blocked_b[b] / arrivals_b[b]);
    if (wait_cnt_b[b] > 0) w_b.push_back(wait_sum_b[b] / wait_cnt_b[b]);
    if (sojourn_cnt_b[b] > 0) wl_b.push_back(exceed_b[b] / sojourn_cnt_b[b]);
    if (duration_b[b] > 0) l_b.push_back(integral_b[b] / duration_b[b]);
  }
  report.p_block = arrivals > 0 ? blocked / arrivals : 0;
  report.p_block_se = batch_se(pb_b);
  report.w_avg_s = wait_cnt > 0 ? wait_sum / wait_cnt : 0;
  report.w_avg_se = batch_se(w_b);
  report.window_loss = sojourns > 0 ? exceed / sojourns : 0;
  report.window_loss_se = batch_se(wl_b);
  report.l_avg_pkts = duration > 0 ? integral / duration : 0;
  report.l_avg_se = batch_se(l_b);
  return report;
}

SimReport simulate_harq(std::span<const double> bler_seq, int n_max,
                        std::uint64_t trials, std::uint64_t seed) {
  if (n_max < 1)
    throw std::invalid_argument("simulate_harq: n_max must be >= 1");
  if (trials < 1)
    throw std::invalid_argument("simulate_harq: need at least one trial");
  if (bler_seq.size() < static_cast<std::size_t>(n_max))
    throw std::invalid_argument("simulate_harq: insufficient bler sequence length");
  for (double b : bler_seq)
    if (!(b >= 0.0 && b <= 1.0))
      throw std::invalid_argument("simulate_harq: probability out of range");

  std::mt19937_64 rng(seed);
  double sum_n = 0, sum_n2 = 0, failures = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    int count = n_max;
    bool delivered = false;
    for (int i = 0; i < n_max; ++i) {
      if (uniform01(rng) >= bler_seq[i]) {  // transmission i+1 succeeds
        count = i + 1;
        delivered = true;
        break;
      }
    }
    if (!delivered) failures += 1;
    sum_n += count;
    sum_n2 += static_cast<double>(count) * count;
  }

  SimReport report;
  const auto nt = static_cast<double>(trials);
  report.e_n_retr = sum_n / nt;
  if (trials > 1) {
    const double var = (sum_n2 - nt * report.e_n_retr * report.e_n_retr) / (nt - 1);
    report.e_n_retr_se = std::sqrt(std::max(0.0, var) / nt);
  }
  report.residual_loss = failures / nt;
  report.residual_loss_se =
      std::sqrt(report.residual_loss * (1.0 - report.residual_loss) / nt);
  return report;
}

}  // namespace linkmos
