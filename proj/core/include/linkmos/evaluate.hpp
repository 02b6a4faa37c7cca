#ifndef LINKMOS_EVALUATE_HPP
#define LINKMOS_EVALUATE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linkmos/oracle_sim.hpp"
#include "linkmos/scenario.hpp"

namespace linkmos {

/// Full cascade output with every intermediate layer inspectable.
struct EvaluationReport {
  LinkResult ul;
  LinkResult dl;
  DelayBudget delay;
  LossBreakdown loss;
  ServiceQualityIndicators indicators;
  MosScore mos;
};

/// Error from the evaluation cascade; the message names the layer that
/// produced it.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs the five-layer cascade at time t (which selects the SINR operating
/// point from each direction's provider). Deterministic in the scenario.
EvaluationReport evaluate(const Scenario& scenario, double t_s = 0.0);

/// Variant with both directions pinned to an explicit SINR, used by sweeps.
EvaluationReport evaluate_at_sinr(const Scenario& scenario, double sinr_db);

/// Deterministic JSON rendering of a report (same input, same bytes).
std::string report_to_json(const EvaluationReport& report);

/// One sweep output row.
struct SweepRow {
  double sinr_db = 0;
  double bler = 0;
  double goodput_bps = 0;
  double p_all_exact = 0;
  double p_all_approx = 0;
  double t_all_s = 0;
  double mos = 0;
};

/// Evaluates the scenario over the SINR grid min, min+step, ... (last point
/// <= max; floor((max-min)/step)+1 rows). PHY columns report the uplink
/// direction. Throws on an invalid range or any per-point evaluation error.
std::vector<SweepRow> sweep(const Scenario& scenario, double sinr_min_db,
                            double sinr_max_db, double step_db);

/// CSV with header sinr_db,bler,goodput_bps,p_all_exact,p_all_approx,
/// t_all_s,mos. Numeric fields round-trip at full double precision.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> sweep_from_csv(std::string_view csv);

/// Analytic-vs-simulated comparison for one quantity. A quantity passes when
/// it falls within 3 standard errors of the analytic value; expected_divergence
/// marks the per-transmission expectation rule, whose disagreement with the
/// stopping-time oracle is flagged but not a failure.
struct ValidationLine {
  std::string quantity;
  double analytic = 0;
  double simulated = 0;
  double std_error = 0;
  double z = 0;  // |analytic - simulated| / std_error (0 SE reported as 0 when equal)
  bool pass = true;
  bool expected_divergence = false;
};

struct ValidationReport {
  SimReport queue_sim;
  SimReport harq_sim;
  std::vector<ValidationLine> lines;
  bool pass = true;  // every gated line within 3 SE
};

/// Runs the M/M/1/K and HARQ oracles against the closed forms. Gated
/// quantities: p_block, l_avg, w_avg, the cumulative-product HARQ
/// expectation, and the residual loss. The per-transmission expectation and
/// the window-loss approximation are reported for comparison only (the
/// former is flagged when it diverges from the oracle by more than 3 SE).
ValidationReport validate(const QueueConfig& queue, const TimingConfig& timing,
                          std::span<const double> bler_seq, int n_max,
                          const SimConfig& sim);

/// Human-readable table, one line per quantity plus a verdict line.
std::string validation_to_text(const ValidationReport& report);

}  // namespace linkmos

#endif  // LINKMOS_EVALUATE_HPP
