#ifndef LINKMOS_CURVES_HPP
#define LINKMOS_CURVES_HPP

#include <string>
#include <string_view>
#include <vector>

namespace linkmos {

/// How the per-transmission block error rate evolves across HARQ attempts.
enum class CombiningMode {
  /// BLER of attempt i is bler^i (independent failures with full combining credit).
  geometric,
  /// Attempt i is evaluated at sinr + (i-1) * gain_db_per_retx.
  gain_db,
};

struct HarqCombining {
  CombiningMode mode = CombiningMode::geometric;
  double gain_db_per_retx = 0.0;  // >= 0, used only in gain_db mode
};

/// Sampled link-abstraction curves for one PHY algorithm configuration:
/// BLER and throughput as functions of SINR, plus the protocol overhead
/// factor that turns throughput into goodput.
///
/// Invariants (enforced by the factory functions below):
///   - sinr_db strictly ascending, at least 2 samples, columns equal length
///   - bler in [0,1] and non-increasing in SINR
///   - throughput_bps >= 0 and non-decreasing in SINR
///   - overhead in (0,1]
///
/// Instances are immutable after construction; all queries are pure.
struct PhyCurveSet {
  std::string label;
  std::vector<double> sinr_db;
  std::vector<double> bler;
  std::vector<double> throughput_bps;
  double overhead = 0.95;
  HarqCombining combining;
};

/// Validates every PhyCurveSet invariant; throws std::invalid_argument with a
/// descriptive message on the first violation.
void validate_curves(const PhyCurveSet& curves);

/// Parses the curve CSV format (header "sinr_db,bler,throughput_bps", one
/// sample per line) and returns a validated curve set. Overhead, combining,
/// and label are not part of the file format and are supplied by the caller.
PhyCurveSet load_curves(std::string_view csv, std::string label = "",
                        double overhead = 0.95, HarqCombining combining = {});

/// Serializes the sampled grid back to the curve CSV format. Values are
/// written with enough digits that load_curves(emit_curves_csv(c)) reproduces
/// the grid bit-exactly.
std::string emit_curves_csv(const PhyCurveSet& curves);

/// Builds a synthetic curve set with logistic BLER
///     bler(s) = 1 / (1 + exp(slope * (s - mid_sinr_db)))
/// and throughput(s) = peak_throughput_bps * (1 - bler(s)), sampled over
/// mid_sinr_db +/- 15 dB at 0.5 dB steps.
PhyCurveSet synth_curve(double mid_sinr_db, double slope_per_db,
                        double peak_throughput_bps, std::string label = "",
                        double overhead = 0.95, HarqCombining combining = {});

/// Linear interpolation of the BLER table, clamped to the endpoint values
/// outside the sampled grid.
double bler_at(const PhyCurveSet& curves, double sinr_db);

/// Interpolated throughput times the overhead factor.
double goodput_at(const PhyCurveSet& curves, double sinr_db);

/// BLER of the i-th HARQ transmission (i >= 1) under the set's combining
/// model. i = 1 is the initial transmission and equals bler_at() in both
/// modes.
double retx_bler(const PhyCurveSet& curves, double sinr_db, int i);

}  // namespace linkmos

#endif  // LINKMOS_CURVES_HPP
