#ifndef LINKMOS_ENVIRONMENT_HPP
#define LINKMOS_ENVIRONMENT_HPP

#include <string_view>
#include <vector>

namespace linkmos {

/// Supplies the SINR operating point, either as a constant or as a sampled
/// time trace with step-hold semantics.
struct SinrProvider {
  enum class Kind { constant, trace };

  Kind kind = Kind::constant;
  double constant_db = 0.0;
  // (time_s, sinr_db) pairs, time strictly ascending; non-empty for traces.
  std::vector<std::pair<double, double>> trace;

  static SinrProvider constant(double sinr_db);
  static SinrProvider from_trace(std::vector<std::pair<double, double>> samples);
};

/// Parses the trace CSV format: header "time_s,sinr_db", ascending time.
SinrProvider load_sinr_trace(std::string_view csv);

/// SINR at time t. Trace providers return the last sample with time <= t
/// (piecewise-constant, right-continuous), or the first sample when t
/// precedes the trace.
double sinr_at(const SinrProvider& provider, double t_s);

/// Converts link goodput to a packet service rate: goodput / packet_len.
double service_rate(double goodput_bps, double packet_len_bits);

}  // namespace linkmos

#endif  // LINKMOS_ENVIRONMENT_HPP
