#include "linkmos/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "text_util.hpp"

namespace linkmos {

namespace {

// Interpolates table y over grid x at query s, clamping outside the grid.
double interp_clamped(const std::vector<double>& x, const std::vector<double>& y,
                      double s) {
  if (s <= x.front()) return y.front();
  if (s >= x.back()) return y.back();
  auto it = std::upper_bound(x.begin(), x.end(), s);
  std::size_t hi = static_cast<std::size_t>(it - x.begin());
  std::size_t lo = hi - 1;
  double t = (s - x[lo]) / (x[hi] - x[lo]);
  return y[lo] + t * (y[hi] - y[lo]);
}

}  // namespace

void validate_curves(const PhyCurveSet& curves) {
  const auto& s = curves.sinr_db;
  if (s.size() < 2) throw std::invalid_argument("curves: need at least 2 samples");
  if (curves.bler.size() != s.size() || curves.throughput_bps.size() != s.size())
    throw std::invalid_argument("curves: mismatched column lengths");
  for (std::size_t i = 1; i < s.size(); ++i)
    if (!(s[i] > s[i - 1]))
      throw std::invalid_argument("curves: grid not ascending");
  for (double b : curves.bler)
    if (!(b >= 0.0 && b <= 1.0))
      throw std::invalid_argument("curves: probability out of range");
  for (double t : curves.throughput_bps)
    if (!(t >= 0.0))
      throw std::invalid_argument("curves: negative throughput");
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (curves.bler[i] > curves.bler[i - 1])
      throw std::invalid_argument("curves: bler not non-increasing in sinr");
    if (curves.throughput_bps[i] < curves.throughput_bps[i - 1])
      throw std::invalid_argument("curves: throughput not non-decreasing in sinr");
  }
  if (!(curves.overhead > 0.0 && curves.overhead <= 1.0))
    throw std::invalid_argument("curves: overhead must be in (0,1]");
  if (!(curves.combining.gain_db_per_retx >= 0.0))
    throw std::invalid_argument("curves: gain_db_per_retx must be >= 0");
}

PhyCurveSet load_curves(std::string_view csv, std::string label,
                        double overhead, HarqCombining combining) {
  auto lines = detail::split_lines(csv);
  if (lines.empty()) throw std::invalid_argument("curves: empty input");
  if (detail::trim(lines.front()) != "sinr_db,bler,throughput_bps")
    throw std::invalid_argument(
        "curves: expected header 'sinr_db,bler,throughput_bps'");

  PhyCurveSet curves;
  curves.label = std::move(label);
  curves.overhead = overhead;
  curves.combining = combining;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 3)
      throw std::invalid_argument("curves: expected 3 columns per row");
    curves.sinr_db.push_back(detail::parse_double(fields[0], "curves sinr_db"));
    curves.bler.push_back(detail::parse_double(fields[1], "curves bler"));
    curves.throughput_bps.push_back(
        detail::parse_double(fields[2], "curves throughput_bps"));
  }
  validate_curves(curves);
  return curves;
}

std::string emit_curves_csv(const PhyCurveSet& curves) {
  std::string out = "sinr_db,bler,throughput_bps\n";
  for (std::size_t i = 0; i < curves.sinr_db.size(); ++i) {
    out += detail::format_g17(curves.sinr_db[i]);
    out += ',';
    out += detail::format_g17(curves.bler[i]);
    out += ',';
    out += detail::format_g17(curves.throughput_bps[i]);
    out += '\n';
  }
  return out;
}

PhyCurveSet synth_curve(double mid_sinr_db, double slope_per_db,
                        double peak_throughput_bps, std::string label,
                        double overhead, HarqCombining combining) {
  if (!(slope_per_db > 0.0))
    throw std::invalid_argument("synth_curve: slope must be > 0");
  if (!(peak_throughput_bps > 0.0))
    throw std::invalid_argument("synth_curve: peak throughput must be > 0");

  PhyCurveSet curves;
  curves.label = std::move(label);
  curves.overhead = overhead;
  curves.combining = combining;
  // mid +/- 15 dB at 0.5 dB steps.
  for (int i = 0; i <= 60; ++i) {
    double s = mid_sinr_db + 0.5 * (i - 30);
    double b = 1.0 / (1.0 + std::exp(slope_per_db * (s - mid_sinr_db)));
    curves.sinr_db.push_back(s);
    curves.bler.push_back(b);
    curves.throughput_bps.push_back(peak_throughput_bps * (1.0 - b));
  }
  validate_curves(curves);
  return curves;
}

double bler_at(const PhyCurveSet& curves, double sinr_db) {
  return interp_clamped(curves.sinr_db, curves.bler, sinr_db);
}

double goodput_at(const PhyCurveSet& curves, double sinr_db) {
  return interp_clamped(curves.sinr_db, curves.throughput_bps, sinr_db) *
         curves.overhead;
}

double retx_bler(const PhyCurveSet& curves, double sinr_db, int i) {
  if (i < 1) throw std::invalid_argument("retx_bler: transmission index must be >= 1");
  switch (curves.combining.mode) {
    case CombiningMode::geometric:
      return std::pow(bler_at(curves, sinr_db), static_cast<double>(i));
    case CombiningMode::gain_db:
      return bler_at(curves, sinr_db + (i - 1) * curves.combining.gain_db_per_retx);
  }
  throw std::logic_error("retx_bler: unknown combining mode");
}

}  // namespace linkmos
