#include "linkmos/environment.hpp"

#include <algorithm>
#include <stdexcept>

#include "text_util.hpp"

namespace linkmos {

SinrProvider SinrProvider::constant(double sinr_db) {
  SinrProvider p;
  p.kind = Kind::constant;
  p.constant_db = sinr_db;
  return p;
}

SinrProvider SinrProvider::from_trace(std::vector<std::pair<double, double>> samples) {
  if (samples.empty())
    throw std::invalid_argument("sinr trace: empty");
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("sinr trace: time not ascending");
  SinrProvider p;
  p.kind = Kind::trace;
  p.trace = std::move(samples);
  return p;
}

SinrProvider load_sinr_trace(std::string_view csv) {
  auto lines = detail::split_lines(csv);
  if (lines.empty()) throw std::invalid_argument("sinr trace: empty input");
  if (detail::trim(lines.front()) != "time_s,sinr_db")
    throw std::invalid_argument("sinr trace: expected header 'time_s,sinr_db'");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto fields = detail::split_fields(lines[i]);
    if (fields.size() != 2)
      throw std::invalid_argument("sinr trace: expected 2 columns per row");
    samples.emplace_back(detail::parse_double(fields[0], "trace time_s"),
                         detail::parse_double(fields[1], "trace sinr_db"));
  }
  return SinrProvider::from_trace(std::move(samples));
}

double sinr_at(const SinrProvider& provider, double t_s) {
  if (provider.kind == SinrProvider::Kind::constant) return provider.constant_db;
  const auto& tr = provider.trace;
  // Last sample with time <= t; step-hold, right-continuous.
  auto it = std::upper_bound(tr.begin(), tr.end(), t_s,
                             [](double t, const auto& s) { return t < s.first; });
  if (it == tr.begin()) return tr.front().second;
  return (it - 1)->second;
}

double service_rate(double goodput_bps, double packet_len_bits) {
  if (!(packet_len_bits > 0))
    throw std::invalid_argument("service_rate: packet length must be > 0");
  if (!(goodput_bps >= 0))
    throw std::invalid_argument("service_rate: goodput must be >= 0");
  return goodput_bps / packet_len_bits;
}

}  // namespace linkmos
