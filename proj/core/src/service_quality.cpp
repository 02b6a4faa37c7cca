#include "linkmos/service_quality.hpp"

#include <cmath>
#include <stdexcept>

namespace linkmos {

std::string to_string(ServiceKind kind) {
  switch (kind) {
    case ServiceKind::video_call: return "video_call";
    case ServiceKind::buffered_video: return "buffered_video";
    case ServiceKind::voice_call: return "voice_call";
    case ServiceKind::mobile_game: return "mobile_game";
  }
  throw std::logic_error("unknown service kind");
}

ServiceKind service_kind_from_string(const std::string& name) {
  if (name == "video_call") return ServiceKind::video_call;
  if (name == "buffered_video") return ServiceKind::buffered_video;
  if (name == "voice_call") return ServiceKind::voice_call;
  if (name == "mobile_game") return ServiceKind::mobile_game;
  throw std::invalid_argument("unknown service kind '" + name + "'");
}

bool is_video_kind(ServiceKind kind) {
  return kind == ServiceKind::video_call || kind == ServiceKind::buffered_video;
}

int packets_per_frame(const ServiceProfile& profile) {
  if (!is_video_kind(profile.kind))
    throw std::invalid_argument("packets_per_frame: video kinds only");
  if (!(profile.framerate_fps > 0))
    throw std::invalid_argument("packets_per_frame: framerate must be > 0");
  if (!(profile.packet_len_bits > 0))
    throw std::invalid_argument("packets_per_frame: packet length must be > 0");
  if (profile.bitrate_bps <= 0) return 0;
  return static_cast<int>(std::ceil(
      profile.bitrate_bps / (profile.framerate_fps * profile.packet_len_bits)));
}

double frame_error_prob(double p_all, int n_f) {
  if (!(p_all >= 0 && p_all <= 1))
    throw std::invalid_argument("frame_error_prob: probability out of range");
  if (n_f < 0)
    throw std::invalid_argument("frame_error_prob: packet count must be >= 0");
  return 1.0 - std::pow(1.0 - p_all, static_cast<double>(n_f));
}

SegmentStall segment_stall(std::span<const double> frame_probs,
                           std::span<const double> frame_durations_s) {
  if (frame_probs.size() != frame_durations_s.size())
    throw std::invalid_argument("segment_stall: length mismatch");
  SegmentStall stall;
  for (std::size_t i = 0; i < frame_probs.size(); ++i) {
    double p = frame_probs[i];
    if (!(p >= 0 && p <= 1))
      throw std::invalid_argument("segment_stall: probability out of range");
    stall.duration_s += p * frame_durations_s[i];
    stall.events += p;
  }
  return stall;
}

std::vector<double> effective_frame_durations(const ServiceProfile& profile) {
  if (!profile.frame_durations_s.empty()) return profile.frame_durations_s;
  if (!(profile.framerate_fps > 0))
    throw std::invalid_argument("frame durations: framerate must be > 0");
  // One-second segment of uniform frames.
  auto n = static_cast<std::size_t>(std::lround(profile.framerate_fps));
  if (n == 0) n = 1;
  return std::vector<double>(n, 1.0 / profile.framerate_fps);
}

ServiceQualityIndicators indicators(const ServiceProfile& profile,
                                    const LossBreakdown& loss,
                                    const DelayBudget& delay) {
  ServiceQualityIndicators ind;
  ind.loss = loss.p_all_exact;
  ind.delay_s = delay.t_all_s;
  ind.bitrate_bps = profile.bitrate_bps;
  ind.framerate_fps = profile.framerate_fps;
  ind.definition_h = profile.definition_h;
  ind.definition_v = profile.definition_v;
  ind.initial_buffering_s = profile.initial_buffering_s;

  if (is_video_kind(profile.kind)) {
    const int n_f = packets_per_frame(profile);
    const double p_frame = frame_error_prob(ind.loss, n_f);
    const auto durations = effective_frame_durations(profile);
    const std::vector<double> probs(durations.size(), p_frame);
    const SegmentStall stall = segment_stall(probs, durations);
    ind.stall_duration_s = stall.duration_s;
    ind.stall_events = stall.events;
    for (double d : durations) ind.segment_duration_s += d;
  }
  return ind;
}

}  // namespace linkmos
