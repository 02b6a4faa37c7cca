#ifndef LINKMOS_SERVICE_QUALITY_HPP
#define LINKMOS_SERVICE_QUALITY_HPP

#include <string>
#include <vector>

#include "linkmos/packet_model.hpp"

namespace linkmos {

enum class ServiceKind { video_call, buffered_video, voice_call, mobile_game };

std::string to_string(ServiceKind kind);
ServiceKind service_kind_from_string(const std::string& name);

/// Per-service parameters: packet/queue/HARQ settings plus the media
/// parameters the video path consumes. The bundled presets carry the
/// standard values per service kind.
struct ServiceProfile {
  ServiceKind kind = ServiceKind::voice_call;
  double packet_len_bits = 984;  // L_k
  double rx_window_s = 0.15;     // receiver tolerance window
  int queue_k = 10;              // buffer capacity K
  int n_harq_max = 8;

  // Media parameters (video kinds).
  double bitrate_bps = 0;
  double framerate_fps = 0;
  int definition_h = 0;  // horizontal pixels
  int definition_v = 0;  // vertical pixels
  // Frame durations of one segment; empty means uniform 1/framerate over a
  // one-second segment.
  std::vector<double> frame_durations_s;
  double initial_buffering_s = 0;
};

bool is_video_kind(ServiceKind kind);

/// Indicators handed to the experience-quality models.
struct ServiceQualityIndicators {
  double loss = 0;     // end-to-end packet loss probability
  double delay_s = 0;  // end-to-end delay
  double stall_duration_s = 0;   // T_k, per segment
  double stall_events = 0;       // N_k, expected errored frames per segment
  double segment_duration_s = 0;  // sum of the segment's frame durations
  double initial_buffering_s = 0;
  double bitrate_bps = 0;
  double framerate_fps = 0;
  int definition_h = 0;
  int definition_v = 0;
};

/// Packets per video frame: ceil(bitrate / (framerate * packet_len)).
/// Zero when bitrate is zero. Video kinds only.
int packets_per_frame(const ServiceProfile& profile);

/// Probability that a frame of n_f packets is errored: 1 - (1 - p_all)^n_f.
double frame_error_prob(double p_all, int n_f);

/// Per-segment stall statistics: T_k = sum_i P_i * FrameDur_i and
/// N_k = sum_i P_i (expected number of errored frames).
struct SegmentStall {
  double duration_s = 0;
  double events = 0;
};
SegmentStall segment_stall(std::span<const double> frame_probs,
                           std::span<const double> frame_durations_s);

/// Effective frame durations for the profile: the explicit list when given,
/// otherwise round(framerate) frames of 1/framerate each.
std::vector<double> effective_frame_durations(const ServiceProfile& profile);

/// Maps end-to-end loss/delay to per-service indicators. Voice and game are
/// pass-through; video kinds additionally fill the stall statistics from the
/// frame-level model above.
ServiceQualityIndicators indicators(const ServiceProfile& profile,
                                    const LossBreakdown& loss,
                                    const DelayBudget& delay);

}  // namespace linkmos

#endif  // LINKMOS_SERVICE_QUALITY_HPP
