#include "linkmos/qoe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linkmos {

namespace {

double clamp_mos(double v) { return std::clamp(v, 1.0, 5.0); }

// Standard rating-to-MOS cubic, clamped to the scale bounds.
double rating_to_mos(double r) {
  if (r <= 0) return 1.0;
  if (r >= 100) return 4.5;
  return clamp_mos(1.0 + 0.035 * r + 7e-6 * r * (r - 60.0) * (100.0 - r));
}

}  // namespace

MosScore mos_voice(double loss, double delay_s, const VoiceQoeParams& params) {
  if (!(loss >= 0 && loss <= 1))
    throw std::invalid_argument("mos_voice: loss out of range");
  if (!(delay_s >= 0))
    throw std::invalid_argument("mos_voice: delay must be >= 0");
  const double delay_ms = delay_s * 1e3;
  const double loss_pct = loss * 100.0;
  const double i_delay = params.delay_slope_a * std::max(0.0, delay_ms - 177.3) +
                         params.delay_slope_b * delay_ms;
  const double i_loss = params.loss_scale_c * std::log1p(params.loss_scale_d * loss_pct);
  return {rating_to_mos(params.r0 - i_delay - i_loss), ServiceKind::voice_call};
}

MosScore mos_video(const ServiceQualityIndicators& ind, const VideoQoeParams& params) {
  const double pixels = static_cast<double>(ind.definition_h) * ind.definition_v;
  const double b0 = pixels > 0 ? params.bits_per_pixel * pixels : params.fallback_b0_bps;
  const double base = 1.0 + 4.0 * (1.0 - std::exp(-ind.bitrate_bps / b0));

  const double stall_frac = ind.segment_duration_s > 0
                                ? ind.stall_duration_s / ind.segment_duration_s
                                : 0.0;
  const double v = base - params.stall_duration_alpha * stall_frac -
                   params.stall_events_beta * ind.stall_events -
                   params.initial_buffering_gamma * ind.initial_buffering_s;
  return {clamp_mos(v), ServiceKind::video_call};
}

MosScore mos_game(double loss, double delay_s, const GameQoeParams& params) {
  if (!(loss >= 0 && loss <= 1))
    throw std::invalid_argument("mos_game: loss out of range");
  if (!(delay_s >= 0))
    throw std::invalid_argument("mos_game: delay must be >= 0");
  const double delay_ms = delay_s * 1e3;
  const double loss_pct = loss * 100.0;
  const double v = 5.0 - params.delay_scale_p * std::log1p(params.delay_rate_q * delay_ms) -
                   params.loss_slope_r * loss_pct;
  return {clamp_mos(v), ServiceKind::mobile_game};
}

MosScore mos_for_service(ServiceKind kind, const ServiceQualityIndicators& ind,
                         const QoeModelParams& params) {
  MosScore score;
  switch (kind) {
    case ServiceKind::voice_call:
      score = mos_voice(ind.loss, ind.delay_s, params.voice);
      break;
    case ServiceKind::video_call:
    case ServiceKind::buffered_video:
      score = mos_video(ind, params.video);
      break;
    case ServiceKind::mobile_game:
      score = mos_game(ind.loss, ind.delay_s, params.game);
      break;
  }
  score.service_kind = kind;
  return score;
}

}  // namespace linkmos
