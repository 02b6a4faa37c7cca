#ifndef LINKMOS_QOE_HPP
#define LINKMOS_QOE_HPP

#include "linkmos/service_quality.hpp"

namespace linkmos {

/// A mean-opinion score in [1,5].
struct MosScore {
  double value = 1.0;
  ServiceKind service_kind = ServiceKind::voice_call;
};

/// Rating-model coefficients for voice. The transmission rating is
///   R = r0 - I_delay - I_loss
///   I_delay = a * max(0, delay_ms - 177.3) + b * delay_ms
///   I_loss  = c * ln(1 + d * loss_pct)
/// and R maps to MOS through the standard cubic (1 below R=0, 4.5 above
/// R=100, else 1 + 0.035 R + 7e-6 R (R-60)(100-R)).
struct VoiceQoeParams {
  double r0 = 93.2;
  double delay_slope_a = 0.11;   // per ms beyond the 177.3 ms knee
  double delay_slope_b = 0.024;  // per ms
  double loss_scale_c = 11.0;
  double loss_scale_d = 10.0;  // per percent loss
};

/// Video MOS:
///   base = 1 + 4 * (1 - exp(-bitrate / b0)),  b0 = bits_per_pixel * pixels
///   MOS  = clamp[1,5](base - alpha * T_k / T_segment - beta * N_k
///                          - gamma * T_initial)
struct VideoQoeParams {
  double bits_per_pixel = 1.3;     // per-definition bitrate scale
  double fallback_b0_bps = 1e6;    // used when the profile has no definition
  double stall_duration_alpha = 4.0;
  double stall_events_beta = 0.3;
  double initial_buffering_gamma = 0.1;  // per second
};

/// Game MOS: clamp[1,5](5 - p * ln(1 + q * delay_ms) - r * loss_pct).
struct GameQoeParams {
  double delay_scale_p = 0.5;
  double delay_rate_q = 0.1;  // per ms
  double loss_slope_r = 0.1;  // per percent loss
};

struct QoeModelParams {
  VoiceQoeParams voice;
  VideoQoeParams video;
  GameQoeParams game;
};

MosScore mos_voice(double loss, double delay_s, const VoiceQoeParams& params);
MosScore mos_video(const ServiceQualityIndicators& ind, const VideoQoeParams& params);
MosScore mos_game(double loss, double delay_s, const GameQoeParams& params);

/// Routes the indicators to the model for the service kind (video kinds use
/// the video model, voice the rating model, game the game model).
MosScore mos_for_service(ServiceKind kind, const ServiceQualityIndicators& ind,
                         const QoeModelParams& params);

}  // namespace linkmos

#endif  // LINKMOS_QOE_HPP
