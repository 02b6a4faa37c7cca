#include "doctest.h"
#include "linkmos/qoe.hpp"

using namespace linkmos;

namespace {

ServiceQualityIndicators video_ind(double bitrate, int h, int v, double t_k,
                                   double t_seg, double n_k, double t_init) {
    ServiceQualityIndicators ind;
    ind.bitrate_bps = bitrate;
    ind.definition_h = h;
    ind.definition_v = v;
    ind.stall_duration_s = t_k;
    ind.segment_duration_s = t_seg;
    ind.stall_events = n_k;
    ind.initial_buffering_s = t_init;
    return ind;
}

}  // namespace

TEST_CASE("voice rating model, frozen points") {
    VoiceQoeParams p;
    // 2% loss, 150 ms: R = 93.2 - 3.6 - 11 ln(21) = 56.11...
    CHECK(mos_voice(0.02, 0.15, p).value ==
          doctest::Approx(2.8968048633779548).epsilon(1e-13));
    // clean short call: R = 93.2 - 1.2
    CHECK(mos_voice(0.0, 0.05, p).value ==
          doctest::Approx(4.3848640000000003).epsilon(1e-13));
    // zero everything: R = r0
    CHECK(mos_voice(0.0, 0.0, p).value ==
          doctest::Approx(4.4092858240000004).epsilon(1e-13));
    // heavy loss and delay drive the rating negative; MOS floors at 1
    CHECK(mos_voice(0.5, 0.4, p).value == 1.0);
    // total loss alone does not floor: the loss term saturates near 76
    CHECK(mos_voice(1.0, 0.0, p).value ==
          doctest::Approx(1.1754152760822394).epsilon(1e-13));
}

TEST_CASE("voice rating model, delay knee at 177.3 ms") {
    VoiceQoeParams p;
    // below the knee only the linear term applies; above it both do
    double below = mos_voice(0.0, 0.177, p).value;
    double at = mos_voice(0.0, 0.1773, p).value;
    double above = mos_voice(0.0, 0.1776, p).value;
    CHECK(below > at);
    CHECK(at > above);
    // slope steepens past the knee
    double d1 = below - at;
    double d2 = at - above;
    CHECK(d2 > d1);
}

TEST_CASE("voice model caps at 4.5 for perfect ratings") {
    VoiceQoeParams p;
    p.r0 = 120.0;  // push R past 100
    CHECK(mos_voice(0.0, 0.0, p).value == 4.5);
}

TEST_CASE("video model, frozen points") {
    VideoQoeParams p;
    // clean 2 Mbps at 1280x720: base only
    CHECK(mos_video(video_ind(2e6, 1280, 720, 0, 1.0, 0, 0), p).value ==
          doctest::Approx(4.2465127979397188).epsilon(1e-13));
    // 1% packet loss -> T_k = 0.0956..., N_k = 2.39... over a 1 s segment
    CHECK(mos_video(video_ind(2e6, 1280, 720, 0.095617924991195591, 1.0,
                              2.3904481247798897, 0),
                    p)
              .value == doctest::Approx(3.1469066605409695).epsilon(1e-13));
    // 4 Mbps 1080p with 1 s initial buffering
    CHECK(mos_video(video_ind(4e6, 1920, 1080, 0, 1.0, 0, 1.0), p).value ==
          doctest::Approx(3.9929532525009708).epsilon(1e-13));
    // no definition: fallback scale
    CHECK(mos_video(video_ind(2e6, 0, 0, 0, 1.0, 0, 0), p).value ==
          doctest::Approx(4.4586588670535487).epsilon(1e-13));
}

TEST_CASE("video model clamps at the scale floor") {
    VideoQoeParams p;
    // an entire segment stalled with alpha = 4 drags any base below 1
    CHECK(mos_video(video_ind(1e9, 1920, 1080, 1.0, 1.0, 25, 0), p).value == 1.0);
}

TEST_CASE("video model: zero bitrate floors the base") {
    VideoQoeParams p;
    CHECK(mos_video(video_ind(0, 1280, 720, 0, 1.0, 0, 0), p).value == 1.0);
}

TEST_CASE("game model, frozen points") {
    GameQoeParams p;
    CHECK(mos_game(0.0, 0.05, p).value ==
          doctest::Approx(4.1041202653859727).epsilon(1e-13));
    CHECK(mos_game(0.02, 0.1, p).value ==
          doctest::Approx(3.6010523636008145).epsilon(1e-13));
    // an instant lossless link earns the full scale
    CHECK(mos_game(0.0, 0.0, p).value == 5.0);
    // full loss with the default slope floors out
    CHECK(mos_game(1.0, 0.5, p).value == 1.0);
}

TEST_CASE("mos_for_service routes by kind and stamps it") {
    QoeModelParams params;
    ServiceQualityIndicators ind = video_ind(2e6, 1280, 720, 0, 1.0, 0, 0);
    ind.loss = 0.02;
    ind.delay_s = 0.15;

    MosScore voice = mos_for_service(ServiceKind::voice_call, ind, params);
    CHECK(voice.service_kind == ServiceKind::voice_call);
    CHECK(voice.value == doctest::Approx(2.8968048633779548).epsilon(1e-13));

    MosScore video = mos_for_service(ServiceKind::video_call, ind, params);
    CHECK(video.service_kind == ServiceKind::video_call);
    CHECK(video.value == doctest::Approx(4.2465127979397188).epsilon(1e-13));

    MosScore buffered = mos_for_service(ServiceKind::buffered_video, ind, params);
    CHECK(buffered.service_kind == ServiceKind::buffered_video);
    CHECK(buffered.value == video.value);  // same model, different stamp

    MosScore game = mos_for_service(ServiceKind::mobile_game, ind, params);
    CHECK(game.service_kind == ServiceKind::mobile_game);
    CHECK(game.value == doctest::Approx(3.4137056388801094).epsilon(1e-13));
}

TEST_CASE("every model stays inside the mos scale on a stress grid") {
    QoeModelParams params;
    for (double loss : {0.0, 1e-4, 0.01, 0.1, 0.5, 1.0}) {
        for (double delay : {0.0, 0.01, 0.1, 0.5, 2.0, 10.0}) {
            double v = mos_voice(loss, delay, params.voice).value;
            double g = mos_game(loss, delay, params.game).value;
            CHECK(v >= 1.0);
            CHECK(v <= 5.0);
            CHECK(g >= 1.0);
            CHECK(g <= 5.0);
        }
    }
}
