#include "linkmos/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace linkmos {
namespace {

using nlohmann::json;

double num_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw std::runtime_error(std::string("scenario: field '") + key + "' must be a number");
    return v.get<double>();
}

int int_or(const json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw std::runtime_error(std::string("scenario: field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string str_or(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw std::runtime_error(std::string("scenario: field '") + key + "' must be a string");
    return v.get<std::string>();
}

HarqCombining parse_combining(const json& j) {
    HarqCombining c;
    if (!j.contains("combining")) return c;
    const json& cj = j.at("combining");
    std::string mode = str_or(cj, "mode", "geometric");
    if (mode == "geometric") {
        c.mode = CombiningMode::geometric;
    } else if (mode == "gain_db") {
        c.mode = CombiningMode::gain_db;
    } else {
        throw std::runtime_error("scenario: combining mode must be 'geometric' or 'gain_db'");
    }
    c.gain_db_per_retx = num_or(cj, "gain_db_per_retx", 0.0);
    return c;
}

PhyCurveSet parse_phy(const json& j, const std::string& base_dir, const std::string& side) {
    double overhead = num_or(j, "overhead", 0.95);
    HarqCombining combining = parse_combining(j);
    std::string label = str_or(j, "label", side);

    if (j.contains("synth")) {
        const json& s = j.at("synth");
        PhyCurveSet c = synth_curve(num_or(s, "mid_sinr_db", 5.0),
                                    num_or(s, "slope_per_db", 1.0),
                                    num_or(s, "peak_throughput_bps", 2.0e7),
                                    label, overhead, combining);
        return c;
    }
    if (j.contains("file")) {
        std::filesystem::path p = j.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        std::ifstream in(p);
        if (!in) throw std::runtime_error("scenario: cannot open curve file " + p.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return load_curves(buf.str(), label, overhead, combining);
    }
    if (j.contains("samples")) {
        const json& s = j.at("samples");
        PhyCurveSet c;
        c.label = label;
        c.overhead = overhead;
        c.combining = combining;
        c.sinr_db = s.at("sinr_db").get<std::vector<double>>();
        c.bler = s.at("bler").get<std::vector<double>>();
        c.throughput_bps = s.at("throughput_bps").get<std::vector<double>>();
        validate_curves(c);
        return c;
    }
    throw std::runtime_error("scenario: phy section needs one of 'synth', 'file', 'samples'");
}

SinrProvider parse_sinr(const json& j, const std::string& base_dir) {
    if (j.contains("constant_db")) return SinrProvider::constant(j.at("constant_db").get<double>());
    if (j.contains("trace_file")) {
        std::filesystem::path p = j.at("trace_file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        std::ifstream in(p);
        if (!in) throw std::runtime_error("scenario: cannot open sinr trace " + p.string());
        std::stringstream buf;
        buf << in.rdbuf();
        return load_sinr_trace(buf.str());
    }
    if (j.contains("trace")) {
        std::vector<std::pair<double, double>> trace;
        for (const json& row : j.at("trace")) {
            if (!row.is_array() || row.size() != 2)
                throw std::runtime_error("scenario: inline sinr trace rows must be [time_s, sinr_db]");
            trace.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        }
        return SinrProvider::from_trace(std::move(trace));
    }
    throw std::runtime_error("scenario: sinr section needs one of 'constant_db', 'trace_file', 'trace'");
}

// Sections holding per-direction settings accept either explicit "ul"/"dl"
// objects or a single object applied to both directions.
const json& side_of(const json& j, const char* side) {
    if (j.contains(side)) return j.at(side);
    return j;
}

ServiceProfile parse_service(const json& j) {
    ServiceProfile p;
    p.kind = service_kind_from_string(str_or(j, "kind", "voice_call"));
    p.packet_len_bits = num_or(j, "packet_len_bits", p.packet_len_bits);
    p.rx_window_s = num_or(j, "rx_window_s", p.rx_window_s);
    p.queue_k = int_or(j, "queue_k", p.queue_k);
    p.n_harq_max = int_or(j, "n_harq_max", p.n_harq_max);
    p.bitrate_bps = num_or(j, "bitrate_bps", p.bitrate_bps);
    p.framerate_fps = num_or(j, "framerate_fps", p.framerate_fps);
    if (j.contains("definition")) {
        const json& d = j.at("definition");
        if (!d.is_array() || d.size() != 2)
            throw std::runtime_error("scenario: definition must be [horizontal, vertical]");
        p.definition_h = d.at(0).get<int>();
        p.definition_v = d.at(1).get<int>();
    }
    if (j.contains("frame_durations_s"))
        p.frame_durations_s = j.at("frame_durations_s").get<std::vector<double>>();
    p.initial_buffering_s = num_or(j, "initial_buffering_s", p.initial_buffering_s);
    if (p.packet_len_bits <= 0) throw std::runtime_error("scenario: packet_len_bits must be > 0");
    if (p.queue_k < 1) throw std::runtime_error("scenario: queue_k must be >= 1");
    if (p.n_harq_max < 1) throw std::runtime_error("scenario: n_harq_max must be >= 1");
    return p;
}

TimingConfig parse_timing(const json& j, const ServiceProfile& service) {
    TimingConfig t;
    t.t_protocolproc_s = num_or(j, "t_protocolproc_s", t.t_protocolproc_s);
    t.t_sigproc_s = num_or(j, "t_sigproc_s", t.t_sigproc_s);
    t.n_uu = int_or(j, "n_uu", t.n_uu);
    t.t_uu_s = num_or(j, "t_uu_s", t.t_uu_s);
    t.t_netrelay_s = num_or(j, "t_netrelay_s", t.t_netrelay_s);
    t.n_ho = int_or(j, "n_ho", t.n_ho);
    t.t_ho_s = num_or(j, "t_ho_s", t.t_ho_s);
    t.t_netwin_s = num_or(j, "t_netwin_s", t.t_netwin_s);
    t.t_rxwin_s = service.rx_window_s;
    t.n_harq_max = service.n_harq_max;
    return t;
}

void parse_qoe(const json& j, QoeModelParams& q) {
    if (j.contains("voice")) {
        const json& v = j.at("voice");
        q.voice.r0 = num_or(v, "r0", q.voice.r0);
        q.voice.delay_slope_a = num_or(v, "delay_slope_a", q.voice.delay_slope_a);
        q.voice.delay_slope_b = num_or(v, "delay_slope_b", q.voice.delay_slope_b);
        q.voice.loss_scale_c = num_or(v, "loss_scale_c", q.voice.loss_scale_c);
        q.voice.loss_scale_d = num_or(v, "loss_scale_d", q.voice.loss_scale_d);
    }
    if (j.contains("video")) {
        const json& v = j.at("video");
        q.video.bits_per_pixel = num_or(v, "bits_per_pixel", q.video.bits_per_pixel);
        q.video.fallback_b0_bps = num_or(v, "fallback_b0_bps", q.video.fallback_b0_bps);
        q.video.stall_duration_alpha = num_or(v, "stall_duration_alpha", q.video.stall_duration_alpha);
        q.video.stall_events_beta = num_or(v, "stall_events_beta", q.video.stall_events_beta);
        q.video.initial_buffering_gamma = num_or(v, "initial_buffering_gamma", q.video.initial_buffering_gamma);
    }
    if (j.contains("game")) {
        const json& v = j.at("game");
        q.game.delay_scale_p = num_or(v, "delay_scale_p", q.game.delay_scale_p);
        q.game.delay_rate_q = num_or(v, "delay_rate_q", q.game.delay_rate_q);
        q.game.loss_slope_r = num_or(v, "loss_slope_r", q.game.loss_slope_r);
    }
}

Scenario load_scenario_impl(const std::string& json_text, const std::string& base_dir) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("scenario: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::runtime_error("scenario: document root must be an object");

    Scenario s;
    if (doc.contains("service")) s.service = parse_service(doc.at("service"));

    if (!doc.contains("phy")) throw std::runtime_error("scenario: missing 'phy' section");
    const json& phy = doc.at("phy");
    s.ul_curves = parse_phy(side_of(phy, "ul"), base_dir, "ul");
    s.dl_curves = parse_phy(side_of(phy, "dl"), base_dir, "dl");

    if (!doc.contains("sinr")) throw std::runtime_error("scenario: missing 'sinr' section");
    const json& sinr = doc.at("sinr");
    s.ul_sinr = parse_sinr(side_of(sinr, "ul"), base_dir);
    s.dl_sinr = parse_sinr(side_of(sinr, "dl"), base_dir);

    if (!doc.contains("queue")) throw std::runtime_error("scenario: missing 'queue' section");
    const json& q = doc.at("queue");
    s.ul_lambda_pps = num_or(side_of(q, "ul"), "lambda_pps", -1.0);
    s.dl_lambda_pps = num_or(side_of(q, "dl"), "lambda_pps", -1.0);
    if (s.ul_lambda_pps < 0 || s.dl_lambda_pps < 0)
        throw std::runtime_error("scenario: queue section needs lambda_pps >= 0 for both directions");

    s.timing = parse_timing(doc.contains("timing") ? doc.at("timing") : json::object(), s.service);
    if (doc.contains("qoe")) parse_qoe(doc.at("qoe"), s.qoe);

    std::string mode = str_or(doc.contains("general") ? doc.at("general") : json::object(),
                              "harq_mode", "per_transmission");
    if (mode == "per_transmission") {
        s.harq_mode = HarqExpectationMode::per_transmission;
    } else if (mode == "cumulative_product") {
        s.harq_mode = HarqExpectationMode::cumulative_product;
    } else {
        throw std::runtime_error("scenario: harq_mode must be 'per_transmission' or 'cumulative_product'");
    }
    return s;
}

}  // namespace

Scenario load_scenario(const std::string& json_text, const std::string& base_dir) {
    try {
        return load_scenario_impl(json_text, base_dir);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception& e) {
        // component validators throw logic-error types; surface one kind
        throw std::runtime_error(std::string("scenario: ") + e.what());
    }
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str(), std::filesystem::path(path).parent_path().string());
}

namespace {

const char* kVideoCall = R"({
  "general": { "harq_mode": "per_transmission" },
  "service": {
    "kind": "video_call",
    "packet_len_bits": 8000,
    "rx_window_s": 0.3,
    "queue_k": 16,
    "n_harq_max": 4,
    "bitrate_bps": 2000000,
    "framerate_fps": 25,
    "definition": [1280, 720]
  },
  "phy": { "synth": { "mid_sinr_db": 5, "slope_per_db": 1.0, "peak_throughput_bps": 20000000 } },
  "sinr": { "constant_db": 15 },
  "queue": { "lambda_pps": 250 },
  "timing": {
    "t_protocolproc_s": 0.001, "t_sigproc_s": 0.001,
    "n_uu": 1, "t_uu_s": 0.001,
    "t_netrelay_s": 0.005, "n_ho": 0, "t_ho_s": 0.03,
    "t_netwin_s": 0.05
  }
})";

const char* kBufferedVideo = R"({
  "general": { "harq_mode": "per_transmission" },
  "service": {
    "kind": "buffered_video",
    "packet_len_bits": 8000,
    "rx_window_s": 1.0,
    "queue_k": 16,
    "n_harq_max": 4,
    "bitrate_bps": 4000000,
    "framerate_fps": 25,
    "definition": [1920, 1080],
    "initial_buffering_s": 1.0
  },
  "phy": { "synth": { "mid_sinr_db": 5, "slope_per_db": 1.0, "peak_throughput_bps": 20000000 } },
  "sinr": { "constant_db": 15 },
  "queue": { "lambda_pps": 500 },
  "timing": {
    "t_protocolproc_s": 0.001, "t_sigproc_s": 0.001,
    "n_uu": 1, "t_uu_s": 0.001,
    "t_netrelay_s": 0.005, "n_ho": 0, "t_ho_s": 0.03,
    "t_netwin_s": 0.05
  }
})";

const char* kVoiceCall = R"({
  "general": { "harq_mode": "per_transmission" },
  "service": {
    "kind": "voice_call",
    "packet_len_bits": 984,
    "rx_window_s": 0.15,
    "queue_k": 10,
    "n_harq_max": 8,
    "bitrate_bps": 49200
  },
  "phy": { "synth": { "mid_sinr_db": 5, "slope_per_db": 1.0, "peak_throughput_bps": 20000000 } },
  "sinr": { "constant_db": 15 },
  "queue": { "lambda_pps": 50 },
  "timing": {
    "t_protocolproc_s": 0.001, "t_sigproc_s": 0.001,
    "n_uu": 1, "t_uu_s": 0.001,
    "t_netrelay_s": 0.005, "n_ho": 0, "t_ho_s": 0.03,
    "t_netwin_s": 0.05
  }
})";

const char* kMobileGame = R"({
  "general": { "harq_mode": "per_transmission" },
  "service": {
    "kind": "mobile_game",
    "packet_len_bits": 1200,
    "rx_window_s": 0.3,
    "queue_k": 12,
    "n_harq_max": 4,
    "bitrate_bps": 72000
  },
  "phy": { "synth": { "mid_sinr_db": 5, "slope_per_db": 1.0, "peak_throughput_bps": 20000000 } },
  "sinr": { "constant_db": 15 },
  "queue": { "lambda_pps": 60 },
  "timing": {
    "t_protocolproc_s": 0.001, "t_sigproc_s": 0.001,
    "n_uu": 1, "t_uu_s": 0.001,
    "t_netrelay_s": 0.005, "n_ho": 0, "t_ho_s": 0.03,
    "t_netwin_s": 0.05
  }
})";

}  // namespace

std::vector<std::string> preset_names() {
    return {"video_call", "buffered_video", "voice_call", "mobile_game"};
}

std::string preset_scenario_json(const std::string& name) {
    if (name == "video_call") return kVideoCall;
    if (name == "buffered_video") return kBufferedVideo;
    if (name == "voice_call") return kVoiceCall;
    if (name == "mobile_game") return kMobileGame;
    throw std::runtime_error("unknown preset '" + name + "'");
}

Scenario preset_scenario(const std::string& name) {
    return load_scenario(preset_scenario_json(name));
}

}  // namespace linkmos
