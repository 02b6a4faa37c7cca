#ifndef LINKMOS_SCENARIO_HPP
#define LINKMOS_SCENARIO_HPP

#include <string>
#include <vector>

#include "linkmos/curves.hpp"
#include "linkmos/environment.hpp"
#include "linkmos/packet_model.hpp"
#include "linkmos/qoe.hpp"
#include "linkmos/service_quality.hpp"

namespace linkmos {

/// One end-to-end operating point: service profile, per-direction curves,
/// SINR providers and arrival rates, protocol timing, and the QoE
/// coefficients. Loadable from a JSON document with sections mirroring these
/// fields (general / phy / sinr / queue / timing / service / qoe).
struct Scenario {
  ServiceProfile service;
  PhyCurveSet ul_curves;
  PhyCurveSet dl_curves;
  SinrProvider ul_sinr;
  SinrProvider dl_sinr;
  double ul_lambda_pps = 0;
  double dl_lambda_pps = 0;
  TimingConfig timing;
  QoeModelParams qoe;
  HarqExpectationMode harq_mode = HarqExpectationMode::per_transmission;
};

/// Parses a scenario document. Curve/trace files referenced by the document
/// are resolved relative to base_dir. Throws std::invalid_argument with the
/// offending section named.
Scenario load_scenario(const std::string& json_text, const std::string& base_dir = ".");

/// Reads and parses a scenario file; relative references resolve against the
/// file's directory.
Scenario load_scenario_file(const std::string& path);

/// Names of the bundled presets: video_call, buffered_video, voice_call,
/// mobile_game. Each carries the bundled public timing values and the
/// per-service packet/queue/HARQ row, plus documented media defaults.
std::vector<std::string> preset_names();

/// The preset's scenario document (JSON text). Throws on unknown names.
std::string preset_scenario_json(const std::string& name);

/// Convenience: parsed preset.
Scenario preset_scenario(const std::string& name);

}  // namespace linkmos

#endif  // LINKMOS_SCENARIO_HPP
