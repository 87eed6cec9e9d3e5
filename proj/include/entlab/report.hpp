#pragma once

// Analysis orchestration and report assembly for the CLI: input loading,
// the JSON analysis report, conversions between the three input kinds, and
// the printable trajectory table.

#include <optional>
#include <string>

#include <json.hpp>

#include "entlab/apf.hpp"
#include "entlab/entanglement.hpp"
#include "entlab/gf2.hpp"
#include "entlab/state.hpp"

namespace entlab {

enum class InputKind { anf, code, vector };

struct InputObject {
    InputKind kind = InputKind::vector;
    std::string source_text;
    std::optional<Apf> apf;        // anf inputs
    std::optional<LinearCode> code;  // code inputs
    StateVector state;             // always materialised
};

InputKind sniff_input_kind(const std::string& text);
InputObject load_input(InputKind kind, const std::string& text);

struct AnalyzeOptions {
    bool multispectra = false;
    bool parl = false;
    bool hierarchy = false;
    bool se = false;
    bool crypto = false;
    bool force_float = false;
    int spectra_threshold = 0;  // embed full spectra for |T| <= threshold
    int threads = 1;
    uint64_t seed = 12345;
};

nlohmann::json analyze(const InputObject& input, const AnalyzeOptions& opt);

struct ConvertResult {
    std::string text;             // output object in its file format
    nlohmann::json info;          // code parameters, side, factors, ...
};

ConvertResult convert(const InputObject& input, const std::string& direction, Side side);

struct TrajectoryOptions {
    bool search = true;
    TrajectoryMode mode = TrajectoryMode::most_destructive;
    std::optional<std::string> basis_gates;
    std::vector<int> order;
    std::vector<int> outcomes;
    int threads = 1;
};

MeasurementTrajectory run_trajectory(const InputObject& input, const TrajectoryOptions& opt);

std::string render_trajectory(const MeasurementTrajectory& tr);
nlohmann::json trajectory_json(const MeasurementTrajectory& tr);

nlohmann::json ratio_json(const RatioValue& v);

}  // namespace entlab
