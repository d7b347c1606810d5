#pragma once

// Group-spec files and report serialization.
//
// Group-spec schema: a JSON object with exactly one of
//   "generators": [[[a, b], [c, d]], ...]           row-major, det 1
//   "family": {"kind": "cyclic-parabolic", "translation": 1}
//             {"kind": "cyclic-hyperbolic", "lambda": 4}
//             {"kind": "schottky-pair", "circles": [[c, r], [c, r], [c, r], [c, r]]}
//             {"kind": "flute-truncated", "translation_lengths": [l1, l2, ...]}
// and optional "max_word_length" (default 10) and "dedup_tol" (default 1e-9).

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "horoflow/dichotomy.hpp"
#include "horoflow/flows.hpp"
#include "horoflow/group.hpp"
#include "horoflow/limit_points.hpp"
#include "horoflow/verify.hpp"

namespace horoflow {

inline constexpr const char* kToolVersion = "horoflow 1.0.0";

/// Throws ParseError (unreadable file, malformed JSON, schema violation) or
/// InvalidGenerator (det != 1 beyond tolerance, identity generator).
GroupSpec load_group_spec(const std::filesystem::path& path);
GroupSpec parse_group_spec(const nlohmann::json& doc);
GroupSpec parse_group_spec(const std::string& text);

/// Resolved form: explicit generators plus enumeration parameters.
nlohmann::json group_spec_to_json(const GroupSpec& spec);

/// "inf", "infinity" or a decimal number.
BoundaryPoint parse_boundary_point(const std::string& text);

/// %.17g; non-finite values are written as inf / -inf / nan.
std::string format_real(double x);

nlohmann::json to_json(const BoundaryPoint& p);
nlohmann::json to_json(const GroupElement& g);
nlohmann::json to_json(const ConvergenceVerdict& v);
nlohmann::json to_json(const LimitPointEvidence& ev);
nlohmann::json to_json(const SequenceCandidate& seq);
nlohmann::json to_json(const CoefficientReport& rep);
nlohmann::json to_json(const DiagnosticsReport& rep);
nlohmann::json to_json(const VerifyReport& rep);

/// Columns t,inj_estimate.
void write_profile_csv(std::ostream& os, const RayProfile& profile);

struct FlowSample {
  double parameter = 0.0;
  PointH point = PointH::i();
};
/// Columns s_or_t,re,im.
void write_orbit_csv(std::ostream& os, const std::vector<FlowSample>& samples);

}  // namespace horoflow
