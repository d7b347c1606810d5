#include "horoflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "horoflow/presets.hpp"

namespace horoflow {

using nlohmann::json;

namespace {

double number_at(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback) {
  return obj.contains(key) ? number_at(obj, key) : fallback;
}

Mobius parse_matrix(const json& m, std::size_t index) {
  const auto where = "generator " + std::to_string(index);
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() ||
      m[0].size() != 2 || m[1].size() != 2)
    throw ParseError(where + " must be a 2x2 row-major matrix");
  for (const auto& row : m)
    for (const auto& v : row)
      if (!v.is_number()) throw ParseError(where + " has a non-numeric entry");
  try {
    return Mobius::from_coefficients(m[0][0].get<double>(), m[0][1].get<double>(),
                                     m[1][0].get<double>(), m[1][1].get<double>());
  } catch (const InvalidGenerator& e) {
    throw InvalidGenerator(where + ": " + e.what());
  }
}

GroupSpec parse_family(const json& fam) {
  if (!fam.is_object() || !fam.contains("kind") || !fam.at("kind").is_string())
    throw ParseError("\"family\" must be an object with a string \"kind\"");
  const auto kind = fam.at("kind").get<std::string>();
  try {
    if (kind == "cyclic-parabolic") return presets::cyclic_parabolic(number_or(fam, "translation", 1.0));
    if (kind == "cyclic-hyperbolic") return presets::cyclic_hyperbolic(number_at(fam, "lambda"));
    if (kind == "schottky-pair") {
      auto circles = presets::default_schottky_circles();
      if (fam.contains("circles")) {
        const json& cs = fam.at("circles");
        if (!cs.is_array() || cs.size() != 4)
          throw ParseError("schottky-pair \"circles\" must list four [center, radius] pairs");
        for (std::size_t k = 0; k < 4; ++k) {
          if (!cs[k].is_array() || cs[k].size() != 2 || !cs[k][0].is_number() ||
              !cs[k][1].is_number())
            throw ParseError("schottky-pair circle must be [center, radius]");
          circles[k] = {cs[k][0].get<double>(), cs[k][1].get<double>()};
        }
      }
      return presets::schottky_pair(circles);
    }
    if (kind == "flute-truncated") {
      if (!fam.contains("translation_lengths") || !fam.at("translation_lengths").is_array())
        throw ParseError("flute-truncated needs a \"translation_lengths\" array");
      std::vector<double> lengths;
      for (const auto& v : fam.at("translation_lengths")) {
        if (!v.is_number()) throw ParseError("translation lengths must be numbers");
        lengths.push_back(v.get<double>());
      }
      return presets::flute_truncated(lengths);
    }
  } catch (const InvalidArgument& e) {
    throw ParseError("family \"" + kind + "\": " + e.what());
  }
  throw ParseError("unknown family kind \"" + kind + "\"");
}

json real(double x) {
  if (std::isfinite(x)) return x;
  return format_real(x);
}

json reals(const std::vector<double>& xs) {
  json out = json::array();
  for (double x : xs) out.push_back(real(x));
  return out;
}

}  // namespace

GroupSpec parse_group_spec(const json& doc) {
  if (!doc.is_object()) throw ParseError("group spec must be a JSON object");
  const bool has_gens = doc.contains("generators");
  const bool has_family = doc.contains("family");
  if (has_gens == has_family)
    throw ParseError("group spec needs exactly one of \"generators\" or \"family\"");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "generators" && key != "family" && key != "max_word_length" && key != "dedup_tol")
      throw ParseError("unknown group spec field \"" + key + "\"");
  }

  GroupSpec spec;
  if (has_gens) {
    const json& gens = doc.at("generators");
    if (!gens.is_array() || gens.empty())
      throw ParseError("\"generators\" must be a nonempty array");
    for (std::size_t k = 0; k < gens.size(); ++k) spec.generators.push_back(parse_matrix(gens[k], k));
  } else {
    spec = parse_family(doc.at("family"));
  }
  if (doc.contains("max_word_length")) {
    const json& v = doc.at("max_word_length");
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError("\"max_word_length\" must be a nonnegative integer");
    spec.max_word_length = v.get<int>();
  }
  if (doc.contains("dedup_tol")) {
    spec.dedup_tol = number_at(doc, "dedup_tol");
    if (!(spec.dedup_tol > 0.0)) throw ParseError("\"dedup_tol\" must be positive");
  }
  try {
    spec.validate();
  } catch (const InvalidGenerator&) {
    throw;
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return spec;
}

GroupSpec parse_group_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return parse_group_spec(doc);
}

GroupSpec load_group_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_spec(buf.str());
}

json group_spec_to_json(const GroupSpec& spec) {
  json gens = json::array();
  for (const auto& g : spec.generators) gens.push_back({{g.a(), g.b()}, {g.c(), g.d()}});
  return {{"generators", gens},
          {"max_word_length", spec.max_word_length},
          {"dedup_tol", spec.dedup_tol}};
}

BoundaryPoint parse_boundary_point(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "+inf") return BoundaryPoint::infinity();
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse boundary point \"" + text + "\"");
  }
  if (used != text.size() || !std::isfinite(x))
    throw InvalidArgument("cannot parse boundary point \"" + text + "\"");
  return BoundaryPoint::finite(x);
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json to_json(const BoundaryPoint& p) {
  if (p.is_infinity()) return "inf";
  return p.value();
}

json to_json(const GroupElement& g) {
  return {{"word", g.word},
          {"matrix", {{g.matrix.a(), g.matrix.b()}, {g.matrix.c(), g.matrix.d()}}}};
}

json to_json(const ConvergenceVerdict& v) {
  json out{{"converged", v.converged}, {"degenerate", v.degenerate}, {"residuals", reals(v.residuals)}};
  if (!v.limit) {
    out["limit"] = nullptr;
  } else if (std::holds_alternative<double>(*v.limit)) {
    out["limit"] = real(std::get<double>(*v.limit));
  } else {
    out["limit"] = to_json(std::get<BoundaryPoint>(*v.limit));
  }
  return out;
}

json to_json(const LimitPointEvidence& ev) {
  json out{{"point", to_json(ev.point)},
           {"depth", ev.depth},
           {"resolved_depth", ev.resolved_depth},
           {"sup_height", real(ev.sup_height)},
           {"sup_height_by_depth", reals(ev.sup_by_depth)},
           {"verdict", to_string(ev.verdict)}};
  out["height_accumulation"] = ev.height_accumulation ? real(*ev.height_accumulation) : json(nullptr);
  out["parabolic_witness"] = ev.parabolic_witness ? to_json(*ev.parabolic_witness) : json(nullptr);
  return out;
}

json to_json(const SequenceCandidate& seq) {
  json elements = json::array();
  for (const auto& g : seq.elements) elements.push_back(to_json(g));
  json images = json::array();
  for (const auto& p : seq.endpoint_images) images.push_back(to_json(p));
  return {{"length", seq.size()},
          {"height_band", {real(seq.height_band.lower), real(seq.height_band.upper)}},
          {"heights_constant", seq.heights_constant},
          {"heights", reals(seq.heights)},
          {"endpoint_images", images},
          {"elements", elements}};
}

json to_json(const CoefficientReport& rep) {
  const auto& p = rep.displacement;
  json probe{{"indices", p.indices},
             {"t_n", reals(p.times)},
             {"distances", reals(p.distances)},
             {"closed_form", reals(p.closed_form)},
             {"max_residual", real(p.max_residual)},
             {"t_n_squared_variant", reals(p.squared_times)},
             {"distances_squared_variant", reals(p.squared_time_distances)},
             {"squared_variant_max_residual", real(p.squared_time_max_residual)},
             {"divergence", p.diverges}};
  return {{"a", reals(rep.a)},
          {"b", reals(rep.b)},
          {"c", reals(rep.c)},
          {"d", reals(rep.d)},
          {"a_diverges", rep.a_diverges},
          {"c_limit", to_json(rep.c_limit)},
          {"c_limit_zero", rep.c_limit_zero},
          {"d_limit", to_json(rep.d_limit)},
          {"min_cd_norm", real(rep.min_cd_norm)},
          {"cd_bound", real(rep.cd_bound)},
          {"cd_bound_holds", rep.cd_bound_holds},
          {"displacement_probe", probe}};
}

json to_json(const DiagnosticsReport& rep) {
  json out{{"verdict", to_string(rep.verdict)},
           {"t", rep.t ? real(*rep.t) : json(nullptr)},
           {"note", rep.note},
           {"conjugated", rep.conjugated},
           {"inverse_endpoint_limit", to_json(rep.inverse_endpoint_limit)},
           {"busemann_limit", to_json(rep.busemann_limit)},
           {"candidate_times", reals(rep.candidate_times)}};
  out["sequence"] = rep.sequence ? to_json(*rep.sequence) : json(nullptr);
  out["coefficients"] = rep.coefficients ? to_json(*rep.coefficients) : json(nullptr);
  if (rep.coefficients) {
    out["lemma2_check"] = {{"t_n", reals(rep.coefficients->displacement.times)},
                           {"distances", reals(rep.coefficients->displacement.distances)},
                           {"divergence", rep.coefficients->displacement.diverges}};
    out["prop1_check"] = {{"c_n", reals(rep.coefficients->c)},
                          {"limit_zero", rep.coefficients->c_limit_zero}};
  } else {
    out["lemma2_check"] = nullptr;
    out["prop1_check"] = nullptr;
  }
  return out;
}

json to_json(const VerifyReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"samples", c.samples},
                      {"max_residual", real(c.max_residual)},
                      {"passed", c.passed}});
  const auto& s = rep.substitution;
  return {{"seed", rep.seed},
          {"samples", rep.samples},
          {"tol", rep.tol},
          {"checks", checks},
          {"displacement_substitution",
           {{"samples", s.samples},
            {"t_ln_abs_b_max_residual", real(s.abs_b_max_residual)},
            {"t_ln_b_squared_max_residual", real(s.b_squared_max_residual)},
            {"matching", s.matching},
            {"passed", s.passed}}},
          {"all_passed", rep.all_passed()}};
}

void write_profile_csv(std::ostream& os, const RayProfile& profile) {
  os << "t,inj_estimate\n";
  for (std::size_t k = 0; k < profile.times.size(); ++k)
    os << format_real(profile.times[k]) << ',' << format_real(profile.inj_estimates[k]) << '\n';
}

void write_orbit_csv(std::ostream& os, const std::vector<FlowSample>& samples) {
  os << "s_or_t,re,im\n";
  for (const auto& s : samples)
    os << format_real(s.parameter) << ',' << format_real(s.point.re()) << ','
       << format_real(s.point.im()) << '\n';
}

}  // namespace horoflow
