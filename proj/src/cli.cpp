#include "horoflow/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "horoflow/io.hpp"

namespace horoflow {

using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
    case Command::verify: return "verify";
    case Command::classify: return "classify";
    case Command::orbit: return "orbit";
    case Command::inj: return "inj";
    case Command::diagnose: return "diagnose";
  }
  return "verify";
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  if (depth && *depth < 1) throw UsageError("--depth must be at least 1");
  const bool needs_group =
      command == Command::classify || command == Command::inj || command == Command::diagnose;
  if (needs_group && group_path.empty()) throw UsageError("--group is required");
  switch (command) {
    case Command::verify:
      if (samples == 0) throw UsageError("--samples must be positive");
      break;
    case Command::classify:
      break;
    case Command::orbit:
    case Command::inj:
      if (!(t_start < t_end)) throw UsageError("time range needs start < end");
      if (!(step > 0.0)) throw UsageError("--step must be positive");
      if (command == Command::inj && t_start < 0.0) throw UsageError("--tmin must be >= 0");
      if (flow != "geodesic" && flow != "horocycle")
        throw UsageError("--flow must be geodesic or horocycle");
      break;
    case Command::diagnose:
      if (!(band_lower > 0.0) || !(band_upper > band_lower))
        throw UsageError("--band needs 0 < lower < upper");
      if (!(eps > 0.0)) throw UsageError("--eps must be positive");
      if (alpha_depth < 0) throw UsageError("--alpha-depth must be >= 0");
      break;
  }
  if (frame.size() != 4) throw UsageError("--frame takes four numbers a b c d");
}

namespace {

UnitTangent make_tangent(const RunConfig& cfg) {
  return UnitTangent(Mobius::from_coefficients(cfg.frame[0], cfg.frame[1], cfg.frame[2], cfg.frame[3]));
}

GroupSpec load_spec(const RunConfig& cfg) {
  GroupSpec spec = load_group_spec(cfg.group_path);
  if (cfg.depth) spec = spec.with_depth(*cfg.depth);
  return spec;
}

json config_echo(const RunConfig& cfg) {
  json c{{"command", to_string(cfg.command)}, {"seed", cfg.seed}, {"tol", cfg.tol}};
  if (!cfg.group_path.empty()) c["group"] = cfg.group_path;
  if (cfg.depth) c["depth"] = *cfg.depth;
  switch (cfg.command) {
    case Command::verify:
      c["samples"] = cfg.samples;
      c["substitution_samples"] = cfg.substitution_samples;
      break;
    case Command::classify:
      c["point"] = cfg.point;
      break;
    case Command::diagnose:
      c["band"] = {cfg.band_lower, cfg.band_upper};
      c["eps"] = cfg.eps;
      c["alpha_depth"] = cfg.alpha_depth;
      c["frame"] = cfg.frame;
      break;
    case Command::orbit:
    case Command::inj:
      break;
  }
  return c;
}

struct Rendered {
  std::string text;
  int status = 0;
};

Rendered render(const RunConfig& cfg) {
  json report{{"tool", kToolVersion}, {"config", config_echo(cfg)}};
  std::ostringstream csv;
  switch (cfg.command) {
    case Command::verify: {
      const auto rep = run_identity_suite(cfg.samples, cfg.seed, cfg.tol, cfg.substitution_samples);
      report["result"] = to_json(rep);
      return {report.dump(2) + "\n", rep.all_passed() ? 0 : 1};
    }
    case Command::classify: {
      const GroupSpec spec = load_spec(cfg);
      report["group"] = group_spec_to_json(spec);
      const BoundaryPoint xi = parse_boundary_point(cfg.point);
      report["result"] = to_json(classify_boundary_point(spec, xi, spec.max_word_length));
      return {report.dump(2) + "\n", 0};
    }
    case Command::diagnose: {
      const GroupSpec spec = load_spec(cfg);
      report["group"] = group_spec_to_json(spec);
      const auto rep = run_dichotomy(spec, make_tangent(cfg), HeightBand{cfg.band_lower, cfg.band_upper},
                                     cfg.eps, cfg.alpha_depth);
      report["result"] = to_json(rep);
      return {report.dump(2) + "\n", 0};
    }
    case Command::orbit: {
      const UnitTangent u = make_tangent(cfg);
      std::vector<FlowSample> samples;
      for (double s : sample_times(cfg.t_start, cfg.t_end, cfg.step)) {
        const UnitTangent v = cfg.flow == "geodesic" ? geodesic_flow(u, s) : horocycle_flow(u, s);
        samples.push_back({s, v.base_point()});
      }
      write_orbit_csv(csv, samples);
      return {csv.str(), 0};
    }
    case Command::inj: {
      const GroupSpec spec = load_spec(cfg);
      const auto profile = injectivity_profile(spec, make_tangent(cfg), cfg.t_end, cfg.step);
      RayProfile clipped;
      for (std::size_t k = 0; k < profile.times.size(); ++k) {
        if (profile.times[k] < cfg.t_start - 1e-12) continue;
        clipped.times.push_back(profile.times[k]);
        clipped.inj_estimates.push_back(profile.inj_estimates[k]);
      }
      write_profile_csv(csv, clipped);
      return {csv.str(), 0};
    }
  }
  return {"", 2};
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }
  Rendered r;
  try {
    r = render(config);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (config.output_path.empty()) {
    out << r.text;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file || !(file << r.text)) {
      err << "error: cannot write " << config.output_path << '\n';
      return 1;
    }
  }
  if (r.status != 0) err << "error: one or more identity checks failed\n";
  return r.status;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horocycle and geodesic flow diagnostics for Fuchsian groups"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--tol", cfg.tol, "Tolerance");
    sub->add_option("-o,--output", cfg.output_path, "Output file (default: stdout)");
  };
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group_path, "Group spec JSON file")->required();
    sub->add_option_function<int>("--depth", [&](const int& d) { cfg.depth = d; },
                                  "Word length of the enumerated ball");
  };
  auto add_frame = [&](CLI::App* sub) {
    sub->add_option("--frame", cfg.frame, "Unit tangent vector as frame a b c d")->expected(4);
  };

  auto* verify = app.add_subcommand("verify", "Seeded audit of the geometric identities");
  add_common(verify);
  verify->add_option("--samples", cfg.samples, "Samples per identity");
  verify->add_option("--substitution-samples", cfg.substitution_samples,
                     "Samples for the displacement substitution check");

  auto* classify = app.add_subcommand("classify", "Evidence for the type of a boundary point");
  add_common(classify);
  add_group(classify);
  classify->add_option("--point", cfg.point, "Boundary point: a number or inf");

  auto* orbit = app.add_subcommand("orbit", "Sample a geodesic or horocycle orbit (CSV)");
  add_common(orbit);
  add_frame(orbit);
  orbit->add_option("--flow", cfg.flow, "geodesic or horocycle");
  orbit->add_option("--tmin", cfg.t_start, "First parameter");
  orbit->add_option("--tmax", cfg.t_end, "Last parameter");
  orbit->add_option("--step", cfg.step, "Parameter step");

  auto* inj = app.add_subcommand("inj", "Injectivity radius along a geodesic ray (CSV)");
  add_common(inj);
  add_group(inj);
  add_frame(inj);
  inj->add_option("--tmin", cfg.t_start, "First time written");
  inj->add_option("--tmax", cfg.t_end, "Last time");
  inj->add_option("--step", cfg.step, "Time step");

  auto* diagnose = app.add_subcommand("diagnose", "Recurrence versus non-minimality diagnostics");
  add_common(diagnose);
  add_group(diagnose);
  add_frame(diagnose);
  std::vector<double> band{cfg.band_lower, cfg.band_upper};
  diagnose->add_option("--band", band, "Height band lower upper")->expected(2);
  diagnose->add_option("--eps", cfg.eps, "Settling tolerance");
  diagnose->add_option("--alpha-depth", cfg.alpha_depth, "Word length of the alpha candidates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (band.size() == 2) {
    cfg.band_lower = band[0];
    cfg.band_upper = band[1];
  }
  if (*verify) cfg.command = Command::verify;
  if (*classify) cfg.command = Command::classify;
  if (*orbit) cfg.command = Command::orbit;
  if (*inj) cfg.command = Command::inj;
  if (*diagnose) cfg.command = Command::diagnose;
  return run(cfg, out, err);
}

}  // namespace horoflow
