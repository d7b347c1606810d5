// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "horoflow/cli.hpp"
#include "horoflow/dichotomy.hpp"
#include "horoflow/flows.hpp"
#include "horoflow/limit_points.hpp"
#include "horoflow/presets.hpp"
#include "horoflow/verify.hpp"
#include "oracles.hpp"

using namespace horoflow;

namespace {

const std::string kExamples = HOROFLOW_EXAMPLES_DIR;
constexpr std::uint64_t kSeed = 20240607;

struct Result {
  bool passed;
  std::string detail;
};

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const IdentityCheck& find_check(const VerifyReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

Mobius random_element(std::mt19937_64& rng, double spread = 2.0) {
  const auto m = oracle::random_sl2(rng, spread);
  return Mobius::from_coefficients(m[0], m[1], m[2], m[3]);
}

double scaled_gap(const Mobius& x, const Mobius& y) {
  double scale = 1.0;
  for (double v : x.coefficients()) scale = std::max(scale, std::abs(v));
  return x.distance_to(y) / scale;
}

std::vector<std::pair<std::string, GroupSpec>> shipped_presets() {
  return {{"cyclic-parabolic", presets::cyclic_parabolic()},
          {"cyclic-hyperbolic", presets::cyclic_hyperbolic(4.0)},
          {"schottky-pair", presets::schottky_pair(presets::default_schottky_circles())},
          {"flute-truncated", presets::flute_truncated({1.0, 2.0, 3.0})},
          {"parabolic-schottky", presets::parabolic_schottky()}};
}

Result identity_suite() {
  const auto start = std::chrono::steady_clock::now();
  const VerifyReport rep = run_identity_suite(10000, kSeed, 1e-9, 0);
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  bool ok = true;
  for (const char* name : {"im_of_image_of_i", "re_of_image_of_i", "image_of_infinity",
                           "inverse_image_of_infinity", "busemann_of_image_of_i", "argsh_displacement"}) {
    const auto& c = find_check(rep, name);
    worst = std::max(worst, c.max_residual);
    ok = ok && c.passed && c.samples > 0;
  }
  // Independent cross-check of the image of i against complex arithmetic.
  std::mt19937_64 rng(kSeed);
  double cross = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto m = oracle::random_sl2(rng, 3.0);
    const auto z = oracle::mobius(m, {0.0, 1.0});
    cross = std::max(cross, std::abs(z.imag() - 1.0 / (m[2] * m[2] + m[3] * m[3])) / std::max(1.0, z.imag()));
  }
  ok = ok && cross < 1e-9 && elapsed < 10.0;
  return {ok, "max residual " + fmt("%.3g", worst) + ", oracle " + fmt("%.3g", cross) + ", " +
                  fmt("%.2f", elapsed) + " s"};
}

Result cross_ratio_and_angles() {
  const VerifyReport rep = run_identity_suite(10000, kSeed, 1e-9, 0);
  const auto& inv = find_check(rep, "cross_ratio_invariance");
  const auto inf = BoundaryPoint::infinity();
  auto f = [](double x) { return BoundaryPoint::finite(x); };
  const double a1 = angle_between(Geodesic(f(-1), f(1)), Geodesic(f(0), inf));
  const double a2 = angle_between(Geodesic(f(0), f(4)), Geodesic(f(-2), f(1)));
  const double half_pi = std::numbers::pi / 2.0;
  const double example_err = std::max(std::abs(a1 - half_pi), std::abs(a2 - half_pi));

  // Harmonic conjugate of Z with respect to (Y, X), in all admissible orders.
  std::mt19937_64 rng(kSeed + 2);
  std::uniform_real_distribution<double> x(-10.0, 10.0);
  double harmonic_err = 0.0, oracle_err = 0.0;
  int count = 0;
  while (count < 1000) {
    const double p = x(rng), q = x(rng), r = x(rng);
    if (std::min({std::abs(p - q), std::abs(q - r), std::abs(p - r)}) < 0.05) continue;
    const BoundaryPoint beta = harmonic_conjugate(f(p), f(q), f(r));
    const double angle = angle_between(Geodesic(f(p), f(q)), Geodesic(beta, f(r)));
    harmonic_err = std::max(harmonic_err, std::abs(angle - half_pi));
    const double b = beta.is_infinity() ? oracle::kInf : beta.value();
    if (const auto acute = oracle::acute_angle(p, q, b, r)) oracle_err = std::max(oracle_err, std::abs(*acute - half_pi));
    ++count;
  }
  const bool ok = inv.passed && inv.samples == 10000 && example_err < 1e-9 && harmonic_err < 1e-8 &&
                  oracle_err < 1e-8;
  return {ok, "invariance " + fmt("%.3g", inv.max_residual) + ", examples " + fmt("%.3g", example_err) +
                  ", harmonic " + fmt("%.3g", harmonic_err) + " (oracle " + fmt("%.3g", oracle_err) + ")"};
}

Result busemann_laws() {
  const VerifyReport rep = run_identity_suite(10000, kSeed, 1e-9, 0);
  const auto& cocycle = find_check(rep, "busemann_cocycle");
  const auto& equiv = find_check(rep, "busemann_equivariance");
  // Finite base points only, against the log-height oracle.
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> x(-10.0, 10.0);
  double finite_err = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const auto m = oracle::random_sl2(rng, 2.0);
    const double xi = x(rng);
    const auto z = oracle::random_point(rng), w = oracle::random_point(rng);
    auto h = [](double base, oracle::cplx p) { return p.imag() / std::norm(p - base); };
    const double xi_img = oracle::mobius_boundary(m, xi);
    if (!std::isfinite(xi_img)) continue;
    const double lhs = std::log(h(xi_img, oracle::mobius(m, w)) / h(xi_img, oracle::mobius(m, z)));
    const double rhs = busemann(BoundaryPoint::finite(xi), PointH::from_complex(z), PointH::from_complex(w));
    finite_err = std::max(finite_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }
  const bool ok = cocycle.passed && equiv.passed && finite_err < 1e-9;
  return {ok, "additivity " + fmt("%.3g", cocycle.max_residual) + ", equivariance " +
                  fmt("%.3g", equiv.max_residual) + ", finite base oracle " + fmt("%.3g", finite_err)};
}

Result fixed_points_suite() {
  double worst = 0.0, forward = 0.0;
  std::size_t tested = 0;
  for (const auto& [name, spec] : shipped_presets()) {
    for (const auto& g : enumerate_ball(spec.with_depth(6))) {
      const auto cls = classify_isometry(g);
      if (cls != IsometryClass::hyperbolic && cls != IsometryClass::parabolic) continue;
      const auto [p, q] = fixed_points(g);
      for (const auto& x : {p, q}) {
        worst = std::max(worst, fixed_point_residual(g.matrix, x));
        forward = std::max(forward, chordal_distance(apply_boundary(g.matrix, x), x));
      }
      ++tested;
    }
  }
  const auto [x, y] = fixed_points(Mobius::from_coefficients(2, 1, 1, 1));
  const double golden = std::max(std::abs(x.value() - (1 + std::sqrt(5.0)) / 2),
                                 std::abs(y.value() - (1 - std::sqrt(5.0)) / 2));
  const bool ok = worst < 1e-8 && golden < 1e-12 && tested > 0;
  return {ok, std::to_string(tested) + " elements, residual " + fmt("%.3g", worst) + " (forward map only " +
                  fmt("%.3g", forward) + "), (2,1,1,1) error " + fmt("%.3g", golden)};
}

Result flow_laws() {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> par(-3.0, 3.0);
  double group = 0.0, renorm = 0.0, endpoint = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const UnitTangent u(random_element(rng));
    const double t = par(rng), s = par(rng), r = par(rng);
    group = std::max(group, scaled_gap(geodesic_flow(geodesic_flow(u, t), s).frame(),
                                       geodesic_flow(u, t + s).frame()));
    group = std::max(group, scaled_gap(horocycle_flow(horocycle_flow(u, s), r).frame(),
                                       horocycle_flow(u, s + r).frame()));
    const Mobius lhs = Mobius::diagonal(-t) * Mobius::unipotent(s) * Mobius::diagonal(t);
    renorm = std::max(renorm, scaled_gap(lhs, Mobius::from_coefficients(1.0, s * std::exp(-t), 0.0, 1.0)));
    const BoundaryPoint end = u.forward_endpoint();
    endpoint = std::max({endpoint, chordal_distance(geodesic_flow(u, t).forward_endpoint(), end),
                         chordal_distance(horocycle_flow(u, s).forward_endpoint(), end)});
  }
  const bool ok = group < 1e-12 && renorm < 1e-12 && endpoint < 1e-12;
  return {ok, "group laws " + fmt("%.3g", group) + ", renormalization " + fmt("%.3g", renorm) +
                  ", endpoints " + fmt("%.3g", endpoint)};
}

Result classification() {
  const auto inf = BoundaryPoint::infinity();
  const auto par = classify_boundary_point(presets::cyclic_parabolic(), inf, 10);
  const bool par_ok = par.verdict == LimitVerdict::parabolic && par.parabolic_witness &&
                      par.parabolic_witness->matrix.approx_equal(Mobius::unipotent(1.0), 0.0);
  const GroupSpec hyp = presets::cyclic_hyperbolic(4.0);
  const bool hyp_ok = classify_boundary_point(hyp, inf, 10).verdict == LimitVerdict::horocyclic_evidence &&
                      classify_boundary_point(hyp, BoundaryPoint::finite(1.0), 10).verdict ==
                          LimitVerdict::discrete_evidence;

  std::mt19937_64 rng(kSeed + 6);
  std::uniform_real_distribution<double> x(-10.0, 10.0);
  std::size_t points = 0, irregular = 0;
  for (auto [name, spec] : shipped_presets()) {
    // Rank-three flute balls grow as 5^k; depth 6 keeps the sweep short.
    spec = spec.with_depth(name == "flute-truncated" ? 6 : 8);
    std::vector<BoundaryPoint> xs{inf};
    for (int k = 0; k < 20; ++k) xs.push_back(BoundaryPoint::finite(x(rng)));
    for (const auto& g : enumerate_ball(spec.with_depth(2))) {
      if (classify_isometry(g) == IsometryClass::identity) continue;
      const auto [p, q] = fixed_points(g);
      xs.push_back(p);
      xs.push_back(q);
    }
    for (const auto& xi : xs) {
      ++points;
      if (classify_boundary_point(spec, xi, spec.max_word_length).verdict == LimitVerdict::irregular_evidence)
        ++irregular;
    }
  }
  const bool ok = par_ok && hyp_ok && irregular == 0;
  return {ok, std::string("parabolic witness ") + (par_ok ? "ok" : "missing") + ", lambda 4 " +
                  (hyp_ok ? "ok" : "wrong") + ", irregular " + std::to_string(irregular) + " of " +
                  std::to_string(points) + " points"};
}

Result dichotomy_pipeline() {
  const auto start = std::chrono::steady_clock::now();
  const HeightBand band{0.5, 2.0};
  const auto par = run_dichotomy(presets::cyclic_parabolic().with_depth(10), UnitTangent::base(), band);
  const bool par_ok = par.verdict == DichotomyVerdict::recurrence_evidence && par.busemann_limit.converged &&
                      std::abs(par.busemann_limit.real_limit()) < 1e-9;
  const auto hyp = run_dichotomy(presets::cyclic_hyperbolic(4.0).with_depth(10), UnitTangent::base(), band);
  const bool hyp_ok = hyp.verdict == DichotomyVerdict::inconclusive && hyp.note.rfind("NoSequenceFound", 0) == 0;

  std::vector<GroupElement> elements;
  for (int n = 1; n <= 20; ++n) {
    const double c = std::pow(2.0, -2 * n), d = 2.0 + c, b = n;
    elements.push_back({Mobius::from_coefficients((1.0 + b * c) / d, b, c, d), {n}});
  }
  const auto syn = diagnose_sequence(presets::cyclic_parabolic(), SequenceCandidate::from_elements(elements),
                                     kDefaultEps);
  const double t_err = syn.t ? std::abs(*syn.t - std::log(4.0)) : INFINITY;
  const bool syn_ok = syn.verdict == DichotomyVerdict::non_minimality_evidence && t_err < 1e-6;
  const double elapsed = seconds_since(start);
  const bool ok = par_ok && hyp_ok && syn_ok && elapsed < 60.0;
  return {ok, "parabolic " + to_string(par.verdict) + " |t| " +
                  fmt("%.3g", par.busemann_limit.limit ? std::abs(par.busemann_limit.real_limit()) : INFINITY) +
                  ", hyperbolic " + to_string(hyp.verdict) + ", synthetic t - ln 4 " + fmt("%.3g", t_err) +
                  ", " + fmt("%.2f", elapsed) + " s"};
}

Result substitution_check() {
  const VerifyReport rep = run_identity_suite(1, kSeed, 1e-9, 1000);
  const auto& sub = rep.substitution;
  const bool ok = sub.passed && sub.samples >= 1000 && sub.matching == "ln|b|" && sub.abs_b_max_residual < 1e-9;
  return {ok, "t = ln|b| " + fmt("%.3g", sub.abs_b_max_residual) + ", t = ln(b^2) " +
                  fmt("%.3g", sub.b_squared_max_residual) + ", matching " + sub.matching};
}

Result determinism() {
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--samples", "1000", "--seed", "9"},
      {"classify", "--group", kExamples + "/schottky.json", "--point", "0.7"},
      {"orbit", "--frame", "2", "1", "1", "1", "--flow", "geodesic", "--tmax", "5"},
      {"inj", "--group", kExamples + "/mixed.json", "--tmax", "6", "--step", "0.2"},
      {"diagnose", "--group", kExamples + "/mixed.json"}};
  auto invoke = [](std::vector<std::string> args) {
    args.insert(args.begin(), "horoflow");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(status) + "\n" + out.str();
  };
  std::size_t identical = 0;
  for (const auto& cmd : commands) {
    ::setenv("HOROFLOW_THREADS", "1", 1);
    const std::string a = invoke(cmd);
    ::setenv("HOROFLOW_THREADS", "8", 1);
    const std::string b = invoke(cmd);
    if (a == b && a.rfind("0\n", 0) == 0) ++identical;
  }
  ::unsetenv("HOROFLOW_THREADS");
  return {identical == commands.size(),
          std::to_string(identical) + " of " + std::to_string(commands.size()) + " subcommands byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
      {"identity suite", identity_suite},
      {"cross-ratio and angles", cross_ratio_and_angles},
      {"busemann cocycle", busemann_laws},
      {"fixed points", fixed_points_suite},
      {"flow laws", flow_laws},
      {"classification", classification},
      {"dichotomy pipeline", dichotomy_pipeline},
      {"displacement substitution", substitution_check},
      {"determinism", determinism}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Result r{false, ""};
    try {
      r = criteria[k].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    if (!r.passed) ++failures;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", r.passed ? "PASS" : "FAIL", k + 1,
                criteria[k].first.c_str(), r.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
