#include "horoflow/limit_points.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "horoflow/parallel.hpp"

namespace horoflow {

std::string to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::horocyclic_evidence: return "horocyclic-evidence";
    case LimitVerdict::discrete_evidence: return "discrete-evidence";
    case LimitVerdict::parabolic: return "parabolic";
    case LimitVerdict::irregular_evidence: return "irregular-evidence";
    case LimitVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

void require_depth(const GroupSpec& spec, int depth) {
  if (depth < 0) throw InvalidArgument("depth must be nonnegative");
  if (depth > spec.max_word_length)
    throw InvalidArgument("depth exceeds the spec's max_word_length");
}

// Orbit of i under the identity followed by the ball, in xi-normalized
// coordinates, with the word length of each point.
struct OrbitSample {
  std::vector<NormalizedOrbitPoint> points;
  std::vector<char> resolved;
  std::vector<GroupElement> ball;
};

OrbitSample sample_orbit(const GroupSpec& spec, const BoundaryPoint& xi, int depth,
                         double resolution) {
  OrbitSample out;
  out.ball = enumerate_ball(spec.with_depth(depth));
  const Mobius sigma = send_to_infinity(xi);
  const double floor = xi.is_finite() ? resolution * std::max(1.0, std::abs(xi.value())) : 0.0;
  out.points.resize(out.ball.size() + 1);
  out.resolved.resize(out.ball.size() + 1, 1);
  parallel_for(out.points.size(), [&](std::size_t k) {
    // Map the orbit point first: the product sigma * g cancels to a zero row
    // once g(i) is closer to xi than xi's own rounding.
    const PointH z = k == 0 ? PointH::i() : apply(out.ball[k - 1].matrix, PointH::i());
    const PointH q = apply(sigma, z);
    if (xi.is_finite()) out.resolved[k] = std::abs(z.as_complex() - xi.value()) > floor;
    out.points[k] = {std::abs(q.as_complex()), q.im(),
                     k == 0 ? 0 : static_cast<int>(out.ball[k - 1].word.size())};
  });
  return out;
}

bool grew(double now, double before) { return now > before * (1.0 + 1e-12); }

}  // namespace

std::vector<double> orbit_heights(const GroupSpec& spec, const BoundaryPoint& xi, int depth) {
  require_depth(spec, depth);
  const auto sample = sample_orbit(spec, xi, depth, ClassificationParams{}.resolution);
  std::vector<double> heights;
  heights.reserve(sample.points.size());
  for (const auto& p : sample.points) heights.push_back(p.height);
  std::sort(heights.begin(), heights.end(), std::greater<>());
  return heights;
}

std::optional<double> detect_height_accumulation(std::vector<NormalizedOrbitPoint> points,
                                                 double escape_radius, double floor,
                                                 const ClassificationParams& params) {
  std::vector<double> heights;
  for (const auto& p : points)
    if (p.modulus > escape_radius && p.height >= floor && p.height > 0.0) heights.push_back(p.height);
  std::sort(heights.begin(), heights.end(), std::greater<>());

  // Distinct values only; equal heights do not make a non-constant sequence.
  std::vector<double> distinct;
  for (double h : heights)
    if (distinct.empty() || distinct.back() - h > 1e-12 * distinct.back()) distinct.push_back(h);

  const auto need = static_cast<std::size_t>(params.accum_count);
  if (need == 0 || distinct.size() < need) return std::nullopt;
  for (std::size_t lo = 0; lo + need <= distinct.size(); ++lo) {
    const std::size_t hi = lo + need - 1;
    if (distinct[lo] - distinct[hi] <= params.accum_window * distinct[lo]) {
      double sum = 0.0;
      for (std::size_t k = lo; k <= hi; ++k) sum += distinct[k];
      return sum / static_cast<double>(need);
    }
  }
  return std::nullopt;
}

LimitPointEvidence classify_boundary_point(const GroupSpec& spec, const BoundaryPoint& xi,
                                           int depth, const ClassificationParams& params) {
  require_depth(spec, depth);
  LimitPointEvidence ev;
  ev.point = xi;
  ev.depth = depth;

  const auto sample = sample_orbit(spec, xi, depth, params.resolution);

  ev.resolved_depth = depth;
  for (std::size_t k = 0; k < sample.points.size(); ++k)
    if (!sample.resolved[k]) ev.resolved_depth = std::min(ev.resolved_depth, sample.points[k].length - 1);
  const int top = ev.resolved_depth;

  ev.sup_by_depth.assign(static_cast<std::size_t>(top) + 1, 0.0);
  double escape_base = 0.0;
  std::vector<NormalizedOrbitPoint> usable;
  for (const auto& p : sample.points) {
    if (p.length > top) continue;
    const auto len = static_cast<std::size_t>(p.length);
    ev.sup_by_depth[len] = std::max(ev.sup_by_depth[len], p.height);
    if (len <= 1) escape_base = std::max(escape_base, p.modulus);
    usable.push_back(p);
  }
  for (std::size_t d = 1; d < ev.sup_by_depth.size(); ++d)
    ev.sup_by_depth[d] = std::max(ev.sup_by_depth[d], ev.sup_by_depth[d - 1]);
  ev.sup_height = ev.sup_by_depth.back();

  for (const auto& g : sample.ball) {
    if (classify_isometry(g) != IsometryClass::parabolic) continue;
    if (chordal_distance(apply_boundary(g.matrix, xi), xi) <= params.fixed_tol) {
      ev.parabolic_witness = g;
      ev.verdict = LimitVerdict::parabolic;
      return ev;
    }
  }

  const auto& sup = ev.sup_by_depth;
  const int run = params.consecutive_increases;
  // The unbounded-height rule applied to the profile truncated at depth t.
  auto unbounded_at = [&](int t) {
    if (t < std::max(1, run)) return false;
    for (int step = 0; step < run; ++step) {
      const auto d = static_cast<std::size_t>(t - step);
      if (!grew(sup[d], sup[d - 1])) return false;
    }
    return sup[static_cast<std::size_t>(t)] > params.unbounded_factor * sup[1];
  };
  if (unbounded_at(top)) {
    ev.verdict = LimitVerdict::horocyclic_evidence;
    return ev;
  }

  const bool bounded = top >= 1 && !grew(sup.back(), sup[sup.size() - 2]);
  // Evidence that flips from unbounded to bounded is not evidence of either.
  bool flipped = false;
  for (int t = 1; t < top; ++t) flipped = flipped || unbounded_at(t);
  if (!bounded || flipped) {
    ev.verdict = LimitVerdict::inconclusive;
    return ev;
  }

  const double floor = params.accum_fraction * ev.sup_height;
  const double escape_radius = params.escape_factor * escape_base;
  std::vector<int> fresh(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& p : usable)
    if (p.modulus > escape_radius && p.height >= floor && p.height > 0.0)
      ++fresh[static_cast<std::size_t>(p.length)];

  if (fresh.back() == 0) {
    ev.verdict = LimitVerdict::discrete_evidence;
    return ev;
  }
  bool persistent = top >= run;
  for (int step = 0; persistent && step < run; ++step)
    persistent = fresh[static_cast<std::size_t>(top - step)] > 0;
  if (persistent) ev.height_accumulation = detect_height_accumulation(usable, escape_radius, floor, params);
  ev.verdict = ev.height_accumulation ? LimitVerdict::irregular_evidence : LimitVerdict::inconclusive;
  return ev;
}

}  // namespace horoflow
