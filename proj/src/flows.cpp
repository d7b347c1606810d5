#include "horoflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "horoflow/parallel.hpp"

namespace horoflow {

UnitTangent geodesic_flow(const UnitTangent& u, double t) {
  return UnitTangent(u.frame() * Mobius::diagonal(t));
}

UnitTangent horocycle_flow(const UnitTangent& u, double s) {
  return UnitTangent(u.frame() * Mobius::unipotent(s));
}

PointH ray_point(const UnitTangent& u, double t) {
  if (t < 0.0) throw NegativeTime("ray parameter must be nonnegative");
  return geodesic_flow(u, t).base_point();
}

std::vector<double> sample_times(double t_start, double t_end, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("step must be positive");
  if (!(t_end > t_start)) throw InvalidArgument("time range must satisfy start < end");
  const auto count = static_cast<std::size_t>(std::floor((t_end - t_start) / step + 1e-9)) + 1;
  std::vector<double> times(count);
  for (std::size_t k = 0; k < count; ++k) times[k] = t_start + static_cast<double>(k) * step;
  return times;
}

RayProfile injectivity_profile(const GroupSpec& spec, const UnitTangent& u, double t_max,
                               double step, double tail_fraction) {
  if (!(t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw InvalidArgument("tail fraction must lie in (0, 1]");
  const auto ball = enumerate_ball(spec);
  if (ball.empty()) throw EmptyBall("injectivity profile needs at least one non-identity element");

  RayProfile profile;
  profile.times = sample_times(0.0, t_max, step);
  profile.inj_estimates.resize(profile.times.size());
  parallel_for(profile.times.size(), [&](std::size_t k) {
    const PointH x = ray_point(u, profile.times[k]);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& g : ball) best = std::min(best, dist(x, apply(g.matrix, x)));
    profile.inj_estimates[k] = 0.5 * best;
  });

  const std::size_t n = profile.times.size();
  const auto tail = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
  profile.liminf_estimate =
      *std::min_element(profile.inj_estimates.end() - static_cast<std::ptrdiff_t>(tail),
                        profile.inj_estimates.end());
  return profile;
}

}  // namespace horoflow
