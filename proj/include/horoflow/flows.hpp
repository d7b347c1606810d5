#pragma once

// Geodesic and horocycle flows on the unit tangent bundle of the half-plane,
// and injectivity-radius profiles along geodesic rays.

#include <vector>

#include "horoflow/group.hpp"

namespace horoflow {

inline constexpr double kTailFraction = 0.25;

/// Unit tangent vector, stored as the isometry carrying the base vector
/// (at i, pointing to infinity) onto it.
class UnitTangent {
 public:
  UnitTangent() = default;
  explicit UnitTangent(Mobius frame) : frame_(frame) {}

  /// The base vector: at i, pointing to infinity.
  static UnitTangent base() { return {}; }

  const Mobius& frame() const noexcept { return frame_; }
  PointH base_point() const { return apply(frame_, PointH::i()); }
  BoundaryPoint forward_endpoint() const {
    return apply_boundary(frame_, BoundaryPoint::infinity());
  }
  BoundaryPoint backward_endpoint() const {
    return apply_boundary(frame_, BoundaryPoint::finite(0.0));
  }

 private:
  Mobius frame_;
};

/// Right multiplication by diag(e^{t/2}, e^{-t/2}).
UnitTangent geodesic_flow(const UnitTangent& u, double t);
/// Right multiplication by [[1, s], [0, 1]].
UnitTangent horocycle_flow(const UnitTangent& u, double s);

/// Base point of geodesic_flow(u, t); throws NegativeTime for t < 0.
PointH ray_point(const UnitTangent& u, double t);

struct RayProfile {
  std::vector<double> times;
  /// Half of the minimal displacement over the enumerated ball. The ball is
  /// a subset of the group, so each entry over-estimates the true value.
  std::vector<double> inj_estimates;
  /// min over the last tail_fraction of samples.
  double liminf_estimate = 0.0;
};

/// Samples t = 0, step, 2 step, ... up to t_max inclusive. Throws EmptyBall
/// when the spec's ball has no non-identity element.
RayProfile injectivity_profile(const GroupSpec& spec, const UnitTangent& u, double t_max,
                               double step, double tail_fraction = kTailFraction);

/// Sample times of a profile: floor(t_max / step) + 1 points, with a small
/// slack so that t_max / step landing just below an integer still counts.
std::vector<double> sample_times(double t_start, double t_end, double step);

}  // namespace horoflow
