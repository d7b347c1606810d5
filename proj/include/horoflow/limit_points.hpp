#pragma once

// Finite-depth evidence for the type of a boundary point relative to the
// orbit of i: horocyclic, discrete, parabolic or irregular. Apart from a
// parabolic witness, nothing here is a certificate; verdict names carry the
// "-evidence" suffix to say so.

#include <optional>
#include <string>
#include <vector>

#include "horoflow/group.hpp"

namespace horoflow {

enum class LimitVerdict {
  horocyclic_evidence,
  discrete_evidence,
  parabolic,
  irregular_evidence,
  inconclusive
};

std::string to_string(LimitVerdict v);

struct ClassificationParams {
  /// Unbounded heights: the sup grew over this many consecutive depth
  /// increments and ends above unbounded_factor x the depth-1 sup.
  int consecutive_increases = 3;
  double unbounded_factor = 10.0;
  /// Accumulation in (0, inf): escaping orbit points of height at least
  /// accum_fraction x sup keep appearing at each of the last
  /// consecutive_increases depths, and accum_count distinct ones lie within a
  /// relative window accum_window of each other.
  int accum_count = 5;
  double accum_window = 1e-3;
  double accum_fraction = 0.1;
  /// Cluster members must be escaping toward the point: in coordinates where
  /// the point sits at infinity, their modulus exceeds escape_factor x the
  /// largest modulus over the depth-1 ball.
  double escape_factor = 10.0;
  /// Chordal tolerance for a parabolic witness to fix the point.
  double fixed_tol = 1e-9;
  /// Orbit points closer than resolution x max(1, |xi|) to a finite xi have
  /// no trustworthy height in double precision.
  double resolution = 1e-12;
};

struct LimitPointEvidence {
  BoundaryPoint point = BoundaryPoint::infinity();
  int depth = 0;
  double sup_height = 0.0;
  /// sup of height over word length <= d, for d = 0..resolved_depth
  /// (d = 0 is i).
  std::vector<double> sup_by_depth;
  /// Largest word length whose orbit points are all resolved; the tests run
  /// on this depth. Equals depth unless the orbit crowds xi below rounding.
  int resolved_depth = 0;
  std::optional<double> height_accumulation;
  std::optional<GroupElement> parabolic_witness;
  LimitVerdict verdict = LimitVerdict::inconclusive;
};

/// height_xi(g i) over the identity and the ball of the given depth, in
/// descending order. Throws InvalidArgument if depth > spec.max_word_length.
std::vector<double> orbit_heights(const GroupSpec& spec, const BoundaryPoint& xi, int depth);

LimitPointEvidence classify_boundary_point(const GroupSpec& spec, const BoundaryPoint& xi,
                                           int depth, const ClassificationParams& params = {});

/// Point of the normalized orbit: coordinates in which xi sits at infinity,
/// so that im is height_xi and modulus measures escape toward xi.
struct NormalizedOrbitPoint {
  double modulus = 0.0;
  double height = 0.0;
  int length = 0;  // word length of the group element
};

/// Accumulation test on its own: among points with modulus above
/// escape_radius and height at least floor, returns the mean of the highest
/// cluster of accum_count distinct heights within the relative window.
std::optional<double> detect_height_accumulation(std::vector<NormalizedOrbitPoint> points,
                                                 double escape_radius, double floor,
                                                 const ClassificationParams& params);

}  // namespace horoflow
