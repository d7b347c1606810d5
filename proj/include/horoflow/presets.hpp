#pragma once

// Shipped group families. Every preset is a finitely generated, geometrically
// finite group; the truncated flute only imitates the geometrically infinite
// flute surfaces by keeping its first few handles, so conclusions drawn from
// it are finite-depth surrogates.

#include <array>
#include <vector>

#include "horoflow/group.hpp"

namespace horoflow::presets {

struct Circle {
  double center = 0.0;
  double radius = 1.0;
};

/// z -> z + translation.
GroupSpec cyclic_parabolic(double translation = 1.0);

/// z -> lambda z, generator (sqrt(lambda), 0, 0, 1/sqrt(lambda)). lambda > 1.
GroupSpec cyclic_hyperbolic(double lambda);

/// Hyperbolic element mapping the exterior of `from` onto the interior of
/// `to`: z -> c2 - r1 r2 / (z - c1).
Mobius circle_pairing(const Circle& from, const Circle& to);

/// Two generators; generator k pairs circles[2k] with circles[2k+1]. The four
/// circles must be pairwise disjoint (ping-pong), which makes the group free.
GroupSpec schottky_pair(const std::array<Circle, 4>& circles);
std::array<Circle, 4> default_schottky_circles();

/// One hyperbolic generator per entry, pairing nested symmetric circles
/// (-s_k, r_k) and (s_k, r_k) with translation length 2 acosh(s_k / r_k).
GroupSpec flute_truncated(const std::vector<double>& translation_lengths);

/// z -> z + period together with a circle pairing inside the strip
/// |Re z| < period / 2; free on the two generators.
GroupSpec parabolic_schottky(double period = 8.0, double center = 2.0, double radius = 1.8);

}  // namespace horoflow::presets
