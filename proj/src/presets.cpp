#include "horoflow/presets.hpp"

#include <cmath>

namespace horoflow::presets {

namespace {

void require_disjoint(const std::vector<Circle>& circles) {
  for (const auto& c : circles)
    if (!(c.radius > 0.0)) throw InvalidArgument("circle radius must be positive");
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (std::abs(circles[i].center - circles[j].center) <=
          circles[i].radius + circles[j].radius)
        throw InvalidArgument("Schottky circles must be pairwise disjoint");
}

}  // namespace

GroupSpec cyclic_parabolic(double translation) {
  if (translation == 0.0 || !std::isfinite(translation))
    throw InvalidArgument("translation must be a nonzero real");
  GroupSpec spec;
  spec.generators = {Mobius::unipotent(translation)};
  return spec;
}

GroupSpec cyclic_hyperbolic(double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda))
    throw InvalidArgument("cyclic-hyperbolic lambda must exceed 1");
  const double s = std::sqrt(lambda);
  GroupSpec spec;
  spec.generators = {Mobius::from_gl2(s, 0.0, 0.0, 1.0 / s)};
  return spec;
}

Mobius circle_pairing(const Circle& from, const Circle& to) {
  return Mobius::from_gl2(to.center, -from.center * to.center - from.radius * to.radius, 1.0,
                          -from.center);
}

GroupSpec schottky_pair(const std::array<Circle, 4>& circles) {
  require_disjoint({circles.begin(), circles.end()});
  GroupSpec spec;
  spec.generators = {circle_pairing(circles[0], circles[1]),
                     circle_pairing(circles[2], circles[3])};
  return spec;
}

std::array<Circle, 4> default_schottky_circles() {
  return {Circle{-6.0, 1.0}, Circle{6.0, 1.0}, Circle{-2.0, 1.0}, Circle{2.0, 1.0}};
}

GroupSpec flute_truncated(const std::vector<double>& translation_lengths) {
  if (translation_lengths.empty())
    throw InvalidArgument("flute-truncated needs at least one translation length");
  GroupSpec spec;
  std::vector<Circle> circles;
  double outer = 0.0;  // right edge of the previous pair's circle
  for (double ell : translation_lengths) {
    if (!(ell > 0.0) || !std::isfinite(ell))
      throw InvalidArgument("translation lengths must be positive");
    const double shrink = 1.0 / std::cosh(ell / 2.0);  // r / s
    // Inner edge s - r sits at 1.5 x the previous outer edge (1 for the first).
    const double inner = circles.empty() ? 1.0 : 1.5 * outer;
    const double s = inner / (1.0 - shrink);
    const double r = s * shrink;
    const Circle left{-s, r};
    const Circle right{s, r};
    circles.push_back(left);
    circles.push_back(right);
    spec.generators.push_back(circle_pairing(left, right));
    outer = s + r;
  }
  require_disjoint(circles);
  return spec;
}

GroupSpec parabolic_schottky(double period, double center, double radius) {
  if (!(period > 0.0)) throw InvalidArgument("period must be positive");
  if (!(radius > 0.0) || center - radius <= 0.0 || center + radius >= period / 2.0)
    throw InvalidArgument("pairing circles must sit inside the strip and avoid each other");
  GroupSpec spec;
  spec.generators = {Mobius::unipotent(period),
                     circle_pairing(Circle{-center, radius}, Circle{center, radius})};
  return spec;
}

}  // namespace horoflow::presets
