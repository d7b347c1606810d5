#pragma once

// Finite-depth word balls of a finitely generated Fuchsian group.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "horoflow/hyperbolic.hpp"

namespace horoflow {

inline constexpr double kDedupTol = 1e-9;
inline constexpr double kClassTol = 1e-9;
inline constexpr std::size_t kDefaultBallCap = 2'000'000;
inline constexpr int kDefaultMaxWordLength = 10;

/// Signed, 1-based generator indices: +k is generator k-1, -k its inverse.
using Word = std::vector<int>;

struct GroupSpec {
  std::vector<Mobius> generators;
  int max_word_length = kDefaultMaxWordLength;
  double dedup_tol = kDedupTol;
  std::size_t ball_cap = kDefaultBallCap;

  /// Throws InvalidGenerator / InvalidArgument.
  void validate() const;
  /// Same group, generators conjugated to h^-1 g h.
  GroupSpec conjugated(const Mobius& h) const;
  GroupSpec with_depth(int depth) const;
};

struct GroupElement {
  Mobius matrix;
  Word word;
};

enum class IsometryClass { identity, hyperbolic, parabolic, elliptic };

std::string to_string(IsometryClass c);

/// Product of the word's letters, left to right.
Mobius evaluate_word(const std::vector<Mobius>& generators, const Word& word);

/// Letter order used for lexicographic tie breaks: g1, g1^-1, g2, g2^-1, ...
int letter_rank(int letter) noexcept;
/// Shortlex comparison: word length first, then letters by letter_rank.
bool shortlex_less(const Word& lhs, const Word& rhs) noexcept;

/// Distinct non-identity elements (up to sign, within dedup_tol) of word
/// length <= spec.max_word_length, in shortlex order of their shortest
/// witness. Throws BallTooLarge past spec.ball_cap.
std::vector<GroupElement> enumerate_ball(const GroupSpec& spec);

IsometryClass classify_isometry(const Mobius& m, double class_tol = kClassTol);
inline IsometryClass classify_isometry(const GroupElement& g, double class_tol = kClassTol) {
  return classify_isometry(g.matrix, class_tol);
}

/// Boundary fixed points as the pair (X, Y) with
/// X = (a - d + sqrt(tr^2 - 4)) / 2c and Y = (a - d - sqrt(tr^2 - 4)) / 2c.
/// For c = 0 the pair is (infinity, b / (d - a)), or (infinity, infinity)
/// for translations. Parabolic elements return a double point.
/// Throws EllipticElement, or InvalidArgument for the identity.
std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const Mobius& m);
inline std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const GroupElement& g) {
  return fixed_points(g.matrix);
}

/// Chordal residual of the fixed-point equation at p, taken as the smaller of
/// |m p - p| and |m^-1 p - p|. A repelling fixed point amplifies rounding by
/// the square of the multiplier under m, so only m^-1 measures it fairly.
double fixed_point_residual(const Mobius& m, const BoundaryPoint& p);

/// True when no two matrices agree up to sign within tol.
bool pairwise_distinct(const std::vector<Mobius>& matrices, double tol);

/// Inverse element with the reversed, negated word.
GroupElement inverse(const GroupElement& g);

/// Elliptic elements in the enumerated ball. An empty result is not a
/// certificate of elliptic-freeness.
std::vector<GroupElement> check_elliptic_free(const GroupSpec& spec);

}  // namespace horoflow
