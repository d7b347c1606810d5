#include "horoflow/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <unordered_map>

namespace horoflow {

void GroupSpec::validate() const {
  if (generators.empty()) throw InvalidArgument("group spec needs at least one generator");
  if (max_word_length < 0) throw InvalidArgument("max_word_length must be nonnegative");
  if (!(dedup_tol > 0.0)) throw InvalidArgument("dedup_tol must be positive");
  for (std::size_t k = 0; k < generators.size(); ++k)
    if (generators[k].is_identity(dedup_tol))
      throw InvalidGenerator("generator " + std::to_string(k) + " is the identity");
}

GroupSpec GroupSpec::conjugated(const Mobius& h) const {
  GroupSpec out = *this;
  const Mobius h_inv = h.inverse();
  for (auto& g : out.generators) g = h_inv * g * h;
  return out;
}

GroupSpec GroupSpec::with_depth(int depth) const {
  GroupSpec out = *this;
  out.max_word_length = depth;
  return out;
}

std::string to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::identity: return "identity";
    case IsometryClass::hyperbolic: return "hyperbolic";
    case IsometryClass::parabolic: return "parabolic";
    case IsometryClass::elliptic: return "elliptic";
  }
  return "unknown";
}

namespace {

const Mobius& letter_matrix(const std::vector<Mobius>& gens, const std::vector<Mobius>& invs,
                            int letter) {
  const auto idx = static_cast<std::size_t>(std::abs(letter) - 1);
  return letter > 0 ? gens.at(idx) : invs.at(idx);
}

// Grid cells of side dedup_tol. A lookup probes the nearest cell and its
// neighbour on the near side in every coordinate, then confirms by direct
// comparison, so points straddling a cell face still collapse.
class MatrixIndex {
 public:
  explicit MatrixIndex(double tol) : tol_(tol) {}

  std::size_t size() const { return count_; }

  bool contains(const Mobius& m) const {
    const Coeffs& v = m.coefficients();
    return probe(v) || probe(Coeffs{-v[0], -v[1], -v[2], -v[3]});
  }

  void insert(const Mobius& m) {
    cells_.emplace(cell_of(m.coefficients()), m);
    ++count_;
  }

 private:
  using Coeffs = std::array<double, 4>;

  struct CellHash {
    std::size_t operator()(const Coeffs& c) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (double v : c) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h = (h ^ bits) * 1099511628211ull;
      }
      return h;
    }
  };

  Coeffs cell_of(const Coeffs& v) const {
    Coeffs out;
    // + 0.0 folds -0.0 into +0.0 so both hash alike.
    for (int k = 0; k < 4; ++k) out[k] = std::nearbyint(v[k] / tol_) + 0.0;
    return out;
  }

  bool probe(const Coeffs& v) const {
    const Coeffs base = cell_of(v);
    Coeffs side;
    for (int k = 0; k < 4; ++k) side[k] = (v[k] / tol_ >= base[k]) ? 1.0 : -1.0;
    for (unsigned mask = 0; mask < 16; ++mask) {
      Coeffs cell = base;
      for (int k = 0; k < 4; ++k)
        if (mask & (1u << k)) cell[k] += side[k];
      auto [lo, hi] = cells_.equal_range(cell);
      for (auto it = lo; it != hi; ++it) {
        double diff = 0.0;
        const auto& c = it->second.coefficients();
        for (int k = 0; k < 4; ++k) diff = std::max(diff, std::abs(c[k] - v[k]));
        if (diff <= tol_) return true;
      }
    }
    return false;
  }

  double tol_;
  std::size_t count_ = 0;
  std::unordered_multimap<Coeffs, Mobius, CellHash> cells_;
};

}  // namespace

Mobius evaluate_word(const std::vector<Mobius>& generators, const Word& word) {
  Mobius out;
  for (int letter : word) {
    if (letter == 0 || static_cast<std::size_t>(std::abs(letter)) > generators.size())
      throw InvalidArgument("word letter out of range");
    const Mobius& g = generators[static_cast<std::size_t>(std::abs(letter) - 1)];
    out = out * (letter > 0 ? g : g.inverse());
  }
  return out;
}

int letter_rank(int letter) noexcept { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

bool shortlex_less(const Word& lhs, const Word& rhs) noexcept {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return std::lexicographical_compare(
      lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
      [](int x, int y) { return letter_rank(x) < letter_rank(y); });
}

std::vector<GroupElement> enumerate_ball(const GroupSpec& spec) {
  spec.validate();
  std::vector<GroupElement> ball;
  if (spec.max_word_length == 0) return ball;

  const auto n = static_cast<int>(spec.generators.size());
  std::vector<Mobius> inverses;
  inverses.reserve(spec.generators.size());
  for (const auto& g : spec.generators) inverses.push_back(g.inverse());

  std::vector<int> letters;
  for (int k = 1; k <= n; ++k) {
    letters.push_back(k);
    letters.push_back(-k);
  }

  MatrixIndex index(spec.dedup_tol);
  index.insert(Mobius::identity());

  std::vector<GroupElement> frontier{GroupElement{Mobius::identity(), {}}};
  for (int len = 1; len <= spec.max_word_length && !frontier.empty(); ++len) {
    std::vector<GroupElement> next;
    for (const auto& elem : frontier) {
      for (int letter : letters) {
        if (!elem.word.empty() && elem.word.back() == -letter) continue;
        Mobius product = elem.matrix * letter_matrix(spec.generators, inverses, letter);
        if (index.contains(product)) continue;
        index.insert(product);
        if (index.size() - 1 > spec.ball_cap) throw BallTooLarge(spec.ball_cap);
        Word word = elem.word;
        word.push_back(letter);
        next.push_back(GroupElement{product, std::move(word)});
      }
    }
    ball.insert(ball.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return ball;
}

bool pairwise_distinct(const std::vector<Mobius>& matrices, double tol) {
  MatrixIndex index(tol);
  for (const auto& m : matrices) {
    if (index.contains(m)) return false;
    index.insert(m);
  }
  return true;
}

GroupElement inverse(const GroupElement& g) {
  Word word(g.word.rbegin(), g.word.rend());
  for (int& letter : word) letter = -letter;
  return GroupElement{g.matrix.inverse(), std::move(word)};
}

IsometryClass classify_isometry(const Mobius& m, double class_tol) {
  if (m.is_identity(class_tol)) return IsometryClass::identity;
  const double excess = std::abs(m.trace()) - 2.0;
  if (excess > class_tol) return IsometryClass::hyperbolic;
  if (excess < -class_tol) return IsometryClass::elliptic;
  return IsometryClass::parabolic;
}

double fixed_point_residual(const Mobius& m, const BoundaryPoint& p) {
  return std::min(chordal_distance(apply_boundary(m, p), p),
                  chordal_distance(apply_boundary(m.inverse(), p), p));
}

std::pair<BoundaryPoint, BoundaryPoint> fixed_points(const Mobius& m) {
  const IsometryClass cls = classify_isometry(m);
  if (cls == IsometryClass::elliptic)
    throw EllipticElement("elliptic element has no boundary fixed point");
  if (cls == IsometryClass::identity)
    throw InvalidArgument("the identity fixes every boundary point");

  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double scale = std::abs(a) + std::abs(d);
  if (std::abs(c) <= 1e-15 * scale) {
    if (cls == IsometryClass::parabolic)
      return {BoundaryPoint::infinity(), BoundaryPoint::infinity()};
    return {BoundaryPoint::infinity(), BoundaryPoint::finite(b / (d - a))};
  }

  // Roots of c z^2 + (d - a) z - b = 0. The larger-magnitude root is taken
  // from the quadratic formula and the other from X Y = -b / c.
  const double tr = a + d;
  const double disc =
      cls == IsometryClass::parabolic ? 0.0 : std::sqrt(std::max(0.0, tr * tr - 4.0));
  const double p = a - d;
  if (cls == IsometryClass::parabolic) {
    const BoundaryPoint fp = BoundaryPoint::finite(p / (2.0 * c));
    return {fp, fp};
  }
  if (p >= 0.0) {
    const double big = p + disc;
    return {BoundaryPoint::finite(big / (2.0 * c)), BoundaryPoint::finite(-2.0 * b / big)};
  }
  const double big = p - disc;
  return {BoundaryPoint::finite(-2.0 * b / big), BoundaryPoint::finite(big / (2.0 * c))};
}

std::vector<GroupElement> check_elliptic_free(const GroupSpec& spec) {
  std::vector<GroupElement> out;
  for (auto& g : enumerate_ball(spec))
    if (classify_isometry(g) == IsometryClass::elliptic) out.push_back(std::move(g));
  return out;
}

}  // namespace horoflow
