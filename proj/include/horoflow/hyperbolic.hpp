#pragma once

// Upper half-plane primitives: points, boundary points, unit-determinant
// Mobius maps, distance, cross-ratio, angles and Busemann cocycles.

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>

#include "horoflow/error.hpp"

namespace horoflow {

inline constexpr double kDetTol = 1e-12;
inline constexpr double kSignTol = 1e-12;
inline constexpr double kGeomTol = 1e-9;

/// A point of the upper half-plane. Construction with im <= 0 throws.
class PointH {
 public:
  PointH(double re, double im);

  static PointH i() { return PointH(0.0, 1.0); }
  static PointH from_complex(std::complex<double> z) { return PointH(z.real(), z.imag()); }

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  std::complex<double> as_complex() const noexcept { return {re_, im_}; }

  friend bool operator==(const PointH&, const PointH&) = default;

 private:
  double re_;
  double im_;
};

/// A point of R u {infinity}. Finite points compare exactly.
class BoundaryPoint {
 public:
  static BoundaryPoint finite(double x);
  static BoundaryPoint infinity() noexcept { return BoundaryPoint(); }

  bool is_infinity() const noexcept { return !value_.has_value(); }
  bool is_finite() const noexcept { return value_.has_value(); }
  /// Throws InvalidArgument on the point at infinity.
  double value() const;

  friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

 private:
  BoundaryPoint() = default;
  explicit BoundaryPoint(double x) : value_(x) {}
  std::optional<double> value_;
};

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p);

/// Chordal distance on the boundary circle (stereographic). Bounded by 1,
/// and finite points near infinity are close to infinity. Used for every
/// "within tol" comparison of boundary points.
double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q);

/// An element of PSL(2,R): real unit-determinant matrix [[a, b], [c, d]],
/// stored with the first coefficient of magnitude > kSignTol positive.
class Mobius {
 public:
  Mobius() = default;  // identity

  /// Validates |ad - bc - 1| <= kDetTol (relative to |ad| + |bc|), then
  /// rescales to det 1 and canonicalizes the sign. Throws InvalidGenerator.
  static Mobius from_coefficients(double a, double b, double c, double d);
  /// Accepts any positive determinant and rescales by its square root.
  static Mobius from_gl2(double a, double b, double c, double d);

  static Mobius identity() { return {}; }
  /// diag(e^{t/2}, e^{-t/2}): moves i to i e^t along the vertical geodesic.
  static Mobius diagonal(double t);
  /// [[1, s], [0, 1]]: translation z -> z + s.
  static Mobius unipotent(double s);

  double a() const noexcept { return m_[0]; }
  double b() const noexcept { return m_[1]; }
  double c() const noexcept { return m_[2]; }
  double d() const noexcept { return m_[3]; }
  const std::array<double, 4>& coefficients() const noexcept { return m_; }

  double det() const noexcept { return m_[0] * m_[3] - m_[1] * m_[2]; }
  double trace() const noexcept { return m_[0] + m_[3]; }

  Mobius inverse() const;
  friend Mobius operator*(const Mobius& lhs, const Mobius& rhs);

  /// max-abs coefficient difference, minimized over the sign ambiguity.
  double distance_to(const Mobius& other) const noexcept;
  bool approx_equal(const Mobius& other, double tol) const noexcept {
    return distance_to(other) <= tol;
  }
  bool is_identity(double tol) const noexcept { return approx_equal(Mobius{}, tol); }

 private:
  Mobius(double a, double b, double c, double d) : m_{a, b, c, d} {}
  static Mobius normalized(double a, double b, double c, double d);
  static Mobius canonical(double a, double b, double c, double d);

  std::array<double, 4> m_{1.0, 0.0, 0.0, 1.0};
};

std::ostream& operator<<(std::ostream& os, const Mobius& m);

/// Oriented geodesic from neg to pos. Throws DegeneratePoints if neg == pos.
class Geodesic {
 public:
  Geodesic(BoundaryPoint neg, BoundaryPoint pos);
  const BoundaryPoint& neg() const noexcept { return neg_; }
  const BoundaryPoint& pos() const noexcept { return pos_; }

 private:
  BoundaryPoint neg_;
  BoundaryPoint pos_;
};

/// Level set {z : busemann(base, i, z) = level}.
struct Horocycle {
  BoundaryPoint base;
  double level = 0.0;

  static Horocycle through(const BoundaryPoint& base, const PointH& z);
  bool contains(const PointH& z, double tol = kGeomTol) const;
};

PointH apply(const Mobius& m, const PointH& z);
BoundaryPoint apply_boundary(const Mobius& m, const BoundaryPoint& x);
Horocycle apply(const Mobius& m, const Horocycle& h);

double dist(const PointH& z, const PointH& w);

/// [a; b; c; d] = (a - c)(b - d) / ((a - d)(b - c)); infinite points cancel
/// pairwise against the factor they share. Throws DegeneratePoints.
double cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                   const BoundaryPoint& d);

/// Angle in [0, pi] between two crossing geodesics g1 = (a, b), g2 = (c, d),
/// computed from cos(beta) = 2 [a; c; d; b] - 1 once the endpoints of g2 are
/// swapped, if needed, so that the boundary reads a, c, b, d in increasing
/// cyclic order. Identical geodesics throw NoIntersection, a single shared
/// endpoint throws DegeneratePoints, non-interleaved endpoints throw
/// NoIntersection.
double angle_between(const Geodesic& g1, const Geodesic& g2);

/// Horospherical height of p seen from xi: Im p for infinity,
/// Im p / |p - x|^2 for a finite x.
double height(const BoundaryPoint& xi, const PointH& p);

/// B_xi(z, w) = ln(height_xi(w) / height_xi(z)). With this sign convention
/// B_inf(g(i), i) = ln(c^2 + d^2).
double busemann(const BoundaryPoint& xi, const PointH& z, const PointH& w);

/// The unique beta with [Y; X; beta; Z] = -1. Throws DegeneratePoints.
BoundaryPoint harmonic_conjugate(const BoundaryPoint& y, const BoundaryPoint& x,
                                 const BoundaryPoint& z);

/// Isometry sending xi to infinity: identity for infinity, z -> -1/(z - xi)
/// otherwise. Im of the image equals height_xi of the source point.
Mobius send_to_infinity(const BoundaryPoint& xi);

}  // namespace horoflow
