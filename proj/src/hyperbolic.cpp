#include "horoflow/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace horoflow {

namespace detail {
void invariant_breach(const char* what, const char* file, int line) {
  std::fprintf(stderr, "horoflow: internal invariant violated: %s (%s:%d)\n", what, file, line);
  std::abort();
}
}  // namespace detail

PointH::PointH(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0))
    throw InvalidArgument("point of the upper half-plane requires finite coordinates and im > 0");
}

BoundaryPoint BoundaryPoint::finite(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("finite boundary point must be a finite real");
  return BoundaryPoint(x);
}

double BoundaryPoint::value() const {
  if (!value_) throw InvalidArgument("boundary point is infinity");
  return *value_;
}

std::ostream& operator<<(std::ostream& os, const BoundaryPoint& p) {
  if (p.is_infinity()) return os << "inf";
  return os << p.value();
}

double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if (p.is_infinity()) return 1.0 / std::hypot(1.0, q.value());
  if (q.is_infinity()) return 1.0 / std::hypot(1.0, p.value());
  const double x = p.value();
  const double y = q.value();
  return std::abs(x - y) / (std::hypot(1.0, x) * std::hypot(1.0, y));
}

// ---------------------------------------------------------------------------
// Mobius

Mobius Mobius::normalized(double a, double b, double c, double d) {
  const double det = a * d - b * c;
  if (!(det > 0.0) || !std::isfinite(det))
    throw InvalidGenerator("matrix must have positive finite determinant");
  const double s = std::sqrt(det);
  return canonical(a / s, b / s, c / s, d / s);
}

Mobius Mobius::canonical(double a, double b, double c, double d) {
  for (double v : {a, b, c, d}) {
    if (std::abs(v) > kSignTol) {
      if (v < 0.0) {
        a = -a;
        b = -b;
        c = -c;
        d = -d;
      }
      break;
    }
  }
  return Mobius(a, b, c, d);
}

Mobius Mobius::from_coefficients(double a, double b, double c, double d) {
  for (double v : {a, b, c, d})
    if (!std::isfinite(v)) throw InvalidGenerator("matrix coefficients must be finite");
  const double det = a * d - b * c;
  const double scale = std::max(1.0, std::abs(a * d) + std::abs(b * c));
  if (std::abs(det - 1.0) > kDetTol * scale)
    throw InvalidGenerator("matrix determinant " + std::to_string(det) + " is not 1");
  return normalized(a, b, c, d);
}

Mobius Mobius::from_gl2(double a, double b, double c, double d) {
  for (double v : {a, b, c, d})
    if (!std::isfinite(v)) throw InvalidGenerator("matrix coefficients must be finite");
  return normalized(a, b, c, d);
}

Mobius Mobius::diagonal(double t) {
  return normalized(std::exp(t / 2), 0.0, 0.0, std::exp(-t / 2));
}

Mobius Mobius::unipotent(double s) { return Mobius(1.0, s, 0.0, 1.0); }

namespace {

// ad - bc with one rounding (Kahan's fma scheme).
double accurate_det(double a, double b, double c, double d) {
  const double w = b * c;
  const double err = std::fma(-b, c, w);
  return std::fma(a, d, -w) + err;
}

}  // namespace

Mobius Mobius::inverse() const { return canonical(d(), -b(), -c(), a()); }

// Rescales by the accurately computed determinant. Long words have entries
// so large that even that determinant is meaningless; those are only sign
// canonicalized.
Mobius operator*(const Mobius& l, const Mobius& r) {
  const double a = l.a() * r.a() + l.b() * r.c(), b = l.a() * r.b() + l.b() * r.d();
  const double c = l.c() * r.a() + l.d() * r.c(), d = l.c() * r.b() + l.d() * r.d();
  const double det = accurate_det(a, b, c, d);
  if (std::abs(det - 1.0) < 0.5) {
    const double s = std::sqrt(det);
    return Mobius::canonical(a / s, b / s, c / s, d / s);
  }
  return Mobius::canonical(a, b, c, d);
}

double Mobius::distance_to(const Mobius& o) const noexcept {
  double plus = 0.0;
  double minus = 0.0;
  for (int k = 0; k < 4; ++k) {
    plus = std::max(plus, std::abs(m_[k] - o.m_[k]));
    minus = std::max(minus, std::abs(m_[k] + o.m_[k]));
  }
  return std::min(plus, minus);
}

std::ostream& operator<<(std::ostream& os, const Mobius& m) {
  return os << "[[" << m.a() << ", " << m.b() << "], [" << m.c() << ", " << m.d() << "]]";
}

// ---------------------------------------------------------------------------
// Geodesics and horocycles

Geodesic::Geodesic(BoundaryPoint neg, BoundaryPoint pos) : neg_(neg), pos_(pos) {
  if (neg_ == pos_) throw DegeneratePoints("geodesic endpoints coincide");
}

Horocycle Horocycle::through(const BoundaryPoint& base, const PointH& z) {
  return Horocycle{base, busemann(base, PointH::i(), z)};
}

bool Horocycle::contains(const PointH& z, double tol) const {
  return std::abs(busemann(base, PointH::i(), z) - level) <= tol;
}

// ---------------------------------------------------------------------------
// Actions

PointH apply(const Mobius& m, const PointH& z) {
  const std::complex<double> w = z.as_complex();
  const std::complex<double> num = m.a() * w + m.b();
  const std::complex<double> den = m.c() * w + m.d();
  const double den2 = std::norm(den);
  // ad - bc = 1 gives Im = Im z / |cz + d|^2 without cancellation.
  const double re = (num * std::conj(den)).real() / den2;
  const double im = z.im() / den2;
  HOROFLOW_INVARIANT(im > 0.0 && std::isfinite(re));
  return PointH(re, im);
}

BoundaryPoint apply_boundary(const Mobius& m, const BoundaryPoint& x) {
  if (x.is_infinity()) {
    if (m.c() == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(m.a() / m.c());
  }
  const double v = x.value();
  const double den = m.c() * v + m.d();
  const double den_scale = std::abs(m.c() * v) + std::abs(m.d());
  if (std::abs(den) <= 1e-13 * den_scale) return BoundaryPoint::infinity();
  const double out = (m.a() * v + m.b()) / den;
  if (!std::isfinite(out)) return BoundaryPoint::infinity();
  return BoundaryPoint::finite(out);
}

Horocycle apply(const Mobius& m, const Horocycle& h) {
  // The horocycle is the level set through any of its points; push one
  // point along and re-measure.
  const BoundaryPoint base = apply_boundary(m, h.base);
  // height_x(x + i y) = 1 / y and height_x(i) = 1 / (1 + x^2), so the level
  // set passes through x + i (1 + x^2) e^{-level}.
  const PointH on = h.base.is_infinity()
                        ? PointH(0.0, std::exp(h.level))
                        : PointH(h.base.value(),
                                 (1.0 + h.base.value() * h.base.value()) * std::exp(-h.level));
  return Horocycle::through(base, apply(m, on));
}

double dist(const PointH& z, const PointH& w) {
  const double chord = std::abs(z.as_complex() - w.as_complex());
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(z.im() * w.im())));
}

// ---------------------------------------------------------------------------
// Cross-ratio, angles, harmonic conjugates

namespace {

void require_distinct(std::initializer_list<const BoundaryPoint*> pts) {
  for (auto it = pts.begin(); it != pts.end(); ++it)
    for (auto jt = std::next(it); jt != pts.end(); ++jt)
      if (**it == **jt) throw DegeneratePoints("boundary points must be pairwise distinct");
}

// Position on the boundary circle read in increasing order, infinity last.
double circle_key(const BoundaryPoint& p) {
  return p.is_infinity() ? std::numeric_limits<double>::infinity() : p.value();
}

}  // namespace

double cross_ratio(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c,
                   const BoundaryPoint& d) {
  require_distinct({&a, &b, &c, &d});
  if (a.is_infinity()) return (b.value() - d.value()) / (b.value() - c.value());
  if (b.is_infinity()) return (a.value() - c.value()) / (a.value() - d.value());
  if (c.is_infinity()) return (b.value() - d.value()) / (a.value() - d.value());
  if (d.is_infinity()) return (a.value() - c.value()) / (b.value() - c.value());
  const double av = a.value(), bv = b.value(), cv = c.value(), dv = d.value();
  return ((av - cv) * (bv - dv)) / ((av - dv) * (bv - cv));
}

double angle_between(const Geodesic& g1, const Geodesic& g2) {
  const BoundaryPoint& a = g1.neg();
  const BoundaryPoint& b = g1.pos();
  BoundaryPoint c = g2.neg();
  BoundaryPoint d = g2.pos();
  if ((a == c && b == d) || (a == d && b == c))
    throw NoIntersection("identical geodesics have no transverse intersection");
  require_distinct({&a, &b, &c, &d});

  // Walk the circle upward from a; the geodesics cross iff exactly one of
  // c, d lies on the arc from a to b.
  const double ka = circle_key(a);
  // Rank each point by its position after a in the cyclic order.
  auto rank = [ka](const BoundaryPoint& p) {
    const double k = circle_key(p);
    return k > ka ? std::pair<int, double>{0, k} : std::pair<int, double>{1, k};
  };
  const auto rb = rank(b), rc = rank(c), rd = rank(d);
  const bool c_between = rc < rb;
  const bool d_between = rd < rb;
  if (c_between == d_between) throw NoIntersection("geodesics do not cross in the half-plane");
  if (d_between) std::swap(c, d);  // enforce cyclic order a, c, b, d

  const double cos_beta = 2.0 * cross_ratio(a, c, d, b) - 1.0;
  return std::acos(std::clamp(cos_beta, -1.0, 1.0));
}

BoundaryPoint harmonic_conjugate(const BoundaryPoint& y, const BoundaryPoint& x,
                                 const BoundaryPoint& z) {
  require_distinct({&y, &x, &z});
  if (z.is_infinity()) return BoundaryPoint::finite(0.5 * (x.value() + y.value()));
  if (y.is_infinity()) return BoundaryPoint::finite(2.0 * x.value() - z.value());
  if (x.is_infinity()) return BoundaryPoint::finite(2.0 * y.value() - z.value());
  const double yv = y.value(), xv = x.value(), zv = z.value();
  const double p = xv - zv;
  const double q = yv - zv;
  const double den = p + q;
  if (std::abs(den) <= 1e-15 * (std::abs(p) + std::abs(q))) return BoundaryPoint::infinity();
  return BoundaryPoint::finite((yv * p + xv * q) / den);
}

// ---------------------------------------------------------------------------
// Busemann

double height(const BoundaryPoint& xi, const PointH& p) {
  if (xi.is_infinity()) return p.im();
  const double dx = p.re() - xi.value();
  return p.im() / (dx * dx + p.im() * p.im());
}

double busemann(const BoundaryPoint& xi, const PointH& z, const PointH& w) {
  if (xi.is_infinity()) return std::log(w.im() / z.im());
  return std::log(height(xi, w) / height(xi, z));
}

Mobius send_to_infinity(const BoundaryPoint& xi) {
  if (xi.is_infinity()) return Mobius::identity();
  return Mobius::from_coefficients(0.0, -1.0, 1.0, -xi.value());
}

}  // namespace horoflow
