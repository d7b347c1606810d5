#include "horoflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace horoflow {

Mobius random_mobius(std::mt19937_64& rng, double spread) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> param(-spread, spread);
  const double theta = angle(rng);
  const Mobius rotation =
      Mobius::from_coefficients(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta));
  const double s = param(rng);
  const double x = param(rng);
  return rotation * Mobius::diagonal(s) * Mobius::unipotent(x);
}

bool VerifyReport::all_passed() const {
  return substitution.passed &&
         std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed; });
}

namespace {

double rel(double measured, double expected) {
  return std::abs(measured - expected) / std::max(1.0, std::abs(expected));
}

PointH random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> re(-5.0, 5.0);
  std::uniform_real_distribution<double> log_im(-3.0, 3.0);
  return PointH(re(rng), std::exp(log_im(rng)));
}

BoundaryPoint random_boundary(std::mt19937_64& rng, bool allow_infinity) {
  std::uniform_real_distribution<double> x(-10.0, 10.0);
  if (allow_infinity && std::uniform_int_distribution<int>(0, 7)(rng) == 0)
    return BoundaryPoint::infinity();
  return BoundaryPoint::finite(x(rng));
}

// Four boundary points at least 0.05 apart; every other draw also plants a
// point that m sends to infinity, or infinity itself.
std::array<BoundaryPoint, 4> random_quadruple(std::mt19937_64& rng, const Mobius& m, bool plant) {
  for (;;) {
    std::array<BoundaryPoint, 4> q{random_boundary(rng, false), random_boundary(rng, false),
                                   random_boundary(rng, false), random_boundary(rng, false)};
    if (plant) {
      const auto slot = static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 3)(rng));
      if (m.c() != 0.0 && std::uniform_int_distribution<int>(0, 1)(rng) == 0)
        q[slot] = BoundaryPoint::finite(-m.d() / m.c());
      else
        q[slot] = BoundaryPoint::infinity();
    }
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = i + 1; j < 4 && ok; ++j) {
        if (q[i].is_infinity() || q[j].is_infinity()) continue;
        ok = std::abs(q[i].value() - q[j].value()) >= 0.05;
      }
    if (ok) return q;
  }
}

IdentityCheck run_check(const std::string& name, std::size_t samples, double tol,
                        const std::function<std::optional<double>()>& residual) {
  IdentityCheck check{name, 0, 0.0, false};
  for (std::size_t k = 0; k < samples; ++k) {
    if (auto r = residual()) {
      ++check.samples;
      check.max_residual = std::max(check.max_residual, *r);
    }
  }
  check.passed = check.samples > 0 && check.max_residual < tol;
  return check;
}

}  // namespace

VerifyReport run_identity_suite(std::size_t samples, std::uint64_t seed, double tol,
                                std::size_t substitution_samples) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  VerifyReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.tol = tol;

  // Each check draws from its own stream so adding a check leaves the
  // others' samples unchanged.
  std::uint64_t stream = 0;
  auto next_rng = [&] { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ull + (++stream)); };
  const BoundaryPoint inf = BoundaryPoint::infinity();

  {
    auto rng = next_rng();
    rep.checks.push_back(run_check("im_of_image_of_i", samples, tol, [&]() -> std::optional<double> {
      const Mobius m = random_mobius(rng);
      return rel(apply(m, PointH::i()).im(), 1.0 / (m.c() * m.c() + m.d() * m.d()));
    }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(run_check("re_of_image_of_i", samples, tol, [&]() -> std::optional<double> {
      const Mobius m = random_mobius(rng);
      const double a = m.a(), c = m.c(), d = m.d();
      if (std::abs(c) < 1e-3) return std::nullopt;
      return rel(apply(m, PointH::i()).re(), a / c - d / (c * (c * c + d * d)));
    }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(run_check("image_of_infinity", samples, tol, [&]() -> std::optional<double> {
      const Mobius m = random_mobius(rng);
      if (m.c() == 0.0) return std::nullopt;
      return chordal_distance(apply_boundary(m, inf), BoundaryPoint::finite(m.a() / m.c()));
    }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(
        run_check("inverse_image_of_infinity", samples, tol, [&]() -> std::optional<double> {
          const Mobius m = random_mobius(rng);
          if (m.c() == 0.0) return std::nullopt;
          return chordal_distance(apply_boundary(m.inverse(), inf),
                                  BoundaryPoint::finite(-m.d() / m.c()));
        }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(
        run_check("busemann_of_image_of_i", samples, tol, [&]() -> std::optional<double> {
          const Mobius m = random_mobius(rng);
          return rel(busemann(inf, apply(m, PointH::i()), PointH::i()),
                     std::log(m.c() * m.c() + m.d() * m.d()));
        }));
  }
  {
    auto rng = next_rng();
    std::uniform_real_distribution<double> time(-10.0, 10.0);
    rep.checks.push_back(
        run_check("argsh_displacement", samples, tol, [&]() -> std::optional<double> {
          const Mobius m = random_mobius(rng);
          const double t = time(rng);
          const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
          const double closed = 2.0 * std::asinh(std::sqrt(std::max(
                                          0.0, b * b * std::exp(-2 * t) + c * c * std::exp(2 * t) +
                                                   d * d + a * a - 2.0)) /
                                      2.0);
          const PointH x(0.0, std::exp(t));
          return rel(dist(x, apply(m, x)), closed);
        }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(run_check("distance_isometry", samples, tol, [&]() -> std::optional<double> {
      const Mobius m = random_mobius(rng);
      const PointH z = random_point(rng);
      const PointH w = random_point(rng);
      return rel(dist(apply(m, z), apply(m, w)), dist(z, w));
    }));
  }
  {
    auto rng = next_rng();
    std::size_t draw = 0;
    rep.checks.push_back(
        run_check("cross_ratio_invariance", samples, tol, [&]() -> std::optional<double> {
          const Mobius m = random_mobius(rng);
          const auto q = random_quadruple(rng, m, (draw++ % 2) == 1);
          const double before = cross_ratio(q[0], q[1], q[2], q[3]);
          const double after = cross_ratio(apply_boundary(m, q[0]), apply_boundary(m, q[1]),
                                           apply_boundary(m, q[2]), apply_boundary(m, q[3]));
          return rel(after, before);
        }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(run_check("busemann_cocycle", samples, tol, [&]() -> std::optional<double> {
      const BoundaryPoint xi = random_boundary(rng, true);
      const PointH x = random_point(rng), y = random_point(rng), z = random_point(rng);
      return rel(busemann(xi, x, z), busemann(xi, x, y) + busemann(xi, y, z));
    }));
  }
  {
    auto rng = next_rng();
    rep.checks.push_back(
        run_check("busemann_equivariance", samples, tol, [&]() -> std::optional<double> {
          const Mobius m = random_mobius(rng);
          const BoundaryPoint xi = random_boundary(rng, true);
          const PointH z = random_point(rng), w = random_point(rng);
          return rel(busemann(apply_boundary(m, xi), apply(m, z), apply(m, w)), busemann(xi, z, w));
        }));
  }
  {
    auto rng = next_rng();
    std::uniform_real_distribution<double> x(-10.0, 10.0);
    rep.checks.push_back(
        run_check("harmonic_orthogonality", samples, tol * 10.0, [&]() -> std::optional<double> {
          std::array<double, 3> v{x(rng), x(rng), x(rng)};
          std::sort(v.begin(), v.end());
          if (v[1] - v[0] < 0.05 || v[2] - v[1] < 0.05) return std::nullopt;
          const auto y_pt = BoundaryPoint::finite(v[0]);
          const auto z_pt = BoundaryPoint::finite(v[1]);
          const auto x_pt = BoundaryPoint::finite(v[2]);
          const BoundaryPoint beta = harmonic_conjugate(y_pt, x_pt, z_pt);
          return std::abs(angle_between(Geodesic(y_pt, x_pt), Geodesic(beta, z_pt)) -
                          std::numbers::pi / 2.0);
        }));
  }

  {
    auto rng = next_rng();
    auto& sub = rep.substitution;
    for (std::size_t k = 0; k < substitution_samples; ++k) {
      const Mobius m = random_mobius(rng);
      const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
      if (b == 0.0) continue;
      ++sub.samples;
      const double target = std::sqrt(std::max(0.0, b * b * c * c + d * d + a * a - 1.0));
      // General-t radicand evaluated at each candidate substitution.
      auto radicand_at = [&](double t) {
        return std::sqrt(std::max(
            0.0, b * b * std::exp(-2 * t) + c * c * std::exp(2 * t) + d * d + a * a - 2.0));
      };
      sub.abs_b_max_residual =
          std::max(sub.abs_b_max_residual, rel(radicand_at(std::log(std::abs(b))), target));
      sub.b_squared_max_residual =
          std::max(sub.b_squared_max_residual, rel(radicand_at(std::log(b * b)), target));
    }
    const bool abs_ok = sub.samples > 0 && sub.abs_b_max_residual < tol;
    const bool sq_ok = sub.samples > 0 && sub.b_squared_max_residual < tol;
    sub.matching = abs_ok && sq_ok ? "both" : abs_ok ? "ln|b|" : sq_ok ? "ln(b^2)" : "neither";
    sub.passed = abs_ok;
  }
  return rep;
}

}  // namespace horoflow
