#include "horoflow/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "horoflow/parallel.hpp"

namespace horoflow {

void HeightBand::validate() const {
  if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper))
    throw InvalidArgument("height band needs 0 < lower < upper");
}

// ---------------------------------------------------------------------------
// Sequence candidates

SequenceCandidate SequenceCandidate::from_elements(std::vector<GroupElement> elements,
                                                   HeightBand band) {
  SequenceCandidate seq;
  seq.height_band = band;
  seq.elements = std::move(elements);
  for (const auto& g : seq.elements) {
    seq.heights.push_back(apply(g.matrix, PointH::i()).im());
    seq.endpoint_images.push_back(apply_boundary(g.matrix, BoundaryPoint::infinity()));
    seq.coefficients.push_back(g.matrix.coefficients());
  }
  seq.heights_constant =
      std::all_of(seq.heights.begin(), seq.heights.end(), [&](double h) {
        return std::abs(h - seq.heights.front()) <= 1e-12 * seq.heights.front();
      });
  return seq;
}

SequenceCandidate SequenceCandidate::from_elements(std::vector<GroupElement> elements) {
  HeightBand band{0.0, 0.0};
  bool first = true;
  for (const auto& g : elements) {
    const double h = apply(g.matrix, PointH::i()).im();
    band.lower = first ? h : std::min(band.lower, h);
    band.upper = first ? h : std::max(band.upper, h);
    first = false;
  }
  return from_elements(std::move(elements), band);
}

SequenceCandidate SequenceCandidate::inverted() const {
  std::vector<GroupElement> inv;
  inv.reserve(elements.size());
  for (const auto& g : elements) inv.push_back(inverse(g));
  return from_elements(std::move(inv));
}

double ConvergenceVerdict::real_limit() const {
  if (!limit || !std::holds_alternative<double>(*limit))
    throw InvalidArgument("verdict carries no real limit");
  return std::get<double>(*limit);
}

// ---------------------------------------------------------------------------
// Settle rules

namespace {

bool tail_below(const std::vector<double>& residuals, const SettleRule& rule) {
  if (rule.window_count == 0 || residuals.size() < rule.window_count) return false;
  return std::all_of(residuals.end() - static_cast<std::ptrdiff_t>(rule.window_count),
                     residuals.end(), [&](double r) { return r < rule.eps; });
}

// Strictly increasing over the last window and ending above factor x the
// first term: the finite surrogate for divergence to infinity.
bool diverging(const std::vector<double>& magnitudes, std::size_t window, double factor = 10.0) {
  if (magnitudes.size() < window + 1 || window == 0) return false;
  for (std::size_t k = magnitudes.size() - window; k < magnitudes.size(); ++k)
    if (!(magnitudes[k] > magnitudes[k - 1])) return false;
  return magnitudes.back() > factor * magnitudes.front();
}

}  // namespace

ConvergenceVerdict settle_real(const std::vector<double>& values, const SettleRule& rule) {
  ConvergenceVerdict v;
  for (std::size_t k = 1; k < values.size(); ++k)
    v.residuals.push_back(std::abs(values[k] - values[k - 1]));
  if (values.empty()) return v;
  v.limit = values.back();
  v.converged = tail_below(v.residuals, rule) && std::abs(values.back()) <= 1.0 / rule.eps;
  return v;
}

ConvergenceVerdict settle_to(const std::vector<double>& values, double target,
                             const SettleRule& rule) {
  ConvergenceVerdict v;
  for (double x : values) v.residuals.push_back(std::abs(x - target));
  v.converged = tail_below(v.residuals, rule);
  if (v.converged) v.limit = target;
  return v;
}

ConvergenceVerdict settle_boundary(const std::vector<BoundaryPoint>& values,
                                   const BoundaryPoint& target, const SettleRule& rule) {
  ConvergenceVerdict v;
  for (const auto& x : values) v.residuals.push_back(chordal_distance(x, target));
  v.converged = tail_below(v.residuals, rule);
  if (v.converged) v.limit = target;
  return v;
}

// ---------------------------------------------------------------------------
// Sequence extraction

SequenceCandidate find_bounded_escaping_sequence(const GroupSpec& spec, HeightBand band,
                                                 std::size_t min_length) {
  return find_bounded_escaping_sequence(enumerate_ball(spec), band, min_length);
}

SequenceCandidate find_bounded_escaping_sequence(const std::vector<GroupElement>& ball,
                                                 HeightBand band, std::size_t min_length) {
  band.validate();
  struct Entry {
    long long modulus_key;
    double modulus;
    const GroupElement* element;
  };
  std::vector<Entry> entries;
  for (const auto& g : ball) {
    const PointH p = apply(g.matrix, PointH::i());
    if (p.im() < band.lower || p.im() > band.upper) continue;
    const double modulus = std::abs(p.as_complex());
    // Moduli equal to ~1e-9 relative are ties, broken by shortlex word.
    entries.push_back({std::llround(std::log(modulus) * 1e9), modulus, &g});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& l, const Entry& r) {
    if (l.modulus_key != r.modulus_key) return l.modulus_key < r.modulus_key;
    return shortlex_less(l.element->word, r.element->word);
  });

  std::vector<GroupElement> chosen;
  double last = -1.0;
  for (const auto& e : entries) {
    if (!chosen.empty() && !(e.modulus > last * (1.0 + 1e-9))) continue;
    chosen.push_back(*e.element);
    last = e.modulus;
  }
  if (chosen.size() < min_length) throw NoSequenceFound(chosen.size(), min_length);
  return SequenceCandidate::from_elements(std::move(chosen), band);
}

// ---------------------------------------------------------------------------
// Coefficient asymptotics

double displacement_closed_form(const Mobius& m, double t) {
  const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
  const double radicand = b * b * std::exp(-2.0 * t) + c * c * std::exp(2.0 * t) + d * d + a * a - 2.0;
  return 2.0 * std::asinh(std::sqrt(std::max(0.0, radicand)) / 2.0);
}

CoefficientReport check_coefficient_asymptotics(const SequenceCandidate& seq,
                                                const SettleRule& rule) {
  if (seq.elements.empty()) throw InvalidArgument("coefficient report needs a nonempty sequence");
  CoefficientReport rep;
  std::vector<double> abs_a;
  for (const auto& k : seq.coefficients) {
    rep.a.push_back(k[0]);
    rep.b.push_back(k[1]);
    rep.c.push_back(k[2]);
    rep.d.push_back(k[3]);
    abs_a.push_back(std::abs(k[0]));
  }
  rep.a_diverges = diverging(abs_a, rule.window_count);
  rep.c_limit = settle_to(rep.c, 0.0, rule);
  rep.c_limit_zero = rep.c_limit.converged;
  rep.d_limit = settle_real(rep.d, rule);

  rep.min_cd_norm = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rep.c.size(); ++k)
    rep.min_cd_norm = std::min(rep.min_cd_norm, rep.c[k] * rep.c[k] + rep.d[k] * rep.d[k]);
  rep.cd_bound = 1.0 / seq.height_band.upper;
  rep.cd_bound_holds = rep.min_cd_norm >= rep.cd_bound * (1.0 - 1e-12);

  auto& probe = rep.displacement;
  for (std::size_t k = 0; k < seq.elements.size(); ++k) {
    const Mobius& m = seq.elements[k].matrix;
    if (m.b() == 0.0) continue;
    const double a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double closed =
        2.0 * std::asinh(std::sqrt(std::max(0.0, b * b * c * c + d * d + a * a - 1.0)) / 2.0);
    const double t = std::log(std::abs(b));
    const PointH x(0.0, std::exp(t));
    const double measured = dist(x, apply(m, x));
    const double t_sq = std::log(b * b);
    const PointH x_sq(0.0, std::exp(t_sq));
    const double measured_sq = dist(x_sq, apply(m, x_sq));

    probe.indices.push_back(k);
    probe.times.push_back(t);
    probe.distances.push_back(measured);
    probe.closed_form.push_back(closed);
    probe.squared_times.push_back(t_sq);
    probe.squared_time_distances.push_back(measured_sq);
    const double scale = std::max(1.0, closed);
    probe.max_residual = std::max(probe.max_residual, std::abs(measured - closed) / scale);
    probe.squared_time_max_residual =
        std::max(probe.squared_time_max_residual, std::abs(measured_sq - closed) / scale);
  }
  probe.diverges = diverging(probe.distances, rule.window_count);
  return rep;
}

// ---------------------------------------------------------------------------
// Limit conditions

ConvergenceVerdict test_Tu_membership(const GroupSpec& spec, const UnitTangent& u,
                                      const GroupElement& alpha, const SequenceCandidate& seq,
                                      double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  ConvergenceVerdict v;
  std::vector<Mobius> matrices;
  for (const auto& g : seq.elements) matrices.push_back(g.matrix);
  const bool has_identity = std::any_of(matrices.begin(), matrices.end(), [&](const Mobius& m) {
    return m.is_identity(spec.dedup_tol);
  });
  if (matrices.size() < 2 || has_identity || !pairwise_distinct(matrices, spec.dedup_tol)) {
    v.degenerate = true;
    return v;
  }

  const BoundaryPoint xi = u.forward_endpoint();
  const BoundaryPoint target = apply_boundary(alpha.matrix, xi);
  const PointH alpha_inv_i = apply(alpha.matrix.inverse(), PointH::i());

  std::vector<double> b_values;
  std::vector<double> endpoint_gap;
  for (const auto& m : matrices) {
    b_values.push_back(busemann(xi, apply(m.inverse(), PointH::i()), alpha_inv_i));
    endpoint_gap.push_back(chordal_distance(apply_boundary(m, xi), target));
  }
  for (std::size_t k = 1; k < b_values.size(); ++k)
    v.residuals.push_back(std::max(endpoint_gap[k], std::abs(b_values[k] - b_values[k - 1])));
  v.limit = b_values.back();
  v.converged = tail_below(v.residuals, SettleRule{eps, kWindowCount}) &&
                std::abs(b_values.back()) <= 1.0 / eps;
  return v;
}

RecurrenceVerdict test_recurrence(const GroupSpec& spec, const UnitTangent& u,
                                  const SequenceCandidate& seq, double eps) {
  RecurrenceVerdict out;
  out.criterion = test_Tu_membership(spec, u, GroupElement{Mobius::identity(), {}}, seq, eps);
  out.recurrent = out.criterion.converged && std::abs(out.criterion.real_limit()) < eps;
  return out;
}

std::string to_string(DichotomyVerdict v) {
  switch (v) {
    case DichotomyVerdict::recurrence_evidence: return "recurrence-evidence";
    case DichotomyVerdict::non_minimality_evidence: return "non-minimality-evidence";
    case DichotomyVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

DiagnosticsReport diagnose_sequence(const GroupSpec& spec, const SequenceCandidate& seq,
                                    double eps, const std::vector<GroupElement>& alphas) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const SettleRule rule{eps, kWindowCount};
  const UnitTangent base = UnitTangent::base();

  DiagnosticsReport rep;
  rep.sequence = seq;
  rep.coefficients = check_coefficient_asymptotics(seq, rule);

  const SequenceCandidate inv = seq.inverted();
  rep.inverse_endpoint_limit = settle_boundary(inv.endpoint_images, BoundaryPoint::infinity(), rule);
  rep.busemann_limit = test_Tu_membership(spec, base, GroupElement{Mobius::identity(), {}}, inv, eps);

  if (rep.busemann_limit.converged) {
    const double t = rep.busemann_limit.real_limit();
    if (std::abs(t) < eps) {
      rep.verdict = DichotomyVerdict::recurrence_evidence;
    } else {
      rep.verdict = DichotomyVerdict::non_minimality_evidence;
      rep.t = t;
    }
  } else if (rep.busemann_limit.degenerate) {
    rep.note = "sequence has repeated or identity elements";
  } else {
    rep.note = "limit conditions did not settle within the sequence";
  }

  std::vector<std::optional<double>> found(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t k) {
    const auto v = test_Tu_membership(spec, base, alphas[k], inv, eps);
    if (v.converged && std::abs(v.real_limit()) >= eps) found[k] = v.real_limit();
  });
  std::vector<double> times;
  if (rep.t) times.push_back(*rep.t);
  for (const auto& f : found)
    if (f) times.push_back(*f);
  std::sort(times.begin(), times.end());
  for (double t : times)
    if (rep.candidate_times.empty() || t - rep.candidate_times.back() >= eps)
      rep.candidate_times.push_back(t);
  return rep;
}

DiagnosticsReport run_dichotomy(const GroupSpec& spec, const UnitTangent& u, HeightBand band,
                                double eps, int alpha_depth) {
  band.validate();
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  GroupSpec normalized = spec;
  bool conjugated = false;
  if (!u.frame().is_identity(0.0)) {
    normalized = spec.conjugated(u.frame());
    conjugated = true;
  }

  const auto ball = enumerate_ball(normalized);
  std::vector<GroupElement> alphas;
  for (const auto& g : ball)
    if (static_cast<int>(g.word.size()) <= alpha_depth) alphas.push_back(g);

  DiagnosticsReport rep;
  try {
    const auto seq = find_bounded_escaping_sequence(ball, band);
    rep = diagnose_sequence(normalized, seq, eps, alphas);
  } catch (const NoSequenceFound& e) {
    rep = DiagnosticsReport{};
    rep.verdict = DichotomyVerdict::inconclusive;
    rep.note = std::string("NoSequenceFound: ") + e.what();
  }
  rep.conjugated = conjugated;
  return rep;
}

}  // namespace horoflow
