#pragma once

// Recurrence versus non-minimality diagnostics for a horocycle orbit whose
// geodesic ray is normalized to [i, infinity).
//
// The pipeline extracts a sequence g_n with Im g_n(i) in a fixed band and
// |g_n(i)| increasing, reports the asymptotics of its coefficients, and then
// evaluates the two limit conditions
//   (i)  h_n u(inf) -> alpha u(inf)
//   (ii) B_{u(inf)}(h_n^-1 i, alpha^-1 i) -> t
// on h_n = g_n^-1. A settled t = 0 is evidence of recurrence, a settled
// t != 0 is evidence that the orbit closure is not minimal. Everything is
// computed on a finite word ball and is evidence, not proof.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "horoflow/flows.hpp"
#include "horoflow/group.hpp"

namespace horoflow {

inline constexpr double kDefaultEps = 1e-6;
inline constexpr std::size_t kWindowCount = 5;
inline constexpr std::size_t kMinSequenceLength = 8;
inline constexpr int kDefaultAlphaDepth = 2;

struct HeightBand {
  double lower = 0.5;
  double upper = 2.0;
  /// Throws InvalidArgument unless 0 < lower < upper.
  void validate() const;
};

struct SequenceCandidate {
  std::vector<GroupElement> elements;
  std::vector<double> heights;             // Im g_n(i)
  HeightBand height_band;
  std::vector<BoundaryPoint> endpoint_images;  // g_n(inf)
  std::vector<std::array<double, 4>> coefficients;
  /// All heights equal: the sequence does not meet the non-constant clause
  /// and is kept only as a flagged candidate.
  bool heights_constant = false;

  static SequenceCandidate from_elements(std::vector<GroupElement> elements, HeightBand band);
  /// Band taken as [min height, max height].
  static SequenceCandidate from_elements(std::vector<GroupElement> elements);

  SequenceCandidate inverted() const;
  std::size_t size() const noexcept { return elements.size(); }
};

using Limit = std::variant<double, BoundaryPoint>;

struct ConvergenceVerdict {
  bool converged = false;
  std::optional<Limit> limit;
  std::vector<double> residuals;
  /// Input rejected before evaluation (repeated or identity elements).
  bool degenerate = false;

  /// The limit as a real; throws InvalidArgument if absent or a boundary point.
  double real_limit() const;
};

struct SettleRule {
  double eps = kDefaultEps;
  std::size_t window_count = kWindowCount;
};

/// Successive differences as residuals; converged once the last
/// window_count of them are below eps and the last value stays below 1/eps
/// in magnitude. The limit is the last value.
ConvergenceVerdict settle_real(const std::vector<double>& values, const SettleRule& rule = {});
/// Residuals |x_n - target|.
ConvergenceVerdict settle_to(const std::vector<double>& values, double target,
                             const SettleRule& rule = {});
/// Chordal residuals to target; a finite target is reached by magnitude,
/// infinity once |x_n| exceeds about 1/eps.
ConvergenceVerdict settle_boundary(const std::vector<BoundaryPoint>& values,
                                   const BoundaryPoint& target, const SettleRule& rule = {});

/// dist(i e^t, g(i e^t)) probed at t_n = ln|b_n| against the closed form
/// 2 asinh(sqrt(b^2 c^2 + d^2 + a^2 - 1) / 2). The alternative t_n = ln(b_n^2)
/// is evaluated alongside for comparison.
struct DisplacementProbe {
  std::vector<std::size_t> indices;  // sequence positions with b_n != 0
  std::vector<double> times;
  std::vector<double> distances;
  std::vector<double> closed_form;
  double max_residual = 0.0;
  std::vector<double> squared_times;
  std::vector<double> squared_time_distances;
  double squared_time_max_residual = 0.0;
  bool diverges = false;
};

struct CoefficientReport {
  std::vector<double> a, b, c, d;
  bool a_diverges = false;
  ConvergenceVerdict c_limit;  // toward 0
  bool c_limit_zero = false;
  ConvergenceVerdict d_limit;
  double min_cd_norm = 0.0;  // min of c^2 + d^2
  double cd_bound = 0.0;     // 1 / upper band edge
  bool cd_bound_holds = false;
  DisplacementProbe displacement;
};

/// Closed-form displacement of the point i e^t under m.
double displacement_closed_form(const Mobius& m, double t);

SequenceCandidate find_bounded_escaping_sequence(const GroupSpec& spec, HeightBand band,
                                                 std::size_t min_length = kMinSequenceLength);
SequenceCandidate find_bounded_escaping_sequence(const std::vector<GroupElement>& ball,
                                                 HeightBand band,
                                                 std::size_t min_length = kMinSequenceLength);

CoefficientReport check_coefficient_asymptotics(const SequenceCandidate& seq,
                                                const SettleRule& rule = {});

ConvergenceVerdict test_Tu_membership(const GroupSpec& spec, const UnitTangent& u,
                                      const GroupElement& alpha, const SequenceCandidate& seq,
                                      double eps = kDefaultEps);

struct RecurrenceVerdict {
  ConvergenceVerdict criterion;
  bool recurrent = false;
};

RecurrenceVerdict test_recurrence(const GroupSpec& spec, const UnitTangent& u,
                                  const SequenceCandidate& seq, double eps = kDefaultEps);

enum class DichotomyVerdict { recurrence_evidence, non_minimality_evidence, inconclusive };
std::string to_string(DichotomyVerdict v);

struct DiagnosticsReport {
  std::optional<SequenceCandidate> sequence;
  std::optional<CoefficientReport> coefficients;
  ConvergenceVerdict inverse_endpoint_limit;  // g_n^-1(inf) -> inf
  ConvergenceVerdict busemann_limit;          // B_inf(g_n i, i)
  std::vector<double> candidate_times;
  DichotomyVerdict verdict = DichotomyVerdict::inconclusive;
  std::optional<double> t;
  std::string note;
  bool conjugated = false;
};

/// Runs the limit conditions on an already normalized sequence (u is the
/// base vector). alphas feed the search for further members of T_u.
DiagnosticsReport diagnose_sequence(const GroupSpec& spec, const SequenceCandidate& seq,
                                    double eps, const std::vector<GroupElement>& alphas = {});

/// Full pipeline. When u is not the base vector the spec is first
/// conjugated by u's frame so that u becomes the base vector.
DiagnosticsReport run_dichotomy(const GroupSpec& spec, const UnitTangent& u, HeightBand band,
                                double eps = kDefaultEps, int alpha_depth = kDefaultAlphaDepth);

}  // namespace horoflow
