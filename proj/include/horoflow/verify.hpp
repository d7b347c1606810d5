#pragma once

// Seeded numerical audit of the coefficient, distance, cross-ratio and
// Busemann identities the diagnostics rely on.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "horoflow/hyperbolic.hpp"

namespace horoflow {

/// Random element K(theta) A(s) N(x) with theta in [0, 2 pi), s and x in
/// [-spread, spread].
Mobius random_mobius(std::mt19937_64& rng, double spread = 3.0);

struct IdentityCheck {
  std::string name;
  std::size_t samples = 0;
  double max_residual = 0.0;
  bool passed = false;
};

/// Both substitutions for the probe time t_n in the displacement identity,
/// measured against sqrt(b^2 c^2 + d^2 + a^2 - 1).
struct SubstitutionCheck {
  std::size_t samples = 0;
  double abs_b_max_residual = 0.0;      // t = ln|b|
  double b_squared_max_residual = 0.0;  // t = ln(b^2)
  std::string matching;                 // "ln|b|", "ln(b^2)", "both" or "neither"
  bool passed = false;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double tol = 0.0;
  std::vector<IdentityCheck> checks;
  SubstitutionCheck substitution;
  bool all_passed() const;
};

VerifyReport run_identity_suite(std::size_t samples, std::uint64_t seed, double tol,
                                std::size_t substitution_samples = 1000);

}  // namespace horoflow
