#pragma once

#include <string>
#include <vector>

#include "asurf/chars.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

// Brute-force verifiers. Everything here recomputes from definitions and is
// deliberately independent of the fast paths it checks.

struct OracleReport {
  bool ok = true;
  std::vector<std::string> lines;
  std::size_t checked = 0;  // populated by direct_sums_check
  std::size_t total = 0;

  void note(bool pass, const std::string& what);
};

// Points of u^3 = wp_a(t) over F_{q^k}, including the single point at
// infinity. Refuses when q^k exceeds the evaluation budget.
BigInt count_X(const FieldParams& params, int a, int k, std::uint64_t budget);

// Points of v + 1/v = wp_a(t) (v != 0) over F_{q^k} plus the two points at
// infinity, counted through the quadratic character of wp^2 - 4.
BigInt count_Y(const FieldParams& params, int a, int k, std::uint64_t budget);

// Same count by raw iteration over all pairs (v, t); change-of-variables
// equivalence check for the hyperelliptic model.
BigInt count_Y_pairs(const FieldParams& params, int a, int k, std::uint64_t budget);

// Frobenius-trace predictions from the character sums; exact integers.
// Also verifies that the embedded trace lands within 0.1 of that integer.
BigInt predicted_count_X(const CycRing& R, const OrbitData& D, const OrbitSums& S, int k);
BigInt predicted_count_Y(const CycRing& R, const OrbitData& D, const OrbitSums& S, int k);

// Recompute gamma(o) and Kl(o) by raw summation for every orbit with
// q^{|o|} <= budget and demand exact equality with the fast-path values.
OracleReport direct_sums_check(const CharContext& C, const OrbitData& D, const OrbitSums& S,
                               std::uint64_t budget, int jobs);

// gcd(f, f') = 1 for f = wp_a(t)^2 - 4 over F_p.
bool squarefree_check(const FieldParams& params, int a);

// disc(alpha x^6 + beta x^3 + gamma) = -3^6 (alpha gamma)^2 (beta^2 - 4 alpha gamma)^3
// on random specializations drawn from wp_a over F_{q^2}.
bool disc_identity_check(const FieldParams& params, int a, int trials);

// Identity suite for the character sums of one run: twisting, orbit
// invariance, Hasse-Davenport, moduli, valuation window, reality, extension
// consistency, unit kappa. Covers every enumerated orbit.
OracleReport identity_suite(const CharContext& C, const OrbitData& D, const OrbitSums& S,
                            int prec_bits);

}  // namespace asurf
