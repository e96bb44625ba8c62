#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asurf/chars.hpp"
#include "asurf/lfun.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

// Closed-form invariants of one member of the family.
struct Invariants {
  FieldParams params;
  int a = 0;
  BigInt h;          // differential height q^a + 1
  BigInt deg_N;      // conductor degree 4 q^a + 4
  int rank = 0;      // Mordell-Weil rank
  BigInt reg = 1;    // Neron-Tate regulator
  // local conductor exponents and Tamagawa numbers: c_v = 1 away from
  // infinity, c_infty in {1,3,9} carried unresolved
  int cond_finite_bad = 2;
  int cond_infty = 4;
  int cond_good = 0;
  std::vector<int> c_infty_candidates{1, 3, 9};

  BigInt H() const;  // exponential height q^h
};

Invariants invariants(const FieldParams& params, int a);

struct PlaceCount {
  std::string label;     // e.g. "t-3" or "t^2+5"
  int degree = 1;
  BigInt jacobian_order; // P_v(1)
};

struct TorsionReport {
  std::vector<PlaceCount> places;
  BigInt bound;             // gcd of jacobian orders (all listed places)
  BigInt bound_after3;      // gcd after the first three places
  BigInt prime_to_p;        // bound with p-part removed; the certified part
  bool stabilized = false;  // gcd unchanged from third place onward
  std::string caveat;
};

// gcd of #J over deterministic good places: one degree-2 place first (when
// available), then every degree-1 place t - c.
TorsionReport torsion_bound(const FieldParams& params, int a);

struct ShaCandidate {
  int c_infty = 1;
  BigInt torsion;
  BigRat sha;
  bool integral = false;
};

struct ShaReport {
  Invariants inv;
  BigRat special_value;
  TorsionReport torsion;
  std::vector<ShaCandidate> table;  // all (c_infty, t | T_max) combinations
  std::size_t integral_count = 0;
};

ShaReport sha_candidates(const BigRat& lstar, const Invariants& inv, const TorsionReport& torsion);

// log|Sha| / log H for one candidate, and the companion ratio log L* / log H.
double brauer_siegel_ratio(const ShaCandidate& cand, const Invariants& inv);
double log_ratio_special_value(const BigRat& lstar, const Invariants& inv);

struct DimShaReport {
  BigRat valuation_route;
  std::optional<BigRat> newton_route;  // present when the exact L is supplied
};

// Ulmer's growth invariant via the closed valuation formula, and
// independently via the Newton polygon of the exact L-polynomial.
DimShaReport dim_sha(const OrbitData& D, const IntPoly* L);

// Slopes of the lower Newton polygon of L with valuations ord_p(coeff)/e;
// pairs (slope, horizontal length).
std::vector<std::pair<BigRat, int>> newton_polygon_slopes(const IntPoly& L, const FieldParams& params);

}  // namespace asurf
