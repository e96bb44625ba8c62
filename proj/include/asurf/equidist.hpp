#pragma once

#include <map>
#include <vector>

#include "asurf/chars.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

// CDF of the Sato-Tate measure (2/pi) sin^2 on [0, pi].
double sato_tate_cdf(double x);

// Angles of the maximal places, sorted; the support of the empirical measure.
struct AngleSample {
  int a = 0;
  std::vector<double> thetas;  // sorted, all in (0, pi)
};

AngleSample angle_sample(const OrbitData& D, const AngleData& A);

// Exact sup-distance between the empirical CDF and the Sato-Tate CDF,
// evaluated over order statistics.
double star_discrepancy(const AngleSample& sample);

// | (1/n) sum U_m(cos theta) | for the degree-m Chebyshev character.
double weyl_sum(const AngleSample& sample, int m);

struct GapConstants {
  double sigma_p3;  // sigma_{p,3}
  double tau_p3;
  double tau_p6;
};

GapConstants gap_constants(std::int64_t p);

// Minimal circular distance between Kloosterman and Gauss angles over pairs
// of orbits of equal size, one entry per orbit size. Positivity is the
// asserted invariant; the Liouville floor q^{-sigma_p |o|} is reported only.
struct GapTable {
  std::map<int, double> min_gap_by_size;
  double angle_err = 0;  // every tabulated gap exceeds this bound
};

GapTable min_angle_gap(const OrbitData& D, const AngleData& A);

}  // namespace asurf
