#pragma once

#include <vector>

#include "asurf/chars.hpp"
#include "asurf/cyclo.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

// Integer polynomial, constant term first.
struct IntPoly {
  std::vector<BigInt> c;

  int degree() const;
  const BigInt& coeff(std::size_t i) const;
};

// One orbit factor 1 - a1 T^{|o|} + a2 T^{2|o|} with a1 = gamma(o) Kl(o) and
// a2 = gamma(o)^2 q^{|o|}, kept in Z[zeta_{3p}] until the final collapse.
struct LFactor {
  std::size_t orbit = 0;
  int size = 0;
  CycInt a1;
  CycInt a2;
};

struct LResult {
  IntPoly L;
  std::vector<LFactor> factors;
};

// Exact product over all orbits; aborts if any coefficient fails the
// integrality collapse or the degree is not 4(q^a - 1).
LResult l_polynomial(const CycRing& R, const OrbitData& D, const OrbitSums& S, int jobs);

// Sign w with L(T) = w (qT)^b L(1/(q^2 T)) as an exact identity; throws when
// neither sign works.
int verify_functional_equation(const IntPoly& L, const BigInt& q);

struct RHReport {
  double max_abs_deviation = 0;  // max over roots of | |z| - 1/q |
  double max_residual_scale = 0; // max |L(z)| / (scale at the root)
  int prec_bits = 0;
  bool pass = false;
};

// Roots from the per-factor closed form (each quadratic in T^{|o|} solved
// directly), then Newton-polished on the assembled polynomial as a
// redundancy check against assembly bugs.
RHReport verify_riemann_hypothesis(const IntPoly& L, const BigInt& q, const OrbitData& D,
                                   const AngleData& A, double tol, int prec_bits, int jobs = 1);

// Exact rational L(1/q); throws if zero (analytic rank would be positive).
BigRat special_value(const IntPoly& L, const BigInt& q);

// Sine-product route: prod over orbits of 4 |sin((eps+theta)/2) sin((eps-theta)/2)|.
Real special_value_angles(const AngleData& A, int prec_bits);

// log of the sine product, for sweeps where the exact polynomial is not built.
Real log_special_value_angles(const AngleData& A, int prec_bits);

}  // namespace asurf
