#pragma once

#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "asurf/cyclo.hpp"
#include "asurf/ffield.hpp"
#include "asurf/orbits.hpp"

namespace asurf {

// Per-subfield lookup tables for character-sum loops over F_{q^d}^x.
struct SubfieldTables {
  int d = 0;                                // degree over F_q
  std::vector<Elem> units;                  // F_{q^d}^x sorted by key
  std::vector<Elem> sum_with_inverse;       // x + 1/x, aligned with units
  std::vector<std::int8_t> cube_cls;        // j with x^{(q^d-1)/3} = omega^j; -1 if 3 | q^d - 1 fails
  std::unordered_map<std::uint64_t, std::uint32_t> index_of;
  // row of the F_p-linear functional Tr_{F_{q^d}/F_p} evaluated on the tower
  // basis; valid on subfield elements only
  std::array<std::uint32_t, kMaxFieldDeg> trace_row{};
};

// Fixed character data of one run: psi_0 = x -> zeta_p^{shift * lift(x)} and
// the identification of mu_3 with the complex cube roots, pinned by sending
// omega = g^{(q^s-1)/3} to zeta_3 for the deterministic generator g of the
// smallest field F_{q^s} containing mu_3.
class CharContext {
 public:
  CharContext(const FieldTower& F, const CycRing& R, const FieldParams& params, int psi_shift = 1);

  const FieldTower& tower() const { return F_; }
  const CycRing& ring() const { return R_; }
  const FieldParams& params() const { return params_; }
  int psi_shift() const { return shift_; }
  int mu3_field_degree() const { return s_; }  // over F_q

  const SubfieldTables& tables(int d) const;

  // Additive character exponent for x in F_{q^d}: shift * Tr_{F_{q^d}/F_p}(x) mod p.
  // The trace is taken from the field the sum lives in, not from the tower.
  std::uint32_t psi_exponent(int d, const Elem& x) const;
  // Exponent j of chi_{F_{q^d},3}(x) in {0,1,2}: kappa(x^{(q^d-1)/3}) = zeta_3^j.
  int cubic_class(int d, const Elem& x) const;

  // Definitional sums, used by fast paths on base fields and by the oracle
  // everywhere else.
  CycInt gauss_raw(int d, int j, const Elem& alpha) const;
  struct KloosRaw {
    std::vector<BigInt> tally;  // zeta_p exponent tallies, size p
    CycInt value;
  };
  KloosRaw kloosterman_raw(int d, const Elem& alpha) const;

 private:
  const FieldTower& F_;
  const CycRing& R_;
  FieldParams params_;
  int shift_;
  int s_;                                    // 1 if q = 1 mod 3 else 2
  std::array<std::uint64_t, 3> mu3_keys_{};  // keys of 1, omega, omega^2
  mutable std::map<int, SubfieldTables> tables_;
};

// All character sums of one run, aligned with OrbitData. Kloosterman sums are
// computed once per place by direct summation and propagated to orbits by the
// extension relation; Gauss sums come from the mu_3 base field by twisting
// and Hasse-Davenport.
struct OrbitSums {
  std::vector<CycInt> gauss;                       // gamma(o) per orbit
  std::vector<CycInt> kloos;                       // Kl(o) per orbit
  std::vector<CycInt> kloos_place;                 // Kl(v) per place
  std::vector<std::vector<BigInt>> place_tally;    // zeta_p tallies per place
};

OrbitSums compute_sums(const CharContext& C, const OrbitData& D, int jobs);

// Closed-form valuation of gamma(o), normalised with ord(q) = 1.
BigRat gauss_valuation(const OrbitData& D, const FullOrbit& o);

// Angles of all sums, resolved to target_err by precision escalation.
struct AngleData {
  int prec_bits = 0;
  std::vector<Real> eps;          // per orbit, in [0, 2pi)
  std::vector<Real> theta;        // per orbit, in [0, pi]
  std::vector<Real> theta_place;  // per place, in (0, pi)
  Real max_err;
};

AngleData compute_angles(const CycRing& R, const OrbitData& D, const OrbitSums& S,
                         int start_bits, double target_err = 1e-30, int max_bits = 16384);

// Roots of z^2 - iota(Kl) z + q^d, labeled so kappa_1 has argument in [0, pi].
struct KappaPair {
  MC k1, k2;
  Real err;
};
KappaPair kappa_split(const CycRing& R, const CycInt& kl, const BigInt& q, int d, int prec_bits);

}  // namespace asurf
