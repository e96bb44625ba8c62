#pragma once

#include <optional>
#include <vector>

#include "asurf/ffield.hpp"
#include "asurf/numeric.hpp"

namespace asurf {

class CycRing;

// Exact element of Z[zeta_{3p}] in the power basis of Z[x]/Phi_{3p}(x),
// phi(3p) = 2(p-1) coordinates. Values are immutable once built.
struct CycInt {
  const CycRing* ring = nullptr;
  std::vector<BigInt> c;
};

class CycRing {
 public:
  explicit CycRing(std::int64_t p);

  std::int64_t p() const { return p_; }
  std::int64_t conductor() const { return 3 * p_; }
  int degree() const { return deg_; }
  const std::vector<BigInt>& phi() const { return phi_; }  // monic cyclotomic Phi_{3p}

  CycInt zero() const;
  CycInt one() const { return integer(1); }
  CycInt integer(BigInt v) const;
  CycInt zeta_pow(std::int64_t k) const;    // zeta_{3p}^k
  CycInt zeta_p_pow(std::int64_t t) const;  // zeta_p^t = zeta_{3p}^{3t}
  CycInt zeta3_pow(std::int64_t j) const;   // zeta_3^j = zeta_{3p}^{pj}
  // Sum of tally[k] * zeta_{3p}^k over k in [0, 3p).
  CycInt from_tally(const std::vector<BigInt>& tally) const;

  CycInt add(const CycInt& a, const CycInt& b) const;
  CycInt sub(const CycInt& a, const CycInt& b) const;
  CycInt neg(const CycInt& a) const;
  CycInt mul(const CycInt& a, const CycInt& b) const;
  CycInt mul_int(const CycInt& a, const BigInt& s) const;
  // Fused acc += a * b on an unreduced buffer of length 2 deg - 1; pairs with
  // finish() for product trees where per-term reduction would dominate.
  void mul_acc(std::vector<BigInt>& acc, const CycInt& a, const CycInt& b) const;
  CycInt finish(std::vector<BigInt> acc) const;
  CycInt pow(const CycInt& a, std::uint64_t n) const;
  CycInt conj(const CycInt& a) const { return galois(a, conductor() - 1); }
  CycInt galois(const CycInt& a, std::int64_t k) const;  // zeta -> zeta^k, gcd(k, 3p) = 1

  bool eq(const CycInt& a, const CycInt& b) const;
  bool is_zero(const CycInt& a) const;
  // Exact coordinate test; never rounds.
  std::optional<BigInt> as_integer(const CycInt& a) const;

  // Evaluate at zeta_{3p} = exp(2 pi i / 3p) with a rigorous error radius.
  CB embed(const CycInt& a, int prec_bits) const;

 private:
  void reduce(std::vector<BigInt>& v) const;  // mod Phi_{3p}, in place
  void require_same(const CycInt& a, const CycInt& b) const;

  std::int64_t p_;
  int deg_;
  std::vector<BigInt> phi_;
  // zeta^k in the power basis for k in [0, 3p): the reduction of x^k.
  std::vector<std::vector<BigInt>> zeta_table_;
};

// p-adic valuation of a nonzero integer, normalised so ord(q) = 1 for q = p^e.
BigRat ord_frak_p(const BigInt& n, const FieldParams& params);

}  // namespace asurf
