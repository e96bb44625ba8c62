#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "asurf/numeric.hpp"

namespace asurf {

// Base parameters of a run: q = p^e with p prime. The standing hypothesis is
// p >= 7; construction enforces p >= 5 so the relaxed CLI mode still works.
struct FieldParams {
  std::int64_t p = 0;
  int e = 1;
  BigInt q;

  FieldParams() = default;
  FieldParams(std::int64_t p_, int e_);
  static FieldParams from_q(const BigInt& q, bool allow_small_char = false);
};

inline constexpr int kMaxFieldDeg = 12;

// Element of F_{p^M}, coordinates in the power basis of the modulus.
struct Elem {
  std::array<std::uint32_t, kMaxFieldDeg> c{};
};

// Arithmetic context for F_{p^M}. All extensions needed by a run live inside
// one such field; subfields are cut out by the Frobenius. Immutable after
// construction and safe to share across threads.
class FieldTower {
 public:
  FieldTower(std::int64_t p, int deg);

  std::int64_t p() const { return p_; }
  int deg() const { return m_; }
  std::uint64_t order() const { return size_; }          // p^M
  std::uint64_t subfield_order(int d) const;             // p^d, d | M
  const std::vector<std::uint32_t>& modulus() const { return mod_; }
  std::string modulus_string() const;

  Elem zero() const { return Elem{}; }
  Elem one() const { return scalar(1); }
  Elem scalar(std::uint32_t v) const;

  bool is_zero(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem pow(Elem a, std::uint64_t n) const;
  Elem pow(const Elem& a, const BigInt& n) const;

  // Position of an element in the fixed total order (base-p coordinate key).
  std::uint64_t key(const Elem& a) const;
  Elem from_key(std::uint64_t k) const;

  Elem frob_p(const Elem& a) const;             // x -> x^p
  Elem frob_pk(const Elem& a, int k) const;     // x -> x^{p^k}

  // Absolute trace to F_p, as a residue in [0, p).
  std::uint32_t abs_trace(const Elem& a) const;

  // Relative trace/norm between subfields; degrees are over F_p and must
  // satisfy d_to | d_from | M, with a in F_{p^{d_from}}.
  Elem trace(const Elem& a, int d_from, int d_to) const;
  Elem norm(const Elem& a, int d_from, int d_to) const;

  bool in_subfield(const Elem& a, int d) const;
  // All elements of F_{p^d}, sorted by key. d | M.
  std::vector<Elem> subfield_elements(int d) const;
  // Distinct iterates a, a^s, a^{s^2}, ... for s = p^e.
  std::vector<Elem> frobenius_orbit(const Elem& a, int e) const;
  // Deterministic multiplicative generator of F_{p^d}^*: smallest key of
  // maximal order.
  Elem generator(int d) const;

 private:
  void reduce(std::array<std::uint64_t, 2 * kMaxFieldDeg>& t, Elem& out) const;

  std::int64_t p_;
  int m_;
  std::uint64_t size_;
  std::vector<std::uint32_t> mod_;                  // monic, length m_+1
  std::array<Elem, kMaxFieldDeg> frob_basis_;       // (x^i)^p images
};

// First monic irreducible of the given degree over F_p in base-p counting
// order of the coefficient vector (c_0, c_1, ...).
std::vector<std::uint32_t> deterministic_irreducible(std::int64_t p, int deg);

bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> factor_u64(std::uint64_t n);

}  // namespace asurf
