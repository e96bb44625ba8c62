#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "asurf/cyclo.hpp"

using namespace asurf;

namespace {

CycInt random_element(const CycRing& R, std::mt19937_64& rng) {
  CycInt a = R.zero();
  std::uniform_int_distribution<int> coef(-9, 9);
  for (auto& v : a.c) v = coef(rng);
  return a;
}

// Independent evaluation of a at zeta^k, one monomial at a time.
CB eval_at_power(const CycRing& R, const CycInt& a, std::int64_t k, int bits) {
  CB acc = cb_exact(mc(0));
  for (int i = 0; i < R.degree(); ++i) {
    if (a.c[static_cast<std::size_t>(i)] == 0) continue;
    CB z = R.embed(R.zeta_pow(k * i), bits);
    CB c = cb_exact(MC{Real(a.c[static_cast<std::size_t>(i)]), Real(0)});
    acc = cb_add(acc, cb_mul(c, z, bits), bits);
  }
  return acc;
}

}  // namespace

TEST_CASE("zeta^{3p} = 1 and Phi_21 has degree 12") {
  CycRing R(7);
  CHECK(R.degree() == 12);
  CHECK(R.eq(R.zeta_pow(21), R.one()));
  CHECK(R.phi().size() == 13);
}

TEST_CASE("geometric sum of all 3p-th roots vanishes after reduction") {
  CycRing R(7);
  CycInt s = R.zero();
  for (int k = 0; k < 21; ++k) s = R.add(s, R.zeta_pow(k));
  CHECK(R.is_zero(s));
}

TEST_CASE("(1+u)(1-u) = 1-u^2 for random elements") {
  CycRing R(7);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    CycInt u = random_element(R, rng);
    CycInt lhs = R.mul(R.add(R.one(), u), R.sub(R.one(), u));
    CycInt rhs = R.sub(R.one(), R.mul(u, u));
    CHECK(R.eq(lhs, rhs));
  }
}

TEST_CASE("ring axioms on random elements: distributivity, associativity, commutativity") {
  CycRing R(11);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 15; ++trial) {
    CycInt u = random_element(R, rng), v = random_element(R, rng), w = random_element(R, rng);
    CHECK(R.eq(R.mul(u, R.add(v, w)), R.add(R.mul(u, v), R.mul(u, w))));
    CHECK(R.eq(R.mul(R.mul(u, v), w), R.mul(u, R.mul(v, w))));
    CHECK(R.eq(R.mul(u, v), R.mul(v, u)));
  }
}

TEST_CASE("fused multiply-accumulate agrees with the plain product") {
  CycRing R(7);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    CycInt u = random_element(R, rng), v = random_element(R, rng), w = random_element(R, rng);
    std::vector<BigInt> acc(2 * static_cast<std::size_t>(R.degree()) - 1, BigInt(0));
    R.mul_acc(acc, u, v);
    R.mul_acc(acc, u, w);
    CycInt fused = R.finish(std::move(acc));
    CHECK(R.eq(fused, R.add(R.mul(u, v), R.mul(u, w))));
  }
}

TEST_CASE("reduction mod Phi is idempotent") {
  CycRing R(11);
  std::vector<BigInt> tally(static_cast<std::size_t>(R.conductor()), BigInt(0));
  std::mt19937_64 rng(11);
  for (auto& v : tally) v = static_cast<int>(rng() % 17) - 8;
  CycInt a = R.from_tally(tally);
  // re-expressing a reduced value as a tally and reducing again is a no-op
  std::vector<BigInt> again(static_cast<std::size_t>(R.conductor()), BigInt(0));
  for (int i = 0; i < R.degree(); ++i) again[static_cast<std::size_t>(i)] = a.c[static_cast<std::size_t>(i)];
  CHECK(R.eq(a, R.from_tally(again)));
}

TEST_CASE("conductor mismatch is rejected") {
  CycRing R7(7), R11(11);
  CHECK_THROWS(R7.add(R7.one(), R11.one()));
}

TEST_CASE("embed(1) = 1 and |embed(zeta^k)| = 1 within bound") {
  CycRing R(7);
  CB one = R.embed(R.one(), 128);
  CHECK(abs(one.z.re - 1) <= one.err);
  CHECK(abs(one.z.im) <= one.err);
  for (int k = 0; k < 21; ++k) {
    RB m = cb_abs(R.embed(R.zeta_pow(k), 128), 128);
    CHECK(abs(m.v - 1) <= m.err + Real("1e-30"));
  }
}

TEST_CASE("conjugation is an involution and matches |embed|^2") {
  CycRing R(7);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    CycInt a = random_element(R, rng);
    CHECK(R.eq(R.conj(R.conj(a)), a));
    CycInt n = R.mul(a, R.conj(a));
    CB na = R.embed(a, 192);
    RB m = cb_abs(na, 192);
    CB nn = R.embed(n, 192);
    Real diff = abs(nn.z.re - m.v * m.v);
    CHECK(diff <= nn.err + 3 * m.err * (m.v + 1) + Real("1e-40"));
    CHECK(abs(nn.z.im) <= nn.err);  // a * conj(a) is totally real here
  }
}

TEST_CASE("galois maps permute embeddings consistently") {
  CycRing R(7);
  std::mt19937_64 rng(5);
  for (std::int64_t k : {2, 5, 8, 10}) {  // coprime to 21
    CycInt a = random_element(R, rng);
    CB lhs = R.embed(R.galois(a, k), 160);
    CB rhs = eval_at_power(R, a, k, 160);
    CHECK(mc_abs(mc_sub(lhs.z, rhs.z)) <= lhs.err + rhs.err + Real("1e-35"));
  }
}

TEST_CASE("galois composition sigma_k sigma_l = sigma_{kl}") {
  CycRing R(7);
  std::mt19937_64 rng(3);
  CycInt a = random_element(R, rng);
  CHECK(R.eq(R.galois(R.galois(a, 2), 5), R.galois(a, 10)));
}

TEST_CASE("cubic-character gauss sum over F_7: exact modulus via conjugate product") {
  // g = 3 generates F_7^x; chi(3^k) = zeta_3^k; psi(x) = zeta_7^x.
  CycRing R(7);
  CycInt s = R.zero();
  std::int64_t x = 1;
  for (int k = 0; k < 6; ++k) {
    s = R.add(s, R.mul(R.zeta3_pow(k), R.zeta_p_pow(x)));
    x = (x * 3) % 7;
  }
  s = R.neg(s);
  // |S|^2 = 7 exactly
  auto n = R.as_integer(R.mul(s, R.conj(s)));
  REQUIRE(n.has_value());
  CHECK(*n == 7);
  // and the embedding has modulus sqrt(7) to 1e-20 at 128 bits
  RB m = cb_abs(R.embed(s, 128), 128);
  Real dev = abs(m.v * m.v - 7);
  CHECK(dev <= Real("1e-20"));
}

TEST_CASE("is_rational_integer: exact coordinate collapse only") {
  CycRing R(7);
  CHECK(*R.as_integer(R.integer(5)) == 5);
  CHECK(!R.as_integer(R.zeta_pow(1)).has_value());
  CHECK(!R.as_integer(R.zeta_p_pow(1)).has_value());
  // zeta_3 + zeta_3^2 = -1 collapses
  auto v = R.as_integer(R.add(R.zeta3_pow(1), R.zeta3_pow(2)));
  REQUIRE(v.has_value());
  CHECK(*v == -1);
}

TEST_CASE("normalised valuation ord(q) = 1") {
  FieldParams P(7, 1);
  CHECK(ord_frak_p(P.q, P) == 1);
  CHECK(ord_frak_p(BigInt(1), P) == 0);
  CHECK(ord_frak_p(BigInt(343), P) == 3);
  CHECK_THROWS(ord_frak_p(BigInt(0), P));
  FieldParams P2(7, 2);  // q = 49
  CHECK(ord_frak_p(BigInt(7), P2) == BigRat(1, 2));
  CHECK(ord_frak_p(P2.q, P2) == 1);
}
