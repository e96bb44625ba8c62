#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "asurf/pipeline.hpp"

using namespace asurf;

namespace {

struct Setup {
  FieldParams params;
  FieldTower tower;
  CycRing ring;
  CharContext chars;
  OrbitData orbits;
  OrbitSums sums;

  Setup(std::int64_t p, int e, int a, int shift = 1)
      : params(p, e),
        tower(p, run_tower_degree(params, a)),
        ring(p),
        chars(tower, ring, params, shift),
        orbits(enumerate_orbits(tower, params, a)),
        sums(compute_sums(chars, orbits, 2)) {}
};

}  // namespace

TEST_CASE("kloosterman sum over F_7 with alpha = 1 matches the hand computation") {
  // multiset {x + 1/x : x in F_7^x} = {2,6,1,6,1,5}, so
  // Kl = -(2 zeta + zeta^2 + zeta^5 + 2 zeta^6)
  Setup s(7, 1, 1);
  Elem one = s.tower.one();
  auto kr = s.chars.kloosterman_raw(1, one);
  std::vector<BigInt> tally(21, BigInt(0));
  tally[3 * 1] = 2;
  tally[3 * 2] = 1;
  tally[3 * 5] = 1;
  tally[3 * 6] = 2;
  CycInt expect = s.ring.neg(s.ring.from_tally(tally));
  CHECK(s.ring.eq(kr.value, expect));
}

TEST_CASE("additive character orthogonality: -sum psi(x) over units = 1") {
  Setup s(7, 1, 2);
  for (int d : {1, 2}) {
    const auto& t = s.chars.tables(d);
    CycInt acc = s.ring.zero();
    for (const auto& x : t.units) {
      acc = s.ring.add(acc, s.ring.zeta_p_pow(s.chars.psi_exponent(d, x)));
    }
    auto v = s.ring.as_integer(s.ring.neg(acc));
    REQUIRE(v.has_value());
    CHECK(*v == 1);
  }
}

TEST_CASE("gauss sums reject degenerate input") {
  Setup s(7, 1, 1);
  CHECK_THROWS(s.chars.gauss_raw(1, 1, s.tower.zero()));
  CHECK_THROWS(s.chars.kloosterman_raw(1, s.tower.zero()));
  CHECK_THROWS(s.chars.gauss_raw(1, 3, s.tower.one()));
}

TEST_CASE("fields without cubic characters are rejected") {
  // q = 11, d = 1: 3 does not divide 10
  Setup s(11, 1, 1);
  CHECK_THROWS(s.chars.gauss_raw(1, 1, s.tower.one()));
}

TEST_CASE("fast-path sums equal raw summation on every orbit (7,1) and (7,2)") {
  for (int a : {1, 2}) {
    Setup s(7, 1, a);
    for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
      const FullOrbit& o = s.orbits.orbits[oi];
      CHECK(s.ring.eq(s.sums.gauss[oi], s.chars.gauss_raw(o.size, o.j, o.alpha)));
      CHECK(s.ring.eq(s.sums.kloos[oi], s.chars.kloosterman_raw(o.size, o.alpha).value));
    }
  }
}

TEST_CASE("fast-path sums equal raw summation for a zigzag case (11,1)") {
  Setup s(11, 1, 1);
  for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
    const FullOrbit& o = s.orbits.orbits[oi];
    CHECK(s.ring.eq(s.sums.gauss[oi], s.chars.gauss_raw(o.size, o.j, o.alpha)));
    CHECK(s.ring.eq(s.sums.kloos[oi], s.chars.kloosterman_raw(o.size, o.alpha).value));
  }
}

TEST_CASE("hasse-davenport: lifted gauss sum is the square of the base sum") {
  FieldParams P(7, 1);
  FieldTower F(7, 2);  // contains F_7 and F_49
  CycRing R(7);
  CharContext C(F, R, P);
  for (int j : {1, 2}) {
    for (std::uint32_t c = 1; c < 7; ++c) {
      CycInt g1 = C.gauss_raw(1, j, F.scalar(c));
      CycInt g2 = C.gauss_raw(2, j, F.scalar(c));
      CHECK(R.eq(g2, R.mul(g1, g1)));
    }
  }
}

TEST_CASE("gauss moduli: value times conjugate is q^{|o|} exactly") {
  for (auto [p, a] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {11, 1}, {13, 1}}) {
    Setup s(p, 1, a);
    for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
      auto nrm = s.ring.as_integer(s.ring.mul(s.sums.gauss[oi], s.ring.conj(s.sums.gauss[oi])));
      REQUIRE(nrm.has_value());
      CHECK(*nrm == pow_bigint(s.params.q, static_cast<std::uint64_t>(s.orbits.orbits[oi].size)));
    }
  }
}

TEST_CASE("kappa split: product q^d, sum Kl, conjugate pair, degenerate angle") {
  Setup s(7, 1, 2);
  for (std::size_t vi = 0; vi < s.orbits.places.size(); ++vi) {
    int d = s.orbits.places[vi].size;
    auto kp = kappa_split(s.ring, s.sums.kloos_place[vi], s.params.q, d, 192);
    MC prod = mc_mul(kp.k1, kp.k2);
    Real qd = Real(pow_bigint(s.params.q, static_cast<std::uint64_t>(d)));
    CHECK(abs(prod.re - qd) < 1e-30 + 4 * kp.err * sqrt(qd));
    CHECK(abs(prod.im) < 1e-30 + 4 * kp.err * sqrt(qd));
    MC sum = mc_add(kp.k1, kp.k2);
    CB kl = s.ring.embed(s.sums.kloos_place[vi], 192);
    CHECK(abs(sum.re - kl.z.re) < 1e-30 + 2 * kp.err + kl.err);
    CHECK(kp.k1.im >= 0);  // argument in [0, pi]
  }
  // Kl = 0 would give theta = pi/2 exactly
  auto kp0 = kappa_split(s.ring, s.ring.zero(), s.params.q, 1, 128);
  CHECK(kp0.k1.re == 0);
  CHECK(kp0.k1.im > 0);
}

TEST_CASE("closed-form valuations") {
  Setup s7(7, 1, 2);
  for (const auto& o : s7.orbits.orbits) {
    BigRat v = gauss_valuation(s7.orbits, o);
    if (o.pr1 == 1) CHECK(v == BigRat(2 * o.size, 3));
    if (o.pr1 == -1) CHECK(v == BigRat(o.size, 3));
    // Stickelberger window
    CHECK(v >= BigRat(o.size, 3));
    CHECK(v <= BigRat(2 * o.size, 3));
  }
  // q = 7, size 1, pr1 = +1 -> 2/3 and size 2, pr1 = -1 -> 2/3
  bool saw_third = false, saw_two_thirds = false;
  for (const auto& o : s7.orbits.orbits) {
    if (o.size == 1 && o.pr1 == 1) saw_two_thirds = saw_two_thirds || gauss_valuation(s7.orbits, o) == BigRat(2, 3);
    if (o.size == 2 && o.pr1 == -1) saw_third = saw_third || gauss_valuation(s7.orbits, o) == BigRat(2, 3);
  }
  CHECK(saw_two_thirds);
  CHECK(saw_third);

  Setup s11(11, 1, 2);
  for (const auto& o : s11.orbits.orbits) {
    CHECK(gauss_valuation(s11.orbits, o) == BigRat(o.size, 2));
    if (o.size == 2) CHECK(gauss_valuation(s11.orbits, o) == 1);
  }
}

TEST_CASE("angles resolve and respect the structural constraints") {
  Setup s(7, 1, 2);
  AngleData A = compute_angles(s.ring, s.orbits, s.sums, 128);
  PrecisionGuard guard(A.prec_bits);
  CHECK(A.max_err < Real("1e-30"));
  for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
    CHECK(A.eps[oi] >= 0);
    CHECK(A.eps[oi] < Real(6.2831853072));
    CHECK(A.theta[oi] > 0);
    CHECK(A.theta[oi] < Real(3.14159265359));  // theta never hits the boundary
    // defining relations: gamma = q^{|o|/2} e^{i eps}, Kl = 2 q^{|o|/2} cos theta
    int size = s.orbits.orbits[oi].size;
    Real norm = sqrt(Real(pow_bigint(s.params.q, static_cast<std::uint64_t>(size))));
    CB g = s.ring.embed(s.sums.gauss[oi], A.prec_bits);
    CHECK(abs(g.z.re - norm * cos(A.eps[oi])) < 1e-25);
    CHECK(abs(g.z.im - norm * sin(A.eps[oi])) < 1e-25);
    CB k = s.ring.embed(s.sums.kloos[oi], A.prec_bits);
    CHECK(abs(k.z.re - 2 * norm * cos(A.theta[oi])) < 1e-25);
  }
}

TEST_CASE("q = 2 mod 3 gauss angles are multiples of pi/3") {
  Setup s(11, 1, 2);
  AngleData A = compute_angles(s.ring, s.orbits, s.sums, 128);
  PrecisionGuard guard(A.prec_bits);
  Real pi = 4 * atan(Real(1));
  for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
    Real scaled = A.eps[oi] * 3 / pi;
    Real nearest = round(scaled.convert_to<double>());
    CHECK(abs(scaled - nearest) < 1e-25);
  }
}

TEST_CASE("gauss angle is independent of the orbit representative") {
  Setup s(7, 1, 2);
  for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
    const FullOrbit& o = s.orbits.orbits[oi];
    for (const auto& [j, alpha] : orbit_members(s.tower, s.params, o)) {
      CHECK(s.ring.eq(s.chars.gauss_raw(o.size, j, alpha), s.sums.gauss[oi]));
    }
  }
}

TEST_CASE("psi twist changes individual sums but keeps their moduli") {
  Setup s1(7, 1, 1, 1), s2(7, 1, 1, 2);
  bool some_diff = false;
  for (std::size_t oi = 0; oi < s1.orbits.orbits.size(); ++oi) {
    some_diff = some_diff || s1.sums.gauss[oi].c != s2.sums.gauss[oi].c;
    auto n1 = s1.ring.as_integer(s1.ring.mul(s1.sums.gauss[oi], s1.ring.conj(s1.sums.gauss[oi])));
    auto n2 = s2.ring.as_integer(s2.ring.mul(s2.sums.gauss[oi], s2.ring.conj(s2.sums.gauss[oi])));
    CHECK(*n1 == *n2);
  }
  CHECK(some_diff);
}

TEST_CASE("orbit angle doubles the place angle when |o| = 2|v|") {
  // Kl(o) = Kl(v)^2 - 2 q^{|v|} forces cos(theta_o) = cos(2 theta_v)
  Setup s(11, 1, 1);
  AngleData A = compute_angles(s.ring, s.orbits, s.sums, 128);
  PrecisionGuard guard(A.prec_bits);
  Real pi = 4 * atan(Real(1));
  for (std::size_t oi = 0; oi < s.orbits.orbits.size(); ++oi) {
    const FullOrbit& o = s.orbits.orbits[oi];
    const PlaceOrbit& v = s.orbits.places[static_cast<std::size_t>(o.place)];
    REQUIRE(o.size == 2 * v.size);
    Real doubled = 2 * A.theta_place[static_cast<std::size_t>(o.place)];
    Real folded = doubled > pi ? Real(2 * pi - doubled) : doubled;
    CHECK(abs(A.theta[oi] - folded) < 1e-25);
  }
}

TEST_CASE("assembled per-orbit value records satisfy their invariants") {
  RunConfig cfg;
  cfg.q = 7;
  cfg.a = 2;
  cfg.jobs = 2;
  Run run = build_run(cfg);
  PrecisionGuard guard(run.angles.prec_bits);
  for (std::size_t oi = 0; oi < run.orbits.orbits.size(); oi += 5) {
    int size = run.orbits.orbits[oi].size;
    BigInt qo = pow_bigint(run.params.q, static_cast<std::uint64_t>(size));
    GaussValue g = gauss_value(run, oi);
    CHECK(g.valuation == gauss_valuation(run.orbits, run.orbits.orbits[oi]));
    // |iota(value)| = q^{|o|/2} within precision, via the exact norm
    auto nrm = run.ring->as_integer(run.ring->mul(g.value, run.ring->conj(g.value)));
    CHECK(*nrm == qo);
    KloostermanValue k = kloosterman_value(run, oi);
    // kappa_1 kappa_2 = q^{|o|} and kappa_1 + kappa_2 = iota(value)
    MC prod = mc_mul(k.kappa1, k.kappa2);
    CHECK(abs(prod.re - Real(qo)) < 1e-20);
    CB kl = run.ring->embed(k.value, run.angles.prec_bits);
    MC sum = mc_add(k.kappa1, k.kappa2);
    CHECK(abs(sum.re - kl.z.re) < 1e-20);
    CHECK(k.kappa1.im >= 0);
    CHECK(abs(2 * sqrt(Real(qo)) * cos(k.angle) - kl.z.re) < 1e-20);
  }
}

TEST_CASE("norm-compatibility of the cubic character on samples") {
  FieldParams P(7, 1);
  FieldTower F(7, 4);
  CycRing R(7);
  CharContext C(F, R, P);
  // chi_{F_{q^4},3} = chi_{F_q,3} o N on a sample of elements
  for (std::uint64_t k = 1; k < F.order(); k += 131) {
    Elem x = F.from_key(k);
    if (F.is_zero(x)) continue;
    int big = C.cubic_class(4, x);
    int small = C.cubic_class(1, F.norm(x, 4, 1));
    CHECK(big == small);
  }
}
