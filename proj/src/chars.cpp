#include "asurf/chars.hpp"

#include <algorithm>
#include <numeric>

namespace asurf {

CharContext::CharContext(const FieldTower& F, const CycRing& R, const FieldParams& params,
                         int psi_shift)
    : F_(F), R_(R), params_(params), shift_(psi_shift) {
  check(F.p() == params.p && R.p() == params.p, "context characteristic mismatch");
  check(psi_shift >= 1 && psi_shift < params.p, "psi shift must be a unit mod p");
  s_ = (params.q % 3 == 1) ? 1 : 2;
  check(F.deg() % (params.e * s_) == 0, "tower does not contain mu_3");
  Elem g = F.generator(params.e * s_);
  std::uint64_t n = F.subfield_order(params.e * s_) - 1;
  check(n % 3 == 0, "mu_3 not contained in the stated field");
  Elem omega = F.pow(g, n / 3);
  mu3_keys_[0] = F.key(F.one());
  mu3_keys_[1] = F.key(omega);
  mu3_keys_[2] = F.key(F.mul(omega, omega));
  check(mu3_keys_[1] != mu3_keys_[0] && mu3_keys_[2] != mu3_keys_[0], "omega degenerate");
}

std::uint32_t CharContext::psi_exponent(int d, const Elem& x) const {
  const std::uint64_t p = static_cast<std::uint64_t>(F_.p());
  const auto& row = tables(d).trace_row;
  std::uint64_t acc = 0;
  for (int i = 0; i < F_.deg(); ++i)
    acc += static_cast<std::uint64_t>(row[static_cast<std::size_t>(i)]) *
           x.c[static_cast<std::size_t>(i)];
  return static_cast<std::uint32_t>(acc % p * static_cast<std::uint64_t>(shift_) % p);
}

int CharContext::cubic_class(int d, const Elem& x) const {
  check(!F_.is_zero(x), "cubic class of zero");
  BigInt n = pow_bigint(params_.q, static_cast<std::uint64_t>(d)) - 1;
  check(n % 3 == 0, "field has no cubic character");
  Elem y = F_.pow(x, n / 3);
  std::uint64_t k = F_.key(y);
  for (int j = 0; j < 3; ++j)
    if (mu3_keys_[static_cast<std::size_t>(j)] == k) return j;
  fail("cube power landed outside mu_3");
}

const SubfieldTables& CharContext::tables(int d) const {
  auto it = tables_.find(d);
  if (it != tables_.end()) return it->second;
  SubfieldTables t;
  t.d = d;
  // Tr_{F_{q^d}/F_p}(y) = sum_{i < e d} y^{p^i}; as a linear functional on
  // tower coordinates it is the first coordinate of that map on the basis.
  {
    Elem x = (F_.deg() == 1)
                 ? F_.scalar(static_cast<std::uint32_t>((F_.p() - F_.modulus()[0]) % F_.p()))
                 : F_.from_key(static_cast<std::uint64_t>(F_.p()));
    Elem xi = F_.one();
    for (int i = 0; i < F_.deg(); ++i) {
      Elem acc = F_.zero(), f = xi;
      for (int step = 0; step < params_.e * d; ++step) {
        acc = F_.add(acc, f);
        f = F_.frob_p(f);
      }
      t.trace_row[static_cast<std::size_t>(i)] = acc.c[0];
      xi = F_.mul(xi, x);
    }
  }
  auto elems = F_.subfield_elements(params_.e * d);
  BigInt n = pow_bigint(params_.q, static_cast<std::uint64_t>(d)) - 1;
  bool has_cubic = (n % 3 == 0);
  t.units.reserve(elems.size() - 1);
  for (const auto& x : elems) {
    if (F_.is_zero(x)) continue;
    t.units.push_back(x);
  }
  t.sum_with_inverse.resize(t.units.size());
  t.cube_cls.resize(t.units.size(), -1);
  t.index_of.reserve(t.units.size());
  for (std::size_t i = 0; i < t.units.size(); ++i) {
    const Elem& x = t.units[i];
    t.index_of[F_.key(x)] = static_cast<std::uint32_t>(i);
    t.sum_with_inverse[i] = F_.add(x, F_.inv(x));
    if (has_cubic) t.cube_cls[i] = static_cast<std::int8_t>(cubic_class(d, x));
  }
  return tables_.emplace(d, std::move(t)).first->second;
}

CycInt CharContext::gauss_raw(int d, int j, const Elem& alpha) const {
  check(!F_.is_zero(alpha), "gauss sum needs a nontrivial additive character");
  check(j == 1 || j == 2, "cubic character exponent must be 1 or 2");
  const auto& t = tables(d);
  check(!t.cube_cls.empty() && t.cube_cls[0] >= 0, "field has no cubic character");
  const std::int64_t p = F_.p();
  std::vector<BigInt> tally(static_cast<std::size_t>(3 * p), BigInt(0));
  for (std::size_t i = 0; i < t.units.size(); ++i) {
    std::uint32_t te = psi_exponent(d, F_.mul(alpha, t.units[i]));
    int cc = (j * t.cube_cls[i]) % 3;
    tally[static_cast<std::size_t>((3 * te + p * cc) % (3 * p))] += 1;
  }
  return R_.neg(R_.from_tally(tally));
}

CharContext::KloosRaw CharContext::kloosterman_raw(int d, const Elem& alpha) const {
  check(!F_.is_zero(alpha), "kloosterman sum needs a nontrivial additive character");
  const auto& t = tables(d);
  const std::int64_t p = F_.p();
  KloosRaw out;
  out.tally.assign(static_cast<std::size_t>(p), BigInt(0));
  for (std::size_t i = 0; i < t.units.size(); ++i) {
    out.tally[psi_exponent(d, F_.mul(alpha, t.sum_with_inverse[i]))] += 1;
  }
  std::vector<BigInt> full(static_cast<std::size_t>(3 * p), BigInt(0));
  for (std::int64_t e = 0; e < p; ++e)
    full[static_cast<std::size_t>(3 * e)] = out.tally[static_cast<std::size_t>(e)];
  out.value = R_.neg(R_.from_tally(full));
  return out;
}

OrbitSums compute_sums(const CharContext& C, const OrbitData& D, int jobs) {
  const CycRing& R = C.ring();
  const FieldTower& F = C.tower();
  const FieldParams& P = D.params;
  OrbitSums S;
  S.kloos_place.assign(D.places.size(), R.zero());
  S.place_tally.resize(D.places.size());
  S.gauss.assign(D.orbits.size(), R.zero());
  S.kloos.assign(D.orbits.size(), R.zero());

  // Warm the per-degree tables serially; lookups afterwards are read-only.
  std::vector<int> degrees;
  for (const auto& v : D.places)
    if (std::find(degrees.begin(), degrees.end(), v.size) == degrees.end())
      degrees.push_back(v.size);
  for (const auto& o : D.orbits)
    if (std::find(degrees.begin(), degrees.end(), o.size) == degrees.end())
      degrees.push_back(o.size);
  for (int d : degrees) C.tables(d);

  parallel_for(D.places.size(), jobs, [&](std::size_t vi) {
    auto kr = C.kloosterman_raw(D.places[vi].size, D.places[vi].rep);
    S.kloos_place[vi] = std::move(kr.value);
    S.place_tally[vi] = std::move(kr.tally);
  });

  const int s = C.mu3_field_degree();
  std::array<CycInt, 3> base{R.zero(), C.gauss_raw(s, 1, F.one()), C.gauss_raw(s, 2, F.one())};

  parallel_for(D.orbits.size(), jobs, [&](std::size_t oi) {
    const FullOrbit& o = D.orbits[oi];
    const PlaceOrbit& v = D.places[static_cast<std::size_t>(o.place)];
    if (o.size == v.size) {
      S.kloos[oi] = S.kloos_place[static_cast<std::size_t>(o.place)];
    } else {
      // kappa_1^2 + kappa_2^2 = Kl(v)^2 - 2 q^{|v|}
      const CycInt& kv = S.kloos_place[static_cast<std::size_t>(o.place)];
      BigInt qv = pow_bigint(P.q, static_cast<std::uint64_t>(v.size));
      S.kloos[oi] = R.sub(R.mul(kv, kv), R.integer(2 * qv));
    }
    // gamma(o) = zeta_3^{-j cls(alpha)} * g_{q^s, j}^{|o|/s}
    int cls = C.cubic_class(o.size, o.alpha);
    CycInt tw = R.zeta3_pow(-(static_cast<std::int64_t>(o.j) * cls));
    S.gauss[oi] =
        R.mul(tw, R.pow(base[static_cast<std::size_t>(o.j)], static_cast<std::uint64_t>(o.size / s)));
  });
  return S;
}

BigRat gauss_valuation(const OrbitData& D, const FullOrbit& o) {
  if (D.params.q % 3 == 1) {
    return (o.pr1 == 1) ? BigRat(2 * o.size, 3) : BigRat(o.size, 3);
  }
  return BigRat(o.size, 2);
}

KappaPair kappa_split(const CycRing& R, const CycInt& kl, const BigInt& q, int d, int prec_bits) {
  PrecisionGuard guard(prec_bits);
  CB K = R.embed(kl, prec_bits);
  check(abs(K.z.im) <= K.err, "kloosterman sum embeds non-real");
  Real qd = Real(pow_bigint(q, static_cast<std::uint64_t>(d)));
  Real half = K.z.re / 2;
  Real disc = qd - half * half;
  // Weil bound is strict here, so the discriminant is positive; demand that
  // the precision actually resolves it
  check(disc > K.err * (abs(half) + 1), "kappa split unresolved at this precision");
  Real s = sqrt(disc);
  KappaPair out;
  out.k1 = MC{half, s};
  out.k2 = MC{half, -s};
  out.err = K.err + sqrt(qd) * ulp_scale(prec_bits) * 8;
  return out;
}

namespace {

struct AngleAttempt {
  bool ok = false;
  AngleData data;
};

AngleAttempt try_angles(const CycRing& R, const OrbitData& D, const OrbitSums& S, int bits,
                        const Real& target) {
  PrecisionGuard guard(bits);
  AngleAttempt out;
  AngleData& A = out.data;
  A.prec_bits = bits;
  A.max_err = 0;
  A.eps.resize(D.orbits.size());
  A.theta.resize(D.orbits.size());
  A.theta_place.resize(D.places.size());
  Real two_pi = 8 * atan(Real(1));
  const BigInt& q = D.params.q;

  auto kl_angle = [&](const CycInt& kl, int size, Real& dst) -> bool {
    CB K = R.embed(kl, bits);
    if (!(abs(K.z.im) <= K.err)) fail("kloosterman sum embeds non-real");
    Real norm = sqrt(Real(pow_bigint(q, static_cast<std::uint64_t>(size))));
    Real x = K.z.re / (2 * norm);
    Real dx = K.err / (2 * norm) + (abs(x) + 1) * ulp_scale(bits);
    Real margin = 1 - x * x;
    if (margin <= 16 * dx) return false;  // angle too close to {0, pi}: escalate
    dst = acos(x);
    Real err = dx / sqrt(margin) + ulp_scale(bits);
    if (err > target) return false;
    if (err > A.max_err) A.max_err = err;
    return true;
  };

  for (std::size_t vi = 0; vi < D.places.size(); ++vi) {
    if (!kl_angle(S.kloos_place[vi], D.places[vi].size, A.theta_place[vi])) return out;
  }
  for (std::size_t oi = 0; oi < D.orbits.size(); ++oi) {
    if (!kl_angle(S.kloos[oi], D.orbits[oi].size, A.theta[oi])) return out;
    CB G = R.embed(S.gauss[oi], bits);
    RB arg = cb_arg(G, bits);
    if (arg.err > target) return out;
    A.eps[oi] = arg.v < 0 ? Real(arg.v + two_pi) : arg.v;
    if (arg.err > A.max_err) A.max_err = arg.err;
  }
  out.ok = true;
  return out;
}

}  // namespace

AngleData compute_angles(const CycRing& R, const OrbitData& D, const OrbitSums& S, int start_bits,
                         double target_err, int max_bits) {
  int bits = std::max(start_bits, 64);
  for (;;) {
    Real target(target_err);
    AngleAttempt att = try_angles(R, D, S, bits, target);
    if (att.ok) return std::move(att.data);
    check(bits < max_bits, "angle resolution failed at maximal precision");
    bits *= 2;
  }
}

}  // namespace asurf
