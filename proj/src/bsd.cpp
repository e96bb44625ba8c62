#include "asurf/bsd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace asurf {

namespace {

// Affine points of y^2 = (x^3 + rho - 2)(x^3 + rho + 2) over the field cut
// out by `deg` inside the tower, plus the two rational points at infinity of
// the monic even-degree model.
BigInt curve_count(const FieldTower& F, int deg, const Elem& rho) {
  auto elems = F.subfield_elements(deg);
  std::uint64_t n = F.subfield_order(deg);
  Elem two = F.scalar(2);
  BigInt count = 0;
  for (const auto& x : elems) {
    Elem x3 = F.mul(F.mul(x, x), x);
    Elem f = F.mul(F.add(x3, F.sub(rho, two)), F.add(x3, F.add(rho, two)));
    if (F.is_zero(f)) {
      count += 1;
    } else if (F.eq(F.pow(f, (n - 1) / 2), F.one())) {
      count += 2;
    }
  }
  return count + 2;
}

// #J(F_v) = P_v(1) from point counts over F_v and F_{v^2}.
BigInt jacobian_order(const BigInt& qv, const BigInt& n1, const BigInt& n2) {
  BigInt t1 = qv + 1 - n1;
  BigInt t2 = qv * qv + 1 - n2;
  check((t1 * t1 - t2) % 2 == 0, "odd power-sum combination");
  BigInt e1 = t1;
  BigInt e2 = (t1 * t1 - t2) / 2;
  BigInt order = 1 - e1 + e2 - qv * e1 + qv * qv;
  // Weil interval [(sqrt(q_v)-1)^4, (sqrt(q_v)+1)^4]
  double s = std::sqrt(qv.convert_to<double>());
  double lo = std::pow(s - 1, 4), hi = std::pow(s + 1, 4);
  double ord = order.convert_to<double>();
  check(ord >= lo * (1 - 1e-9) && ord <= hi * (1 + 1e-9), "jacobian order outside Weil interval");
  return order;
}

std::vector<BigInt> divisors_of(const BigInt& n) {
  check(n > 0 && n < BigInt(1) << 62, "torsion bound out of range");
  std::uint64_t v = n.convert_to<std::uint64_t>();
  std::vector<BigInt> divs;
  for (std::uint64_t d = 1; d * d <= v; ++d) {
    if (v % d) continue;
    divs.emplace_back(d);
    if (d != v / d) divs.emplace_back(v / d);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

BigInt Invariants::H() const {
  return pow_bigint(params.q, h.convert_to<std::uint64_t>());
}

Invariants invariants(const FieldParams& params, int a) {
  Invariants inv;
  inv.params = params;
  inv.a = a;
  BigInt qa = pow_bigint(params.q, static_cast<std::uint64_t>(a));
  inv.h = qa + 1;
  inv.deg_N = 4 * qa + 4;
  return inv;
}

TorsionReport torsion_bound(const FieldParams& params, int a) {
  TorsionReport rep;
  const std::int64_t p = params.p;

  // Degree-2 place t^2 + c first: it is the only one whose count can differ
  // from the shared degree-1 count, so stabilization is informative.
  // c runs over F_p representatives; t^2 + c must stay irreducible over F_q.
  {
    std::optional<std::uint32_t> chosen;
    FieldTower F2(p, 2 * params.e);
    for (std::uint32_t c = 1; c < static_cast<std::uint32_t>(p); ++c) {
      // irreducible over F_q iff -c is not a square in F_q
      Elem mc = F2.neg(F2.scalar(c));
      bool has_root = false;
      for (const auto& x : F2.subfield_elements(params.e)) {
        if (F2.eq(F2.mul(x, x), mc)) {
          has_root = true;
          break;
        }
      }
      if (!has_root) {
        chosen = c;
        break;
      }
    }
    if (chosen) {
      BigInt qv = params.q * params.q;
      std::array<BigInt, 2> counts;
      for (int k = 1; k <= 2; ++k) {
        FieldTower T(p, 2 * params.e * k);
        // smallest-key root of t^2 = -c in this tower
        Elem mc = T.neg(T.scalar(*chosen));
        std::optional<Elem> tau;
        for (const auto& x : T.subfield_elements(2 * params.e)) {
          if (T.eq(T.mul(x, x), mc)) {
            tau = x;
            break;
          }
        }
        check(tau.has_value(), "square root lost in extension tower");
        // rho = tau^{q^a} - tau
        Elem im = *tau;
        for (int i = 0; i < a % 2; ++i) im = T.frob_pk(im, params.e);
        Elem rho = T.sub(im, *tau);
        Elem r2 = T.mul(rho, rho);
        check(!T.eq(r2, T.scalar(4)), "degree-2 place not good");
        counts[static_cast<std::size_t>(k - 1)] = curve_count(T, 2 * params.e * k, rho);
      }
      std::ostringstream label;
      label << "t^2+" << *chosen;
      rep.places.push_back({label.str(), 2, jacobian_order(qv, counts[0], counts[1])});
    }
  }

  // Degree-1 places t - c: the Artin-Schreier polynomial vanishes on F_q, so
  // every one is good and reduces to y^2 = x^6 - 4.
  {
    std::array<BigInt, 2> counts;
    for (int k = 1; k <= 2; ++k) {
      FieldTower T(p, params.e * k);
      counts[static_cast<std::size_t>(k - 1)] = curve_count(T, params.e * k, T.zero());
    }
    BigInt deg1_order = jacobian_order(params.q, counts[0], counts[1]);
    std::uint64_t q64 = params.q.convert_to<std::uint64_t>();
    for (std::uint64_t c = 0; c < q64; ++c) {
      std::ostringstream label;
      label << "t-" << c;
      rep.places.push_back({label.str(), 1, deg1_order});
    }
  }

  check(rep.places.size() >= 3, "need at least three good places");
  BigInt g = rep.places[0].jacobian_order;
  for (std::size_t i = 1; i < rep.places.size(); ++i) {
    g = gcd(g, rep.places[i].jacobian_order);
    if (i == 2) rep.bound_after3 = g;
  }
  rep.bound = g;
  rep.stabilized = (rep.bound == rep.bound_after3);
  BigInt unit;
  ord_p_int(rep.bound, BigInt(params.p), &unit);
  rep.prime_to_p = unit;
  rep.caveat =
      "only the prime-to-p part of the torsion order is certified by the "
      "reduction injection";
  return rep;
}

ShaReport sha_candidates(const BigRat& lstar, const Invariants& inv, const TorsionReport& torsion) {
  check(lstar > 0, "rank 0 must be established before solving for sha");
  ShaReport rep;
  rep.inv = inv;
  rep.special_value = lstar;
  rep.torsion = torsion;
  BigInt H = inv.H();
  BigRat base = lstar * BigRat(H, inv.params.q * inv.params.q);
  for (int c : inv.c_infty_candidates) {
    for (const BigInt& t : divisors_of(torsion.bound)) {
      ShaCandidate cand;
      cand.c_infty = c;
      cand.torsion = t;
      cand.sha = base * BigRat(t * t, c);
      cand.integral = (denominator(cand.sha) == 1) && cand.sha > 0;
      if (cand.integral) ++rep.integral_count;
      rep.table.push_back(std::move(cand));
    }
  }
  check(rep.integral_count > 0, "no integral sha candidate: invariant bug");
  return rep;
}

double brauer_siegel_ratio(const ShaCandidate& cand, const Invariants& inv) {
  PrecisionGuard guard(128);
  Real logsha = log(Real(numerator(cand.sha))) - log(Real(denominator(cand.sha)));
  Real logH = Real(inv.h) * log(Real(inv.params.q));
  return (logsha / logH).convert_to<double>();
}

double log_ratio_special_value(const BigRat& lstar, const Invariants& inv) {
  PrecisionGuard guard(128);
  Real logl = log(Real(numerator(lstar))) - log(Real(denominator(lstar)));
  Real logH = Real(inv.h) * log(Real(inv.params.q));
  return (logl / logH).convert_to<double>();
}

std::vector<std::pair<BigRat, int>> newton_polygon_slopes(const IntPoly& L, const FieldParams& params) {
  struct Pt {
    std::int64_t x;
    std::int64_t y;
  };
  std::vector<Pt> pts;
  for (std::size_t i = 0; i < L.c.size(); ++i) {
    if (L.c[i] == 0) continue;
    pts.push_back({static_cast<std::int64_t>(i), ord_p_int(L.c[i], BigInt(params.p))});
  }
  check(pts.size() >= 2, "degenerate polynomial");
  // lower convex hull, left to right
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a-pt
      if ((b.y - a.y) * (pt.x - a.x) < (pt.y - a.y) * (b.x - a.x)) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  std::vector<std::pair<BigRat, int>> slopes;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    std::int64_t dx = hull[i].x - hull[i - 1].x;
    std::int64_t dy = hull[i].y - hull[i - 1].y;
    slopes.emplace_back(BigRat(dy, dx * params.e), static_cast<int>(dx));
  }
  return slopes;
}

DimShaReport dim_sha(const OrbitData& D, const IntPoly* L) {
  DimShaReport rep;
  BigInt qa = pow_bigint(D.params.q, static_cast<std::uint64_t>(D.a));
  BigRat h(qa + 1);

  BigRat total = 0;
  for (const auto& o : D.orbits) {
    BigRat vg = gauss_valuation(D, o);
    for (int i = 0; i < 2; ++i) {
      BigRat vk = (i == 0) ? BigRat(0) : BigRat(o.size);  // the kappa valuations are {0, |o|}
      BigRat slack = BigRat(o.size) - (vg + vk);
      if (slack > 0) total += slack;
    }
  }
  rep.valuation_route = h - 2 - total;

  if (L) {
    BigRat acc = 0;
    for (const auto& [slope, len] : newton_polygon_slopes(*L, D.params)) {
      BigRat contrib = (BigRat(1) - slope) * len;
      if (contrib > 0) acc += contrib;
    }
    rep.newton_route = h - 2 - acc;
  }
  return rep;
}

}  // namespace asurf
