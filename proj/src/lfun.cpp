#include "asurf/lfun.hpp"

#include <algorithm>

namespace asurf {

namespace {

// Polynomial over Z[zeta_{3p}], constant term first.
using CycPoly = std::vector<CycInt>;

CycPoly cyc_poly_mul(const CycRing& R, const CycPoly& a, const CycPoly& b) {
  const std::size_t acc_len = 2 * static_cast<std::size_t>(R.degree()) - 1;
  std::vector<std::vector<BigInt>> acc(a.size() + b.size() - 1,
                                       std::vector<BigInt>(acc_len, BigInt(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (R.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (R.is_zero(b[j])) continue;
      R.mul_acc(acc[i + j], a[i], b[j]);
    }
  }
  CycPoly r;
  r.reserve(acc.size());
  for (auto& v : acc) r.push_back(R.finish(std::move(v)));
  return r;
}

// Deterministic balanced-tree product; the tree shape only affects speed.
CycPoly cyc_tree_product(const CycRing& R, std::vector<CycPoly> level, int jobs) {
  if (level.empty()) return CycPoly{R.one()};
  while (level.size() > 1) {
    std::vector<CycPoly> next((level.size() + 1) / 2);
    parallel_for(next.size(), jobs, [&](std::size_t i) {
      if (2 * i + 1 < level.size()) {
        next[i] = cyc_poly_mul(R, level[2 * i], level[2 * i + 1]);
      } else {
        next[i] = std::move(level[2 * i]);
      }
    });
    level = std::move(next);
  }
  return level[0];
}

}  // namespace

int IntPoly::degree() const {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

const BigInt& IntPoly::coeff(std::size_t i) const {
  static const BigInt zero(0);
  return i < c.size() ? c[i] : zero;
}

LResult l_polynomial(const CycRing& R, const OrbitData& D, const OrbitSums& S, int jobs) {
  LResult out;
  out.factors.resize(D.orbits.size());
  std::vector<CycPoly> factors(D.orbits.size());
  parallel_for(D.orbits.size(), jobs, [&](std::size_t oi) {
    const FullOrbit& o = D.orbits[oi];
    CycInt a1 = R.mul(S.gauss[oi], S.kloos[oi]);
    BigInt qo = pow_bigint(D.params.q, static_cast<std::uint64_t>(o.size));
    CycInt a2 = R.mul_int(R.mul(S.gauss[oi], S.gauss[oi]), qo);
    out.factors[oi] = LFactor{oi, o.size, a1, a2};
    CycPoly f(static_cast<std::size_t>(2 * o.size) + 1, R.zero());
    f[0] = R.one();
    f[static_cast<std::size_t>(o.size)] = R.neg(a1);
    f[static_cast<std::size_t>(2 * o.size)] = a2;
    factors[oi] = std::move(f);
  });

  CycPoly prod = cyc_tree_product(R, std::move(factors), jobs);

  const BigInt qa = pow_bigint(D.params.q, static_cast<std::uint64_t>(D.a));
  const std::size_t want_deg = static_cast<std::size_t>(4 * (qa - 1).convert_to<std::int64_t>());
  check(prod.size() == want_deg + 1, "assembled degree mismatch");

  out.L.c.resize(prod.size());
  for (std::size_t i = 0; i < prod.size(); ++i) {
    auto v = R.as_integer(prod[i]);
    check(v.has_value(), "integrality collapse failed at T^" + std::to_string(i));
    out.L.c[i] = std::move(*v);
  }
  check(out.L.c[0] == 1, "constant term must be 1");
  check(out.L.degree() == static_cast<int>(want_deg), "degree mismatch after collapse");
  return out;
}

int verify_functional_equation(const IntPoly& L, const BigInt& q) {
  const int b = L.degree();
  check(b >= 0, "empty polynomial");
  // find w from the outermost nonzero pair, then check every mirror pair
  int w = 0;
  for (int i = 0; i <= b; ++i) {
    const BigInt& ai = L.coeff(static_cast<std::size_t>(i));
    if (ai == 0) continue;
    BigInt rhs = pow_bigint(q, static_cast<std::uint64_t>(b - 2 * i >= 0 ? b - 2 * i : 0)) * ai;
    if (b - 2 * i < 0) break;  // past the middle; determined already
    const BigInt& mirror = L.coeff(static_cast<std::size_t>(b - i));
    if (mirror == rhs) {
      w = +1;
    } else if (mirror == -rhs) {
      w = -1;
    } else {
      fail("functional equation fails at the first nonzero coefficient");
    }
    break;
  }
  check(w != 0, "no sign candidate found");
  for (int i = 0; i <= b; ++i) {
    BigInt lhs = L.coeff(static_cast<std::size_t>(b - i));
    BigInt rhs;
    if (2 * i <= b) {
      rhs = w * L.coeff(static_cast<std::size_t>(i)) * pow_bigint(q, static_cast<std::uint64_t>(b - 2 * i));
    } else {
      // a_{b-i} q^{2i-b} = w a_i, exact over Z
      rhs = w * L.coeff(static_cast<std::size_t>(i));
      lhs *= pow_bigint(q, static_cast<std::uint64_t>(2 * i - b));
    }
    check(lhs == rhs, "functional equation fails at index " + std::to_string(i));
  }
  return w;
}

RHReport verify_riemann_hypothesis(const IntPoly& L, const BigInt& q, const OrbitData& D,
                                   const AngleData& A, double tol, int prec_bits, int jobs) {
  const int b = L.degree();
  int bits = std::max(prec_bits, b + 256);
  PrecisionGuard guard(bits);
  RHReport rep;
  rep.prec_bits = bits;

  std::vector<MC> coeffs;
  coeffs.reserve(static_cast<std::size_t>(b) + 1);
  for (int i = 0; i <= b; ++i) coeffs.push_back(MC{Real(L.coeff(static_cast<std::size_t>(i))), Real(0)});
  std::vector<MC> dcoeffs;
  dcoeffs.reserve(static_cast<std::size_t>(b));
  for (int i = 1; i <= b; ++i)
    dcoeffs.push_back(MC{Real(i) * coeffs[static_cast<std::size_t>(i)].re, Real(0)});

  auto horner = [](const std::vector<MC>& cs, const MC& z) {
    MC acc{Real(0), Real(0)};
    for (std::size_t i = cs.size(); i-- > 0;) acc = mc_add(mc_mul(acc, z), cs[i]);
    return acc;
  };

  // Closed-form seeds: for each orbit and each branch eps +- theta, the |o|
  // roots z with z^{|o|} = q^{-|o|} e^{-i(eps +- theta)}.
  Real qr(q);
  Real inv_q = 1 / qr;
  Real two_pi = 8 * atan(Real(1));
  Real huge_scale = 0;
  for (int i = 0; i <= b; ++i) {
    Real t = abs(coeffs[static_cast<std::size_t>(i)].re) / pow(qr, i);
    if (t > huge_scale) huge_scale = t;
  }
  // seeds carry the angle error (<= 1e-30); polish until steps fall well below
  Real step_stop = inv_q * Real("1e-25");

  struct Seed {
    Real phase;
    int osize;
    int m;
  };
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(b));
  for (std::size_t oi = 0; oi < D.orbits.size(); ++oi) {
    const int osize = D.orbits[oi].size;
    for (int branch = 0; branch < 2; ++branch) {
      Real phase = branch == 0 ? Real(A.eps[oi] + A.theta[oi]) : Real(A.eps[oi] - A.theta[oi]);
      for (int m = 0; m < osize; ++m) seeds.push_back({phase, osize, m});
    }
  }
  check(seeds.size() == static_cast<std::size_t>(b), "closed-form root count disagrees with degree");

  std::vector<double> devs(seeds.size(), 0), ress(seeds.size(), 0);
  // workers inherit the process-wide precision set above; nothing else
  // touches it during this call
  parallel_for(seeds.size(), jobs, [&](std::size_t si) {
    const Seed& s = seeds[si];
    Real ang = -(s.phase + two_pi * s.m) / s.osize;
    MC z{inv_q * cos(ang), inv_q * sin(ang)};
    // guarded Newton: multiple roots sit at the evaluation-noise floor, so
    // only residual-decreasing steps are accepted
    MC fz = horner(coeffs, z);
    Real fabs_cur = mc_abs(fz);
    for (int it = 0; it < 60; ++it) {
      MC dz = horner(dcoeffs, z);
      Real dn = dz.re * dz.re + dz.im * dz.im;
      if (dn == 0) break;
      MC step = mc_div(fz, dz);
      MC znew = mc_sub(z, step);
      MC fnew = horner(coeffs, znew);
      Real fabs_new = mc_abs(fnew);
      if (!(fabs_new < fabs_cur)) break;
      z = znew;
      fz = fnew;
      fabs_cur = fabs_new;
      if (mc_abs(step) < step_stop) break;
    }
    Real dev = abs(mc_abs(z) - inv_q);
    devs[si] = dev.convert_to<double>();
    ress[si] = (fabs_cur / (huge_scale + 1)).convert_to<double>();
  });
  double max_dev = 0, max_res = 0;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    max_dev = std::max(max_dev, devs[si]);
    max_res = std::max(max_res, ress[si]);
  }
  rep.max_abs_deviation = max_dev;  // | |z| - 1/q |
  rep.max_residual_scale = max_res;
  rep.pass = rep.max_abs_deviation < tol && max_res < 1e-9;
  return rep;
}

BigRat special_value(const IntPoly& L, const BigInt& q) {
  const int b = L.degree();
  BigInt num = 0;
  BigInt qb = pow_bigint(q, static_cast<std::uint64_t>(b));
  BigInt scale = qb;
  for (int i = 0; i <= b; ++i) {
    num += L.coeff(static_cast<std::size_t>(i)) * scale;
    if (i < b) scale /= q;
  }
  BigRat v(num, qb);
  check(v != 0, "special value vanishes: analytic rank would be positive");
  check(v > 0, "special value must be positive");
  return v;
}

Real special_value_angles(const AngleData& A, int prec_bits) {
  PrecisionGuard guard(prec_bits);
  Real prod = 1;
  for (std::size_t oi = 0; oi < A.eps.size(); ++oi) {
    Real f = 4 * abs(sin((A.eps[oi] + A.theta[oi]) / 2) * sin((A.eps[oi] - A.theta[oi]) / 2));
    check(f > 0, "vanishing sine factor");
    prod *= f;
  }
  return prod;
}

Real log_special_value_angles(const AngleData& A, int prec_bits) {
  PrecisionGuard guard(prec_bits);
  Real acc = 0;
  for (std::size_t oi = 0; oi < A.eps.size(); ++oi) {
    Real f = 4 * abs(sin((A.eps[oi] + A.theta[oi]) / 2) * sin((A.eps[oi] - A.theta[oi]) / 2));
    check(f > 0, "vanishing sine factor");
    acc += log(f);
  }
  return acc;
}

}  // namespace asurf
