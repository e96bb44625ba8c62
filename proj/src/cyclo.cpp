#include "asurf/cyclo.hpp"

#include <algorithm>
#include <numeric>

namespace asurf {

namespace {

// Exact division of integer polynomials, used to build Phi_{3p} from
// (x^{3p} - 1)(x - 1) / ((x^3 - 1)(x^p - 1)).
std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> r(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

std::vector<BigInt> poly_div_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  check(!den.empty() && den.back() == 1, "divisor must be monic");
  check(num.size() >= den.size(), "bad division");
  std::vector<BigInt> q(num.size() - den.size() + 1, BigInt(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    BigInt c = num[i + den.size() - 1];
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (const auto& v : num) check(v == 0, "division not exact");
  return q;
}

std::vector<BigInt> x_pow_minus_one(std::int64_t n) {
  std::vector<BigInt> f(static_cast<std::size_t>(n) + 1, BigInt(0));
  f[0] = -1;
  f[static_cast<std::size_t>(n)] = 1;
  return f;
}

}  // namespace

CycRing::CycRing(std::int64_t p) : p_(p), deg_(static_cast<int>(2 * (p - 1))) {
  check(p >= 5 && p % 3 != 0 && is_prime_u64(static_cast<std::uint64_t>(p)),
        "conductor requires prime p >= 5, p != 3");
  auto num = poly_mul(x_pow_minus_one(3 * p), x_pow_minus_one(1));
  auto den = poly_mul(x_pow_minus_one(3), x_pow_minus_one(p));
  phi_ = poly_div_exact(std::move(num), den);
  check(static_cast<int>(phi_.size()) == deg_ + 1 && phi_.back() == 1, "cyclotomic degree mismatch");
  zeta_table_.resize(static_cast<std::size_t>(3 * p));
  for (std::int64_t k = 0; k < 3 * p; ++k) {
    std::vector<BigInt> v(static_cast<std::size_t>(k) + 1, BigInt(0));
    v.back() = 1;
    reduce(v);
    zeta_table_[static_cast<std::size_t>(k)] = std::move(v);
  }
}

void CycRing::reduce(std::vector<BigInt>& v) const {
  const std::size_t d = static_cast<std::size_t>(deg_);
  if (v.size() <= d) {
    v.resize(d, BigInt(0));
    return;
  }
  for (std::size_t i = v.size(); i-- > d;) {
    BigInt c = std::move(v[i]);
    v[i] = 0;
    if (c == 0) continue;
    for (std::size_t j = 0; j < d; ++j) v[i - d + j] -= c * phi_[j];
  }
  v.resize(d);
}

void CycRing::require_same(const CycInt& a, const CycInt& b) const {
  check(a.ring == this && b.ring == this, "conductor mismatch");
}

CycInt CycRing::zero() const {
  return CycInt{this, std::vector<BigInt>(static_cast<std::size_t>(deg_), BigInt(0))};
}

CycInt CycRing::integer(BigInt v) const {
  CycInt r = zero();
  r.c[0] = std::move(v);
  return r;
}

CycInt CycRing::zeta_pow(std::int64_t k) const {
  k %= conductor();
  if (k < 0) k += conductor();
  return CycInt{this, zeta_table_[static_cast<std::size_t>(k)]};
}

CycInt CycRing::zeta_p_pow(std::int64_t t) const {
  t %= p_;
  if (t < 0) t += p_;
  return zeta_pow(3 * t);
}

CycInt CycRing::zeta3_pow(std::int64_t j) const {
  j %= 3;
  if (j < 0) j += 3;
  return zeta_pow(p_ * j);
}

CycInt CycRing::from_tally(const std::vector<BigInt>& tally) const {
  check(static_cast<std::int64_t>(tally.size()) == conductor(), "tally length must be 3p");
  std::vector<BigInt> v = tally;
  reduce(v);
  return CycInt{this, std::move(v)};
}

CycInt CycRing::add(const CycInt& a, const CycInt& b) const {
  require_same(a, b);
  CycInt r = a;
  for (int i = 0; i < deg_; ++i) r.c[static_cast<std::size_t>(i)] += b.c[static_cast<std::size_t>(i)];
  return r;
}

CycInt CycRing::sub(const CycInt& a, const CycInt& b) const {
  require_same(a, b);
  CycInt r = a;
  for (int i = 0; i < deg_; ++i) r.c[static_cast<std::size_t>(i)] -= b.c[static_cast<std::size_t>(i)];
  return r;
}

CycInt CycRing::neg(const CycInt& a) const {
  check(a.ring == this, "conductor mismatch");
  CycInt r = a;
  for (auto& v : r.c) v = -v;
  return r;
}

CycInt CycRing::mul(const CycInt& a, const CycInt& b) const {
  require_same(a, b);
  std::vector<BigInt> t(2 * static_cast<std::size_t>(deg_) - 1, BigInt(0));
  for (int i = 0; i < deg_; ++i) {
    const BigInt& ai = a.c[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < deg_; ++j) {
      const BigInt& bj = b.c[static_cast<std::size_t>(j)];
      if (bj == 0) continue;
      t[static_cast<std::size_t>(i + j)] += ai * bj;
    }
  }
  reduce(t);
  return CycInt{this, std::move(t)};
}

CycInt CycRing::mul_int(const CycInt& a, const BigInt& s) const {
  check(a.ring == this, "conductor mismatch");
  CycInt r = a;
  for (auto& v : r.c) v *= s;
  return r;
}

void CycRing::mul_acc(std::vector<BigInt>& acc, const CycInt& a, const CycInt& b) const {
  require_same(a, b);
  check(acc.size() == 2 * static_cast<std::size_t>(deg_) - 1, "bad accumulator length");
  for (int i = 0; i < deg_; ++i) {
    const BigInt& ai = a.c[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    for (int j = 0; j < deg_; ++j) {
      const BigInt& bj = b.c[static_cast<std::size_t>(j)];
      if (bj == 0) continue;
      mpz_addmul(acc[static_cast<std::size_t>(i + j)].backend().data(), ai.backend().data(),
                 bj.backend().data());
    }
  }
}

CycInt CycRing::finish(std::vector<BigInt> acc) const {
  reduce(acc);
  return CycInt{this, std::move(acc)};
}

CycInt CycRing::pow(const CycInt& a, std::uint64_t n) const {
  check(a.ring == this, "conductor mismatch");
  CycInt r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    n >>= 1;
    if (n) b = mul(b, b);
  }
  return r;
}

CycInt CycRing::galois(const CycInt& a, std::int64_t k) const {
  check(a.ring == this, "conductor mismatch");
  k %= conductor();
  if (k < 0) k += conductor();
  check(std::gcd(k, conductor()) == 1, "galois exponent not coprime to conductor");
  CycInt r = zero();
  for (int i = 0; i < deg_; ++i) {
    const BigInt& ai = a.c[static_cast<std::size_t>(i)];
    if (ai == 0) continue;
    std::int64_t e = (static_cast<std::int64_t>(i) * k) % conductor();
    const auto& z = zeta_table_[static_cast<std::size_t>(e)];
    for (int j = 0; j < deg_; ++j) r.c[static_cast<std::size_t>(j)] += ai * z[static_cast<std::size_t>(j)];
  }
  return r;
}

bool CycRing::eq(const CycInt& a, const CycInt& b) const {
  require_same(a, b);
  return a.c == b.c;
}

bool CycRing::is_zero(const CycInt& a) const {
  check(a.ring == this, "conductor mismatch");
  return std::all_of(a.c.begin(), a.c.end(), [](const BigInt& v) { return v == 0; });
}

std::optional<BigInt> CycRing::as_integer(const CycInt& a) const {
  check(a.ring == this, "conductor mismatch");
  for (int i = 1; i < deg_; ++i) {
    if (a.c[static_cast<std::size_t>(i)] != 0) return std::nullopt;
  }
  return a.c[0];
}

CB CycRing::embed(const CycInt& a, int prec_bits) const {
  check(a.ring == this, "conductor mismatch");
  check(prec_bits >= 64, "embedding precision too low");
  PrecisionGuard guard(prec_bits);
  Real two_pi = 8 * atan(Real(1));
  Real ang = two_pi / Real(conductor());
  CB zeta{MC{cos(ang), sin(ang)}, ulp_scale(prec_bits) * 8};
  CB acc = cb_exact(mc(0));
  for (int i = deg_ - 1; i >= 0; --i) {
    acc = cb_mul(acc, zeta, prec_bits);
    CB coef = cb_exact(MC{Real(a.c[static_cast<std::size_t>(i)]), Real(0)});
    coef.err = abs(coef.z.re) * ulp_scale(prec_bits);  // one rounding on conversion
    acc = cb_add(acc, coef, prec_bits);
  }
  return acc;
}

BigRat ord_frak_p(const BigInt& n, const FieldParams& params) {
  check(n != 0, "valuation of zero");
  int ord = ord_p_int(n, BigInt(params.p));
  return BigRat(ord, params.e);
}

}  // namespace asurf
