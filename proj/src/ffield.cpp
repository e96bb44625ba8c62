#include "asurf/ffield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace asurf {

namespace {

// Dense polynomials over F_p with u32 coefficients, used only for modulus
// search and irreducibility testing.
using Poly = std::vector<std::uint32_t>;

Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod, std::int64_t p) {
  std::vector<std::uint64_t> t(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      t[i + j] = (t[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
  }
  // mod is monic of degree m
  const std::size_t m = mod.size() - 1;
  for (std::size_t i = t.size(); i-- > m + 1;) {
    std::uint64_t c = t[i - 1];
    if (!c) continue;
    t[i - 1] = 0;
    for (std::size_t j = 0; j < m; ++j) {
      std::uint64_t sub = c * mod[j] % p;
      std::size_t pos = i - 1 - m + j;
      t[pos] = (t[pos] + p - sub) % p;
    }
  }
  Poly r(m, 0);
  for (std::size_t i = 0; i < m && i < t.size(); ++i) r[i] = static_cast<std::uint32_t>(t[i]);
  return r;
}

Poly poly_powmod_x_pk(const Poly& mod, std::int64_t p, int k) {
  // x^{p^k} mod f via k successive p-th powers
  const std::size_t m = mod.size() - 1;
  Poly x(m, 0);
  if (m == 1) {
    x[0] = static_cast<std::uint32_t>((p - mod[0]) % p);  // x = -c0
  } else {
    x[1] = 1;
  }
  Poly r = x;
  for (int step = 0; step < k; ++step) {
    // r <- r^p by square-and-multiply on exponent p
    Poly acc(m, 0);
    acc[0] = 1;
    Poly base = r;
    std::int64_t e = p;
    while (e) {
      if (e & 1) acc = poly_mulmod(acc, base, mod, p);
      e >>= 1;
      if (e) base = poly_mulmod(base, base, mod, p);
    }
    r = acc;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  auto inv_mod_p = [p](std::uint32_t v) {
    std::int64_t t = 1, base = v, e = p - 2;
    while (e) {
      if (e & 1) t = t * base % p;
      e >>= 1;
      base = base * base % p;
    }
    return static_cast<std::uint32_t>(t);
  };
  while (!b.empty()) {
    // a mod b
    std::uint32_t lc_inv = inv_mod_p(b.back());
    while (a.size() >= b.size() && !a.empty()) {
      std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lc_inv % p;
      if (c) {
        std::size_t off = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
          std::uint64_t sub = c * b[j] % p;
          a[off + j] = static_cast<std::uint32_t>((a[off + j] + p - sub) % p);
        }
      }
      a = poly_trim(std::move(a));
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::int64_t p) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m == 1) return true;
  // x^{p^m} == x mod f
  Poly xpm = poly_powmod_x_pk(f, p, m);
  Poly x(m, 0);
  x[1] = 1;
  if (poly_trim(xpm) != poly_trim(x)) return false;
  // gcd(x^{p^{m/l}} - x, f) == 1 for every prime l | m
  for (std::uint64_t l : factor_u64(static_cast<std::uint64_t>(m))) {
    Poly g = poly_powmod_x_pk(f, p, m / static_cast<int>(l));
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = static_cast<std::uint32_t>((g[1] + p - 1) % p);
    Poly d = poly_gcd(g, f, p);
    if (poly_trim(std::move(d)).size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> factor_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

FieldParams::FieldParams(std::int64_t p_, int e_) : p(p_), e(e_) {
  check(e >= 1, "field exponent must be positive");
  check(p >= 5 && is_prime_u64(static_cast<std::uint64_t>(p)), "characteristic must be a prime >= 5");
  q = pow_bigint(BigInt(p), static_cast<std::uint64_t>(e));
}

FieldParams FieldParams::from_q(const BigInt& q_in, bool allow_small_char) {
  check(q_in >= 2, "q must be >= 2");
  check(q_in < BigInt(1) << 40, "q out of supported range");
  std::uint64_t q64 = q_in.convert_to<std::uint64_t>();
  auto primes = factor_u64(q64);
  check(primes.size() == 1, "q must be a prime power");
  std::int64_t p = static_cast<std::int64_t>(primes[0]);
  int e = 0;
  std::uint64_t t = q64;
  while (t > 1) {
    t /= primes[0];
    ++e;
  }
  std::int64_t min_p = allow_small_char ? 5 : 7;
  check(p >= min_p, "characteristic below supported bound");
  return FieldParams(p, e);
}

std::vector<std::uint32_t> deterministic_irreducible(std::int64_t p, int deg) {
  check(deg >= 1 && deg <= kMaxFieldDeg, "modulus degree out of range");
  std::uint64_t count = pow_u64_checked(static_cast<std::uint64_t>(p), static_cast<unsigned>(deg));
  for (std::uint64_t k = 0; k < count; ++k) {
    Poly f(deg + 1, 0);
    std::uint64_t t = k;
    for (int i = 0; i < deg; ++i) {
      f[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    f[deg] = 1;
    if (is_irreducible(f, p)) return f;
  }
  fail("no irreducible polynomial found");  // unreachable
}

FieldTower::FieldTower(std::int64_t p, int deg) : p_(p), m_(deg) {
  check(p >= 2 && is_prime_u64(static_cast<std::uint64_t>(p)), "characteristic must be prime");
  check(p < (1 << 20), "characteristic out of supported range");
  check(deg >= 1 && deg <= kMaxFieldDeg, "tower degree out of range");
  size_ = pow_u64_checked(static_cast<std::uint64_t>(p), static_cast<unsigned>(deg));
  mod_ = deterministic_irreducible(p, deg);
  // Frobenius is F_p-linear; tabulate images of the basis.
  Elem x = (m_ == 1) ? scalar(static_cast<std::uint32_t>((p_ - mod_[0]) % p_)) : from_key(static_cast<std::uint64_t>(p_));
  Elem xi = one();
  for (int i = 0; i < m_; ++i) {
    frob_basis_[i] = pow(xi, static_cast<std::uint64_t>(p_));
    xi = mul(xi, x);
  }
}

std::uint64_t FieldTower::subfield_order(int d) const {
  check(d >= 1 && m_ % d == 0, "not a subfield degree");
  return pow_u64_checked(static_cast<std::uint64_t>(p_), static_cast<unsigned>(d));
}

std::string FieldTower::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = m_; i >= 0; --i) {
    std::uint32_t c = mod_[i];
    if (!c) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i > 0) {
      if (c != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

Elem FieldTower::scalar(std::uint32_t v) const {
  Elem r;
  r.c[0] = static_cast<std::uint32_t>(v % p_);
  return r;
}

bool FieldTower::is_zero(const Elem& a) const {
  for (int i = 0; i < m_; ++i)
    if (a.c[i]) return false;
  return true;
}

bool FieldTower::eq(const Elem& a, const Elem& b) const {
  for (int i = 0; i < m_; ++i)
    if (a.c[i] != b.c[i]) return false;
  return true;
}

Elem FieldTower::add(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < m_; ++i) {
    std::uint32_t s = a.c[i] + b.c[i];
    r.c[i] = (s >= p_) ? s - static_cast<std::uint32_t>(p_) : s;
  }
  return r;
}

Elem FieldTower::sub(const Elem& a, const Elem& b) const {
  Elem r;
  for (int i = 0; i < m_; ++i) {
    std::int64_t s = static_cast<std::int64_t>(a.c[i]) - b.c[i];
    r.c[i] = static_cast<std::uint32_t>(s < 0 ? s + p_ : s);
  }
  return r;
}

Elem FieldTower::neg(const Elem& a) const { return sub(zero(), a); }

void FieldTower::reduce(std::array<std::uint64_t, 2 * kMaxFieldDeg>& t, Elem& out) const {
  for (int i = 0; i < 2 * m_ - 1; ++i) t[i] %= static_cast<std::uint64_t>(p_);
  // fold down by the monic modulus; re-reduce the touched window each step
  for (int i = 2 * m_ - 2; i >= m_; --i) {
    const std::uint64_t c = t[i];
    t[i] = 0;
    if (!c) continue;
    for (int j = 0; j < m_; ++j) {
      t[i - m_ + j] += (static_cast<std::uint64_t>(p_) - mod_[j]) * c;
      t[i - m_ + j] %= static_cast<std::uint64_t>(p_);
    }
  }
  for (int i = 0; i < m_; ++i) out.c[i] = static_cast<std::uint32_t>(t[i]);
}

Elem FieldTower::mul(const Elem& a, const Elem& b) const {
  std::array<std::uint64_t, 2 * kMaxFieldDeg> t{};
  for (int i = 0; i < m_; ++i) {
    if (!a.c[i]) continue;
    const std::uint64_t ai = a.c[i];
    for (int j = 0; j < m_; ++j) t[i + j] += ai * b.c[j];
  }
  Elem r;
  reduce(t, r);
  return r;
}

Elem FieldTower::pow(Elem a, std::uint64_t n) const {
  Elem r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

Elem FieldTower::pow(const Elem& a, const BigInt& n) const {
  check(n >= 0, "negative exponent");
  Elem r = one(), b = a;
  BigInt e = n;
  while (e != 0) {
    if (bit_test(e, 0)) r = mul(r, b);
    e >>= 1;
    if (e != 0) b = mul(b, b);
  }
  return r;
}

Elem FieldTower::inv(const Elem& a) const {
  check(!is_zero(a), "inverse of zero");
  return pow(a, size_ - 2);
}

std::uint64_t FieldTower::key(const Elem& a) const {
  std::uint64_t k = 0;
  for (int i = m_ - 1; i >= 0; --i) k = k * static_cast<std::uint64_t>(p_) + a.c[i];
  return k;
}

Elem FieldTower::from_key(std::uint64_t k) const {
  Elem r;
  for (int i = 0; i < m_; ++i) {
    r.c[i] = static_cast<std::uint32_t>(k % p_);
    k /= static_cast<std::uint64_t>(p_);
  }
  check(k == 0, "key out of range");
  return r;
}

Elem FieldTower::frob_p(const Elem& a) const {
  Elem r;
  std::array<std::uint64_t, kMaxFieldDeg> t{};
  for (int i = 0; i < m_; ++i) {
    if (!a.c[i]) continue;
    const std::uint64_t ai = a.c[i];
    for (int j = 0; j < m_; ++j) t[j] += ai * frob_basis_[i].c[j];
  }
  for (int j = 0; j < m_; ++j) r.c[j] = static_cast<std::uint32_t>(t[j] % p_);
  return r;
}

Elem FieldTower::frob_pk(const Elem& a, int k) const {
  Elem r = a;
  k %= m_;
  if (k < 0) k += m_;
  for (int i = 0; i < k; ++i) r = frob_p(r);
  return r;
}

std::uint32_t FieldTower::abs_trace(const Elem& a) const {
  Elem s = a, f = a;
  for (int i = 1; i < m_; ++i) {
    f = frob_p(f);
    s = add(s, f);
  }
  for (int i = 1; i < m_; ++i) check(s.c[i] == 0, "trace not in prime field");
  return s.c[0];
}

Elem FieldTower::trace(const Elem& a, int d_from, int d_to) const {
  check(d_to >= 1 && d_from % d_to == 0 && m_ % d_from == 0, "trace: not a subfield pair");
  check(in_subfield(a, d_from), "trace: element not in stated field");
  Elem s = zero(), f = a;
  for (int i = 0; i < d_from / d_to; ++i) {
    s = add(s, f);
    f = frob_pk(f, d_to);
  }
  return s;
}

Elem FieldTower::norm(const Elem& a, int d_from, int d_to) const {
  check(d_to >= 1 && d_from % d_to == 0 && m_ % d_from == 0, "norm: not a subfield pair");
  check(in_subfield(a, d_from), "norm: element not in stated field");
  if (is_zero(a)) return zero();
  // N(a) = a^{(p^{d_from}-1)/(p^{d_to}-1)}
  std::uint64_t num = subfield_order(d_from) - 1;
  std::uint64_t den = subfield_order(d_to) - 1;
  return pow(a, num / den);
}

bool FieldTower::in_subfield(const Elem& a, int d) const {
  check(d >= 1 && m_ % d == 0, "not a subfield degree");
  return eq(frob_pk(a, d), a);
}

std::vector<Elem> FieldTower::subfield_elements(int d) const {
  check(d >= 1 && m_ % d == 0, "not a subfield degree");
  std::vector<Elem> out;
  out.reserve(subfield_order(d));
  for (std::uint64_t k = 0; k < size_; ++k) {
    Elem x = from_key(k);
    if (in_subfield(x, d)) out.push_back(x);
  }
  return out;  // already ordered by key
}

std::vector<Elem> FieldTower::frobenius_orbit(const Elem& a, int e) const {
  std::vector<Elem> out{a};
  Elem x = frob_pk(a, e);
  while (!eq(x, a)) {
    out.push_back(x);
    x = frob_pk(x, e);
  }
  return out;
}

Elem FieldTower::generator(int d) const {
  std::uint64_t n = subfield_order(d) - 1;
  auto primes = factor_u64(n);
  for (std::uint64_t k = 1; k < size_; ++k) {
    Elem x = from_key(k);
    if (!in_subfield(x, d) || is_zero(x)) continue;
    bool primitive = true;
    for (std::uint64_t l : primes) {
      if (eq(pow(x, n / l), one())) {
        primitive = false;
        break;
      }
    }
    if (primitive) return x;
  }
  fail("no generator found");
}

}  // namespace asurf
