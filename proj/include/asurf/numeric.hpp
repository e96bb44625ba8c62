#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace asurf {

using BigInt = boost::multiprecision::mpz_int;
using BigRat = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

inline unsigned digits_for_bits(int bits) {
  return static_cast<unsigned>(bits * 0.30103) + 8;
}

// Scoped working precision for mpfr temporaries. The default precision is a
// process-wide setting in this backend, so all higher-precision numerics run
// on one thread; only exact integer work is parallelised.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits) : old_(Real::default_precision()) {
    Real::default_precision(digits_for_bits(bits));
  }
  ~PrecisionGuard() { Real::default_precision(old_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned old_;
};

struct MC {
  Real re, im;
};

inline MC mc(double re, double im = 0) { return MC{Real(re), Real(im)}; }
inline MC mc_add(const MC& a, const MC& b) { return {a.re + b.re, a.im + b.im}; }
inline MC mc_sub(const MC& a, const MC& b) { return {a.re - b.re, a.im - b.im}; }
inline MC mc_mul(const MC& a, const MC& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline MC mc_scale(const MC& a, const Real& s) { return {a.re * s, a.im * s}; }
inline Real mc_abs(const MC& a) { return sqrt(a.re * a.re + a.im * a.im); }
inline Real mc_arg(const MC& a) { return atan2(a.im, a.re); }
inline MC mc_div(const MC& a, const MC& b) {
  Real n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}
inline MC mc_conj(const MC& a) { return {a.re, -a.im}; }

// 2^{-bits+3}: one rounding unit with 8x slack, used as the per-operation
// relative error contribution at working precision `bits`.
inline Real ulp_scale(int bits) {
  Real u = 1;
  return ldexp(u, -bits + 3);
}

// Complex value with rigorous absolute error radius.
struct CB {
  MC z;
  Real err;
};

inline CB cb_exact(MC z) { return CB{std::move(z), Real(0)}; }

inline CB cb_add(const CB& a, const CB& b, int bits) {
  MC z = mc_add(a.z, b.z);
  Real e = a.err + b.err + mc_abs(z) * ulp_scale(bits);
  return {std::move(z), std::move(e)};
}

inline CB cb_sub(const CB& a, const CB& b, int bits) {
  MC z = mc_sub(a.z, b.z);
  Real e = a.err + b.err + mc_abs(z) * ulp_scale(bits);
  return {std::move(z), std::move(e)};
}

inline CB cb_mul(const CB& a, const CB& b, int bits) {
  MC z = mc_mul(a.z, b.z);
  Real na = mc_abs(a.z), nb = mc_abs(b.z);
  Real e = na * b.err + nb * a.err + a.err * b.err + (na * nb + Real(1)) * ulp_scale(bits);
  return {std::move(z), std::move(e)};
}

struct RB {
  Real v, err;
};

inline RB cb_abs(const CB& a, int bits) {
  Real v = mc_abs(a.z);
  return {v, a.err + v * ulp_scale(bits)};
}

// Argument in (-pi, pi]; requires err < |z|.
inline RB cb_arg(const CB& a, int bits) {
  Real n = mc_abs(a.z);
  if (!(a.err < n)) throw std::runtime_error("cb_arg: error radius covers zero");
  Real v = mc_arg(a.z);
  // |d arg| <= asin(err/|z|) <= (pi/2) err/(|z|-err) on the safe side
  Real e = Real(2) * a.err / (n - a.err) + ulp_scale(bits);
  return {v, e};
}

inline void parallel_for(std::size_t n, int jobs,
                         const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

[[noreturn]] inline void fail(const std::string& msg) { throw std::runtime_error(msg); }

inline void check(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

inline BigInt pow_bigint(const BigInt& base, std::uint64_t exp) {
  BigInt r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return r;
}

inline std::uint64_t pow_u64_checked(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base / 4) throw std::overflow_error("field too large");
    r *= base;
  }
  return r;
}

// Exponent of p in n (n != 0); optionally returns n / p^ord.
inline int ord_p_int(const BigInt& n, const BigInt& p, BigInt* unit_out = nullptr) {
  if (n == 0) throw std::invalid_argument("ord_p of zero");
  BigInt m = abs(n);
  int ord = 0;
  BigInt q, r;
  for (;;) {
    divide_qr(m, p, q, r);
    if (r != 0) break;
    m = q;
    ++ord;
  }
  if (unit_out) *unit_out = (n < 0) ? BigInt(-m) : m;
  return ord;
}

}  // namespace asurf
