#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mw {

using Int = mpz_class;
using Rat = mpq_class;
using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Library error with a stable machine-readable code (see README, "Errors").
struct MwError : std::runtime_error {
  std::string code;
  MwError(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

inline void require(bool cond, const std::string& code, const std::string& msg) {
  if (!cond) throw MwError(code, msg);
}

inline Int gcdz(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcmz(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int powz(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

/// Exact p-adic valuation of a nonzero integer; also returns the cofactor.
inline long remove_factor(Int& n, const Int& p) {
  Int out;
  long v = static_cast<long>(mpz_remove(out.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  n = out;
  return v;
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

/// Deterministic primality for the small moduli this library works with.
inline bool is_prime_i64(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline i64 mod_pow_i64(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

inline i64 mod_inv_i64(i64 a, i64 p) {
  // p prime; extended Euclid.
  i64 t = 0, newt = 1, r = p, newr = ((a % p) + p) % p;
  while (newr != 0) {
    i64 q = r / newr;
    i64 tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw MwError("NotAUnit", "element not invertible mod " + std::to_string(p));
  return ((t % p) + p) % p;
}

}  // namespace mw
