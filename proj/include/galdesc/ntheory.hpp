#pragma once

// 64-bit integer number theory used by the finite-field layer: modular
// arithmetic, primality, factorisation and a few arithmetic functions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "galdesc/error.hpp"

namespace galdesc::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Integer power with overflow detection; throws BadParameters on overflow.
inline u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw Error(Errc::BadParameters, "integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 gen(n);
  while (true) {
    u64 c = gen() % (n - 1) + 1;
    u64 x = gen() % n, y = x, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorisation as (prime, exponent) pairs in increasing prime order.
/// Trial division up to 2^16, Pollard rho on the cofactor.
inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::map<u64, unsigned> f;
  for (u64 p = 2; p < (1u << 16) && p * p <= n; ++p) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  detail::factor_into(n, f);
  return {f.begin(), f.end()};
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [p, k] : factor(n)) {
    const std::size_t prev = ds.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < prev; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline int moebius(u64 n) {
  int mu = 1;
  for (auto [p, k] : factor(n)) {
    if (k > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Extended Euclid on signed 128-bit values: returns g = gcd(a,b) >= 0 and
/// x, y with a*x + b*y = g.
struct Bezout {
  i128 g, x, y;
};

inline Bezout ext_gcd(i128 a, i128 b) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

/// Inverse of a modulo m (m >= 1); throws NotCoprime when it does not exist.
inline u64 invmod(u64 a, u64 m) {
  if (m == 1) return 0;
  auto b = ext_gcd(static_cast<i128>(a % m), static_cast<i128>(m));
  if (b.g != 1) throw Error(Errc::NotCoprime, "no modular inverse");
  i128 x = b.x % static_cast<i128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

/// Reduce a signed value into [0, m).
inline u64 mod_signed(i128 a, u64 m) {
  i128 r = a % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// Multiplicative order of a modulo n (gcd(a,n) = 1).
inline u64 mult_order_mod(u64 a, u64 n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw Error(Errc::NotCoprime, "order of a non-unit");
  u64 phi = 1;
  for (auto [p, k] : factor(n)) phi *= ipow(p, k - 1) * (p - 1);
  u64 ord = phi;
  for (auto [p, k] : factor(phi)) {
    (void)k;
    while (ord % p == 0 && powmod(a, ord / p, n) == 1) ord /= p;
  }
  return ord;
}

inline u64 euler_phi(u64 n) {
  u64 phi = 1;
  for (auto [p, k] : factor(n)) phi *= ipow(p, k - 1) * (p - 1);
  return phi;
}

/// If n = p^k with p prime returns p, else 0.
inline u64 prime_power_base(u64 n) {
  if (n < 2) return 0;
  auto f = factor(n);
  return f.size() == 1 ? f[0].first : 0;
}

}  // namespace galdesc::nt
