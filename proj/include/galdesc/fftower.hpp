#pragma once

/**
 * @file fftower.hpp
 * @brief Arithmetic in a finite field tower GF(p) <= F = GF(p^d0) <= E = GF(p^n).
 *
 * E is represented as GF(p)[x]/(f) for a monic irreducible f of degree n.
 * Elements are little-endian coefficient vectors in the power basis
 * 1, x, ..., x^{n-1}. The subfield F is never represented separately: it is
 * the fixed field of phi: y -> y^q with q = p^d0, and G = Gal(E/F) = <phi> is
 * cyclic of order m = n/d0. Automorphisms are the powers phi^k (AutPower).
 *
 * A FieldCtx is immutable after construction and is only ever handed out via
 * std::shared_ptr; elements keep a raw pointer to it, so the context must
 * outlive every element built from it (matrices and cocycles hold the
 * shared_ptr for this reason).
 *
 * Limits: p < 2^32 and p^n < 2^63, so that exponents and unit-group orders fit
 * in 64-bit integers.
 */

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "galdesc/error.hpp"
#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

/// phi^k where phi(y) = y^q generates Gal(E/F); k is taken modulo m = [E:F].
struct AutPower {
  unsigned k = 0;
  unsigned m = 1;

  AutPower() = default;
  AutPower(unsigned k_, unsigned m_) : k(m_ ? k_ % m_ : 0), m(m_) {
    if (m_ == 0) throw Error(Errc::BadParameters, "automorphism group order must be positive");
  }

  static AutPower identity(unsigned m) { return {0, m}; }

  /// Composition: (a*b)(y) = a(b(y)).
  AutPower operator*(const AutPower& o) const {
    if (m != o.m) throw Error(Errc::ContextMismatch, "automorphisms of different groups");
    return {(k + o.k) % m, m};
  }
  AutPower pow(long long e) const {
    const long long r = ((static_cast<long long>(k) * (e % m)) % m + m) % m;
    return {static_cast<unsigned>(r), m};
  }
  AutPower inverse() const { return pow(-1); }
  bool is_identity() const { return k == 0; }
  unsigned order() const { return m / std::gcd(k, m); }

  bool operator==(const AutPower&) const = default;
  auto operator<=>(const AutPower&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const AutPower& a) { return os << "phi^" << a.k; }

class FieldElem;

namespace detail {

using Poly = std::vector<nt::u64>;  // little-endian, coefficients in [0,p)

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b, nt::u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j] % p) % p;
  }
  poly_trim(r);
  return r;
}

/// Remainder of a modulo b (b nonzero).
inline Poly poly_mod(Poly a, const Poly& b, nt::u64 p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  const nt::u64 inv_lead = nt::invmod(b.back(), p);
  while (a.size() >= b.size()) {
    const nt::u64 t = a.back() * inv_lead % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = (a[shift + j] + (p - t) * b[j] % p) % p;
    poly_trim(a);
  }
  return a;
}

inline Poly poly_sub(Poly a, const Poly& b, nt::u64 p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  poly_trim(a);
  return a;
}

inline Poly poly_gcd(Poly a, Poly b, nt::u64 p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const nt::u64 inv = nt::invmod(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

inline Poly poly_powmod(Poly base, nt::u64 e, const Poly& f, nt::u64 p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    e >>= 1;
  }
  return r;
}

/// Ben-Or irreducibility test for a monic polynomial of degree >= 1.
inline bool poly_is_irreducible(const Poly& f, nt::u64 p) {
  const std::size_t n = f.size() - 1;
  if (n == 1) return true;
  Poly xpow{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    xpow = poly_powmod(xpow, p, f, p);
    Poly g = poly_gcd(f, poly_sub(xpow, Poly{0, 1}, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

/// Rank and a nullspace basis of a dense matrix over GF(p) (rows x cols,
/// row-major). The nullspace is of the map v -> M v.
struct FpEchelon {
  std::size_t rank = 0;
  std::vector<std::vector<nt::u64>> nullspace;
};

inline FpEchelon fp_echelon(std::vector<nt::u64> a, std::size_t rows, std::size_t cols, nt::u64 p) {
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const nt::u64 inv = nt::invmod(a[r * cols + c], p);
    for (std::size_t j = 0; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i * cols + c] == 0) continue;
      const nt::u64 t = a[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = (a[i * cols + j] + (p - t) * a[r * cols + j]) % p;
    }
    pivot_cols.push_back(c);
    ++r;
  }
  FpEchelon out;
  out.rank = r;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<nt::u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = (p - a[i * cols + free]) % p;
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  using u64 = nt::u64;

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;

  u64 p() const { return p_; }
  unsigned n() const { return n_; }
  unsigned d0() const { return d0_; }
  /// |F| = p^d0.
  u64 q() const { return q_; }
  /// [E:F] = |G|.
  unsigned m() const { return m_; }
  /// |E| = p^n.
  u64 size() const { return size_; }
  /// |E^x| = p^n - 1.
  u64 unit_order() const { return size_ - 1; }
  const std::vector<u64>& modulus() const { return modulus_; }
  /// true iff the modulus was generated rather than supplied.
  bool generated_modulus() const { return generated_; }

  AutPower frobenius() const { return AutPower(m_ == 1 ? 0 : 1, m_); }
  AutPower aut(unsigned k) const { return AutPower(k, m_); }

  /// Generator of the unique subgroup of G of the given order.
  AutPower subgroup_generator(unsigned order) const {
    if (order == 0 || m_ % order != 0) throw Error(Errc::NonDivisorOrder, "subgroup order must divide [E:F]");
    return AutPower(m_ / order, m_);
  }

  bool same_as(const FieldCtx& o) const { return this == &o; }

  // Implementation detail access for FieldElem.
  const std::vector<std::uint32_t>& frob_matrix(unsigned k) const { return frob_[k % m_]; }

  friend std::shared_ptr<const FieldCtx> make_field(u64 p, unsigned n, unsigned d0,
                                                    std::optional<std::vector<u64>> modulus, u64 seed);

 private:
  FieldCtx() = default;

  void build_tables() {
    using detail::Poly;
    // P: matrix of y -> y^p on the power basis (column j holds (x^j)^p).
    Poly xp = detail::poly_powmod(Poly{0, 1}, p_, modulus_, p_);
    std::vector<u64> pmat(std::size_t(n_) * n_, 0);
    Poly col{1};
    for (unsigned j = 0; j < n_; ++j) {
      for (std::size_t i = 0; i < col.size(); ++i) pmat[i * n_ + j] = col[i];
      col = detail::poly_mod(detail::poly_mul(col, xp, p_), modulus_, p_);
    }
    auto matmul = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
      std::vector<u64> c(std::size_t(n_) * n_, 0);
      for (unsigned i = 0; i < n_; ++i)
        for (unsigned l = 0; l < n_; ++l) {
          const u64 t = a[i * n_ + l];
          if (!t) continue;
          for (unsigned j = 0; j < n_; ++j) c[i * n_ + j] = (c[i * n_ + j] + t * b[l * n_ + j]) % p_;
        }
      return c;
    };
    std::vector<u64> phi(std::size_t(n_) * n_, 0);
    for (unsigned i = 0; i < n_; ++i) phi[i * n_ + i] = 1;
    for (unsigned i = 0; i < d0_; ++i) phi = matmul(phi, pmat);
    std::vector<u64> cur(std::size_t(n_) * n_, 0);
    for (unsigned i = 0; i < n_; ++i) cur[i * n_ + i] = 1;
    frob_.clear();
    for (unsigned k = 0; k < m_; ++k) {
      frob_.emplace_back(cur.begin(), cur.end());
      cur = matmul(cur, phi);
    }
  }

  u64 p_ = 2;
  unsigned n_ = 1;
  unsigned d0_ = 1;
  u64 q_ = 2;
  unsigned m_ = 1;
  u64 size_ = 2;
  bool generated_ = false;
  std::vector<u64> modulus_;
  std::vector<std::vector<std::uint32_t>> frob_;
};

using FieldCtxPtr = std::shared_ptr<const FieldCtx>;

/// Builds and validates a tower context. When `modulus` is omitted a monic
/// irreducible polynomial is drawn at random (seeded) and recorded in the
/// context so the run can be replayed.
inline FieldCtxPtr make_field(nt::u64 p, unsigned n, unsigned d0, std::optional<std::vector<nt::u64>> modulus = {},
                              nt::u64 seed = 0) {
  if (!nt::is_prime(p)) throw Error(Errc::NonPrimeModulus, std::to_string(p) + " is not prime");
  if (p >= (1ULL << 32)) throw Error(Errc::BadParameters, "characteristic must be below 2^32");
  if (n == 0 || d0 == 0 || n % d0 != 0)
    throw Error(Errc::DegreeMismatch, "subfield degree " + std::to_string(d0) + " must divide " + std::to_string(n));
  nt::u64 size = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (size > (1ULL << 62) / p) throw Error(Errc::BadParameters, "field order exceeds 2^62");
    size *= p;
  }
  std::shared_ptr<FieldCtx> ctx(new FieldCtx());
  ctx->p_ = p;
  ctx->n_ = n;
  ctx->d0_ = d0;
  ctx->q_ = nt::ipow(p, d0);
  ctx->m_ = n / d0;
  ctx->size_ = size;
  if (modulus) {
    auto f = *modulus;
    if (f.size() != n + 1) throw Error(Errc::DegreeMismatch, "modulus must have degree " + std::to_string(n));
    for (auto& c : f) {
      if (c >= p) throw Error(Errc::DegreeMismatch, "modulus coefficient out of range [0,p)");
    }
    if (f.back() != 1) throw Error(Errc::DegreeMismatch, "modulus must be monic");
    if (!detail::poly_is_irreducible(f, p)) throw Error(Errc::ReducibleModulus, "modulus is reducible over GF(p)");
    ctx->modulus_ = std::move(f);
  } else {
    Rng rng(seed, "fftower.modulus");
    std::vector<nt::u64> f(n + 1, 0);
    do {
      for (unsigned i = 0; i < n; ++i) f[i] = rng.below(p);
      f[n] = 1;
    } while (!detail::poly_is_irreducible(f, p));
    ctx->modulus_ = std::move(f);
    ctx->generated_ = true;
  }
  ctx->build_tables();
  return ctx;
}

/// Element of E in the power basis of its context.
class FieldElem {
 public:
  using context_type = FieldCtx;
  using aut_type = AutPower;
  using u64 = nt::u64;
  using Coeffs = boost::container::small_vector<std::uint32_t, 8>;

  FieldElem() = default;
  FieldElem(const FieldCtx& ctx, Coeffs c) : ctx_(&ctx), c_(std::move(c)) {}

  static FieldElem zero(const FieldCtx& ctx) { return {ctx, Coeffs(ctx.n(), 0)}; }
  static FieldElem one(const FieldCtx& ctx) { return from_int(ctx, 1); }
  static FieldElem from_int(const FieldCtx& ctx, long long v) {
    Coeffs c(ctx.n(), 0);
    c[0] = static_cast<std::uint32_t>(nt::mod_signed(v, ctx.p()));
    return {ctx, std::move(c)};
  }
  /// x^i in the power basis (0 <= i < n).
  static FieldElem basis(const FieldCtx& ctx, unsigned i) {
    Coeffs c(ctx.n(), 0);
    c.at(i) = 1;
    return {ctx, std::move(c)};
  }
  /// Little-endian coefficient list; shorter lists are zero-padded.
  static FieldElem from_coeffs(const FieldCtx& ctx, std::span<const long long> coeffs) {
    if (coeffs.size() > ctx.n()) throw Error(Errc::DimensionMismatch, "too many coefficients for field element");
    Coeffs c(ctx.n(), 0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) c[i] = static_cast<std::uint32_t>(nt::mod_signed(coeffs[i], ctx.p()));
    return {ctx, std::move(c)};
  }
  /// Element whose base-p digits are the coefficients (enumeration helper).
  static FieldElem from_index(const FieldCtx& ctx, u64 idx) {
    Coeffs c(ctx.n(), 0);
    for (unsigned i = 0; i < ctx.n(); ++i) {
      c[i] = static_cast<std::uint32_t>(idx % ctx.p());
      idx /= ctx.p();
    }
    return {ctx, std::move(c)};
  }
  static FieldElem random(const FieldCtx& ctx, Rng& rng) { return from_index(ctx, rng.below(ctx.size())); }
  static FieldElem random_nonzero(const FieldCtx& ctx, Rng& rng) {
    return from_index(ctx, 1 + rng.below(ctx.size() - 1));
  }

  u64 index() const {
    u64 idx = 0;
    for (std::size_t i = c_.size(); i-- > 0;) idx = idx * ctx_->p() + c_[i];
    return idx;
  }

  const FieldCtx& context() const { return *ctx_; }
  const Coeffs& coeffs() const { return c_; }

  bool is_zero() const {
    for (auto v : c_)
      if (v) return false;
    return true;
  }
  bool is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i]) return false;
    return true;
  }

  FieldElem operator+(const FieldElem& o) const {
    check(o);
    Coeffs r(c_.size());
    const u64 p = ctx_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<std::uint32_t>((u64(c_[i]) + o.c_[i]) % p);
    return {*ctx_, std::move(r)};
  }
  FieldElem operator-(const FieldElem& o) const {
    check(o);
    Coeffs r(c_.size());
    const u64 p = ctx_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = static_cast<std::uint32_t>((u64(c_[i]) + p - o.c_[i]) % p);
    return {*ctx_, std::move(r)};
  }
  FieldElem operator-() const { return zero(*ctx_) - *this; }

  FieldElem operator*(const FieldElem& o) const {
    check(o);
    const u64 p = ctx_->p();
    const unsigned n = ctx_->n();
    boost::container::small_vector<u64, 16> prod(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (!c_[i]) continue;
      for (unsigned j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + u64(c_[i]) * o.c_[j]) % p;
    }
    const auto& f = ctx_->modulus();
    for (unsigned i = 2 * n - 1; i-- > n;) {
      const u64 t = prod[i];
      if (!t) continue;
      for (unsigned j = 0; j < n; ++j) prod[i - n + j] = (prod[i - n + j] + (p - t) * f[j]) % p;
      prod[i] = 0;
    }
    Coeffs r(n);
    for (unsigned i = 0; i < n; ++i) r[i] = static_cast<std::uint32_t>(prod[i]);
    return {*ctx_, std::move(r)};
  }

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem pow(u64 e) const {
    FieldElem r = one(*ctx_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
  /// Signed exponent; negative exponents require a unit.
  FieldElem pow_signed(long long e) const {
    if (e >= 0) return pow(static_cast<u64>(e));
    return inverse().pow(static_cast<u64>(-(e + 1)) + 1);
  }

  FieldElem inverse() const {
    if (is_zero()) throw Error(Errc::SingularMatrix, "inverse of zero field element");
    return pow(ctx_->size() - 2);
  }
  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

  /// phi^k(this) = this^{q^k}, via the precomputed GF(p)-linear Frobenius matrices.
  FieldElem apply(const AutPower& a) const {
    if (a.m != ctx_->m()) throw Error(Errc::ContextMismatch, "automorphism does not belong to this tower");
    if (a.k == 0) return *this;
    const auto& mat = ctx_->frob_matrix(a.k);
    const unsigned n = ctx_->n();
    const u64 p = ctx_->p();
    Coeffs r(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      u64 acc = 0;
      for (unsigned j = 0; j < n; ++j) acc = (acc + u64(mat[i * n + j]) * c_[j]) % p;
      r[i] = static_cast<std::uint32_t>(acc);
    }
    return {*ctx_, std::move(r)};
  }

  /// y^q = y, i.e. the element lies in F.
  bool in_base_field() const { return apply(ctx_->frobenius()) == *this; }

  bool operator==(const FieldElem& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

 private:
  void check(const FieldElem& o) const {
    if (ctx_ != o.ctx_) throw Error(Errc::ContextMismatch, "field elements from different contexts");
  }

  const FieldCtx* ctx_ = nullptr;
  Coeffs c_;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElem& x) {
  os << '[';
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) os << (i ? "," : "") << x.coeffs()[i];
  return os << ']';
}

inline FieldElem apply_aut(const AutPower& a, const FieldElem& x) { return x.apply(a); }

/// Sum over the unique subgroup A <= G of order `subgroup_order` of alpha(x).
inline FieldElem trace(const FieldElem& x, unsigned subgroup_order) {
  const auto& ctx = x.context();
  const AutPower g = ctx.subgroup_generator(subgroup_order);
  FieldElem acc = FieldElem::zero(ctx);
  for (unsigned j = 0; j < subgroup_order; ++j) acc += x.apply(g.pow(j));
  return acc;
}
inline FieldElem trace(const FieldElem& x) { return trace(x, x.context().m()); }

/// Product over the subgroup of order `subgroup_order` of alpha(x).
inline FieldElem norm(const FieldElem& x, unsigned subgroup_order) {
  const auto& ctx = x.context();
  const AutPower g = ctx.subgroup_generator(subgroup_order);
  FieldElem acc = FieldElem::one(ctx);
  for (unsigned j = 0; j < subgroup_order; ++j) acc *= x.apply(g.pow(j));
  return acc;
}
inline FieldElem norm(const FieldElem& x) { return norm(x, x.context().m()); }

/// theta with Tr_A(theta) = 1: the first power-basis element with nonzero
/// trace, divided by that trace.
inline FieldElem trace_one_element(const FieldCtx& ctx, unsigned subgroup_order) {
  for (unsigned i = 0; i < ctx.n(); ++i) {
    const FieldElem b = FieldElem::basis(ctx, i);
    const FieldElem t = trace(b, subgroup_order);
    if (!t.is_zero()) return t.inverse() * b;
  }
  throw Error(Errc::PreconditionViolated, "trace vanishes on the power basis");  // unreachable for a valid tower
}
inline FieldElem trace_one_element(const FieldCtx& ctx) { return trace_one_element(ctx, ctx.m()); }

/// Coordinates of a GF(p)-basis of the fixed field F = E^G (kernel of phi - 1).
inline std::vector<FieldElem> base_field_basis(const FieldCtx& ctx) {
  const unsigned n = ctx.n();
  const auto p = ctx.p();
  const auto& phi = ctx.frob_matrix(1 % ctx.m());
  std::vector<nt::u64> a(std::size_t(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) a[i * n + j] = (phi[i * n + j] + (i == j ? p - 1 : 0)) % p;
  auto ech = detail::fp_echelon(std::move(a), n, n, p);
  std::vector<FieldElem> out;
  for (auto& v : ech.nullspace) {
    FieldElem::Coeffs c(n);
    for (unsigned i = 0; i < n; ++i) c[i] = static_cast<std::uint32_t>(v[i]);
    out.emplace_back(ctx, std::move(c));
  }
  return out;
}

/// true iff {phi^j(x) : 0 <= j < m} is an F-basis of E. Tested as a GF(p)-rank
/// computation: the n products b_i * phi^j(x), with (b_i) a GF(p)-basis of F,
/// must be GF(p)-independent.
inline bool is_normal_element(const FieldElem& x) {
  const auto& ctx = x.context();
  const unsigned n = ctx.n();
  const auto fb = base_field_basis(ctx);
  std::vector<nt::u64> a;
  a.reserve(std::size_t(n) * n);
  for (unsigned j = 0; j < ctx.m(); ++j) {
    const FieldElem conj = x.apply(ctx.aut(j));
    for (const auto& b : fb) {
      const FieldElem v = b * conj;
      for (auto c : v.coeffs()) a.push_back(c);
    }
  }
  return detail::fp_echelon(std::move(a), n, n, ctx.p()).rank == n;
}

/// Multiplicative order of a unit of E (factorises p^n - 1).
inline nt::u64 multiplicative_order(const FieldElem& x) {
  if (x.is_zero()) throw Error(Errc::PreconditionViolated, "order of zero");
  nt::u64 ord = x.context().unit_order();
  for (auto [pr, k] : nt::factor(ord)) {
    (void)k;
    while (ord % pr == 0 && x.pow(ord / pr).is_one()) ord /= pr;
  }
  return ord;
}

/// The power basis of E, which spans E over every intermediate field.
inline std::vector<FieldElem> spanning_set(const FieldCtx& ctx) {
  std::vector<FieldElem> out;
  for (unsigned i = 0; i < ctx.n(); ++i) out.push_back(FieldElem::basis(ctx, i));
  return out;
}

inline FieldElem random_element(const FieldCtx& ctx, Rng& rng) { return FieldElem::random(ctx, rng); }

inline nt::u64 characteristic(const FieldCtx& ctx) { return ctx.p(); }

}  // namespace galdesc

template <>
struct std::hash<galdesc::FieldElem> {
  std::size_t operator()(const galdesc::FieldElem& x) const noexcept { return std::hash<std::uint64_t>{}(x.index()); }
};
