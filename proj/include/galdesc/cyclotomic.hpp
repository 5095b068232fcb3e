#pragma once

// Exact arithmetic in Q(zeta_n) with rational coordinates in the power basis
// 1, z, ..., z^{phi(n)-1}, plus norm-equation heuristics and an embedding-based
// obstruction test for subgroups generated by complex conjugation.
//
// Requires GMP (gmpxx) and MPFR.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "galdesc/cocycle.hpp"
#include "galdesc/descent.hpp"
#include "galdesc/error.hpp"
#include "galdesc/matrix.hpp"
#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

/// sigma_k: zeta -> zeta^k, k a unit mod n.
struct CycloAut {
  unsigned k = 1;
  unsigned n = 1;

  CycloAut() = default;
  CycloAut(long long k_, unsigned n_) : n(n_) {
    if (n_ == 0) throw Error(Errc::BadParameters, "conductor must be positive");
    k = static_cast<unsigned>(nt::mod_signed(k_, n_));
    if (n_ == 1) k = 0;
    if (std::gcd(k, n_) != 1) throw Error(Errc::NotCoprime, "k = " + std::to_string(k_) + " is not a unit mod " + std::to_string(n_));
  }
  static CycloAut identity(unsigned n) { return {1, n}; }

  CycloAut operator*(const CycloAut& o) const {
    if (n != o.n) throw Error(Errc::ContextMismatch, "automorphisms of different cyclotomic fields");
    return {static_cast<long long>((static_cast<nt::u64>(k) * o.k) % n), n};
  }
  CycloAut pow(long long e) const {
    if (n == 1) return *this;
    if (e < 0) return inverse().pow(-e);
    return {static_cast<long long>(nt::powmod(k, static_cast<nt::u64>(e), n)), n};
  }
  CycloAut inverse() const { return n == 1 ? *this : CycloAut(static_cast<long long>(nt::invmod(k, n)), n); }
  bool is_identity() const { return n == 1 || k == 1; }
  unsigned order() const { return n <= 2 ? 1 : static_cast<unsigned>(nt::mult_order_mod(k, n)); }

  bool operator==(const CycloAut&) const = default;
  auto operator<=>(const CycloAut&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const CycloAut& a) { return os << "sigma_" << a.k; }

namespace detail {

using ZPoly = std::vector<mpz_class>;

// Exact division of integer polynomials (low degree first), divisor monic.
inline ZPoly zpoly_divexact(ZPoly num, const ZPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {mpz_class(0)};
  ZPoly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const mpz_class c = num[i];
    q[i - dd] = c;
    if (c != 0)
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw Error(Errc::PreconditionViolated, "cyclotomic division is not exact");
  return q;
}

inline ZPoly cyclotomic_polynomial(unsigned n) {
  ZPoly f(n + 1, 0);
  f[0] = -1;
  f[n] = 1;
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) f = zpoly_divexact(std::move(f), cyclotomic_polynomial(d));
  return f;
}

}  // namespace detail

class CycloCtx : public std::enable_shared_from_this<CycloCtx> {
 public:
  CycloCtx(const CycloCtx&) = delete;
  CycloCtx& operator=(const CycloCtx&) = delete;

  unsigned n() const { return n_; }
  unsigned phi() const { return phi_; }
  const detail::ZPoly& cyclotomic() const { return phi_poly_; }
  const std::vector<unsigned>& subgroup() const { return sub_; }
  std::vector<CycloAut> subgroup_auts() const {
    std::vector<CycloAut> v;
    for (unsigned k : sub_) v.emplace_back(k, n_);
    return v;
  }
  /// A generator of the automorphism subgroup when it is cyclic.
  std::optional<CycloAut> subgroup_generator() const {
    for (unsigned k : sub_) {
      CycloAut a(k, n_);
      if (a.order() == sub_.size()) return a;
    }
    return std::nullopt;
  }

  friend std::shared_ptr<CycloCtx> make_cyclo(unsigned n, std::vector<long long> subgroup_gens);

 private:
  CycloCtx() = default;
  unsigned n_ = 1, phi_ = 1;
  detail::ZPoly phi_poly_;
  std::vector<unsigned> sub_;
};

using CycloCtxPtr = std::shared_ptr<CycloCtx>;

/// Q(zeta_n) with the automorphism subgroup generated by sigma_k for k in subgroup_gens.
inline CycloCtxPtr make_cyclo(unsigned n, std::vector<long long> subgroup_gens = {}) {
  if (n == 0) throw Error(Errc::BadParameters, "conductor must be positive");
  if (n > 4096) throw Error(Errc::BadParameters, "conductor too large");
  auto ctx = std::shared_ptr<CycloCtx>(new CycloCtx());
  ctx->n_ = n;
  ctx->phi_ = static_cast<unsigned>(nt::euler_phi(n));
  ctx->phi_poly_ = detail::cyclotomic_polynomial(n);
  if (ctx->phi_poly_.size() != ctx->phi_ + 1) throw Error(Errc::PreconditionViolated, "cyclotomic degree mismatch");
  std::vector<CycloAut> gens;
  for (long long k : subgroup_gens) gens.emplace_back(k, n);
  std::vector<CycloAut> elems{CycloAut::identity(n)};
  for (std::size_t h = 0; h < elems.size(); ++h)
    for (const auto& g : gens) {
      const CycloAut x = elems[h] * g;
      if (std::find(elems.begin(), elems.end(), x) == elems.end()) elems.push_back(x);
    }
  for (const auto& e : elems) ctx->sub_.push_back(n == 1 ? 1 : e.k);
  std::sort(ctx->sub_.begin(), ctx->sub_.end());
  return ctx;
}

class CycloElem {
 public:
  using context_type = CycloCtx;
  using aut_type = CycloAut;

  CycloElem() = default;

  static CycloElem zero(const CycloCtx& ctx) { return {ctx, std::vector<mpq_class>(ctx.phi(), 0)}; }
  static CycloElem one(const CycloCtx& ctx) { return from_rational(ctx, 1); }
  static CycloElem from_int(const CycloCtx& ctx, long long v) { return from_rational(ctx, mpq_class(static_cast<long>(v))); }
  static CycloElem from_rational(const CycloCtx& ctx, const mpq_class& v) {
    CycloElem x = zero(ctx);
    x.c_[0] = v;
    return x;
  }
  /// zeta^k for any integer k.
  static CycloElem zeta(const CycloCtx& ctx, long long k) {
    std::vector<mpq_class> p(ctx.n(), 0);
    p[nt::mod_signed(k, ctx.n())] = 1;
    return {ctx, reduce(ctx, std::move(p))};
  }
  /// Arbitrary-length coefficient list in powers of zeta, reduced mod Phi_n.
  static CycloElem from_coeffs(const CycloCtx& ctx, std::vector<mpq_class> coeffs) {
    if (coeffs.empty()) return zero(ctx);
    return {ctx, reduce(ctx, std::move(coeffs))};
  }
  static CycloElem random(const CycloCtx& ctx, Rng& rng, long long bound = 2) {
    CycloElem x = zero(ctx);
    for (auto& c : x.c_) c = static_cast<long>(rng.below(2 * bound + 1)) - static_cast<long>(bound);
    return x;
  }

  const CycloCtx& context() const { return *ctx_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& v) { return v == 0; });
  }
  bool is_one() const { return *this == one(*ctx_); }
  /// The rational value if this lies in Q.
  std::optional<mpq_class> rational_value() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return std::nullopt;
    return c_[0];
  }

  CycloElem operator-() const {
    CycloElem r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  CycloElem& operator+=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycloElem& operator-=(const CycloElem& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycloElem& operator*=(const CycloElem& o) {
    check(o);
    const std::size_t f = c_.size();
    std::vector<mpq_class> prod(2 * f - 1, 0);
    for (std::size_t i = 0; i < f; ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < f; ++j)
        if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
    }
    c_ = reduce(*ctx_, std::move(prod));
    return *this;
  }
  CycloElem& operator/=(const CycloElem& o) { return *this *= o.inverse(); }
  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
  friend CycloElem operator/(CycloElem a, const CycloElem& b) { return a /= b; }
  friend CycloElem operator*(const mpq_class& s, CycloElem a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }

  CycloElem pow(long long e) const {
    CycloElem base = e < 0 ? inverse() : *this;
    CycloElem r = one(*ctx_);
    for (unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e; k; k >>= 1) {
      if (k & 1) r *= base;
      base *= base;
    }
    return r;
  }

  CycloElem apply(const CycloAut& a) const {
    if (a.n != ctx_->n()) throw Error(Errc::ContextMismatch, "automorphism of a different cyclotomic field");
    if (a.is_identity()) return *this;
    const unsigned n = ctx_->n();
    std::vector<mpq_class> p(n, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) p[(i * a.k) % n] += c_[i];
    return {*ctx_, reduce(*ctx_, std::move(p))};
  }

  /// Inverse through the full Galois norm: x^{-1} = prod_{k != 1} sigma_k(x) / N(x).
  CycloElem inverse() const {
    if (is_zero()) throw Error(Errc::SingularMatrix, "inverse of zero");
    const unsigned n = ctx_->n();
    CycloElem others = one(*ctx_);
    for (unsigned k = 2; k < n; ++k)
      if (std::gcd(k, n) == 1) others *= apply(CycloAut(k, n));
    const auto nv = (*this * others).rational_value();
    if (!nv || *nv == 0) throw Error(Errc::PreconditionViolated, "absolute norm is not a nonzero rational");
    return mpq_class(1 / *nv) * others;
  }

  bool operator==(const CycloElem& o) const { return ctx_ == o.ctx_ && c_ == o.c_; }

 private:
  CycloElem(const CycloCtx& ctx, std::vector<mpq_class> c) : ctx_(&ctx), c_(std::move(c)) {}

  void check(const CycloElem& o) const {
    if (ctx_ != o.ctx_) throw Error(Errc::ContextMismatch, "elements of different cyclotomic fields");
  }

  // Reduce modulo the monic Phi_n.
  static std::vector<mpq_class> reduce(const CycloCtx& ctx, std::vector<mpq_class> p) {
    const auto& phi = ctx.cyclotomic();
    const std::size_t f = ctx.phi();
    for (std::size_t i = p.size(); i-- > f;) {
      if (p[i] == 0) continue;
      const mpq_class c = p[i];
      for (std::size_t j = 0; j <= f; ++j)
        if (phi[j] != 0) p[i - f + j] -= c * phi[j];
    }
    p.resize(f, 0);
    return p;
  }

  const CycloCtx* ctx_ = nullptr;
  std::vector<mpq_class> c_;
};

inline std::string to_string(const CycloElem& x) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const mpq_class& c = x.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    first = false;
    const mpq_class a = abs(c);
    if (i == 0) os << a.get_str();
    else {
      if (a != 1) os << a.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const CycloElem& x) { return os << to_string(x); }

inline std::vector<CycloElem> spanning_set(const CycloCtx& ctx) {
  std::vector<CycloElem> v;
  for (unsigned i = 0; i < ctx.phi(); ++i) v.push_back(CycloElem::zeta(ctx, i));
  return v;
}
inline CycloElem random_element(const CycloCtx& ctx, Rng& rng) { return CycloElem::random(ctx, rng); }
inline nt::u64 characteristic(const CycloCtx&) { return 0; }

// ---------------------------------------------------------------------------
// Automorphisms, trace, norm

inline CycloElem cyclo_aut(const CycloCtx& ctx, long long k, const CycloElem& x) { return x.apply(CycloAut(k, ctx.n())); }

inline bool fixed_by(const std::vector<CycloAut>& auts, const CycloElem& x) {
  return std::all_of(auts.begin(), auts.end(), [&](const CycloAut& a) { return x.apply(a) == x; });
}
inline bool fixed_by(const CycloCtx& ctx, const CycloElem& x) { return fixed_by(ctx.subgroup_auts(), x); }

inline CycloElem cyclo_trace(const std::vector<CycloAut>& auts, const CycloElem& x) {
  CycloElem s = CycloElem::zero(x.context());
  for (const auto& a : auts) s += x.apply(a);
  return s;
}
inline CycloElem cyclo_norm(const std::vector<CycloAut>& auts, const CycloElem& x) {
  CycloElem s = CycloElem::one(x.context());
  for (const auto& a : auts) s *= x.apply(a);
  return s;
}
inline CycloElem cyclo_trace(const CycloCtx& ctx, const CycloElem& x) { return cyclo_trace(ctx.subgroup_auts(), x); }
inline CycloElem cyclo_norm(const CycloCtx& ctx, const CycloElem& x) { return cyclo_norm(ctx.subgroup_auts(), x); }

/// Elements of the cyclic group generated by a.
inline std::vector<CycloAut> cyclic_closure(const CycloAut& a) {
  std::vector<CycloAut> v{CycloAut::identity(a.n)};
  for (CycloAut x = a; !x.is_identity(); x = x * a) v.push_back(x);
  return v;
}

// ---------------------------------------------------------------------------
// Complex embeddings

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

/// Value of x under zeta -> exp(2 pi i j / n), with a rigorous bound on the
/// absolute error of each part.
struct Embedding {
  unsigned j = 1;
  unsigned precision = 64;
  double re = 0, im = 0;  // rounded for display only
  bool re_sign_certified = false;
  int re_sign = 0;
  std::string re_text;
};

inline Embedding embed(const CycloElem& x, unsigned j, unsigned prec) {
  using detail::Mpfr;
  const CycloCtx& ctx = x.context();
  const unsigned n = ctx.n();
  Mpfr pi(prec), ang(prec), c(prec), s(prec), coef(prec), t(prec), re(prec), im(prec), absum(prec), bound(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpfr_set_zero(re.get(), 1);
  mpfr_set_zero(im.get(), 1);
  mpfr_set_zero(absum.get(), 1);
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) {
    const mpq_class& q = x.coeffs()[i];
    if (q == 0) continue;
    const unsigned long e = (static_cast<unsigned long>(i) * j) % n;
    mpfr_mul_ui(ang.get(), pi.get(), 2 * e, MPFR_RNDN);
    mpfr_div_ui(ang.get(), ang.get(), n, MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    mpfr_set_q(coef.get(), q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(t.get(), coef.get(), c.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), t.get(), MPFR_RNDN);
    mpfr_mul(t.get(), coef.get(), s.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), t.get(), MPFR_RNDN);
    mpfr_abs(t.get(), coef.get(), MPFR_RNDU);
    mpfr_add(absum.get(), absum.get(), t.get(), MPFR_RNDU);
  }
  // Angle error <= 2^{5-p}; cos/sin add 2^{-p}; coefficient, product and
  // each partial sum add 2^{-p} relative to at most absum. Hence
  // |err| <= absum * 2^{7-p} * (phi + 2).
  mpfr_mul_ui(bound.get(), absum.get(), ctx.phi() + 2, MPFR_RNDU);
  mpfr_mul_2si(bound.get(), bound.get(), 7 - static_cast<long>(prec), MPFR_RNDU);

  Embedding out;
  out.j = j;
  out.precision = prec;
  out.re = mpfr_get_d(re.get(), MPFR_RNDN);
  out.im = mpfr_get_d(im.get(), MPFR_RNDN);
  mpfr_abs(t.get(), re.get(), MPFR_RNDD);
  if (mpfr_cmp(t.get(), bound.get()) > 0) {
    out.re_sign_certified = true;
    out.re_sign = mpfr_sgn(re.get());
  }
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.20Rg", re.get());
  out.re_text = buf;
  mpfr_free_str(buf);
  return out;
}

/// All embeddings j coprime to n.
inline std::vector<unsigned> embedding_indices(const CycloCtx& ctx) {
  std::vector<unsigned> v;
  for (unsigned j = 1; j <= ctx.n(); ++j)
    if (std::gcd(j, ctx.n()) == 1) v.push_back(j % ctx.n() == 0 ? ctx.n() : j);
  return v;
}

// ---------------------------------------------------------------------------
// Norm equations

enum class ConjugationVerdict { Unsolvable, Unknown };

struct ConjugationObstruction {
  ConjugationVerdict verdict = ConjugationVerdict::Unknown;
  std::optional<Embedding> witness;  // an embedding where the target is negative
};

/// Norms mu * conj(mu) are nonnegative under every embedding, so a target that
/// is negative under some embedding admits no solution.
inline ConjugationObstruction conjugation_obstruction(const CycloCtx& ctx, const std::vector<CycloAut>& subgroup,
                                                      const CycloElem& target) {
  const unsigned n = ctx.n();
  const bool is_conj = n > 2 && subgroup.size() == 2 &&
                       std::any_of(subgroup.begin(), subgroup.end(), [&](const CycloAut& a) { return a.k == n - 1; });
  if (!is_conj) throw Error(Errc::NotConjugationSubgroup, "subgroup is not generated by complex conjugation");
  if (!fixed_by(subgroup, target)) throw Error(Errc::PreconditionViolated, "target is not in the fixed field");
  if (target.is_zero()) throw Error(Errc::PreconditionViolated, "target is zero");
  ConjugationObstruction out;
  for (unsigned j : embedding_indices(ctx)) {
    std::optional<Embedding> e;
    for (unsigned prec = 64; prec <= 1024; prec *= 2) {
      e = embed(target, j, prec);
      if (e->re_sign_certified) break;
    }
    if (!e->re_sign_certified)
      throw Error(Errc::NormSearchInconclusive, "sign of embedding " + std::to_string(j) + " not certified at 1024 bits");
    if (e->re_sign < 0) {
      out.verdict = ConjugationVerdict::Unsolvable;
      out.witness = e;
      return out;
    }
  }
  return out;
}

inline ConjugationObstruction conjugation_obstruction(const CycloCtx& ctx, const CycloElem& target) {
  return conjugation_obstruction(ctx, ctx.subgroup_auts(), target);
}

/// First mu with N(mu) = target among `extra`, then +zeta^k, -zeta^k for k = 0..n-1.
inline std::optional<CycloElem> bounded_norm_search(const std::vector<CycloAut>& subgroup, const CycloElem& target,
                                                    const std::vector<CycloElem>& extra = {}) {
  const CycloCtx& ctx = target.context();
  for (const auto& mu : extra)
    if (cyclo_norm(subgroup, mu) == target) return mu;
  for (unsigned k = 0; k < ctx.n(); ++k) {
    const CycloElem z = CycloElem::zeta(ctx, k);
    for (const CycloElem& mu : {z, -z})
      if (cyclo_norm(subgroup, mu) == target) return mu;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Rewriting over the fixed field

struct CycloHints {
  std::vector<std::optional<CycloElem>> mu;  // per generator (single-generator plan: index 0)
  std::vector<CycloElem> lambda;             // Hilbert-90 scalar candidates tried first
};

struct CycloRewriteOptions {
  std::uint64_t seed = 0;
  unsigned max_tries = 64;
  CycloHints hints;
};

/// Scalar candidates for A = Pi_C(nu I): (1+z)/2, then +-(1 +- z^j)/2.
inline std::vector<CycloElem> cyclo_h90_scan(const CycloCtx& ctx) {
  const mpq_class half(1, 2);
  const CycloElem one = CycloElem::one(ctx);
  std::vector<CycloElem> v{half * (one + CycloElem::zeta(ctx, 1))};
  for (unsigned j = 0; j < ctx.n(); ++j) {
    const CycloElem z = CycloElem::zeta(ctx, j);
    for (const CycloElem& c : {half * (one + z), half * (one - z)}) {
      v.push_back(c);
      v.push_back(-c);
    }
  }
  return v;
}

inline DescentCertificate<CycloElem> cyclo_rewrite(const Representation<CycloElem>& rep,
                                                   const CycloRewriteOptions& opt = {}) {
  const CycloCtx& ctx = *rep.ctx;
  DescentPlan<CycloElem> plan;
  plan.kind = PresentationKind::SingleGenerator;
  plan.identity = CycloAut::identity(ctx.n());
  if (ctx.subgroup().size() > 1) {
    const auto g = ctx.subgroup_generator();
    if (!g) throw Error(Errc::BadParameters, "automorphism subgroup must be cyclic");
    plan.auts = {*g};
    plan.orders = {static_cast<unsigned>(ctx.subgroup().size())};
  }

  DescentHooks<CycloElem> hooks;
  hooks.solve_norm = [&](std::size_t gen, const CycloAut& a, unsigned, const CycloElem& target) {
    const auto sub = cyclic_closure(a);
    std::vector<CycloElem> extra;
    if (gen < opt.hints.mu.size() && opt.hints.mu[gen]) extra.push_back(*opt.hints.mu[gen]);
    if (auto mu = bounded_norm_search(sub, target, extra)) return *mu;
    const unsigned n = ctx.n();
    if (sub.size() == 2 && n > 2 && sub[1].k == n - 1) {
      const auto ob = conjugation_obstruction(ctx, sub, target);
      if (ob.verdict == ConjugationVerdict::Unsolvable)
        throw Error(Errc::NormUnsolvable, "target " + to_string(target) + " is negative under embedding j=" +
                                              std::to_string(ob.witness->j) + " (value " + ob.witness->re_text +
                                              "), but norms mu*conj(mu) are nonnegative");
    }
    throw Error(Errc::NormSearchInconclusive, "no norm preimage of " + to_string(target) + " among the search set");
  };
  hooks.solve_commutator = [](const CycloElem&) -> std::pair<CycloElem, CycloElem> {
    throw Error(Errc::BadParameters, "commutator normalisation is not available over number fields");
  };
  hooks.solve_h90 = [&](const Cocycle<CycloElem>& c) {
    auto attempt = [&](const CycloElem& nu) -> std::optional<Matrix<CycloElem>> {
      Matrix<CycloElem> a = pi_c(c, Matrix<CycloElem>::scalar(ctx, c.dim(), nu));
      if (is_h90_solution(c, a)) return a;
      return std::nullopt;
    };
    for (const auto& nu : opt.hints.lambda)
      if (auto a = attempt(nu)) return *a;
    for (const auto& nu : cyclo_h90_scan(ctx))
      if (auto a = attempt(nu)) return *a;
    for (unsigned t = 0; t < opt.max_tries; ++t) {
      Rng rng(derive_seed(opt.seed, "cyclotomic.h90", t));
      if (auto a = attempt(CycloElem::random(ctx, rng, 3))) return *a;
    }
    throw Error(Errc::ExhaustedTries, "no invertible Pi_C(nu I) among the candidates");
  };
  return run_descent(rep, plan, hooks);
}

// ---------------------------------------------------------------------------
// Worked families

enum class ExampleFamily { Dicyclic, SemidihedralLike, Metacyclic };

inline std::string_view family_name(ExampleFamily f) {
  switch (f) {
    case ExampleFamily::Dicyclic: return "dicyclic";
    case ExampleFamily::SemidihedralLike: return "semidihedral-like";
    case ExampleFamily::Metacyclic: return "metacyclic";
  }
  return "?";
}

inline ExampleFamily parse_family(std::string_view s) {
  if (s == "dicyclic") return ExampleFamily::Dicyclic;
  if (s == "semidihedral-like" || s == "semidihedral") return ExampleFamily::SemidihedralLike;
  if (s == "metacyclic") return ExampleFamily::Metacyclic;
  throw Error(Errc::MalformedInput, "unknown example family '" + std::string(s) + "'");
}

struct CycloExample {
  ExampleFamily family{};
  unsigned n = 1, m = 2, r = 0;
  CycloCtxPtr ctx;
  Representation<CycloElem> rep;
};

/// Smallest r in [2, n) of multiplicative order exactly m mod n, or 0.
inline unsigned metacyclic_default_r(unsigned m, unsigned n) {
  for (unsigned r = 2; r < n; ++r)
    if (std::gcd(r, n) == 1 && nt::mult_order_mod(r, n) == m) return r;
  return 0;
}

/// Dicyclic: conductor 4n, conjugation, a^2 = b^{2n}, b^{4n} = 1, a^-1 b a = b^-1.
/// Semidihedral-like: conductor 8n, sigma_{1+4n}, a^2 = b^{4n}, b^{8n} = 1, a^-1 b a = b^{1+4n}.
/// Metacyclic: conductor n, sigma_r of order m, a^m = b^n = 1, with the cyclic
/// shift for a; the matrices satisfy a b a^-1 = b^r.
inline CycloExample example_builder(ExampleFamily fam, unsigned n, unsigned m = 2, unsigned r = 0) {
  if (n < 1) throw Error(Errc::BadParameters, "n must be at least 1");
  CycloExample ex;
  ex.family = fam;
  ex.n = n;
  using Mat = Matrix<CycloElem>;
  switch (fam) {
    case ExampleFamily::Dicyclic:
    case ExampleFamily::SemidihedralLike: {
      const bool di = fam == ExampleFamily::Dicyclic;
      const unsigned cond = di ? 4 * n : 8 * n;
      const long long k = di ? cond - 1 : 1 + 4 * n;
      ex.m = 2;
      ex.r = static_cast<unsigned>(k);
      ex.ctx = make_cyclo(cond, {k});
      const auto& c = *ex.ctx;
      const auto z0 = CycloElem::zero(c), z1 = CycloElem::one(c);
      const Mat a = Mat::from_rows(c, {{z0, z1}, {-z1, z0}});
      const Mat b = Mat::diagonal(c, {CycloElem::zeta(c, 1), CycloElem::zeta(c, k)});
      const long long half = di ? 2 * n : 4 * n;
      std::vector<Word> rel{{{0, 2}, {1, -half}}, {{1, 2 * half}}, {{0, -1}, {1, 1}, {0, 1}, {1, -k}}};
      ex.rep = make_representation<CycloElem>(ex.ctx, {a, b}, {"a", "b"}, std::move(rel));
      return ex;
    }
    case ExampleFamily::Metacyclic: {
      if (n < 3 || m < 2) throw Error(Errc::BadParameters, "metacyclic family needs n >= 3 and m >= 2");
      if (r == 0) r = metacyclic_default_r(m, n);
      if (r == 0 || std::gcd(r, n) != 1 || nt::mult_order_mod(r % n, n) != m)
        throw Error(Errc::BadParameters, "r must have multiplicative order m modulo n");
      ex.m = m;
      ex.r = r;
      ex.ctx = make_cyclo(n, {static_cast<long long>(r)});
      const auto& c = *ex.ctx;
      Mat a = Mat::zeros(c, m, m);
      for (unsigned i = 0; i < m; ++i) a(i, (i + 1) % m) = CycloElem::one(c);
      std::vector<CycloElem> diag;
      nt::u64 e = 1;
      for (unsigned i = 0; i < m; ++i, e = (e * r) % n) diag.push_back(CycloElem::zeta(c, static_cast<long long>(e)));
      const Mat b = Mat::diagonal(c, diag);
      std::vector<Word> rel{{{0, static_cast<long long>(m)}}, {{1, static_cast<long long>(n)}},
                            {{0, 1}, {1, 1}, {0, -1}, {1, -static_cast<long long>(r)}}};
      ex.rep = make_representation<CycloElem>(ex.ctx, {a, b}, {"a", "b"}, std::move(rel));
      return ex;
    }
  }
  throw Error(Errc::BadParameters, "unknown family");
}

}  // namespace galdesc
