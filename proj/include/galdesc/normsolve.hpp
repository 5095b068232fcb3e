#pragma once

// Finite-field norm equations and roots.
//
// Notation: e = |E^x|. For a subgroup A <= G of order a, the fixed field E^A
// has Q = q^{m/a} elements, f = Q - 1, and N_A(x) = x^{e/f}.
//
// Every solver verifies its defining equation before returning. Random
// candidates for trial t come from Rng(derive_seed(seed, tag, t)).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "galdesc/error.hpp"
#include "galdesc/fftower.hpp"
#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

struct NormEquation {
  FieldCtxPtr ctx;
  unsigned subgroup_order = 0;  // |A|; the generator is phi^{m/|A|}
  FieldElem target;             // lambda in (E^A)^x

  /// f = |(E^A)^x|.
  nt::u64 fixed_units() const { return nt::ipow(ctx->q(), ctx->m() / subgroup_order) - 1; }
};

namespace detail {

inline void check_norm_equation(const NormEquation& eq) {
  if (!eq.ctx) throw Error(Errc::PreconditionViolated, "norm equation without a field");
  const AutPower g = eq.ctx->subgroup_generator(eq.subgroup_order);
  if (&eq.target.context() != eq.ctx.get()) throw Error(Errc::ContextMismatch, "target from another field");
  if (eq.target.is_zero()) throw Error(Errc::PreconditionViolated, "norm target must be nonzero");
  if (!(eq.target.apply(g) == eq.target)) throw Error(Errc::PreconditionViolated, "norm target is not fixed by A");
}

/// Discrete log of y to base b where b has prime order r (linear scan below
/// 2^16, baby-step giant-step above).
inline nt::u64 dlog_prime_order(const FieldElem& b, const FieldElem& y, nt::u64 r) {
  if (r <= (1u << 16)) {
    FieldElem cur = FieldElem::one(b.context());
    for (nt::u64 j = 0; j < r; ++j) {
      if (cur == y) return j;
      cur *= b;
    }
    throw Error(Errc::NoRootExists, "element is outside the cyclic subgroup");
  }
  const nt::u64 step = static_cast<nt::u64>(std::ceil(std::sqrt(static_cast<double>(r))));
  std::unordered_map<nt::u64, nt::u64> baby;
  FieldElem cur = FieldElem::one(b.context());
  for (nt::u64 j = 0; j < step; ++j) {
    baby.emplace(cur.index(), j);
    cur *= b;
  }
  const FieldElem giant = b.pow(step).inverse();
  FieldElem g = y;
  for (nt::u64 i = 0; i <= step; ++i) {
    auto it = baby.find(g.index());
    if (it != baby.end()) return (i * step + it->second) % r;
    g *= giant;
  }
  throw Error(Errc::NoRootExists, "element is outside the cyclic subgroup");
}

/// Discrete log of y to base h, where h has order r^t (Pohlig-Hellman).
inline nt::u64 dlog_prime_power(const FieldElem& h, const FieldElem& y, nt::u64 r, unsigned t) {
  const FieldElem gamma = h.pow(nt::ipow(r, t - 1));
  const FieldElem hinv = h.inverse();
  nt::u64 x = 0, rk = 1;
  for (unsigned i = 0; i < t; ++i) {
    const FieldElem yi = (hinv.pow(x) * y).pow(nt::ipow(r, t - 1 - i));
    x += dlog_prime_order(gamma, yi, r) * rk;
    rk *= r;
  }
  return x;
}

/// z with z^{r^k} = c, for c known to be an r^k-th power in E^x.
inline FieldElem prime_power_root(const FieldElem& c, nt::u64 r, unsigned k) {
  const FieldCtx& ctx = c.context();
  const nt::u64 e = ctx.unit_order();
  unsigned t = 0;
  nt::u64 s = e;
  while (s % r == 0) {
    s /= r;
    ++t;
  }
  const nt::u64 rt = nt::ipow(r, t), rk = nt::ipow(r, k);
  // CRT split c = c_r * c_s with c_r in the r-Sylow subgroup, c_s of order | s.
  const nt::u64 a_r = static_cast<nt::u64>(static_cast<nt::u128>(s) * nt::invmod(s % rt, rt) % e);
  const nt::u64 a_s = (e + 1 - a_r) % e;
  const FieldElem c_r = c.pow(a_r), c_s = c.pow(a_s);
  const FieldElem root_s = s == 1 ? FieldElem::one(ctx) : c_s.pow(nt::invmod(rk % s, s));
  // Generator of the r-Sylow subgroup from the first non-r-th power.
  std::optional<FieldElem> eta;
  for (nt::u64 i = 1; i < ctx.size(); ++i) {
    FieldElem x = FieldElem::from_index(ctx, i);
    if (!x.pow(e / r).is_one()) {
      eta = x;
      break;
    }
  }
  if (!eta) throw Error(Errc::NoRootExists, "no non-residue found");
  const FieldElem h = eta->pow(s);
  const nt::u64 l = dlog_prime_power(h, c_r, r, t);
  if (l % rk != 0) throw Error(Errc::NoRootExists, "element is not an r^k-th power");
  return root_s * h.pow(l / rk);
}

}  // namespace detail

/// All x in E with x^d = c, by enumeration (|E| <= 2^20).
inline std::vector<FieldElem> dth_roots_exhaustive(const FieldElem& c, nt::u64 d) {
  const FieldCtx& ctx = c.context();
  if (ctx.size() > (1u << 20)) throw Error(Errc::BadParameters, "field too large to enumerate");
  std::vector<FieldElem> out;
  for (nt::u64 i = 1; i < ctx.size(); ++i) {
    FieldElem x = FieldElem::from_index(ctx, i);
    if (x.pow(d) == c) out.push_back(std::move(x));
  }
  return out;
}

/// mu with mu^d = c. Reduces to a g-th root, g = gcd(d, e), then extracts
/// one root per prime power of g in its Sylow subgroup and recombines by
/// Bezout. Falls back to enumeration when |E| <= 2^16.
inline FieldElem dth_root(const FieldElem& c, nt::u64 d) {
  if (d == 0) throw Error(Errc::BadParameters, "root degree must be positive");
  if (c.is_zero()) throw Error(Errc::PreconditionViolated, "root of zero");
  const FieldCtx& ctx = c.context();
  const nt::u64 e = ctx.unit_order();
  const nt::u64 g = std::gcd(d, e);
  if (!c.pow(e / g).is_one())
    throw Error(Errc::NoRootExists, "element is not a " + std::to_string(d) + "-th power");
  // In the subgroup of g-th powers (order e/g) the cofactor d/g is invertible.
  const nt::u64 eg = e / g;
  const FieldElem c1 = eg == 1 ? FieldElem::one(ctx) : c.pow(nt::invmod((d / g) % eg, eg));
  FieldElem y = FieldElem::one(ctx);
  nt::u64 done = 1;
  try {
    for (auto [r, k] : nt::factor(g)) {
      const nt::u64 rk = nt::ipow(r, k);
      const FieldElem z = detail::prime_power_root(c1, r, k);
      // Combine y^{done} = c1 and z^{rk} = c1 into w^{done*rk} = c1.
      const auto b = nt::ext_gcd(static_cast<nt::i128>(done), static_cast<nt::i128>(rk));
      y = y.pow_signed(static_cast<long long>(b.y)) * z.pow_signed(static_cast<long long>(b.x));
      done *= rk;
    }
  } catch (const Error&) {
    if (ctx.size() > (1u << 16)) throw;
    auto roots = dth_roots_exhaustive(c, d);
    if (roots.empty()) throw Error(Errc::NoRootExists, "no root found by enumeration");
    return roots.front();
  }
  if (!(y.pow(d) == c)) {
    if (ctx.size() <= (1u << 16)) {
      auto roots = dth_roots_exhaustive(c, d);
      if (!roots.empty()) return roots.front();
    }
    throw Error(Errc::NoRootExists, "root extraction failed verification");
  }
  return y;
}

// ---------------------------------------------------------------------------
// (q-1)th roots

/// Pi_C(nu) for the 1 x 1 cocycle C_phi = lambda; mu = Pi_C(nu) satisfies
/// lambda = mu / phi(mu) whenever it is nonzero.
inline std::optional<FieldElem> qm1_root_attempt(const FieldElem& lambda, const FieldElem& nu) {
  const FieldCtx& ctx = lambda.context();
  const AutPower phi = ctx.frobenius();
  FieldElem c = FieldElem::one(ctx), acc = FieldElem::zero(ctx);
  for (unsigned j = 0; j < ctx.m(); ++j) {
    acc += c * nu.apply(phi.pow(j));
    c *= lambda.apply(phi.pow(j));
  }
  if (acc.is_zero()) return std::nullopt;
  return acc;
}

struct SolveStats {
  unsigned trials = 0;
};

/// mu with mu^{q-1} = lambda^{-1}, for lambda of norm 1 over G.
inline FieldElem qm1_root(const FieldElem& lambda, std::uint64_t seed = 0, unsigned max_tries = 64,
                          SolveStats* stats = nullptr) {
  const FieldCtx& ctx = lambda.context();
  if (lambda.is_zero() || !norm(lambda).is_one()) throw Error(Errc::NotNormOne, "target does not have norm 1");
  const FieldElem want = lambda.inverse();
  auto check = [&](const FieldElem& mu) { return mu.pow(ctx.q() - 1) == want; };
  if (lambda.is_one()) {
    if (stats) stats->trials = 0;
    return FieldElem::one(ctx);
  }
  for (unsigned t = 0; t < max_tries; ++t) {
    Rng rng(derive_seed(seed, "normsolve.qm1", t));
    auto mu = qm1_root_attempt(lambda, FieldElem::random(ctx, rng));
    if (mu && check(*mu)) {
      if (stats) stats->trials = t + 1;
      return *mu;
    }
  }
  throw Error(Errc::ExhaustedTries, "no (q-1)th root found in " + std::to_string(max_tries) + " trials");
}

// ---------------------------------------------------------------------------
// Norm equations

/// Candidate of the order method: mu = nu^{f/|lambda|}.
inline FieldElem norm_order_candidate(const NormEquation& eq, const FieldElem& nu) {
  return nu.pow(eq.fixed_units() / multiplicative_order(eq.target));
}

inline FieldElem norm_solve_order(const NormEquation& eq, std::uint64_t seed = 0, unsigned max_tries = 64,
                                  SolveStats* stats = nullptr) {
  detail::check_norm_equation(eq);
  const FieldCtx& ctx = *eq.ctx;
  if (eq.target.is_one()) return FieldElem::one(ctx);
  const nt::u64 exp = eq.fixed_units() / multiplicative_order(eq.target);
  for (unsigned t = 0; t < max_tries; ++t) {
    Rng rng(derive_seed(seed, "normsolve.order", t));
    const FieldElem mu = FieldElem::random_nonzero(ctx, rng).pow(exp);
    if (norm(mu, eq.subgroup_order) == eq.target) {
      if (stats) stats->trials = t + 1;
      return mu;
    }
  }
  throw Error(Errc::ExhaustedTries, "order method found no solution in " + std::to_string(max_tries) + " trials");
}

/// Parameters of the gcd method: d = gcd(|lambda|, e/f) and s = (e/(fd))^{-1}
/// mod |lambda|/d.
struct GcdParams {
  nt::u64 d = 1;
  nt::u64 s = 0;
};

inline GcdParams gcd_params(const NormEquation& eq) {
  const nt::u64 e = eq.ctx->unit_order(), f = eq.fixed_units();
  const nt::u64 ord = multiplicative_order(eq.target);
  GcdParams p;
  p.d = std::gcd(ord, e / f);
  const nt::u64 mod = ord / p.d;
  p.s = mod == 1 ? 0 : nt::invmod((e / (f * p.d)) % mod, mod);
  return p;
}

/// One root of x^d = lambda^s nu^f. Either all d roots have norm lambda or none do.
inline FieldElem norm_gcd_candidate(const NormEquation& eq, const GcdParams& p, const FieldElem& nu) {
  return dth_root(eq.target.pow(p.s) * nu.pow(eq.fixed_units()), p.d);
}

inline FieldElem norm_solve_gcd(const NormEquation& eq, std::uint64_t seed = 0, unsigned max_tries = 64,
                                SolveStats* stats = nullptr) {
  detail::check_norm_equation(eq);
  const FieldCtx& ctx = *eq.ctx;
  if (eq.target.is_one()) return FieldElem::one(ctx);
  const GcdParams p = gcd_params(eq);
  for (unsigned t = 0; t < max_tries; ++t) {
    Rng rng(derive_seed(seed, "normsolve.gcd", t));
    const FieldElem mu = norm_gcd_candidate(eq, p, FieldElem::random_nonzero(ctx, rng));
    if (norm(mu, eq.subgroup_order) == eq.target) {
      if (stats) stats->trials = t + 1;
      return mu;
    }
  }
  throw Error(Errc::ExhaustedTries, "gcd method found no solution in " + std::to_string(max_tries) + " trials");
}

enum class NormMethod { Order, Gcd };

inline FieldElem norm_solve(const NormEquation& eq, NormMethod method, std::uint64_t seed = 0,
                            unsigned max_tries = 64) {
  return method == NormMethod::Order ? norm_solve_order(eq, seed, max_tries) : norm_solve_gcd(eq, seed, max_tries);
}

// ---------------------------------------------------------------------------
// Coprime-pair presentations

/// G = A x B with [E:F] = m n, gcd(m, n) = 1, A = <alpha>, alpha = phi^n of
/// order m, and B = <beta>, beta = phi^m of order n.
struct CoprimeSplit {
  unsigned m = 1, n = 1;
  AutPower alpha, beta;
};

inline CoprimeSplit coprime_split(const FieldCtx& ctx, unsigned m) {
  if (m == 0 || ctx.m() % m != 0) throw Error(Errc::NonDivisorOrder, "m must divide [E:F]");
  const unsigned n = ctx.m() / m;
  if (std::gcd(m, n) != 1) throw Error(Errc::NotCoprime, "m and n must be coprime");
  return {m, n, ctx.aut(n), ctx.aut(m)};
}

struct CommutatorSolution {
  FieldElem nu_alpha, nu_beta;
  long long r = 0, s = 0;  // r(q^m - 1) + s(q^n - 1) = q - 1
};

/// Left side of the commutator equation: beta(nu_a)^{-1} nu_b^{-1} nu_a alpha(nu_b).
inline FieldElem commutator_value(const CoprimeSplit& sp, const FieldElem& na, const FieldElem& nb) {
  return na.apply(sp.beta).inverse() * nb.inverse() * na * nb.apply(sp.alpha);
}

namespace detail {

/// Multiplies x by an element of the fixed field of `keep` (so that
/// x^{1 - q^k} is unchanged) to make its norm over <gen> (order `ord`) equal 1.
inline FieldElem repair_norm(const FieldElem& x, const AutPower& gen, unsigned ord, const AutPower& keep,
                             unsigned keep_ord, std::uint64_t seed, std::string_view tag, unsigned max_tries) {
  const FieldCtx& ctx = x.context();
  auto norm_over = [&](const FieldElem& y, const AutPower& g, unsigned o) {
    FieldElem acc = FieldElem::one(ctx);
    for (unsigned j = 0; j < o; ++j) acc *= y.apply(g.pow(j));
    return acc;
  };
  const FieldElem kappa = norm_over(x, gen, ord);
  if (kappa.is_one()) return x;
  const FieldElem want = kappa.inverse();
  const nt::u64 exp = (ctx.q() - 1) / multiplicative_order(want);
  for (unsigned t = 0; t < max_tries; ++t) {
    Rng rng(derive_seed(seed, tag, t));
    // Norms over <keep> are uniform in its fixed field.
    const FieldElem g = norm_over(FieldElem::random_nonzero(ctx, rng), keep, keep_ord).pow(exp);
    if (norm_over(g, gen, ord) == want) return x * g;
  }
  throw Error(Errc::ExhaustedTries, "norm repair found no correction");
}

}  // namespace detail

/// Solves beta(nu_a)^{-1} nu_b^{-1} nu_a alpha(nu_b) = lambda with nu_a in K_A
/// and nu_b in K_B, for lambda in K_A cap K_B.
inline CommutatorSolution commutator_solve(const CoprimeSplit& sp, const FieldElem& lambda, std::uint64_t seed = 0,
                                           unsigned max_tries = 64) {
  const FieldCtx& ctx = lambda.context();
  if (lambda.is_zero() || !norm(lambda, sp.m).is_one() || !norm(lambda, sp.n).is_one())
    throw Error(Errc::NotInKernelIntersection, "lambda is not in the intersection of the norm kernels");
  const nt::u64 q = ctx.q();
  const nt::i128 qm1 = static_cast<nt::i128>(nt::ipow(q, sp.m)) - 1, qn1 = static_cast<nt::i128>(nt::ipow(q, sp.n)) - 1;
  auto bz = nt::ext_gcd(qm1, qn1);
  if (bz.g != static_cast<nt::i128>(q - 1)) throw Error(Errc::NotCoprime, "gcd(q^m-1, q^n-1) != q-1");
  CommutatorSolution out;
  out.r = static_cast<long long>(bz.x);
  out.s = static_cast<long long>(bz.y);
  // qm1_root(x) returns nu with nu^{q-1} = x^{-1}.
  out.nu_alpha = qm1_root(lambda.pow_signed(out.r), derive_seed(seed, "commutator.alpha"), max_tries);
  out.nu_beta = qm1_root(lambda.pow_signed(-out.s), derive_seed(seed, "commutator.beta"), max_tries);
  // nu_a^{q-1} fixes nu_a up to F^x; align the norms with elements of the
  // complementary fixed fields, which leave both sides of the equation alone.
  const unsigned repair_tries = std::max<unsigned>(max_tries, 16 * static_cast<unsigned>(q));
  out.nu_alpha = detail::repair_norm(out.nu_alpha, sp.alpha, sp.m, sp.beta, sp.n, seed, "commutator.repair.alpha",
                                     repair_tries);
  out.nu_beta = detail::repair_norm(out.nu_beta, sp.beta, sp.n, sp.alpha, sp.m, seed, "commutator.repair.beta",
                                    repair_tries);
  if (!(commutator_value(sp, out.nu_alpha, out.nu_beta) == lambda))
    throw Error(Errc::PreconditionViolated, "commutator solution failed verification");
  return out;
}

// ---------------------------------------------------------------------------
// Kernel / image lattice

struct LatticeOrders {
  nt::u64 k_a, k_b, k_a_k_b, k_a_cap_k_b, k_ab;
  nt::u64 i_a, i_b, i_a_i_b, i_a_cap_i_b, i_ab;
};

struct LatticeReport {
  unsigned m = 1, n = 1;
  nt::u64 q = 0, e = 0;
  nt::u64 gcd_qm1_qn1 = 0;  // gcd(q^m-1, q^n-1)
  bool enumerated = false;
  LatticeOrders measured{};  // by enumeration when enumerated, else from structure
  LatticeOrders formula{};   // closed forms
  bool kernel_product_equals_k_ab = false;
  bool image_intersection_equals_i_ab = false;
};

namespace detail {

inline std::vector<bool> norm_kernel_mask(const FieldCtx& ctx, unsigned ord) {
  std::vector<bool> mask(ctx.size(), false);
  for (nt::u64 i = 1; i < ctx.size(); ++i) mask[i] = norm(FieldElem::from_index(ctx, i), ord).is_one();
  return mask;
}
inline std::vector<bool> norm_image_mask(const FieldCtx& ctx, unsigned ord) {
  std::vector<bool> mask(ctx.size(), false);
  for (nt::u64 i = 1; i < ctx.size(); ++i) mask[norm(FieldElem::from_index(ctx, i), ord).index()] = true;
  return mask;
}
inline std::vector<bool> product_mask(const FieldCtx& ctx, const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<nt::u64> xs, ys;
  for (nt::u64 i = 1; i < ctx.size(); ++i) {
    if (a[i]) xs.push_back(i);
    if (b[i]) ys.push_back(i);
  }
  std::vector<bool> mask(ctx.size(), false);
  for (auto x : xs) {
    const FieldElem fx = FieldElem::from_index(ctx, x);
    for (auto y : ys) mask[(fx * FieldElem::from_index(ctx, y)).index()] = true;
  }
  return mask;
}
inline nt::u64 popcount(const std::vector<bool>& v) { return static_cast<nt::u64>(std::count(v.begin(), v.end(), true)); }
inline std::vector<bool> mask_and(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] && b[i];
  return r;
}

}  // namespace detail

/// Orders of the kernels and images of N_A, N_B for G = A x B. Enumerates the
/// group when |E| <= 2^14; otherwise uses the cyclic structure (subgroups of a
/// cyclic group are determined by their orders).
inline LatticeReport kernel_lattice(const FieldCtx& ctx, unsigned m) {
  const CoprimeSplit sp = coprime_split(ctx, m);
  LatticeReport rep;
  rep.m = sp.m;
  rep.n = sp.n;
  rep.q = ctx.q();
  rep.e = ctx.unit_order();
  const nt::u64 q = rep.q, e = rep.e, qm = nt::ipow(q, sp.m) - 1, qn = nt::ipow(q, sp.n) - 1;
  rep.gcd_qm1_qn1 = std::gcd(qm, qn);
  const nt::u64 ell = qm * qn / (q - 1);
  // |A| = m, E^A = GF(q^n): N_A maps onto GF(q^n)^x.
  rep.formula = {e / qn, e / qm, e / (q - 1), e / ell, e / (q - 1), qn, qm, ell, q - 1, q - 1};
  if (ctx.size() <= (1u << 14)) {
    using namespace detail;
    auto ka = norm_kernel_mask(ctx, sp.m), kb = norm_kernel_mask(ctx, sp.n), kab = norm_kernel_mask(ctx, ctx.m());
    auto ia = norm_image_mask(ctx, sp.m), ib = norm_image_mask(ctx, sp.n), iab = norm_image_mask(ctx, ctx.m());
    auto kakb = product_mask(ctx, ka, kb), iaib = product_mask(ctx, ia, ib);
    auto kcap = mask_and(ka, kb), icap = mask_and(ia, ib);
    rep.measured = {popcount(ka),   popcount(kb), popcount(kakb), popcount(kcap), popcount(kab),
                    popcount(ia),   popcount(ib), popcount(iaib), popcount(icap), popcount(iab)};
    rep.kernel_product_equals_k_ab = kakb == kab;
    rep.image_intersection_equals_i_ab = icap == iab;
    rep.enumerated = true;
  } else {
    // N_A(x) = x^{e/|I_A|}; kernel order = gcd(e, e/|I_A|) etc.
    auto kern = [&](nt::u64 img) { return e / img; };
    const nt::u64 ia = qn, ib = qm, iab = q - 1;
    auto lcm = [](nt::u64 a, nt::u64 b) { return a / std::gcd(a, b) * b; };
    rep.measured = {kern(ia), kern(ib), lcm(kern(ia), kern(ib)), std::gcd(kern(ia), kern(ib)), kern(iab),
                    ia,       ib,       lcm(ia, ib),            std::gcd(ia, ib),              iab};
    rep.kernel_product_equals_k_ab = rep.measured.k_a_k_b == rep.measured.k_ab;
    rep.image_intersection_equals_i_ab = rep.measured.i_a_cap_i_b == rep.measured.i_ab;
  }
  return rep;
}

}  // namespace galdesc
