#pragma once

// Invertibility probabilities for Pi_C candidates, exact and sampled, and
// normal-element densities. Requires GMP (gmpxx) for exact rationals.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "galdesc/cocycle.hpp"
#include "galdesc/error.hpp"
#include "galdesc/fftower.hpp"
#include "galdesc/normsolve.hpp"
#include "galdesc/ntheory.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

inline void require_prime_power(nt::u64 q) {
  if (q < 2 || !nt::prime_power_base(q)) throw Error(Errc::BadParameters, std::to_string(q) + " is not a prime power");
}

inline mpq_class pow_q(nt::u64 q, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, e);
  return mpq_class(r);
}

/// |GL_d(F_q)| / q^{d^2} = prod_{i=1}^{d} (1 - q^{-i}).
inline mpq_class f_dq(unsigned d, nt::u64 q) {
  if (d < 1) throw Error(Errc::BadParameters, "d must be at least 1");
  require_prime_power(q);
  mpq_class f = 1;
  for (unsigned i = 1; i <= d; ++i) f *= 1 - 1 / pow_q(q, i);
  return f;
}

/// Rational bracket [lo, hi] around prod_{i>=1} (1 - q^{-i}) from the first
/// `terms` factors; uses prod (1 - x_i) >= 1 - sum x_i for the tail.
inline std::pair<mpq_class, mpq_class> f_infinity_bracket(nt::u64 q, unsigned terms = 40) {
  const mpq_class hi = f_dq(terms, q);
  const mpq_class tail = 1 / (pow_q(q, terms) * (q - 1));
  return {hi * (1 - tail), hi};
}

/// 1 - 1/q >= f(d,q), and f(d,q) > 1 - 1/(q-1) for q > 2, f(d,2) > 2/7.
inline bool f_bounds_hold(unsigned d, nt::u64 q) {
  const mpq_class f = f_dq(d, q);
  if (f > 1 - mpq_class(1, static_cast<unsigned long>(q))) return false;
  if (q == 2) return f > mpq_class(2, 7);
  return f > 1 - mpq_class(1, static_cast<unsigned long>(q - 1));
}

// ---------------------------------------------------------------------------
// Normal elements

/// Fraction of E = GF(q^n) whose Galois orbit is an F-basis:
/// q^{-n} Phi_q(x^n - 1) = prod over irreducible factors g of x^{n'} - 1 of
/// (1 - q^{-deg g}), with n = p^k n', p not dividing n'.
inline mpq_class normal_basis_density(nt::u64 q, unsigned n) {
  if (n < 1) throw Error(Errc::BadParameters, "n must be at least 1");
  require_prime_power(q);
  const nt::u64 p = nt::prime_power_base(q);
  unsigned n1 = n;
  while (n1 % p == 0) n1 /= static_cast<unsigned>(p);
  mpq_class dens = 1;
  for (nt::u64 d : nt::divisors(n1)) {
    const nt::u64 ord = d == 1 ? 1 : nt::mult_order_mod(q % d, d);
    const nt::u64 count = nt::euler_phi(d) / ord;
    const mpq_class factor = 1 - 1 / pow_q(q, static_cast<unsigned>(ord));
    for (nt::u64 i = 0; i < count; ++i) dens *= factor;
  }
  return dens;
}

/// q^{-n} sum_{d | n} mu(n/d) q^d: the fraction of E generating E as a field over F.
inline mpq_class mobius_generator_density(nt::u64 q, unsigned n) {
  if (n < 1) throw Error(Errc::BadParameters, "n must be at least 1");
  require_prime_power(q);
  mpq_class s = 0;
  for (nt::u64 d : nt::divisors(n)) s += nt::moebius(n / d) * pow_q(q, static_cast<unsigned>(d));
  return s / pow_q(q, n);
}

/// density >= 1 - q^{-n/2}, decided exactly: 1 - density <= q^{-n/2} iff
/// density >= 1 or (1 - density)^2 <= q^{-n}.
inline bool density_bound_holds(const mpq_class& density, nt::u64 q, unsigned n) {
  const mpq_class gap = 1 - density;
  if (gap <= 0) return true;
  return gap * gap <= 1 / pow_q(q, n);
}

inline nt::u64 count_normal_elements(const FieldCtx& ctx) {
  nt::u64 c = 0;
  for (nt::u64 i = 0; i < ctx.size(); ++i) c += is_normal_element(FieldElem::from_index(ctx, i));
  return c;
}

/// Cocycle of the regular representation: C_phi = permutation matrix of
/// gamma -> phi gamma on G, entries in the prime field.
inline FfCocycle regular_cocycle(const FieldCtx& ctx) {
  if (ctx.m() < 2) throw Error(Errc::BadParameters, "regular cocycle needs [E:F] >= 2");
  return validate_and_close(full_group(ctx), std::vector<FfMat>{FfMat::cycle_permutation(ctx, ctx.m())});
}

// ---------------------------------------------------------------------------
// Trials

struct TrialReport {
  std::string kind;
  unsigned d = 0;
  nt::u64 q = 0, n = 0;
  nt::u64 trials = 0, successes = 0;
  double estimate = 0, theory = 0, sigma3 = 0;
  bool exhaustive = false;

  bool within_3sigma() const { return std::abs(estimate - theory) <= sigma3; }
};

inline TrialReport make_report(std::string kind, nt::u64 trials, nt::u64 successes, double theory) {
  TrialReport r;
  r.kind = std::move(kind);
  r.trials = trials;
  r.successes = successes;
  r.estimate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  r.theory = theory;
  r.sigma3 = trials ? 3.0 * std::sqrt(theory * (1 - theory) / static_cast<double>(trials)) : 0.0;
  return r;
}

/// Counts t in [0, trials) with pred(t), over `jobs` threads. pred must be
/// thread-safe and depend only on t.
template <class Pred>
nt::u64 count_trials(nt::u64 trials, unsigned jobs, Pred pred) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::min<nt::u64>(trials, 256))));
  if (jobs == 1) {
    nt::u64 s = 0;
    for (nt::u64 t = 0; t < trials; ++t) s += pred(t) ? 1 : 0;
    return s;
  }
  std::atomic<nt::u64> total{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      nt::u64 s = 0;
      for (nt::u64 t = j; t < trials; t += jobs) s += pred(t) ? 1 : 0;
      total += s;
    });
  for (auto& th : pool) th.join();
  return total.load();
}

enum class CandidateKind { RandomX, ScalarLambda, Structured };

inline std::string_view candidate_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::RandomX: return "random-X";
    case CandidateKind::ScalarLambda: return "scalar-lambda";
    case CandidateKind::Structured: return "structured";
  }
  return "?";
}

inline CandidateKind parse_candidate(std::string_view s) {
  if (s == "random-X" || s == "random-x" || s == "random") return CandidateKind::RandomX;
  if (s == "scalar-lambda" || s == "scalar") return CandidateKind::ScalarLambda;
  if (s == "structured") return CandidateKind::Structured;
  throw Error(Errc::MalformedInput, "unknown candidate kind '" + std::string(s) + "'");
}

namespace detail {

// Candidate from a flat list of field elements: d^2 entries, 1 scalar, or d coefficients of sum lambda_i P^i.
inline FfMat candidate_from(const FieldCtx& ctx, std::size_t d, CandidateKind kind, const std::vector<FieldElem>& v) {
  switch (kind) {
    case CandidateKind::RandomX: {
      FfMat x(ctx, d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = v[i * d + j];
      return x;
    }
    case CandidateKind::ScalarLambda: return FfMat::scalar(ctx, d, v[0]);
    case CandidateKind::Structured: {
      const FfMat p = FfMat::cycle_permutation(ctx, d);
      FfMat pk = FfMat::identity(ctx, d), x = FfMat::zeros(ctx, d, d);
      for (std::size_t i = 0; i < d; ++i, pk = pk * p) x = x + pk * v[i];
      return x;
    }
  }
  throw Error(Errc::BadParameters, "unknown candidate kind");
}

inline std::size_t candidate_arity(std::size_t d, CandidateKind kind) {
  return kind == CandidateKind::RandomX ? d * d : kind == CandidateKind::ScalarLambda ? 1 : d;
}

}  // namespace detail

/// Sampled frequency of invertible Pi_C(X). Theory is f(d, |F|); for the
/// scalar and structured kinds it is a reference value, not a claim.
inline TrialReport mc_invertibility(const FfCocycle& c, CandidateKind kind, nt::u64 trials, std::uint64_t seed,
                                    unsigned jobs = 1) {
  const FieldCtx& ctx = c.context();
  const std::size_t d = c.dim(), k = detail::candidate_arity(d, kind);
  const std::string tag = "stats." + std::string(candidate_name(kind));
  const nt::u64 s = count_trials(trials, jobs, [&](nt::u64 t) {
    Rng rng(derive_seed(seed, tag, t));
    std::vector<FieldElem> v;
    for (std::size_t i = 0; i < k; ++i) v.push_back(FieldElem::random(ctx, rng));
    return is_invertible(pi_c(c, detail::candidate_from(ctx, d, kind, v)));
  });
  auto r = make_report(std::string(candidate_name(kind)), trials, s, f_dq(static_cast<unsigned>(d), ctx.q()).get_d());
  r.d = static_cast<unsigned>(d);
  r.q = ctx.q();
  r.n = ctx.m();
  return r;
}

/// Exact count over every candidate; refuses more than 2^20 candidates.
inline TrialReport exhaustive_invertibility(const FfCocycle& c, CandidateKind kind, unsigned jobs = 1) {
  const FieldCtx& ctx = c.context();
  const std::size_t d = c.dim(), k = detail::candidate_arity(d, kind);
  nt::u64 total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > (nt::u64{1} << 20) / ctx.size()) throw Error(Errc::BadParameters, "too many candidates to enumerate");
    total *= ctx.size();
  }
  const nt::u64 s = count_trials(total, jobs, [&](nt::u64 idx) {
    std::vector<FieldElem> v;
    for (std::size_t i = 0; i < k; ++i, idx /= ctx.size()) v.push_back(FieldElem::from_index(ctx, idx % ctx.size()));
    return is_invertible(pi_c(c, detail::candidate_from(ctx, d, kind, v)));
  });
  auto r = make_report(std::string(candidate_name(kind)), total, s, f_dq(static_cast<unsigned>(d), ctx.q()).get_d());
  r.d = static_cast<unsigned>(d);
  r.q = ctx.q();
  r.n = ctx.m();
  r.exhaustive = true;
  return r;
}

/// Per-trial success of the (q-1)th-root candidate for a norm-one lambda; theory 1 - 1/q.
inline TrialReport mc_qm1_success(const FieldElem& lambda, nt::u64 trials, std::uint64_t seed, unsigned jobs = 1) {
  const FieldCtx& ctx = lambda.context();
  const nt::u64 s = count_trials(trials, jobs, [&](nt::u64 t) {
    Rng rng(derive_seed(seed, "stats.qm1", t));
    return qm1_root_attempt(lambda, FieldElem::random(ctx, rng)).has_value();
  });
  auto r = make_report("qm1", trials, s, 1.0 - 1.0 / static_cast<double>(ctx.q()));
  r.q = ctx.q();
  r.n = ctx.m();
  return r;
}

/// Per-trial success of the gcd-method norm candidate; theory 1/d.
inline TrialReport mc_norm_gcd_success(const NormEquation& eq, nt::u64 trials, std::uint64_t seed, unsigned jobs = 1) {
  const FieldCtx& ctx = *eq.ctx;
  const GcdParams p = gcd_params(eq);
  const nt::u64 s = count_trials(trials, jobs, [&](nt::u64 t) {
    Rng rng(derive_seed(seed, "stats.normgcd", t));
    return norm(norm_gcd_candidate(eq, p, FieldElem::random_nonzero(ctx, rng)), eq.subgroup_order) == eq.target;
  });
  auto r = make_report("normgcd", trials, s, 1.0 / static_cast<double>(p.d));
  r.d = static_cast<unsigned>(p.d);
  r.q = ctx.q();
  r.n = ctx.m();
  return r;
}

inline std::string csv_header() { return "kind,d,q,n,trials,successes,estimate,theory,sigma3"; }

inline std::string csv_row(const TrialReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%u,%llu,%llu,%llu,%llu,%.6f,%.6f,%.6f", r.kind.c_str(), r.d,
                static_cast<unsigned long long>(r.q), static_cast<unsigned long long>(r.n),
                static_cast<unsigned long long>(r.trials), static_cast<unsigned long long>(r.successes), r.estimate,
                r.theory, r.sigma3);
  return buf;
}

}  // namespace galdesc
