#pragma once

// Rewriting an absolutely irreducible representation over E so that its
// matrices lie in the fixed field F = E^G.
//
// Pipeline: intertwiners D_a with rho D_a = D_a a(rho); power normalisation
// C_a = mu_a D_a; commutator normalisation for two coprime generators;
// cocycle closure; Hilbert 90. The field-specific steps (norm equations,
// commutator equations, Hilbert 90) are callbacks so the cyclotomic layer
// can reuse the same driver.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galdesc/cocycle.hpp"
#include "galdesc/error.hpp"
#include "galdesc/matrix.hpp"
#include "galdesc/normsolve.hpp"
#include "galdesc/rng.hpp"

namespace galdesc {

/// A word in the generators: (generator index, exponent) pairs, read left to right.
using Word = std::vector<std::pair<std::size_t, long long>>;

template <class T>
Matrix<T> matrix_power(const Matrix<T>& m, long long e) {
  Matrix<T> base = e < 0 ? inverse(m) : m;
  Matrix<T> r = Matrix<T>::identity(m.context(), m.rows());
  for (unsigned long long k = e < 0 ? -static_cast<unsigned long long>(e) : e; k; k >>= 1) {
    if (k & 1) r = r * base;
    base = base * base;
  }
  return r;
}

template <class T>
struct Representation {
  using Ctx = typename T::context_type;
  using Mat = Matrix<T>;

  std::shared_ptr<const Ctx> ctx;
  std::size_t d = 0;
  std::vector<std::string> names;
  std::vector<Mat> gens;
  std::vector<Word> relations;  // each must evaluate to I; empty = free group

  Mat evaluate(const Word& w) const {
    Mat r = Mat::identity(*ctx, d);
    for (auto [g, e] : w) r = r * matrix_power(gens.at(g), e);
    return r;
  }
};

/// Validates shapes, invertibility and relations. Names default to g1, g2, ...
template <class T>
Representation<T> make_representation(std::shared_ptr<const typename T::context_type> ctx,
                                      std::vector<Matrix<T>> gens, std::vector<std::string> names = {},
                                      std::vector<Word> relations = {}) {
  if (gens.empty()) throw Error(Errc::DimensionMismatch, "representation needs at least one generator");
  Representation<T> rep;
  rep.ctx = std::move(ctx);
  rep.d = gens[0].rows();
  if (rep.d == 0) throw Error(Errc::DimensionMismatch, "zero-dimensional representation");
  for (const auto& g : gens) {
    if (g.rows() != rep.d || g.cols() != rep.d) throw Error(Errc::DimensionMismatch, "generator matrices differ in shape");
    if (&g.context() != rep.ctx.get()) throw Error(Errc::ContextMismatch, "generator over a different field");
    if (!is_invertible(g)) throw Error(Errc::SingularMatrix, "generator matrix is singular");
  }
  if (names.empty())
    for (std::size_t i = 0; i < gens.size(); ++i) names.push_back("g" + std::to_string(i + 1));
  if (names.size() != gens.size()) throw Error(Errc::DimensionMismatch, "one name per generator required");
  rep.names = std::move(names);
  rep.gens = std::move(gens);
  rep.relations = std::move(relations);
  for (std::size_t r = 0; r < rep.relations.size(); ++r) {
    for (auto [g, e] : rep.relations[r])
      if (g >= rep.gens.size()) throw Error(Errc::MalformedInput, "relation refers to an unknown generator");
    if (!rep.evaluate(rep.relations[r]).is_identity())
      throw Error(Errc::RelationDefect, "relation " + std::to_string(r) + " does not hold");
  }
  return rep;
}

template <class T>
bool check_absolutely_irreducible(const Representation<T>& rep) {
  return burnside_spans(rep.gens);
}

template <class T>
std::vector<Matrix<T>> twisted_generators(const Representation<T>& rep, const typename T::aut_type& a) {
  std::vector<Matrix<T>> tw;
  for (const auto& g : rep.gens) tw.push_back(g.apply(a));
  return tw;
}

/// Dimension of the space of D with rho(g_i) D = D a(rho(g_i)).
template <class T>
std::size_t intertwiner_space_dim(const Representation<T>& rep, const typename T::aut_type& a) {
  return solve_sylvester_like(rep.gens, twisted_generators(rep, a)).size();
}

/// D_a with first nonzero entry (row-major) equal to 1, or nullopt if none exists.
template <class T>
std::optional<Matrix<T>> intertwiner(const Representation<T>& rep, const typename T::aut_type& a) {
  auto basis = solve_sylvester_like(rep.gens, twisted_generators(rep, a));
  if (basis.empty()) return std::nullopt;
  if (basis.size() > 1)
    throw Error(Errc::SchurViolation, "intertwiner space has dimension " + std::to_string(basis.size()));
  Matrix<T> dm = std::move(basis[0]);
  for (const T& x : dm.data())
    if (!x.is_zero()) return dm * x.inverse();
  throw Error(Errc::PreconditionViolated, "nullspace vector is zero");
}

/// D a(D) a^2(D) ... a^{m-1}(D).
template <class T>
Matrix<T> twisted_power_product(const Matrix<T>& dm, const typename T::aut_type& a, unsigned m) {
  Matrix<T> prod = dm;
  auto ak = a;
  for (unsigned k = 1; k < m; ++k, ak = ak * a) prod = prod * dm.apply(ak);
  return prod;
}

/// a(C_b)^{-1} C_a^{-1} C_b b(C_a).
template <class T>
Matrix<T> commutator_product(const Matrix<T>& ca, const typename T::aut_type& a, const Matrix<T>& cb,
                             const typename T::aut_type& b) {
  return inverse(cb.apply(a)) * inverse(ca) * cb * ca.apply(b);
}

// ---------------------------------------------------------------------------
// Certificates

enum class DescentOutcome { Written, Obstructed };

enum class ObstructionStage { NoIntertwiner, NotScalar, NormUnsolvable, NotInKernelIntersection };

inline std::string_view stage_name(ObstructionStage s) {
  switch (s) {
    case ObstructionStage::NoIntertwiner: return "NoIntertwiner";
    case ObstructionStage::NotScalar: return "NotScalar";
    case ObstructionStage::NormUnsolvable: return "NormUnsolvable";
    case ObstructionStage::NotInKernelIntersection: return "NotInKernelIntersection";
  }
  return "?";
}

enum class PresentationKind { SingleGenerator, CoprimePair };

inline std::string_view presentation_name(PresentationKind k) {
  return k == PresentationKind::SingleGenerator ? "single-generator" : "coprime-pair";
}

inline PresentationKind parse_presentation(std::string_view s) {
  if (s == "single-generator" || s == "single") return PresentationKind::SingleGenerator;
  if (s == "coprime-pair" || s == "coprime") return PresentationKind::CoprimePair;
  throw Error(Errc::MalformedInput, "unknown presentation '" + std::string(s) + "'");
}

template <class T>
struct Obstruction {
  ObstructionStage stage{};
  std::size_t generator = 0;  // index into DescentCertificate::auts
  std::string witness;
  std::optional<T> scalar;
};

template <class T>
struct DescentCertificate {
  using Aut = typename T::aut_type;
  using Mat = Matrix<T>;

  DescentOutcome outcome = DescentOutcome::Obstructed;
  PresentationKind presentation = PresentationKind::SingleGenerator;
  std::vector<Aut> auts;  // generators of G used by the presentation
  std::vector<unsigned> orders;

  std::vector<std::optional<Mat>> intertwiners;  // D_a, gauge-fixed
  std::vector<T> lambda;                          // twisted power products of D_a
  std::vector<T> mu;                              // N(mu_a) = lambda_a^{-1}
  std::optional<T> lambda_commutator;
  std::optional<std::pair<T, T>> nu;
  std::vector<Mat> cocycle_generators;  // final C on auts
  std::optional<Cocycle<T>> cocycle;

  std::optional<Mat> a;
  std::vector<Mat> rewritten;
  std::optional<Obstruction<T>> obstruction;

  bool written() const { return outcome == DescentOutcome::Written; }
};

// ---------------------------------------------------------------------------
// Generic driver

template <class T>
struct DescentPlan {
  using Aut = typename T::aut_type;
  PresentationKind kind = PresentationKind::SingleGenerator;
  Aut identity;
  std::vector<Aut> auts;
  std::vector<unsigned> orders;
};

template <class T>
struct DescentHooks {
  using Aut = typename T::aut_type;
  // mu with N_{<a>}(mu) = target; throws Error(NormUnsolvable) or other codes.
  std::function<T(std::size_t gen, const Aut& a, unsigned order, const T& target)> solve_norm;
  // (nu_a, nu_b) for the commutator scalar; throws Error(NotInKernelIntersection).
  std::function<std::pair<T, T>(const T& lambda)> solve_commutator;
  std::function<Matrix<T>(const Cocycle<T>&)> solve_h90;
};

template <class T>
bool entries_fixed(const Matrix<T>& m, const std::vector<typename T::aut_type>& auts) {
  for (const T& x : m.data())
    for (const auto& a : auts)
      if (!(x.apply(a) == x)) return false;
  return true;
}

template <class T>
DescentCertificate<T> run_descent(const Representation<T>& rep, const DescentPlan<T>& plan,
                                  const DescentHooks<T>& hooks) {
  using Mat = Matrix<T>;
  if (!check_absolutely_irreducible(rep))
    throw Error(Errc::NotAbsolutelyIrreducible, "generators do not span the full matrix algebra");
  const auto& ctx = *rep.ctx;
  const std::size_t d = rep.d;

  DescentCertificate<T> cert;
  cert.presentation = plan.kind;
  cert.auts = plan.auts;
  cert.orders = plan.orders;

  auto obstruct = [&](ObstructionStage st, std::size_t g, std::string w, std::optional<T> s = std::nullopt) {
    cert.outcome = DescentOutcome::Obstructed;
    cert.obstruction = Obstruction<T>{st, g, std::move(w), std::move(s)};
    return cert;
  };

  if (plan.auts.empty()) {
    // Trivial group: already over F.
    cert.outcome = DescentOutcome::Written;
    cert.a = Mat::identity(ctx, d);
    cert.rewritten = rep.gens;
    return cert;
  }

  // Intertwiners.
  for (std::size_t i = 0; i < plan.auts.size(); ++i) {
    auto dm = intertwiner(rep, plan.auts[i]);
    cert.intertwiners.push_back(dm);
    if (!dm) return obstruct(ObstructionStage::NoIntertwiner, i, "intertwiner nullspace is zero");
  }

  // Power relations.
  std::vector<Mat> c;
  for (std::size_t i = 0; i < plan.auts.size(); ++i) {
    const Mat& dm = *cert.intertwiners[i];
    const Mat prod = twisted_power_product(dm, plan.auts[i], plan.orders[i]);
    auto lam = prod.scalar_value();
    if (!lam) return obstruct(ObstructionStage::NotScalar, i, "twisted power product is not scalar");
    if (!(lam->apply(plan.auts[i]) == *lam))
      return obstruct(ObstructionStage::NotScalar, i, "power scalar not fixed by its generator", *lam);
    cert.lambda.push_back(*lam);
    T mu;
    try {
      mu = hooks.solve_norm(i, plan.auts[i], plan.orders[i], lam->inverse());
    } catch (const Error& e) {
      if (e.code() != Errc::NormUnsolvable) throw;
      return obstruct(ObstructionStage::NormUnsolvable, i, e.what(), *lam);
    }
    cert.mu.push_back(mu);
    c.push_back(dm * mu);
  }

  // Commutator for a coprime pair.
  if (plan.kind == PresentationKind::CoprimePair) {
    if (plan.auts.size() != 2) throw Error(Errc::InvalidPresentation, "coprime-pair plan needs two generators");
    const Mat k = commutator_product(c[0], plan.auts[0], c[1], plan.auts[1]);
    auto lam = k.scalar_value();
    if (!lam) return obstruct(ObstructionStage::NotScalar, 0, "commutator product is not scalar");
    cert.lambda_commutator = *lam;
    std::pair<T, T> nu;
    try {
      nu = hooks.solve_commutator(*lam);
    } catch (const Error& e) {
      if (e.code() != Errc::NotInKernelIntersection) throw;
      return obstruct(ObstructionStage::NotInKernelIntersection, 0, e.what(), *lam);
    }
    cert.nu = nu;
    c[0] = c[0] * nu.first;
    c[1] = c[1] * nu.second;
  }

  cert.cocycle_generators = c;
  GroupPresentation<typename T::aut_type> pres(plan.identity, plan.auts, plan.orders);
  cert.cocycle = validate_and_close(pres, c);
  const Mat a = hooks.solve_h90(*cert.cocycle);
  if (!is_h90_solution(*cert.cocycle, a)) throw Error(Errc::PreconditionViolated, "Hilbert 90 step returned a non-solution");
  const Mat ainv = inverse(a);
  for (const auto& g : rep.gens) {
    Mat r = ainv * g * a;
    if (!entries_fixed(r, plan.auts)) throw Error(Errc::PreconditionViolated, "rewritten generator not over the fixed field");
    cert.rewritten.push_back(std::move(r));
  }
  cert.a = a;
  cert.outcome = DescentOutcome::Written;
  return cert;
}

// ---------------------------------------------------------------------------
// Finite fields

struct RewriteOptions {
  H90Strategy strategy = H90Strategy::Deterministic;
  std::uint64_t seed = 0;
  PresentationKind presentation = PresentationKind::SingleGenerator;
  unsigned split_m = 0;  // coprime-pair: order of alpha; 0 picks the smallest valid split
  unsigned max_tries = 64;
  NormMethod norm_method = NormMethod::Gcd;
};

/// Smallest m1 > 1 with m1 | m, gcd(m1, m/m1) = 1 and m/m1 > 1, or 0.
inline unsigned default_split(unsigned m) {
  for (unsigned a = 2; a < m; ++a)
    if (m % a == 0 && std::gcd(a, m / a) == 1) return a;
  return 0;
}

inline DescentPlan<FieldElem> finite_field_plan(const FieldCtx& ctx, PresentationKind kind, unsigned split_m = 0) {
  DescentPlan<FieldElem> plan;
  plan.kind = kind;
  plan.identity = AutPower::identity(ctx.m());
  if (ctx.m() == 1) return plan;
  if (kind == PresentationKind::SingleGenerator) {
    plan.auts = {ctx.frobenius()};
    plan.orders = {ctx.m()};
    return plan;
  }
  if (split_m == 0) split_m = default_split(ctx.m());
  if (split_m == 0) throw Error(Errc::NotCoprime, "[E:F] = " + std::to_string(ctx.m()) + " has no coprime split");
  const auto sp = coprime_split(ctx, split_m);
  plan.auts = {sp.alpha, sp.beta};
  plan.orders = {sp.m, sp.n};
  return plan;
}

inline DescentCertificate<FieldElem> rewrite(const Representation<FieldElem>& rep, const RewriteOptions& opt = {}) {
  const FieldCtx& ctx = *rep.ctx;
  const auto plan = finite_field_plan(ctx, opt.presentation, opt.split_m);
  FieldCtxPtr ctxp = std::const_pointer_cast<FieldCtx>(rep.ctx);

  DescentHooks<FieldElem> hooks;
  hooks.solve_norm = [&](std::size_t gen, const AutPower&, unsigned order, const FieldElem& target) {
    NormEquation eq{ctxp, order, target};
    return norm_solve(eq, opt.norm_method, derive_seed(opt.seed, "descent.norm", gen), opt.max_tries);
  };
  hooks.solve_commutator = [&](const FieldElem& lambda) {
    const auto sp = coprime_split(ctx, plan.orders[0]);
    const auto sol = commutator_solve(sp, lambda, opt.seed, opt.max_tries);
    return std::pair{sol.nu_alpha, sol.nu_beta};
  };
  hooks.solve_h90 = [&](const Cocycle<FieldElem>& c) {
    return solve_h90(c, H90Options{opt.strategy, opt.seed, opt.max_tries}).a;
  };
  return run_descent(rep, plan, hooks);
}

// ---------------------------------------------------------------------------
// Verification

struct VerifyReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Re-checks every certificate field from the representation alone.
template <class T>
VerifyReport verify_certificate(const Representation<T>& rep, const DescentCertificate<T>& cert) {
  using Mat = Matrix<T>;
  VerifyReport rep_out;
  auto fail = [&](std::string s) { rep_out.failures.push_back(std::move(s)); };
  const auto& ctx = *rep.ctx;
  const std::size_t k = cert.auts.size();
  if (cert.orders.size() != k) fail("orders and generators differ in length");

  if (!cert.written()) {
    if (!cert.obstruction) {
      fail("obstructed certificate carries no obstruction");
      return rep_out;
    }
    const auto& ob = *cert.obstruction;
    if (ob.generator >= k) {
      fail("obstruction refers to an unknown generator");
      return rep_out;
    }
    if (ob.stage == ObstructionStage::NoIntertwiner && intertwiner_space_dim(rep, cert.auts[ob.generator]) != 0)
      fail("claimed empty intertwiner space is nonzero");
    return rep_out;
  }

  if (!cert.a || cert.rewritten.size() != rep.gens.size()) {
    fail("written certificate is missing A or rewritten generators");
    return rep_out;
  }
  const Mat& a = *cert.a;
  if (!is_invertible(a)) {
    fail("A is singular");
    return rep_out;
  }
  const Mat ainv = inverse(a);
  for (std::size_t i = 0; i < rep.gens.size(); ++i) {
    if (!(ainv * rep.gens[i] * a == cert.rewritten[i])) fail("rewritten generator " + rep.names[i] + " is not A^-1 g A");
    if (!entries_fixed(cert.rewritten[i], cert.auts)) fail("rewritten generator " + rep.names[i] + " has entries outside F");
  }
  if (k == 0) return rep_out;

  if (cert.intertwiners.size() != k || cert.lambda.size() != k || cert.mu.size() != k ||
      cert.cocycle_generators.size() != k) {
    fail("per-generator data has the wrong length");
    return rep_out;
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto& al = cert.auts[i];
    const auto tw = twisted_generators(rep, al);
    if (!cert.intertwiners[i]) {
      fail("missing intertwiner");
      continue;
    }
    const Mat& dm = *cert.intertwiners[i];
    for (std::size_t g = 0; g < rep.gens.size(); ++g)
      if (!(rep.gens[g] * dm == dm * tw[g])) fail("D does not intertwine generator " + rep.names[g]);
    if (!(twisted_power_product(dm, al, cert.orders[i]) == Mat::scalar(ctx, rep.d, cert.lambda[i])))
      fail("twisted power product differs from recorded lambda");
    T nm = cert.mu[i];
    auto ak = al;
    for (unsigned j = 1; j < cert.orders[i]; ++j, ak = ak * al) nm *= cert.mu[i].apply(ak);
    if (!(nm * cert.lambda[i] == T::one(ctx))) fail("norm of mu is not lambda^-1");
    const Mat& cg = cert.cocycle_generators[i];
    if (cert.presentation == PresentationKind::SingleGenerator && !(cg == dm * cert.mu[i]))
      fail("cocycle generator is not mu D");
    if (!(twisted_power_product(cg, al, cert.orders[i]).is_identity())) fail("cocycle power relation fails");
    if (!(cg * a.apply(al) == a)) fail("C g(A) != A for a generator");
  }
  if (cert.presentation == PresentationKind::CoprimePair && k == 2) {
    if (!cert.lambda_commutator || !cert.nu) fail("coprime-pair certificate lacks commutator data");
    else {
      const Mat c0 = *cert.intertwiners[0] * cert.mu[0], c1 = *cert.intertwiners[1] * cert.mu[1];
      if (!(commutator_product(c0, cert.auts[0], c1, cert.auts[1]) == Mat::scalar(ctx, rep.d, *cert.lambda_commutator)))
        fail("commutator product differs from recorded lambda");
      if (!(cert.cocycle_generators[0] == c0 * cert.nu->first) || !(cert.cocycle_generators[1] == c1 * cert.nu->second))
        fail("cocycle generators are not nu-rescaled");
      if (!commutator_product(cert.cocycle_generators[0], cert.auts[0], cert.cocycle_generators[1], cert.auts[1])
               .is_identity())
        fail("cocycle commutator relation fails");
    }
  }
  if (cert.cocycle && !is_h90_solution(*cert.cocycle, a)) fail("A does not solve the recorded cocycle");
  return rep_out;
}

/// X invertible with rho_i X = X sigma_i for all i, if one exists.
template <class T>
std::optional<Matrix<T>> simultaneous_conjugator(const std::vector<Matrix<T>>& rho, const std::vector<Matrix<T>>& sigma,
                                                 std::uint64_t seed = 0, unsigned tries = 32) {
  auto basis = solve_sylvester_like(rho, sigma);
  for (const auto& b : basis)
    if (is_invertible(b)) return b;
  if (basis.size() < 2) return std::nullopt;
  Rng rng(seed, "descent.conjugator");
  const auto& ctx = rho[0].context();
  for (unsigned t = 0; t < tries; ++t) {
    Matrix<T> x = Matrix<T>::zeros(ctx, rho[0].rows(), rho[0].cols());
    for (const auto& b : basis) x = x + b * random_element(ctx, rng);
    if (is_invertible(x)) return x;
  }
  return std::nullopt;
}

}  // namespace galdesc
