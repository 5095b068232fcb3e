#include <gtest/gtest.h>

#include "galdesc/stats.hpp"

using namespace galdesc;

namespace {

FfMat random_invertible(const FieldCtx& ctx, std::size_t d, Rng& rng) {
  for (;;) {
    FfMat m(ctx, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = FieldElem::random(ctx, rng);
    if (is_invertible(m)) return m;
  }
}

// Brute force |GL_d(F_q)| for tiny cases by enumerating F_q^{d x d}.
nt::u64 count_gl(unsigned d, nt::u64 p) {
  auto ctx = make_field(p, 1, 1);
  nt::u64 total = 1, c = 0;
  for (unsigned i = 0; i < d * d; ++i) total *= p;
  for (nt::u64 idx = 0; idx < total; ++idx) {
    FfMat m(*ctx, d, d);
    nt::u64 r = idx;
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j, r /= p) m(i, j) = FieldElem::from_int(*ctx, static_cast<long long>(r % p));
    c += is_invertible(m);
  }
  return c;
}

mpq_class ratio(nt::u64 a, nt::u64 b) {
  mpq_class r(mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(b)));
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Fdq, ExactValues) {
  EXPECT_EQ(f_dq(1, 2), mpq_class(1, 2));
  EXPECT_EQ(f_dq(2, 3), mpq_class(16, 27));
  EXPECT_EQ(f_dq(2, 2), mpq_class(3, 8));
  EXPECT_EQ(f_dq(2, 4), mpq_class(45, 64));
  EXPECT_EQ(f_dq(2, 2), ratio(count_gl(2, 2), 16));
  EXPECT_EQ(f_dq(3, 2), ratio(count_gl(3, 2), 512));
  EXPECT_EQ(f_dq(2, 3), ratio(count_gl(2, 3), 81));
  EXPECT_THROW(f_dq(0, 2), Error);
  EXPECT_THROW(f_dq(2, 6), Error);
}

TEST(Fdq, BoundsAndMonotonicity) {
  for (nt::u64 q : {2, 3, 4, 5, 7, 8, 9, 16}) {
    for (unsigned d = 1; d <= 8; ++d) {
      EXPECT_TRUE(f_bounds_hold(d, q)) << d << " " << q;
      EXPECT_GT(f_dq(d, q), f_dq(d + 1, q));
    }
  }
  for (unsigned d = 1; d <= 6; ++d) EXPECT_LT(f_dq(d, 2), f_dq(d, 3));
}

TEST(Fdq, InfiniteProductAtTwo) {
  auto [lo, hi] = f_infinity_bracket(2, 60);
  EXPECT_LE(lo, hi);
  EXPECT_GT(lo, mpq_class(2, 7));
  EXPECT_LT(hi - lo, mpq_class(1, 1000000000));
  EXPECT_NEAR(lo.get_d(), 0.288788, 1e-6);
}

TEST(NormalDensity, MatchesExhaustiveCounts) {
  for (auto [p, n, d0] : {std::tuple{2u, 1u, 1u}, {2u, 2u, 1u}, {2u, 3u, 1u}, {2u, 4u, 1u}, {2u, 6u, 1u},
                          {3u, 2u, 1u}, {3u, 3u, 1u}, {2u, 4u, 2u}, {2u, 6u, 2u}}) {
    auto ctx = make_field(p, n, d0, std::nullopt, 9);
    const mpq_class got = normal_basis_density(ctx->q(), ctx->m());
    EXPECT_EQ(got, ratio(count_normal_elements(*ctx), ctx->size())) << p << "^" << n << "/" << d0;
  }
  EXPECT_EQ(normal_basis_density(3, 2), mpq_class(4, 9));
  EXPECT_EQ(normal_basis_density(2, 1), mpq_class(1, 2));
  EXPECT_EQ(normal_basis_density(2, 6), mpq_class(3, 8));
}

TEST(NormalDensity, MobiusSumCountsFieldGenerators) {
  EXPECT_EQ(mobius_generator_density(3, 2), mpq_class(2, 3));
  EXPECT_EQ(mobius_generator_density(2, 6), mpq_class(27, 32));
  EXPECT_EQ(mobius_generator_density(2, 1), 1);
  // Oracle: elements of GF(64) lying in no proper subfield.
  auto ctx = make_field(2, 6, 1, std::nullopt, 5);
  nt::u64 gens = 0;
  for (nt::u64 i = 0; i < ctx->size(); ++i) {
    auto x = FieldElem::from_index(*ctx, i);
    bool proper = false;
    for (unsigned k : {1u, 2u, 3u}) proper = proper || x.apply(ctx->aut(k)) == x;
    gens += !proper;
  }
  EXPECT_EQ(ratio(gens, 64), mobius_generator_density(2, 6));
  // The bound 1 - q^{-n/2} holds for n <= 5 but not at n = 6, where the sum is
  // q^6 - q^3 - q^2 + q < q^6 - q^3.
  for (nt::u64 q : {2, 3, 4, 5}) {
    for (unsigned n = 1; n <= 5; ++n) EXPECT_TRUE(density_bound_holds(mobius_generator_density(q, n), q, n));
    EXPECT_FALSE(density_bound_holds(mobius_generator_density(q, 6), q, 6));
  }
}

TEST(NormalDensity, BoundFailsForTrueDensityAtSmallQ) {
  EXPECT_FALSE(density_bound_holds(normal_basis_density(2, 3), 2, 3));
  EXPECT_TRUE(density_bound_holds(normal_basis_density(2, 2), 2, 2));
}

TEST(RegularCocycle, ScalarSuccessIsNormalDensity) {
  for (auto [p, n] : {std::pair{2u, 2u}, {2u, 3u}, {2u, 4u}, {3u, 2u}, {3u, 3u}}) {
    auto ctx = make_field(p, n, 1, std::nullopt, 3);
    auto c = regular_cocycle(*ctx);
    auto r = exhaustive_invertibility(c, CandidateKind::ScalarLambda);
    EXPECT_EQ(ratio(r.successes, r.trials), normal_basis_density(p, n));
  }
}

TEST(Invertibility, TrivialCocycleScalarOverGF4) {
  auto ctx = make_field(2, 2, 1, std::vector<nt::u64>{1, 1, 1});
  auto c = trivial_cocycle<FieldElem>(full_group(*ctx), *ctx, 1);
  auto r = exhaustive_invertibility(c, CandidateKind::ScalarLambda);
  EXPECT_EQ(r.trials, 4u);
  EXPECT_EQ(r.successes, 2u);
}

TEST(Invertibility, RandomXOnCoboundaryIsExactlyF) {
  auto ctx = make_field(2, 2, 1, std::vector<nt::u64>{1, 1, 1});
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    auto c = coboundary(full_group(*ctx), random_invertible(*ctx, 2, rng));
    auto r = exhaustive_invertibility(c, CandidateKind::RandomX, 2);
    EXPECT_EQ(r.trials, 256u);
    EXPECT_EQ(ratio(r.successes, r.trials), f_dq(2, 2));
  }
}

TEST(Invertibility, T8CounterexampleScalarNeverInvertible) {
  auto ctx = make_field(2, 2, 1, std::vector<nt::u64>{1, 1, 1});
  auto inst = t8_counterexample(ctx, 3);
  auto r = exhaustive_invertibility(inst.c, CandidateKind::ScalarLambda);
  EXPECT_EQ(r.successes, 0u);
}

TEST(Invertibility, MonteCarloWithinThreeSigma) {
  auto ctx = make_field(3, 2, 1, std::vector<nt::u64>{1, 0, 1});
  Rng rng(7);
  auto c = coboundary(full_group(*ctx), random_invertible(*ctx, 2, rng));
  auto r1 = mc_invertibility(c, CandidateKind::RandomX, 4000, 1, 1);
  auto r4 = mc_invertibility(c, CandidateKind::RandomX, 4000, 1, 4);
  EXPECT_EQ(r1.successes, r4.successes);  // per-trial seeds make threading invisible
  EXPECT_TRUE(r1.within_3sigma()) << r1.estimate << " vs " << r1.theory;
  EXPECT_NEAR(r1.theory, f_dq(2, 3).get_d(), 1e-12);
}

TEST(Invertibility, PerTrialSuccessOfNormSolvers) {
  auto ctx = make_field(3, 2, 1, std::vector<nt::u64>{1, 0, 1});
  int hits = 0;
  for (nt::u64 i = 0; i < ctx->size(); ++i)
    hits += qm1_root_attempt(FieldElem::one(*ctx), FieldElem::from_index(*ctx, i)).has_value() ? 1 : 0;
  EXPECT_EQ(hits, 6);  // lambda = 1: success iff Tr(nu) != 0
  auto r = mc_qm1_success(FieldElem::one(*ctx), 40000, 1, 4);
  EXPECT_TRUE(r.within_3sigma()) << r.estimate;
  NormEquation eq{ctx, 2, FieldElem::from_int(*ctx, 2)};
  auto g = mc_norm_gcd_success(eq, 3000, 3);
  EXPECT_EQ(g.d, 2u);
  EXPECT_TRUE(g.within_3sigma()) << g.estimate;
}

TEST(Csv, RowFormat) {
  auto r = make_report("random-X", 10, 4, 0.375);
  r.d = 2;
  r.q = 2;
  r.n = 2;
  EXPECT_EQ(csv_header(), "kind,d,q,n,trials,successes,estimate,theory,sigma3");
  EXPECT_EQ(csv_row(r), "random-X,2,2,2,10,4,0.400000,0.375000,0.459279");
}
