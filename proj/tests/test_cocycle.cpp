#include <gtest/gtest.h>

#include <set>

#include "galdesc/cocycle.hpp"

using namespace galdesc;
using Mat = FfMat;

namespace {

FieldCtxPtr gf4() { return make_field(2, 2, 1, std::vector<nt::u64>{1, 1, 1}); }
FieldCtxPtr gf9() { return make_field(3, 2, 1, std::vector<nt::u64>{1, 0, 1}); }

Mat random_mat(const FieldCtx& ctx, std::size_t d, Rng& rng) {
  Mat m(ctx, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = FieldElem::random(ctx, rng);
  return m;
}
Mat random_gl(const FieldCtx& ctx, std::size_t d, Rng& rng) {
  for (;;) {
    Mat m = random_mat(ctx, d, rng);
    if (is_invertible(m)) return m;
  }
}
bool entries_fixed(const Mat& m) {
  for (const auto& x : m.data())
    if (!x.in_base_field()) return false;
  return true;
}
Mat column_of(const FieldCtx& ctx, std::size_t d, nt::u64 idx) {
  Mat v(ctx, d, 1);
  for (std::size_t k = 0; k < d; ++k) {
    v(k, 0) = FieldElem::from_index(ctx, idx % ctx.size());
    idx /= ctx.size();
  }
  return v;
}
nt::u64 column_index(const Mat& v) {
  nt::u64 idx = 0;
  for (std::size_t k = v.rows(); k-- > 0;) idx = idx * v.context().size() + v(k, 0).index();
  return idx;
}

}  // namespace

TEST(Presentation, ValidatesOrders) {
  auto ctx = make_field(2, 6, 1, std::nullopt, 1);
  FfPresentation g(ctx->aut(0), {ctx->aut(3), ctx->aut(2)}, {2, 3});
  EXPECT_EQ(g.size(), 6u);
  EXPECT_THROW(FfPresentation(ctx->aut(0), {ctx->aut(1)}, {3}), Error);
  EXPECT_THROW(FfPresentation(ctx->aut(0), {ctx->aut(2), ctx->aut(4)}, {3, 3}), Error);
}

TEST(ValidateAndClose, TrivialAndCoboundary) {
  auto ctx = gf4();
  auto pres = full_group(*ctx);
  auto c = validate_and_close(pres, std::vector<Mat>{Mat::identity(*ctx, 2)});
  for (auto& m : c.table()) EXPECT_TRUE(m.is_identity());
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    Mat a = random_gl(*ctx, 2, rng);
    auto cb = coboundary(pres, a);
    auto closed = validate_and_close(pres, cb.generator_values());
    EXPECT_EQ(closed.table(), cb.table());
  }
}

TEST(ValidateAndClose, ScalarExamples) {
  auto ctx4 = gf4();
  const auto w = FieldElem::basis(*ctx4, 1);
  EXPECT_NO_THROW(validate_and_close(full_group(*ctx4), std::vector<Mat>{Mat::scalar(*ctx4, 1, w)}));
  EXPECT_NO_THROW(validate_and_close(full_group(*ctx4), std::vector<Mat>{Mat::scalar(*ctx4, 1, w + FieldElem::one(*ctx4))}));
  auto ctx = gf9();
  int generators = 0;
  for (nt::u64 i = 1; i < 9; ++i) {
    auto g = FieldElem::from_index(*ctx, i);
    if (multiplicative_order(g) != 8) continue;
    ++generators;
    try {
      validate_and_close(full_group(*ctx), std::vector<Mat>{Mat::scalar(*ctx, 1, g)});
      FAIL();
    } catch (const RelationDefectError<FieldElem>& e) {
      EXPECT_EQ(e.code(), Errc::RelationDefect);
      EXPECT_EQ(e.defect()(0, 0), g.pow(4));
      EXPECT_EQ(e.defect()(0, 0), FieldElem::from_int(*ctx, -1));
    }
  }
  EXPECT_EQ(generators, 4);
}

TEST(ValidateAndClose, CommutatorDefectDetected) {
  auto ctx = make_field(2, 6, 1, std::nullopt, 2);
  FfPresentation pres(ctx->aut(0), {ctx->aut(3), ctx->aut(2)}, {2, 3});
  // Scalars of norm one for each generator whose commutator defect is not 1.
  Rng rng(3);
  bool saw_defect = false;
  for (int t = 0; t < 200 && !saw_defect; ++t) {
    auto x = FieldElem::random_nonzero(*ctx, rng), y = FieldElem::random_nonzero(*ctx, rng);
    auto nx = x * x.apply(ctx->aut(3)).inverse();  // norm one for <phi^3>
    auto ny = y * y.apply(ctx->aut(2)).inverse();  // norm one for <phi^2>
    try {
      validate_and_close(pres, std::vector<Mat>{Mat::scalar(*ctx, 1, nx), Mat::scalar(*ctx, 1, ny)});
    } catch (const RelationDefectError<FieldElem>& e) {
      saw_defect = e.relation().find(',') != std::string::npos;
    }
  }
  EXPECT_TRUE(saw_defect);
}

TEST(PiC, TrivialCocycleIsEntrywiseTrace) {
  auto ctx = make_field(2, 3, 1, std::nullopt, 1);
  auto pres = full_group(*ctx);
  auto c = trivial_cocycle<FieldElem>(pres, *ctx, 2);
  Rng rng(2);
  Mat x = random_mat(*ctx, 2, rng);
  Mat p = pi_c(c, x);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(p(i, j), trace(x(i, j)));
}

TEST(PiC, ProjectionIdentities) {
  Rng rng(4);
  for (auto ctx : {gf4(), gf9(), make_field(2, 3, 1, std::nullopt, 7), make_field(2, 4, 1, std::nullopt, 7)}) {
    auto pres = full_group(*ctx);
    const auto G = FieldElem::from_int(*ctx, static_cast<long long>(pres.size()));
    for (int t = 0; t < 30; ++t) {
      const std::size_t d = 1 + t % 3;
      Mat a = random_gl(*ctx, d, rng);
      auto c = coboundary(pres, a);
      Mat x = random_mat(*ctx, d, rng);
      Mat px = pi_c(c, x);
      EXPECT_EQ(pi_c(c, px), px * G);
      EXPECT_EQ(px, a * pi_c(trivial_cocycle<FieldElem>(pres, *ctx, d), inverse(a) * x));
      const FieldElem lam = FieldElem::random(*ctx, rng);
      EXPECT_EQ(pi_c(c, a * lam), a * trace(lam));
      EXPECT_EQ(pi_c(c, a), a * G);
      for (const auto& al : pres.elements()) {
        EXPECT_TRUE(gamma(c, al, px).is_zero());
        EXPECT_TRUE(pi_c(c, gamma(c, al, x)).is_zero());
        // Fixed-point property.
        EXPECT_EQ(c(al) * px.apply(al), px);
      }
      EXPECT_TRUE(gamma(c, pres.identity(), x).is_zero());
    }
  }
}

TEST(PiC, SmallPiIdempotentAndUndefinedInModularCase) {
  auto ctx = gf9();
  auto pres = full_group(*ctx);
  Rng rng(5);
  Mat a = random_gl(*ctx, 2, rng);
  auto c = coboundary(pres, a);
  for (int t = 0; t < 20; ++t) {
    Mat x = random_mat(*ctx, 2, rng);
    EXPECT_EQ(pi_small(c, pi_small(c, x)), pi_small(c, x));
  }
  auto c4 = coboundary(full_group(*gf4()), Mat::identity(*gf4(), 1));
  try {
    pi_small(c4, Mat::identity(*gf4(), 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PCharDividesG);
  }
}

TEST(PiC, ImageKernelDecompositionAndFixedProduct) {
  // GF(9)/GF(3), d = 2: E^{2x2} = im(pi) + ker(pi) with trivial intersection,
  // and pi(X) = XY with Y in GL_2(F) forces pi(X) = X.
  auto ctx = gf9();
  auto pres = full_group(*ctx);
  Rng rng(6);
  auto c = coboundary(pres, random_gl(*ctx, 2, rng));
  const auto fels = base_field_elements(*ctx);
  std::vector<Mat> gl2f;
  for (auto& a : fels)
    for (auto& b : fels)
      for (auto& cc : fels)
        for (auto& dd : fels) {
          Mat y = Mat::from_rows(*ctx, {{a, b}, {cc, dd}});
          if (is_invertible(y)) gl2f.push_back(y);
        }
  ASSERT_EQ(gl2f.size(), 48u);
  std::size_t im = 0, ker = 0, fixed_product = 0;
  for (nt::u64 idx = 0; idx < 6561; ++idx) {
    Mat x(*ctx, 2, 2);
    nt::u64 t = idx;
    for (std::size_t k = 0; k < 4; ++k) {
      x(k / 2, k % 2) = FieldElem::from_index(*ctx, t % 9);
      t /= 9;
    }
    Mat px = pi_small(c, x);
    im += (px == x);
    ker += px.is_zero();
    for (auto& y : gl2f)
      if (px == x * y) {
        ++fixed_product;
        EXPECT_EQ(px, x);
        break;
      }
  }
  EXPECT_EQ(im * ker, 6561u);
  EXPECT_EQ(im, 81u);  // |F^{2x2}|
  EXPECT_GE(fixed_product, im);
}

TEST(PiHat, ColumnConsistencyAndTrivialCase) {
  auto ctx = gf4();
  auto pres = full_group(*ctx);
  Rng rng(7);
  auto c = coboundary(pres, random_gl(*ctx, 2, rng));
  Mat e11 = Mat::zeros(*ctx, 2, 2);
  e11(0, 0) = FieldElem::one(*ctx);
  for (int t = 0; t < 30; ++t) {
    Mat x = random_mat(*ctx, 2, rng);
    EXPECT_EQ(pi_hat(c, x.col(0)), pi_c(c, x * e11).col(0));
  }
  auto triv = trivial_cocycle<FieldElem>(pres, *ctx, 2);
  Mat v = random_mat(*ctx, 2, rng).col(1);
  Mat pv = pi_hat(triv, v);
  EXPECT_EQ(pv(0, 0), trace(v(0, 0)));
  EXPECT_EQ(pv(1, 0), trace(v(1, 0)));
}

TEST(PiHat, ImageEqualsFixedColumnsEqualsFColumnSpan) {
  for (auto ctx : {gf4(), gf9()}) {
    auto pres = full_group(*ctx);
    Rng rng(8);
    const std::size_t d = 2;
    const nt::u64 total = ctx->size() * ctx->size();
    for (int t = 0; t < 5; ++t) {
      Mat a = random_gl(*ctx, d, rng);
      auto c = coboundary(pres, a);
      std::set<nt::u64> image, fixed, span, kernel, gimage;
      for (nt::u64 i = 0; i < total; ++i) {
        Mat x = column_of(*ctx, d, i);
        image.insert(column_index(pi_hat(c, x)));
        if (gamma_hat(c, ctx->frobenius(), x).is_zero()) fixed.insert(i);
        if (pi_hat(c, x).is_zero()) kernel.insert(i);
        gimage.insert(column_index(gamma_hat(c, ctx->frobenius(), x)));
      }
      for (auto& f0 : base_field_elements(*ctx))
        for (auto& f1 : base_field_elements(*ctx)) span.insert(column_index(a * Mat::column(*ctx, {f0, f1})));
      EXPECT_EQ(image, fixed);
      EXPECT_EQ(image, span);
      if (ctx->p() != 2) {  // char does not divide |G|
        EXPECT_EQ(kernel, gimage);
      }
      // E-span of im(gamma_hat) is everything.
      Mat gm(*ctx, d, 0 + gimage.size());
      std::size_t col = 0;
      for (auto idx : gimage) gm.set_block(0, col++, column_of(*ctx, d, idx));
      EXPECT_EQ(rank(gm), d);
      // Nonzero kernel vectors are moved out of the kernel by some scalar.
      for (auto idx : kernel) {
        if (idx == 0) continue;
        Mat x = column_of(*ctx, d, idx);
        bool found = false;
        for (nt::u64 l = 0; l < ctx->size() && !found; ++l)
          found = !pi_hat(c, x * FieldElem::from_index(*ctx, l)).is_zero();
        EXPECT_TRUE(found);
      }
    }
  }
}

TEST(FreeModule, CandidateBasisHasFullRank) {
  // The matrices E_{i1} lambda_k E_{1j} c, with lambda_k an F-basis of E and c a
  // GF(p)-basis of F, span E^{dxd} over GF(p).
  for (auto ctx : {gf4(), make_field(2, 4, 2, std::nullopt, 1), make_field(3, 2, 1, std::nullopt, 2)}) {
    const std::size_t d = 2;
    std::optional<FieldElem> nb;
    for (nt::u64 i = 0; i < ctx->size() && !nb; ++i)
      if (is_normal_element(FieldElem::from_index(*ctx, i))) nb = FieldElem::from_index(*ctx, i);
    ASSERT_TRUE(nb);
    const auto fb = base_field_basis(*ctx);
    std::vector<nt::u64> rows;
    std::size_t count = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (unsigned k = 0; k < ctx->m(); ++k)
        for (std::size_t j = 0; j < d; ++j)
          for (auto& c : fb) {
            Mat eij = Mat::zeros(*ctx, d, d);
            eij(i, j) = nb->apply(ctx->aut(k)) * c;
            for (auto& x : eij.data())
              for (auto v : x.coeffs()) rows.push_back(v);
            ++count;
          }
    const std::size_t cols = d * d * ctx->n();
    EXPECT_EQ(count, cols);
    EXPECT_EQ(detail::fp_echelon(rows, count, cols, ctx->p()).rank, cols);
  }
}

TEST(Transport, Identities) {
  auto ctx = make_field(2, 3, 1, std::nullopt, 3);
  auto pres = full_group(*ctx);
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    Mat a = random_gl(*ctx, 2, rng), y = random_gl(*ctx, 2, rng), x = random_mat(*ctx, 2, rng);
    auto c = coboundary(pres, a);
    EXPECT_EQ(transport(c, Mat::identity(*ctx, 2)).table(), c.table());
    auto dd = transport(c, y);
    EXPECT_EQ(pi_c(dd, x), inverse(y) * pi_c(c, y * x));
    auto tr = transport(trivial_cocycle<FieldElem>(pres, *ctx, 2), y);
    for (std::size_t i = 0; i < pres.size(); ++i) EXPECT_EQ(tr.at(i), inverse(y) * y.apply(pres.element(i)));
  }
  EXPECT_THROW(transport(coboundary(pres, Mat::identity(*ctx, 2)), Mat::zeros(*ctx, 2, 2)), Error);
}

TEST(SolveH90, TrivialCocycleGivesIdentity) {
  auto ctx = gf9();
  auto c = trivial_cocycle<FieldElem>(full_group(*ctx), *ctx, 3);
  EXPECT_TRUE(solve_h90(c).a.is_identity());
  EXPECT_TRUE(solve_h90(c, {H90Strategy::Scalar, 0, 64}).a.is_identity());
}

TEST(SolveH90, AllStrategiesCertifiedAndInFColumnSpan) {
  Rng rng(10);
  for (auto ctx : {gf4(), gf9(), make_field(2, 3, 1, std::nullopt, 1), make_field(2, 6, 1, std::nullopt, 1)}) {
    auto pres = full_group(*ctx);
    for (int t = 0; t < 20; ++t) {
      const std::size_t d = 1 + t % 3;
      Mat a0 = random_gl(*ctx, d, rng);
      auto c = coboundary(pres, a0);
      for (auto s : {H90Strategy::Deterministic, H90Strategy::Scalar, H90Strategy::Structured, H90Strategy::Random}) {
        H90Result<FieldElem> r;
        try {
          r = solve_h90(c, {s, static_cast<std::uint64_t>(t), 64});
        } catch (const Error& e) {
          EXPECT_NE(s, H90Strategy::Deterministic);
          EXPECT_EQ(e.code(), Errc::ExhaustedTries);
          continue;
        }
        EXPECT_TRUE(is_h90_solution(c, r.a));
        EXPECT_TRUE(entries_fixed(inverse(a0) * r.a));
      }
    }
  }
}

TEST(SolveH90, SeedDeterminism) {
  auto ctx = make_field(2, 4, 1, std::nullopt, 1);
  Rng rng(11);
  auto c = coboundary(full_group(*ctx), random_gl(*ctx, 3, rng));
  EXPECT_EQ(solve_h90(c, {H90Strategy::Random, 42, 64}).a, solve_h90(c, {H90Strategy::Random, 42, 64}).a);
}

TEST(Additive, ExamplesAndRejection) {
  auto ctx = gf4();
  auto pres = full_group(*ctx);
  const auto one = FieldElem::one(*ctx), w = FieldElem::basis(*ctx, 1);
  EXPECT_TRUE(solve_h90_additive(pres, std::vector<Mat>{Mat::zeros(*ctx, 1, 2)}).is_zero());
  Mat w1 = solve_h90_additive(pres, std::vector<Mat>{Mat::scalar(*ctx, 1, one)});
  EXPECT_TRUE((w1 - w1.apply(ctx->frobenius()))(0, 0).is_one());
  EXPECT_TRUE(w1(0, 0) == w || w1(0, 0) == w + one);
  try {
    solve_h90_additive(pres, std::vector<Mat>{Mat::scalar(*ctx, 1, w)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAdditiveCocycle);
  }
  auto ctx8 = make_field(2, 3, 1, std::nullopt, 5);
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    Mat v(*ctx8, 1, 3);
    for (std::size_t j = 0; j < 3; ++j) v(0, j) = FieldElem::random(*ctx8, rng);
    Mat z = v - v.apply(ctx8->frobenius());
    Mat wv = solve_h90_additive(full_group(*ctx8), std::vector<Mat>{z});
    EXPECT_TRUE(entries_fixed(wv - v));
  }
}

TEST(ScalarBoundary, CounterexampleGF4DimensionThree) {
  auto ctx = gf4();
  auto inst = t8_counterexample(ctx, 3);
  for (nt::u64 i = 0; i < 4; ++i)
    EXPECT_FALSE(is_invertible(pi_c(inst.c, Mat::scalar(*ctx, 3, FieldElem::from_index(*ctx, i)))));
  try {
    solve_h90(inst.c, {H90Strategy::Scalar, 1, 64});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ExhaustedTries);
  }
  EXPECT_TRUE(is_h90_solution(inst.c, solve_h90(inst.c).a));
}

TEST(ScalarBoundary, Preconditions) {
  try {
    t8_counterexample(gf4(), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PreconditionViolated);
  }
}

TEST(ScalarBoundary, GF9KernelsCoverWithFourHyperplanes) {
  auto ctx = gf9();
  auto inst = t8_counterexample(ctx, 4);
  ASSERT_EQ(inst.inverse_diagonal.size(), 4u);
  for (nt::u64 i = 0; i < 9; ++i) {
    auto lam = FieldElem::from_index(*ctx, i);
    bool covered = false;
    for (auto& b : inst.inverse_diagonal) covered |= trace(b * lam).is_zero();
    EXPECT_TRUE(covered);
    EXPECT_FALSE(is_invertible(pi_c(inst.c, Mat::scalar(*ctx, 4, lam))));
  }
}

TEST(CosetPi, MatchesDirectSumAndCountsApplications) {
  Rng rng(13);
  {
    auto ctx = make_field(2, 4, 1, std::nullopt, 2);
    auto pres = full_group(*ctx);
    auto c = coboundary(pres, random_gl(*ctx, 2, rng));
    Mat x = random_mat(*ctx, 2, rng);
    EXPECT_EQ(coset_pi(c, {{ctx->aut(1)}, {}}, x), pi_c(c, x));
    OpCounter cnt;
    EXPECT_EQ(coset_pi(c, {{ctx->aut(1)}, {ctx->aut(2)}, {}}, x, &cnt), pi_c(c, x));
    EXPECT_EQ(cnt.applications, 4u);
  }
  {
    auto ctx = make_field(2, 6, 1, std::nullopt, 2);
    auto pres = full_group(*ctx);
    auto c = coboundary(pres, random_gl(*ctx, 2, rng));
    Mat x = random_mat(*ctx, 2, rng);
    OpCounter cnt;
    EXPECT_EQ(coset_pi(c, {{ctx->aut(1)}, {ctx->aut(2)}, {}}, x, &cnt), pi_c(c, x));
    EXPECT_EQ(cnt.applications, 5u);
    EXPECT_LT(cnt.applications, 6u);
    try {
      coset_pi(c, {{ctx->aut(2)}, {}}, x);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::InvalidChain);
    }
    EXPECT_THROW(coset_pi(c, {{ctx->aut(1)}, {ctx->aut(3)}, {ctx->aut(2)}, {}}, x), Error);
  }
}
