#include <random>

#include "gtest/gtest.h"
#include "kakeya/errors.hpp"
#include "kakeya/lab.hpp"
#include "kakeya/tower.hpp"
#include "test_util.hpp"

namespace kakeya {
namespace {

using testing::random_multipoly;
using testing::random_unipoly;

const std::vector<std::string> kTv{"t1", "t2"};

UniPoly uni(const FieldRef& f, const char* text) { return parse_unipoly(text, *f); }

TEST(ImageReport, ZeroMap) {
  auto f = tower_field(5, 1);
  const auto rep = image_report(parse_map(f, "0", "0"), f);
  EXPECT_EQ(rep.image_size, 101u);
  EXPECT_EQ(rep.domain_size, 125u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
}

TEST(ImageReport, SwappedIdentity) {
  auto f = tower_field(5, 1);
  const auto rep = image_report(parse_map(f, "t2", "t1"), f);
  EXPECT_EQ(rep.image_size, 85u);
  EXPECT_GE(static_cast<double>(rep.image_size), 62.5);
  std::uint64_t conserved = 0, image = 0;
  for (const auto& [m, n] : rep.histogram) {
    conserved += m * n;
    image += n;
  }
  EXPECT_EQ(conserved, 125u);
  EXPECT_EQ(image, rep.image_size);
  EXPECT_LE(rep.cs_bound, rep.image_size);
}

TEST(ImageReport, FiberCountAtLeastDomainWithEqualityIffInjective) {
  auto f = tower_field(5, 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto map = make_map(f, random_multipoly(*f, kTv, 3, rng), random_multipoly(*f, kTv, 3, rng));
    const auto rep = image_report(map, f);
    EXPECT_GE(rep.fiber_count, rep.domain_size);
    EXPECT_EQ(rep.fiber_count == rep.domain_size, rep.image_size == rep.domain_size);
  }
}

TEST(ImageReport, SaturatedCellsKeepCountsExact) {
  // At s = 0 the zero map sends all q^2 points to one cell.
  auto f = tower_field(17, 1);
  const auto map = parse_map(f, "0", "0");
  const auto rep = image_report(map, f);
  EXPECT_GE(rep.saturated_cells, 1u);
  EXPECT_EQ(rep.histogram.at(289), 1u);
  EXPECT_EQ(histogram_fiber_identity(map, f).point_count, rep.fiber_count);
}

TEST(ImageReport, ThreadCountDoesNotChangeResults) {
  auto f = tower_field(3, 2);
  const auto map = parse_map(f, "t1^2*t2 + g^3*t2", "t1^3 + t2");
  const auto a = image_report(map, f, {std::uint64_t{1} << 30, 1});
  const auto b = image_report(map, f, {std::uint64_t{1} << 30, 4});
  EXPECT_EQ(a.histogram, b.histogram);
  EXPECT_EQ(a.slice_images, b.slice_images);
}

TEST(ImageReport, BudgetAndFieldErrors) {
  auto f = tower_field(5, 1);
  EXPECT_THROW(image_report(parse_map(f, "t1", "t2"), f, {100, 1}), BudgetExceeded);
  EXPECT_THROW(image_report(parse_map(f, "t1", "t2"), tower_field(7, 1)), InvalidArgument);
  EXPECT_THROW(parse_map(f, "x", "t2"), InvalidArgument);
}

TEST(ImageReport, ShiftOfMKeepsImageSize) {
  auto f = tower_field(7, 1);
  std::mt19937_64 rng(8);
  const MultiRing M(*f);
  for (int i = 0; i < 5; ++i) {
    const MultiPoly l = random_multipoly(*f, kTv, 3, rng), m = random_multipoly(*f, kTv, 3, rng);
    const auto c = MultiPoly::constant(kTv, testing::random_nonzero(*f, rng));
    EXPECT_EQ(image_report(make_map(f, l, m), f).image_size,
              image_report(make_map(f, l, M.add(m, c)), f).image_size);
  }
}

TEST(ImageReport, ContainsEveryLine) {
  auto f = tower_field(5, 1);
  const auto map = parse_map(f, "t1^2*t2 + 3", "t2^3 + t1");
  const auto bits = image_bitmap(map, f);
  const MultiRing M(*f);
  const std::uint32_t q = 5;
  for (std::uint32_t t1 = 0; t1 < q; ++t1) {
    for (std::uint32_t t2 = 0; t2 < q; ++t2) {
      const Elem pt[2] = {Elem{t1}, Elem{t2}};
      const Elem l = M.eval(map.l, pt), m = M.eval(map.m, pt);
      for (std::uint32_t s = 0; s < q; ++s) {
        const Elem x = f->add(f->mul(Elem{s}, Elem{t1}), l), y = f->add(f->mul(Elem{s}, Elem{t2}), m);
        EXPECT_TRUE(bits[(s * q + x.index) * q + y.index]);
      }
    }
  }
}

TEST(ImageReport, EmbeddedImageIsASubsetOverTheExtension) {
  for (auto [p, k] : {std::pair{3u, 1u}, {2u, 2u}, {3u, 2u}}) {
    auto base = tower_field(p, k);
    auto ext = tower_extension(*base, 2);
    auto emb = tower_embedding(base, ext);
    std::mt19937_64 rng(p * 10 + k);
    const auto map = make_map(base, random_multipoly(*base, kTv, 3, rng), random_multipoly(*base, kTv, 3, rng));
    const auto small = image_bitmap(map, base);
    const auto big = image_bitmap(map, ext);
    const std::uint64_t q = base->q(), Q = ext->q();
    for (std::uint64_t i = 0; i < small.size(); ++i) {
      if (!small[i]) continue;
      const Elem s = (*emb)(Elem{static_cast<std::uint32_t>(i / (q * q))});
      const Elem x = (*emb)(Elem{static_cast<std::uint32_t>(i / q % q)});
      const Elem y = (*emb)(Elem{static_cast<std::uint32_t>(i % q)});
      EXPECT_TRUE(big[(s.index * Q + x.index) * Q + y.index]);
    }
  }
}

TEST(Classify, Shapes) {
  auto f = tower_field(5, 1);
  EXPECT_EQ(classify(parse_map(f, "t1^3", "t2^3")).shape, MapShape::kSeparated);
  EXPECT_EQ(classify(parse_map(f, "t2^3", "t1^3")).shape, MapShape::kMixed);
  EXPECT_EQ(classify(parse_map(f, "t2^3", "2*t1 + 1")).shape, MapShape::kDegM1);
  EXPECT_EQ(classify(parse_map(f, "0", "0")).shape, MapShape::kDegM1);
  EXPECT_EQ(classify(parse_map(f, "t1*t2", "t2")).shape, MapShape::kGeneral);
  EXPECT_EQ(classify(parse_map(f, "t1^3", "t2^2")).shape, MapShape::kSeparated);
  const auto t = classify(parse_map(f, "t2^5 + 3*t2", "t1^5 + t1^2"));
  EXPECT_EQ(t.l_linearized, std::optional<bool>(true));
  EXPECT_EQ(t.m_linearized, std::optional<bool>(false));
  EXPECT_EQ(t.l_linear_coeff, Elem{3});
  EXPECT_EQ(to_string(MapShape::kDegM1), "degM1");
}

TEST(ImageReport2d, Squares) {
  auto f = tower_field(5, 1);
  const auto rep = image_report_2d(f, uni(f, "x^2"), f);
  EXPECT_EQ(rep.image_size, 15u);
  EXPECT_EQ(rep.fiber_count, 45u);
  EXPECT_EQ(rep.cs_bound, 14u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
}

TEST(ImageReport2d, ZeroAndLinear) {
  auto f5 = tower_field(5, 1);
  const auto zero = image_report_2d(f5, UniPoly(), f5);
  EXPECT_EQ(zero.image_size, 21u);
  EXPECT_EQ(zero.fiber_count, 45u);
  auto f7 = tower_field(7, 1);
  EXPECT_EQ(image_report_2d(f7, uni(f7, "x"), f7).fiber_count, 91u);
}

TEST(ImageReport2d, BoundsOnRandomPolynomials) {
  std::mt19937_64 rng(21);
  for (auto [p, k] : {std::pair{3u, 2u}, {11u, 1u}, {2u, 4u}}) {
    auto f = tower_field(p, k);
    for (int i = 0; i < 10; ++i) {
      const auto rep = image_report_2d(f, random_unipoly(*f, 1 + static_cast<int>(rng() % 8), rng), f);
      EXPECT_TRUE(all_hard_checks_pass(rep.checks));
    }
  }
}

TEST(ImageReport2d, OverExtension) {
  auto base = tower_field(5, 1);
  auto ext = tower_extension(*base, 2);
  const auto rep = image_report_2d(base, uni(base, "x^3 + 2*x"), ext);
  EXPECT_EQ(rep.q, 25u);
  EXPECT_EQ(rep.fiber_count, 2u * 625u - 25u);
}

TEST(ConjectureCheck, ZeroMapHasNoDeficit) {
  auto f = tower_field(3, 1);
  const auto sweep =
      conjecture_check(parse_map(f, "0", "0"), {f, tower_field(3, 2), tower_field(3, 3)});
  ASSERT_EQ(sweep.rows.size(), 3u);
  for (const auto& r : sweep.rows) EXPECT_EQ(r.c_of_q, 0.0);
  EXPECT_TRUE(sweep.bounded);
  EXPECT_GT(sweep.rows[2].ratio, sweep.rows[0].ratio);
  for (const auto& c : sweep.checks) EXPECT_TRUE(c.evidence_only);
  EXPECT_THROW(conjecture_check(parse_map(f, "0", "0"), {}), InvalidArgument);
}

TEST(Separated, NonLinearizedCubes) {
  auto f = tower_field(7, 1);
  const auto rep = separated_case_analysis(f, uni(f, "x^3"), uni(f, "x^3"), f);
  EXPECT_EQ(rep.branch, "non-linearized");
  EXPECT_EQ(rep.l.bad_s.size(), 1u);
  EXPECT_EQ(rep.m.bad_s.size(), 1u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
  EXPECT_EQ(rep.image_size, image_report(parse_map(f, "t1^3", "t2^3"), f).image_size);
}

TEST(Separated, BothLinearized) {
  auto f = tower_field(5, 2);
  const auto rep = separated_case_analysis(f, uni(f, "x^5"), uni(f, "x^5"), f);
  EXPECT_EQ(rep.branch, "both-linearized");
  EXPECT_GE(rep.good_s, 13u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
}

TEST(Separated, IdentityComponents) {
  auto f = tower_field(5, 1);
  const auto rep = separated_case_analysis(f, uni(f, "x"), uni(f, "x"), f);
  EXPECT_EQ(rep.good_s, 4u);
  EXPECT_EQ(rep.l.bad_s, std::vector<Elem>{Elem{4}});
  EXPECT_EQ(rep.image_size, image_report(parse_map(f, "t1", "t2"), f).image_size);
}

TEST(Separated, CharacteristicGuards) {
  auto f3 = tower_field(3, 2);
  EXPECT_THROW(separated_case_analysis(f3, uni(f3, "x^3"), uni(f3, "x"), f3), HypothesisRefused);
  EXPECT_NO_THROW(separated_case_analysis(f3, uni(f3, "x^3"), uni(f3, "x^2"), f3));
  auto f2 = tower_field(2, 3);
  EXPECT_THROW(separated_case_analysis(f2, uni(f2, "x^2"), uni(f2, "x^3"), f2), HypothesisRefused);
}

TEST(Mixed, SwappedIdentity) {
  auto f = tower_field(5, 1);
  const auto rep = mixed_case_analysis(f, uni(f, "x"), uni(f, "x"), f);
  EXPECT_EQ(rep.branch, "linearized");
  EXPECT_EQ(rep.t, std::optional<std::uint32_t>(2));
  EXPECT_EQ(rep.image_size, 85u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
}

TEST(Mixed, CubesTakeTheIrreducibleBranch) {
  auto f = tower_field(5, 1);
  const auto rep = mixed_case_analysis(f, uni(f, "x^3"), uni(f, "x^3"), f);
  EXPECT_EQ(rep.branch, "schinzel");
  EXPECT_EQ(rep.t, std::optional<std::uint32_t>(1));
  EXPECT_EQ(rep.image_size, image_report(parse_map(f, "t2^3", "t1^3"), f).image_size);
}

TEST(Mixed, RoutesToDegreeOneBranch) {
  auto f = tower_field(5, 1);
  const auto rep = mixed_case_analysis(f, UniPoly(), uni(f, "x"), f);
  EXPECT_EQ(rep.branch, "degM1");
  ASSERT_TRUE(rep.degm1);
  EXPECT_EQ(rep.degm1->a, Field::one());
}

TEST(Mixed, TPolynomialMatchesSubstitution) {
  // For linearized L, M with zero constant term the T polynomial is
  // (t2 - t2p) L(t2 - t2p) - (t1 - t1p) M(t1 - t1p).
  auto f = tower_field(5, 1);
  const UniPoly l = uni(f, "x^5 + 2*x"), m = uni(f, "3*x");
  const MultiPoly t = mixed_t_polynomial(*f, l, m);
  const std::vector<std::string> vars{"t1", "t2", "t1p", "t2p"};
  const MultiPoly want = parse_poly("(t2 - t2p)*((t2 - t2p)^5 + 2*(t2 - t2p)) - 3*(t1 - t1p)^2", *f, vars);
  EXPECT_EQ(t, want);
}

TEST(DegM1, ZeroSlope) {
  auto f = tower_field(5, 1);
  const auto rep = degm1_analysis(f, uni(f, "x^2"), Field::zero(), f);
  EXPECT_EQ(rep.branch, "a=0");
  EXPECT_GE(rep.image_size, 100u);
  EXPECT_TRUE(all_hard_checks_pass(rep.checks));
}

TEST(DegM1, NonSquareDifferenceQuotient) {
  auto f = tower_field(7, 1);
  const auto rep = degm1_analysis(f, uni(f, "x^2"), Field::one(), f);
  EXPECT_EQ(rep.difference_quotient_is_square, std::optional<bool>(false));
  EXPECT_EQ(rep.components_per_gamma, std::optional<int>(2));
  EXPECT_EQ(rep.image_size, image_report(parse_map(f, "t2^2", "t1"), f).image_size);
}

TEST(DegM1, SquareAndDegenerate) {
  // x^3 over F_3 has difference quotient (x - y)^2.
  auto f3 = tower_field(3, 1);
  const auto sq = degm1_analysis(f3, uni(f3, "x^3"), Field::one(), f3);
  EXPECT_EQ(sq.difference_quotient_is_square, std::optional<bool>(true));
  EXPECT_EQ(sq.components_per_gamma, std::optional<int>(3));
  auto f = tower_field(7, 1);
  const auto deg = degm1_analysis(f, UniPoly(), Field::one(), f);
  EXPECT_EQ(deg.branch, "degenerate");
  EXPECT_FALSE(deg.components_per_gamma);
}

TEST(FiberIdentity, Examples) {
  auto f5 = tower_field(5, 1);
  const auto a = histogram_fiber_identity(parse_map(f5, "t2", "t1"), f5);
  EXPECT_EQ(a.histogram_sum, a.point_count);
  auto f3 = tower_field(3, 1);
  const auto b = histogram_fiber_identity(parse_map(f3, "0", "0"), f3);
  EXPECT_EQ(b.histogram_sum, 2u * 9u + 81u);
}

TEST(FiberIdentity, InjectiveExample) {
  // Each slice is the linear map [[s, 1], [2, s]] with determinant s^2 - 2,
  // never zero since 2 is not a square mod 5.
  auto f = tower_field(5, 1);
  const auto map = parse_map(f, "t2", "2*t1");
  const auto id = histogram_fiber_identity(map, f);
  EXPECT_EQ(id.histogram_sum, 125u);
  EXPECT_EQ(image_report(map, f).image_size, 125u);
}

TEST(FiberIdentity, RandomMapsOverSmallFields) {
  std::mt19937_64 rng(4);
  for (auto [p, k] : {std::pair{3u, 1u}, {5u, 1u}, {2u, 3u}, {3u, 2u}}) {
    auto f = tower_field(p, k);
    for (int i = 0; i < 4; ++i) {
      const auto map = make_map(f, random_multipoly(*f, kTv, 3, rng), random_multipoly(*f, kTv, 3, rng));
      EXPECT_NO_THROW(histogram_fiber_identity(map, f, {std::uint64_t{1} << 30, 2}));
    }
  }
}

}  // namespace
}  // namespace kakeya
