#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "kakeya/errors.hpp"
#include "kakeya/factor.hpp"
#include "kakeya/poly_structure.hpp"
#include "kakeya/tower.hpp"
#include "test_util.hpp"

namespace kakeya {
namespace {

using testing::random_monic;
using testing::random_multipoly;
using testing::random_unipoly;

UniPoly product(const Field& f, const UniFactorization& fac) {
  const UniRing R(f);
  UniPoly acc = UniPoly::constant(fac.unit);
  for (const auto& part : fac.factors) acc = R.mul(acc, R.pow(part.poly, part.multiplicity));
  return acc;
}

MultiPoly product(const Field& f, const Factorization& fac, const std::vector<std::string>& vars) {
  const MultiRing M(f);
  MultiPoly acc = MultiPoly::constant(vars, fac.unit);
  for (const auto& part : fac.factors) acc = M.mul(acc, M.pow(with_vars(part.poly, vars), part.multiplicity));
  return acc;
}

// Trial division by every monic polynomial of degree 1..deg/2.
bool irreducible_by_trial_division(const Field& f, const UniPoly& a) {
  const UniRing R(f);
  const int n = a.degree();
  for (int d = 1; 2 * d <= n; ++d) {
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(d), 0);
    while (true) {
      std::vector<Elem> c;
      for (auto x : digits) c.push_back(Elem{x});
      c.push_back(Field::one());
      if (R.rem(a, UniPoly(c)).is_zero()) return false;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == f.q()) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  return true;
}

TEST(FactorUnivariate, QuadraticIrreducibleOverF3) {
  auto f = Field::build(3, 1);
  auto fac = factor_univariate(*f, parse_unipoly("x^2 + 1", *f));
  ASSERT_EQ(fac.factors.size(), 1u);
  EXPECT_EQ(fac.factors[0].multiplicity, 1u);
  // Oracle: degree 2 without roots.
  for (std::uint32_t x = 0; x < 3; ++x) EXPECT_NE(UniRing(*f).eval(fac.factors[0].poly, Elem{x}), Field::zero());
}

TEST(FactorUnivariate, FrobeniusFixedPolynomial) {
  auto f = Field::build(3, 1);
  auto fac = factor_univariate(*f, parse_unipoly("x^9 - x", *f));
  // Oracle: every monic polynomial of degree 1, and every monic quadratic
  // without a root.
  std::vector<UniPoly> expected;
  for (std::uint32_t c0 = 0; c0 < 3; ++c0) expected.push_back(UniPoly({Elem{c0}, Field::one()}));
  for (std::uint32_t c0 = 0; c0 < 3; ++c0) {
    for (std::uint32_t c1 = 0; c1 < 3; ++c1) {
      UniPoly q({Elem{c0}, Elem{c1}, Field::one()});
      if (irreducible_by_trial_division(*f, q)) expected.push_back(q);
    }
  }
  ASSERT_EQ(expected.size(), 6u);
  ASSERT_EQ(fac.factors.size(), 6u);
  for (const auto& part : fac.factors) {
    EXPECT_EQ(part.multiplicity, 1u);
    EXPECT_NE(std::find(expected.begin(), expected.end(), part.poly), expected.end());
  }
}

TEST(FactorUnivariate, Multiplicities) {
  auto f = Field::build(5, 1);
  auto fac = factor_univariate(*f, parse_unipoly("(x - 1)^2*(x + 1)", *f));
  ASSERT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(fac.factors[0].poly, parse_unipoly("x + 1", *f));
  EXPECT_EQ(fac.factors[0].multiplicity, 1u);
  EXPECT_EQ(fac.factors[1].poly, parse_unipoly("x - 1", *f));
  EXPECT_EQ(fac.factors[1].multiplicity, 2u);
}

TEST(FactorUnivariate, ZeroRejected) {
  auto f = Field::build(5, 1);
  EXPECT_THROW(factor_univariate(*f, UniPoly{}), InvalidArgument);
}

TEST(FactorUnivariate, RandomRoundTripAndIrreducibility) {
  std::mt19937_64 rng(41);
  for (const char* spec : {"2", "3", "5", "2^2", "3^2", "2^3", "7"}) {
    auto f = Field::from_spec(spec);
    const UniRing R(*f);
    for (int i = 0; i < 40; ++i) {
      UniPoly a = random_unipoly(*f, 1 + static_cast<int>(rng() % 8), rng);
      // Repeated and p-th power factors.
      if (i % 4 == 1) a = R.mul(a, R.pow(random_monic(*f, 2, rng), 2));
      if (i % 4 == 2) a = R.mul(a, R.pow(random_monic(*f, 1, rng), f->p()));
      auto fac = factor_univariate(*f, a);
      ASSERT_EQ(product(*f, fac), a) << spec;
      for (const auto& part : fac.factors) {
        ASSERT_EQ(part.poly.lead(), Field::one());
        if (f->q() <= 9 && part.poly.degree() <= 6) ASSERT_TRUE(irreducible_by_trial_division(*f, part.poly));
      }
      ASSERT_EQ(factor_univariate(*f, a).factors.size(), fac.factors.size());
    }
  }
}

TEST(FactorUnivariate, LargeFieldDirectArithmetic) {
  auto f = Field::build(2, 17);
  ASSERT_FALSE(f->has_tables());
  std::mt19937_64 rng(43);
  const UniRing R(*f);
  UniPoly a = R.mul(random_monic(*f, 3, rng), random_monic(*f, 2, rng));
  EXPECT_EQ(product(*f, factor_univariate(*f, a)), a);
}

// Max over r of the number of factors over F_{q^r}: the spec's definition,
// used as an oracle for the prime-by-prime method.
std::uint32_t max_over_extensions(const FieldRef& f, const MultiPoly& a, std::uint32_t max_r) {
  std::uint32_t best = 0;
  for (std::uint32_t r = 1; r <= max_r; ++r) {
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < f->k() * r; ++i) order *= f->p();
    if (order > (1u << 20)) break;
    FieldRef ext = tower_extension(*f, r);
    auto emb = tower_embedding(f, ext);
    best = std::max(best, factor_bivariate(ext, map_coefficients(a, *emb)).count_with_multiplicity());
  }
  return best;
}

TEST(FactorBivariate, DifferenceOfSquares) {
  auto f = Field::build(5, 1);
  auto fac = factor_bivariate(f, parse_poly("x^2 - y^2", *f));
  ASSERT_EQ(fac.factors.size(), 2u);
  std::set<std::string> got;
  for (const auto& part : fac.factors) got.insert(format_poly(part.poly, *f));
  EXPECT_EQ(got, (std::set<std::string>{"x + y", "x + 4*y"}));
}

TEST(FactorBivariate, CubeRootsOfUnityInF7) {
  auto f = Field::build(7, 1);
  auto fac = factor_bivariate(f, parse_poly("x^2 + x*y + y^2", *f));
  ASSERT_EQ(fac.factors.size(), 2u);
  std::set<std::string> got;
  for (const auto& part : fac.factors) got.insert(format_poly(part.poly, *f));
  // x - 2y and x - 4y.
  EXPECT_EQ(got, (std::set<std::string>{"x + 5*y", "x + 3*y"}));
  EXPECT_EQ(product(*f, fac, {"x", "y"}), parse_poly("x^2 + x*y + y^2", *f));
}

TEST(FactorBivariate, SmoothConicIrreducibleOverF7) {
  auto f = Field::build(7, 1);
  const MultiPoly conic = parse_poly("x^2 + x*y + y^2 + 1", *f);
  auto fac = factor_bivariate(f, conic);
  ASSERT_EQ(fac.factors.size(), 1u);
  EXPECT_EQ(fac.factors[0].multiplicity, 1u);
  // Oracle: a reducible conic contains an F_7-line; check none lies on it.
  const MultiRing M(*f);
  for (std::uint32_t a = 0; a < 7; ++a) {
    for (std::uint32_t b = 0; b < 7; ++b) {
      // Lines y = a x + b and x = b.
      bool on_line = true, on_vertical = true;
      for (std::uint32_t t = 0; t < 7; ++t) {
        const Elem x{t};
        const std::vector<Elem> pt{x, f->add(f->mul(Elem{a}, x), Elem{b})};
        const std::vector<Elem> vt{Elem{b}, x};
        on_line = on_line && M.eval(conic, pt) == Field::zero();
        on_vertical = on_vertical && M.eval(conic, vt) == Field::zero();
      }
      EXPECT_FALSE(on_line);
      EXPECT_FALSE(on_vertical);
    }
  }
}

TEST(FactorBivariate, ContentsAndPowers) {
  auto f2 = Field::build(2, 1);
  auto fac = factor_bivariate(f2, parse_poly("(x^2 + y)^2*(y + 1)*x", *f2));
  EXPECT_EQ(product(*f2, fac, {"x", "y"}), parse_poly("(x^2 + y)^2*(y + 1)*x", *f2));
  EXPECT_EQ(fac.count_with_multiplicity(), 4u);

  auto f3 = Field::build(3, 1);
  auto cube = factor_bivariate(f3, parse_poly("x^3 - y^3", *f3));
  ASSERT_EQ(cube.factors.size(), 1u);
  EXPECT_EQ(cube.factors[0].multiplicity, 3u);
  EXPECT_EQ(cube.factors[0].poly, parse_poly("x - y", *f3));
}

TEST(FactorBivariate, RandomProductsRoundTrip) {
  std::mt19937_64 rng(53);
  const std::vector<std::string> vars{"x", "y"};
  for (const char* spec : {"2", "3", "5", "7", "2^2", "3^2"}) {
    auto f = Field::from_spec(spec);
    const MultiRing M(*f);
    for (int i = 0; i < 25; ++i) {
      MultiPoly a = random_multipoly(*f, vars, 1 + static_cast<int>(rng() % 3), rng);
      MultiPoly b = random_multipoly(*f, vars, 1 + static_cast<int>(rng() % 3), rng);
      if (a.is_constant() || b.is_constant()) continue;
      MultiPoly prod = M.mul(a, i % 5 == 0 ? M.mul(a, b) : b);
      auto fac = factor_bivariate(f, prod);
      ASSERT_EQ(product(*f, fac, vars), prod) << spec << " " << format_poly(prod, *f);
      ASSERT_GE(fac.count_with_multiplicity(), 2u);
      for (const auto& part : fac.factors) ASSERT_EQ(part.poly.terms().begin()->second, Field::one());
    }
  }
}

// Over F_2 neither variable has a squarefree specialization of full degree
// for these, so the factorization goes through F_4 and back.
TEST(FactorBivariate, NoRationalSpecialization) {
  auto f = Field::build(2, 1);
  const MultiPoly g1 = parse_poly("x^4*y + x^3 + x^2*y + y^2 + x + 1", *f);
  const MultiPoly g2 = parse_poly("x^4*y + x*y^4 + x^4 + x^3 + y^3 + y", *f);
  EXPECT_EQ(factor_bivariate(f, g1).factors.size(), 1u);
  EXPECT_EQ(factor_bivariate(f, g2).factors.size(), 1u);
  const MultiPoly prod = MultiRing(*f).mul(g1, g2);
  auto fac = factor_bivariate(f, prod);
  ASSERT_EQ(fac.factors.size(), 2u);
  EXPECT_EQ(fac.factors[0].poly, g2);
  EXPECT_EQ(fac.factors[1].poly, g1);
  // Irreducibility cross-check: the oracle's count over F_2 is 1 each.
  EXPECT_EQ(max_over_extensions(f, g1, 1), 1u);
}

TEST(FactorBivariate, Errors) {
  auto f = Field::build(5, 1);
  EXPECT_THROW(factor_bivariate(f, MultiPoly({"x", "y"})), InvalidArgument);
  EXPECT_THROW(factor_bivariate(f, parse_poly("x^17 + y", *f)), BudgetExceeded);
  EXPECT_THROW(factor_bivariate(f, parse_poly("x + y + s", *f)), InvalidArgument);
}

TEST(AbsoluteCount, Examples) {
  auto f = Field::build(5, 1);
  auto split = absolute_factor_count(f, parse_poly("(x - y)*(x + y)", *f));
  EXPECT_EQ(split.count, 2u);
  EXPECT_EQ(split.witness_extension, 1u);

  auto conj = absolute_factor_count(f, parse_poly("x^2 + x*y + y^2", *f));
  EXPECT_EQ(conj.count, 2u);
  EXPECT_EQ(conj.witness_extension, 2u);

  for (std::uint32_t a = 1; a < 5; ++a) {
    MultiPoly conic = MultiRing(*f).add(parse_poly("x^2 + x*y + y^2", *f), MultiPoly::constant({"x", "y"}, Elem{a}));
    EXPECT_EQ(absolute_factor_count(f, conic).count, 1u);
    EXPECT_EQ(max_over_extensions(f, conic, 2), 1u);
  }
}

TEST(AbsoluteCount, MatchesExtensionScanOracle) {
  std::mt19937_64 rng(59);
  const std::vector<std::string> vars{"x", "y"};
  for (const char* spec : {"3", "5", "2^2"}) {
    auto f = Field::from_spec(spec);
    for (int i = 0; i < 20; ++i) {
      MultiPoly a = random_multipoly(*f, vars, 2 + static_cast<int>(rng() % 3), rng);
      if (a.is_constant()) continue;
      auto got = absolute_factor_count(f, a);
      ASSERT_EQ(got.count, max_over_extensions(f, a, static_cast<std::uint32_t>(a.total_degree())))
          << spec << " " << format_poly(a, *f);
    }
  }
}

TEST(AbsoluteCount, NormFormsSplitFully) {
  // 2 has order 4 in F_5^*, so its fourth roots live in F_625 and not in F_25.
  auto f = Field::build(5, 1);
  auto r = absolute_factor_count(f, parse_poly("x^4 - 2*y^4", *f));
  EXPECT_EQ(r.count, 4u);
  EXPECT_EQ(r.witness_extension, 4u);
  EXPECT_EQ(r.count, max_over_extensions(f, parse_poly("x^4 - 2*y^4", *f), 4));
}

TEST(AbsoluteCount, AffineInvariance) {
  std::mt19937_64 rng(61);
  const std::vector<std::string> vars{"x", "y"};
  for (const char* spec : {"5", "7", "3^2"}) {
    auto f = Field::from_spec(spec);
    const MultiRing M(*f);
    const auto x = MultiPoly::variable(vars, "x");
    const auto y = MultiPoly::variable(vars, "y");
    for (int i = 0; i < 15; ++i) {
      MultiPoly a = random_multipoly(*f, vars, 2 + static_cast<int>(rng() % 3), rng);
      if (a.is_constant()) continue;
      Elem c[6];
      do {
        for (auto& e : c) e = testing::random_elem(*f, rng);
      } while (f->sub(f->mul(c[0], c[4]), f->mul(c[1], c[3])) == Field::zero());
      auto img = [&](Elem u, Elem v, Elem w) {
        return M.add(M.add(M.scale(x, u), M.scale(y, v)), MultiPoly::constant(vars, w));
      };
      MultiPoly moved = M.substitute(a, {img(c[0], c[1], c[2]), img(c[3], c[4], c[5])});
      ASSERT_EQ(absolute_factor_count(f, a).count, absolute_factor_count(f, moved).count) << format_poly(a, *f);
    }
  }
}

TEST(AbsoluteCount, AdditiveOnProducts) {
  std::mt19937_64 rng(67);
  const std::vector<std::string> vars{"x", "y"};
  for (const char* spec : {"5", "7"}) {
    auto f = Field::from_spec(spec);
    const MultiRing M(*f);
    for (int i = 0; i < 15; ++i) {
      MultiPoly a = random_multipoly(*f, vars, 1 + static_cast<int>(rng() % 3), rng);
      MultiPoly b = random_multipoly(*f, vars, 1 + static_cast<int>(rng() % 3), rng);
      if (a.is_constant() || b.is_constant()) continue;
      ASSERT_EQ(absolute_factor_count(f, M.mul(a, b)).count,
                absolute_factor_count(f, a).count + absolute_factor_count(f, b).count);
    }
  }
}

TEST(AbsoluteCount, Budget) {
  auto f = Field::build(5, 1);
  EXPECT_THROW(absolute_factor_count(f, parse_poly("x^13 + y", *f)), BudgetExceeded);
}

TEST(ShiftCensus, CubeOverF7) {
  auto f = Field::build(7, 1);
  auto c = difference_quotient_shift_census(f, parse_unipoly("x^3", *f));
  EXPECT_EQ(c.reducible_shift_count, 1u);
  ASSERT_EQ(c.shifts.size(), 1u);
  EXPECT_EQ(c.shifts[0], Field::zero());
  ASSERT_TRUE(c.bound.has_value());
  EXPECT_TRUE(c.holds);
}

TEST(ShiftCensus, LinearizedCubeOverF3) {
  auto f = Field::build(3, 1);
  auto c = difference_quotient_shift_census(f, parse_unipoly("x^3", *f));
  EXPECT_EQ(c.reducible_shift_count, 3u);
  EXPECT_FALSE(c.bound.has_value());
}

TEST(ShiftCensus, LinearPolynomial) {
  auto f = Field::build(5, 1);
  EXPECT_EQ(reducible_shift_census(f, parse_poly("x + y", *f)).reducible_shift_count, 0u);
}

TEST(ShiftCensus, ThreadCountDoesNotMatter) {
  auto f = Field::build(7, 1);
  auto a = difference_quotient_shift_census(f, parse_unipoly("x^5 + x^2", *f), {}, 1);
  auto b = difference_quotient_shift_census(f, parse_unipoly("x^5 + x^2", *f), {}, 4);
  EXPECT_EQ(a.shifts, b.shifts);
}

TEST(Zieve, IdentityPair) {
  auto f = Field::build(3, 1);
  auto r = zieve_factor_check(f, UniPoly::x(), UniPoly::x());
  EXPECT_EQ(r.count, 2u);
  EXPECT_TRUE(r.pass);
}

TEST(Zieve, MatchesOracle) {
  auto f3 = Field::build(3, 1);
  auto r3 = zieve_factor_check(f3, parse_unipoly("x^3 + x", *f3), UniPoly::x());
  EXPECT_EQ(r3.polynomial, parse_poly("x^4 + x^2 - y^2", *f3));
  EXPECT_EQ(r3.count, max_over_extensions(f3, r3.polynomial, 4));
  EXPECT_TRUE(r3.pass);

  auto f5 = Field::build(5, 1);
  auto r5 = zieve_factor_check(f5, parse_unipoly("x^5 + x", *f5), parse_unipoly("x^5 + 2*x", *f5));
  EXPECT_EQ(r5.count, max_over_extensions(f5, r5.polynomial, 6));
  EXPECT_TRUE(r5.pass);
}

TEST(Zieve, DistinctHypothesisErrors) {
  using Kind = ZieveHypothesisError::Kind;
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const ZieveHypothesisError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no hypothesis error";
    return Kind::kEvenCharacteristic;
  };
  auto f2 = Field::build(2, 1);
  auto f5 = Field::build(5, 1);
  EXPECT_EQ(kind_of([&] { zieve_factor_check(f2, UniPoly::x(), UniPoly::x()); }), Kind::kEvenCharacteristic);
  EXPECT_EQ(kind_of([&] { zieve_factor_check(f5, parse_unipoly("x^2 + x", *f5), UniPoly::x()); }),
            Kind::kNotLinearized);
  EXPECT_EQ(kind_of([&] { zieve_factor_check(f5, parse_unipoly("x + 1", *f5), UniPoly::x()); }),
            Kind::kNonzeroConstant);
  EXPECT_EQ(kind_of([&] { zieve_factor_check(f5, UniPoly::x(), parse_unipoly("x^5", *f5)); }),
            Kind::kZeroLinearTerm);
}

}  // namespace
}  // namespace kakeya
