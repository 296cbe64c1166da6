#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "kakeya/errors.hpp"
#include "kakeya/field.hpp"

namespace kakeya {
namespace {

// Brute-force oracle: a monic quadratic or cubic is irreducible over F_p iff
// it has no root in F_p.
bool has_root_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    if (acc == 0) return true;
  }
  return false;
}

// Multiplicative order by repeated multiplication.
std::uint32_t order_by_stepping(const Field& f, Elem a) {
  Elem cur = a;
  std::uint32_t n = 1;
  while (cur != Field::one()) {
    cur = f.mul(cur, a);
    ++n;
  }
  return n;
}

TEST(FieldBuild, PrimeField) {
  auto f = Field::build(3, 1);
  EXPECT_EQ(f->q(), 3u);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(f->spec(), "3^1");
}

TEST(FieldBuild, F9ModulusIsLeastIrreducible) {
  auto f = Field::build(3, 2);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  // Oracle: scan monic quadratics, constant term compared first.
  std::vector<std::uint32_t> first;
  for (std::uint32_t c0 = 0; c0 < 3 && first.empty(); ++c0) {
    for (std::uint32_t c1 = 0; c1 < 3; ++c1) {
      std::vector<std::uint32_t> cand{c0, c1, 1};
      if (!has_root_mod_p(cand, 3)) {
        first = cand;
        break;
      }
    }
  }
  EXPECT_EQ(f->modulus(), first);
}

TEST(FieldBuild, CubicModulusMatchesRootScan) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto f = Field::build(p, 3);
    std::vector<std::uint32_t> first;
    for (std::uint32_t c0 = 0; c0 < p && first.empty(); ++c0) {
      for (std::uint32_t c1 = 0; c1 < p && first.empty(); ++c1) {
        for (std::uint32_t c2 = 0; c2 < p; ++c2) {
          std::vector<std::uint32_t> cand{c0, c1, c2, 1};
          if (!has_root_mod_p(cand, p)) {
            first = cand;
            break;
          }
        }
      }
    }
    EXPECT_EQ(f->modulus(), first) << "p=" << p;
  }
}

TEST(FieldBuild, GeneratorIsLeastPrimitive) {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{5, 3}, {3, 2}, {2, 4}, {7, 2}, {11, 1}}) {
    auto f = Field::build(p, k);
    EXPECT_EQ(order_by_stepping(*f, f->generator()), f->q() - 1);
    for (std::uint32_t c = 1; c < f->generator().index; ++c) {
      EXPECT_LT(order_by_stepping(*f, Elem{c}), f->q() - 1);
    }
  }
  EXPECT_EQ(Field::build(5, 3)->q(), 125u);
}

TEST(FieldBuild, Errors) {
  EXPECT_THROW(Field::build(4, 1), InvalidArgument);
  EXPECT_THROW(Field::build(2, 30), BudgetExceeded);
  FieldOptions small;
  small.max_order = 100;
  EXPECT_THROW(Field::build(5, 3, small), BudgetExceeded);
  EXPECT_THROW(Field::from_spec("6"), InvalidArgument);
  EXPECT_THROW(Field::from_spec("5^x"), InvalidArgument);
}

TEST(FieldBuild, SpecParsing) {
  auto s = parse_field_spec("5^3");
  EXPECT_EQ(s.p, 5u);
  EXPECT_EQ(s.k, 3u);
  s = parse_field_spec("49");
  EXPECT_EQ(s.p, 7u);
  EXPECT_EQ(s.k, 2u);
  s = parse_field_spec("13");
  EXPECT_EQ(s.k, 1u);
}

TEST(FieldBuild, ModulusOverride) {
  FieldOptions opts;
  opts.modulus = std::vector<std::uint32_t>{2, 1, 1};
  auto f = Field::build(3, 2, opts);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{2, 1, 1}));
  // x is a root of the modulus.
  const Elem x = Elem{3};
  EXPECT_EQ(f->add(f->add(f->mul(x, x), x), f->from_int(2)), Field::zero());
  opts.modulus = std::vector<std::uint32_t>{0, 0, 1};
  EXPECT_THROW(Field::build(3, 2, opts), InvalidArgument);
}

TEST(FieldOps, Examples) {
  auto f9 = Field::build(3, 2);
  for (std::uint32_t a = 0; a < 9; ++a) {
    EXPECT_EQ(f9->frobenius(f9->frobenius(Elem{a})), Elem{a});
  }
  auto f5 = Field::build(5, 1);
  EXPECT_EQ(f5->inv(Elem{2}), Elem{3});
  const Elem g = f9->generator();
  EXPECT_EQ(f9->pow(g, 8), Field::one());
  EXPECT_NE(f9->pow(g, 4), Field::one());
  EXPECT_THROW(f5->inv(Field::zero()), DomainError);
}

TEST(FieldOps, FermatAndInverse) {
  for (const char* spec : {"2^5", "3^3", "5^2", "7^2", "13", "2^1"}) {
    auto f = Field::from_spec(spec);
    for (std::uint32_t a = 0; a < f->q(); ++a) {
      const Elem x{a};
      EXPECT_EQ(f->pow(x, f->q()), x);
      if (a != 0) {
        EXPECT_EQ(f->mul(x, f->inv(x)), Field::one());
        EXPECT_EQ(f->pow(x, f->q() - 1), Field::one());
      }
    }
  }
}

TEST(FieldOps, ExhaustiveAxiomsSmallFields) {
  for (const char* spec : {"2^6", "3^3", "5^2", "7^2", "2^3"}) {
    auto f = Field::from_spec(spec);
    const std::uint32_t q = f->q();
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        const Elem x{a}, y{b};
        ASSERT_EQ(f->mul(x, y), f->mul(y, x));
        ASSERT_EQ(f->add(x, y), f->add(y, x));
        ASSERT_EQ(f->sub(f->add(x, y), y), x);
        for (std::uint32_t c = 0; c < q; ++c) {
          const Elem z{c};
          ASSERT_EQ(f->mul(f->mul(x, y), z), f->mul(x, f->mul(y, z)));
          ASSERT_EQ(f->mul(x, f->add(y, z)), f->add(f->mul(x, y), f->mul(x, z)));
        }
      }
    }
  }
}

TEST(FieldOps, SampledAxiomsUpTo4096) {
  std::mt19937_64 rng(7);
  for (const char* spec : {"2^12", "3^7", "5^5", "7^4", "4093"}) {
    auto f = Field::from_spec(spec);
    const std::uint32_t q = f->q();
    for (int i = 0; i < 10000; ++i) {
      const Elem x{static_cast<std::uint32_t>(rng() % q)};
      const Elem y{static_cast<std::uint32_t>(rng() % q)};
      const Elem z{static_cast<std::uint32_t>(rng() % q)};
      ASSERT_EQ(f->mul(f->mul(x, y), z), f->mul(x, f->mul(y, z)));
      ASSERT_EQ(f->mul(x, y), f->mul(y, x));
      ASSERT_EQ(f->add(f->add(x, y), z), f->add(x, f->add(y, z)));
    }
  }
}

TEST(FieldOps, FrobeniusIsAdditive) {
  for (const char* spec : {"2^10", "3^6", "5^4", "31^2"}) {
    auto f = Field::from_spec(spec);
    const std::uint32_t q = f->q();
    const std::uint32_t step = q > 256 ? 7 : 1;
    for (std::uint32_t a = 0; a < q; a += 1) {
      for (std::uint32_t b = 0; b < q; b += step) {
        ASSERT_EQ(f->frobenius(f->add(Elem{a}, Elem{b})), f->add(f->frobenius(Elem{a}), f->frobenius(Elem{b})));
      }
    }
  }
}

TEST(FieldOps, TableAndDirectBackendsAgree) {
  FieldOptions direct;
  direct.table_max_order = 0;
  FieldOptions zech;
  zech.dense_table_max_order = 0;
  std::mt19937_64 rng(11);
  for (const char* spec : {"3^5", "2^8", "5^3", "17^2"}) {
    auto dense = Field::from_spec(spec);
    auto slow = Field::from_spec(spec, direct);
    auto mid = Field::from_spec(spec, zech);
    ASSERT_FALSE(slow->has_tables());
    ASSERT_EQ(dense->generator(), slow->generator());
    for (int i = 0; i < 3000; ++i) {
      const Elem x{static_cast<std::uint32_t>(rng() % dense->q())};
      const Elem y{static_cast<std::uint32_t>(rng() % dense->q())};
      ASSERT_EQ(dense->add(x, y), slow->add(x, y));
      ASSERT_EQ(dense->add(x, y), mid->add(x, y));
      ASSERT_EQ(dense->mul(x, y), slow->mul(x, y));
      ASSERT_EQ(dense->mul(x, y), mid->mul(x, y));
      ASSERT_EQ(dense->neg(x), slow->neg(x));
      if (x != Field::zero()) {
        ASSERT_EQ(dense->inv(x), slow->inv(x));
        ASSERT_EQ(dense->log(x), slow->log(x));
      }
    }
  }
}

TEST(FieldOps, EnumerationVisitsEachElementOnce) {
  auto f = Field::from_spec("3^4");
  std::vector<bool> seen(f->q(), false);
  for (std::uint32_t i = 0; i < f->q(); ++i) {
    const Elem e = f->from_digits(f->digits(Elem{i}));
    ASSERT_EQ(e.index, i);
    ASSERT_FALSE(seen[i]);
    seen[i] = true;
  }
  // Powers of the generator hit every nonzero element exactly once.
  std::vector<bool> hit(f->q(), false);
  for (std::uint32_t e = 0; e + 1 < f->q(); ++e) {
    const Elem x = f->exp(e);
    ASSERT_FALSE(hit[x.index]);
    hit[x.index] = true;
  }
  EXPECT_FALSE(hit[0]);
}

TEST(FieldOps, ToString) {
  auto f = Field::from_spec("5^2");
  EXPECT_EQ(f->to_string(Elem{3}), "3");
  EXPECT_EQ(f->to_string(f->generator()), "g^1");
  EXPECT_TRUE(f->is_square(Field::zero()));
  std::uint32_t squares = 0;
  for (std::uint32_t a = 1; a < f->q(); ++a) squares += f->is_square(Elem{a});
  EXPECT_EQ(squares, 12u);
}

TEST(EmbeddingTest, PrimeSubfieldIsFixed) {
  auto f3 = Field::build(3, 1);
  auto f9 = Field::build(3, 2);
  auto emb = build_embedding(f3, f9);
  EXPECT_EQ(emb(Elem{2}), Elem{2});
  EXPECT_EQ(emb(Elem{1}), Elem{1});
  EXPECT_EQ(emb.preimage(Elem{2}), Elem{2});
  EXPECT_FALSE(emb.preimage(f9->generator()).has_value());
}

TEST(EmbeddingTest, IdentityOnSameField) {
  auto f9 = Field::build(3, 2);
  auto emb = build_embedding(f9, f9);
  for (std::uint32_t a = 0; a < 9; ++a) EXPECT_EQ(emb(Elem{a}), Elem{a});
}

TEST(EmbeddingTest, OrderPreservedIntoF81) {
  auto f9 = Field::build(3, 2);
  auto f81 = Field::build(3, 4);
  auto emb = build_embedding(f9, f81);
  const Elem h = emb(f9->generator());
  EXPECT_EQ(f81->pow(h, 8), Field::one());
  EXPECT_EQ(order_by_stepping(*f81, h), 8u);
}

TEST(EmbeddingTest, ExhaustiveHomomorphism) {
  for (auto [src, dst] : std::vector<std::pair<const char*, const char*>>{
           {"3^2", "3^4"}, {"5^1", "5^3"}, {"2^2", "2^6"}, {"5^2", "5^4"}, {"7^1", "7^2"}}) {
    auto a = Field::from_spec(src);
    auto b = Field::from_spec(dst);
    auto emb = build_embedding(a, b);
    for (std::uint32_t x = 0; x < a->q(); ++x) {
      ASSERT_EQ(emb(a->frobenius(Elem{x})), b->frobenius(emb(Elem{x})));
      for (std::uint32_t y = 0; y < a->q(); ++y) {
        ASSERT_EQ(emb(a->add(Elem{x}, Elem{y})), b->add(emb(Elem{x}), emb(Elem{y})));
        ASSERT_EQ(emb(a->mul(Elem{x}, Elem{y})), b->mul(emb(Elem{x}), emb(Elem{y})));
      }
    }
  }
}

TEST(EmbeddingTest, IncompatibleFieldsRejected) {
  EXPECT_THROW(build_embedding(Field::from_spec("3^2"), Field::from_spec("5^2")), InvalidArgument);
  EXPECT_THROW(build_embedding(Field::from_spec("3^2"), Field::from_spec("3^3")), InvalidArgument);
}

}  // namespace
}  // namespace kakeya
