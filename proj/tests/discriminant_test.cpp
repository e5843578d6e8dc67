#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include <gtest/gtest.h>

#include "nlrank/discriminant.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/smith.hpp"
#include "oracles.hpp"

namespace nlrank {
namespace {

Element unit(const DiscriminantForm& df, std::size_t i) {
  Element e = df.zero();
  e[i] = 1;
  return e;
}

std::map<Rational, std::size_t> norm_histogram(const DiscriminantForm& df) {
  std::map<Rational, std::size_t> h;
  const EnumeratedGroup group = df.enumerate(100000);
  for (const auto& el : group.elements) ++h[df.q(el)];
  return h;
}

/// Invariant factors of the group with the given cyclic orders.
std::vector<BigInt> invariant_factors(const std::vector<BigInt>& orders) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = orders[i];
  const SmithForm s = smith_normal_form(d);
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (s.diagonal(i, i) != 1) out.push_back(s.diagonal(i, i));
  return out;
}

TEST(DiscriminantForm, UnimodularIsTrivial) {
  const DiscriminantForm df = discriminant_form(catalog::hyperbolic_plane());
  EXPECT_TRUE(df.orders().empty());
  EXPECT_EQ(df.cardinality(), 1);
  EXPECT_EQ(df.level(), 1);
  EXPECT_EQ(df.sig_mod_8(), 0);
  EXPECT_TRUE(discriminant_form(catalog::k3()).orders().empty());
}

TEST(DiscriminantForm, RankOneTwo) {
  const DiscriminantForm df = discriminant_form(catalog::rank_one(2));
  ASSERT_EQ(df.orders(), std::vector<BigInt>{2});
  EXPECT_EQ(df.q(unit(df, 0)), Rational(1, 2));
  EXPECT_EQ(df.level(), 4);
  EXPECT_EQ(df.sig_mod_8(), 1);
}

TEST(DiscriminantForm, LambdaIsCyclic) {
  for (std::int64_t g = 2; g <= 30; ++g) {
    const DiscriminantForm df = discriminant_form(catalog::lambda(g));
    ASSERT_EQ(df.orders(), std::vector<BigInt>{2 * g - 2}) << g;
    // Generator is +-w/(2g-2): only the first coordinate is nonzero mod Z.
    const auto& gen = df.generators()[0];
    EXPECT_EQ(frac(abs(gen[0])), Rational(1, 2 * g - 2));
    for (std::size_t k = 1; k < gen.size(); ++k) EXPECT_TRUE(is_integer(gen[k]));
    EXPECT_EQ(df.q(unit(df, 0)), reduce_mod(Rational(-1, 2 * g - 2), Rational(2)));
    EXPECT_EQ(df.level(), 4 * g - 4);
    EXPECT_EQ(df.sig_mod_8(), 7);  // 2 - 19 = -17
  }
}

TEST(DiscriminantForm, GeneratorsLieInDualWithStatedOrder) {
  for (const Lattice& lat : testing::property_corpus()) {
    const DiscriminantForm df = discriminant_form(lat);
    const RationalMatrix gram = to_rational(lat.gram());
    for (std::size_t i = 0; i < df.num_generators(); ++i) {
      const auto& x = df.generators()[i];
      // G x integral: x is in the dual lattice.
      for (std::size_t r = 0; r < lat.rank(); ++r) {
        Rational s = 0;
        for (std::size_t c = 0; c < lat.rank(); ++c) s += gram(r, c) * x[c];
        EXPECT_TRUE(is_integer(s)) << lat.name();
      }
      // d x integral, and no smaller multiple is.
      const BigInt& d = df.orders()[i];
      for (const auto& xc : x) EXPECT_TRUE(is_integer(xc * Rational(d)));
      for (BigInt m = 1; m < d; ++m)
        if (d % m == 0) {
          bool all = true;
          for (const auto& xc : x) all = all && is_integer(xc * Rational(m));
          EXPECT_FALSE(all) << lat.name();
        }
    }
  }
}

TEST(DiscriminantForm, CardinalityIsAbsDet) {
  for (const Lattice& lat : testing::property_corpus()) {
    EXPECT_EQ(discriminant_form(lat).cardinality(), abs(lat.det())) << lat.name();
  }
}

TEST(DiscriminantForm, PolarizationIdentity) {
  for (const Lattice& lat : testing::property_corpus()) {
    const DiscriminantForm df = discriminant_form(lat);
    const auto group = df.enumerate(10000);
    for (const auto& x : group.elements)
      for (const auto& y : group.elements) {
        const Rational lhs = df.q(df.add(x, y)) - df.q(x) - df.q(y) - 2 * df.b(x, y);
        EXPECT_TRUE(is_integer(lhs / 2)) << lat.name();
      }
  }
}

TEST(DiscriminantForm, NormsAgreeWithVectors) {
  for (const Lattice& lat : testing::property_corpus()) {
    const DiscriminantForm df = discriminant_form(lat);
    const auto group = df.enumerate(10000);
    for (std::size_t k = 0; k < group.elements.size(); ++k) {
      const auto v = df.vector(group.elements[k]);
      EXPECT_EQ(reduce_mod(df.inner(v, v), Rational(2)), df.q(group.elements[k]));
      EXPECT_EQ(Rational(group.norm_num[k], group.denom), df.q(group.elements[k]));
      EXPECT_EQ(df.index(group.elements[k]), k);
      EXPECT_EQ(group.elements[group.negation[k]], df.negate(group.elements[k]));
    }
  }
}

TEST(DiscriminantForm, LevelIsLeastAnnihilator) {
  for (const Lattice& lat : testing::property_corpus()) {
    const DiscriminantForm df = discriminant_form(lat);
    const auto group = df.enumerate(10000);
    auto kills = [&](const BigInt& n) {
      for (const auto& el : group.elements)
        if (!is_integer(Rational(n) * df.q(el) / 2)) return false;
      return true;
    };
    EXPECT_TRUE(kills(df.level())) << lat.name();
    for (BigInt m = 1; m < df.level(); ++m) EXPECT_FALSE(kills(m)) << lat.name() << " " << m;

    BigInt exponent = 1;
    for (const auto& d : df.orders()) exponent = boost::multiprecision::lcm(exponent, d);
    EXPECT_EQ((2 * df.cardinality() * exponent) % df.level(), 0) << lat.name();
  }
  EXPECT_EQ(discriminant_form(catalog::hyperbolic_plane()).level(), 1);
}

TEST(DiscriminantForm, DirectSumIsOrthogonalSum) {
  const auto corpus = testing::property_corpus();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i; j < corpus.size(); ++j) {
      const Lattice& a = corpus[i];
      const Lattice& b = corpus[j];
      if (abs(a.det() * b.det()) > 2000) continue;
      const DiscriminantForm da = discriminant_form(a);
      const DiscriminantForm db = discriminant_form(b);
      const DiscriminantForm dab = discriminant_form(direct_sum(a, b));

      std::vector<BigInt> orders = da.orders();
      orders.insert(orders.end(), db.orders().begin(), db.orders().end());
      EXPECT_EQ(dab.orders(), invariant_factors(orders)) << a.name() << " + " << b.name();

      std::map<Rational, std::size_t> expected;
      for (const auto& [qa, na] : norm_histogram(da))
        for (const auto& [qb, nb] : norm_histogram(db)) expected[reduce_mod(qa + qb, Rational(2))] += na * nb;
      EXPECT_EQ(norm_histogram(dab), expected) << a.name() << " + " << b.name();
      EXPECT_EQ(dab.level(), boost::multiprecision::lcm(da.level(), db.level()));
    }
  }
}

TEST(DiscriminantForm, EnumerateRespectsCap) {
  const DiscriminantForm df = discriminant_form(catalog::lambda(30));
  EXPECT_EQ(df.enumerate(58).elements.size(), 58u);
  try {
    df.enumerate(57);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

}  // namespace
}  // namespace nlrank
