#include <algorithm>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "nlrank/cusp_dim.hpp"
#include "nlrank/lattice.hpp"
#include "nlrank/rank_formula.hpp"
#include "oracles.hpp"

namespace nlrank {
namespace {

Lattice even_unimodular_2_18() {
  const Lattice u = catalog::hyperbolic_plane();
  return direct_sum(direct_sum(u, u), direct_sum(catalog::minus_e8(), catalog::minus_e8()));
}

std::int64_t classical_modular_dim(std::int64_t k) {
  if (k < 0 || k % 2 != 0 || k == 2) return 0;
  return k % 12 == 2 ? k / 12 : k / 12 + 1;
}

/// dim J_{k,m} for even k (Eichler-Zagier):
///   sum_{j=0}^{m} (dim M_{k+2j} - ceil(j^2 / 4m)).
std::int64_t jacobi_form_dim(std::int64_t k, std::int64_t m) {
  std::int64_t total = 0;
  for (std::int64_t j = 0; j <= m; ++j) total += classical_modular_dim(k + 2 * j) - (j * j + 4 * m - 1) / (4 * m);
  return total;
}

TEST(DimCusp, LambdaExamples) {
  EXPECT_EQ(dim_cusp(catalog::lambda(2), Rational(21, 2)).dim, 1);
  EXPECT_EQ(dim_cusp(catalog::lambda(3), Rational(21, 2)).dim, 2);
}

TEST(DimCusp, LambdaBoundaryTerms) {
  const CuspDimReport rep = dim_cusp(catalog::lambda(2), Rational(21, 2));
  EXPECT_FALSE(rep.parity_mismatch);
  EXPECT_EQ(rep.group_order, 2u);
  EXPECT_EQ(rep.boundary.subspace_sign, 1);
  EXPECT_EQ(rep.boundary.subspace_dim, 2u);
  EXPECT_LT(rep.boundary.max_snap_error, 1e-9);
  EXPECT_EQ(rep.boundary.dim_modular - Rational(static_cast<std::int64_t>(rep.boundary.isotropic_count)),
            Rational(rep.dim));
}

TEST(DimCusp, TrivialGroupIsScalarForms) {
  const Lattice lat = even_unimodular_2_18();
  const CuspDimReport half = dim_cusp(lat, Rational(21, 2));
  EXPECT_TRUE(half.parity_mismatch);
  EXPECT_EQ(half.dim, 0);
  for (std::int64_t k = 3; k <= 60; ++k) {
    const CuspDimReport rep = dim_cusp(lat, Rational(k));
    EXPECT_FALSE(rep.parity_mismatch);
    EXPECT_EQ(rep.dim, k % 2 == 0 ? testing::classical_cusp_dim(k) : 0) << k;
  }
}

/// Theta decomposition: J_{k,m} is M_{k-1/2} of type rho* for <2m>.
TEST(DimCusp, MatchesJacobiFormDimensions) {
  for (std::int64_t m = 1; m <= 6; ++m) {
    const Lattice lat = catalog::rank_one(2 * m);
    for (std::int64_t k = 4; k <= 30; k += 2) {
      const CuspDimReport rep = dim_cusp(lat, Rational(2 * k - 1, 2));
      ASSERT_FALSE(rep.parity_mismatch);
      EXPECT_EQ(rep.boundary.dim_modular, Rational(jacobi_form_dim(k, m))) << "k=" << k << " m=" << m;
    }
    // Index 1, cusp forms: J^cusp_{k,1} = S_{2k-2}.
    if (m == 1) {
      for (std::int64_t k = 4; k <= 30; k += 2) {
        EXPECT_EQ(dim_cusp(lat, Rational(2 * k - 1, 2)).dim, testing::classical_cusp_dim(2 * k - 2)) << k;
      }
    }
  }
}

TEST(DimCusp, WeightChecks) {
  try {
    dim_cusp(catalog::lambda(2), Rational(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WeightTooSmall);
  }
  try {
    dim_cusp(catalog::lambda(2), Rational(31, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadWeight);
  }
}

TEST(DimCusp, ParityMismatchIsFlagged) {
  // sig(Lambda_g) = -17 mod 8; dual rep needs 2k + 17 even.
  const CuspDimReport rep = dim_cusp(catalog::lambda(4), Rational(10));
  EXPECT_TRUE(rep.parity_mismatch);
  EXPECT_EQ(rep.dim, 0);
}

TEST(DimCusp, StableUnderBasisPermutation) {
  std::mt19937 rng(5);
  for (std::int64_t g = 2; g <= 30; g += 3) {
    const WeilRep w = dual(build_weil_rep(discriminant_form(catalog::lambda(g))));
    const std::int64_t expected = dim_cusp(w, Rational(21, 2)).dim;
    std::vector<std::size_t> perm(w.dimension);
    std::iota(perm.begin(), perm.end(), 0);
    for (int trial = 0; trial < 3; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      EXPECT_EQ(dim_cusp(permuted(w, perm), Rational(21, 2)).dim, expected) << g;
    }
  }
}

TEST(DimCusp, GrowthInWeightIsLogged) {
  for (std::int64_t g = 2; g <= 12; ++g) {
    std::int64_t prev = -1;
    for (std::int64_t twice_k = 9; twice_k <= 41; twice_k += 4) {
      const CuspDimReport rep = dim_cusp(catalog::lambda(g), Rational(twice_k, 2));
      ASSERT_FALSE(rep.parity_mismatch);
      if (rep.dim < prev) std::cout << "non-monotone: g=" << g << " 2k=" << twice_k << '\n';
      prev = rep.dim;
    }
  }
}

TEST(PicardRankViaCusp, Examples) {
  EXPECT_EQ(picard_rank_via_cusp(catalog::lambda(2), SplitHypothesis::Asserted), 2);
  EXPECT_EQ(picard_rank_via_cusp(catalog::lambda(3), SplitHypothesis::Asserted), 3);
  EXPECT_EQ(picard_rank_via_cusp(4), 4);
}

TEST(PicardRankViaCusp, AcceptsBothOrientations) {
  for (std::int64_t g = 2; g <= 10; ++g) {
    const Lattice lat = catalog::lambda(g);
    EXPECT_EQ(picard_rank_via_cusp(negated(lat), SplitHypothesis::Asserted),
              picard_rank_via_cusp(lat, SplitHypothesis::Asserted));
  }
}

TEST(PicardRankViaCusp, Errors) {
  try {
    picard_rank_via_cusp(catalog::k3(), SplitHypothesis::Asserted);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadSignature);
  }
  try {
    picard_rank_via_cusp(catalog::lambda(2), SplitHypothesis::NotAsserted);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisNotAsserted);
  }
}

TEST(PicardRankViaCusp, AgreesWithClosedForm) {
  for (std::int64_t g = 2; g <= 30; ++g) EXPECT_EQ(picard_rank_via_cusp(g), picard_rank(g).rank) << g;
}

TEST(DimCusp, JsonReport) {
  const auto j = to_json(dim_cusp(catalog::lambda(3), Rational(21, 2)));
  EXPECT_EQ(j["dim"], 2);
  EXPECT_EQ(j["k"], "21/2");
  EXPECT_EQ(j["boundary"]["subspace_dim"], 3);
}

}  // namespace
}  // namespace nlrank
