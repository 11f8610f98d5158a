#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rabi/errors.hpp"
#include "rabi/spectral_core.hpp"
#include "support.hpp"

using namespace rabi;
using rabi::oracles::rel_err;

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(CouplingVector, RejectsInvalidCouplings) {
  EXPECT_THROW(CouplingVector({}), ValidationError);
  EXPECT_THROW(CouplingVector({1.0, 0.0}), ValidationError);
  EXPECT_THROW(CouplingVector({-1.0}), ValidationError);
  EXPECT_THROW(CouplingVector({std::nan("")}), ValidationError);
  EXPECT_THROW(CouplingVector({INFINITY}), ValidationError);
  EXPECT_EQ(CouplingVector({1.0, 2.0}).levels(), 3u);
}

TEST(CouplingVector, GershgorinRadius) {
  EXPECT_DOUBLE_EQ(CouplingVector({2.0}).gershgorin_radius(), 2.0);
  EXPECT_DOUBLE_EQ(CouplingVector({3.0, 4.0}).gershgorin_radius(), 7.0);
  EXPECT_DOUBLE_EQ(CouplingVector({1.0, 5.0, 1.0}).gershgorin_radius(), 6.0);
}

TEST(BuildCouplingMatrix, TwoLevel) {
  const auto c = build_coupling_matrix(CouplingVector({1.0}));
  ASSERT_EQ(c.dim(), 2u);
  EXPECT_EQ(c(0, 0), Complex(0.0));
  EXPECT_EQ(c(0, 1), Complex(1.0));
  EXPECT_EQ(c(1, 0), Complex(1.0));
  EXPECT_EQ(c(1, 1), Complex(0.0));
}

TEST(BuildCouplingMatrix, ThreeLevelPlacement) {
  const auto c = build_coupling_matrix(CouplingVector({3.0, 4.0}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Complex want = 0.0;
      if ((i == 0 && j == 1) || (i == 1 && j == 0)) want = 3.0;
      if ((i == 1 && j == 2) || (i == 2 && j == 1)) want = 4.0;
      EXPECT_EQ(c(i, j), want) << i << "," << j;
    }
}

TEST(BuildCouplingMatrix, SymmetricZeroDiagonal) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto c = build_coupling_matrix(CouplingVector(oracles::random_couplings(rng, n)));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(c(i, i), Complex(0.0));
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_EQ(c(i, j), c(j, i));
        if (i > j + 1 || j > i + 1) EXPECT_EQ(c(i, j), Complex(0.0));
      }
    }
  }
  const auto ones = build_coupling_matrix(CouplingVector({1.0, 1.0, 1.0}));
  for (std::size_t i = 0; i + 1 < 4; ++i) EXPECT_EQ(ones(i, i + 1), Complex(1.0));
}

TEST(CharPolyRecurrence, LiteralExamples) {
  auto p2 = char_poly_recurrence(CouplingVector({1.5}));
  EXPECT_FALSE(p2.odd_parity);
  ASSERT_EQ(p2.even_coeffs.size(), 1u);
  EXPECT_DOUBLE_EQ(p2.even_coeffs[0], 2.25);

  auto p4 = char_poly_recurrence(CouplingVector({1.0, 1.0, 1.0}));
  EXPECT_EQ(p4.even_coeffs, (std::vector<double>{3.0, 1.0}));
  EXPECT_FALSE(p4.odd_parity);

  auto p5 = char_poly_recurrence(CouplingVector({1.0, 1.0, 1.0, 1.0}));
  EXPECT_EQ(p5.even_coeffs, (std::vector<double>{4.0, 3.0}));
  EXPECT_TRUE(p5.odd_parity);
  EXPECT_EQ(p5.degree, 5u);
  // lambda (lambda^4 - 4 lambda^2 + 3)
  EXPECT_EQ(p5.dense(), (std::vector<double>{0, 3, 0, -4, 0, 1}));
}

TEST(CharPolyClosedForm, EqualCouplingsSixLevels) {
  auto p = char_poly_closed_form(CouplingVector({1, 1, 1, 1, 1}));
  EXPECT_EQ(p.even_coeffs, (std::vector<double>{5.0, 6.0, 1.0}));
  EXPECT_FALSE(p.odd_parity);
}

TEST(CharPolyClosedForm, SingleCoupling) {
  auto p = char_poly_closed_form(CouplingVector({0.7}));
  ASSERT_EQ(p.even_coeffs.size(), 1u);
  EXPECT_DOUBLE_EQ(p.even_coeffs[0], 0.49);
}

TEST(CharPolyClosedForm, MatchesRecurrenceNineLevels) {
  std::mt19937_64 rng(9);
  const CouplingVector g(oracles::random_couplings(rng, 9));
  const auto a = char_poly_closed_form(g);
  const auto b = char_poly_recurrence(g);
  ASSERT_EQ(a.even_coeffs.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_LE(rel_err(a.even_coeffs[k], b.even_coeffs[k]), 1e-12);
}

TEST(CharPoly, BuildersAgreeOnRandomInputs) {
  std::mt19937_64 rng(2024);
  for (std::size_t n = 2; n <= 14; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      const CouplingVector g(oracles::random_couplings(rng, n));
      const auto a = char_poly_closed_form(g);
      const auto b = char_poly_recurrence(g);
      ASSERT_EQ(a.odd_parity, n % 2 == 1);
      ASSERT_EQ(a.even_coeffs.size(), b.even_coeffs.size());
      for (std::size_t k = 0; k < a.even_coeffs.size(); ++k) {
        EXPECT_GT(a.even_coeffs[k], 0.0);
        ASSERT_LE(rel_err(a.even_coeffs[k], b.even_coeffs[k]), 1e-12) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(CharPoly, MatchesDenseDeterminant) {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 9; ++n) {
    const auto gv = oracles::random_couplings(rng, n, 0.5, 2.0);
    const auto p = char_poly_recurrence(CouplingVector(gv));
    for (double lambda : {-3.1, -0.4, 0.0, 0.9, 2.7}) {
      const double want = oracles::det_lambda_minus_c(gv, lambda);
      EXPECT_NEAR(eval_char_poly(p, lambda), want, 1e-10 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(AdmissibleTuples, CountIsBinomial) {
  for (std::size_t max_index = 0; max_index <= 16; ++max_index) {
    for (std::size_t k = 0; k <= 9; ++k) {
      std::set<std::vector<std::size_t>> seen;
      const std::size_t count = for_each_admissible_tuple(max_index, k, [&](std::span<const std::size_t> t) {
        std::vector<std::size_t> v(t.begin(), t.end());
        for (std::size_t j = 0; j < v.size(); ++j) {
          EXPECT_GE(v[j], 1u);
          EXPECT_LE(v[j], max_index);
          if (j > 0) EXPECT_GE(v[j], v[j - 1] + 2);
        }
        EXPECT_TRUE(seen.insert(v).second) << "tuple visited twice";
      });
      const std::size_t want = k == 0 ? 1 : (max_index + 1 >= k ? binomial(max_index - k + 1, k) : 0);
      EXPECT_EQ(count, want) << "N=" << max_index << " k=" << k;
      EXPECT_EQ(seen.size(), want);
    }
  }
}

TEST(AdmissibleTuples, GapSumMatchesRecursiveDefinition) {
  std::mt19937_64 rng(17);
  for (std::size_t len = 1; len <= 13; ++len) {
    std::vector<double> squares;
    for (double v : oracles::random_couplings(rng, len + 1)) squares.push_back(v * v);
    for (std::size_t k = 0; k <= (len + 1) / 2; ++k) {
      EXPECT_LE(rel_err(gap_constrained_sum(squares, k), oracles::recursive_gap_sum(squares, len, k)),
                1e-12);
    }
  }
}

TEST(EvalCharPoly, Examples) {
  const auto p2 = char_poly_recurrence(CouplingVector({2.0}));
  EXPECT_DOUBLE_EQ(eval_char_poly(p2, 2.0), 0.0);
  const auto p4 = char_poly_recurrence(CouplingVector({1.0, 1.0, 1.0}));
  EXPECT_DOUBLE_EQ(eval_char_poly(p4, 1.0), -1.0);
  std::mt19937_64 rng(3);
  for (std::size_t n = 3; n <= 13; n += 2) {
    const auto p = char_poly_recurrence(CouplingVector(oracles::random_couplings(rng, n)));
    EXPECT_EQ(eval_char_poly(p, 0.0), 0.0);
  }
}

TEST(EvalCharPoly, ParitySymmetry) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> lam(-5.0, 5.0);
  for (std::size_t n = 2; n <= 14; ++n) {
    const auto p = char_poly_recurrence(CouplingVector(oracles::random_couplings(rng, n, 0.1, 2.0)));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < 20; ++i) {
      const double x = lam(rng);
      EXPECT_EQ(eval_char_poly(p, x), sign * eval_char_poly(p, -x));
    }
  }
}

TEST(EvalCharPoly, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(21);
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto p = char_poly_recurrence(CouplingVector(oracles::random_couplings(rng, n, 0.5, 2.0)));
    for (double x : {-1.3, 0.2, 0.77, 2.4}) {
      const double h = 1e-5;
      const double fd = (eval_char_poly(p, x + h) - eval_char_poly(p, x - h)) / (2 * h);
      EXPECT_NEAR(eval_char_poly_derivative(p, x), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

namespace {

// c_k of the closed form for the first `len` couplings; c_0 = 1, and c_k = 0 past the degree.
double prefix_coeff(const std::vector<double>& gv, std::size_t len, std::size_t k) {
  if (k == 0) return 1.0;
  if (len == 0) return 0.0;
  const auto p = char_poly_closed_form(CouplingVector({gv.begin(), gv.begin() + len}));
  return k <= p.even_coeffs.size() ? p.even_coeffs[k - 1] : 0.0;
}

}  // namespace

// c_k(g_1..g_N) = c_{k-1}(g_1..g_{N-2}) g_N^2 + c_k(g_1..g_{N-1}) for both parities of N.
TEST(CharPolyClosedForm, ReductionIdentities) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto gv = oracles::random_couplings(rng, 14);
    for (std::size_t len = 2; len <= gv.size(); ++len) {
      const double last2 = gv[len - 1] * gv[len - 1];
      for (std::size_t k = 1; k <= (len + 1) / 2; ++k) {
        const double lhs = prefix_coeff(gv, len, k);
        const double rhs = prefix_coeff(gv, len - 2, k - 1) * last2 + prefix_coeff(gv, len - 1, k);
        EXPECT_LE(rel_err(rhs, lhs), 1e-12) << "N=" << len << " k=" << k;
      }
    }
  }
}
