#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qsixj/eigen.hpp"
#include "qsixj/errors.hpp"
#include "sweep.hpp"

using namespace qsixj;

namespace {

const QContext kClassical = QContext::classical();

double residual(const std::vector<double>& d, const std::vector<double>& e, const TridiagEigen& eig, int k) {
  const int n = eig.n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double tv = d[static_cast<std::size_t>(i)] * eig.vec(i, k);
    if (i > 0) tv += e[static_cast<std::size_t>(i - 1)] * eig.vec(i - 1, k);
    if (i + 1 < n) tv += e[static_cast<std::size_t>(i)] * eig.vec(i + 1, k);
    worst = std::max(worst, std::fabs(tv - eig.values[static_cast<std::size_t>(k)] * eig.vec(i, k)));
  }
  return worst;
}

}  // namespace

TEST(Tridiag, OneByOne) {
  const std::vector<double> d{3.5}, e{};
  const TridiagEigen eig = solve_tridiagonal(d, e);
  ASSERT_EQ(eig.n, 1);
  EXPECT_EQ(eig.values[0], 3.5);
  EXPECT_EQ(eig.vec(0, 0), 1.0);
}

TEST(Tridiag, TwoByTwo) {
  const std::vector<double> d{0.0, 0.0}, e{1.0};
  const TridiagEigen eig = solve_tridiagonal(d, e);
  EXPECT_NEAR(eig.values[0], -1.0, 1e-15);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-15);
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(std::fabs(eig.vec(0, 0)), h, 1e-15);
  EXPECT_NEAR(eig.vec(0, 0), -eig.vec(1, 0), 1e-15);
  EXPECT_NEAR(eig.vec(0, 1), eig.vec(1, 1), 1e-15);
}

TEST(Tridiag, RejectsBadShapes) {
  const std::vector<double> d{1.0, 2.0}, e{1.0, 2.0}, none{};
  EXPECT_THROW(solve_tridiagonal(d, e), ValidationError);
  EXPECT_THROW(solve_tridiagonal(none, none), ValidationError);
}

TEST(Tridiag, RandomReconstruction) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {3, 17, 50, 120}) {
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n - 1));
    for (double& x : d) x = u(rng);
    for (double& x : e) x = u(rng);
    const TridiagEigen eig = solve_tridiagonal(d, e);
    double tnorm = 0.0;
    for (int i = 0; i < n; ++i)
      tnorm = std::max(tnorm, std::fabs(d[static_cast<std::size_t>(i)]) + 2.0);
    for (int k = 0; k + 1 < n; ++k) EXPECT_LE(eig.values[static_cast<std::size_t>(k)], eig.values[static_cast<std::size_t>(k + 1)]);
    for (int k = 0; k < n; ++k) EXPECT_LE(residual(d, e, eig, k), 1e-12 * tnorm) << n << " " << k;
    // V diag(values) V^T == T and V^T V == I.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double t = 0.0, g = 0.0;
        for (int k = 0; k < n; ++k) {
          t += eig.vec(i, k) * eig.values[static_cast<std::size_t>(k)] * eig.vec(j, k);
          g += eig.vec(k, i) * eig.vec(k, j);
        }
        double want = 0.0;
        if (i == j) want = d[static_cast<std::size_t>(i)];
        if (j == i + 1) want = e[static_cast<std::size_t>(i)];
        if (i == j + 1) want = e[static_cast<std::size_t>(j)];
        ASSERT_NEAR(t, want, 1e-11);
        ASSERT_NEAR(g, i == j ? 1.0 : 0.0, 1e-12);
      }
  }
}

TEST(Tridiag, DeterministicSigns) {
  const std::vector<double> d{2.0, -1.0, 0.5, 3.0}, e{0.3, -0.7, 1.1};
  const TridiagEigen eig = solve_tridiagonal(d, e);
  for (int k = 0; k < eig.n; ++k) {
    double big = 0.0;
    for (double v : eig.column(k))
      if (std::fabs(v) > std::fabs(big)) big = v;
    EXPECT_GT(big, 0.0);
  }
}

TEST(TriSystem, SpaceOneOneOneOne) {
  const FourValentSpace sp = make_space(kClassical, 1, 1, 1, 1);
  const TriSystem sys = build_trisystem(sp);
  EXPECT_EQ(sys.sigma_sign, 1);
  EXPECT_EQ(sys.diag.size(), 2u);
  EXPECT_EQ(sys.diag[0], 0.0);
  const TridiagEigen eig = solve_tridiagonal(sys.diag, sys.off);
  EXPECT_NEAR(eig.values[0], -1.5, 1e-14);
  EXPECT_NEAR(eig.values[1], 0.5, 1e-14);
}

TEST(TriSystem, OneDimensional) {
  const FourValentSpace one = make_space(kClassical, 2, 0, 0, 2);
  ASSERT_EQ(one.n, 1);
  const TriSystem sys = build_trisystem(one);
  EXPECT_NEAR(sys.diag[0], static_cast<double>(lambda_eig_real(kClassical, 2, 0, 2)), 1e-15);
}

TEST(TriSystem, NegativeSigma) {
  const FourValentSpace odd = make_space(kClassical, 1, 1, 1, 3);
  ASSERT_GT(odd.n, 0);
  const TriSystem sys = build_trisystem(odd);
  EXPECT_EQ(sys.sigma_sign, -1);
  const TridiagEigen eig = solve_tridiagonal(sys.diag, sys.off);
  std::vector<double> lambdas;
  for (int l : odd.l_values()) lambdas.push_back(static_cast<double>(lambda_eig_real(kClassical, 1, 1, l)));
  std::sort(lambdas.begin(), lambdas.end());
  for (std::size_t k = 0; k < lambdas.size(); ++k) EXPECT_NEAR(eig.values[k], lambdas[k], 1e-13);
}

TEST(TriSystem, RejectsIndefiniteRegimes) {
  EXPECT_THROW(build_trisystem(make_space(QContext::real_q(2.0), 2, 2, 2, 2)), UnsupportedRegime);
  EXPECT_THROW(build_trisystem(make_space(QContext::complex_q({0.5, 0.5}), 2, 2, 2, 2)), UnsupportedRegime);
  EXPECT_THROW(build_trisystem(make_space(kClassical, 3, 1, 1, 0)), ValidationError);
}

TEST(EigenTable, Examples) {
  const FourValentSpace sp = make_space(kClassical, 1, 1, 1, 1);
  const TetTable t = tet_table_eigen(sp);
  for (int j : sp.j_values())
    for (int l : sp.l_values())
      EXPECT_NEAR(t.at(j, l).to_double(), tet_oracle(kClassical, {1, 1, 1, 1, j, l}).to_double(), 1e-13);

  const FourValentSpace one = make_space(kClassical, 2, 0, 0, 2);
  EXPECT_NEAR(tet_table_eigen(one).at(0, 2).to_double(), tet_oracle(kClassical, {2, 0, 0, 2, 0, 2}).to_double(),
              1e-14);

  const FourValentSpace r12 = make_space(QContext::root_of_unity(12), 4, 4, 4, 4);
  const TetTable e = tet_table_eigen(r12);
  const TetTable o = tet_table_oracle(r12);
  for (std::size_t k = 0; k < e.columns.size(); ++k) EXPECT_LE(column_deviation(o.columns[k], e.columns[k]), 1e-9);
}

TEST(EigenTable, AssignmentIsOneToOne) {
  for (const sweep::Regime& reg : sweep::definite_regimes({5, 9, 16}))
    sweep::spaces(reg.ctx, 9, [&](const FourValentSpace& sp) {
      const EigenSolution sol = solve_trisystem(build_trisystem(sp));
      std::vector<int> ls = sol.l_assignment;
      std::sort(ls.begin(), ls.end());
      ASSERT_EQ(ls, sp.l_values());
      for (int i = 0; i < sp.n; ++i) {
        const double lam = static_cast<double>(
            lambda_eig_real(sp.ctx, sp.a, sp.b, sol.l_assignment[static_cast<std::size_t>(i)]));
        ASSERT_NEAR(sol.decomposition.values[static_cast<std::size_t>(i)], lam, 1e-9 * std::max(1.0, std::fabs(lam)));
      }
    });
}

TEST(EigenTable, MatchesRecurrenceAndOracle) {
  for (const sweep::Regime& reg : sweep::definite_regimes({5, 7, 10, 16}))
    sweep::spaces(reg.ctx, 9, [&](const FourValentSpace& sp) {
      const TetTable e = tet_table_eigen(sp);
      const TetTable o = tet_table_oracle(sp);
      const TetTable r = tet_table_recur(sp);
      for (std::size_t k = 0; k < e.columns.size(); ++k) {
        ASSERT_LE(column_deviation(o.columns[k], e.columns[k]), 1e-9) << reg.name;
        ASSERT_LE(column_deviation(r.columns[k], e.columns[k]), 1e-9) << reg.name;
      }
    });
}

TEST(EigenTable, NormsAreDefinite) {
  for (const sweep::Regime& reg : sweep::definite_regimes({3, 6, 13}))
    sweep::spaces(reg.ctx, 10, [&](const FourValentSpace& sp) {
      const int want = sp.sigma() % 2 == 0 ? 1 : -1;
      for (int j : sp.j_values()) ASSERT_EQ(norm_j(sp, j).sign(), want);
      for (int l : sp.l_values()) ASSERT_EQ(norm_l(sp, l).sign(), want);
    });
}

TEST(EigenTable, LargeSpace) {
  const FourValentSpace sp = make_space(kClassical, 60, 60, 60, 60);
  const TetTable e = tet_table_eigen(sp);
  const TetTable r = tet_table_recur(sp, {true});
  for (std::size_t k = 0; k < e.columns.size(); ++k) EXPECT_LE(column_deviation(r.columns[k], e.columns[k]), 1e-9);
}
