#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "exact_oracle.hpp"
#include "qsixj/errors.hpp"
#include "qsixj/ops.hpp"
#include "qsixj/recur.hpp"
#include "sweep.hpp"

using namespace qsixj;

namespace {

const QContext kClassical = QContext::classical();

double rel(const NetValue& v, double want) { return std::fabs(v.to_double() / want - 1.0); }

}  // namespace

TEST(Lambda, Examples) {
  EXPECT_NEAR(static_cast<double>(lambda_eig_real(kClassical, 1, 1, 2)), 0.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(lambda_eig_real(kClassical, 1, 1, 0)), -1.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(lambda_eig_real(kClassical, 2, 2, 0)), -4.0, 1e-15);
  EXPECT_THROW(lambda_eig_real(kClassical, 1, 1, 1), ValidationError);
}

TEST(Lambda, ClassicalClosedForm) {
  for (int a = 0; a <= 30; ++a)
    for (int b = 0; b <= 30; ++b)
      for (int l = (a + b) % 2; l <= 60; l += 2) {
        const double want = 0.25 * (l * (l + 2.0) - a * (a + 2.0) - b * (b + 2.0));
        EXPECT_NEAR(static_cast<double>(lambda_eig_real(kClassical, a, b, l)), want, 1e-12 * (1 + std::fabs(want)));
      }
}

TEST(Lambda, RootOfUnityMatchesDiagonalTet) {
  const QContext ctx = QContext::root_of_unity(5);
  const long double lam = lambda_eig_real(ctx, 1, 1, 2);
  const NetValue t = tet_oracle(ctx, {1, 1, 1, 1, 2, 2});
  const double want = static_cast<double>(lam) * theta(ctx, 1, 1, 2).to_double() /
                      (qint(ctx, 1).real() * qint(ctx, 1).real());
  EXPECT_NEAR(t.to_double(), want, 1e-13);
  EXPECT_NEAR(lambda_eig(ctx, 1, 1, 2).real(), static_cast<double>(lam), 1e-15);
}

TEST(Norms, Examples) {
  const FourValentSpace sp = make_space(kClassical, 1, 1, 1, 1);
  EXPECT_NEAR(norm_j(sp, 0).to_double(), 4.0, 1e-14);
  EXPECT_NEAR(norm_j(sp, 2).to_double(), 3.0, 1e-14);
  EXPECT_EQ(sp.sigma() % 2, 0);
  EXPECT_GT(norm_l(sp, 0).to_double(), 0.0);
  EXPECT_THROW(norm_j(sp, 1), ValidationError);
  EXPECT_THROW(norm_l(sp, 4), ValidationError);
}

TEST(Norms, TwoTermRatioCrossCheck) {
  // <j+2|j+2>/<j|j> from the explicit factorial ratios of theta and bubble.
  const FourValentSpace sp = make_space(kClassical, 7, 9, 8, 6);
  for (int k = 0; k + 1 < sp.n; ++k) {
    const int j = sp.j_at(k);
    const exact::cpp_rational want = exact::theta(sp.b, sp.c, j + 2) * exact::theta(sp.a, sp.d, j + 2) *
                                     exact::bubble(j) /
                                     (exact::theta(sp.b, sp.c, j) * exact::theta(sp.a, sp.d, j) * exact::bubble(j + 2));
    const double got = (norm_j(sp, j + 2) / norm_j(sp, j)).to_double();
    EXPECT_NEAR(got / static_cast<double>(exact::to_ld(want)), 1.0, 1e-13) << j;
  }
}

TEST(Coeffs, SpaceOneOneOneOne) {
  const FourValentSpace sp = make_space(kClassical, 1, 1, 1, 1);
  const RecurCoeffs c = build_coeffs(sp, 0);
  EXPECT_NEAR(static_cast<double>(c.real.lambda), -1.5, 1e-15);
  EXPECT_EQ(c.real.diag[0], 0.0L);
  const double lam121 = static_cast<double>(lambda_eig_real(kClassical, 1, 2, 1));
  EXPECT_NEAR(static_cast<double>(c.real.diag[1]), -2.0 * lam121 * lam121 / (2.0 * 4.0), 1e-15);
  EXPECT_EQ(c.real.sub[0], 0.0L);
  EXPECT_EQ(c.real.sup[1], 0.0L);
  EXPECT_NEAR(static_cast<double>(c.real.sup[0]), 1.0, 1e-15);
}

TEST(Coeffs, DiagonalVanishesAtRMinusTwo) {
  const QContext ctx = QContext::root_of_unity(7);
  const FourValentSpace sp = make_space(ctx, 3, 3, 2, 2);
  ASSERT_TRUE(sp.has_j(5));
  for (int l : sp.l_values()) {
    const RecurCoeffs c = build_coeffs(sp, l);
    EXPECT_EQ(c.real.diag[static_cast<std::size_t>(sp.j_index(5))], 0.0L);
  }
}

TEST(Coeffs, OracleColumnsSatisfyRecurrence) {
  for (const sweep::Regime& reg : sweep::definite_regimes({5, 7, 10, 16}))
    sweep::spaces(reg.ctx, 10, [&](const FourValentSpace& sp) {
      for (int l : sp.l_values()) {
        const TetColumn col = tet_column_oracle(sp, l);
        ASSERT_LE(recurrence_residual(build_coeffs(sp, l), col.values), 1e-9)
            << reg.name << " " << sp.a << sp.b << sp.c << sp.d << " l=" << l;
      }
    });
}

TEST(Column, Examples) {
  const FourValentSpace sp = make_space(kClassical, 1, 1, 1, 1);
  const TetColumn col = tet_column_recur(sp, 0);
  ASSERT_EQ(col.values.size(), 2u);
  EXPECT_LT(rel(col.at_j(0), tet_oracle(kClassical, {1, 1, 1, 1, 0, 0}).to_double()), 1e-14);
  EXPECT_LT(rel(col.at_j(2), tet_oracle(kClassical, {1, 1, 1, 1, 2, 0}).to_double()), 1e-14);
  EXPECT_EQ(col.method, Method::Recurrence);

  const FourValentSpace one = make_space(kClassical, 2, 0, 0, 2);
  const TetColumn single = tet_column_recur(one, 2);
  ASSERT_EQ(single.values.size(), 1u);
  EXPECT_LT(rel(single.values[0], tet_oracle(kClassical, {2, 0, 0, 2, 0, 2}).to_double()), 1e-15);

  const FourValentSpace r20 = make_space(QContext::root_of_unity(20), 6, 6, 6, 6);
  EXPECT_LE(column_deviation(tet_column_oracle(r20, 6), tet_column_recur(r20, 6)), 1e-9);
}

TEST(Column, EmptySpace) {
  const FourValentSpace sp = make_space(kClassical, 3, 1, 1, 0);
  EXPECT_TRUE(tet_column_recur(sp, 0).values.empty());
  EXPECT_TRUE(tet_column_oracle(sp, 0).values.empty());
  EXPECT_THROW(tet_column_recur(make_space(kClassical, 1, 1, 1, 1), 1), ValidationError);
}

TEST(Column, MatchesOracleOnSweep) {
  for (const sweep::Regime& reg : sweep::definite_regimes({5, 7, 10, 16}))
    sweep::spaces(reg.ctx, 10, [&](const FourValentSpace& sp) {
      for (int l : sp.l_values()) {
        const TetColumn ref = tet_column_oracle(sp, l);
        ASSERT_LE(column_deviation(ref, tet_column_recur(sp, l)), 1e-10) << reg.name;
        ASSERT_LE(column_deviation(ref, tet_column_recur(sp, l, {true})), 1e-10) << reg.name;
      }
    });
}

TEST(Column, GenericRegimesTwoSidedMatchesOracle) {
  for (const QContext& ctx : {QContext::real_q(1.5), QContext::real_q(0.4), QContext::complex_q({0.8, 0.5})})
    sweep::spaces(ctx, 7, [&](const FourValentSpace& sp) {
      for (int l : sp.l_values()) {
        const TetColumn ref = tet_column_oracle(sp, l);
        ASSERT_LE(column_deviation(ref, tet_column_recur(sp, l, {true})), 1e-9) << ctx.describe();
      }
    });
}

TEST(Column, TwoSidedHandlesForbiddenTail) {
  // The forward sweep loses the decaying tail near jmax; both ends are
  // checked against the exact value.
  const int L = 150;
  const FourValentSpace sp = make_space(kClassical, L, L, L, L);
  const TetColumn col = tet_column_recur(sp, L, {true});
  for (int j : {0, L, 2 * L - 2, 2 * L}) {
    const long double want = exact::to_ld(exact::tet(L, L, L, L, j, L));
    const NetValue& v = col.at_j(j);
    EXPECT_NEAR(v.sign() * std::exp(static_cast<long double>(v.logmag()) - std::log(std::fabs(want))),
                want > 0 ? 1.0L : -1.0L, 1e-9L)
        << "j=" << j;
  }
}

TEST(Column, NormalizationAndOrthogonality) {
  for (const sweep::Regime& reg : sweep::definite_regimes({7, 16}))
    sweep::spaces(reg.ctx, 9, [&](const FourValentSpace& sp) {
      const TetTable t = tet_table_recur(sp);
      for (int x = 0; x < sp.n; ++x)
        for (int y = 0; y < sp.n; ++y) {
          const SignedLog s = basis_overlap(sp, t.columns[static_cast<std::size_t>(x)].values,
                                            t.columns[static_cast<std::size_t>(y)].values);
          const SignedLog nx = norm_l(sp, sp.l_at(x)).real();
          if (x == y) {
            ASSERT_EQ(s.sign, nx.sign);
            ASSERT_NEAR(s.logmag, nx.logmag, 1e-8);
          } else {
            const SignedLog ny = norm_l(sp, sp.l_at(y)).real();
            ASSERT_LE(s.sign == 0 ? 0.0 : std::exp(s.logmag - 0.5 * (nx.logmag + ny.logmag)), 1e-8);
          }
        }
    });
}

TEST(Column, LinearOperationCount) {
  std::vector<std::uint64_t> counts;
  for (int n : {200, 2000}) {
    const QContext ctx = QContext::classical();
    const FourValentSpace sp = make_space(ctx, n - 1, n - 1, n - 1, n - 1);
    ops::reset();
    tet_column_recur(sp, sp.l_at(sp.n / 2));
    counts.push_back(ops::count());
  }
  const double ratio = static_cast<double>(counts[1]) / static_cast<double>(counts[0]);
  EXPECT_GT(ratio, 8.0);
  EXPECT_LT(ratio, 12.5);
}

TEST(Column, LargeLabelsStayFinite) {
  const FourValentSpace sp = make_space(QContext::real_q(3.0), 300, 300, 300, 300);
  const TetColumn col = tet_column_recur(sp, 300);
  for (const NetValue& v : col.values) ASSERT_TRUE(v.sign() == 0 || std::isfinite(v.logmag()));
}

TEST(Deviation, ShapeMismatch) {
  const FourValentSpace sp = make_space(kClassical, 2, 2, 2, 2);
  EXPECT_THROW(column_deviation(tet_column_oracle(sp, 0), tet_column_oracle(sp, 2)), ValidationError);
  EXPECT_EQ(column_deviation(tet_column_oracle(sp, 2), tet_column_oracle(sp, 2)), 0.0);
}
