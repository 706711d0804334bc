#include <gtest/gtest.h>

#include <vector>

#include "qsixj/admiss.hpp"
#include "qsixj/errors.hpp"

using namespace qsixj;

namespace {

const QContext kClassical = QContext::classical();

std::vector<int> enumerate(const QContext& ctx, int x, int y, int u, int v) {
  std::vector<int> out;
  for (int k = 0; k <= 64; ++k)
    if (triple_admissible(ctx, x, y, k) && triple_admissible(ctx, u, v, k)) out.push_back(k);
  return out;
}

}  // namespace

TEST(Triple, Examples) {
  EXPECT_TRUE(triple_admissible(kClassical, 1, 1, 2));
  EXPECT_FALSE(triple_admissible(kClassical, 1, 1, 1));
  EXPECT_FALSE(triple_admissible(QContext::root_of_unity(4), 2, 2, 2));
  EXPECT_TRUE(triple_admissible(QContext::root_of_unity(5), 2, 2, 2));
  EXPECT_FALSE(triple_admissible(kClassical, 4, 1, 1));
  EXPECT_FALSE(triple_admissible(kClassical, -2, 1, 1));
  EXPECT_FALSE(triple_admissible(QContext::root_of_unity(5), 4, 2, 2));
}

TEST(Triple, Symmetric) {
  const QContext ctx = QContext::root_of_unity(9);
  for (int a = 0; a <= 10; ++a)
    for (int b = 0; b <= 10; ++b)
      for (int c = 0; c <= 10; ++c) {
        const bool t = triple_admissible(ctx, a, b, c);
        EXPECT_EQ(t, triple_admissible(ctx, b, a, c));
        EXPECT_EQ(t, triple_admissible(ctx, c, b, a));
        EXPECT_EQ(t, triple_admissible(ctx, a, c, b));
      }
}

TEST(Space, Examples) {
  const FourValentSpace s = make_space(kClassical, 1, 1, 1, 1);
  EXPECT_EQ(s.jmin, 0);
  EXPECT_EQ(s.jmax, 2);
  EXPECT_EQ(s.lmin, 0);
  EXPECT_EQ(s.lmax, 2);
  EXPECT_EQ(s.n, 2);

  // j joins (a,d) = (2,2) and (b,c) = (0,0), so only j = 0 survives.
  const FourValentSpace t = make_space(kClassical, 2, 0, 0, 2);
  EXPECT_EQ(t.jmin, 0);
  EXPECT_EQ(t.jmax, 0);
  EXPECT_EQ(t.lmin, 2);
  EXPECT_EQ(t.lmax, 2);
  EXPECT_EQ(t.n, 1);

  const FourValentSpace u = make_space(QContext::root_of_unity(4), 2, 2, 2, 2);
  EXPECT_EQ(u.n, 1);
  EXPECT_EQ(u.j_values(), std::vector<int>{0});
  EXPECT_EQ(u.l_values(), std::vector<int>{0});

  EXPECT_EQ(make_space(kClassical, 3, 1, 1, 0).n, 0);
  EXPECT_TRUE(make_space(kClassical, 3, 1, 1, 0).empty());
  EXPECT_TRUE(make_space(kClassical, 3, 1, 1, 0).j_values().empty());
}

TEST(Space, NonzeroConditionsExamples) {
  EXPECT_TRUE(nonzero_conditions(kClassical, 1, 1, 1, 1));
  EXPECT_FALSE(nonzero_conditions(kClassical, 4, 0, 0, 0));
  EXPECT_TRUE(nonzero_conditions(QContext::root_of_unity(5), 3, 3, 3, 3));
  EXPECT_TRUE(nonzero_conditions(QContext::root_of_unity(4), 2, 2, 2, 2));
  EXPECT_FALSE(nonzero_conditions(QContext::root_of_unity(4), 2, 2, 2, 0));
  EXPECT_FALSE(nonzero_conditions(QContext::root_of_unity(4), 3, 3, 3, 3));
}

TEST(Space, RejectsBadLabels) {
  EXPECT_THROW(make_space(kClassical, 1, -1, 1, 1), ValidationError);
  try {
    make_space(QContext::root_of_unity(5), 1, 1, 4, 1);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("c=4"), std::string::npos) << e.what();
  }
}

TEST(Space, ParityFollowsVertices) {
  // (1,0,0,1): j couples (a,d) = (1,1), so j is even although a+b is odd.
  const FourValentSpace s = make_space(kClassical, 1, 0, 0, 1);
  EXPECT_EQ(s.j_values(), std::vector<int>{0});
  EXPECT_EQ(s.l_values(), std::vector<int>{1});
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 8; ++b)
      for (int c = 0; c <= 8; ++c)
        for (int d = 0; d <= 8; ++d) {
          const FourValentSpace sp = make_space(kClassical, a, b, c, d);
          for (int j : sp.j_values()) {
            EXPECT_EQ((j - a - d) % 2, 0);
            EXPECT_EQ((j - b - c) % 2, 0);
          }
          for (int l : sp.l_values()) {
            EXPECT_EQ((l - a - b) % 2, 0);
            EXPECT_EQ((l - c - d) % 2, 0);
          }
        }
}

TEST(Space, RangesMatchEnumeration) {
  std::vector<QContext> ctxs{kClassical};
  for (int r = 2; r <= 12; ++r) ctxs.push_back(QContext::root_of_unity(r));
  for (const QContext& ctx : ctxs) {
    const int hi = label_bound(ctx) >= 0 ? std::min(9, label_bound(ctx)) : 9;
    for (int a = 0; a <= hi; ++a)
      for (int b = 0; b <= hi; ++b)
        for (int c = 0; c <= hi; ++c)
          for (int d = 0; d <= hi; ++d) {
            const FourValentSpace sp = make_space(ctx, a, b, c, d);
            ASSERT_EQ(sp.j_values(), enumerate(ctx, a, d, b, c)) << ctx.describe() << " " << a << b << c << d;
            ASSERT_EQ(sp.l_values(), enumerate(ctx, a, b, c, d)) << ctx.describe() << " " << a << b << c << d;
            ASSERT_EQ(sp.n, space_dimension(ctx, a, b, c, d));
            ASSERT_EQ(nonzero_conditions(ctx, a, b, c, d), sp.n > 0);
          }
  }
}

TEST(Space, DimensionSymmetry) {
  const QContext ctx = QContext::root_of_unity(11);
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; b <= 9; ++b)
      for (int c = 0; c <= 9; ++c)
        for (int d = 0; d <= 9; ++d) {
          const int n = space_dimension(ctx, a, b, c, d);
          EXPECT_EQ(n, space_dimension(ctx, c, d, a, b));
          EXPECT_EQ(n, space_dimension(ctx, d, c, b, a));
        }
}

TEST(Space, IndexHelpers) {
  const FourValentSpace sp = make_space(kClassical, 4, 6, 5, 3);
  ASSERT_GT(sp.n, 0);
  for (int k = 0; k < sp.n; ++k) {
    EXPECT_EQ(sp.j_index(sp.j_at(k)), k);
    EXPECT_EQ(sp.l_index(sp.l_at(k)), k);
    EXPECT_TRUE(sp.has_j(sp.j_at(k)));
    EXPECT_TRUE(sp.has_l(sp.l_at(k)));
  }
  EXPECT_FALSE(sp.has_j(sp.jmin + 1));
  EXPECT_FALSE(sp.has_j(sp.jmax + 2));
  EXPECT_EQ(sp.sigma(), 9);
}
