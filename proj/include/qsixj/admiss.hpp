#pragma once

#include <vector>

#include "qsixj/qnum.hpp"

namespace qsixj {

// Edge labels are twice-spins throughout: label 2j for spin j.
using TwiceSpin = int;

// Triangle inequalities, even perimeter and, at a root of unity r,
// a, b, c <= r - 2 and a + b + c <= 2r - 4.
bool triple_admissible(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c);

// Largest admissible label for the regime (r - 2 at a root of unity), or -1
// when unbounded.
int label_bound(const QContext& ctx) noexcept;

// Four-valent space with free edges (a, b, c, d).
//
// Horizontal basis |j> joins (a, d) and (b, c) through an internal edge j;
// vertical basis |l> joins (a, b) and (c, d) through l. Admissible values
// are j in {jmin, jmin + 2, ..., jmax} and likewise for l; both ranges have
// exactly n entries. When n == 0 the ranges are empty.
struct FourValentSpace {
  QContext ctx;
  TwiceSpin a = 0, b = 0, c = 0, d = 0;
  int jmin = 0, jmax = -2;
  int lmin = 0, lmax = -2;
  int n = 0;

  bool empty() const noexcept { return n == 0; }
  bool has_j(int j) const noexcept { return n > 0 && j >= jmin && j <= jmax && (j - jmin) % 2 == 0; }
  bool has_l(int l) const noexcept { return n > 0 && l >= lmin && l <= lmax && (l - lmin) % 2 == 0; }
  // Position of j (resp. l) within its range.
  int j_index(int j) const noexcept { return (j - jmin) / 2; }
  int l_index(int l) const noexcept { return (l - lmin) / 2; }
  int j_at(int k) const noexcept { return jmin + 2 * k; }
  int l_at(int k) const noexcept { return lmin + 2 * k; }
  std::vector<int> j_values() const;
  std::vector<int> l_values() const;
  // (a + b + c + d) / 2; the sign of every basis norm is (-1)^sigma.
  int sigma() const noexcept { return (a + b + c + d) / 2; }
};

// Throws ValidationError for negative labels or labels above r - 2 at a
// root of unity. An empty space is a valid result.
FourValentSpace make_space(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d);

// Dimension formula n = max(0, n_bar) (or n_bar_r at a root of unity).
int space_dimension(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d);

// True iff the four-valent space is non-trivial. Labels outside the
// regime's label bound give false.
bool nonzero_conditions(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d);

}  // namespace qsixj
