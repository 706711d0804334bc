#include "qsixj/admiss.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qsixj {

int label_bound(const QContext& ctx) noexcept {
  return ctx.regime() == Regime::RootOfUnity ? ctx.r() - 2 : -1;
}

bool triple_admissible(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if (a > b + c || b > c + a || c > a + b) return false;
  if ((a + b + c) % 2 != 0) return false;
  if (ctx.regime() == Regime::RootOfUnity) {
    const int r = ctx.r();
    if (std::max({a, b, c}) > r - 2) return false;
    if (a + b + c > 2 * r - 4) return false;
  }
  return true;
}

std::vector<int> FourValentSpace::j_values() const {
  std::vector<int> out;
  for (int k = 0; k < n; ++k) out.push_back(j_at(k));
  return out;
}

std::vector<int> FourValentSpace::l_values() const {
  std::vector<int> out;
  for (int k = 0; k < n; ++k) out.push_back(l_at(k));
  return out;
}

int space_dimension(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d) {
  const int sum = a + b + c + d;
  if (sum % 2 != 0) return 0;
  const int s = sum / 2;
  const int lo = std::min({a, b, c, d});
  const int hi = std::max({a, b, c, d});
  int nbar = std::min(lo, s - hi) + 1;
  if (ctx.regime() == Regime::RootOfUnity)
    nbar = std::min(nbar, ctx.r() - 1 - std::max(hi, s - lo));
  return std::max(0, nbar);
}

FourValentSpace make_space(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d) {
  const TwiceSpin labels[4] = {a, b, c, d};
  static constexpr const char* names[4] = {"a", "b", "c", "d"};
  const int bound = label_bound(ctx);
  for (int i = 0; i < 4; ++i) {
    if (labels[i] < 0)
      throw ValidationError(std::string("label ") + names[i] + "=" + std::to_string(labels[i]) +
                            " is negative");
    if (bound >= 0 && labels[i] > bound)
      throw ValidationError(std::string("label ") + names[i] + "=" + std::to_string(labels[i]) +
                            " exceeds r-2=" + std::to_string(bound));
  }

  FourValentSpace sp{ctx, a, b, c, d};
  sp.n = space_dimension(ctx, a, b, c, d);
  if (sp.n == 0) return sp;

  sp.jmin = std::max(std::abs(a - d), std::abs(b - c));
  sp.jmax = std::min(a + d, b + c);
  sp.lmin = std::max(std::abs(a - b), std::abs(c - d));
  sp.lmax = std::min(a + b, c + d);
  if (ctx.regime() == Regime::RootOfUnity) {
    const int r = ctx.r();
    sp.jmax = std::min({sp.jmax, r - 2, 2 * r - 4 - std::max(a + d, b + c)});
    sp.lmax = std::min({sp.lmax, r - 2, 2 * r - 4 - std::max(a + b, c + d)});
  }
  if ((sp.jmax - sp.jmin) / 2 + 1 != sp.n || (sp.lmax - sp.lmin) / 2 + 1 != sp.n)
    throw std::logic_error("make_space: range and dimension formulas disagree");
  return sp;
}

bool nonzero_conditions(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c, TwiceSpin d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) return false;
  const int bound = label_bound(ctx);
  if (bound >= 0 && std::max({a, b, c, d}) > bound) return false;
  return space_dimension(ctx, a, b, c, d) > 0;
}

}  // namespace qsixj
