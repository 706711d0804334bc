#include "qsixj/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qsixj/errors.hpp"
#include "qsixj/ops.hpp"

namespace qsixj {

TridiagEigen solve_tridiagonal(std::span<const double> diag, std::span<const double> off) {
  const int n = static_cast<int>(diag.size());
  if (n < 1) throw ValidationError("solve_tridiagonal: empty matrix");
  if (off.size() + 1 != diag.size())
    throw ValidationError("solve_tridiagonal: off-diagonal must have n-1 entries");

  const auto un = static_cast<std::size_t>(n);
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(un, 0.0);  // e[i] couples rows i and i+1; e[n-1] = 0
  std::copy(off.begin(), off.end(), e.begin());
  std::vector<double> z(un * un, 0.0);
  for (std::size_t i = 0; i < un; ++i) z[i * un + i] = 1.0;
  auto zat = [&](int row, int col) -> double& {
    return z[static_cast<std::size_t>(col) * un + static_cast<std::size_t>(row)];
  };

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      // Look for a negligible off-diagonal element to split the matrix.
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxSweeps)
        throw NumericalError("solve_tridiagonal: no convergence in block [" + std::to_string(l) +
                             ", " + std::to_string(m) + "] after " + std::to_string(kMaxSweeps) +
                             " iterations");
      ops::add();
      // Wilkinson shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      for (i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          // Underflow: deflate and restart this block.
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < n; ++k) {
          f = zat(k, i + 1);
          zat(k, i + 1) = s * zat(k, i) + c * f;
          zat(k, i) = c * zat(k, i) - s * f;
        }
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }

  std::vector<int> order(un);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });

  TridiagEigen out;
  out.n = n;
  out.values.resize(un);
  out.vectors.resize(un * un);
  for (std::size_t k = 0; k < un; ++k) {
    const auto src = static_cast<std::size_t>(order[k]);
    out.values[k] = d[src];
    // Deterministic sign: largest-magnitude component positive.
    double big = 0.0;
    for (std::size_t row = 0; row < un; ++row)
      if (std::fabs(z[src * un + row]) > std::fabs(big)) big = z[src * un + row];
    const double flip = big < 0.0 ? -1.0 : 1.0;
    for (std::size_t row = 0; row < un; ++row) out.vectors[k * un + row] = flip * z[src * un + row];
  }
  return out;
}

}  // namespace qsixj
