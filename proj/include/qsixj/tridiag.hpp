#pragma once

#include <span>
#include <vector>

namespace qsixj {

// Eigen-decomposition of a real symmetric tridiagonal matrix.
struct TridiagEigen {
  int n = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major n x n; column k pairs with values[k]

  double vec(int row, int col) const {
    return vectors[static_cast<std::size_t>(col) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(row)];
  }
  std::span<const double> column(int col) const {
    return {vectors.data() + static_cast<std::size_t>(col) * static_cast<std::size_t>(n),
            static_cast<std::size_t>(n)};
  }
};

// Implicit QL iteration with Wilkinson shifts (the EISPACK tql2 scheme).
// diag has n >= 1 entries, off has n - 1. At most kMaxSweeps iterations per
// eigenvalue; otherwise throws NumericalError naming the unconverged block.
inline constexpr int kMaxSweeps = 30;
TridiagEigen solve_tridiagonal(std::span<const double> diag, std::span<const double> off);

}  // namespace qsixj
