#pragma once

// The recurrence in j as a real symmetric tridiagonal eigenproblem.
//
// In the definite regimes (classical, root of unity) every norm <j|j> has
// sign (-1)^sigma. Rescaling by S = diag(1 / sqrt|<j|j>|) gives
//
//   T = (-1)^sigma S Lbar S,
//
// whose eigenvalues are exactly lambda(a, b, l) and whose eigenvectors y(l)
// map back to Tet columns through Tet(j, l) = sqrt|<j|j>| sqrt|<l|l>| y_j(l),
// with the sign fixed by the single-term value at jmin.

#include <vector>

#include "qsixj/recur.hpp"
#include "qsixj/tridiag.hpp"

namespace qsixj {

struct TriSystem {
  FourValentSpace space;
  std::vector<double> diag;       // T_kk, ordered by j
  std::vector<double> off;        // T_{k,k+1}
  int sigma_sign = 1;             // (-1)^sigma
  std::vector<SignedLog> norms;   // <j|j>, ordered by j
};

// Throws UnsupportedRegime outside the classical and root-of-unity regimes,
// ValidationError for an empty space, NumericalError if a norm has the
// wrong sign.
TriSystem build_trisystem(const FourValentSpace& space);

struct EigenSolution {
  TridiagEigen decomposition;
  std::vector<int> l_assignment;  // eigen index -> admissible l
};

// Relative gap below which two lambda(a, b, l) values are treated as
// indistinguishable for the eigenvalue -> l assignment.
inline constexpr double kAssignmentTolerance = 1e-6;

// Diagonalizes T and assigns each eigenvalue to the nearest lambda(a, b, l).
// Throws NumericalError naming the pair when two lambda values are within
// kAssignmentTolerance of each other, or when the matching is not one-to-one.
EigenSolution solve_trisystem(const TriSystem& sys);

TetTable tet_table_eigen(const FourValentSpace& space);

}  // namespace qsixj
