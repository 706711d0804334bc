#pragma once

// Linear-time evaluation of a Tet column via the three-term recurrence in j.
//
// With N_j = <j|j> the horizontal-basis norms and x_j = Tet(a,b,c,d; j, l),
// every admissible row j satisfies
//
//   sub(j) x_{j-2} + (diag(j) - lambda(a,b,l)) x_j + sup(j) x_{j+2} = 0,
//
//   sup(j)  = [(a+d-j)/2] [(b+c-j)/2]
//   diag(j) = -[2] lambda(a,j,d) lambda(b,j,c) / ([j][j+2])   (0 when j = 0)
//   sub(j)  = (N_j / N_{j-2}) sup(j-2)
//
// with terms outside [jmin, jmax] dropped. The column is seeded at jmin,
// where the explicit sum has a single term.

#include <span>
#include <string>
#include <vector>

#include "qsixj/admiss.hpp"
#include "qsixj/networks.hpp"

namespace qsixj {

enum class Method { Oracle, Recurrence, Eigen };

std::string to_string(Method m);

// lambda(a, b, l) = ([(a-b+l)/2][(-a+b+l)/2] - [(a+b-l)/2][(a+b+l)/2 + 2]) / [2],
// the eigenvalue of the angular-momentum-like operator on |l>. Requires
// a + b + l even.
CNum lambda_eig(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin l);
long double lambda_eig_real(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin l);

// <j|j> = theta(b,c,j) theta(a,d,j) / bubble(j).
NetValue norm_j(const FourValentSpace& space, int j);
// <l|l> = theta(a,b,l) theta(c,d,l) / bubble(l).
NetValue norm_l(const FourValentSpace& space, int l);

template <class T>
struct ThreeTermRows {
  std::vector<T> sub, diag, sup;  // indexed by position of j in the range
  T lambda{};
};

struct RecurCoeffs {
  FourValentSpace space;
  int l = 0;
  bool complex = false;
  ThreeTermRows<long double> real;  // real regimes
  ThreeTermRows<CNum> cplx;         // ComplexQ
};

// sub(j), diag(j), sup(j) for every admissible j, plus lambda_l. Out-of-range
// neighbours (sub at jmin, sup at jmax) are exactly zero.
RecurCoeffs build_coeffs(const FourValentSpace& space, int l);

struct TetColumn {
  FourValentSpace space;
  int l = 0;
  Method method = Method::Oracle;
  std::vector<NetValue> values;  // values[k] = Tet(...; space.j_at(k), l)

  const NetValue& at_j(int j) const { return values.at(static_cast<std::size_t>(space.j_index(j))); }
  // max_j |Tet(...; j, l)| as a log-magnitude (-inf for an empty column).
  double log_inf_norm() const;
};

// Full n x n table, one column per admissible l (ordered by l).
struct TetTable {
  FourValentSpace space;
  Method method = Method::Oracle;
  std::vector<TetColumn> columns;

  const NetValue& at(int j, int l) const {
    return columns.at(static_cast<std::size_t>(space.l_index(l))).at_j(j);
  }
};

struct RecurOptions {
  // Forward sweep from jmin plus backward sweep from jmax, joined in the
  // middle of the oscillatory stretch of the column and renormalized with
  // the normalization condition. For deep classically forbidden tails.
  bool two_sided = false;
};

TetColumn tet_column_recur(const FourValentSpace& space, int l, RecurOptions opts = {});

// Per-entry explicit-sum evaluation of the same column (quadratic total cost).
TetColumn tet_column_oracle(const FourValentSpace& space, int l);

TetTable tet_table_recur(const FourValentSpace& space, RecurOptions opts = {});
TetTable tet_table_oracle(const FourValentSpace& space);

// max_j |row residual| / max_j |x_j| after substituting the column values
// into the recurrence. Real regimes only.
double recurrence_residual(const RecurCoeffs& coeffs, std::span<const NetValue> values);

// max_k |got_k - ref_k| / max_k |ref_k|: entrywise deviation of a column
// measured against the reference column's infinity norm (0 for two empty
// columns). Throws ValidationError when the columns have different shapes.
double column_deviation(const TetColumn& ref, const TetColumn& got);

// sum_j x_j y_j / <j|j> for two columns of the same space. Real regimes only.
SignedLog basis_overlap(const FourValentSpace& space, std::span<const NetValue> x,
                        std::span<const NetValue> y);

}  // namespace qsixj
