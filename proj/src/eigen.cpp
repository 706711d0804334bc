#include "qsixj/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qsixj {

TriSystem build_trisystem(const FourValentSpace& sp) {
  if (!sp.ctx.is_definite())
    throw UnsupportedRegime("eigen method needs a definite inner product (classical or root of unity), got " +
                            sp.ctx.describe());
  if (sp.empty()) throw ValidationError("eigen method needs a non-empty four-valent space");

  TriSystem sys;
  sys.space = sp;
  sys.sigma_sign = sp.sigma() % 2 == 0 ? 1 : -1;
  const auto un = static_cast<std::size_t>(sp.n);
  sys.norms.resize(un);
  for (int k = 0; k < sp.n; ++k) {
    const SignedLog nk = norm_j(sp, sp.j_at(k)).real();
    if (nk.sign != sys.sigma_sign)
      throw NumericalError("norm <j|j> at j=" + std::to_string(sp.j_at(k)) +
                           " does not have sign (-1)^sigma");
    sys.norms[static_cast<std::size_t>(k)] = nk;
  }

  // diag(j) of the recurrence is Lbar_jj / <j|j>, which already equals
  // sgn Lbar_jj / |<j|j>|; the lambda_l of the chosen column is unused.
  const RecurCoeffs rc = build_coeffs(sp, sp.lmin);
  sys.diag.resize(un);
  sys.off.resize(un - 1);
  for (std::size_t k = 0; k < un; ++k) sys.diag[k] = static_cast<double>(rc.real.diag[k]);
  for (std::size_t k = 0; k + 1 < un; ++k) {
    const double ratio = std::exp(0.5 * (sys.norms[k + 1].logmag - sys.norms[k].logmag));
    sys.off[k] = static_cast<double>(rc.real.sup[k]) * ratio;
  }
  return sys;
}

EigenSolution solve_trisystem(const TriSystem& sys) {
  const FourValentSpace& sp = sys.space;
  EigenSolution sol{solve_tridiagonal(sys.diag, sys.off), {}};

  std::vector<double> lambdas(static_cast<std::size_t>(sp.n));
  double scale = 0.0;
  for (int k = 0; k < sp.n; ++k) {
    lambdas[static_cast<std::size_t>(k)] =
        static_cast<double>(lambda_eig_real(sp.ctx, sp.a, sp.b, sp.l_at(k)));
    scale = std::max(scale, std::fabs(lambdas[static_cast<std::size_t>(k)]));
  }
  for (int x = 0; x < sp.n; ++x)
    for (int y = x + 1; y < sp.n; ++y)
      if (std::fabs(lambdas[static_cast<std::size_t>(x)] - lambdas[static_cast<std::size_t>(y)]) <=
          kAssignmentTolerance * scale)
        throw NumericalError("ambiguous eigenvalue assignment: lambda(l=" + std::to_string(sp.l_at(x)) +
                             ") and lambda(l=" + std::to_string(sp.l_at(y)) + ") coincide");

  std::vector<bool> used(static_cast<std::size_t>(sp.n), false);
  sol.l_assignment.resize(static_cast<std::size_t>(sp.n));
  for (int i = 0; i < sp.n; ++i) {
    const double ev = sol.decomposition.values[static_cast<std::size_t>(i)];
    int best = 0;
    for (int k = 1; k < sp.n; ++k)
      if (std::fabs(lambdas[static_cast<std::size_t>(k)] - ev) <
          std::fabs(lambdas[static_cast<std::size_t>(best)] - ev))
        best = k;
    if (used[static_cast<std::size_t>(best)])
      throw NumericalError("eigenvalue assignment is not one-to-one at l=" + std::to_string(sp.l_at(best)));
    used[static_cast<std::size_t>(best)] = true;
    sol.l_assignment[static_cast<std::size_t>(i)] = sp.l_at(best);
  }
  return sol;
}

TetTable tet_table_eigen(const FourValentSpace& sp) {
  const TriSystem sys = build_trisystem(sp);
  const EigenSolution sol = solve_trisystem(sys);
  const auto un = static_cast<std::size_t>(sp.n);

  TetTable table{sp, Method::Eigen, std::vector<TetColumn>(un)};
  for (int i = 0; i < sp.n; ++i) {
    const int l = sol.l_assignment[static_cast<std::size_t>(i)];
    const std::span<const double> y = sol.decomposition.column(i);
    const SignedLog lnorm = norm_l(sp, l).real();
    double ymax = 0.0;
    for (double v : y) ymax = std::max(ymax, std::fabs(v));

    TetColumn& col = table.columns[static_cast<std::size_t>(sp.l_index(l))];
    col.space = sp;
    col.l = l;
    col.method = Method::Eigen;
    col.values.resize(un);

    const NetValue seed = tet_oracle(sp.ctx, {sp.a, sp.b, sp.c, sp.d, sp.jmin, l});
    const int flip = (y[0] > 0 ? 1 : -1) == seed.sign() ? 1 : -1;
    for (std::size_t k = 0; k < un; ++k) {
      if (y[k] == 0.0) {
        col.values[k] = NetValue::of(SignedLog::zero());
        continue;
      }
      const SignedLog v{flip * (y[k] > 0 ? 1 : -1),
                        0.5 * (sys.norms[k].logmag + lnorm.logmag) + std::log(std::fabs(y[k]))};
      col.values[k] = NetValue::of(v, std::log10(ymax / std::fabs(y[k])));
    }
  }
  return table;
}

}  // namespace qsixj
