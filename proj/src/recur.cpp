#include "qsixj/recur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "qsixj/ops.hpp"

namespace qsixj {

std::string to_string(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::Recurrence: return "recurrence";
    case Method::Eigen: return "eigen";
  }
  return "?";
}

namespace {

void require_parity(TwiceSpin a, TwiceSpin b, TwiceSpin l) {
  if ((a + b + l) % 2 != 0)
    throw ValidationError("lambda(" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(l) + "): a+b+l must be even");
}

template <class Q>
auto lambda_from(Q qi, TwiceSpin a, TwiceSpin b, TwiceSpin l) {
  return (qi((a - b + l) / 2) * qi((-a + b + l) / 2) - qi((a + b - l) / 2) * qi((a + b + l) / 2 + 2)) /
         qi(2);
}

void require_index(const FourValentSpace& sp, int v, bool ok, const char* what) {
  if (!ok)
    throw ValidationError(std::string(what) + "=" + std::to_string(v) +
                          " is not admissible for the space (" + std::to_string(sp.a) + "," +
                          std::to_string(sp.b) + "," + std::to_string(sp.c) + "," +
                          std::to_string(sp.d) + ")");
}

template <class T>
double magnitude(const T& x) {
  return static_cast<double>(std::abs(x));
}

inline long double conj_of(long double x) { return x; }
inline CNum conj_of(CNum x) { return std::conj(x); }

// log10(largest summand / |sum|) for one recurrence step.
template <class T>
double step_cancellation(const T& p1, const T& p2, const T& sum) {
  const double top = std::max(magnitude(p1), magnitude(p2));
  if (top == 0.0) return 0.0;
  const double s = magnitude(sum);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, std::log10(top / s));
}

// Real-regime sweep, with values kept as (mantissa, shared log scale) pairs.
struct RealSweep {
  std::vector<SignedLog> value;
  std::vector<double> cancel;
};

// Direction +1: start at index 0 and solve each row for the next entry.
// Direction -1: start at index n-1 and solve each row for the previous one.
RealSweep sweep_real(const ThreeTermRows<long double>& rows, SignedLog seed, int direction) {
  const int n = static_cast<int>(rows.diag.size());
  RealSweep out{std::vector<SignedLog>(static_cast<std::size_t>(n)),
                std::vector<double>(static_cast<std::size_t>(n), 0.0)};
  const int first = direction > 0 ? 0 : n - 1;
  out.value[static_cast<std::size_t>(first)] = seed;
  long double prev = 0.0L;
  long double cur = seed.sign;
  long double scale = seed.logmag;
  for (int step = 0; step + 1 < n; ++step) {
    ops::add();
    const int k = direction > 0 ? step : n - 1 - step;
    const std::size_t uk = static_cast<std::size_t>(k);
    const long double towards = direction > 0 ? rows.sup[uk] : rows.sub[uk];
    const long double behind = direction > 0 ? rows.sub[uk] : rows.sup[uk];
    if (towards == 0.0L) throw std::logic_error("recurrence: vanishing off-diagonal coefficient inside the range");
    const long double p1 = (rows.diag[uk] - rows.lambda) * cur;
    const long double p2 = behind * prev;
    const long double s = p1 + p2;
    const long double next = -s / towards;
    prev = cur;
    cur = next;
    const long double big = std::max(std::fabs(prev), std::fabs(cur));
    if (big > 1e150L || (big < 1e-150L && big > 0.0L)) {
      prev /= big;
      cur /= big;
      scale += std::log(big);
    }
    const std::size_t dst = static_cast<std::size_t>(k + direction);
    out.value[dst] = cur == 0.0L ? SignedLog::zero()
                                 : SignedLog{cur > 0 ? 1 : -1,
                                             static_cast<double>(std::log(std::fabs(cur)) + scale)};
    out.cancel[dst] = step_cancellation(p1, p2, s);
  }
  return out;
}

std::vector<CNum> sweep_complex(const ThreeTermRows<CNum>& rows, CNum seed, int direction,
                                std::vector<double>& cancel) {
  const int n = static_cast<int>(rows.diag.size());
  std::vector<CNum> out(static_cast<std::size_t>(n));
  cancel.assign(static_cast<std::size_t>(n), 0.0);
  const int first = direction > 0 ? 0 : n - 1;
  out[static_cast<std::size_t>(first)] = seed;
  CNum prev{0.0, 0.0};
  CNum cur = seed;
  for (int step = 0; step + 1 < n; ++step) {
    ops::add();
    const int k = direction > 0 ? step : n - 1 - step;
    const std::size_t uk = static_cast<std::size_t>(k);
    const CNum towards = direction > 0 ? rows.sup[uk] : rows.sub[uk];
    const CNum behind = direction > 0 ? rows.sub[uk] : rows.sup[uk];
    if (towards == CNum(0.0, 0.0)) throw NumericalError("recurrence: vanishing off-diagonal coefficient");
    const CNum p1 = (rows.diag[uk] - rows.lambda) * cur;
    const CNum p2 = behind * prev;
    const CNum s = p1 + p2;
    prev = cur;
    cur = -s / towards;
    if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
      throw NumericalError("complex recurrence overflowed");
    out[static_cast<std::size_t>(k + direction)] = cur;
    cancel[static_cast<std::size_t>(k + direction)] = step_cancellation(p1, p2, s);
  }
  return out;
}

// Index at which the forward and backward sweeps are joined: the middle of
// the oscillatory stretch where |diag - lambda| <= |c_{k-1}| + |c_k|, with
// c_k = sqrt|sup_k sub_{k+1}| the symmetrized coupling. Without such a
// stretch, the row closest to it.
template <class T>
std::size_t match_index(const ThreeTermRows<T>& rows) {
  const std::size_t n = rows.diag.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) c[k] = std::sqrt(magnitude(rows.sup[k] * rows.sub[k + 1]));
  std::size_t lo = n, hi = 0, best = 0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double gap = magnitude(rows.diag[k] - rows.lambda) - (k > 0 ? c[k - 1] : 0.0) - c[k];
    if (gap <= 0.0) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    if (gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  return lo < n ? (lo + hi) / 2 : best;
}

// Least-squares factor f with fwd ~ f * bwd over indices m-1..m+1, with
// entries weighted by 1/sqrt|N_j| so that all rows count alike.
template <class T, class Get>
T match_factor(std::size_t m, std::size_t n, Get get) {
  T num{}, den{};
  for (std::size_t k = m > 0 ? m - 1 : 0; k <= std::min(m + 1, n - 1); ++k) {
    const auto [f, b] = get(k);
    num += f * conj_of(b);
    den += b * conj_of(b);
  }
  return num / den;
}

}  // namespace

CNum lambda_eig(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin l) {
  require_parity(a, b, l);
  if (ctx.is_real()) return {static_cast<double>(lambda_eig_real(ctx, a, b, l)), 0.0};
  return lambda_from([&](int n) { return qint(ctx, n); }, a, b, l);
}

long double lambda_eig_real(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin l) {
  require_parity(a, b, l);
  return lambda_from([&](int n) { return qint_real(ctx, n); }, a, b, l);
}

NetValue norm_j(const FourValentSpace& sp, int j) {
  require_index(sp, j, sp.has_j(j), "j");
  return theta(sp.ctx, sp.b, sp.c, j) * theta(sp.ctx, sp.a, sp.d, j) / bubble(sp.ctx, j);
}

NetValue norm_l(const FourValentSpace& sp, int l) {
  require_index(sp, l, sp.has_l(l), "l");
  return theta(sp.ctx, sp.a, sp.b, l) * theta(sp.ctx, sp.c, sp.d, l) / bubble(sp.ctx, l);
}

double TetColumn::log_inf_norm() const {
  double top = -std::numeric_limits<double>::infinity();
  for (const NetValue& v : values)
    if (v.sign() != 0) top = std::max(top, v.logmag());
  return top;
}

RecurCoeffs build_coeffs(const FourValentSpace& sp, int l) {
  if (sp.empty()) throw ValidationError("recurrence needs a non-empty four-valent space");
  require_index(sp, l, sp.has_l(l), "l");
  const QContext& ctx = sp.ctx;
  const int n = sp.n;
  const auto un = static_cast<std::size_t>(n);

  RecurCoeffs out;
  out.space = sp;
  out.l = l;
  out.complex = !ctx.is_real();

  // Norm ratios N_j / N_{j-2} from fresh theta/bubble evaluations.
  std::vector<NetValue> norms(un);
  for (int k = 0; k < n; ++k) norms[static_cast<std::size_t>(k)] = norm_j(sp, sp.j_at(k));

  auto fill = [&](auto& rows, auto qi, auto ratio) {
    rows.sub.assign(un, {});
    rows.diag.assign(un, {});
    rows.sup.assign(un, {});
    rows.lambda = lambda_from(qi, sp.a, sp.b, l);
    for (int k = 0; k < n; ++k) {
      ops::add();
      const auto uk = static_cast<std::size_t>(k);
      const int j = sp.j_at(k);
      if (k + 1 < n) rows.sup[uk] = qi((sp.a + sp.d - j) / 2) * qi((sp.b + sp.c - j) / 2);
      if (k > 0)
        rows.sub[uk] = ratio(k) * qi((sp.a + sp.d - j + 2) / 2) * qi((sp.b + sp.c - j + 2) / 2);
      const auto den = qi(j) * qi(j + 2);
      // j = 0 and, at a root of unity, j = r - 2 make (j, j, 2) inadmissible
      // and the diagonal matrix element vanishes.
      if (j > 0 && den != decltype(den){})
        rows.diag[uk] = -qi(2) * lambda_from(qi, sp.a, j, sp.d) * lambda_from(qi, sp.b, j, sp.c) / den;
    }
  };

  if (out.complex) {
    fill(out.cplx, [&](int m) { return qint(ctx, m); },
         [&](int k) { return norms[static_cast<std::size_t>(k)].complex() /
                             norms[static_cast<std::size_t>(k - 1)].complex(); });
  } else {
    fill(out.real, [&](int m) { return qint_real(ctx, m); },
         [&](int k) {
           const SignedLog r = norms[static_cast<std::size_t>(k)].real() /
                               norms[static_cast<std::size_t>(k - 1)].real();
           return static_cast<long double>(r.sign) * std::exp(static_cast<long double>(r.logmag));
         });
  }
  return out;
}

TetColumn tet_column_recur(const FourValentSpace& sp, int l, RecurOptions opts) {
  TetColumn col;
  col.space = sp;
  col.l = l;
  col.method = Method::Recurrence;
  if (sp.empty()) return col;

  const RecurCoeffs coeffs = build_coeffs(sp, l);
  const NetValue seed = tet_oracle(sp.ctx, {sp.a, sp.b, sp.c, sp.d, sp.jmin, l});
  if (seed.sign() == 0) throw NumericalError("recurrence seed Tet(jmin, l) vanished");
  const int n = sp.n;
  col.values.resize(static_cast<std::size_t>(n));

  if (coeffs.complex) {
    std::vector<double> cancel;
    std::vector<CNum> fwd = sweep_complex(coeffs.cplx, seed.complex(), +1, cancel);
    if (opts.two_sided && n > 2) {
      std::vector<double> bcancel;
      const std::vector<CNum> bwd = sweep_complex(coeffs.cplx, {1.0, 0.0}, -1, bcancel);
      const std::size_t m = match_index(coeffs.cplx);
      const CNum factor = match_factor<CNum>(m, fwd.size(), [&](std::size_t k) {
        return std::pair<CNum, CNum>{fwd[k], bwd[k]};
      });
      if (factor != CNum(0.0, 0.0) && std::isfinite(std::abs(factor)))
        for (std::size_t k = m + 1; k < fwd.size(); ++k) {
          fwd[k] = bwd[k] * factor;
          cancel[k] = bcancel[k];
        }
    }
    for (std::size_t k = 0; k < fwd.size(); ++k) col.values[k] = NetValue::of(fwd[k], cancel[k]);
    return col;
  }

  RealSweep fwd = sweep_real(coeffs.real, seed.real(), +1);
  if (opts.two_sided && n > 2) {
    const RealSweep bwd = sweep_real(coeffs.real, SignedLog::one(), -1);
    const std::size_t m = match_index(coeffs.real);
    // Work relative to the forward and backward values at m to stay in range.
    std::vector<double> half_norm(fwd.value.size());
    for (std::size_t k = 0; k < half_norm.size(); ++k)
      half_norm[k] = 0.5 * norm_j(sp, sp.j_at(static_cast<int>(k))).real().logmag;
    const double fref = fwd.value[m].sign ? fwd.value[m].logmag - half_norm[m] : 0.0;
    const double bref = bwd.value[m].sign ? bwd.value[m].logmag - half_norm[m] : 0.0;
    auto scaled = [&](const SignedLog& v, std::size_t k, double ref) {
      return v.sign == 0 ? 0.0L : v.sign * std::exp(static_cast<long double>(v.logmag - half_norm[k] - ref));
    };
    const long double factor = match_factor<long double>(m, fwd.value.size(), [&](std::size_t k) {
      return std::pair<long double, long double>{scaled(fwd.value[k], k, fref), scaled(bwd.value[k], k, bref)};
    });
    if (factor != 0.0L && std::isfinite(factor)) {
      const SignedLog f{factor > 0 ? 1 : -1, static_cast<double>(std::log(std::fabs(factor)) + fref - bref)};
      for (std::size_t k = m + 1; k < fwd.value.size(); ++k) {
        fwd.value[k] = bwd.value[k] * f;
        fwd.cancel[k] = bwd.cancel[k];
      }
    }
    std::vector<NetValue> tmp(fwd.value.size());
    for (std::size_t k = 0; k < tmp.size(); ++k) tmp[k] = NetValue::of(fwd.value[k]);
    const SignedLog ratio = norm_l(sp, l).real() / basis_overlap(sp, tmp, tmp);
    if (ratio.sign <= 0) throw NumericalError("two-sided recurrence: normalization ratio is not positive");
    const SignedLog rescale = ratio.abs_pow(0.5);
    for (SignedLog& v : fwd.value) v = v * rescale;
  }
  for (std::size_t k = 0; k < fwd.value.size(); ++k)
    col.values[k] = NetValue::of(fwd.value[k], fwd.cancel[k]);
  return col;
}

TetColumn tet_column_oracle(const FourValentSpace& sp, int l) {
  TetColumn col;
  col.space = sp;
  col.l = l;
  col.method = Method::Oracle;
  if (sp.empty()) return col;
  require_index(sp, l, sp.has_l(l), "l");
  col.values.reserve(static_cast<std::size_t>(sp.n));
  for (int k = 0; k < sp.n; ++k)
    col.values.push_back(tet_oracle(sp.ctx, {sp.a, sp.b, sp.c, sp.d, sp.j_at(k), l}));
  return col;
}

TetTable tet_table_recur(const FourValentSpace& sp, RecurOptions opts) {
  TetTable t{sp, Method::Recurrence, {}};
  for (int k = 0; k < sp.n; ++k) t.columns.push_back(tet_column_recur(sp, sp.l_at(k), opts));
  return t;
}

TetTable tet_table_oracle(const FourValentSpace& sp) {
  TetTable t{sp, Method::Oracle, {}};
  for (int k = 0; k < sp.n; ++k) t.columns.push_back(tet_column_oracle(sp, sp.l_at(k)));
  return t;
}

double recurrence_residual(const RecurCoeffs& coeffs, std::span<const NetValue> values) {
  if (coeffs.complex) throw UnsupportedRegime("recurrence_residual: real regimes only");
  const auto& rows = coeffs.real;
  const std::size_t n = rows.diag.size();
  if (values.size() != n) throw ValidationError("recurrence_residual: column length mismatch");
  double top = -std::numeric_limits<double>::infinity();
  for (const NetValue& v : values)
    if (v.sign() != 0) top = std::max(top, v.logmag());
  if (!std::isfinite(top)) return 0.0;
  std::vector<long double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const SignedLog v = values[k].real();
    x[k] = v.sign == 0 ? 0.0L : v.sign * std::exp(static_cast<long double>(v.logmag - top));
  }
  long double worst = 0.0L;
  for (std::size_t k = 0; k < n; ++k) {
    long double r = (rows.diag[k] - rows.lambda) * x[k];
    if (k > 0) r += rows.sub[k] * x[k - 1];
    if (k + 1 < n) r += rows.sup[k] * x[k + 1];
    worst = std::max(worst, std::fabs(r));
  }
  return static_cast<double>(worst);
}

double column_deviation(const TetColumn& ref, const TetColumn& got) {
  if (ref.values.size() != got.values.size() || ref.l != got.l)
    throw ValidationError("column_deviation: columns have different shapes");
  if (ref.values.empty()) return 0.0;
  const bool cplx = ref.values.front().is_complex() || got.values.front().is_complex();
  double worst = 0.0;
  if (cplx) {
    double norm = 0.0;
    for (const NetValue& v : ref.values) norm = std::max(norm, std::abs(v.complex()));
    if (norm == 0.0) norm = 1.0;
    for (std::size_t k = 0; k < ref.values.size(); ++k)
      worst = std::max(worst, std::abs(got.values[k].complex() - ref.values[k].complex()) / norm);
    return worst;
  }
  double top = ref.log_inf_norm();
  if (!std::isfinite(top)) top = 0.0;
  auto scaled = [top](const NetValue& v) {
    const SignedLog x = v.real();
    return x.sign == 0 ? 0.0L : x.sign * std::exp(static_cast<long double>(x.logmag) - top);
  };
  for (std::size_t k = 0; k < ref.values.size(); ++k)
    worst = std::max(worst, static_cast<double>(std::fabs(scaled(got.values[k]) - scaled(ref.values[k]))));
  return worst;
}

SignedLog basis_overlap(const FourValentSpace& sp, std::span<const NetValue> x,
                        std::span<const NetValue> y) {
  if (!sp.ctx.is_real()) throw UnsupportedRegime("basis_overlap: real regimes only");
  if (x.size() != static_cast<std::size_t>(sp.n) || y.size() != x.size())
    throw ValidationError("basis_overlap: column length mismatch");
  // Accumulate relative to the largest term to keep the sum in one pass.
  std::vector<SignedLog> terms(x.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    terms[k] = x[k].real() * y[k].real() / norm_j(sp, sp.j_at(static_cast<int>(k))).real();
    if (terms[k].sign != 0) top = std::max(top, terms[k].logmag);
  }
  if (!std::isfinite(top)) return SignedLog::zero();
  long double sum = 0.0L;
  for (const SignedLog& t : terms)
    if (t.sign != 0) sum += t.sign * std::exp(static_cast<long double>(t.logmag - top));
  if (sum == 0.0L) return SignedLog::zero();
  return {sum > 0 ? 1 : -1, static_cast<double>(top + std::log(std::fabs(sum)))};
}

}  // namespace qsixj
