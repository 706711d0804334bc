#include "qsixj/networks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsixj/ops.hpp"

namespace qsixj {

// ---------------------------------------------------------------------------
// NetValue

SignedLog NetValue::real() const {
  if (complex_) throw UnsupportedRegime("complex network value has no signed-log form");
  return exact_zero_ ? SignedLog::zero() : real_;
}

CNum NetValue::complex() const {
  if (exact_zero_) return {0.0, 0.0};
  if (complex_) return cval_;
  return {real_.to_double(), 0.0};
}

int NetValue::sign() const {
  if (exact_zero_) return 0;
  if (complex_) return cval_ == CNum(0.0, 0.0) ? 0 : 1;
  return real_.sign;
}

double NetValue::logmag() const {
  if (exact_zero_) return -std::numeric_limits<double>::infinity();
  if (complex_) return std::log(std::abs(cval_));
  return real_.sign == 0 ? -std::numeric_limits<double>::infinity() : real_.logmag;
}

double NetValue::to_double() const {
  if (exact_zero_) return 0.0;
  if (complex_) return cval_.real();
  return real_.to_double();
}

NetValue operator*(const NetValue& x, const NetValue& y) {
  if (x.is_exact_zero() || y.is_exact_zero())
    return NetValue::exact_zero(x.is_complex() || y.is_complex());
  const double cancel = std::max(x.cancel_digits(), y.cancel_digits());
  if (x.is_complex() || y.is_complex()) return NetValue::of(x.complex() * y.complex(), cancel);
  return NetValue::of(x.real() * y.real(), cancel);
}

NetValue operator/(const NetValue& x, const NetValue& y) {
  if (y.is_exact_zero()) {
    if (x.is_exact_zero()) return NetValue::exact_zero(x.is_complex() || y.is_complex());
    throw NumericalError("inadmissible denominator");
  }
  if (x.is_exact_zero()) return NetValue::exact_zero(x.is_complex() || y.is_complex());
  const double cancel = std::max(x.cancel_digits(), y.cancel_digits());
  if (x.is_complex() || y.is_complex()) {
    const CNum den = y.complex();
    if (den == CNum(0.0, 0.0)) throw NumericalError("division by a numerically zero network");
    return NetValue::of(x.complex() / den, cancel);
  }
  if (y.real().is_zero()) throw NumericalError("division by a numerically zero network");
  return NetValue::of(x.real() / y.real(), cancel);
}

// ---------------------------------------------------------------------------
// Networks

namespace {

struct SumArgs {
  int a[4];  // (a+d+j)/2, (b+c+j)/2, (a+b+l)/2, (c+d+l)/2
  int b[3];  // (b+d+j+l)/2, (a+c+j+l)/2, (a+b+c+d)/2
};

SumArgs sum_args(const TetArgs& t) {
  return {{(t.a + t.d + t.j) / 2, (t.b + t.c + t.j) / 2, (t.a + t.b + t.l) / 2, (t.c + t.d + t.l) / 2},
          {(t.b + t.d + t.j + t.l) / 2, (t.a + t.c + t.j + t.l) / 2, (t.a + t.b + t.c + t.d) / 2}};
}

void check_complex(const CNum& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw NumericalError("complex evaluation overflowed or hit a vanishing quantum integer");
}

NetValue tet_real(const QContext& ctx, const TetArgs& t, const SumArgs& s, int lo, int hi) {
  const int nmax = std::max({s.b[2] + 1, t.a, t.b, t.c, t.d, t.j, t.l});
  const FactorialTable f = ctx.factorials(nmax);

  thread_local std::vector<long double> logs;
  thread_local std::vector<int> signs;
  logs.resize(static_cast<std::size_t>(hi - lo + 1));
  signs.resize(logs.size());

  long double top = -std::numeric_limits<long double>::infinity();
  for (int S = lo; S <= hi; ++S) {
    ops::add();
    const std::size_t k = static_cast<std::size_t>(S - lo);
    const FactEntry& num = f[S + 1];
    if (num.sign == 0) {
      signs[k] = 0;
      continue;
    }
    int sign = (S % 2 == 0 ? 1 : -1) * num.sign;
    long double lg = num.logmag;
    for (int ai : s.a) {
      const FactEntry& e = f[S - ai];
      sign *= e.sign;
      lg -= e.logmag;
    }
    for (int bj : s.b) {
      const FactEntry& e = f[bj - S];
      sign *= e.sign;
      lg -= e.logmag;
    }
    signs[k] = sign;
    logs[k] = lg;
    top = std::max(top, lg);
  }

  long double pos = 0.0L, neg = 0.0L;
  for (std::size_t k = 0; k < logs.size(); ++k) {
    if (signs[k] == 0) continue;
    const long double v = std::exp(logs[k] - top);
    (signs[k] > 0 ? pos : neg) += v;
  }
  if (pos == 0.0L && neg == 0.0L) return NetValue::of(SignedLog::zero());
  const long double sum = pos - neg;
  if (sum == 0.0L) return NetValue::of(SignedLog::zero(), std::numeric_limits<double>::infinity());

  int sign = sum > 0 ? 1 : -1;
  long double lg = top + std::log(std::fabs(sum));
  for (int ai : s.a)
    for (int bj : s.b) {
      const FactEntry& e = f[bj - ai];
      sign *= e.sign;
      lg += e.logmag;
    }
  for (int x : {t.a, t.b, t.c, t.d, t.j, t.l}) {
    const FactEntry& e = f[x];
    if (e.sign == 0) throw std::logic_error("tet_oracle: vanishing factorial of an admissible label");
    sign *= e.sign;
    lg -= e.logmag;
  }
  if (sign == 0) return NetValue::of(SignedLog::zero());
  const double cancel = static_cast<double>(-std::log10(std::fabs(sum)));
  return NetValue::of(SignedLog{sign, static_cast<double>(lg)}, std::max(0.0, cancel));
}

NetValue tet_complex(const QContext& ctx, const TetArgs& t, const SumArgs& s, int lo, int hi) {
  const int nmax = std::max({s.b[2] + 1, t.a, t.b, t.c, t.d, t.j, t.l});
  const ComplexFactorialTable f = ctx.complex_factorials(nmax);
  CNum sum{0.0, 0.0};
  double top = 0.0;
  for (int S = lo; S <= hi; ++S) {
    ops::add();
    CNum den{1.0, 0.0};
    for (int ai : s.a) den *= f[S - ai];
    for (int bj : s.b) den *= f[bj - S];
    const CNum term = (S % 2 == 0 ? 1.0 : -1.0) * f[S + 1] / den;
    check_complex(term);
    top = std::max(top, std::abs(term));
    sum += term;
  }
  CNum pre{1.0, 0.0};
  for (int ai : s.a)
    for (int bj : s.b) pre *= f[bj - ai];
  for (int x : {t.a, t.b, t.c, t.d, t.j, t.l}) pre /= f[x];
  const CNum value = pre * sum;
  check_complex(value);
  const double mag = std::abs(sum);
  const double cancel = mag == 0.0 ? std::numeric_limits<double>::infinity()
                                   : std::max(0.0, std::log10(top / mag));
  return NetValue::of(value, cancel);
}

}  // namespace

NetValue bubble(const QContext& ctx, TwiceSpin j) {
  const bool cplx = !ctx.is_real();
  if (j < 0) return NetValue::exact_zero(cplx);
  if (ctx.regime() == Regime::RootOfUnity && j > ctx.r() - 2) return NetValue::exact_zero();
  const double parity = j % 2 == 0 ? 1.0 : -1.0;
  if (cplx) return NetValue::of(parity * qint(ctx, j + 1));
  const SignedLog v = qint_sl(ctx, j + 1);
  return NetValue::of(j % 2 == 0 ? v : -v);
}

NetValue theta(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c) {
  const bool cplx = !ctx.is_real();
  if (!triple_admissible(ctx, a, b, c)) return NetValue::exact_zero(cplx);
  const int s = (a + b + c) / 2;
  if (cplx) {
    const ComplexFactorialTable f = ctx.complex_factorials(s + 1);
    const CNum v = (s % 2 == 0 ? 1.0 : -1.0) * f[s + 1] * f[s - a] * f[s - b] * f[s - c] /
                   (f[a] * f[b] * f[c]);
    check_complex(v);
    return NetValue::of(v);
  }
  const FactorialTable f = ctx.factorials(s + 1);
  int sign = s % 2 == 0 ? 1 : -1;
  long double lg = 0.0L;
  for (int k : {s + 1, s - a, s - b, s - c}) {
    sign *= f[k].sign;
    lg += f[k].logmag;
  }
  for (int k : {a, b, c}) {
    if (f[k].sign == 0) throw std::logic_error("theta: vanishing factorial of an admissible label");
    sign *= f[k].sign;
    lg -= f[k].logmag;
  }
  return NetValue::of(SignedLog::from_log(sign, static_cast<double>(lg)));
}

bool tet_admissible(const QContext& ctx, const TetArgs& t) {
  return triple_admissible(ctx, t.a, t.b, t.l) && triple_admissible(ctx, t.c, t.d, t.l) &&
         triple_admissible(ctx, t.a, t.d, t.j) && triple_admissible(ctx, t.c, t.b, t.j);
}

TetSumRange tet_sum_range(const TetArgs& t) {
  const SumArgs s = sum_args(t);
  return {*std::max_element(std::begin(s.a), std::end(s.a)),
          *std::min_element(std::begin(s.b), std::end(s.b))};
}

NetValue tet_oracle(const QContext& ctx, const TetArgs& t) {
  if (!tet_admissible(ctx, t)) return NetValue::exact_zero(!ctx.is_real());
  const SumArgs s = sum_args(t);
  const TetSumRange range = tet_sum_range(t);
  if (range.lo > range.hi)
    throw std::logic_error("tet_oracle: empty summation range for admissible arguments");
  return ctx.is_real() ? tet_real(ctx, t, s, range.lo, range.hi)
                       : tet_complex(ctx, t, s, range.lo, range.hi);
}

NetValue sixj_kl(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin j, TwiceSpin c,
                 TwiceSpin d, TwiceSpin l) {
  const NetValue tet = tet_oracle(ctx, {a, b, c, d, j, l});
  if (tet.is_exact_zero()) return tet;
  return tet * bubble(ctx, j) / (theta(ctx, a, d, j) * theta(ctx, b, c, j));
}

NetValue sixj_rw(const QContext& ctx, TwiceSpin j1, TwiceSpin j2, TwiceSpin j3, TwiceSpin J1,
                 TwiceSpin J2, TwiceSpin J3) {
  if (ctx.regime() != Regime::Classical)
    throw UnsupportedRegime("Racah-Wigner convention is defined for the classical regime only");
  const NetValue tet = tet_oracle(ctx, {J1, J2, j1, j2, J3, j3});
  if (tet.is_exact_zero()) return tet;
  const NetValue den = theta(ctx, J1, J2, j3) * theta(ctx, j1, j2, j3) * theta(ctx, J1, j2, J3) *
                       theta(ctx, J2, j1, J3);
  if (den.is_exact_zero()) throw NumericalError("inadmissible denominator");
  return NetValue::of(tet.real() / den.real().abs_pow(0.5), tet.cancel_digits());
}

}  // namespace qsixj
