#pragma once

// Closed-form evaluation of the bubble, theta and Tet networks, and the
// 6j-symbols built on them.

#include "qsixj/admiss.hpp"
#include "qsixj/qnum.hpp"

namespace qsixj {

// Value of a closed network. Real regimes carry a SignedLog, ComplexQ a
// complex double. The exact-zero flag is set only when an admissibility
// condition failed; a numerically vanishing sum is an ordinary value.
//
// cancel_digits is log10(largest summand / |result|) for values produced by
// an alternating sum, i.e. the number of decimal digits lost to
// cancellation (+inf when the sum cancelled to exactly zero).
class NetValue {
 public:
  NetValue() = default;

  static NetValue exact_zero(bool complex = false) {
    NetValue v;
    v.complex_ = complex;
    return v;
  }
  static NetValue of(SignedLog v, double cancel_digits = 0.0) {
    NetValue out;
    out.exact_zero_ = false;
    out.real_ = v;
    out.cancel_ = cancel_digits;
    return out;
  }
  static NetValue of(CNum v, double cancel_digits = 0.0) {
    NetValue out;
    out.exact_zero_ = false;
    out.complex_ = true;
    out.cval_ = v;
    out.cancel_ = cancel_digits;
    return out;
  }

  bool is_exact_zero() const noexcept { return exact_zero_; }
  bool is_complex() const noexcept { return complex_; }
  double cancel_digits() const noexcept { return cancel_; }
  void set_cancel_digits(double c) noexcept { cancel_ = c; }

  // Real value; throws UnsupportedRegime for complex values.
  SignedLog real() const;
  // Complex value; real values are converted and may overflow.
  CNum complex() const;
  // Sign of the real value; for complex values 1 unless zero.
  int sign() const;
  // log |value|.
  double logmag() const;
  // Decimal value of the real part; +-inf on overflow.
  double to_double() const;

  friend NetValue operator*(const NetValue& x, const NetValue& y);
  // Throws NumericalError("inadmissible denominator") when y is an exact
  // zero and x is not.
  friend NetValue operator/(const NetValue& x, const NetValue& y);

 private:
  bool exact_zero_ = true;
  bool complex_ = false;
  SignedLog real_{};
  CNum cval_{0.0, 0.0};
  double cancel_ = 0.0;
};

// Arguments of Tet(a, b, c, d; j, l). The vertex triples are (a, b, l),
// (c, d, l), (a, d, j) and (c, b, j).
struct TetArgs {
  TwiceSpin a = 0, b = 0, c = 0, d = 0, j = 0, l = 0;
};

// Summation bounds [lo, hi] of the explicit Tet formula for admissible
// arguments. A single term means lo == hi.
struct TetSumRange {
  int lo = 0;
  int hi = -1;
  int terms() const noexcept { return hi - lo + 1; }
};

// Closed loop (-1)^j [j + 1]; exact zero for j < 0 and, at a root of unity,
// for j > r - 2.
NetValue bubble(const QContext& ctx, TwiceSpin j);

// Theta network; exact zero unless (a, b, c) is admissible.
NetValue theta(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin c);

// True iff all four vertex triples of the Tet network are admissible.
bool tet_admissible(const QContext& ctx, const TetArgs& t);

TetSumRange tet_sum_range(const TetArgs& t);

// Explicit single-sum evaluation of Tet(a, b, c, d; j, l). The alternating
// sum is accumulated in extended precision as separate positive and
// negative groups scaled by the largest term.
NetValue tet_oracle(const QContext& ctx, const TetArgs& t);

// Kauffman-Lins 6j-symbol {a b j; c d l}:
//   Tet(a, b, c, d; j, l) * bubble(j) / (theta(a, d, j) theta(b, c, j)).
NetValue sixj_kl(const QContext& ctx, TwiceSpin a, TwiceSpin b, TwiceSpin j, TwiceSpin c,
                 TwiceSpin d, TwiceSpin l);

// Racah-Wigner 6j-symbol {j1/2 j2/2 j3/2; J1/2 J2/2 J3/2}, arguments given as
// twice-spins. Classical regime only:
//   Tet(J1, J2, j1, j2; J3, j3) / sqrt|theta(J1,J2,j3) theta(j1,j2,j3)
//                                      theta(J1,j2,J3) theta(J2,j1,J3)|
// The product under the root has sign (-1)^(j3 - J3); the positive root is
// taken, which reproduces the standard phase convention.
NetValue sixj_rw(const QContext& ctx, TwiceSpin j1, TwiceSpin j2, TwiceSpin j3, TwiceSpin J1,
                 TwiceSpin J2, TwiceSpin J3);

}  // namespace qsixj
