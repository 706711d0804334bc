#pragma once

// Quantum integers, quantum factorials and signed-log arithmetic.
//
// Twice-spin networks are products and ratios of quantum factorials, which
// overflow a double for twice-spins beyond ~170 at q = 1. Real regimes are
// therefore evaluated as SignedLog (exact sign, natural-log magnitude).
// Generic complex q is evaluated directly in complex doubles and is only
// meant for moderate twice-spins (roughly <= 80).

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qsixj/errors.hpp"

namespace qsixj {

using CNum = std::complex<double>;

enum class Regime { Classical, RealQ, RootOfUnity, ComplexQ };

// Sign and log-magnitude of a real number. sign == 0 is exactly zero and
// logmag is then meaningless.
struct SignedLog {
  int sign = 0;
  double logmag = 0.0;

  static constexpr SignedLog zero() noexcept { return {0, 0.0}; }
  static constexpr SignedLog one() noexcept { return {1, 0.0}; }
  static SignedLog from_double(double x);
  static SignedLog from_log(int sign, double logmag) noexcept {
    return sign == 0 ? zero() : SignedLog{sign > 0 ? 1 : -1, logmag};
  }

  bool is_zero() const noexcept { return sign == 0; }
  // Over/underflow saturates to +-inf / +-0.
  double to_double() const noexcept;
  // |x|^p with the sign dropped; used for square roots of norms.
  SignedLog abs_pow(double p) const;

  SignedLog operator-() const noexcept { return {-sign, logmag}; }
  friend SignedLog operator*(SignedLog a, SignedLog b) noexcept {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.logmag + b.logmag};
  }
  friend SignedLog operator/(SignedLog a, SignedLog b);
  friend SignedLog operator+(SignedLog a, SignedLog b) noexcept;
  friend SignedLog operator-(SignedLog a, SignedLog b) noexcept { return a + (-b); }
  friend bool operator==(const SignedLog& a, const SignedLog& b) noexcept {
    return a.sign == b.sign && (a.sign == 0 || a.logmag == b.logmag);
  }
};

// Entry of the memoized quantum-factorial table. Stored with extended
// precision so products of many factorials keep double accuracy.
struct FactEntry {
  int sign;
  long double logmag;
};

// Immutable snapshot of the real factorial table, covering [0, size()).
class FactorialTable {
 public:
  FactorialTable() = default;
  explicit FactorialTable(std::shared_ptr<const std::vector<FactEntry>> data)
      : data_(std::move(data)) {}
  int size() const noexcept { return static_cast<int>(data_->size()); }
  const FactEntry& operator[](int n) const noexcept { return (*data_)[static_cast<std::size_t>(n)]; }

 private:
  std::shared_ptr<const std::vector<FactEntry>> data_;
};

class ComplexFactorialTable {
 public:
  ComplexFactorialTable() = default;
  explicit ComplexFactorialTable(std::shared_ptr<const std::vector<CNum>> data)
      : data_(std::move(data)) {}
  int size() const noexcept { return static_cast<int>(data_->size()); }
  const CNum& operator[](int n) const noexcept { return (*data_)[static_cast<std::size_t>(n)]; }

 private:
  std::shared_ptr<const std::vector<CNum>> data_;
};

// Deformation parameter regime. Immutable after construction; copies share
// one factorial memo, which grows on demand under an internal lock and is
// safe to use from several threads.
class QContext {
 public:
  // Classical regime.
  QContext();
  static QContext classical();
  // Real q > 0, q != 1.
  static QContext real_q(double q);
  // q = exp(i pi / r), r >= 2.
  static QContext root_of_unity(int r);
  // Generic complex q, q != 0 and q^2 != 1.
  static QContext complex_q(CNum q);

  Regime regime() const noexcept { return regime_; }
  bool is_real() const noexcept { return regime_ != Regime::ComplexQ; }
  // Classical and root-of-unity regimes carry a definite inner product.
  bool is_definite() const noexcept {
    return regime_ == Regime::Classical || regime_ == Regime::RootOfUnity;
  }
  double q() const noexcept { return q_; }
  int r() const noexcept { return r_; }
  CNum complex_q_value() const noexcept { return cq_; }
  // 1 / sin(pi / r); only meaningful at a root of unity.
  long double inv_sin_pi_r() const noexcept { return inv_sin_; }

  // Canonical text form: "classical", "real:<q>", "root:<r>", "complex:<re>,<im>".
  std::string describe() const;
  // Inverse of describe(); throws ValidationError.
  static QContext parse(const std::string& spec);

  // Snapshot of [k]! for k in [0, nmax]; real regimes only.
  FactorialTable factorials(int nmax) const;
  ComplexFactorialTable complex_factorials(int nmax) const;

 private:
  struct Memo;
  QContext(Regime regime, double q, int r, CNum cq);

  Regime regime_ = Regime::Classical;
  double q_ = 1.0;
  int r_ = 0;
  CNum cq_{1.0, 0.0};
  long double inv_sin_ = 0.0L;
  std::shared_ptr<Memo> memo_;
};

// Quantum integer [n]. Real regimes return a zero imaginary part.
CNum qint(const QContext& ctx, std::int64_t n);
// Real-valued quantum integer, extended precision. Throws UnsupportedRegime
// for ComplexQ. RealQ values may overflow to inf for large |n|.
long double qint_real(const QContext& ctx, std::int64_t n);
// Sign and extended-precision log-magnitude of [n]; never overflows.
FactEntry qint_log(const QContext& ctx, std::int64_t n);

SignedLog qint_sl(const QContext& ctx, std::int64_t n);
// [n]! in signed-log form. n < 0 is a contract violation.
SignedLog qfact_sl(const QContext& ctx, std::int64_t n);

std::string to_string(Regime regime);

}  // namespace qsixj
