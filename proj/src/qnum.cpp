#include "qsixj/qnum.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>

#include "qsixj/ops.hpp"

namespace qsixj {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;
constexpr long double kLn2 = std::numbers::ln2_v<long double>;

// log(sinh(x)) for x > 0 without overflow.
long double log_sinh(long double x) {
  if (x > 20.0L) return x + std::log1p(-std::exp(-2.0L * x)) - kLn2;
  return std::log(std::sinh(x));
}

}  // namespace

// ---------------------------------------------------------------------------
// SignedLog

SignedLog SignedLog::from_double(double x) {
  if (!std::isfinite(x)) throw ValidationError("SignedLog: non-finite value");
  if (x == 0.0) return zero();
  return {x > 0 ? 1 : -1, std::log(std::fabs(x))};
}

double SignedLog::to_double() const noexcept {
  if (sign == 0) return 0.0;
  return sign * std::exp(logmag);
}

SignedLog SignedLog::abs_pow(double p) const {
  if (sign == 0) {
    if (p <= 0) throw std::domain_error("SignedLog: non-positive power of zero");
    return zero();
  }
  return {1, logmag * p};
}

SignedLog operator/(SignedLog a, SignedLog b) {
  if (b.sign == 0) throw std::domain_error("SignedLog: division by zero");
  if (a.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.logmag - b.logmag};
}

SignedLog operator+(SignedLog a, SignedLog b) noexcept {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.logmag < b.logmag) std::swap(a, b);
  const double ratio = std::exp(b.logmag - a.logmag);
  if (a.sign == b.sign) return {a.sign, a.logmag + std::log1p(ratio)};
  if (ratio == 1.0) return SignedLog::zero();
  return {a.sign, a.logmag + std::log1p(-ratio)};
}

// ---------------------------------------------------------------------------
// QContext

struct QContext::Memo {
  std::mutex mu;
  std::shared_ptr<const std::vector<FactEntry>> real;
  long double real_comp = 0.0L;  // Kahan compensation of the last log sum
  std::shared_ptr<const std::vector<CNum>> cplx;
};

QContext::QContext(Regime regime, double q, int r, CNum cq)
    : regime_(regime), q_(q), r_(r), cq_(cq), memo_(std::make_shared<Memo>()) {
  if (regime_ == Regime::RootOfUnity) inv_sin_ = 1.0L / std::sin(kPi / r_);
}

QContext::QContext() : QContext(Regime::Classical, 1.0, 0, {1.0, 0.0}) {}

QContext QContext::classical() { return QContext(Regime::Classical, 1.0, 0, {1.0, 0.0}); }

QContext QContext::real_q(double q) {
  if (!std::isfinite(q) || q <= 0.0)
    throw ValidationError("real q must be finite and > 0");
  if (q == 1.0) throw ValidationError("real q = 1 is the classical regime");
  return QContext(Regime::RealQ, q, 0, {q, 0.0});
}

QContext QContext::root_of_unity(int r) {
  if (r < 2) throw ValidationError("root of unity requires r >= 2, got " + std::to_string(r));
  return QContext(Regime::RootOfUnity, 1.0, r, std::polar(1.0, M_PI / r));
}

QContext QContext::complex_q(CNum q) {
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag()))
    throw ValidationError("complex q must be finite");
  if (q == CNum(0.0, 0.0)) throw ValidationError("q = 0 is not allowed");
  if (q * q == CNum(1.0, 0.0)) throw ValidationError("q^2 = 1 makes [n] degenerate");
  return QContext(Regime::ComplexQ, 1.0, 0, q);
}

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Classical: return "classical";
    case Regime::RealQ: return "real";
    case Regime::RootOfUnity: return "root";
    case Regime::ComplexQ: return "complex";
  }
  return "?";
}

namespace {

// Shortest decimal form that parses back to the same double.
std::string shortest(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string QContext::describe() const {
  switch (regime_) {
    case Regime::Classical: return "classical";
    case Regime::RealQ: return "real:" + shortest(q_);
    case Regime::RootOfUnity: return "root:" + std::to_string(r_);
    case Regime::ComplexQ: return "complex:" + shortest(cq_.real()) + "," + shortest(cq_.imag());
  }
  return "?";
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ValidationError("cannot parse " + what + " '" + s + "'");
  return v;
}

}  // namespace

QContext QContext::parse(const std::string& spec) {
  if (spec == "classical" || spec == "1") return classical();
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ValidationError("unknown regime '" + spec + "'");
  const std::string head = spec.substr(0, colon);
  const std::string tail = spec.substr(colon + 1);
  if (head == "root") {
    int r = 0;
    auto [p, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), r);
    if (ec != std::errc() || p != tail.data() + tail.size())
      throw ValidationError("cannot parse root of unity order '" + tail + "'");
    return root_of_unity(r);
  }
  if (head == "real") return real_q(parse_double(tail, "real q"));
  if (head == "complex") {
    const auto comma = tail.find(',');
    if (comma == std::string::npos) throw ValidationError("complex q needs 'complex:<re>,<im>'");
    return complex_q({parse_double(tail.substr(0, comma), "Re q"),
                      parse_double(tail.substr(comma + 1), "Im q")});
  }
  throw ValidationError("unknown regime '" + spec + "'");
}

FactorialTable QContext::factorials(int nmax) const {
  if (regime_ == Regime::ComplexQ)
    throw UnsupportedRegime("signed-log factorials need a real regime");
  if (nmax < 0) throw ValidationError("factorial of negative argument " + std::to_string(nmax));
  std::lock_guard lock(memo_->mu);
  if (memo_->real && memo_->real->size() > static_cast<std::size_t>(nmax))
    return FactorialTable(memo_->real);

  auto next = std::make_shared<std::vector<FactEntry>>();
  std::size_t have = 0;
  if (memo_->real) {
    *next = *memo_->real;
    have = next->size();
  }
  const std::size_t want = std::max<std::size_t>(nmax + 1, 2 * have);
  next->reserve(want);
  if (have == 0) {
    next->push_back({1, 0.0L});
    memo_->real_comp = 0.0L;
    have = 1;
  }
  long double comp = memo_->real_comp;
  for (std::size_t k = have; k < want; ++k) {
    const FactEntry prev = next->back();
    const FactEntry f = qint_log(*this, static_cast<std::int64_t>(k));
    if (prev.sign == 0 || f.sign == 0) {
      next->push_back({0, 0.0L});
      continue;
    }
    // Kahan summation of the log magnitudes.
    const long double y = f.logmag - comp;
    const long double t = prev.logmag + y;
    comp = (t - prev.logmag) - y;
    next->push_back({prev.sign * f.sign, t});
  }
  ops::add(want - have);
  memo_->real_comp = comp;
  memo_->real = next;
  return FactorialTable(memo_->real);
}

ComplexFactorialTable QContext::complex_factorials(int nmax) const {
  if (nmax < 0) throw ValidationError("factorial of negative argument " + std::to_string(nmax));
  std::lock_guard lock(memo_->mu);
  if (memo_->cplx && memo_->cplx->size() > static_cast<std::size_t>(nmax))
    return ComplexFactorialTable(memo_->cplx);
  auto next = std::make_shared<std::vector<CNum>>();
  if (memo_->cplx) *next = *memo_->cplx;
  if (next->empty()) next->push_back({1.0, 0.0});
  const std::size_t want = std::max<std::size_t>(nmax + 1, 2 * next->size());
  for (std::size_t k = next->size(); k < want; ++k)
    next->push_back(next->back() * qint(*this, static_cast<std::int64_t>(k)));
  memo_->cplx = next;
  return ComplexFactorialTable(memo_->cplx);
}

// ---------------------------------------------------------------------------
// Quantum integers

FactEntry qint_log(const QContext& ctx, std::int64_t n) {
  if (n == 0) return {0, 0.0L};
  switch (ctx.regime()) {
    case Regime::Classical:
      return {n > 0 ? 1 : -1, std::log(static_cast<long double>(n > 0 ? n : -n))};
    case Regime::RealQ: {
      const long double lnq = std::fabs(std::log(static_cast<long double>(ctx.q())));
      const long double m = static_cast<long double>(n > 0 ? n : -n);
      return {n > 0 ? 1 : -1, log_sinh(m * lnq) - log_sinh(lnq)};
    }
    case Regime::RootOfUnity: {
      // Reduce n mod 2r before touching the sine; zero is decided exactly.
      const std::int64_t r = ctx.r();
      std::int64_t k = n % (2 * r);
      if (k < 0) k += 2 * r;
      if (k == 0 || k == r) return {0, 0.0L};
      const int sign = k < r ? 1 : -1;
      if (k > r) k -= r;
      if (2 * k > r) k = r - k;
      const long double s = std::sin(kPi * static_cast<long double>(k) / static_cast<long double>(r));
      return {sign, std::log(s * ctx.inv_sin_pi_r())};
    }
    case Regime::ComplexQ:
      throw UnsupportedRegime("signed-log quantum integers need a real regime");
  }
  return {0, 0.0L};
}

long double qint_real(const QContext& ctx, std::int64_t n) {
  switch (ctx.regime()) {
    case Regime::Classical: return static_cast<long double>(n);
    case Regime::ComplexQ:
      throw UnsupportedRegime("real quantum integers need a real regime");
    default: {
      const FactEntry e = qint_log(ctx, n);
      return e.sign == 0 ? 0.0L : e.sign * std::exp(e.logmag);
    }
  }
}

CNum qint(const QContext& ctx, std::int64_t n) {
  if (ctx.regime() != Regime::ComplexQ) return {static_cast<double>(qint_real(ctx, n)), 0.0};
  if (n == 0) return {0.0, 0.0};
  const CNum q = ctx.complex_q_value();
  const CNum qn = std::pow(q, static_cast<double>(n));
  return (qn - 1.0 / qn) / (q - 1.0 / q);
}

SignedLog qint_sl(const QContext& ctx, std::int64_t n) {
  const FactEntry e = qint_log(ctx, n);
  return SignedLog::from_log(e.sign, static_cast<double>(e.logmag));
}

SignedLog qfact_sl(const QContext& ctx, std::int64_t n) {
  if (n < 0) throw ValidationError("quantum factorial of negative argument " + std::to_string(n));
  if (n > std::numeric_limits<int>::max() / 4) throw ValidationError("quantum factorial argument too large");
  const FactorialTable t = ctx.factorials(static_cast<int>(n));
  const FactEntry& e = t[static_cast<int>(n)];
  return SignedLog::from_log(e.sign, static_cast<double>(e.logmag));
}

}  // namespace qsixj
