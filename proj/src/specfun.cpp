#include "jlip/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "jlip/errors.hpp"

namespace jlip::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kIntegerTol = 1e-12;

// Lanczos g = 7, n = 9 (Godfrey coefficients). Relative error of the
// resulting gamma is a few 1e-15 over the positive axis.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma_pos(double x) {
  // valid for x >= 0.5
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
  const double t = x + 6.5;  // g - 0.5 with g = 7
  return kHalfLog2Pi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

[[noreturn]] void throw_bad_c(double c) {
  std::ostringstream msg;
  msg << "hypergeometric parameter c = " << c
      << " is zero or a negative integer";
  throw DomainError(msg.str());
}

// Index of the last nonzero series term when a or b truncates the series,
// or -1 for a non-terminating series.
long terminating_index(double a, double b) {
  long m = -1;
  if (is_nonpositive_integer(a)) m = std::lround(-a);
  if (is_nonpositive_integer(b)) {
    const long mb = std::lround(-b);
    m = (m < 0) ? mb : std::min(m, mb);
  }
  return m;
}

}  // namespace

bool is_nonpositive_integer(double x, double tol) {
  if (x > tol) return false;
  return std::abs(x - std::round(x)) <= tol;
}

double pochhammer(double a, long n) {
  if (n < 0) throw DomainError("pochhammer order must be nonnegative");
  double prod = 1.0;
  for (long i = 0; i < n; ++i) {
    prod *= a + static_cast<double>(i);
    if (!std::isfinite(prod)) {
      std::ostringstream msg;
      msg << "pochhammer(" << a << ", " << n << ") overflowed at factor " << i;
      throw OverflowError(msg.str());
    }
  }
  return prod;
}

SignedLogGamma log_gamma_signed(double x) {
  if (x >= 0.5) return {lanczos_log_gamma_pos(x), 1};
  if (x <= 0.0 && std::abs(x - std::round(x)) <= kIntegerTol) {
    std::ostringstream msg;
    msg << "log_gamma pole at x = " << x;
    throw DomainError(msg.str());
  }
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  const double s = std::sin(kPi * x);
  const double log_abs =
      std::log(kPi / std::abs(s)) - lanczos_log_gamma_pos(1.0 - x);
  return {log_abs, s >= 0.0 ? 1 : -1};
}

double log_gamma(double x) {
  if (x <= 0.0) throw DomainError("log_gamma requires x > 0");
  return log_gamma_signed(x).log_abs;
}

Gauss2F1Series::Gauss2F1Series(double a, double b, double c)
    : a_(a), b_(b), c_(c), terms_(terminating_index(a, b)) {
  if (is_nonpositive_integer(c)) throw_bad_c(c);
  coef_.reserve(16);
  coef_.push_back(1.0);
}

void Gauss2F1Series::extend(std::size_t n) const {
  while (coef_.size() <= n) {
    const double k = static_cast<double>(coef_.size() - 1);
    coef_.push_back(coef_.back() * (a_ + k) * (b_ + k) /
                    ((c_ + k) * (k + 1.0)));
  }
}

double Gauss2F1Series::eval(double x, double tol, long n_max) const {
  if (x < 0.0 || x > 1.0)
    throw DomainError("hypergeometric series argument must lie in [0, 1]");

  if (terms_ >= 0) {
    // terminating: exact finite sum, no truncation test
    extend(static_cast<std::size_t>(terms_));
    double sum = 0.0;
    double xp = 1.0;
    for (long n = 0; n <= terms_; ++n) {
      sum += coef_[static_cast<std::size_t>(n)] * xp;
      xp *= x;
    }
    return sum;
  }

  if (x == 1.0 && c_ - a_ - b_ <= 0.0) {
    std::ostringstream msg;
    msg << "series diverges at x = 1 with c-a-b = " << c_ - a_ - b_;
    throw DivergenceError(msg.str());
  }

  double sum = 1.0;
  double xp = 1.0;
  for (long n = 0; n < n_max; ++n) {
    extend(static_cast<std::size_t>(n) + 1);
    xp *= x;
    const double term = coef_[static_cast<std::size_t>(n) + 1] * xp;
    if (n + 1 >= 10 && std::abs(term) < tol * std::max(1.0, std::abs(sum)))
      return sum;
    sum += term;
  }
  std::ostringstream msg;
  msg << "hypergeometric series did not converge within " << n_max
      << " terms (a=" << a_ << ", b=" << b_ << ", c=" << c_ << ", x=" << x
      << ")";
  throw NonConvergenceError(msg.str());
}

double gauss_2f1(const HypParams& p) {
  if (is_nonpositive_integer(p.c)) throw_bad_c(p.c);
  if (p.tol <= 0.0) throw DomainError("tolerance must be positive");
  if (p.n_max <= 0) throw DomainError("series cap must be positive");

  Gauss2F1Series series(p.a, p.b, p.c);
  long cap = p.n_max;
  if (p.x > 0.95 && !series.terminating()) cap = std::max(cap, 1000000L);
  return series.eval(p.x, p.tol, cap);
}

double gauss_2f1(double a, double b, double c, double x) {
  return gauss_2f1(HypParams{a, b, c, x});
}

double gauss_2f1_at_one(double a, double b, double c) {
  if (is_nonpositive_integer(c)) throw_bad_c(c);

  const long m = terminating_index(a, b);
  if (m >= 0) {
    double sum = 1.0;
    double term = 1.0;
    for (long n = 0; n < m; ++n) {
      term *= (a + n) * (b + n) / ((c + n) * (n + 1.0));
      sum += term;
    }
    return sum;
  }

  const double d = c - a - b;
  if (d <= 0.0) {
    std::ostringstream msg;
    msg << "Gauss summation needs c-a-b > 0, got " << d;
    throw DivergenceError(msg.str());
  }
  const SignedLogGamma gc = log_gamma_signed(c);
  const SignedLogGamma gd = log_gamma_signed(d);
  const SignedLogGamma gca = log_gamma_signed(c - a);
  const SignedLogGamma gcb = log_gamma_signed(c - b);
  const double value =
      std::exp(gc.log_abs + gd.log_abs - gca.log_abs - gcb.log_abs);
  return value * gc.sign * gd.sign * gca.sign * gcb.sign;
}

}  // namespace jlip::specfun
